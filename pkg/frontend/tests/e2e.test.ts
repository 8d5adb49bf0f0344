// End-to-end: drive the real Python service through the typed client,
// exactly the calls the DOM layer makes.
import { spawn, ChildProcess } from "node:child_process";
import { readFileSync } from "node:fs";
import { resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

const PORT = 8900 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;
const REPO_ROOT = resolve(__dirname, "..", "..");

let server: ChildProcess;
const client = new ApiClient(BASE);

function fixtureBlob(): Blob {
  const bytes = readFileSync(resolve(REPO_ROOT, "tests", "fixtures", "sample.medline"));
  return new Blob([bytes], { type: "text/plain" });
}

async function waitForServer(timeoutMs = 30000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${BASE}/api/session/warmup/clusters`);
      if (resp.status === 404) {
        return; // routing is up
      }
    } catch {
      // not listening yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error("service did not come up in time");
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "pubmine.service", "--port", String(PORT)], {
    cwd: REPO_ROOT,
    stdio: "ignore",
  });
  await waitForServer();
}, 40000);

afterAll(() => {
  server?.kill();
});

describe("full workflow against the live service", () => {
  it("upload -> update -> use cluster -> back -> titles -> download", async () => {
    // upload: defaults land at 6 clusters with cluster field 1
    const created = await client.createSession(fixtureBlob(), undefined, "sample.medline");
    const sid = created.session_id;
    expect(created.k).toBe(6);
    expect(created.clusters).toHaveLength(6);
    expect(created.selected_cluster).toBe(1);
    expect(created.max_k).toBe(9);
    expect(created.ingest?.kept).toBe(10);

    // set k=3 + Update -> 3 clusters
    const updated = await client.update(sid, 3, []);
    expect(updated.clusters).toHaveLength(3);
    expect(updated.can_go_back).toBe(true);
    const panelBeforeDrill = updated.clusters;

    // select the biggest cluster and drill into it -> panel replaced
    const biggest = [...updated.clusters].sort((a, b) => b.size - a.size)[0]!;
    const page = await client.select(sid, biggest.cluster);
    expect(page.total).toBe(biggest.size);
    const dates = page.documents.map((d) => d.date);
    expect([...dates].sort().reverse()).toEqual(dates); // newest first

    const drilled = await client.useCluster(sid);
    expect(drilled.n_documents).toBe(biggest.size);
    expect(drilled.selected_cluster).toBe(1);
    expect(drilled.clusters).not.toEqual(panelBeforeDrill);

    // Back -> the prior panel comes back verbatim
    const restored = await client.goBack(sid);
    expect(restored.clusters).toEqual(panelBeforeDrill);
    expect(restored.selected_cluster).toBe(biggest.cluster);

    // Titles tab rows carry pmid/date/title
    const titles = await client.titles(sid, restored.selected_cluster);
    expect(titles.length).toBe(biggest.size);
    for (const row of titles) {
      expect(row.pmid).toBeGreaterThan(0);
      expect(row.date).toMatch(/^\d{4}-\d{2}-\d{2}$/);
      expect(row.title.length).toBeGreaterThan(0);
    }

    // Download Cluster saves exactly the /report endpoint bytes
    const blob = await client.reportBlob(sid, restored.selected_cluster);
    const direct = await fetch(client.reportUrl(sid, restored.selected_cluster));
    const downloaded = Buffer.from(await blob.arrayBuffer());
    const endpoint = Buffer.from(await direct.arrayBuffer());
    expect(downloaded.equals(endpoint)).toBe(true);
    expect(direct.headers.get("content-disposition")).toContain("attachment");
    expect(downloaded.toString("utf-8")).toContain("<!DOCTYPE html>");
  }, 30000);

  it("abstract pager exposes random access with 416 past the end", async () => {
    const created = await client.createSession(fixtureBlob(), 2, "sample.medline");
    const sid = created.session_id;
    const first = await client.abstract(sid, 1, 0);
    expect(first.position).toBe(0);
    expect(first.total).toBeGreaterThan(0);
    expect(first.abstract.length).toBeGreaterThan(0);

    try {
      await client.abstract(sid, 1, first.total);
      expect.unreachable("expected a 416");
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(416);
      expect((err as ApiError).code).toBe("position_out_of_range");
    }
  }, 30000);

  it("back at the root answers 409 at_root", async () => {
    const created = await client.createSession(fixtureBlob(), 2, "sample.medline");
    try {
      await client.goBack(created.session_id);
      expect.unreachable("expected a 409");
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(409);
      expect((err as ApiError).code).toBe("at_root");
    }
  }, 30000);
});
