// @vitest-environment jsdom
import { beforeEach, describe, expect, it, vi } from "vitest";

import type {
  AbstractView,
  ApiClient,
  SelectionPage,
  SessionView,
  TitleRow,
} from "../src/api.js";
import { mountApp } from "../src/app.js";

function sessionView(overrides: Partial<SessionView> = {}): SessionView {
  const clusters = Array.from({ length: 6 }, (_, i) => ({
    cluster: i + 1,
    size: i === 0 ? 5 : 1,
    words: ["alpha", "beta", "gamma"],
  }));
  return {
    session_id: "s1",
    source_name: "sample.medline",
    k: 6,
    selected_cluster: 1,
    n_documents: 10,
    max_k: 9,
    exclude_words: [],
    can_go_back: false,
    clusters,
    ...overrides,
  };
}

function selection(total: number, cluster = 1): SelectionPage {
  return {
    cluster,
    total,
    documents: Array.from({ length: total }, (_, i) => ({
      pmid: 1000 - i,
      date: `201${9 - i}-01-0${i + 1}`,
    })),
  };
}

function abstractAt(position: number, total: number): AbstractView {
  return {
    pmid: 1000 - position,
    date: "2015-04-04",
    title: `Title ${position}`,
    abstract: `Abstract body ${position}`,
    position,
    total,
  };
}

const titleRows: TitleRow[] = [
  { pmid: 1000, date: "2019-01-01", title: "First title." },
  { pmid: 999, date: "2018-01-02", title: "Second title." },
];

function fakeClient() {
  return {
    createSession: vi.fn(async () => sessionView()),
    update: vi.fn(async (_id: string, k: number) =>
      sessionView({
        k,
        can_go_back: true,
        clusters: sessionView().clusters.slice(0, k),
      })),
    useCluster: vi.fn(async () =>
      sessionView({ n_documents: 5, can_go_back: true, clusters: sessionView().clusters.slice(0, 2) })),
    goBack: vi.fn(async () => sessionView({ can_go_back: false })),
    select: vi.fn(async (_id: string, cluster: number) => selection(2, cluster)),
    clusters: vi.fn(async () => sessionView()),
    documents: vi.fn(async () => selection(5)),
    abstract: vi.fn(async (_id: string, _c: number, position: number) =>
      abstractAt(position, 5)),
    titles: vi.fn(async () => titleRows),
    reportUrl: vi.fn(() => "/api/session/s1/cluster/1/report"),
    reportBlob: vi.fn(async () => new Blob(["<html></html>"], { type: "text/html" })),
  };
}

type Fake = ReturnType<typeof fakeClient>;

function mount(fake: Fake) {
  document.body.innerHTML = '<div id="app"></div>';
  const root = document.getElementById("app") as HTMLElement;
  return mountApp(root, fake as unknown as ApiClient);
}

async function uploadFixture(app: ReturnType<typeof mount>) {
  const input = document.getElementById("upload") as HTMLInputElement;
  const file = new File(["PMID- 1\n"], "sample.medline", { type: "text/plain" });
  Object.defineProperty(input, "files", { value: [file], configurable: true });
  input.dispatchEvent(new Event("change"));
  await app.idle();
}

function panelLines(): string[] {
  const text = document.getElementById("panel")?.textContent ?? "";
  return text.length ? text.split("\n") : [];
}

describe("upload", () => {
  let fake: Fake;
  let app: ReturnType<typeof mount>;

  beforeEach(() => {
    fake = fakeClient();
    app = mount(fake);
  });

  it("starts with the slider capped at 10 and Back disabled", () => {
    const slider = document.getElementById("k-slider") as HTMLInputElement;
    expect(slider.max).toBe("10");
    expect(slider.value).toBe("6");
    expect((document.getElementById("back") as HTMLButtonElement).disabled).toBe(true);
  });

  it("renders six clusters, cluster field 1 and the new slider max", async () => {
    await uploadFixture(app);
    expect(fake.createSession).toHaveBeenCalledTimes(1);
    expect(panelLines()).toHaveLength(6);
    expect(panelLines()[0]).toBe("cluster 1 (5): alpha beta gamma");
    const clusterField = document.getElementById("cluster-field") as HTMLInputElement;
    expect(clusterField.value).toBe("1");
    const slider = document.getElementById("k-slider") as HTMLInputElement;
    expect(slider.max).toBe("9");
    const rows = document.querySelectorAll("#documents tbody tr");
    expect(rows).toHaveLength(5);
  });
});

describe("after upload", () => {
  let fake: Fake;
  let app: ReturnType<typeof mount>;

  beforeEach(async () => {
    fake = fakeClient();
    app = mount(fake);
    await uploadFixture(app);
  });

  it("update re-renders the panel with the requested k", async () => {
    const slider = document.getElementById("k-slider") as HTMLInputElement;
    slider.value = "3";
    const exclude = document.getElementById("exclude") as HTMLInputElement;
    exclude.value = "air blood";
    (document.getElementById("update") as HTMLButtonElement).click();
    await app.idle();
    expect(fake.update).toHaveBeenCalledWith("s1", 3, ["air", "blood"]);
    expect(panelLines()).toHaveLength(3);
  });

  it("use cluster replaces the panel and enables Back; Back restores", async () => {
    (document.getElementById("use-cluster") as HTMLButtonElement).click();
    await app.idle();
    expect(panelLines()).toHaveLength(2);
    const backButton = document.getElementById("back") as HTMLButtonElement;
    expect(backButton.disabled).toBe(false);
    backButton.click();
    await app.idle();
    expect(fake.goBack).toHaveBeenCalledTimes(1);
    expect(panelLines()).toHaveLength(6);
    expect(backButton.disabled).toBe(true); // root again
  });

  it("ignores mutations while one is in flight", async () => {
    let release!: (view: SessionView) => void;
    fake.update.mockImplementationOnce(
      () => new Promise<SessionView>((resolve) => { release = resolve; }));
    const update = document.getElementById("update") as HTMLButtonElement;
    update.click();
    update.click(); // busy: must not fire a second request
    expect(fake.update).toHaveBeenCalledTimes(1);
    release(sessionView());
    await app.idle();
    expect(fake.update).toHaveBeenCalledTimes(1);
  });

  it("changing the cluster field selects and resets the pager", async () => {
    const field = document.getElementById("cluster-field") as HTMLInputElement;
    field.value = "2";
    field.dispatchEvent(new Event("change"));
    await app.idle();
    expect(fake.select).toHaveBeenCalledWith("s1", 2);
    expect(app.state().selectedCluster).toBe(2);
    expect(app.state().abstractPosition).toBe(0);
    expect(document.querySelectorAll("#documents tbody tr")).toHaveLength(2);
  });

  it("pager moves within bounds and stops at the ends", async () => {
    const next = document.getElementById("next") as HTMLButtonElement;
    const prev = document.getElementById("prev") as HTMLButtonElement;
    expect(prev.disabled).toBe(true); // at position 0
    next.click();
    await app.idle();
    expect(app.state().abstractPosition).toBe(1);
    expect(document.getElementById("pager-status")?.textContent).toBe("2 / 5");
    for (let i = 0; i < 10; i += 1) {
      next.click();
      await app.idle();
    }
    expect(app.state().abstractPosition).toBe(4);
    expect(next.disabled).toBe(true);
  });

  it("titles tab shows PMID/Date/Title rows", async () => {
    (document.querySelector('button[data-tab="titles"]') as HTMLButtonElement).click();
    const headers = Array.from(document.querySelectorAll("#titles thead th"))
      .map((th) => th.textContent);
    expect(headers).toEqual(["PMID", "Date", "Title"]);
    const rows = document.querySelectorAll("#titles tbody tr");
    expect(rows).toHaveLength(2);
    expect(rows[0]?.textContent).toContain("First title.");
  });

  it("download fetches the report blob", async () => {
    URL.createObjectURL = vi.fn(() => "blob:fake");
    URL.revokeObjectURL = vi.fn();
    // jsdom cannot navigate to blob: URLs; the click itself is the contract
    const click = vi.spyOn(HTMLAnchorElement.prototype, "click").mockImplementation(() => {});
    (document.getElementById("download") as HTMLButtonElement).click();
    await app.idle();
    expect(fake.reportBlob).toHaveBeenCalledWith("s1", 1);
    expect(click).toHaveBeenCalledTimes(1);
    click.mockRestore();
  });

  it("surfaces server errors inline and recovers", async () => {
    fake.update.mockRejectedValueOnce(new Error("k_out_of_range: k=99 not allowed"));
    (document.getElementById("update") as HTMLButtonElement).click();
    await app.idle();
    const error = document.getElementById("error") as HTMLElement;
    expect(error.hidden).toBe(false);
    expect(error.textContent).toContain("k_out_of_range");
    expect(panelLines()).toHaveLength(6); // state unchanged
    expect(app.state().busy).toBe(false);
  });
});
