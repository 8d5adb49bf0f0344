// DOM wiring for the three-tab cluster explorer.

import { ApiClient, ApiError } from "./api.js";
import type { AbstractView, DocumentRow, TitleRow } from "./api.js";
import {
  UiState,
  applySession,
  clampPosition,
  clusterLine,
  initialState,
  splitExcludeWords,
} from "./state.js";

const LAYOUT = `
<header>
  <h1>pubmine</h1>
  <nav>
    <button data-tab="main" class="tab active">Main</button>
    <button data-tab="abstracts" class="tab">Abstracts</button>
    <button data-tab="titles" class="tab">Titles</button>
  </nav>
  <a id="pubmed-link" href="https://pubmed.ncbi.nlm.nih.gov/" target="_blank" rel="noopener">Go to PubMed</a>
</header>
<p id="error" class="error" hidden></p>
<section id="tab-main">
  <div class="controls">
    <label>Upload MEDLINE file from PubMed
      <input type="file" id="upload" />
    </label>
    <label>Exclude documents containing these words
      <input type="text" id="exclude" placeholder="word word word" />
    </label>
    <label>How many clusters? <span id="k-value">6</span>
      <input type="range" id="k-slider" min="1" max="10" value="6" />
    </label>
    <label>Cluster
      <input type="number" id="cluster-field" min="1" value="1" />
    </label>
    <button id="update">Update</button>
    <button id="use-cluster">Use Cluster</button>
    <button id="back">Back</button>
  </div>
  <pre id="panel"></pre>
  <table id="documents">
    <thead><tr><th>PMID</th><th>Date</th></tr></thead>
    <tbody></tbody>
  </table>
</section>
<section id="tab-abstracts" hidden>
  <div id="abstract-view"></div>
  <div class="pager">
    <button id="prev">Previous</button>
    <span id="pager-status"></span>
    <button id="next">Next</button>
    <button id="download">Download Cluster</button>
  </div>
</section>
<section id="tab-titles" hidden>
  <table id="titles">
    <thead><tr><th>PMID</th><th>Date</th><th>Title</th></tr></thead>
    <tbody></tbody>
  </table>
</section>
`;

export interface App {
  state(): UiState;
  /** Resolves once no request is in flight; tests await this between actions. */
  idle(): Promise<void>;
}

export function mountApp(root: HTMLElement, client: ApiClient): App {
  root.innerHTML = LAYOUT;

  const el = {
    tabs: Array.from(root.querySelectorAll<HTMLButtonElement>("button.tab")),
    error: root.querySelector<HTMLElement>("#error")!,
    upload: root.querySelector<HTMLInputElement>("#upload")!,
    exclude: root.querySelector<HTMLInputElement>("#exclude")!,
    kSlider: root.querySelector<HTMLInputElement>("#k-slider")!,
    kValue: root.querySelector<HTMLElement>("#k-value")!,
    clusterField: root.querySelector<HTMLInputElement>("#cluster-field")!,
    update: root.querySelector<HTMLButtonElement>("#update")!,
    useCluster: root.querySelector<HTMLButtonElement>("#use-cluster")!,
    back: root.querySelector<HTMLButtonElement>("#back")!,
    panel: root.querySelector<HTMLElement>("#panel")!,
    documents: root.querySelector<HTMLTableSectionElement>("#documents tbody")!,
    sections: {
      main: root.querySelector<HTMLElement>("#tab-main")!,
      abstracts: root.querySelector<HTMLElement>("#tab-abstracts")!,
      titles: root.querySelector<HTMLElement>("#tab-titles")!,
    },
    abstractView: root.querySelector<HTMLElement>("#abstract-view")!,
    pagerStatus: root.querySelector<HTMLElement>("#pager-status")!,
    prev: root.querySelector<HTMLButtonElement>("#prev")!,
    next: root.querySelector<HTMLButtonElement>("#next")!,
    download: root.querySelector<HTMLButtonElement>("#download")!,
    titles: root.querySelector<HTMLTableSectionElement>("#titles tbody")!,
  };

  let state = initialState();
  let documents: DocumentRow[] = [];
  let abstract: AbstractView | null = null;
  let titles: TitleRow[] = [];
  let inflight: Promise<void> = Promise.resolve();

  function render(): void {
    el.error.hidden = state.error === null;
    el.error.textContent = state.error ?? "";

    el.kSlider.max = String(state.kMax);
    if (Number(el.kSlider.value) > state.kMax) {
      el.kSlider.value = String(state.kMax);
    }
    el.kValue.textContent = el.kSlider.value;
    el.clusterField.max = String(Math.max(state.clusters.length, 1));
    el.clusterField.value = String(state.selectedCluster);

    const hasSession = state.sessionId !== null;
    el.update.disabled = state.busy || !hasSession;
    el.useCluster.disabled = state.busy || !hasSession;
    el.back.disabled = state.busy || !hasSession || !state.canGoBack;
    el.upload.disabled = state.busy;
    el.download.disabled = state.busy || !hasSession;

    el.panel.textContent = state.clusters.map(clusterLine).join("\n");

    el.documents.innerHTML = "";
    for (const row of documents) {
      const tr = document.createElement("tr");
      tr.innerHTML = `<td>${row.pmid}</td><td>${row.date}</td>`;
      el.documents.appendChild(tr);
    }

    if (abstract) {
      el.abstractView.innerHTML = "";
      const meta = document.createElement("p");
      meta.className = "meta";
      meta.textContent = `PMID: ${abstract.pmid} Date: ${abstract.date}`;
      const title = document.createElement("h2");
      title.textContent = abstract.title;
      const body = document.createElement("p");
      body.textContent = abstract.abstract;
      el.abstractView.append(meta, title, body);
      el.pagerStatus.textContent = `${abstract.position + 1} / ${abstract.total}`;
      el.prev.disabled = state.busy || abstract.position <= 0;
      el.next.disabled = state.busy || abstract.position >= abstract.total - 1;
    } else {
      el.abstractView.textContent = hasSession ? "" : "Upload a MEDLINE file first.";
      el.pagerStatus.textContent = "";
      el.prev.disabled = true;
      el.next.disabled = true;
    }

    el.titles.innerHTML = "";
    for (const row of titles) {
      const tr = document.createElement("tr");
      const pmid = document.createElement("td");
      pmid.textContent = String(row.pmid);
      const date = document.createElement("td");
      date.textContent = row.date;
      const title = document.createElement("td");
      title.textContent = row.title;
      tr.append(pmid, date, title);
      el.titles.appendChild(tr);
    }

    for (const tab of el.tabs) {
      tab.classList.toggle("active", tab.dataset.tab === state.activeTab);
    }
    el.sections.main.hidden = state.activeTab !== "main";
    el.sections.abstracts.hidden = state.activeTab !== "abstracts";
    el.sections.titles.hidden = state.activeTab !== "titles";
  }

  function message(err: unknown): string {
    if (err instanceof ApiError) {
      return `${err.code}: ${err.message}`;
    }
    return err instanceof Error ? err.message : String(err);
  }

  /** Run one request; while busy, further mutations are ignored. */
  function run(action: () => Promise<void>): void {
    if (state.busy) {
      return;
    }
    state = { ...state, busy: true, error: null };
    render();
    inflight = (async () => {
      try {
        await action();
        state = { ...state, busy: false };
      } catch (err) {
        state = { ...state, busy: false, error: message(err) };
      }
      render();
    })();
  }

  async function refreshSelection(): Promise<void> {
    const sessionId = state.sessionId;
    if (sessionId === null) {
      documents = [];
      abstract = null;
      titles = [];
      return;
    }
    const page = await client.documents(sessionId, state.selectedCluster);
    documents = page.documents;
    state = { ...state, abstractPosition: clampPosition(state.abstractPosition, page.total) };
    abstract = page.total > 0
      ? await client.abstract(sessionId, state.selectedCluster, state.abstractPosition)
      : null;
    titles = await client.titles(sessionId, state.selectedCluster);
  }

  el.upload.addEventListener("change", () => {
    const file = el.upload.files?.[0];
    if (!file) {
      return;
    }
    run(async () => {
      const view = await client.createSession(file, Number(el.kSlider.value), file.name);
      state = applySession(state, view);
      await refreshSelection();
    });
  });

  el.kSlider.addEventListener("input", () => {
    el.kValue.textContent = el.kSlider.value;
  });

  el.update.addEventListener("click", () => {
    run(async () => {
      const view = await client.update(
        state.sessionId!, Number(el.kSlider.value), splitExcludeWords(el.exclude.value));
      state = applySession(state, view);
      await refreshSelection();
    });
  });

  el.useCluster.addEventListener("click", () => {
    run(async () => {
      const view = await client.useCluster(state.sessionId!);
      state = applySession(state, view);
      await refreshSelection();
    });
  });

  el.back.addEventListener("click", () => {
    run(async () => {
      const view = await client.goBack(state.sessionId!);
      state = applySession(state, view);
      await refreshSelection();
    });
  });

  el.clusterField.addEventListener("change", () => {
    const cluster = Number(el.clusterField.value);
    if (!state.sessionId || !Number.isInteger(cluster)) {
      return;
    }
    run(async () => {
      const page = await client.select(state.sessionId!, cluster);
      state = { ...state, selectedCluster: page.cluster, abstractPosition: 0 };
      documents = page.documents;
      abstract = page.total > 0
        ? await client.abstract(state.sessionId!, page.cluster, 0)
        : null;
      titles = await client.titles(state.sessionId!, page.cluster);
    });
  });

  function page(step: number): void {
    const sessionId = state.sessionId;
    if (!abstract || sessionId === null) {
      return;
    }
    const target = clampPosition(state.abstractPosition + step, abstract.total);
    if (target === state.abstractPosition) {
      return;
    }
    run(async () => {
      abstract = await client.abstract(sessionId, state.selectedCluster, target);
      state = { ...state, abstractPosition: target };
    });
  }

  el.prev.addEventListener("click", () => page(-1));
  el.next.addEventListener("click", () => page(1));

  el.download.addEventListener("click", () => {
    if (!state.sessionId) {
      return;
    }
    run(async () => {
      const blob = await client.reportBlob(state.sessionId!, state.selectedCluster);
      const url = URL.createObjectURL(blob);
      const anchor = document.createElement("a");
      anchor.href = url;
      anchor.download = `cluster-${state.selectedCluster}.html`;
      anchor.click();
      URL.revokeObjectURL(url);
    });
  });

  for (const tab of el.tabs) {
    tab.addEventListener("click", () => {
      state = { ...state, activeTab: tab.dataset.tab as UiState["activeTab"] };
      render();
    });
  }

  render();
  return {
    state: () => state,
    idle: () => inflight,
  };
}
