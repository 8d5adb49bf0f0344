// Typed client for the clustering service JSON API.

export interface ClusterSummary {
  cluster: number;
  size: number;
  words: string[];
}

export interface IngestReport {
  total_records: number;
  kept: number;
  dropped_no_abstract: number;
  duplicate_pmids: number;
  malformed_lines: number;
}

export interface SessionView {
  session_id: string;
  source_name: string;
  k: number;
  selected_cluster: number;
  n_documents: number;
  max_k: number;
  exclude_words: string[];
  can_go_back: boolean;
  clusters: ClusterSummary[];
  ingest?: IngestReport;
}

export interface DocumentRow {
  pmid: number;
  date: string;
}

export interface SelectionPage {
  cluster: number;
  total: number;
  documents: DocumentRow[];
}

export interface AbstractView {
  pmid: number;
  date: string;
  title: string;
  abstract: string;
  position: number;
  total: number;
}

export interface TitleRow {
  pmid: number;
  date: string;
  title: string;
}

export class ApiError extends Error {
  constructor(readonly status: number, readonly code: string, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

async function fail(resp: Response): Promise<never> {
  let code = "error";
  let message = `${resp.status} ${resp.statusText}`;
  try {
    const body = (await resp.json()) as { detail?: { code?: string; message?: string } };
    if (body.detail) {
      code = body.detail.code ?? code;
      message = body.detail.message ?? message;
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(resp.status, code, message);
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.baseUrl + path, init);
    if (!resp.ok) {
      await fail(resp);
    }
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.json<T>(path, {
      method: "POST",
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
  }

  createSession(file: Blob, k?: number, filename = "upload.medline"): Promise<SessionView> {
    const form = new FormData();
    form.append("medline", file, filename);
    if (k !== undefined) {
      form.append("k", String(k));
    }
    return this.json<SessionView>("/api/session", { method: "POST", body: form });
  }

  update(sessionId: string, k: number, excludeWords: string[]): Promise<SessionView> {
    return this.post<SessionView>(`/api/session/${sessionId}/update`, {
      k,
      exclude_words: excludeWords,
    });
  }

  useCluster(sessionId: string): Promise<SessionView> {
    return this.post<SessionView>(`/api/session/${sessionId}/use-cluster`);
  }

  goBack(sessionId: string): Promise<SessionView> {
    return this.post<SessionView>(`/api/session/${sessionId}/back`);
  }

  select(sessionId: string, cluster: number): Promise<SelectionPage> {
    return this.post<SelectionPage>(`/api/session/${sessionId}/select`, { cluster });
  }

  clusters(sessionId: string): Promise<SessionView> {
    return this.json<SessionView>(`/api/session/${sessionId}/clusters`);
  }

  documents(sessionId: string, cluster: number): Promise<SelectionPage> {
    return this.json<SelectionPage>(`/api/session/${sessionId}/cluster/${cluster}/documents`);
  }

  abstract(sessionId: string, cluster: number, position: number): Promise<AbstractView> {
    return this.json<AbstractView>(
      `/api/session/${sessionId}/cluster/${cluster}/abstract/${position}`);
  }

  titles(sessionId: string, cluster: number): Promise<TitleRow[]> {
    const page = this.json<{ cluster: number; titles: TitleRow[] }>(
      `/api/session/${sessionId}/cluster/${cluster}/titles`);
    return page.then((p) => p.titles);
  }

  reportUrl(sessionId: string, cluster: number): string {
    return `${this.baseUrl}/api/session/${sessionId}/cluster/${cluster}/report`;
  }

  async reportBlob(sessionId: string, cluster: number): Promise<Blob> {
    const resp = await fetch(this.reportUrl(sessionId, cluster));
    if (!resp.ok) {
      await fail(resp);
    }
    return resp.blob();
  }
}
