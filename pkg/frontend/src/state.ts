// Pure UI state and transitions; the DOM layer in app.ts stays thin.

import type { ClusterSummary, SessionView } from "./api.js";

export type Tab = "main" | "abstracts" | "titles";

export const PRE_UPLOAD_K_MAX = 10; // slider cap until a file is loaded
export const DEFAULT_K = 6;

export interface UiState {
  sessionId: string | null;
  activeTab: Tab;
  clusters: ClusterSummary[];
  selectedCluster: number;
  kValue: number;
  kMax: number;
  excludeField: string;
  abstractPosition: number;
  busy: boolean;
  canGoBack: boolean;
  nDocuments: number;
  error: string | null;
}

export function initialState(): UiState {
  return {
    sessionId: null,
    activeTab: "main",
    clusters: [],
    selectedCluster: 1,
    kValue: DEFAULT_K,
    kMax: PRE_UPLOAD_K_MAX,
    excludeField: "",
    abstractPosition: 0,
    busy: false,
    canGoBack: false,
    nDocuments: 0,
    error: null,
  };
}

/** Fold a server session view into the state; the pager resets whenever the
 * selected cluster (or the session itself) changes. */
export function applySession(state: UiState, view: SessionView): UiState {
  const selectionChanged =
    view.session_id !== state.sessionId || view.selected_cluster !== state.selectedCluster;
  return {
    ...state,
    sessionId: view.session_id,
    clusters: view.clusters,
    selectedCluster: view.selected_cluster,
    kValue: view.k,
    kMax: view.max_k,
    nDocuments: view.n_documents,
    canGoBack: view.can_go_back,
    abstractPosition: selectionChanged ? 0 : state.abstractPosition,
    busy: false,
    error: null,
  };
}

export function selectCluster(state: UiState, cluster: number): UiState {
  const clamped = Math.min(Math.max(cluster, 1), Math.max(state.clusters.length, 1));
  return {
    ...state,
    selectedCluster: clamped,
    abstractPosition: clamped === state.selectedCluster ? state.abstractPosition : 0,
  };
}

export function clampPosition(position: number, total: number): number {
  if (total <= 0) {
    return 0;
  }
  return Math.min(Math.max(position, 0), total - 1);
}

/** One panel line, same byte format the CLI prints. */
export function clusterLine(summary: ClusterSummary): string {
  const words = summary.words.length ? ` ${summary.words.join(" ")}` : "";
  return `cluster ${summary.cluster} (${summary.size}):${words}`;
}

export function splitExcludeWords(field: string): string[] {
  return field.split(/\s+/).filter((w) => w.length > 0);
}
