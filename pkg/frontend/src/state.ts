/**
 * state.ts - single view-state store for the whole client.
 *
 * Holds the open project snapshot plus its version, the active screen,
 * staged what-if statements, and the last error. Invariants enforced
 * here rather than in screens:
 *
 *  - mutations always send the snapshot's version, never a guessed one;
 *    a conflict keeps the user's pending input and raises a
 *    reload-and-merge prompt carrying the server's snapshot
 *  - staged what-if statements live apart from committed ones and are
 *    rendered distinctly until committed or discarded
 *  - overlapping what-if previews are tagged with request ids; only the
 *    latest issued request may render (latest-wins)
 */

import {
  ApiClient,
  ConflictError,
  ProjectDocument,
  ReportBundle,
  StatementDoc,
} from './api.js';

export type ScreenName =
  | 'setup'
  | 'references'
  | 'matrix'
  | 'statements'
  | 'results'
  | 'whatif';

export interface ConflictPrompt {
  message: string;
  current: ProjectDocument; // what the server holds now
}

export interface ViewState {
  doc: ProjectDocument | null;
  token: string;
  screen: ScreenName;
  staged: StatementDoc[];
  conflict: ConflictPrompt | null;
  error: string | null;
  lastBundle: ReportBundle | null; // most recent committed solve
}

type Listener = (state: ViewState) => void;

export class AppStore {
  private state: ViewState = {
    doc: null,
    token: '',
    screen: 'setup',
    staged: [],
    conflict: null,
    error: null,
    lastBundle: null,
  };

  private listeners: Listener[] = [];
  private pending = 0;
  private whatifCounter = 0;

  constructor(readonly api: ApiClient) {}

  // ── subscriptions ────────────────────────────────────────────────

  get current(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  patch(partial: Partial<ViewState>): void {
    this.state = { ...this.state, ...partial };
    for (const listener of this.listeners) listener(this.state);
  }

  // ── async bookkeeping ────────────────────────────────────────────

  /**
   * Run one user-triggered async action. Errors land in state.error
   * (or state.conflict for stale versions) instead of escaping, and
   * the pending counter lets tests await quiescence.
   */
  async run<T>(action: () => Promise<T>): Promise<T | undefined> {
    this.pending += 1;
    try {
      this.patch({ error: null });
      return await action();
    } catch (err) {
      if (err instanceof ConflictError) {
        this.patch({ conflict: { message: err.message, current: err.current } });
      } else {
        this.patch({ error: err instanceof Error ? err.message : String(err) });
      }
      return undefined;
    } finally {
      this.pending -= 1;
      this.patch({});
    }
  }

  /** Resolves once no run() call is in flight. */
  async idle(): Promise<void> {
    while (this.pending > 0) {
      await new Promise((resolve) => setTimeout(resolve, 10));
    }
  }

  // ── project lifecycle ────────────────────────────────────────────

  openProject(doc: ProjectDocument, token: string): void {
    this.patch({ doc, token, conflict: null, error: null, lastBundle: null, staged: [] });
  }

  /** Re-read the stored document; every screen rerenders from it. */
  async refresh(): Promise<void> {
    const doc = this.state.doc;
    if (!doc) return;
    const fresh = await this.api.getProject(doc.id);
    this.patch({ doc: fresh });
  }

  /**
   * Accept the server's snapshot after a conflict. The DOM keeps
   * whatever the user had typed, so they re-apply on fresh state:
   * reload and merge, never silent loss.
   */
  acceptConflict(): void {
    const conflict = this.state.conflict;
    if (!conflict) return;
    this.patch({ doc: conflict.current, conflict: null });
  }

  // ── what-if staging ──────────────────────────────────────────────

  stage(statement: StatementDoc): void {
    this.patch({ staged: [...this.state.staged, statement] });
  }

  unstage(index: number): void {
    this.patch({ staged: this.state.staged.filter((_, i) => i !== index) });
  }

  discardStaged(): void {
    this.patch({ staged: [] });
  }

  /**
   * Preview committed + staged statements. Returns null when a newer
   * preview was issued while this one was in flight (latest-wins).
   */
  async preview(): Promise<ReportBundle | null> {
    const doc = this.state.doc;
    if (!doc) return null;
    const requestId = ++this.whatifCounter;
    const bundle = await this.api.whatif(doc.id, [
      ...doc.statements,
      ...this.state.staged,
    ]);
    return requestId === this.whatifCounter ? bundle : null;
  }
}
