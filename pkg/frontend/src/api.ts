/**
 * api.ts - typed HTTP client for the decision aiding service.
 *
 * Every number shown anywhere in the UI originates from a response
 * defined here; the client never computes domain values of its own.
 * Mutations carry the version the caller last saw plus the project
 * token; a 409 surfaces as ConflictError carrying the server's current
 * snapshot so nothing the user typed has to be thrown away.
 */

// ── Document shapes (mirror of the service's JSON) ────────────────────

export interface CriterionDoc {
  id: string;
  name: string;
  direction: 'maximize' | 'minimize';
  scale_min: string; // numbers travel as decimal strings
  scale_max: string;
  numeric: boolean;
}

export interface AlternativeDoc {
  id: string;
  name: string;
}

export interface MatrixDoc {
  items: string[]; // reference levels, matrix order
  rows: [number, number][][]; // judgment entries as [num, den]
}

export interface StatementDoc {
  kind: string;
  args: string[];
  label: string;
}

export interface RoundDoc {
  at: string;
  version: number;
  statements: number;
  epsilon_star: string | null;
  delta: string | null;
  ranking: [string, string, number][]; // alternative, value, rank
}

export interface ProjectDocument {
  schema_version: number;
  id: string;
  version: number;
  criteria: CriterionDoc[];
  alternatives: AlternativeDoc[];
  ratings: Record<string, Record<string, string>>;
  references: Record<string, string[]>;
  matrices: Record<string, MatrixDoc>;
  statements: StatementDoc[];
  rounds: RoundDoc[];
}

// ── Computation result shapes ─────────────────────────────────────────

export interface ConsistencyDoc {
  n: number;
  lambda_max: number;
  consistency_index: number;
  random_index: number;
  consistency_ratio: number;
  acceptable: boolean;
}

/** Judgment triples most at odds with the rest, worst first. */
export type TriadDoc = [number, number, number, number]; // r, s, t, deviation

export interface MatrixPutResult {
  version: number;
  consistency: ConsistencyDoc;
  triads: TriadDoc[];
}

export interface ScaleDoc {
  levels: number[];
  values: number[];
}

export interface NormalizeResult {
  scales: Record<string, ScaleDoc>;
  warnings: string[];
  table: { alternatives: string[]; criteria: string[]; rows: number[][] };
}

export interface RelationsDoc {
  alternatives: string[];
  necessary: boolean[][];
  possible: boolean[][];
}

export type RankingRow = [string, number, number]; // alternative, value, rank

export interface ReportBundle {
  project_id: string;
  project_version: number;
  consistency: Record<string, ConsistencyDoc>;
  scales: Record<string, ScaleDoc>;
  warnings: string[];
  normalized_table: { alternatives: string[]; criteria: string[]; rows: number[][] };
  budget: { full_ahp: number; parsimonious: number };
  epsilon_star: number | null;
  has_compatible_model: boolean;
  delta: number | null;
  shapley: [string, number][];
  interactions: [string, string, number][];
  capacity: unknown;
  relations: RelationsDoc | null;
  ranking: RankingRow[];
  diagnosis: StatementDoc[] | null;
}

// ── Errors ────────────────────────────────────────────────────────────

export interface FieldProblem {
  loc: (string | number)[];
  msg: string;
  type: string;
}

/** Domain rejection (422) or any other non-conflict failure. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly problems: FieldProblem[] = [],
  ) {
    super(message);
  }
}

/** Stale version (409): the server's current snapshot rides along. */
export class ConflictError extends Error {
  constructor(
    message: string,
    readonly current: ProjectDocument,
  ) {
    super(message);
  }
}

// ── Client ────────────────────────────────────────────────────────────

export interface CreateOptions {
  template?: 'empty' | 'case-study';
  round?: 'none' | 'first' | 'final';
}

const POLL_MS = 150;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    token?: string,
  ): Promise<T> {
    const headers: Record<string, string> = { 'Content-Type': 'application/json' };
    if (token) headers['X-Project-Token'] = token;
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => null);
    if (response.ok) return payload as T;

    if (response.status === 409 && payload?.detail?.current) {
      throw new ConflictError(payload.detail.message, payload.detail.current);
    }
    const detail = payload?.detail;
    if (Array.isArray(detail)) {
      const first = detail[0];
      throw new ApiError(response.status, first?.msg ?? 'request rejected', detail);
    }
    const message =
      typeof detail === 'string' ? detail : (detail?.message ?? `HTTP ${response.status}`);
    throw new ApiError(response.status, message);
  }

  // project documents
  async createProject(
    id: string,
    options: CreateOptions = {},
  ): Promise<{ document: ProjectDocument; token: string }> {
    return this.request('POST', '/projects', { id, ...options });
  }

  async createFromDocument(
    document: ProjectDocument,
  ): Promise<{ document: ProjectDocument; token: string }> {
    return this.request('POST', '/projects', { document });
  }

  async getProject(id: string): Promise<ProjectDocument> {
    return this.request('GET', `/projects/${id}`);
  }

  /** Whole-document replace; used for criteria/alternative edits. */
  async putProject(
    document: ProjectDocument,
    token: string,
  ): Promise<{ document: ProjectDocument }> {
    return this.request('PUT', `/projects/${document.id}`, document, token);
  }

  // granular mutations
  async putRatings(
    id: string,
    alternative: string,
    values: Record<string, string>,
    version: number,
    token: string,
  ): Promise<{ version: number }> {
    return this.request(
      'PUT',
      `/projects/${id}/ratings/${alternative}`,
      { version, values },
      token,
    );
  }

  async putReferences(
    id: string,
    criterion: string,
    levels: string[],
    version: number,
    token: string,
  ): Promise<{ version: number }> {
    return this.request(
      'PUT',
      `/projects/${id}/references/${criterion}`,
      { version, levels },
      token,
    );
  }

  async putMatrix(
    id: string,
    criterion: string,
    matrix: MatrixDoc,
    version: number,
    token: string,
  ): Promise<MatrixPutResult> {
    return this.request(
      'PUT',
      `/projects/${id}/matrices/${criterion}`,
      { ...matrix, version },
      token,
    );
  }

  async postStatement(
    id: string,
    statement: StatementDoc,
    version: number,
    token: string,
  ): Promise<{ version: number; statements: number }> {
    return this.request(
      'POST',
      `/projects/${id}/statements`,
      { version, ...statement },
      token,
    );
  }

  async deleteStatement(
    id: string,
    index: number,
    version: number,
    token: string,
  ): Promise<{ version: number; statements: number }> {
    return this.request(
      'DELETE',
      `/projects/${id}/statements/${index}?version=${version}`,
      undefined,
      token,
    );
  }

  // computations
  async normalize(id: string): Promise<NormalizeResult> {
    return this.request('POST', `/projects/${id}/compute/normalize`);
  }

  /** Long computation: spawn the job, poll until it settles. */
  private async pollJob<T>(spawned: { job: string }): Promise<T> {
    for (;;) {
      const status = await this.request<{ status: string } & Record<string, unknown>>(
        'GET',
        `/jobs/${spawned.job}`,
      );
      if (status.status === 'done') return status as unknown as T;
      if (status.status === 'failed') {
        throw new ApiError(500, String(status.error ?? 'computation failed'));
      }
      await new Promise((resolve) => setTimeout(resolve, POLL_MS));
    }
  }

  async solve(id: string, token: string): Promise<ReportBundle> {
    const spawned = await this.request<{ job: string }>(
      'POST',
      `/projects/${id}/compute/solve`,
      undefined,
      token,
    );
    const done = await this.pollJob<{ bundle: ReportBundle }>(spawned);
    return done.bundle;
  }

  async whatif(id: string, statements: StatementDoc[]): Promise<ReportBundle> {
    const done = await this.request<{ bundle: ReportBundle }>(
      'POST',
      `/projects/${id}/whatif`,
      { statements },
    );
    return done.bundle;
  }

  async relations(
    id: string,
  ): Promise<{ compatible: boolean } & Partial<RelationsDoc>> {
    return this.request('GET', `/projects/${id}/relations`);
  }
}
