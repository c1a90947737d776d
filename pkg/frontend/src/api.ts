/**
 * Typed client for the scoring service.
 *
 * Every number the service computes (weighted cells, totals, weights,
 * crossing weights) travels as a decimal string and is kept as a string
 * here — this module never parses them into floats and never recomputes
 * anything.  The only numbers are ranks, ratings, and revision tokens,
 * which are integers end to end.
 */

export interface ScoreRow {
  concept: string;
  weighted: Record<string, string>;
  total: string;
  rank: number;
  decision: string;
}

export interface ScoringBody {
  revision: number;
  matrix: string;
  weights: Record<string, string | null>;
  rows: ScoreRow[];
}

export interface CrossingMarker {
  pair: string[];
  weight: string;
  leader_below: string | null;
  leader_above: string | null;
}

export interface TrajectoryPoint {
  weight: string;
  ranks: Record<string, number>;
}

export interface SensitivityBody {
  revision: number;
  matrix: string;
  criterion: string;
  current_weight: string | null;
  crossings: CrossingMarker[];
  always_tied: string[][];
  trajectory: TrajectoryPoint[];
}

export interface CriterionSpec {
  id: string;
  name: string;
  weight: string | null;
  parent: string | null;
}

export interface ScoringMatrixSpec {
  id: string;
  criteria: CriterionSpec[];
  concepts: string[];
  ratings: Record<string, Record<string, number>>;
  declared: unknown;
}

export interface ProjectBody {
  revision: number;
  project: {
    name: string;
    scoring_matrices: ScoringMatrixSpec[];
    [key: string]: unknown;
  };
}

export interface ValidationIssue {
  severity: string;
  location: string;
  message: string;
}

/** A mutation quoted a revision the service has already moved past. */
export class StaleRevisionError extends Error {
  constructor(readonly latestRevision: number) {
    super(`stale revision; service is at ${latestRevision}`);
    this.name = "StaleRevisionError";
  }
}

/** The service refused a mutation because the result would not validate. */
export class ValidationRejectedError extends Error {
  constructor(readonly issues: ValidationIssue[]) {
    super(issues.map((issue) => issue.message).join("; ") || "validation failed");
    this.name = "ValidationRejectedError";
  }
}

/** Any other non-2xx answer (missing matrix, bad request shape, …). */
export class ServiceError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
    this.name = "ServiceError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class WorkbenchApi {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    // Bind so a bare global fetch keeps its expected receiver.
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  getProject(): Promise<ProjectBody> {
    return this.request("GET", "/api/project");
  }

  getScoring(matrixId: string): Promise<ScoringBody> {
    return this.request("GET", `/api/results/scoring/${encodeURIComponent(matrixId)}`);
  }

  patchRating(
    matrixId: string,
    edit: { revision: number; concept: string; criterion: string; rating: number },
  ): Promise<ScoringBody> {
    return this.request(
      "PATCH",
      `/api/scoring/${encodeURIComponent(matrixId)}/ratings`,
      edit,
    );
  }

  patchWeight(
    matrixId: string,
    edit: { revision: number; criterion: string; weight: string },
  ): Promise<ScoringBody> {
    return this.request(
      "PATCH",
      `/api/scoring/${encodeURIComponent(matrixId)}/weights`,
      edit,
    );
  }

  getSensitivity(
    matrixId: string,
    criterion: string,
    samples?: number,
  ): Promise<SensitivityBody> {
    const query = new URLSearchParams({ criterion });
    if (samples !== undefined) {
      query.set("samples", String(samples));
    }
    return this.request(
      "GET",
      `/api/sensitivity/${encodeURIComponent(matrixId)}?${query.toString()}`,
    );
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + path, init);
    const payload = await parseJson(response);
    if (response.ok) {
      return payload as T;
    }
    throw classifyFailure(response.status, payload);
  }
}

async function parseJson(response: Response): Promise<unknown> {
  const text = await response.text();
  if (!text) return null;
  try {
    return JSON.parse(text);
  } catch {
    return { detail: text };
  }
}

function classifyFailure(status: number, payload: unknown): Error {
  const body = (payload ?? {}) as Record<string, unknown>;
  if (status === 409 && body["error"] === "stale revision") {
    return new StaleRevisionError(body["revision"] as number);
  }
  if (status === 422 && body["error"] === "validation failed") {
    return new ValidationRejectedError((body["issues"] ?? []) as ValidationIssue[]);
  }
  const detail = body["detail"] ?? body["error"] ?? `request failed with ${status}`;
  return new ServiceError(status, String(detail));
}
