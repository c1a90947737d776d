/**
 * A strictly scripted stand-in for the scoring service.
 *
 * Every payload it replays was captured verbatim from the real service
 * (see fixtures/service/), so these tests exercise the client against
 * genuine response bodies — the stub does no decision arithmetic either.
 */

import type { FetchLike } from "../src/api";

export interface ScriptStep {
  method: string;
  /** pathname plus optional query, e.g. "/api/sensitivity/m?criterion=Cost" */
  path: string;
  status?: number;
  body: unknown;
  /** optional assertion on the parsed request body */
  check?: (requestBody: unknown) => void;
}

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export interface ScriptedService {
  fetch: FetchLike;
  calls: RecordedCall[];
  /** steps the test never consumed — assert 0 at the end */
  remaining(): number;
}

export function scriptedService(steps: ScriptStep[]): ScriptedService {
  const queue = [...steps];
  const calls: RecordedCall[] = [];

  const fetchImpl: FetchLike = async (input, init) => {
    const method = (init?.method ?? "GET").toUpperCase();
    const url = new URL(input, "http://service.test");
    const path = url.pathname + url.search;
    const requestBody =
      init?.body === undefined ? undefined : JSON.parse(String(init.body));
    calls.push({ method, path, body: requestBody });

    const step = queue.shift();
    if (!step) {
      throw new Error(`script exhausted; unexpected ${method} ${path}`);
    }
    if (step.method.toUpperCase() !== method || !samePath(step.path, url)) {
      throw new Error(
        `script expected ${step.method} ${step.path}, got ${method} ${path}`,
      );
    }
    step.check?.(requestBody);
    return jsonResponse(step.status ?? 200, step.body);
  };

  return { fetch: fetchImpl, calls, remaining: () => queue.length };
}

function samePath(expected: string, actual: URL): boolean {
  const wanted = new URL(expected, "http://service.test");
  if (wanted.pathname !== actual.pathname) return false;
  const a = [...wanted.searchParams.entries()].sort();
  const b = [...actual.searchParams.entries()].sort();
  return JSON.stringify(a) === JSON.stringify(b);
}

function jsonResponse(status: number, body: unknown): Response {
  const text = JSON.stringify(body);
  const stub = {
    ok: status >= 200 && status < 300,
    status,
    text: async () => text,
  };
  return stub as unknown as Response;
}
