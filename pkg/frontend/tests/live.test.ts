// @vitest-environment node
/**
 * End-to-end checks against a running service instance.  Skipped unless
 * WORKBENCH_SERVICE_URL points at one (they mutate its in-memory project,
 * so give them a throwaway instance):
 *
 *   decisionforge --project sample.json serve --bind 127.0.0.1:8157 &
 *   WORKBENCH_SERVICE_URL=http://127.0.0.1:8157 npm test
 */

import { describe, expect, it } from "vitest";

import { StaleRevisionError, WorkbenchApi } from "../src/api";

const base = process.env.WORKBENCH_SERVICE_URL;

describe.runIf(Boolean(base))("live service", () => {
  it("answers a rating edit with recomputed results inside 200 ms", async () => {
    const api = new WorkbenchApi(base as string);
    const project = await api.getProject();
    const matrix = project.project.scoring_matrices[0];
    expect(matrix).toBeDefined();
    if (!matrix) return;

    const criterion = Object.keys(matrix.ratings)[0] as string;
    const concept = matrix.concepts[0] as string;
    const rating = matrix.ratings[criterion]?.[concept] as number;
    const scoring = await api.getScoring(matrix.id);

    const started = performance.now();
    const body = await api.patchRating(matrix.id, {
      revision: scoring.revision,
      concept,
      criterion,
      rating,
    });
    const elapsed = performance.now() - started;

    expect(elapsed).toBeLessThan(200);
    expect(body.revision).toBe(scoring.revision + 1);
    for (const row of body.rows) {
      expect(typeof row.total).toBe("string");
      expect(typeof row.rank).toBe("number");
    }
  });

  it("hands a stale writer a 409 and accepts its retry", async () => {
    const api = new WorkbenchApi(base as string);
    const project = await api.getProject();
    const matrix = project.project.scoring_matrices[0];
    if (!matrix) return;
    const criterion = Object.keys(matrix.ratings)[0] as string;
    const concept = matrix.concepts[0] as string;
    const rating = matrix.ratings[criterion]?.[concept] as number;

    const seen = (await api.getScoring(matrix.id)).revision;
    const first = await api.patchRating(matrix.id, {
      revision: seen,
      concept,
      criterion,
      rating,
    });
    expect(first.revision).toBe(seen + 1);

    const stale = api.patchRating(matrix.id, {
      revision: seen,
      concept,
      criterion,
      rating,
    });
    await expect(stale).rejects.toBeInstanceOf(StaleRevisionError);

    const retried = await api.patchRating(matrix.id, {
      revision: first.revision,
      concept,
      criterion,
      rating,
    });
    expect(retried.revision).toBe(first.revision + 1);
  });
});
