/**
 * Workbench state machine.
 *
 * Holds exactly what the service last said — rows, ranks, weights,
 * crossing points — plus the one piece of client-side state the service
 * cannot know: an edit that lost a write race and is waiting for the
 * user to retry or discard it.
 *
 * Nothing in here computes a total, a rank, or a crossing.  Mutations go
 * to the service with the last revision we saw; the response (or a 409)
 * is the whole story.
 */

import {
  CriterionSpec,
  ScoringBody,
  SensitivityBody,
  StaleRevisionError,
  ValidationRejectedError,
  ServiceError,
  WorkbenchApi,
} from "./api";

export type PendingEdit =
  | { kind: "rating"; concept: string; criterion: string; rating: number }
  | { kind: "weight"; criterion: string; weight: string };

export interface ConflictInfo {
  latestRevision: number;
  pending: PendingEdit;
}

export interface WorkbenchState {
  phase: "loading" | "ready" | "failed";
  matrixId: string;
  revision: number;
  concepts: string[];
  criteria: CriterionSpec[];
  /** criterion id -> concept id -> rating, as the service stores them. */
  ratings: Record<string, Record<string, number>>;
  scoring: ScoringBody | null;
  sliderCriterion: string | null;
  sensitivity: SensitivityBody | null;
  conflict: ConflictInfo | null;
  /** Transient message for rejected edits and transport failures. */
  notice: string | null;
}

export type Listener = (state: WorkbenchState) => void;

const SENSITIVITY_SAMPLES = 9;

export class WorkbenchController {
  private readonly api: WorkbenchApi;
  private readonly listeners = new Set<Listener>();
  private state: WorkbenchState;

  constructor(api: WorkbenchApi, matrixId: string) {
    this.api = api;
    this.state = {
      phase: "loading",
      matrixId,
      revision: 0,
      concepts: [],
      criteria: [],
      ratings: {},
      scoring: null,
      sliderCriterion: null,
      sensitivity: null,
      conflict: null,
      notice: null,
    };
  }

  getState(): WorkbenchState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  async load(): Promise<void> {
    try {
      await this.syncFromService();
      this.patch({ phase: "ready", conflict: null, notice: null });
    } catch (error) {
      this.patch({ phase: "failed", notice: describe(error) });
    }
  }

  /** Point the slider panel at a criterion and fetch its sensitivity. */
  async selectCriterion(criterionId: string | null): Promise<void> {
    if (criterionId === null) {
      this.patch({ sliderCriterion: null, sensitivity: null });
      return;
    }
    this.patch({ sliderCriterion: criterionId });
    try {
      const sensitivity = await this.api.getSensitivity(
        this.state.matrixId,
        criterionId,
        SENSITIVITY_SAMPLES,
      );
      this.patch({ sensitivity, notice: null });
    } catch (error) {
      this.patch({ sensitivity: null, notice: describe(error) });
    }
  }

  async editRating(concept: string, criterion: string, rating: number): Promise<void> {
    await this.apply({ kind: "rating", concept, criterion, rating });
  }

  async setWeight(criterion: string, weight: string): Promise<void> {
    await this.apply({ kind: "weight", criterion, weight });
  }

  /** Re-read the service, then replay the edit that lost the race. */
  async retryConflict(): Promise<void> {
    const conflict = this.state.conflict;
    if (!conflict) return;
    try {
      await this.syncFromService();
    } catch (error) {
      this.patch({ notice: describe(error) });
      return;
    }
    this.patch({ conflict: null });
    await this.apply(conflict.pending);
  }

  /** Drop the losing edit and show what the winner wrote. */
  async dismissConflict(): Promise<void> {
    if (!this.state.conflict) return;
    this.patch({ conflict: null });
    try {
      await this.syncFromService();
      this.patch({ notice: null });
    } catch (error) {
      this.patch({ notice: describe(error) });
    }
  }

  private async apply(edit: PendingEdit): Promise<void> {
    const revision = this.state.revision;
    try {
      const body =
        edit.kind === "rating"
          ? await this.api.patchRating(this.state.matrixId, {
              revision,
              concept: edit.concept,
              criterion: edit.criterion,
              rating: edit.rating,
            })
          : await this.api.patchWeight(this.state.matrixId, {
              revision,
              criterion: edit.criterion,
              weight: edit.weight,
            });
      this.acceptScoring(body);
      if (edit.kind === "rating") {
        // The service applied exactly this value; echo it into the grid.
        const cells = { ...(this.state.ratings[edit.criterion] ?? {}) };
        cells[edit.concept] = edit.rating;
        this.patch({
          ratings: { ...this.state.ratings, [edit.criterion]: cells },
        });
      }
      this.patch({ conflict: null, notice: null });
      await this.refreshSensitivity();
    } catch (error) {
      if (error instanceof StaleRevisionError) {
        this.patch({
          conflict: { latestRevision: error.latestRevision, pending: edit },
        });
        return;
      }
      if (error instanceof ValidationRejectedError || error instanceof ServiceError) {
        this.patch({ notice: error.message });
        return;
      }
      this.patch({ notice: describe(error) });
    }
  }

  /** Pull project + results; the grid, weights, and revision come from them. */
  private async syncFromService(): Promise<void> {
    const project = await this.api.getProject();
    const matrix = project.project.scoring_matrices.find(
      (candidate) => candidate.id === this.state.matrixId,
    );
    if (!matrix) {
      throw new ServiceError(404, `no scoring matrix '${this.state.matrixId}'`);
    }
    const scoring = await this.api.getScoring(this.state.matrixId);
    this.patch({
      revision: scoring.revision,
      concepts: [...matrix.concepts],
      criteria: matrix.criteria.map((criterion) => ({ ...criterion })),
      ratings: copyRatings(matrix.ratings),
      scoring,
    });
    this.applyWeights(scoring.weights);
    await this.refreshSensitivity();
  }

  private acceptScoring(body: ScoringBody): void {
    this.patch({ scoring: body, revision: body.revision });
    this.applyWeights(body.weights);
  }

  private applyWeights(weights: Record<string, string | null>): void {
    this.patch({
      criteria: this.state.criteria.map((criterion) =>
        criterion.id in weights
          ? { ...criterion, weight: weights[criterion.id] ?? null }
          : criterion,
      ),
    });
  }

  private async refreshSensitivity(): Promise<void> {
    const criterion = this.state.sliderCriterion;
    if (criterion === null) return;
    try {
      const sensitivity = await this.api.getSensitivity(
        this.state.matrixId,
        criterion,
        SENSITIVITY_SAMPLES,
      );
      this.patch({ sensitivity });
    } catch (error) {
      this.patch({ sensitivity: null, notice: describe(error) });
    }
  }

  private patch(partial: Partial<WorkbenchState>): void {
    this.state = { ...this.state, ...partial };
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }
}

function copyRatings(
  ratings: Record<string, Record<string, number>>,
): Record<string, Record<string, number>> {
  const copy: Record<string, Record<string, number>> = {};
  for (const [criterion, cells] of Object.entries(ratings)) {
    copy[criterion] = { ...cells };
  }
  return copy;
}

function describe(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}
