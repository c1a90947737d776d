/**
 * Page bootstrap: find the service, pick a matrix, mount the workbench.
 *
 * Query parameters:
 *   ?service=http://127.0.0.1:8157   base URL (default: same origin)
 *   ?matrix=concept-scoring          matrix id (default: first in project)
 */

import { WorkbenchApi } from "./api";
import { WorkbenchController } from "./workbench";
import { mountWorkbench } from "./page";

async function start(): Promise<void> {
  const params = new URLSearchParams(location.search);
  const api = new WorkbenchApi(params.get("service") ?? "");

  let matrixId = params.get("matrix");
  if (!matrixId) {
    const project = await api.getProject();
    matrixId = project.project.scoring_matrices[0]?.id ?? null;
  }
  const status = document.getElementById("status");
  if (!matrixId) {
    if (status) status.textContent = "the project has no scoring matrix to edit";
    return;
  }

  const controller = new WorkbenchController(api, matrixId);
  mountWorkbench(controller);
  await controller.load();

  const state = controller.getState();
  const firstRated = state.criteria.find((criterion) => criterion.id in state.ratings);
  if (firstRated) {
    await controller.selectCriterion(firstRated.id);
  }
}

void start().catch((error) => {
  const status = document.getElementById("status");
  if (status) status.textContent = String(error);
});
