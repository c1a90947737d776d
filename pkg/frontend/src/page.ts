/**
 * Binds a controller to the page skeleton (see index.html for the ids).
 * Kept separate from the bootstrap so tests can mount a workbench into a
 * jsdom body without running the page's startup fetches.
 */

import { WorkbenchController, WorkbenchState } from "./workbench";
import {
  renderConflict,
  renderCriterionSelect,
  renderCrossingList,
  renderNotice,
  renderScoringTable,
  renderSlider,
  renderStatus,
} from "./render";

export const PAGE_SKELETON = `
  <p id="status">loading…</p>
  <div id="conflict" hidden></div>
  <div id="notice" hidden></div>
  <div id="scoring"></div>
  <label for="criterion-select">Sweep criterion
    <select id="criterion-select"></select>
  </label>
  <div id="slider-wrap" hidden>
    <div class="marker-track"></div>
    <input type="range" min="0" max="990" step="5" value="0">
    <p class="slider-readout"></p>
  </div>
  <div id="crossing-list"></div>
`;

export function mountWorkbench(
  controller: WorkbenchController,
  root: ParentNode = document,
): () => void {
  const pick = <T extends HTMLElement>(selector: string): T => {
    const el = root.querySelector<T>(selector);
    if (!el) throw new Error(`page is missing ${selector}`);
    return el;
  };

  const status = pick<HTMLElement>("#status");
  const notice = pick<HTMLElement>("#notice");
  const conflict = pick<HTMLElement>("#conflict");
  const table = pick<HTMLElement>("#scoring");
  const select = pick<HTMLSelectElement>("#criterion-select");
  const sliderWrap = pick<HTMLElement>("#slider-wrap");
  const crossings = pick<HTMLElement>("#crossing-list");

  const tableHandlers = {
    onRating: (concept: string, criterion: string, rating: number) =>
      void controller.editRating(concept, criterion, rating),
  };
  const sliderHandlers = {
    onWeight: (criterion: string, weight: string) =>
      void controller.setWeight(criterion, weight),
    onCriterion: (criterion: string) => void controller.selectCriterion(criterion),
  };
  const conflictHandlers = {
    onRetry: () => void controller.retryConflict(),
    onDismiss: () => void controller.dismissConflict(),
  };

  const paint = (state: WorkbenchState): void => {
    renderStatus(status, state);
    renderNotice(notice, state.notice);
    renderConflict(conflict, state, conflictHandlers);
    renderScoringTable(table, state, tableHandlers);
    renderCriterionSelect(select, state, sliderHandlers);
    renderSlider(sliderWrap, state, sliderHandlers);
    renderCrossingList(crossings, state.sensitivity);
  };

  const unsubscribe = controller.subscribe(paint);
  paint(controller.getState());
  return unsubscribe;
}
