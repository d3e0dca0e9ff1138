// Application state and the request-building rules behind the buttons.
//
// Everything here is DOM-free and synchronous so the behavior is unit
// testable; app.ts owns the wiring and the async plumbing.

import type { RunReply } from "./api.js";
import {
  parseValueList,
  validateForm,
  validateMeasure,
  validateSpectrum,
  type FormValues,
} from "./validate.js";
import type {
  Direction,
  MeasureKind,
  RunRequest,
  SearchMode,
  SpectrumKind,
  StepEvent,
  StepView,
} from "./types.js";

export interface PreviousCache {
  eigenvalues: number[] | null;
  measure: number[] | null;
}

export interface UiState {
  lastReply: RunReply | null;
  cache: PreviousCache;
  /** Time the seek/single display currently sits at (parsed value). */
  cursorT: number | null;
  /** Whether the cursor came from a hit (seek chaining starts past it). */
  cursorIsHit: boolean;
  liveSeries: StepEvent[];
}

export function initialState(): UiState {
  return {
    lastReply: null,
    cache: { eigenvalues: null, measure: null },
    cursorT: null,
    cursorIsHit: false,
    liveSeries: [],
  };
}

const SEEK_MODES: SearchMode[] = ["seek-positive", "seek-equal", "seek-dim-change"];

export function isSeekMode(mode: string): boolean {
  return SEEK_MODES.includes(mode as SearchMode);
}

/**
 * Translate the form into a POST /runs body.  The "previous" spectrum
 * option resubmits the cached eigenvalues as a prescribed spectrum,
 * which is the protocol's way to continue with the same spectrum.
 */
export function buildRequest(form: FormValues, cache: PreviousCache): RunRequest {
  validateForm(form);
  const request: RunRequest = {
    mode: form.mode as SearchMode,
    dimension: form.dimension,
    order: form.order,
    location: form.location,
    from: form.from,
    step: form.step,
    measure: form.measure as MeasureKind,
  };
  if (form.mode === "continuous" || form.mode === "random") {
    request.to = form.to;
  }
  if (form.seed !== null) request.seed = form.seed;

  if (form.spectrum === "previous") {
    if (cache.eigenvalues === null) {
      throw new Error("no previous spectrum to reuse yet");
    }
    request.spectrum = "prescribed";
    request.prescribed_spectrum = cache.eigenvalues;
  } else if (form.spectrum === "prescribed") {
    const values = parseValueList(form.prescribedSpectrum);
    validateSpectrum(values, form.dimension);
    request.spectrum = "prescribed";
    request.prescribed_spectrum = values;
  } else {
    request.spectrum = form.spectrum as SpectrumKind;
  }

  if (form.measure === "prescribed") {
    const values = parseValueList(form.prescribedMeasure);
    validateMeasure(values, form.dimension);
    request.prescribed_measure = values;
  } else if (form.measure === "previous") {
    if (cache.measure === null) {
      throw new Error("no previous measure to reuse yet");
    }
    request.previous_measure = cache.measure;
  }
  return request;
}

/**
 * Request for the "<" / ">" buttons.  In single mode the evaluation
 * point moves by one step; in seek modes the search continues from one
 * step past the last hit (or starts at 'from' on the first press).
 * Available in single and seek modes except seek-equal.
 */
export function stepRequest(
  form: FormValues,
  state: UiState,
  direction: Direction,
): RunRequest {
  if (form.mode !== "single" && !isSeekMode(form.mode)) {
    throw new Error("stepping needs single or seek mode");
  }
  if (form.mode === "seek-equal") {
    throw new Error("stepping is not available in seek-equal mode");
  }
  const sign = direction === "forward" ? 1 : -1;
  const stepped: FormValues = { ...form };
  if (state.cursorT !== null) {
    const offset = form.mode === "single" || state.cursorIsHit ? sign * form.step : 0;
    stepped.from = state.cursorT + offset;
  }
  if (state.cache.eigenvalues !== null && stepped.spectrum !== "prescribed") {
    stepped.spectrum = "previous";
  }
  const request = buildRequest(stepped, state.cache);
  request.direction = direction;
  return request;
}

/**
 * Request behind Show Max: one single-mode evaluation at the time of
 * the maximum, on the same spectrum, so the service reports the full
 * measure for the bar display.
 */
export function showMaxRequest(form: FormValues, state: UiState): RunRequest {
  const reply = state.lastReply;
  if (reply === null || reply.run.stats === null || reply.run.stats.time_of_maximum === null) {
    throw new Error("no completed run with a maximum to show");
  }
  if (state.cache.eigenvalues === null) {
    throw new Error("no spectrum cached from the last run");
  }
  const at: FormValues = {
    ...form,
    mode: "single",
    from: reply.run.stats.time_of_maximum.num,
    spectrum: "previous",
  };
  return buildRequest(at, state.cache);
}

/** The step record carrying the displayed measure, if the reply has one. */
export function displayRecord(reply: RunReply): StepView | null {
  const hits = reply.run.hits;
  if (hits !== null && hits.length > 0) {
    return hits[hits.length - 1]!.record;
  }
  const items = reply.run.series?.items ?? [];
  const last = items[items.length - 1];
  return last !== undefined && last.measure !== null ? last : null;
}

/** Fold a finished reply into the state: cache, cursor, display. */
export function applyReply(state: UiState, reply: RunReply): UiState {
  const next: UiState = { ...state, lastReply: reply };
  const spectrum = reply.run.spectrum;
  if (spectrum !== null) {
    next.cache = {
      ...next.cache,
      eigenvalues: spectrum.eigenvalues.map((e) => e.num),
    };
  }
  const record = displayRecord(reply);
  if (record !== null) {
    const d = spectrum?.eigenvalues.length ?? 0;
    if (
      record.measure !== null &&
      record.original_indices !== null &&
      record.measure.length === d
    ) {
      // measure arrives in reduced order; restore the original indexing.
      // A degenerate record (merged points) has no full original-space
      // measure, so the previous-measure cache keeps its old value then.
      const original = new Array<number>(d);
      record.measure.forEach((weight, i) => {
        original[record.original_indices![i]!.num] = weight.num;
      });
      next.cache = { ...next.cache, measure: original };
    }
    next.cursorT = record.T.num;
    next.cursorIsHit = reply.run.hits !== null && reply.run.hits.length > 0;
  }
  return next;
}
