// Mirrors of the service JSON payloads.
//
// Responses are parsed with the raw-preserving scanner (rawjson.ts), so
// every number arrives as a Num carrying both the parsed value and the
// exact byte sequence from the wire.  The UI must display raw, never a
// re-formatted value.

export interface Num {
  /** Exact number token as it appeared in the response body. */
  raw: string;
  /** Parsed value, for scaling and comparisons only. */
  num: number;
}

export type SearchMode =
  | "continuous"
  | "random"
  | "seek-positive"
  | "seek-equal"
  | "seek-dim-change"
  | "single";

export type SpectrumKind =
  | "h-atom"
  | "equidistant"
  | "equidistant-alternating"
  | "random"
  | "random-alternating"
  | "prescribed";

export type MeasureKind =
  | "optimum"
  | "equal"
  | "random"
  | "prescribed"
  | "previous";

export type Direction = "forward" | "backward";

/** Body of POST /runs; field names match the service schema. */
export interface RunRequest {
  mode: SearchMode;
  spectrum?: SpectrumKind;
  dimension?: number;
  order?: number;
  location?: number;
  from?: number;
  to?: number;
  step?: number;
  measure?: MeasureKind;
  seed?: number;
  direction?: Direction;
  repeat?: number;
  max_steps?: number;
  prescribed_spectrum?: number[];
  prescribed_measure?: number[];
  previous_measure?: number[];
}

export interface SpectrumView {
  eigenvalues: Num[];
  kind: SpectrumKind;
  seed: Num | null;
}

export interface StatsView {
  steps: Num;
  non_narrow_count: Num;
  non_narrow_fraction: Num;
  degenerate_count: Num;
  degenerate_fraction: Num;
  singular_count: Num;
  singular_fraction: Num;
  positive_count: Num;
  positive_fraction: Num;
  zero_count: Num;
  zero_fraction: Num;
  avg_nonzero_dimension: Num;
  max_measure: Num;
  avg_variance: Num;
  avg_probability: Num;
  max_probability: Num;
  avg_anticipation: Num;
  max_anticipation: Num;
  time_of_maximum: Num | null;
}

export interface StepView {
  index: Num;
  T: Num;
  non_narrow: boolean;
  degenerate: boolean;
  singular: boolean;
  positive: boolean;
  zero_dim: boolean;
  anticipation: Num;
  probability: Num;
  variance: Num;
  nonzero_dimension: Num;
  max_weight: Num;
  measure: Num[] | null;
  positions: Num[] | null;
  original_indices: Num[] | null;
}

export interface SeriesPageView {
  total: Num;
  offset: Num;
  count: Num;
  items: StepView[];
}

export interface HitView {
  T: Num;
  steps_taken: Num;
  record: StepView;
}

export interface RunView {
  id: string;
  status: string;
  mode: SearchMode;
  seed: Num | null;
  spectrum: SpectrumView | null;
  planned_steps: Num | null;
  cancelled: boolean;
  stats: StatsView | null;
  series: SeriesPageView | null;
  hits: HitView[] | null;
  error: string | null;
}

/** One frame of the /events stream (plain JSON, used for live drawing). */
export interface StepEvent {
  event: "step";
  index: number;
  T: number;
  non_narrow: boolean;
  degenerate: boolean;
  singular: boolean;
  positive: boolean;
  zero_dim: boolean;
  anticipation: number;
  probability: number;
  variance: number;
}

export interface HitEvent {
  event: "hit";
  T: number;
  steps_taken: number;
}

export interface DoneEvent {
  event: "done";
  status: string;
}

export type RunEvent = StepEvent | HitEvent | DoneEvent;
