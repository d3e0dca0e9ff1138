// SVG curve chart for continuous/random runs.
//
// Layout follows the classic window: time on the top axis, probability
// and variance against the left axis, the anticipation look-ahead in
// red against the right axis, four dashed classification bars across
// the top of the plot, and the look-ahead distribution in scientific
// notation down the right-hand side.

import type { StepEvent, StepView } from "./types.js";

export interface CurvePoint {
  T: number;
  anticipation: number;
  probability: number;
  variance: number;
  non_narrow: boolean;
  singular: boolean;
  positive: boolean;
  zero_dim: boolean;
}

export function fromStepViews(items: StepView[]): CurvePoint[] {
  return items.map((item) => ({
    T: item.T.num,
    anticipation: item.anticipation.num,
    probability: item.probability.num,
    variance: item.variance.num,
    non_narrow: item.non_narrow,
    singular: item.singular,
    positive: item.positive,
    zero_dim: item.zero_dim,
  }));
}

export function fromEvents(events: StepEvent[]): CurvePoint[] {
  return events.map((event) => ({
    T: event.T,
    anticipation: event.anticipation,
    probability: event.probability,
    variance: event.variance,
    non_narrow: event.non_narrow,
    singular: event.singular,
    positive: event.positive,
    zero_dim: event.zero_dim,
  }));
}

export interface CurveOptions {
  order: number;
  location: number;
  tFrom: number;
  tTo: number;
  width?: number;
  height?: number;
  show?: { anticipation: boolean; probability: boolean; variance: boolean };
  /** Time to highlight with a vertical marker (Show Max). */
  markT?: number | null;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function el(
  doc: Document,
  name: string,
  attrs: Record<string, string>,
  text?: string,
): SVGElement {
  const node = doc.createElementNS(SVG_NS, name) as SVGElement;
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Axis label style of the original display: 0.000000E+000. */
export function sciLabel(value: number): string {
  const text = value.toExponential(6).toUpperCase();
  const [mantissa, exponent] = text.split("E") as [string, string];
  const sign = exponent.startsWith("-") ? "-" : "+";
  const digits = exponent.replace(/^[+-]/, "").padStart(3, "0");
  return `${mantissa}E${sign}${digits}`;
}

/** Histogram bin of a look-ahead value: unit bins over [0, order]. */
export function lookaheadBin(value: number, order: number): number {
  if (order < 1) return 0;
  return Math.floor(Math.min(Math.max(value, 0), order - 1e-12));
}

const BARS: Array<{
  name: string;
  color: string;
  flag: (p: CurvePoint) => boolean;
}> = [
  { name: "positive", color: "black", flag: (p) => p.positive },
  { name: "zero", color: "red", flag: (p) => p.zero_dim },
  { name: "singular", color: "green", flag: (p) => p.singular },
  { name: "narrow", color: "brown", flag: (p) => !p.non_narrow },
];

export function renderCurves(
  doc: Document,
  points: CurvePoint[],
  options: CurveOptions,
): SVGElement {
  const width = options.width ?? 960;
  const height = options.height ?? 420;
  const show = options.show ?? { anticipation: true, probability: true, variance: true };
  const margin = { top: 48, right: 110, bottom: 16, left: 60 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const span = options.tTo - options.tFrom || 1;
  const rightMax = Math.max(options.order - options.location, 1);

  const x = (t: number) => margin.left + ((t - options.tFrom) / span) * plotW;
  const yLeft = (v: number) => margin.top + (1 - Math.min(Math.max(v, 0), 1)) * plotH;
  const yRight = (v: number) =>
    margin.top + (1 - Math.min(Math.max(v, 0), rightMax) / rightMax) * plotH;

  const svg = el(doc, "svg", {
    xmlns: SVG_NS,
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    class: "curves-chart",
  });

  // frame and top time axis
  svg.appendChild(el(doc, "rect", {
    x: String(margin.left), y: String(margin.top),
    width: String(plotW), height: String(plotH),
    fill: "none", stroke: "#888", class: "plot-frame",
  }));
  const ticks = 10;
  for (let i = 0; i <= ticks; i++) {
    const t = options.tFrom + (span * i) / ticks;
    svg.appendChild(el(doc, "text", {
      x: String(x(t)), y: String(margin.top - 30),
      "text-anchor": "middle", "font-size": "9",
      class: "time-tick", transform: `rotate(20 ${x(t)} ${margin.top - 30})`,
    }, sciLabel(t)));
    svg.appendChild(el(doc, "line", {
      x1: String(x(t)), y1: String(margin.top - 4),
      x2: String(x(t)), y2: String(margin.top),
      stroke: "#888",
    }));
  }

  // left and right value axes
  for (let i = 0; i <= 5; i++) {
    const frac = i / 5;
    const y = margin.top + (1 - frac) * plotH;
    svg.appendChild(el(doc, "text", {
      x: String(margin.left - 6), y: String(y + 3),
      "text-anchor": "end", "font-size": "10", class: "left-tick",
    }, frac.toFixed(1)));
    svg.appendChild(el(doc, "text", {
      x: String(width - margin.right + 6), y: String(y + 3),
      "text-anchor": "start", "font-size": "10", class: "right-tick",
    }, (frac * rightMax).toFixed(2)));
  }

  // classification bars, dashed, top-down inside the upper plot band
  const cell = points.length > 0 ? plotW / points.length : plotW;
  BARS.forEach((bar, level) => {
    const y = margin.top + 8 + level * 7;
    let d = "";
    points.forEach((point, i) => {
      if (bar.flag(point)) {
        const px = margin.left + i * cell;
        d += `M${px.toFixed(2)} ${y}h${Math.max(cell, 0.5).toFixed(2)}`;
      }
    });
    svg.appendChild(el(doc, "path", {
      d,
      stroke: bar.color,
      "stroke-dasharray": "3 2",
      fill: "none",
      class: `class-bar class-bar-${bar.name}`,
      "data-bar": bar.name,
    }));
  });

  // curves: anticipation on the right axis, the rest on the left
  const lines: Array<{
    name: string;
    color: string;
    axis: "left" | "right";
    value: (p: CurvePoint) => number;
    visible: boolean;
  }> = [
    { name: "probability", color: "black", axis: "left",
      value: (p) => p.probability, visible: show.probability },
    { name: "variance", color: "green", axis: "left",
      value: (p) => p.variance, visible: show.variance },
    { name: "anticipation", color: "red", axis: "right",
      value: (p) => p.anticipation, visible: show.anticipation },
  ];
  for (const line of lines) {
    if (!line.visible) continue;
    const scale = line.axis === "right" ? yRight : yLeft;
    const coords = points
      .map((p) => `${x(p.T).toFixed(2)},${scale(line.value(p)).toFixed(2)}`)
      .join(" ");
    svg.appendChild(el(doc, "polyline", {
      points: coords,
      fill: "none",
      stroke: line.color,
      "stroke-width": "1",
      class: `curve curve-${line.name}`,
      "data-axis": line.axis,
    }));
  }

  if (options.markT !== undefined && options.markT !== null) {
    const mx = x(options.markT);
    svg.appendChild(el(doc, "line", {
      x1: mx.toFixed(2), y1: String(margin.top),
      x2: mx.toFixed(2), y2: String(margin.top + plotH),
      stroke: "#555", "stroke-dasharray": "5 3",
      class: "max-marker",
    }));
  }

  // look-ahead distribution over [0, order], one label per unit bin
  const positives = points.filter((p) => p.positive);
  if (options.order >= 1 && positives.length > 0) {
    const counts = new Array<number>(options.order).fill(0);
    for (const p of positives) counts[lookaheadBin(p.anticipation, options.order)]!++;
    counts.forEach((count, bin) => {
      const yMid = (yRight(bin) + yRight(bin + 1)) / 2;
      svg.appendChild(el(doc, "text", {
        x: String(width - margin.right + 40), y: String(yMid),
        "text-anchor": "start", "font-size": "9",
        class: "lookahead-bin", "data-bin": String(bin),
      }, sciLabel(count / positives.length)));
    });
  }
  return svg;
}
