// SVG bar chart of a spectral measure: one vertical bar per spectrum
// point, positions on the bottom axis over [-pi, pi], weights on the
// left axis.

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

export interface BarsOptions {
  width?: number;
  height?: number;
}

export function renderSpectrumBars(
  doc: Document,
  positions: number[],
  weights: number[],
  options: BarsOptions = {},
): SVGElement {
  const width = options.width ?? 960;
  const height = options.height ?? 260;
  const margin = { top: 12, right: 24, bottom: 28, left: 60 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const maxWeight = Math.max(0.1, ...weights);

  const x = (pos: number) => margin.left + ((pos + Math.PI) / (2 * Math.PI)) * plotW;
  const y = (w: number) => margin.top + (1 - Math.min(Math.max(w, 0), maxWeight) / maxWeight) * plotH;

  const svg = el(doc, "svg", {
    xmlns: SVG_NS,
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    class: "bars-chart",
  });
  svg.appendChild(el(doc, "rect", {
    x: String(margin.left), y: String(margin.top),
    width: String(plotW), height: String(plotH),
    fill: "none", stroke: "#888", class: "plot-frame",
  }));

  const xticks: Array<[number, string]> = [
    [-Math.PI, "-3.14159"],
    [-Math.PI / 2, "-1.57080"],
    [0, "0"],
    [Math.PI / 2, "1.57080"],
    [Math.PI, "3.14159"],
  ];
  for (const [pos, label] of xticks) {
    svg.appendChild(el(doc, "line", {
      x1: String(x(pos)), y1: String(margin.top + plotH),
      x2: String(x(pos)), y2: String(margin.top + plotH + 4),
      stroke: "#888",
    }));
    svg.appendChild(el(doc, "text", {
      x: String(x(pos)), y: String(margin.top + plotH + 16),
      "text-anchor": "middle", "font-size": "10", class: "position-tick",
    }, label));
  }
  for (let i = 0; i <= 4; i++) {
    const frac = i / 4;
    svg.appendChild(el(doc, "text", {
      x: String(margin.left - 6), y: String(y(frac * maxWeight) + 3),
      "text-anchor": "end", "font-size": "10", class: "weight-tick",
    }, (frac * maxWeight).toFixed(3)));
  }

  positions.forEach((pos, i) => {
    const weight = weights[i] ?? 0;
    const barX = x(pos) - 3;
    const barY = y(weight);
    svg.appendChild(el(doc, "rect", {
      x: barX.toFixed(2),
      y: barY.toFixed(2),
      width: "6",
      height: Math.max(margin.top + plotH - barY, 0).toFixed(2),
      fill: "steelblue",
      class: "measure-bar",
      "data-index": String(i),
    }));
  });
  return svg;
}
