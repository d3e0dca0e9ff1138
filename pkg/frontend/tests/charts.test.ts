import { describe, expect, it } from "vitest";

import { renderSpectrumBars } from "../src/bars.js";
import {
  lookaheadBin,
  renderCurves,
  sciLabel,
  type CurvePoint,
} from "../src/curves.js";

function point(T: number, overrides: Partial<CurvePoint> = {}): CurvePoint {
  return {
    T,
    anticipation: 0.5,
    probability: 0.8,
    variance: 0.1,
    non_narrow: true,
    singular: false,
    positive: true,
    zero_dim: false,
    ...overrides,
  };
}

const OPTIONS = { order: 1, location: -0.5, tFrom: 0, tTo: 72 };

describe("sciLabel", () => {
  it("formats with six decimals and a three digit exponent", () => {
    expect(sciLabel(0)).toBe("0.000000E+000");
    expect(sciLabel(7.2)).toBe("7.200000E+000");
    expect(sciLabel(14.4)).toBe("1.440000E+001");
    expect(sciLabel(0.25375)).toBe("2.537500E-001");
  });
});

describe("lookaheadBin", () => {
  it("uses unit bins over [0, order] with the top edge clipped in", () => {
    expect(lookaheadBin(0.3, 1)).toBe(0);
    expect(lookaheadBin(1.0, 1)).toBe(0);
    expect(lookaheadBin(1.5, 2)).toBe(1);
    expect(lookaheadBin(2.0, 2)).toBe(1);
    expect(lookaheadBin(-0.1, 2)).toBe(0);
  });
});

describe("renderCurves", () => {
  const points = Array.from({ length: 100 }, (_, i) =>
    point(i * 0.72, { zero_dim: i % 10 === 0, singular: i === 5 }),
  );

  it("draws the three curves with their colors and axes", () => {
    const svg = renderCurves(document, points, OPTIONS);
    const curves = svg.querySelectorAll("polyline.curve");
    expect(curves).toHaveLength(3);

    const anticipation = svg.querySelector("polyline.curve-anticipation")!;
    expect(anticipation.getAttribute("stroke")).toBe("red");
    expect(anticipation.getAttribute("data-axis")).toBe("right");

    const probability = svg.querySelector("polyline.curve-probability")!;
    expect(probability.getAttribute("stroke")).toBe("black");
    expect(probability.getAttribute("data-axis")).toBe("left");

    const variance = svg.querySelector("polyline.curve-variance")!;
    expect(variance.getAttribute("stroke")).toBe("green");
    expect(variance.getAttribute("data-axis")).toBe("left");

    expect(anticipation.getAttribute("points")!.split(" ")).toHaveLength(100);
  });

  it("draws four classification bars in documented order and color", () => {
    const svg = renderCurves(document, points, OPTIONS);
    const bars = Array.from(svg.querySelectorAll("path.class-bar"));
    expect(bars.map((b) => b.getAttribute("data-bar"))).toEqual([
      "positive",
      "zero",
      "singular",
      "narrow",
    ]);
    expect(bars.map((b) => b.getAttribute("stroke"))).toEqual([
      "black",
      "red",
      "green",
      "brown",
    ]);
    // top-down: strictly increasing y in the path commands
    const ys = bars.map((b) => Number(/ (\d+(?:\.\d+)?)h/.exec(b.getAttribute("d") ?? " 0h")?.[1] ?? NaN));
    const drawn = ys.filter((y) => !Number.isNaN(y));
    expect(drawn).toEqual([...drawn].sort((a, b) => a - b));
    expect(bars.every((b) => b.getAttribute("stroke-dasharray") !== null)).toBe(true);
  });

  it("respects the curve visibility switches", () => {
    const svg = renderCurves(document, points, {
      ...OPTIONS,
      show: { anticipation: true, probability: false, variance: false },
    });
    expect(svg.querySelectorAll("polyline.curve")).toHaveLength(1);
    expect(svg.querySelector("polyline.curve-anticipation")).not.toBeNull();
  });

  it("labels the look-ahead distribution in scientific notation", () => {
    const svg = renderCurves(document, points, OPTIONS);
    const labels = Array.from(svg.querySelectorAll("text.lookahead-bin"));
    expect(labels).toHaveLength(1);
    expect(labels[0]!.textContent).toBe("1.000000E+000");
  });

  it("marks the highlighted time when asked", () => {
    const svg = renderCurves(document, points, { ...OPTIONS, markT: 36 });
    expect(svg.querySelector("line.max-marker")).not.toBeNull();
  });
});

describe("renderSpectrumBars", () => {
  it("draws one bar per spectrum point scaled by weight", () => {
    const svg = renderSpectrumBars(
      document,
      [-0.6981317007977318, -6.283185307179586 + 2 * Math.PI, 0.5],
      [0.5, 0.5, 0],
    );
    const bars = Array.from(svg.querySelectorAll("rect.measure-bar"));
    expect(bars).toHaveLength(3);
    const heights = bars.map((b) => Number(b.getAttribute("height")));
    expect(heights[0]).toBeGreaterThan(0);
    expect(heights[1]).toBeCloseTo(heights[0]!, 6);
    expect(heights[2]).toBe(0);
  });

  it("labels the position axis over [-pi, pi]", () => {
    const svg = renderSpectrumBars(document, [0], [1]);
    const ticks = Array.from(svg.querySelectorAll("text.position-tick")).map(
      (t) => t.textContent,
    );
    expect(ticks).toEqual(["-3.14159", "-1.57080", "0", "1.57080", "3.14159"]);
  });
});
