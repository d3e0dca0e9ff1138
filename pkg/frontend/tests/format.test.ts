import { describe, expect, it } from "vitest";

import { measureRows, seriesCsv, statsCsv, statsRows } from "../src/format.js";
import type { Num, StatsView, StepView } from "../src/types.js";

function num(raw: string): Num {
  return { raw, num: Number(raw) };
}

const STATS: StatsView = {
  steps: num("7200"),
  non_narrow_count: num("1827"),
  non_narrow_fraction: num("0.25375"),
  degenerate_count: num("56"),
  degenerate_fraction: num("0.007777777777777778"),
  singular_count: num("56"),
  singular_fraction: num("0.007777777777777778"),
  positive_count: num("1824"),
  positive_fraction: num("0.9983579638751368"),
  zero_count: num("24"),
  zero_fraction: num("0.013157894736842105"),
  avg_nonzero_dimension: num("2.986842105263158"),
  max_measure: num("0.5000000000000001"),
  avg_variance: num("0.13178219"),
  avg_probability: num("0.787740"),
  max_probability: num("1.0"),
  avg_anticipation: num("0.787843"),
  max_anticipation: num("1.4905104"),
  time_of_maximum: num("62.24"),
};

describe("statsCsv", () => {
  it("emits one row per statistic with the raw tokens", () => {
    const csv = statsCsv(STATS);
    expect(csv).toContain("statistic,value\n");
    expect(csv).toContain("positive_fraction,0.9983579638751368\n");
    expect(csv).toContain("max_measure,0.5000000000000001\n");
    expect(csv).toContain("time_of_maximum,62.24\n");
    expect(csv.trim().split("\n")).toHaveLength(1 + statsRows(STATS).length);
  });

  it("leaves a missing time of maximum empty", () => {
    const csv = statsCsv({ ...STATS, time_of_maximum: null });
    expect(csv).toContain("time_of_maximum,\n");
  });
});

function step(): StepView {
  return {
    index: num("5625"),
    T: num("0.5625"),
    non_narrow: true,
    degenerate: true,
    singular: false,
    positive: true,
    zero_dim: true,
    anticipation: num("0.4375"),
    probability: num("0.9999999999999999"),
    variance: num("0.1"),
    nonzero_dimension: num("2"),
    max_weight: num("0.5000000000000002"),
    measure: [num("0.4999999999999998"), num("0.5000000000000002"), num("0.0")],
    positions: [num("-0.6981317007977318"), num("-6.283185307179586"), num("0.0")],
    original_indices: [num("2"), num("0"), num("1")],
  };
}

describe("seriesCsv", () => {
  it("writes raw tokens and booleans per step", () => {
    const csv = seriesCsv([step()]);
    const [header, row] = csv.trim().split("\n") as [string, string];
    expect(header).toBe(
      "index,T,non_narrow,degenerate,singular,positive,zero_dim," +
        "anticipation,probability,variance,nonzero_dimension,max_weight",
    );
    expect(row).toBe(
      "5625,0.5625,true,true,false,true,true," +
        "0.4375,0.9999999999999999,0.1,2,0.5000000000000002",
    );
  });
});

describe("measureRows", () => {
  it("pairs positions and weights with original indices", () => {
    const rows = measureRows(step());
    expect(rows).toEqual([
      { index: "2", position: "-0.6981317007977318", weight: "0.4999999999999998" },
      { index: "0", position: "-6.283185307179586", weight: "0.5000000000000002" },
      { index: "1", position: "0.0", weight: "0.0" },
    ]);
  });

  it("is empty without a measure", () => {
    expect(measureRows({ ...step(), measure: null })).toEqual([]);
  });
});
