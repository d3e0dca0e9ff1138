import { describe, expect, it } from "vitest";

import { isNum, parseRaw, type RawValue } from "../src/rawjson.js";

function strip(value: RawValue): unknown {
  if (isNum(value)) return value.num;
  if (Array.isArray(value)) return value.map(strip);
  if (value !== null && typeof value === "object") {
    return Object.fromEntries(Object.entries(value).map(([k, v]) => [k, strip(v)]));
  }
  return value;
}

describe("parseRaw", () => {
  it("agrees with JSON.parse on a nested document", () => {
    const text = `{"a": [1, 2.5, -3e-2, 0.0001], "b": {"c": null, "d": true},
      "e": "tab\\t\\"quote\\" \\u00e9", "f": [], "g": {}}`;
    expect(strip(parseRaw(text))).toEqual(JSON.parse(text));
  });

  it("preserves number tokens exactly as written", () => {
    const text = `{"x": 0.500000000000000, "y": 1e-10, "z": -0.0, "w": 6.250000e-01}`;
    const doc = parseRaw(text) as Record<string, RawValue>;
    const raw = (key: string) => {
      const value = doc[key];
      if (!isNum(value)) throw new Error(`${key} is not a number`);
      return value.raw;
    };
    expect(raw("x")).toBe("0.500000000000000");
    expect(raw("y")).toBe("1e-10");
    expect(raw("z")).toBe("-0.0");
    expect(raw("w")).toBe("6.250000e-01");
  });

  it("keeps tokens that stringification would rewrite", () => {
    const doc = parseRaw("[1.0, 10000000000000000000000, 5E2]") as RawValue[];
    const raws = doc.map((v) => (isNum(v) ? v.raw : ""));
    expect(raws).toEqual(["1.0", "10000000000000000000000", "5E2"]);
    // JSON.stringify would have rewritten all three
    expect(JSON.stringify(JSON.parse("[1.0, 10000000000000000000000, 5E2]"))).toBe(
      "[1,1e+22,500]",
    );
  });

  it("decodes string escapes including surrogate pairs", () => {
    const doc = parseRaw(`"\\ud83d\\ude00 ok \\\\ \\/ \\b\\f\\n\\r\\t"`);
    expect(doc).toBe("\u{1f600} ok \\ / \b\f\n\r\t");
  });

  it("rejects malformed documents", () => {
    expect(() => parseRaw("{")).toThrow();
    expect(() => parseRaw("[1,]")).toThrow();
    expect(() => parseRaw("01")).toThrow();
    expect(() => parseRaw("1 2")).toThrow();
    expect(() => parseRaw(`{"a": nul}`)).toThrow();
    expect(() => parseRaw("")).toThrow();
  });

  it("parses the edge numbers of the grammar", () => {
    const doc = parseRaw("[0, -0, 0.5, -1.5e+3, 2E-1]") as RawValue[];
    const nums = doc.map((v) => (isNum(v) ? v.num : NaN));
    expect(nums).toEqual([0, -0, 0.5, -1500, 0.2]);
  });
});
