// Client-side form constraints, enforced before any request is sent.

export const MEASURE_SUM_TOL = 1.0e-10;

/** Split prescribed input on spaces, commas, tabs or newlines. */
export function parseValueList(text: string): number[] {
  const tokens = text.split(/[\s,]+/).filter((t) => t.length > 0);
  return tokens.map((token) => {
    const value = Number(token);
    if (!Number.isFinite(value)) {
      throw new Error(`'${token}' is not a number`);
    }
    return value;
  });
}

/** d non-negative weights summing to 1 within the documented error. */
export function validateMeasure(values: number[], dimension: number): void {
  if (values.length !== dimension) {
    throw new Error(`measure needs ${dimension} values, got ${values.length}`);
  }
  for (const value of values) {
    if (value < 0) throw new Error(`measure value ${value} is negative`);
  }
  const sum = values.reduce((a, b) => a + b, 0);
  if (Math.abs(sum - 1) > MEASURE_SUM_TOL) {
    throw new Error(`measure sums to ${sum}, expected 1 within 1e-10`);
  }
}

export function validateSpectrum(values: number[], dimension: number): void {
  if (values.length !== dimension) {
    throw new Error(`spectrum needs ${dimension} values, got ${values.length}`);
  }
  const seen = new Set(values);
  if (seen.size !== values.length) {
    throw new Error("spectrum values must be mutually different");
  }
}

export interface FormValues {
  mode: string;
  spectrum: string;
  measure: string;
  order: number;
  dimension: number;
  location: number;
  from: number;
  to: number;
  step: number;
  seed: number | null;
  prescribedSpectrum: string;
  prescribedMeasure: string;
}

/** Cross-field checks shared by every submission path. */
export function validateForm(form: FormValues): void {
  if (!Number.isInteger(form.order) || form.order < 1) {
    throw new Error("order must be a positive integer");
  }
  if (!Number.isInteger(form.dimension) || form.dimension < 2 * form.order + 1) {
    throw new Error(`dimension must be an integer >= ${2 * form.order + 1}`);
  }
  if (!(form.step > 0)) {
    throw new Error("step size must be positive");
  }
  if (!Number.isFinite(form.from)) {
    throw new Error("'from' must be a number");
  }
  if ((form.mode === "continuous" || form.mode === "random") && form.to <= form.from) {
    throw new Error("'to' must be greater than 'from'");
  }
}

export interface PrescribedText {
  spectrum: string;
  measure: string;
}

/**
 * Slice the input box tokens into prescribed spectrum and measure
 * parts: d values per prescribed option, 2d when both are prescribed,
 * spectrum first.
 */
export function prescribedSections(
  text: string,
  dimension: number,
  wantSpectrum: boolean,
  wantMeasure: boolean,
): PrescribedText {
  if (!wantSpectrum && !wantMeasure) return { spectrum: "", measure: "" };
  const tokens = text.split(/[\s,]+/).filter((t) => t.length > 0);
  const expected = dimension * ((wantSpectrum ? 1 : 0) + (wantMeasure ? 1 : 0));
  if (tokens.length !== expected) {
    throw new Error(`prescribed input needs ${expected} values, got ${tokens.length}`);
  }
  return {
    spectrum: wantSpectrum ? tokens.slice(0, dimension).join(" ") : "",
    measure: wantMeasure ? tokens.slice(wantSpectrum ? dimension : 0).join(" ") : "",
  };
}

/**
 * Rational/pi time expression: "9/16", "pi/2", "2pi/3", "0.75", "pi".
 * Returns the numeric value.
 */
export function parseTimeExpression(text: string): number {
  const match = /^\s*(\d+(?:\.\d+)?)?\s*(pi)?\s*(?:\/\s*(\d+(?:\.\d+)?))?\s*$/i.exec(text);
  if (!match || (match[1] === undefined && match[2] === undefined)) {
    throw new Error(`cannot read '${text}' as a number or rational/pi expression`);
  }
  const numerator = match[1] !== undefined ? Number(match[1]) : 1;
  const piFactor = match[2] !== undefined ? Math.PI : 1;
  const denominator = match[3] !== undefined ? Number(match[3]) : 1;
  if (denominator === 0) throw new Error("division by zero");
  return (numerator * piFactor) / denominator;
}
