// Application wiring: builds the window layout, reads the controls,
// talks to the service, and renders results.
//
// The window is split into four parts, top-down: numerical output,
// text box, graphics box, controls.  The UI computes no physics;
// every displayed number is the exact byte sequence the service sent.

import { ApiClient, PAGE_LIMIT, type RunReply } from "./api.js";
import { renderSpectrumBars } from "./bars.js";
import { fromEvents, fromStepViews, renderCurves, type CurveOptions } from "./curves.js";
import { measureRows, seriesCsv, statsCsv, statsRows } from "./format.js";
import {
  applyReply,
  buildRequest,
  displayRecord,
  initialState,
  isSeekMode,
  showMaxRequest,
  stepRequest,
  type UiState,
} from "./state.js";
import type { Direction, RunRequest, StatsView, StepView } from "./types.js";
import {
  parseTimeExpression,
  prescribedSections,
  parseValueList,
  validateMeasure,
  validateSpectrum,
  type FormValues,
} from "./validate.js";

const LIVE_REDRAW_EVERY = 400;

const STATS_LAYOUT: Array<[string, string, string | null]> = [
  ["Steps", "steps", null],
  ["Non-narrow", "non_narrow_count", "non_narrow_fraction"],
  ["Degenerate", "degenerate_count", "degenerate_fraction"],
  ["Singular", "singular_count", "singular_fraction"],
  ["Positive", "positive_count", "positive_fraction"],
  ["Zero", "zero_count", "zero_fraction"],
  ["Non-zero dimension", "avg_nonzero_dimension", null],
  ["Max. measure", "max_measure", null],
  ["Ave. variance", "avg_variance", null],
  ["Ave. probability", "avg_probability", null],
  ["Max. probability", "max_probability", null],
  ["Ave. anticipation", "avg_anticipation", null],
  ["Max. anticipation", "max_anticipation", null],
  ["Time of maximum", "time_of_maximum", null],
];

const APP_HTML = `
<div class="app">
  <section id="numerical-output" aria-label="numerical output"></section>
  <section id="text-box" aria-label="text box">
    <pre id="text-output"></pre>
    <label for="prescribed-input">Prescribed values (d per prescribed option, spectrum first)</label>
    <textarea id="prescribed-input" rows="2" spellcheck="false"></textarea>
    <div id="input-status"></div>
  </section>
  <section id="graphics-box" aria-label="graphics box">
    <div id="curves-slot"></div>
    <div id="bars-slot"></div>
  </section>
  <section id="controls" aria-label="controls">
    <fieldset id="panel-mode"><legend>Search mode</legend>
      <label><input type="radio" name="mode" value="continuous" checked> Continuous</label>
      <label><input type="radio" name="mode" value="random"> Random</label>
      <label><input type="radio" name="mode" value="seek-positive"> Seek positive</label>
      <label><input type="radio" name="mode" value="seek-equal"> Seek equal</label>
      <label><input type="radio" name="mode" value="seek-dim-change"> Seek dim. chg.</label>
      <label><input type="radio" name="mode" value="single"> Single</label>
    </fieldset>
    <fieldset id="panel-problem"><legend>Problem</legend>
      <label>Spectrum <select id="spectrum">
        <option value="h-atom" selected>H Atom</option>
        <option value="equidistant">Equidistant</option>
        <option value="equidistant-alternating">Equidistant alternating</option>
        <option value="random">Random</option>
        <option value="random-alternating">Random alternating</option>
        <option value="prescribed">Prescribed</option>
        <option value="previous">Previous</option>
      </select></label>
      <label>Measure <select id="measure">
        <option value="optimum" selected>Optimum</option>
        <option value="equal">Equal</option>
        <option value="random">Random</option>
        <option value="prescribed">Prescribed</option>
        <option value="previous">Previous</option>
      </select></label>
      <label>Order <input id="order" type="number" value="1" min="1" step="1"></label>
      <label>Dimension <input id="dimension" type="number" value="3" min="3" step="1"></label>
      <label>Location <input id="location" type="number" value="-0.5" step="any"></label>
      <label>Seed <input id="seed" type="number" step="1" placeholder="auto"></label>
    </fieldset>
    <fieldset id="panel-curves"><legend>Curves</legend>
      <label><input type="checkbox" id="show-anticipation" checked> Anticipation</label>
      <label><input type="checkbox" id="show-probability" checked> Probability</label>
      <label><input type="checkbox" id="show-variance" checked> Variance</label>
    </fieldset>
    <fieldset id="panel-time"><legend>Time and action</legend>
      <label>Expression <input id="time-expression" type="text" placeholder="9/16 or pi/2"></label>
      <button id="expr-to-from" type="button">to From</button>
      <button id="expr-to-to" type="button">to To</button>
      <label>From <input id="from" type="number" value="0" step="any"></label>
      <label>To <input id="to" type="number" value="72" step="any"></label>
      <label>Step size <input id="step" type="number" value="0.01" step="any"></label>
      <label>Step number <output id="step-number"></output></label>
      <label>Time <output id="time-display"></output></label>
      <div class="action-row">
        <button id="btn-back" type="button">&lt;</button>
        <button id="btn-go" type="button">Go</button>
        <button id="btn-forward" type="button">&gt;</button>
        <button id="btn-stop" type="button">Stop</button>
      </div>
    </fieldset>
    <fieldset id="panel-results"><legend>Results</legend>
      <button id="btn-show-max" type="button">Show Max</button>
      <button id="btn-save-stats" type="button">Save stats CSV</button>
      <button id="btn-save-series" type="button">Save series CSV</button>
      <button id="btn-save-svg" type="button">Save plot SVG</button>
      <button id="btn-clear" type="button">Clear</button>
    </fieldset>
  </section>
</div>
`;

function isCurvesMode(mode: string): boolean {
  return mode === "continuous" || mode === "random";
}

export class App {
  state: UiState = initialState();
  /** Last reply that carried a curve series, kept for redraws. */
  private curvesReply: RunReply | null = null;
  private curvesForm: FormValues | null = null;
  private maxMarkT: number | null = null;
  private activeRunId: string | null = null;
  private streamAbort: AbortController | null = null;
  running = false;

  constructor(
    private readonly doc: Document,
    private readonly client: ApiClient,
    private readonly root: HTMLElement,
  ) {
    root.innerHTML = APP_HTML;
    this.wire();
    this.renderStats(null);
  }

  private $<T extends HTMLElement>(id: string): T {
    const node = this.root.querySelector(`#${id}`);
    if (node === null) throw new Error(`missing element #${id}`);
    return node as T;
  }

  private input(id: string): HTMLInputElement {
    return this.$<HTMLInputElement>(id);
  }

  private wire(): void {
    this.$("btn-go").addEventListener("click", () => void this.go());
    this.$("btn-stop").addEventListener("click", () => void this.stop());
    this.$("btn-back").addEventListener("click", () => void this.step("backward"));
    this.$("btn-forward").addEventListener("click", () => void this.step("forward"));
    this.$("btn-show-max").addEventListener("click", () => void this.showMax());
    this.$("btn-clear").addEventListener("click", () => this.clear());
    this.$("btn-save-stats").addEventListener("click", () => this.saveStats());
    this.$("btn-save-series").addEventListener("click", () => void this.saveSeries());
    this.$("btn-save-svg").addEventListener("click", () => void this.saveSvg());
    this.$("expr-to-from").addEventListener("click", () => this.applyExpression("from"));
    this.$("expr-to-to").addEventListener("click", () => this.applyExpression("to"));
    const revalidate = () => this.updateInputStatus();
    this.$("prescribed-input").addEventListener("input", revalidate);
    this.$("spectrum").addEventListener("change", revalidate);
    this.$("measure").addEventListener("change", revalidate);
    this.input("dimension").addEventListener("input", revalidate);
    for (const box of ["show-anticipation", "show-probability", "show-variance"]) {
      this.$(box).addEventListener("change", () => this.redrawCurves());
    }
  }

  collectForm(): FormValues {
    const mode =
      this.root.querySelector<HTMLInputElement>("input[name=mode]:checked")?.value ??
      "continuous";
    const spectrum = this.$<HTMLSelectElement>("spectrum").value;
    const measure = this.$<HTMLSelectElement>("measure").value;
    const dimension = Number(this.input("dimension").value);
    const seedText = this.input("seed").value.trim();
    const sections = prescribedSections(
      this.$<HTMLTextAreaElement>("prescribed-input").value,
      dimension,
      spectrum === "prescribed",
      measure === "prescribed",
    );
    return {
      mode,
      spectrum,
      measure,
      order: Number(this.input("order").value),
      dimension,
      location: Number(this.input("location").value),
      from: Number(this.input("from").value),
      to: Number(this.input("to").value),
      step: Number(this.input("step").value),
      seed: seedText === "" ? null : Number(seedText),
      prescribedSpectrum: sections.spectrum,
      prescribedMeasure: sections.measure,
    };
  }

  /** Live check of the prescribed input; no request involved. */
  updateInputStatus(): void {
    const status = this.$("input-status");
    const spectrum = this.$<HTMLSelectElement>("spectrum").value;
    const measure = this.$<HTMLSelectElement>("measure").value;
    if (spectrum !== "prescribed" && measure !== "prescribed") {
      status.textContent = "";
      status.className = "";
      return;
    }
    try {
      const dimension = Number(this.input("dimension").value);
      const text = this.$<HTMLTextAreaElement>("prescribed-input").value;
      const parts = prescribedSections(
        text,
        dimension,
        spectrum === "prescribed",
        measure === "prescribed",
      );
      if (spectrum === "prescribed") {
        validateSpectrum(parseValueList(parts.spectrum), dimension);
      }
      if (measure === "prescribed") {
        validateMeasure(parseValueList(parts.measure), dimension);
      }
      status.textContent = "input ok";
      status.className = "ok";
    } catch (error) {
      status.textContent = String((error as Error).message);
      status.className = "error";
    }
  }

  private applyExpression(target: "from" | "to"): void {
    try {
      const value = parseTimeExpression(this.input("time-expression").value);
      this.input(target).value = String(value);
    } catch (error) {
      this.showError((error as Error).message);
    }
  }

  showError(message: string): void {
    const out = this.$("text-output");
    out.textContent = `error: ${message}`;
    out.className = "error";
  }

  private writeTextOutput(lines: string[]): void {
    const out = this.$("text-output");
    out.textContent = lines.join("\n");
    out.className = "";
  }

  async go(): Promise<void> {
    let request: RunRequest;
    try {
      request = buildRequest(this.collectForm(), this.state.cache);
    } catch (error) {
      this.showError((error as Error).message);
      return;
    }
    await this.submitAndRender(request);
  }

  async step(direction: Direction): Promise<void> {
    let request: RunRequest;
    try {
      request = stepRequest(this.collectForm(), this.state, direction);
    } catch (error) {
      this.showError((error as Error).message);
      return;
    }
    await this.submitAndRender(request);
  }

  async showMax(): Promise<void> {
    let request: RunRequest;
    try {
      request = showMaxRequest(this.collectForm(), this.state);
    } catch (error) {
      this.showError((error as Error).message);
      return;
    }
    const marker = this.state.lastReply?.run.stats?.time_of_maximum?.num ?? null;
    await this.submitAndRender(request);
    this.maxMarkT = marker;
    this.redrawCurves();
  }

  async stop(): Promise<void> {
    this.streamAbort?.abort();
    if (this.activeRunId !== null) {
      try {
        await this.client.cancel(this.activeRunId);
      } catch {
        // already finished or gone; nothing to stop
      }
    }
  }

  clear(): void {
    const out = this.$("text-output");
    out.textContent = "";
    out.className = "";
    this.$<HTMLTextAreaElement>("prescribed-input").value = "";
    this.updateInputStatus();
  }

  async submitAndRender(request: RunRequest): Promise<void> {
    if (this.running) {
      this.showError("a run is already active; Stop it first");
      return;
    }
    this.running = true;
    try {
      let reply = await this.client.submit(request);
      this.activeRunId = reply.run.id;
      if (reply.run.status === "running") {
        await this.followLive(reply.run.id, request);
        reply = await this.client.getRun(reply.run.id, 0, PAGE_LIMIT);
      }
      this.state = applyReply(this.state, reply);
      this.maxMarkT = null;
      this.renderReply(reply, request);
    } catch (error) {
      this.showError((error as Error).message);
    } finally {
      this.running = false;
      this.activeRunId = null;
    }
  }

  /** Stream events of an async run, drawing curves as they arrive. */
  private async followLive(id: string, request: RunRequest): Promise<void> {
    const live = isCurvesMode(request.mode);
    this.state.liveSeries = [];
    this.streamAbort = new AbortController();
    const stepNumber = this.$("step-number");
    const timeDisplay = this.$("time-display");
    try {
      await this.client.streamEvents(
        id,
        (event) => {
          if (event.event === "step") {
            stepNumber.textContent = String(event.index + 1);
            timeDisplay.textContent = String(event.T);
            if (live) {
              this.state.liveSeries.push(event);
              if (this.state.liveSeries.length % LIVE_REDRAW_EVERY === 0) {
                this.drawLive(request);
              }
            }
          }
        },
        this.streamAbort.signal,
      );
    } catch {
      // stream aborted or dropped; the final fetch still renders the result
    } finally {
      this.streamAbort = null;
    }
    // the stream ends on the done frame, but make completion explicit
    await this.client.waitForCompletion(id);
  }

  private curveOptions(form: FormValues): CurveOptions {
    return {
      order: form.order,
      location: form.location,
      tFrom: form.from,
      tTo: form.to,
      show: {
        anticipation: this.input("show-anticipation").checked,
        probability: this.input("show-probability").checked,
        variance: this.input("show-variance").checked,
      },
      markT: this.maxMarkT,
    };
  }

  private drawLive(request: RunRequest): void {
    const form = this.collectForm();
    form.from = request.from ?? form.from;
    form.to = request.to ?? form.to;
    const svg = renderCurves(this.doc, fromEvents(this.state.liveSeries), this.curveOptions(form));
    this.$("curves-slot").replaceChildren(svg);
  }

  private redrawCurves(): void {
    if (this.curvesReply === null || this.curvesForm === null) return;
    const items = this.curvesReply.run.series?.items ?? [];
    const svg = renderCurves(
      this.doc,
      fromStepViews(items),
      this.curveOptions(this.curvesForm),
    );
    this.$("curves-slot").replaceChildren(svg);
  }

  private renderReply(reply: RunReply, request: RunRequest): void {
    const run = reply.run;
    if (run.status === "failed") {
      this.showError(run.error ?? "run failed");
      return;
    }
    this.renderStats(run.stats);
    if (isCurvesMode(run.mode)) {
      this.curvesReply = reply;
      const form = this.collectForm();
      form.from = request.from ?? form.from;
      form.to = request.to ?? form.to;
      form.order = request.order ?? form.order;
      form.location = request.location ?? form.location;
      this.curvesForm = form;
      this.redrawCurves();
      const items = run.series?.items ?? [];
      const last = items[items.length - 1];
      if (run.stats !== null) this.$("step-number").textContent = run.stats.steps.raw;
      if (last !== undefined) this.$("time-display").textContent = last.T.raw;
      const total = run.series?.total.num ?? 0;
      const lines =
        run.status === "cancelled"
          ? ["run cancelled; showing the steps evaluated so far"]
          : [];
      if (total > items.length) {
        lines.push(`showing the first ${items.length} of ${total} steps`);
      }
      this.writeTextOutput(lines);
      return;
    }
    // seek and single modes display the record's reduced measure
    const record = displayRecord(reply);
    const lines: string[] = [];
    if (run.hits !== null) {
      for (const hit of run.hits) {
        lines.push(`hit at T = ${hit.T.raw} after ${hit.steps_taken.raw} steps`);
      }
      if (run.hits.length === 0) {
        lines.push(
          run.status === "cancelled"
            ? "stopped before a hit was found"
            : "no hit within the step limit",
        );
      }
    }
    if (record !== null) {
      lines.push(`T = ${record.T.raw}`);
      const rows = measureRows(record);
      if (rows.length > 0) {
        lines.push("Index  Spectrum                 Measure");
        for (const row of rows) {
          lines.push(`${row.index.padEnd(7)}${row.position.padEnd(25)}${row.weight}`);
        }
      }
      this.$("time-display").textContent = record.T.raw;
      this.$("step-number").textContent = "1";
      const positions = record.positions?.map((p) => p.num) ?? [];
      const weights = record.measure?.map((w) => w.num) ?? [];
      const svg = renderSpectrumBars(this.doc, positions, weights);
      this.$("bars-slot").replaceChildren(svg);
    } else {
      this.$("bars-slot").replaceChildren();
    }
    this.writeTextOutput(lines);
  }

  renderStats(stats: StatsView | null): void {
    const section = this.$("numerical-output");
    section.replaceChildren();
    const table = this.doc.createElement("table");
    table.id = "stats-table";
    for (const [label, countKey, fracKey] of STATS_LAYOUT) {
      const row = this.doc.createElement("tr");
      const name = this.doc.createElement("td");
      name.textContent = label;
      row.appendChild(name);
      const value = this.doc.createElement("td");
      if (stats !== null) {
        const main = stats[countKey as keyof StatsView];
        const span = this.doc.createElement("span");
        span.setAttribute("data-stat", countKey);
        span.textContent = main === null ? "-" : (main as { raw: string }).raw;
        value.appendChild(span);
        if (fracKey !== null) {
          const frac = this.doc.createElement("span");
          frac.setAttribute("data-stat", fracKey);
          frac.textContent = (stats[fracKey as keyof StatsView] as { raw: string }).raw;
          value.appendChild(this.doc.createTextNode(" ("));
          value.appendChild(frac);
          value.appendChild(this.doc.createTextNode(")"));
        }
      } else {
        value.textContent = "-";
      }
      row.appendChild(value);
      table.appendChild(row);
    }
    section.appendChild(table);
  }

  saveStats(): void {
    const stats = this.state.lastReply?.run.stats ?? null;
    if (stats === null) {
      this.showError("no statistics to save yet");
      return;
    }
    this.download("stats.csv", "text/csv", statsCsv(stats));
  }

  async saveSeries(): Promise<void> {
    const reply = this.state.lastReply;
    if (reply === null) {
      this.showError("no series to save yet");
      return;
    }
    try {
      const items: StepView[] = [];
      for (const page of await this.client.fetchFullSeries(reply.run.id)) {
        items.push(...(page.run.series?.items ?? []));
      }
      this.download("series.csv", "text/csv", seriesCsv(items));
    } catch (error) {
      this.showError((error as Error).message);
    }
  }

  async saveSvg(): Promise<void> {
    const reply = this.state.lastReply;
    if (reply === null) {
      this.showError("no run to plot yet");
      return;
    }
    try {
      const svg = await this.client.fetchPlotSvg(reply.run.id);
      this.download("plot.svg", "image/svg+xml", svg);
    } catch (error) {
      this.showError((error as Error).message);
    }
  }

  private download(filename: string, mime: string, content: string): void {
    const view = this.doc.defaultView;
    if (view === null || typeof view.URL.createObjectURL !== "function") {
      this.showError("downloads are not available in this environment");
      return;
    }
    const url = view.URL.createObjectURL(new view.Blob([content], { type: mime }));
    const anchor = this.doc.createElement("a");
    anchor.href = url;
    anchor.download = filename;
    this.doc.body.appendChild(anchor);
    anchor.click();
    anchor.remove();
    view.URL.revokeObjectURL(url);
  }
}

export function initApp(doc: Document, client: ApiClient, root?: HTMLElement): App {
  const container = root ?? doc.body;
  return new App(doc, client, container);
}
