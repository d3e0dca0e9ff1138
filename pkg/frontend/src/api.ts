// HTTP client for the explorer service.  Responses are kept as text
// and parsed with the raw-preserving scanner so the UI can display the
// exact bytes the service sent.

import { runView } from "./payload.js";
import { parseRaw } from "./rawjson.js";
import type { RunEvent, RunRequest, RunView } from "./types.js";

export const PAGE_LIMIT = 10_000;

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

export interface RunReply {
  status: number;
  /** Exact response body; the source of truth for displayed numbers. */
  text: string;
  run: RunView;
}

async function errorDetail(response: Response): Promise<string> {
  const text = await response.text();
  try {
    const body = JSON.parse(text) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
  } catch {
    // fall through to the raw body
  }
  return text || `HTTP ${response.status}`;
}

export class ApiClient {
  constructor(readonly base: string, private readonly fetchFn: typeof fetch = fetch) {}

  private url(path: string): string {
    return `${this.base}${path}`;
  }

  async health(): Promise<boolean> {
    try {
      const response = await this.fetchFn(this.url("/health"));
      return response.ok;
    } catch {
      return false;
    }
  }

  async submit(request: RunRequest): Promise<RunReply> {
    const response = await this.fetchFn(this.url("/runs"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
    if (!response.ok && response.status !== 202) {
      throw new ServiceError(response.status, await errorDetail(response));
    }
    const text = await response.text();
    return { status: response.status, text, run: runView(parseRaw(text)) };
  }

  async getRun(id: string, offset = 0, limit = PAGE_LIMIT): Promise<RunReply> {
    const response = await this.fetchFn(
      this.url(`/runs/${id}?offset=${offset}&limit=${limit}`),
    );
    if (!response.ok) {
      throw new ServiceError(response.status, await errorDetail(response));
    }
    const text = await response.text();
    return { status: response.status, text, run: runView(parseRaw(text)) };
  }

  /** Poll until the run leaves the "running" state; returns the last reply. */
  async waitForCompletion(id: string, pollMs = 250): Promise<RunReply> {
    for (;;) {
      const reply = await this.getRun(id, 0, 0);
      if (reply.run.status !== "running") return reply;
      await new Promise((resolve) => setTimeout(resolve, pollMs));
    }
  }

  /** All series pages of a finished run, in one reply-shaped bundle. */
  async fetchFullSeries(id: string): Promise<RunReply[]> {
    const replies: RunReply[] = [];
    let offset = 0;
    for (;;) {
      const reply = await this.getRun(id, offset, PAGE_LIMIT);
      replies.push(reply);
      const series = reply.run.series;
      if (series === null) return replies;
      offset += series.count.num;
      if (offset >= series.total.num || series.count.num === 0) return replies;
    }
  }

  /**
   * Read the run's server-sent events.  Implemented over a streaming
   * fetch rather than EventSource so the same code runs in the browser
   * and under node. Returns when the stream ends; the "done" frame is
   * delivered like any other event.
   */
  async streamEvents(
    id: string,
    onEvent: (event: RunEvent) => void,
    signal?: AbortSignal,
  ): Promise<void> {
    const response = await this.fetchFn(this.url(`/runs/${id}/events`), { signal });
    if (!response.ok || response.body === null) {
      throw new ServiceError(response.status, await errorDetail(response));
    }
    const reader = response.body.getReader();
    const decoder = new TextDecoder();
    let buffer = "";
    for (;;) {
      const { done, value } = await reader.read();
      if (done) return;
      buffer += decoder.decode(value, { stream: true });
      let cut;
      while ((cut = buffer.indexOf("\n\n")) >= 0) {
        const frame = buffer.slice(0, cut);
        buffer = buffer.slice(cut + 2);
        for (const line of frame.split("\n")) {
          if (line.startsWith("data: ")) {
            onEvent(JSON.parse(line.slice(6)) as RunEvent);
          }
        }
      }
    }
  }

  plotUrl(id: string): string {
    return this.url(`/runs/${id}/plot.svg`);
  }

  async fetchPlotSvg(id: string): Promise<string> {
    const response = await this.fetchFn(this.plotUrl(id));
    if (!response.ok) {
      throw new ServiceError(response.status, await errorDetail(response));
    }
    return response.text();
  }

  async cancel(id: string): Promise<void> {
    const response = await this.fetchFn(this.url(`/runs/${id}`), { method: "DELETE" });
    if (!response.ok) {
      throw new ServiceError(response.status, await errorDetail(response));
    }
  }
}
