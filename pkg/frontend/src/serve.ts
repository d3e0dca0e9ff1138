// Development server: static page plus an /api proxy to the explorer
// service, so the browser talks same-origin and streaming responses
// pass through untouched.
//
//   EXPLORER_SERVICE  upstream service (default http://127.0.0.1:8000)
//   PORT              listen port (default 5173)

import { createServer } from "node:http";
import { dirname, join } from "node:path";
import { Readable } from "node:stream";
import { fileURLToPath } from "node:url";

import express from "express";

const here = dirname(fileURLToPath(import.meta.url));
const service = process.env["EXPLORER_SERVICE"] ?? "http://127.0.0.1:8000";
const port = Number(process.env["PORT"] ?? 5173);

const app = express();

app.use("/api", async (req, res) => {
  try {
    const init: RequestInit = { method: req.method, headers: {} };
    const contentType = req.headers["content-type"];
    if (contentType !== undefined) {
      init.headers = { "content-type": contentType };
    }
    if (req.method !== "GET" && req.method !== "HEAD") {
      const chunks: Buffer[] = [];
      for await (const chunk of req) chunks.push(chunk as Buffer);
      init.body = Buffer.concat(chunks);
    }
    const upstream = await fetch(`${service}${req.url}`, init);
    res.status(upstream.status);
    for (const name of ["content-type", "cache-control"]) {
      const value = upstream.headers.get(name);
      if (value !== null) res.setHeader(name, value);
    }
    if (upstream.body !== null) {
      Readable.fromWeb(upstream.body as import("node:stream/web").ReadableStream).pipe(res);
    } else {
      res.end();
    }
  } catch (error) {
    res.status(502).json({ detail: `service unreachable: ${String(error)}` });
  }
});

app.use("/dist", express.static(here));
app.get("/", (_req, res) => {
  res.sendFile(join(here, "..", "index.html"));
});

const server = createServer(app);
server.listen(port, () => {
  console.log(`explorer ui on http://127.0.0.1:${port} (service: ${service})`);
});
