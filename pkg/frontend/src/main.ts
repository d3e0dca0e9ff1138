// Browser entry point: the page talks to the service through the
// same-origin /api proxy set up by serve.ts.

import { ApiClient } from "./api.js";
import { initApp } from "./app.js";

const root = document.getElementById("app");
if (root === null) throw new Error("missing #app container");
initApp(document, new ApiClient("/api"), root);
