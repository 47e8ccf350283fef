import { ApiClient } from "./api.js";
import { App } from "./app.js";

declare global {
  interface Window {
    ONTOQ_API_BASE?: string;
  }
}

const base = window.ONTOQ_API_BASE ?? "http://127.0.0.1:8000";
const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}
const app = new App(root, new ApiClient(base));
void app.route();
