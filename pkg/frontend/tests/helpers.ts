import type { FetchLike } from "../src/api.js";

export const BASE = "http://127.0.0.1:8941";

/** Paths the service documents; the UI must never call anything else. */
const DOCUMENTED = [
  /^\/autocomplete$/,
  /^\/terms\/[^/]+$/,
  /^\/terms\/[^/]+\/(parents|children|ancestors|descendants)$/,
  /^\/search$/,
  /^\/ontologies$/,
  /^\/stats$/,
];

export function isDocumentedEndpoint(url: string): boolean {
  const path = new URL(url).pathname;
  return DOCUMENTED.some((re) => re.test(path));
}

export interface RecordingFetch {
  fetchFn: FetchLike;
  requests: string[];
}

/** Pass-through fetch that records every request URL it issues. */
export function recordingFetch(): RecordingFetch {
  const requests: string[] = [];
  const fetchFn: FetchLike = (url) => {
    requests.push(url);
    return fetch(url);
  };
  return { fetchFn, requests };
}

export function searchRequests(requests: string[]): URLSearchParams[] {
  return requests
    .filter((u) => new URL(u).pathname === "/search")
    .map((u) => new URL(u).searchParams);
}

export async function waitFor(
  condition: () => boolean,
  timeoutMs = 5000,
  what = "condition"
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (condition()) {
      return;
    }
    await sleep(10);
  }
  throw new Error(`timed out waiting for ${what}`);
}

export function sleep(ms: number): Promise<void> {
  return new Promise((r) => setTimeout(r, ms));
}

export function type(input: HTMLInputElement, text: string): void {
  input.value = text;
  input.dispatchEvent(new Event("input", { bubbles: true }));
}

export function clickToggle(root: HTMLElement, name: string): void {
  const box = root.querySelector<HTMLInputElement>(`input[data-toggle="${name}"]`);
  if (!box) {
    throw new Error(`no toggle ${name}`);
  }
  box.checked = !box.checked;
  box.dispatchEvent(new Event("change", { bubbles: true }));
}
