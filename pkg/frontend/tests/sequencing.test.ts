// Stale-response and failure behavior of the autocomplete box, driven
// with a hand-controlled fetch so response order can be forced.
import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient, type FetchLike } from "../src/api.js";
import { AutocompleteBox } from "../src/autocomplete.js";
import { sleep, type, waitFor } from "./helpers.js";

interface Deferred {
  url: string;
  resolve: (matches: unknown[]) => void;
  reject: (err: Error) => void;
}

function controlledFetch(): { fetchFn: FetchLike; pending: Deferred[] } {
  const pending: Deferred[] = [];
  const fetchFn: FetchLike = (url) =>
    new Promise((resolve, reject) => {
      pending.push({
        url,
        resolve: (matches) =>
          resolve(
            new Response(JSON.stringify(matches), {
              status: 200,
              headers: { "content-type": "application/json" },
            })
          ),
        reject,
      });
    });
  return { fetchFn, pending };
}

function match(term: string, name: string) {
  return {
    term,
    display_name: name,
    matched_text: name,
    matched_kind: "name",
    tier: 2,
  };
}

let box: AutocompleteBox;
let pending: Deferred[];

beforeEach(() => {
  document.body.replaceChildren();
  const controlled = controlledFetch();
  pending = controlled.pending;
  const root = document.createElement("div");
  document.body.append(root);
  box = new AutocompleteBox(root, new ApiClient("http://test", controlled.fetchFn), {
    debounceMs: 1,
    onSelect: () => undefined,
  });
});

function rows(): string[] {
  return [...box.list.querySelectorAll<HTMLElement>("li")].map(
    (r) => r.dataset.term ?? r.textContent ?? ""
  );
}

describe("request sequencing", () => {
  it("drops a stale response that arrives after a newer one", async () => {
    type(box.input, "re");
    await waitFor(() => pending.length === 1, 1000, "first request");
    type(box.input, "ret");
    await waitFor(() => pending.length === 2, 1000, "second request");

    // the newer request resolves first...
    pending[1]!.resolve([match("T:2", "retina")]);
    await waitFor(() => rows().length === 1, 1000, "newer result rendered");
    expect(rows()).toEqual(["T:2"]);

    // ...then the stale one arrives and must be ignored
    pending[0]!.resolve([match("T:1", "red herring"), match("T:9", "rex")]);
    await sleep(30);
    expect(rows()).toEqual(["T:2"]);
  });

  it("applies responses normally when they arrive in order", async () => {
    type(box.input, "re");
    await waitFor(() => pending.length === 1, 1000, "first request");
    pending[0]!.resolve([match("T:1", "red")]);
    await waitFor(() => rows().length === 1, 1000, "first rendered");

    type(box.input, "ret");
    await waitFor(() => pending.length === 2, 1000, "second request");
    pending[1]!.resolve([match("T:2", "retina")]);
    await waitFor(() => rows()[0] === "T:2", 1000, "second rendered");
  });

  it("shows a non-blocking banner on network failure and recovers", async () => {
    type(box.input, "ret");
    await waitFor(() => pending.length === 1, 1000, "request");
    pending[0]!.reject(new Error("connection refused"));
    await waitFor(() => !box.banner.hidden, 1000, "error banner");
    expect(box.banner.textContent).toContain("search unavailable");

    // a later successful lookup clears the banner and renders
    type(box.input, "reti");
    await waitFor(() => pending.length === 2, 1000, "retry request");
    pending[1]!.resolve([match("T:2", "retina")]);
    await waitFor(() => rows().length === 1, 1000, "recovered");
    expect(box.banner.hidden).toBe(true);
  });
});
