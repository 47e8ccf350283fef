import type { ApiClient } from "./api.js";
import type { AutocompleteMatch } from "./types.js";

export interface AutocompleteOptions {
  /** Debounce for as-you-type requests; never more than 300 ms. */
  debounceMs?: number;
  limit?: number;
  onSelect: (termId: string) => void;
}

const MAX_DEBOUNCE_MS = 300;

/**
 * As-you-type term lookup. Requests are debounced and numbered;
 * a response older than the newest one already rendered is dropped, so
 * out-of-order arrivals can never flash stale suggestions.
 */
export class AutocompleteBox {
  readonly input: HTMLInputElement;
  readonly list: HTMLUListElement;
  readonly banner: HTMLElement;

  private timer: ReturnType<typeof setTimeout> | null = null;
  private requestSeq = 0;
  private renderedSeq = 0;
  private readonly debounceMs: number;
  private readonly limit: number;

  constructor(
    readonly root: HTMLElement,
    private api: ApiClient,
    private options: AutocompleteOptions
  ) {
    this.debounceMs = Math.min(options.debounceMs ?? MAX_DEBOUNCE_MS, MAX_DEBOUNCE_MS);
    this.limit = options.limit ?? 10;
    this.input = document.createElement("input");
    this.input.type = "search";
    this.input.placeholder = "Search terms, e.g. retina";
    this.input.className = "autocomplete-input";
    this.banner = document.createElement("div");
    this.banner.className = "error-banner";
    this.banner.hidden = true;
    this.list = document.createElement("ul");
    this.list.className = "suggestions";
    root.append(this.input, this.banner, this.list);
    this.input.addEventListener("input", () => this.schedule());
  }

  private schedule(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    const text = this.input.value.trim();
    if (!text) {
      this.list.replaceChildren();
      return;
    }
    this.timer = setTimeout(() => void this.lookup(text), this.debounceMs);
  }

  private async lookup(text: string): Promise<void> {
    const seq = ++this.requestSeq;
    try {
      const matches = await this.api.autocomplete(text, this.limit);
      if (seq < this.renderedSeq) {
        return; // a newer response already rendered; drop this one
      }
      this.renderedSeq = seq;
      this.banner.hidden = true;
      this.render(matches);
    } catch (err) {
      if (seq >= this.renderedSeq) {
        this.renderedSeq = seq;
        this.showError(err);
      }
    }
  }

  /** Suggestions render in API order; the ranking is the server's. */
  private render(matches: AutocompleteMatch[]): void {
    this.list.replaceChildren();
    if (matches.length === 0) {
      const row = document.createElement("li");
      row.className = "no-matches";
      row.textContent = "no matches";
      this.list.append(row);
      return;
    }
    for (const match of matches) {
      const row = document.createElement("li");
      row.className = "suggestion";
      row.dataset.term = match.term;
      const name = document.createElement("span");
      name.className = "suggestion-name";
      name.textContent = match.display_name;
      const id = document.createElement("span");
      id.className = "suggestion-id";
      id.textContent = match.term;
      row.append(name, id);
      if (match.matched_kind === "synonym") {
        const badge = document.createElement("span");
        badge.className = "badge synonym-badge";
        badge.textContent = `via synonym: ${match.matched_text}`;
        row.append(badge);
      }
      row.addEventListener("click", () => this.options.onSelect(match.term));
      this.list.append(row);
    }
  }

  private showError(err: unknown): void {
    this.banner.hidden = false;
    this.banner.textContent = `search unavailable: ${String(err)}`;
  }
}
