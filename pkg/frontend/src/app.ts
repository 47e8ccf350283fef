import { ApiClient } from "./api.js";
import { AutocompleteBox } from "./autocomplete.js";
import { SearchPanel } from "./searchPanel.js";
import { TermPage } from "./termPage.js";
import type { Relation, SearchParams, SearchToggles } from "./types.js";

export interface AppOptions {
  debounceMs?: number;
  /** Listen for hashchange events (off in tests that drive route()). */
  autoListen?: boolean;
}

interface ResultsState {
  term: string;
  toggles: Partial<SearchToggles>;
  relations: Relation[];
}

/**
 * Single-page shell with three URL-addressable views:
 * ``#/`` (corpus overview + search box), ``#/term/{id}`` (term browser),
 * and ``#/results?...`` (search results with steering toggles).
 */
export class App {
  readonly header: HTMLElement;
  readonly main: HTMLElement;
  readonly autocomplete: AutocompleteBox;
  readonly termPage: TermPage;
  readonly searchPanel: SearchPanel;

  private readonly termView: HTMLElement;
  private readonly resultsView: HTMLElement;
  private readonly homeView: HTMLElement;
  private syncingHash = false;
  private inflight: { hash: string; promise: Promise<void> } | null = null;
  private readonly onHashChange = (): void => {
    void this.route();
  };

  constructor(
    readonly root: HTMLElement,
    private api: ApiClient,
    options: AppOptions = {}
  ) {
    this.header = document.createElement("header");
    const title = document.createElement("h1");
    title.textContent = "ontology annotation search";
    const searchBox = document.createElement("div");
    searchBox.className = "searchbox";
    this.header.append(title, searchBox);

    this.main = document.createElement("main");
    this.homeView = document.createElement("div");
    this.homeView.className = "view-home";
    this.termView = document.createElement("div");
    this.termView.className = "view-term";
    this.resultsView = document.createElement("div");
    this.resultsView.className = "view-results";
    root.append(this.header, this.main);

    this.autocomplete = new AutocompleteBox(searchBox, api, {
      debounceMs: options.debounceMs,
      onSelect: (termId) => this.showTerm(termId),
    });
    this.termPage = new TermPage(this.termView, api, {
      onNavigate: (termId) => this.showTerm(termId),
      onRunSearch: (termId) => this.showResults(termId),
    });
    this.searchPanel = new SearchPanel(this.resultsView, api, {
      onNavigate: (termId) => this.showTerm(termId),
      onParamsChange: (params) => this.syncHash(params),
    });

    if (options.autoListen ?? true) {
      window.addEventListener("hashchange", this.onHashChange);
    }
  }

  destroy(): void {
    window.removeEventListener("hashchange", this.onHashChange);
  }

  showTerm(termId: string): void {
    this.setHash(`#/term/${termId}`);
  }

  showResults(termId: string): void {
    this.setHash(`#/results?term=${encodeURIComponent(termId)}`);
  }

  private setHash(hash: string): void {
    if (window.location.hash === hash) {
      void this.route();
    } else {
      window.location.hash = hash;
    }
  }

  private syncHash(params: SearchParams): void {
    this.syncingHash = true;
    try {
      const query = new URLSearchParams({
        term: params.term,
        descendants: String(params.descendants),
        relations: params.relations.join(","),
        composites: String(params.composites),
        ancestor_composites: String(params.ancestor_composites),
        bridges: String(params.bridges),
      });
      window.location.hash = `#/results?${query.toString()}`;
    } finally {
      // allow the matching hashchange to be ignored
      setTimeout(() => {
        this.syncingHash = false;
      }, 0);
    }
  }

  /** Resolve the current location hash into a rendered view.

  A hashchange listener and a direct call may race for the same hash
  (assigning location.hash dispatches an event of its own); the second
  caller joins the in-flight navigation instead of rendering twice. */
  route(): Promise<void> {
    if (this.syncingHash) {
      return Promise.resolve();
    }
    const hash = window.location.hash || "#/";
    if (this.inflight?.hash === hash) {
      return this.inflight.promise;
    }
    const promise = this.resolveView(hash).finally(() => {
      if (this.inflight?.promise === promise) {
        this.inflight = null;
      }
    });
    this.inflight = { hash, promise };
    return promise;
  }

  private async resolveView(hash: string): Promise<void> {
    const termMatch = /^#\/term\/(.+)$/.exec(hash);
    if (termMatch && termMatch[1]) {
      this.show(this.termView);
      await this.termPage.load(decodeURIComponent(termMatch[1]));
      return;
    }
    if (hash.startsWith("#/results")) {
      const state = this.parseResultsHash(hash);
      if (state) {
        this.show(this.resultsView);
        this.searchPanel.setState(state.term, state.toggles, state.relations);
        await this.searchPanel.run();
        return;
      }
    }
    this.show(this.homeView);
    await this.renderHome();
  }

  private parseResultsHash(hash: string): ResultsState | null {
    const query = hash.includes("?") ? hash.slice(hash.indexOf("?") + 1) : "";
    const params = new URLSearchParams(query);
    const term = params.get("term");
    if (!term) {
      return null;
    }
    const toggles: Partial<SearchToggles> = {};
    for (const key of ["descendants", "composites", "ancestor_composites", "bridges"] as const) {
      const value = params.get(key);
      if (value === "true" || value === "false") {
        toggles[key] = value === "true";
      }
    }
    const relations = (params.get("relations") ?? "")
      .split(",")
      .filter((r): r is Relation => ["is_a", "part_of", "develops_from"].includes(r));
    return { term, toggles, relations };
  }

  private show(view: HTMLElement): void {
    this.main.replaceChildren(view);
  }

  private async renderHome(): Promise<void> {
    this.homeView.replaceChildren();
    const hint = document.createElement("p");
    hint.className = "home-hint";
    hint.textContent = "Type a term name above — synonyms work too.";
    this.homeView.append(hint);
    try {
      const [stats, ontologies] = await Promise.all([
        this.api.stats(),
        this.api.ontologies(),
      ]);
      const overview = document.createElement("p");
      overview.className = "home-stats";
      overview.textContent =
        `${stats.terms} terms in ${stats.ontologies} ontologies · ` +
        `${stats.annotations} annotations · ${stats.bridges} bridge links (` +
        ontologies.map((o) => `${o.key}: ${o.terms}`).join(", ") +
        ")";
      this.homeView.append(overview);
    } catch {
      // the overview is decoration; the search box still works
    }
  }
}
