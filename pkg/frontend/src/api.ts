import type {
  AutocompleteMatch,
  OntologyEntry,
  SearchParams,
  SearchResult,
  Stats,
  TermInfo,
} from "./types.js";

export type FetchLike = (url: string) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: unknown,
    url: string
  ) {
    super(`request failed (${status}): ${url}`);
  }
}

/**
 * Typed client for the annotation search service. All ontology logic
 * stays on the server: this client only builds URLs and decodes JSON.
 */
export class ApiClient {
  private fetchFn: FetchLike;

  constructor(
    public baseUrl: string,
    fetchFn?: FetchLike
  ) {
    this.fetchFn = fetchFn ?? ((url) => fetch(url));
  }

  private async get<T>(path: string, params?: Record<string, string>): Promise<T> {
    let url = this.baseUrl + path;
    if (params && Object.keys(params).length > 0) {
      url += "?" + new URLSearchParams(params).toString();
    }
    const resp = await this.fetchFn(url);
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, body, url);
    }
    return body as T;
  }

  autocomplete(
    q: string,
    limit = 10,
    ontology?: string
  ): Promise<AutocompleteMatch[]> {
    const params: Record<string, string> = { q, limit: String(limit) };
    if (ontology) {
      params.ontology = ontology;
    }
    return this.get("/autocomplete", params);
  }

  term(id: string): Promise<TermInfo> {
    return this.get(`/terms/${id}`);
  }

  neighbors(
    id: string,
    kind: "parents" | "children" | "ancestors" | "descendants"
  ): Promise<string[]> {
    return this.get(`/terms/${id}/${kind}`);
  }

  search(params: SearchParams): Promise<SearchResult> {
    return this.get("/search", {
      term: params.term,
      descendants: String(params.descendants),
      relations: params.relations.join(","),
      composites: String(params.composites),
      ancestor_composites: String(params.ancestor_composites),
      bridges: String(params.bridges),
    });
  }

  ontologies(): Promise<OntologyEntry[]> {
    return this.get("/ontologies");
  }

  stats(): Promise<Stats> {
    return this.get("/stats");
  }
}
