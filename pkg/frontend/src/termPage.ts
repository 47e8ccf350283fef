import { ApiClient, ApiError } from "./api.js";
import type { TermInfo } from "./types.js";

export interface TermPageCallbacks {
  onNavigate: (termId: string) => void;
  onRunSearch: (termId: string) => void;
}

/**
 * Data-linked term browser: the term record, parent and child links, and
 * the live annotation count, which links to the corresponding search.
 * Every displayed set comes verbatim from the API.
 */
export class TermPage {
  constructor(
    readonly root: HTMLElement,
    private api: ApiClient,
    private callbacks: TermPageCallbacks
  ) {}

  async load(termId: string): Promise<void> {
    this.root.replaceChildren();
    let info: TermInfo;
    try {
      info = await this.api.term(termId);
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        this.renderUnknown(termId);
        return;
      }
      throw err;
    }
    const [parents, children] = await Promise.all([
      this.api.neighbors(termId, "parents"),
      this.api.neighbors(termId, "children"),
    ]);
    const names = await this.fetchNames([...parents, ...children]);
    this.render(info, parents, children, names);
  }

  private async fetchNames(ids: string[]): Promise<Map<string, string>> {
    const unique = [...new Set(ids)];
    const infos = await Promise.all(unique.map((id) => this.api.term(id)));
    return new Map(infos.map((t) => [t.id, t.name]));
  }

  private render(
    info: TermInfo,
    parents: string[],
    children: string[],
    names: Map<string, string>
  ): void {
    const heading = document.createElement("h2");
    heading.className = "term-name";
    heading.textContent = info.name;
    const id = document.createElement("p");
    id.className = "term-id";
    id.textContent = `${info.id} · ${info.ontology_key}` + (info.obsolete ? " · obsolete" : "");
    this.root.append(heading, id);

    if (info.definition) {
      const def = document.createElement("p");
      def.className = "term-definition";
      def.textContent = info.definition;
      this.root.append(def);
    }
    if (info.synonyms.length > 0) {
      const synonyms = document.createElement("p");
      synonyms.className = "term-synonyms";
      synonyms.textContent =
        "synonyms: " + info.synonyms.map((s) => `${s.text} (${s.scope})`).join(", ");
      this.root.append(synonyms);
    }

    const count = document.createElement("a");
    count.className = "badge count-badge";
    count.href = "#";
    count.dataset.count = String(info.annotation_count);
    count.textContent = `${info.annotation_count} annotation${
      info.annotation_count === 1 ? "" : "s"
    }`;
    count.addEventListener("click", (event) => {
      event.preventDefault();
      this.callbacks.onRunSearch(info.id);
    });
    this.root.append(count);

    this.root.append(
      this.linkList("parents", parents, names),
      this.linkList("children", children, names)
    );
  }

  private linkList(
    label: "parents" | "children",
    ids: string[],
    names: Map<string, string>
  ): HTMLElement {
    const section = document.createElement("section");
    section.className = `term-${label}`;
    const heading = document.createElement("h3");
    heading.textContent = label;
    const list = document.createElement("ul");
    for (const id of ids) {
      const item = document.createElement("li");
      const link = document.createElement("a");
      link.href = `#/term/${id}`;
      link.dataset.term = id;
      link.textContent = names.get(id) ?? id;
      link.addEventListener("click", (event) => {
        event.preventDefault();
        this.callbacks.onNavigate(id);
      });
      item.append(link);
      list.append(item);
    }
    section.append(heading, list);
    return section;
  }

  private renderUnknown(termId: string): void {
    const message = document.createElement("p");
    message.className = "unknown-term";
    message.textContent = `unknown term ${termId}`;
    this.root.append(message);
  }
}
