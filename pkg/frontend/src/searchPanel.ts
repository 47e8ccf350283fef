import type { ApiClient } from "./api.js";
import type {
  Annotation,
  MatchExplanation,
  Relation,
  SearchParams,
  SearchResult,
  SearchToggles,
} from "./types.js";

const TOGGLES: (keyof SearchToggles)[] = [
  "descendants",
  "composites",
  "ancestor_composites",
  "bridges",
];

const RELATIONS: Relation[] = ["is_a", "part_of", "develops_from"];

const DEFAULT_TOGGLES: SearchToggles = {
  descendants: true,
  composites: true,
  ancestor_composites: false,
  bridges: false,
};

export interface SearchPanelCallbacks {
  onNavigate: (termId: string) => void;
  /** Fired whenever the effective query parameters change (URL sync). */
  onParamsChange?: (params: SearchParams) => void;
}

interface FacetFilter {
  facet: "annotation_type" | "object_type";
  value: string;
}

/**
 * Query steering and results. Each toggle maps onto exactly one /search
 * parameter; facet clicks only narrow the displayed rows client-side and
 * never touch the server. The panel does no ontology reasoning of its
 * own: rows, explanations, and facet counts render verbatim from the
 * last response.
 */
export class SearchPanel {
  readonly controls: HTMLElement;
  readonly results: HTMLElement;
  readonly facetsBox: HTMLElement;
  readonly status: HTMLElement;

  private term: string | null = null;
  private toggles: SearchToggles = { ...DEFAULT_TOGGLES };
  private relations = new Set<Relation>(["is_a", "part_of"]);
  private activeFilter: FacetFilter | null = null;
  private lastResult: SearchResult | null = null;

  constructor(
    readonly root: HTMLElement,
    private api: ApiClient,
    private callbacks: SearchPanelCallbacks = { onNavigate: () => undefined }
  ) {
    this.controls = document.createElement("form");
    this.controls.className = "search-controls";
    this.status = document.createElement("p");
    this.status.className = "search-status";
    this.facetsBox = document.createElement("aside");
    this.facetsBox.className = "facets";
    this.results = document.createElement("section");
    this.results.className = "search-results";
    root.append(this.controls, this.status, this.facetsBox, this.results);
    this.renderControls();
  }

  getParams(): SearchParams {
    if (this.term === null) {
      throw new Error("no term selected");
    }
    return {
      term: this.term,
      relations: RELATIONS.filter((r) => this.relations.has(r)),
      ...this.toggles,
    };
  }

  setState(term: string, toggles?: Partial<SearchToggles>, relations?: Relation[]): void {
    this.term = term;
    this.toggles = { ...DEFAULT_TOGGLES, ...toggles };
    if (relations && relations.length > 0) {
      this.relations = new Set(relations);
    }
    this.activeFilter = null;
    this.syncControls();
  }

  async run(): Promise<void> {
    const params = this.getParams();
    this.callbacks.onParamsChange?.(params);
    this.status.textContent = `searching ${params.term}…`;
    try {
      const result = await this.api.search(params);
      this.lastResult = result;
      this.status.textContent =
        `${result.annotations.length} annotation${
          result.annotations.length === 1 ? "" : "s"
        } · ${result.matched_terms.length} matched terms`;
      this.renderFacets(result);
      this.renderRows(result);
    } catch (err) {
      this.status.textContent = `search failed: ${String(err)}`;
    }
  }

  // -- controls --------------------------------------------------------

  private renderControls(): void {
    for (const toggle of TOGGLES) {
      this.controls.append(
        this.checkbox("toggle", toggle, this.toggles[toggle], (checked) => {
          this.toggles[toggle] = checked;
          void this.run(); // a toggle change replaces the results
        })
      );
    }
    for (const relation of RELATIONS) {
      this.controls.append(
        this.checkbox("relation", relation, this.relations.has(relation), (checked) => {
          if (checked) {
            this.relations.add(relation);
          } else if (this.relations.size > 1) {
            this.relations.delete(relation);
          }
          void this.run();
        })
      );
    }
  }

  private checkbox(
    kind: "toggle" | "relation",
    name: string,
    checked: boolean,
    onChange: (checked: boolean) => void
  ): HTMLLabelElement {
    const label = document.createElement("label");
    label.className = kind;
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = checked;
    box.dataset[kind] = name;
    box.addEventListener("change", () => onChange(box.checked));
    label.append(box, document.createTextNode(name.replace(/_/g, " ")));
    return label;
  }

  private syncControls(): void {
    for (const box of this.controls.querySelectorAll<HTMLInputElement>("input[data-toggle]")) {
      box.checked = this.toggles[box.dataset.toggle as keyof SearchToggles];
    }
    for (const box of this.controls.querySelectorAll<HTMLInputElement>("input[data-relation]")) {
      box.checked = this.relations.has(box.dataset.relation as Relation);
    }
  }

  // -- facets ----------------------------------------------------------

  private renderFacets(result: SearchResult): void {
    this.facetsBox.replaceChildren();
    for (const facet of ["annotation_type", "object_type"] as const) {
      const section = document.createElement("div");
      section.className = "facet-group";
      const heading = document.createElement("h4");
      heading.textContent = facet.replace("_", " ");
      section.append(heading);
      for (const [value, count] of Object.entries(result.facets[facet])) {
        const row = document.createElement("button");
        row.type = "button";
        row.className = "facet";
        row.dataset.facet = `${facet}:${value}`;
        if (this.activeFilter?.facet === facet && this.activeFilter.value === value) {
          row.classList.add("active");
        }
        const label = document.createElement("span");
        label.textContent = value;
        const badge = document.createElement("span");
        badge.className = "facet-count";
        badge.textContent = String(count);
        row.append(label, badge);
        row.addEventListener("click", () => this.toggleFilter({ facet, value }));
        section.append(row);
      }
      this.facetsBox.append(section);
    }
  }

  private toggleFilter(filter: FacetFilter): void {
    const isActive =
      this.activeFilter?.facet === filter.facet &&
      this.activeFilter.value === filter.value;
    this.activeFilter = isActive ? null : filter;
    if (this.lastResult) {
      this.renderFacets(this.lastResult); // refresh highlight, counts unchanged
      this.renderRows(this.lastResult);
    }
  }

  private rowVisible(annotation: Annotation): boolean {
    if (!this.activeFilter) {
      return true;
    }
    const value =
      this.activeFilter.facet === "annotation_type"
        ? annotation.annotation_type
        : annotation.object.object_type;
    return value === this.activeFilter.value;
  }

  // -- rows --------------------------------------------------------------

  private renderRows(result: SearchResult): void {
    this.results.replaceChildren();
    const table = document.createElement("ul");
    table.className = "annotation-rows";
    for (const { annotation, explanation } of result.annotations) {
      if (!this.rowVisible(annotation)) {
        continue;
      }
      table.append(this.row(annotation, explanation));
    }
    this.results.append(table);
  }

  private row(annotation: Annotation, explanation: MatchExplanation): HTMLLIElement {
    const row = document.createElement("li");
    row.className = "result-row";
    row.dataset.objectId = annotation.object.id;

    const object = document.createElement("span");
    object.className = "object";
    object.textContent = `${annotation.object.id} (${annotation.object.object_type})`;

    const type = document.createElement("span");
    type.className = "annotation-type";
    type.textContent = annotation.annotation_type;

    const entity = document.createElement("span");
    entity.className = "entity";
    for (const termId of this.entityTerms(annotation)) {
      const link = document.createElement("a");
      link.href = `#/term/${termId}`;
      link.dataset.term = termId;
      link.textContent = termId;
      link.addEventListener("click", (event) => {
        event.preventDefault();
        this.callbacks.onNavigate(termId);
      });
      if (entity.childNodes.length > 0) {
        entity.append(" × ");
      }
      entity.append(link);
    }

    const path = document.createElement("span");
    path.className = "badge path-badge";
    path.textContent = explanation.path_kind;
    row.append(object, type, entity, path);

    if (explanation.inferred) {
      const inferred = document.createElement("span");
      inferred.className = "badge inferred-badge";
      inferred.textContent = "inferred";
      row.append(inferred);
    }

    const via = document.createElement("span");
    via.className = "via";
    via.textContent = explanation.via_terms.join(" → ");
    row.append(via);
    return row;
  }

  private entityTerms(annotation: Annotation): string[] {
    return annotation.entity.kind === "simple"
      ? [annotation.entity.term]
      : [annotation.entity.primary, annotation.entity.secondary];
  }
}
