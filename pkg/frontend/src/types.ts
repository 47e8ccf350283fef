/** Wire types for the annotation search service (one-to-one with its JSON). */

export interface AutocompleteMatch {
  term: string;
  display_name: string;
  matched_text: string;
  matched_kind: "name" | "synonym";
  tier: number;
}

export interface TermInfo {
  id: string;
  name: string;
  ontology_key: string;
  definition: string | null;
  synonyms: { text: string; scope: string }[];
  obsolete: boolean;
  annotation_count: number;
}

export interface SimpleEntity {
  kind: "simple";
  term: string;
}

export interface PostComposedEntity {
  kind: "post_composed";
  primary: string;
  secondary: string;
}

export type AnnotatedEntity = SimpleEntity | PostComposedEntity;

export interface Annotation {
  object: { id: string; object_type: string };
  entity: AnnotatedEntity;
  annotation_type: string;
  source_line: number;
}

export type PathKind =
  | "direct"
  | "descendant"
  | "composite_component"
  | "bridged"
  | "ancestor_composite";

export interface MatchExplanation {
  path_kind: PathKind;
  via_terms: string[];
  inferred: boolean;
}

export interface SearchResult {
  request: Record<string, unknown>;
  matched_terms: string[];
  annotations: { annotation: Annotation; explanation: MatchExplanation }[];
  facets: {
    annotation_type: Record<string, number>;
    object_type: Record<string, number>;
  };
}

export interface OntologyEntry {
  key: string;
  terms: number;
}

export interface Stats {
  terms: number;
  ontologies: number;
  annotations: number;
  bridges: number;
}

export type Relation = "is_a" | "part_of" | "develops_from";

/** Server-side query switches; one URL parameter each. */
export interface SearchToggles {
  descendants: boolean;
  composites: boolean;
  ancestor_composites: boolean;
  bridges: boolean;
}

export interface SearchParams extends SearchToggles {
  term: string;
  relations: Relation[];
}
