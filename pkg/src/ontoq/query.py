"""Ontologically aware search over annotations.

A query names a single term and expands it along four orthogonal axes:

* self plus descendants over a chosen relation set (subterm-inclusive
  search),
* post-composed annotations matched through either component,
* explicit cross-ontology bridge links, closed with is_a on the far
  side,
* optionally, post-composed annotations on ANCESTORS of the query term —
  off by default and always flagged as inferred, because an annotation
  to a whole is not evidence about one of its parts.

All closures are precomputed at index build time; query-time work is set
union and inverse image. Every returned annotation carries a machine
checkable explanation: the highest-priority match path
(direct > descendant > composite_component > bridged >
ancestor_composite) with the term chain justifying it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .annotations import (
    Annotation,
    AnnotationIndex,
    PostComposedEntity,
    SimpleEntity,
    annotations_for_terms,
    entity_components,
)
from .bridge import BridgeIndex, bridged_sources
from .errors import UnknownTermError
from .model import DEFAULT_RELATIONS, OntologyIndex, normalize_relations

PATH_KIND_PRIORITY = (
    "direct",
    "descendant",
    "composite_component",
    "bridged",
    "ancestor_composite",
)


@dataclass(frozen=True)
class QueryRequest:
    term: str
    include_descendants: bool = True
    relations: frozenset[str] = DEFAULT_RELATIONS
    include_composites: bool = True
    include_ancestor_composites: bool = False
    include_bridges: bool = False
    annotation_type_filter: str | None = None
    object_type_filter: str | None = None


@dataclass(frozen=True)
class MatchExplanation:
    """Why an annotation matched.

    ``via_terms`` is the chain from the query term to the matched term:
    consecutive entries are connected by an ontology edge of the
    requested relations (downward for descendant/composite paths, upward
    for ancestor_composite) or by exactly one bridge link followed by
    is_a edges for bridged paths. ``inferred`` marks ancestor-direction
    composite matches.
    """

    path_kind: str
    via_terms: tuple[str, ...]
    inferred: bool = False


@dataclass(frozen=True)
class QueryResult:
    request: QueryRequest
    matched_terms: frozenset[str]
    annotations: tuple[tuple[Annotation, MatchExplanation], ...]
    facets: dict[str, dict[str, int]] = field(hash=False)


def expand_query_terms(
    request: QueryRequest, index: OntologyIndex, bridge_index: BridgeIndex
) -> tuple[set[str], set[str]]:
    """The home-ontology term set and the bridge-expanded far set.

    The far side is closed with is_a only: part_of semantics on the
    process side are undefined, while is_a subsumption is uncontroversial.
    """
    if request.term not in index.terms:
        raise UnknownTermError(request.term)
    relations = normalize_relations(request.relations)
    home = {request.term}
    if request.include_descendants:
        home |= index.descendants(request.term, relations)
    bridged: set[str] = set()
    if request.include_bridges:
        for source in bridged_sources(bridge_index, home):
            bridged.add(source)
            bridged |= index.descendants(source, frozenset({"is_a"}))
    return home, bridged


class _PathFinder:
    """Breadth-first predecessor maps for explanation paths.

    Downward states are (term, phase) with phase 0 inside the home
    ontology walk and phase 1 after crossing a bridge link; neighbor
    expansion is sorted so discovered paths are deterministic shortest
    paths.
    """

    def __init__(
        self,
        index: OntologyIndex,
        bridge_index: BridgeIndex,
        request: QueryRequest,
        relations: frozenset[str],
    ):
        self.index = index
        self.request = request
        q = request.term
        self.down: dict[tuple[str, int], tuple[str, int] | None] = {(q, 0): None}
        queue = deque([(q, 0)])
        while queue:
            state = queue.popleft()
            term, phase = state
            neighbors: list[tuple[str, int]] = []
            if phase == 0:
                if request.include_descendants:
                    neighbors += [
                        (c, 0)
                        for c, r in sorted(index.down_edges.get(term, ()))
                        if r in relations
                    ]
                if request.include_bridges:
                    neighbors += [
                        (s, 1) for s in sorted(bridge_index.by_target.get(term, ()))
                    ]
            else:
                neighbors += [
                    (c, 1)
                    for c, r in sorted(index.down_edges.get(term, ()))
                    if r == "is_a"
                ]
            for nb in neighbors:
                if nb not in self.down:
                    self.down[nb] = state
                    queue.append(nb)

        self.up: dict[str, str | None] = {}
        if request.include_ancestor_composites:
            self.up[q] = None
            up_queue = deque([q])
            while up_queue:
                term = up_queue.popleft()
                for p, r in sorted(index.up_edges.get(term, ())):
                    if r in relations and p not in self.up:
                        self.up[p] = term
                        up_queue.append(p)

    def down_path(self, term: str, phase: int) -> tuple[str, ...]:
        path: list[str] = []
        state: tuple[str, int] | None = (term, phase)
        while state is not None:
            path.append(state[0])
            state = self.down[state]
        return tuple(reversed(path))

    def up_path(self, term: str) -> tuple[str, ...]:
        path: list[str] = []
        cursor: str | None = term
        while cursor is not None:
            path.append(cursor)
            cursor = self.up[cursor]
        return tuple(reversed(path))


def _annotation_sort_key(ann: Annotation):
    return (
        ann.object.id,
        ann.annotation_type,
        entity_components(ann.entity),
        ann.source_line,
    )


def compute_facets(annotations) -> dict[str, dict[str, int]]:
    """Exact counts by annotation type and object type; zero-count keys omitted."""
    by_annotation_type: dict[str, int] = {}
    by_object_type: dict[str, int] = {}
    for ann in annotations:
        by_annotation_type[ann.annotation_type] = (
            by_annotation_type.get(ann.annotation_type, 0) + 1
        )
        by_object_type[ann.object.object_type] = (
            by_object_type.get(ann.object.object_type, 0) + 1
        )
    return {
        "annotation_type": dict(sorted(by_annotation_type.items())),
        "object_type": dict(sorted(by_object_type.items())),
    }


def execute_search(
    request: QueryRequest,
    index: OntologyIndex,
    annotation_index: AnnotationIndex,
    bridge_index: BridgeIndex,
) -> QueryResult:
    """Run one expanded query and explain every match.

    Raises :class:`UnknownTermError` for an unresolvable query term and
    ``ValueError`` for an invalid relation set.
    """
    relations = normalize_relations(request.relations)
    home, bridged = expand_query_terms(request, index, bridge_index)

    mode = "with_composites" if request.include_composites else "simple_only"
    candidates = annotations_for_terms(annotation_index, home | bridged, mode)
    ancestor_terms: set[str] = set()
    if request.include_ancestor_composites:
        ancestor_terms = index.ancestors(request.term, relations)
        for ann in annotations_for_terms(
            annotation_index, ancestor_terms, "with_composites"
        ):
            if isinstance(ann.entity, PostComposedEntity):
                candidates.add(ann)

    if request.annotation_type_filter is not None:
        candidates = {
            a for a in candidates if a.annotation_type == request.annotation_type_filter
        }
    if request.object_type_filter is not None:
        candidates = {
            a for a in candidates if a.object.object_type == request.object_type_filter
        }

    paths = _PathFinder(index, bridge_index, request, relations)
    ordered: list[tuple[Annotation, MatchExplanation]] = []
    for ann in sorted(candidates, key=_annotation_sort_key):
        ordered.append((ann, _explain(ann, request, home, bridged, ancestor_terms, paths)))

    facets = compute_facets(a for a, _ in ordered)
    return QueryResult(
        request=request,
        matched_terms=frozenset(home | bridged),
        annotations=tuple(ordered),
        facets=facets,
    )


def _explain(
    ann: Annotation,
    request: QueryRequest,
    home: set[str],
    bridged: set[str],
    ancestor_terms: set[str],
    paths: _PathFinder,
) -> MatchExplanation:
    entity = ann.entity
    if isinstance(entity, SimpleEntity):
        if entity.term == request.term:
            return MatchExplanation("direct", (request.term,))
        if entity.term in home:
            return MatchExplanation("descendant", paths.down_path(entity.term, 0))
        if entity.term in bridged:
            return MatchExplanation("bridged", paths.down_path(entity.term, 1))
    else:
        if request.include_composites:
            home_hits = [c for c in entity_components(entity) if c in home]
            if home_hits:
                component = min(home_hits, key=lambda c: paths.down_path(c, 0))
                return MatchExplanation(
                    "composite_component", paths.down_path(component, 0)
                )
            bridge_hits = [c for c in entity_components(entity) if c in bridged]
            if bridge_hits:
                component = min(bridge_hits, key=lambda c: paths.down_path(c, 1))
                return MatchExplanation("bridged", paths.down_path(component, 1))
        anc_hits = [c for c in entity_components(entity) if c in ancestor_terms]
        if anc_hits:
            component = min(anc_hits, key=paths.up_path)
            return MatchExplanation(
                "ancestor_composite", paths.up_path(component), inferred=True
            )
    raise AssertionError(f"annotation {ann} matched no explanation path")


def annotation_counts_per_term(
    index: OntologyIndex,
    annotation_index: AnnotationIndex,
    relations=DEFAULT_RELATIONS,
) -> dict[str, int]:
    """Per-term annotation counts for the data-linked term browser.

    For every term: how many annotations a default search from it returns
    (descendants on, composites on, bridges off).
    """
    return {
        term_id: annotation_count_for_term(index, annotation_index, term_id, relations)
        for term_id in index.terms
    }


def annotation_count_for_term(
    index: OntologyIndex,
    annotation_index: AnnotationIndex,
    term_id: str,
    relations=DEFAULT_RELATIONS,
) -> int:
    rels = normalize_relations(relations)
    terms = {term_id} | index.descendants(term_id, rels)
    return len(annotations_for_terms(annotation_index, terms, "with_composites"))
