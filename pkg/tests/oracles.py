"""Independent reference implementations and random instance generators.

Everything here deliberately avoids the production code paths it checks:
reachability is a fresh depth-first search over raw edge lists,
autocomplete is a linear scan over all entries, and search is a
per-annotation membership test straight off the documented
post-conditions.
"""

from __future__ import annotations

import random
from collections import defaultdict

from ontoq import (
    Annotation,
    BridgeLink,
    DataObject,
    ParsedOntology,
    ParsedTerm,
    PostComposedEntity,
    QueryRequest,
    RelationEdge,
    SimpleEntity,
    Synonym,
)

# -- graph oracle -----------------------------------------------------------


def dfs_descendants(edges, term, relations):
    down = defaultdict(list)
    for child, parent, relation in edges:
        if relation in relations:
            down[parent].append(child)
    seen = set()
    stack = [term]
    while stack:
        for child in down[stack.pop()]:
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return seen


def dfs_ancestors(edges, term, relations):
    up = defaultdict(list)
    for child, parent, relation in edges:
        if relation in relations:
            up[child].append(parent)
    seen = set()
    stack = [term]
    while stack:
        for parent in up[stack.pop()]:
            if parent not in seen:
                seen.add(parent)
                stack.append(parent)
    return seen


def edge_triples(parsed_docs):
    return [
        (e.child_id, e.parent_id, e.relation) for doc in parsed_docs for e in doc.edges
    ]


# -- autocomplete oracle ----------------------------------------------------


def _entry_tier(entry, q):
    if entry.kind == "name":
        if entry.key == q:
            return 1
        if entry.key.startswith(q):
            return 2
        if any(tok.startswith(q) for tok in entry.key.split()):
            return 3
    else:
        if entry.key.startswith(q):
            return 4
        if any(tok.startswith(q) for tok in entry.key.split()):
            return 5
    return None


def scan_autocomplete(entries, query, limit, ontology_filter=None):
    """Linear scan of every entry, applying the tier rules and total order."""
    q = query.strip().casefold()
    best = {}
    for entry in entries:
        if ontology_filter is not None and entry.ontology_key != ontology_filter:
            continue
        tier = _entry_tier(entry, q)
        if tier is None:
            continue
        cur = best.get(entry.term)
        if cur is None or (tier, entry.text) < (cur[0], cur[1].text):
            best[entry.term] = (tier, entry)
    ranked = sorted(
        (
            (tier, entry.display_name, term, entry.text, entry.kind)
            for term, (tier, entry) in best.items()
        ),
        key=lambda row: (row[0], row[1], row[2]),
    )
    return [
        {
            "term": term,
            "display_name": display_name,
            "matched_text": text,
            "matched_kind": kind,
            "tier": tier,
        }
        for tier, display_name, term, text, kind in ranked[:limit]
    ]


def matches_to_dicts(matches):
    return [
        {
            "term": m.term,
            "display_name": m.display_name,
            "matched_text": m.matched_text,
            "matched_kind": m.matched_kind,
            "tier": m.tier,
        }
        for m in matches
    ]


# -- search oracle ----------------------------------------------------------


class BruteForceSearch:
    """Enumerate all annotations and test membership per the contracts.

    Adjacency is prepared once per instance; every search then runs fresh
    depth-first traversals and a per-annotation membership test. Nothing
    here touches the production reachability index.
    """

    def __init__(self, edges, annotations, bridge_links):
        self.edges = edges
        self.annotations = annotations
        self.bridge_links = bridge_links
        self.down = defaultdict(list)
        self.up = defaultdict(list)
        for child, parent, relation in edges:
            self.down[parent].append((child, relation))
            self.up[child].append((parent, relation))

    def _walk(self, adjacency, start, relations):
        seen = set()
        stack = [start]
        while stack:
            for node, relation in adjacency[stack.pop()]:
                if relation in relations and node not in seen:
                    seen.add(node)
                    stack.append(node)
        return seen

    def search(self, request: QueryRequest):
        """Returns (set of (annotation, path_kind), home, bridged)."""
        q = request.term
        rels = set(request.relations)
        home = {q}
        if request.include_descendants:
            home |= self._walk(self.down, q, rels)
        bridged = set()
        if request.include_bridges:
            for link in self.bridge_links:
                if link.target in home:
                    bridged.add(link.source)
                    bridged |= self._walk(self.down, link.source, {"is_a"})
        ancestors = (
            self._walk(self.up, q, rels)
            if request.include_ancestor_composites
            else set()
        )

        out = set()
        for ann in self.annotations:
            if request.annotation_type_filter is not None:
                if ann.annotation_type != request.annotation_type_filter:
                    continue
            if request.object_type_filter is not None:
                if ann.object.object_type != request.object_type_filter:
                    continue
            if isinstance(ann.entity, SimpleEntity):
                t = ann.entity.term
                if t == q:
                    out.add((ann, "direct"))
                elif t in home:
                    out.add((ann, "descendant"))
                elif t in bridged:
                    out.add((ann, "bridged"))
            else:
                comps = (ann.entity.primary, ann.entity.secondary)
                if request.include_composites and any(c in home for c in comps):
                    out.add((ann, "composite_component"))
                elif request.include_composites and any(c in bridged for c in comps):
                    out.add((ann, "bridged"))
                elif request.include_ancestor_composites and any(
                    c in ancestors for c in comps
                ):
                    out.add((ann, "ancestor_composite"))
        return out, home, bridged


def brute_force_search(edges, annotations, bridge_links, request: QueryRequest):
    return BruteForceSearch(edges, annotations, bridge_links).search(request)


# -- explanation replay -----------------------------------------------------


def verify_explanation(index, bridge_index, request, annotation, explanation):
    """Re-derive one match from raw edges, components, and bridge links."""
    via = explanation.via_terms
    assert via, "explanation has an empty via chain"
    assert via[0] == request.term, "via chain must start at the query term"
    kind = explanation.path_kind
    components = (
        (annotation.entity.term,)
        if isinstance(annotation.entity, SimpleEntity)
        else (annotation.entity.primary, annotation.entity.secondary)
    )

    def is_down_edge(a, b, relations):
        return any(c == b and r in relations for c, r in index.down_edges.get(a, ()))

    def is_up_edge(a, b, relations):
        return any(p == b and r in relations for p, r in index.up_edges.get(a, ()))

    def is_bridge_hop(a, b):
        return b in bridge_index.by_target.get(a, set())

    if kind == "direct":
        assert via == (request.term,)
        assert isinstance(annotation.entity, SimpleEntity)
        assert annotation.entity.term == request.term
        assert not explanation.inferred
    elif kind == "descendant":
        assert isinstance(annotation.entity, SimpleEntity)
        assert via[-1] == annotation.entity.term
        assert len(via) >= 2
        for a, b in zip(via, via[1:]):
            assert is_down_edge(a, b, request.relations), f"no {a} -> {b} edge"
        assert not explanation.inferred
    elif kind == "composite_component":
        assert via[-1] in components
        for a, b in zip(via, via[1:]):
            assert is_down_edge(a, b, request.relations), f"no {a} -> {b} edge"
        assert not explanation.inferred
    elif kind == "bridged":
        assert via[-1] in components
        hops = [
            (a, b)
            for a, b in zip(via, via[1:])
            if not (
                is_down_edge(a, b, request.relations) or is_down_edge(a, b, {"is_a"})
            )
        ]
        # exactly one non-edge step, and it must be a bridge link; every
        # step after it must be an is_a edge
        assert len(hops) == 1, f"expected exactly one bridge hop, found {hops}"
        assert is_bridge_hop(*hops[0]), f"{hops[0]} is not a bridge link"
        crossed = False
        for a, b in zip(via, via[1:]):
            if (a, b) == hops[0]:
                crossed = True
            elif crossed:
                assert is_down_edge(a, b, {"is_a"}), f"post-bridge step {a} -> {b}"
            else:
                assert is_down_edge(a, b, request.relations)
        assert not explanation.inferred
    elif kind == "ancestor_composite":
        assert via[-1] in components
        assert len(via) >= 2
        for a, b in zip(via, via[1:]):
            assert is_up_edge(a, b, request.relations), f"no {a} -> {b} up edge"
        assert explanation.inferred
    else:
        raise AssertionError(f"unknown path_kind {kind}")


# -- random instance generators ---------------------------------------------

RELATION_POOL = ["is_a", "part_of", "develops_from", "regulates"]


def random_dag(rng: random.Random, prefix="RT", n_min=10, n_max=200, max_parents=3):
    """Acyclic by construction: parents always have a smaller index."""
    n = rng.randint(n_min, n_max)
    ids = [f"{prefix}:{i:07d}" for i in range(n)]
    terms = [ParsedTerm(id=t, name=f"term {t}") for t in ids]
    edges = []
    for i in range(1, n):
        for parent in rng.sample(range(i), k=min(i, rng.randint(0, max_parents))):
            edges.append(
                RelationEdge(ids[i], ids[parent], rng.choice(RELATION_POOL))
            )
    return ParsedOntology(
        ontology_key=f"{prefix.lower()}-rand",
        format_version="1.2",
        terms=terms,
        edges=edges,
        source_name=f"{prefix.lower()}.obo",
    )


WORDS = [
    "retina", "neural", "fin", "eye", "epithelium", "development", "dorsal",
    "ventral", "anterior", "posterior", "cell", "tissue", "margin", "plate",
    "tube", "crest", "vesicle", "bud", "ray", "pigment",
]


def random_lexicon_terms(rng: random.Random, n_terms):
    """ParsedTerms with word-built names and random synonyms."""
    terms = []
    used_ids = set()
    for i in range(n_terms):
        tid = f"LX:{i:07d}"
        used_ids.add(tid)
        name = " ".join(
            rng.choice(WORDS) for _ in range(rng.randint(1, 3))
        ) + f" {i}"
        synonyms = tuple(
            Synonym(
                " ".join(rng.choice(WORDS) for _ in range(rng.randint(1, 2)))
                + f" s{i}{j}",
                rng.choice(["EXACT", "BROAD", "NARROW", "RELATED"]),
            )
            for j in range(rng.randint(0, 2))
        )
        terms.append(ParsedTerm(id=tid, name=name, synonyms=synonyms))
    return terms


def random_corpus(rng: random.Random, max_terms=200, max_annotations=500, max_bridges=50):
    """Two-ontology instance with annotations and bridge links.

    Returns (parsed_docs, annotations, bridge_links).
    """
    n_a = rng.randint(5, max_terms // 2)
    n_b = rng.randint(5, max_terms // 2)
    doc_a = random_dag(rng, prefix="AA", n_min=n_a, n_max=n_a)
    doc_b = random_dag(rng, prefix="BB", n_min=n_b, n_max=n_b)
    ids_a = [t.id for t in doc_a.terms]
    ids_b = [t.id for t in doc_b.terms]
    all_ids = ids_a + ids_b

    annotations = []
    object_types = ["gene", "genotype", "antibody"]
    for i in range(rng.randint(0, max_annotations)):
        obj = DataObject(f"obj{rng.randint(0, 80)}", rng.choice(object_types))
        if rng.random() < 0.5:
            entity = SimpleEntity(rng.choice(all_ids))
        else:
            primary, secondary = rng.choice(ids_a), rng.choice(ids_b)
            if rng.random() < 0.2:
                pair = rng.sample(all_ids, 2)
                primary, secondary = pair[0], pair[1]
            entity = PostComposedEntity(primary, secondary)
        annotations.append(
            Annotation(
                object=obj,
                entity=entity,
                annotation_type=rng.choice(["expression", "phenotype", "function"]),
                source_line=i + 1,
            )
        )

    links = []
    seen = set()
    for _ in range(rng.randint(0, max_bridges)):
        source, target = rng.choice(ids_b), rng.choice(ids_a)
        if (source, target) in seen:
            continue
        seen.add((source, target))
        links.append(BridgeLink(source, "process_of", target))
    return [doc_a, doc_b], annotations, links


def all_flag_requests(term, relations=frozenset({"is_a", "part_of"})):
    """All 16 combinations of the four expansion booleans."""
    requests = []
    for descendants in (False, True):
        for composites in (False, True):
            for ancestor_composites in (False, True):
                for bridges in (False, True):
                    requests.append(
                        QueryRequest(
                            term=term,
                            include_descendants=descendants,
                            relations=relations,
                            include_composites=composites,
                            include_ancestor_composites=ancestor_composites,
                            include_bridges=bridges,
                        )
                    )
    return requests
