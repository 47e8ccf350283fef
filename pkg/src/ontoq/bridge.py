"""Explicit cross-ontology links.

A bridge file is the logical substitute for string matching between
ontologies: a headerless 3-column TSV
``source_term_id  relation  target_term_id`` asserting, e.g., that the
process "neural retina development" takes place in the anatomical entity
"retina". Links are identifier-level only — renaming terms never changes
bridge results — and must connect terms of two DIFFERENT ontologies. The
relation label is carried but not interpreted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .model import OntologyIndex


@dataclass(frozen=True)
class BridgeLink:
    source: str  # process-side term, e.g. GO
    relation: str  # conventionally "process_of"
    target: str  # entity-side term, e.g. AO


def parse_bridge_file(
    text: str, index: OntologyIndex, source_name: str = "<bridge>"
) -> list[BridgeLink]:
    """One link per data row; unknown ids and same-ontology links are errors."""
    links: list[BridgeLink] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 3:
            raise ParseError(
                source_name,
                lineno,
                f"expected 3 tab-separated columns, got {len(fields)}",
            )
        source, relation, target = (f.strip() for f in fields)
        for ref in (source, target):
            if ref not in index.terms:
                raise ParseError(source_name, lineno, f"unknown term id {ref}")
        src_ont = index.terms[source].ontology_key
        tgt_ont = index.terms[target].ontology_key
        if src_ont == tgt_ont:
            raise ParseError(
                source_name,
                lineno,
                f"same ontology on both sides ({source} and {target} "
                f"are both in {src_ont})",
            )
        links.append(BridgeLink(source, relation, target))
    return links


class BridgeIndex:
    """Inverse-image lookups over bridge links; duplicates collapse."""

    def __init__(self, links: list[BridgeLink]):
        self.links = links
        self.by_target: dict[str, set[str]] = {}
        self.by_source: dict[str, set[str]] = {}
        for link in links:
            self.by_target.setdefault(link.target, set()).add(link.source)
            self.by_source.setdefault(link.source, set()).add(link.target)

    def __len__(self) -> int:
        return sum(len(s) for s in self.by_target.values())


def build_bridge_index(links: list[BridgeLink]) -> BridgeIndex:
    return BridgeIndex(links)


def bridged_sources(bidx: BridgeIndex, entity_terms: set[str]) -> set[str]:
    """Every source term with a link target in ``entity_terms``.

    Pure set inverse-image: no closure is applied here — the query engine
    closes over each side separately.
    """
    found: set[str] = set()
    for t in entity_terms:
        found |= bidx.by_target.get(t, set())
    return found
