"""Loading pipeline shared by the CLI and the HTTP service."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .annotations import (
    AnnotationIndex,
    build_annotation_index,
    parse_annotation_file,
)
from .bridge import BridgeIndex, build_bridge_index, parse_bridge_file
from .lexical import LexicalIndex, build_lexical_index
from .model import OntologyIndex, build_index
from .obo import load_ontology


@dataclass
class Corpus:
    """Everything the query surfaces need, built once and then immutable."""

    index: OntologyIndex
    lexical: LexicalIndex
    annotations: AnnotationIndex
    bridges: BridgeIndex
    warnings: list[str] = field(default_factory=list)

    def stats(self) -> dict[str, int]:
        return {
            "terms": len(self.index.terms),
            "ontologies": len(self.index.ontologies),
            "annotations": len(self.annotations),
            "bridges": len(self.bridges),
        }


def load_corpus(
    obo_paths: list[str | Path],
    annotation_path: str | Path | None = None,
    bridge_paths: list[str | Path] | None = None,
    lenient: bool = False,
) -> Corpus:
    """Parse, resolve, merge, and index all source files.

    Any parse, resolution, duplicate, or cycle error propagates to the
    caller; a corpus is only ever fully built or not built at all.
    """
    parsed = [load_ontology(p, lenient=lenient) for p in obo_paths]
    index = build_index(parsed)
    warnings = [w for doc in parsed for w in doc.warnings]
    annotations = []
    if annotation_path is not None:
        path = Path(annotation_path)
        annotations, ann_warnings = parse_annotation_file(
            path.read_text(encoding="utf-8"), index, source_name=path.name
        )
        warnings.extend(f"{w.file}:{w.line}: {w.message}" for w in ann_warnings)
    links = []
    for p in bridge_paths or []:
        path = Path(p)
        links.extend(
            parse_bridge_file(
                path.read_text(encoding="utf-8"), index, source_name=path.name
            )
        )
    return Corpus(
        index=index,
        lexical=build_lexical_index(index),
        annotations=build_annotation_index(annotations),
        bridges=build_bridge_index(links),
        warnings=warnings,
    )
