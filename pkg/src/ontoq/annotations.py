"""Annotations of data objects to simple or post-composed ontology terms.

The input is a headerless 5-column TSV:
``object_id  object_type  annotation_type  term1_id  term2_id``
where an empty ``term2_id`` means a simple annotation and a non-empty one
a post-composed pair (an entity emulated as the intersection of two
existing terms, possibly from different ontologies). Lines starting with
``#`` are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .model import OntologyIndex

ANNOTATION_TYPES = ("expression", "phenotype", "function")


@dataclass(frozen=True)
class DataObject:
    """The annotated thing — a gene, genotype, or any other object kind."""

    id: str
    object_type: str


@dataclass(frozen=True)
class SimpleEntity:
    term: str


@dataclass(frozen=True)
class PostComposedEntity:
    """Ordered pair of term ids composed at annotation time.

    ``primary`` is the entity-like side and ``secondary`` the
    process/quality-like side, but query matching treats the components
    symmetrically.
    """

    primary: str
    secondary: str


AnnotatedEntity = SimpleEntity | PostComposedEntity


@dataclass(frozen=True)
class Annotation:
    object: DataObject
    entity: AnnotatedEntity
    annotation_type: str  # expression | phenotype | function
    source_line: int


@dataclass(frozen=True)
class ParseWarning:
    file: str
    line: int
    message: str


def entity_components(entity: AnnotatedEntity) -> tuple[str, ...]:
    if isinstance(entity, SimpleEntity):
        return (entity.term,)
    return (entity.primary, entity.secondary)


def parse_annotation_file(
    text: str, index: OntologyIndex, source_name: str = "<annotations>"
) -> tuple[list[Annotation], list[ParseWarning]]:
    """Parse annotation TSV rows against a built ontology index.

    Rows naming unknown term ids are hard errors; rows naming obsolete
    terms load but produce a warning (curation data lags ontology
    releases, and history must still be indexed).
    """
    annotations: list[Annotation] = []
    warnings: list[ParseWarning] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 5:
            raise ParseError(
                source_name,
                lineno,
                f"expected 5 tab-separated columns, got {len(fields)}",
            )
        object_id, object_type, annotation_type, term1, term2 = (
            f.strip() for f in fields
        )
        if not object_id:
            raise ParseError(source_name, lineno, "empty object_id")
        if annotation_type not in ANNOTATION_TYPES:
            raise ParseError(
                source_name,
                lineno,
                f"unknown annotation_type {annotation_type!r} "
                f"(expected one of {', '.join(ANNOTATION_TYPES)})",
            )
        for ref in (term1, term2) if term2 else (term1,):
            if ref not in index.terms:
                raise ParseError(source_name, lineno, f"unknown term id {ref}")
            if index.terms[ref].obsolete:
                warnings.append(
                    ParseWarning(source_name, lineno, f"term {ref} is obsolete")
                )
        if term2:
            if term1 == term2:
                raise ParseError(
                    source_name, lineno, f"post-composed components are equal ({term1})"
                )
            entity: AnnotatedEntity = PostComposedEntity(term1, term2)
        else:
            entity = SimpleEntity(term1)
        annotations.append(
            Annotation(
                object=DataObject(object_id, object_type),
                entity=entity,
                annotation_type=annotation_type,
                source_line=lineno,
            )
        )
    return annotations, warnings


class AnnotationIndex:
    """Inverted index over annotations.

    A post-composed annotation is indexed under BOTH of its component
    term ids; a simple one under its single term.
    """

    def __init__(self, annotations: list[Annotation]):
        self.all = list(annotations)
        self.by_term: dict[str, set[Annotation]] = {}
        self.by_object: dict[str, list[Annotation]] = {}
        for ann in self.all:
            for component in entity_components(ann.entity):
                self.by_term.setdefault(component, set()).add(ann)
            self.by_object.setdefault(ann.object.id, []).append(ann)

    def __len__(self) -> int:
        return len(self.all)


def build_annotation_index(annotations: list[Annotation]) -> AnnotationIndex:
    return AnnotationIndex(annotations)


def annotations_for_terms(
    aidx: AnnotationIndex, terms: set[str], match_mode: str = "with_composites"
) -> set[Annotation]:
    """Annotations attached to any of ``terms``.

    ``simple_only`` restricts to simple annotations whose term is in the
    set; ``with_composites`` additionally returns post-composed
    annotations where either component is in the set.
    """
    if match_mode not in ("simple_only", "with_composites"):
        raise ValueError(f"unknown match_mode {match_mode!r}")
    found: set[Annotation] = set()
    for t in terms:
        found |= aidx.by_term.get(t, set())
    if match_mode == "simple_only":
        found = {a for a in found if isinstance(a.entity, SimpleEntity)}
    return found
