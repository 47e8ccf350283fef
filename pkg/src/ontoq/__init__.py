"""ontoq: an ontology-aware annotation search engine.

Loads OBO-format ontologies as DAGs, indexes annotations (including
post-composed cross-ontology term pairs), and answers subterm-inclusive,
synonym-aware, bridge-expanded queries as a library, CLI, and HTTP
service.
"""

from .annotations import (
    ANNOTATION_TYPES,
    AnnotatedEntity,
    Annotation,
    AnnotationIndex,
    DataObject,
    ParseWarning,
    PostComposedEntity,
    SimpleEntity,
    annotations_for_terms,
    build_annotation_index,
    parse_annotation_file,
)
from .bridge import (
    BridgeIndex,
    BridgeLink,
    bridged_sources,
    build_bridge_index,
    parse_bridge_file,
)
from .corpus import Corpus, load_corpus
from .errors import (
    CycleError,
    DuplicateTermError,
    EmptyQueryError,
    OntoqError,
    ParseError,
    ResolutionError,
    StartupError,
    UnknownTermError,
)
from .lexical import (
    AutocompleteMatch,
    LexicalEntry,
    LexicalIndex,
    build_lexical_index,
)
from .model import (
    CLOSURE_RELATIONS,
    DEFAULT_RELATIONS,
    OntologyIndex,
    Term,
    build_index,
    normalize_relations,
)
from .obo import (
    ParsedOntology,
    ParsedTerm,
    RelationEdge,
    Synonym,
    load_ontology,
    parse_obo_document,
    resolve_references,
    serialize_ontology,
)
from .query import (
    MatchExplanation,
    QueryRequest,
    QueryResult,
    annotation_count_for_term,
    annotation_counts_per_term,
    compute_facets,
    execute_search,
    expand_query_terms,
)
from .service import ServiceConfig, build_app, create_app, start_service

__version__ = "0.1.0"

__all__ = [
    "ANNOTATION_TYPES",
    "AnnotatedEntity",
    "Annotation",
    "AnnotationIndex",
    "AutocompleteMatch",
    "BridgeIndex",
    "BridgeLink",
    "CLOSURE_RELATIONS",
    "Corpus",
    "CycleError",
    "DEFAULT_RELATIONS",
    "DataObject",
    "DuplicateTermError",
    "EmptyQueryError",
    "LexicalEntry",
    "LexicalIndex",
    "MatchExplanation",
    "OntologyIndex",
    "OntoqError",
    "ParseError",
    "ParseWarning",
    "ParsedOntology",
    "ParsedTerm",
    "PostComposedEntity",
    "QueryRequest",
    "QueryResult",
    "RelationEdge",
    "ResolutionError",
    "ServiceConfig",
    "SimpleEntity",
    "StartupError",
    "Synonym",
    "Term",
    "UnknownTermError",
    "annotation_count_for_term",
    "annotation_counts_per_term",
    "annotations_for_terms",
    "bridged_sources",
    "build_annotation_index",
    "build_app",
    "build_bridge_index",
    "build_index",
    "build_lexical_index",
    "compute_facets",
    "create_app",
    "execute_search",
    "expand_query_terms",
    "load_corpus",
    "load_ontology",
    "normalize_relations",
    "parse_annotation_file",
    "parse_bridge_file",
    "parse_obo_document",
    "resolve_references",
    "serialize_ontology",
    "start_service",
]
