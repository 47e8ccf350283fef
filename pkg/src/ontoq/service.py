"""HTTP/JSON surface over the query engine.

Endpoints (all GET, all read-only over an immutable index snapshot):

* ``/autocomplete?q&limit&ontology``
* ``/terms/{id}``
* ``/terms/{id}/parents|children|ancestors|descendants?relations=...``
* ``/search?term&descendants&relations&composites&ancestor_composites&bridges&annotation_type&object_type``
* ``/ontologies``
* ``/stats``

Boolean parameters accept exactly ``true`` or ``false``; relation lists
are comma-separated. Unknown terms give 404 with ``{error, term}``, bad
parameters 400 with ``{error}``. Responses are built with sorted
collections throughout, so identical requests yield byte-identical
bodies. There is no runtime reload: restart to pick up new files.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .annotations import ANNOTATION_TYPES, Annotation, SimpleEntity
from .corpus import Corpus, load_corpus
from .errors import EmptyQueryError, OntoqError, StartupError, UnknownTermError
from .lexical import AutocompleteMatch
from .model import DEFAULT_RELATIONS, Term, normalize_relations
from .query import (
    MatchExplanation,
    QueryRequest,
    QueryResult,
    annotation_count_for_term,
    execute_search,
)


@dataclass
class ServiceConfig:
    obo_files: list[str]
    annotation_file: str | None = None
    bridge_files: list[str] = field(default_factory=list)
    lenient: bool = False
    port: int = 8000
    host: str = "127.0.0.1"
    cors_allowed_origin: str | None = None


class _BadParam(Exception):
    pass


def _parse_bool(name: str, value: str | None, default: bool) -> bool:
    if value is None:
        return default
    if value == "true":
        return True
    if value == "false":
        return False
    raise _BadParam(f"parameter {name} must be true or false, got {value!r}")


def _parse_relations(value: str | None) -> frozenset[str]:
    if value is None:
        return DEFAULT_RELATIONS
    try:
        return normalize_relations(v.strip() for v in value.split(","))
    except ValueError as exc:
        raise _BadParam(str(exc)) from None


def _parse_limit(value: str | None, default: int = 10) -> int:
    if value is None:
        return default
    try:
        limit = int(value)
    except ValueError:
        raise _BadParam(f"parameter limit must be an integer, got {value!r}") from None
    if limit < 1:
        raise _BadParam("parameter limit must be positive")
    return limit


# -- JSON shapes (shared with the CLI's --format json) ---------------------


def match_to_json(m: AutocompleteMatch) -> dict:
    return {
        "term": m.term,
        "display_name": m.display_name,
        "matched_text": m.matched_text,
        "matched_kind": m.matched_kind,
        "tier": m.tier,
    }


def term_to_json(term: Term, annotation_count: int) -> dict:
    return {
        "id": term.id,
        "name": term.name,
        "ontology_key": term.ontology_key,
        "definition": term.definition,
        "synonyms": [{"text": s.text, "scope": s.scope} for s in term.synonyms],
        "obsolete": term.obsolete,
        "annotation_count": annotation_count,
    }


def annotation_to_json(ann: Annotation) -> dict:
    if isinstance(ann.entity, SimpleEntity):
        entity = {"kind": "simple", "term": ann.entity.term}
    else:
        entity = {
            "kind": "post_composed",
            "primary": ann.entity.primary,
            "secondary": ann.entity.secondary,
        }
    return {
        "object": {"id": ann.object.id, "object_type": ann.object.object_type},
        "entity": entity,
        "annotation_type": ann.annotation_type,
        "source_line": ann.source_line,
    }


def explanation_to_json(e: MatchExplanation) -> dict:
    return {
        "path_kind": e.path_kind,
        "via_terms": list(e.via_terms),
        "inferred": e.inferred,
    }


def request_to_json(r: QueryRequest) -> dict:
    return {
        "term": r.term,
        "include_descendants": r.include_descendants,
        "relations": sorted(r.relations),
        "include_composites": r.include_composites,
        "include_ancestor_composites": r.include_ancestor_composites,
        "include_bridges": r.include_bridges,
        "annotation_type_filter": r.annotation_type_filter,
        "object_type_filter": r.object_type_filter,
    }


def search_result_to_json(result: QueryResult) -> dict:
    return {
        "request": request_to_json(result.request),
        "matched_terms": sorted(result.matched_terms),
        "annotations": [
            {"annotation": annotation_to_json(a), "explanation": explanation_to_json(e)}
            for a, e in result.annotations
        ],
        "facets": result.facets,
    }


# -- application ------------------------------------------------------------


def build_app(corpus: Corpus, cors_allowed_origin: str | None = None) -> FastAPI:
    """Wire routes over an already loaded corpus."""
    app = FastAPI(openapi_url=None, docs_url=None, redoc_url=None)
    if cors_allowed_origin:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_allowed_origin],
            allow_methods=["GET"],
            allow_headers=["*"],
        )

    count_cache: dict[str, int] = {}

    def term_count(term_id: str) -> int:
        count = count_cache.get(term_id)
        if count is None:
            count = annotation_count_for_term(corpus.index, corpus.annotations, term_id)
            count_cache[term_id] = count
        return count

    @app.exception_handler(UnknownTermError)
    async def unknown_term(request: Request, exc: UnknownTermError):
        return JSONResponse(
            {"error": "unknown term", "term": exc.term_id}, status_code=404
        )

    @app.exception_handler(_BadParam)
    async def bad_param(request: Request, exc: _BadParam):
        return JSONResponse({"error": str(exc)}, status_code=400)

    @app.exception_handler(EmptyQueryError)
    async def empty_query(request: Request, exc: EmptyQueryError):
        return JSONResponse({"error": str(exc)}, status_code=400)

    @app.get("/autocomplete")
    def autocomplete(q: str | None = None, limit: str | None = None,
                     ontology: str | None = None):
        if q is None:
            raise _BadParam("missing required parameter q")
        matches = corpus.lexical.autocomplete(
            q, _parse_limit(limit), ontology_filter=ontology
        )
        return [match_to_json(m) for m in matches]

    @app.get("/terms/{term_id}")
    def term_info(term_id: str):
        term = corpus.index.term_info(term_id)
        return term_to_json(term, term_count(term_id))

    def _neighbors(term_id: str, op: str, relations: str | None):
        rels = _parse_relations(relations)
        result = getattr(corpus.index, op)(term_id, rels)
        return sorted(result)

    @app.get("/terms/{term_id}/parents")
    def term_parents(term_id: str, relations: str | None = None):
        return _neighbors(term_id, "parents", relations)

    @app.get("/terms/{term_id}/children")
    def term_children(term_id: str, relations: str | None = None):
        return _neighbors(term_id, "children", relations)

    @app.get("/terms/{term_id}/ancestors")
    def term_ancestors(term_id: str, relations: str | None = None):
        return _neighbors(term_id, "ancestors", relations)

    @app.get("/terms/{term_id}/descendants")
    def term_descendants(term_id: str, relations: str | None = None):
        return _neighbors(term_id, "descendants", relations)

    @app.get("/search")
    def search(
        term: str | None = None,
        descendants: str | None = None,
        relations: str | None = None,
        composites: str | None = None,
        ancestor_composites: str | None = None,
        bridges: str | None = None,
        annotation_type: str | None = None,
        object_type: str | None = None,
    ):
        if term is None:
            raise _BadParam("missing required parameter term")
        if annotation_type is not None and annotation_type not in ANNOTATION_TYPES:
            raise _BadParam(
                f"parameter annotation_type must be one of "
                f"{', '.join(ANNOTATION_TYPES)}, got {annotation_type!r}"
            )
        request = QueryRequest(
            term=term,
            include_descendants=_parse_bool("descendants", descendants, True),
            relations=_parse_relations(relations),
            include_composites=_parse_bool("composites", composites, True),
            include_ancestor_composites=_parse_bool(
                "ancestor_composites", ancestor_composites, False
            ),
            include_bridges=_parse_bool("bridges", bridges, False),
            annotation_type_filter=annotation_type,
            object_type_filter=object_type,
        )
        result = execute_search(
            request, corpus.index, corpus.annotations, corpus.bridges
        )
        return search_result_to_json(result)

    @app.get("/ontologies")
    def ontologies():
        return [
            {"key": key, "terms": len(ids)}
            for key, ids in sorted(corpus.index.ontologies.items())
        ]

    @app.get("/stats")
    def stats():
        return corpus.stats()

    return app


def create_app(config: ServiceConfig) -> FastAPI:
    """Load all configured files and build the application.

    Fails fast: any parse, resolution, duplicate-term, or cycle error is
    wrapped in :class:`StartupError` with the underlying diagnostic.
    """
    if not config.obo_files:
        raise StartupError("no ontologies configured")
    if not 1 <= config.port <= 65535:
        raise StartupError(f"port {config.port} out of range [1, 65535]")
    try:
        corpus = load_corpus(
            config.obo_files,
            annotation_path=config.annotation_file,
            bridge_paths=config.bridge_files,
            lenient=config.lenient,
        )
    except OntoqError as exc:
        raise StartupError(f"failed to load corpus: {exc}", cause=exc) from exc
    return build_app(corpus, config.cors_allowed_origin)


def start_service(config: ServiceConfig) -> None:
    """Blocking entry point: load, then serve until interrupted."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port)
