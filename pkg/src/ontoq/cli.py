"""Operator command line: validate, query, complete, stats, serve.

Exit codes: 0 success, 1 parse/cycle/unknown-term errors (diagnostic on
stderr), 2 usage errors.
"""

from __future__ import annotations

import functools
import json
import sys

import click

from .annotations import SimpleEntity
from .corpus import load_corpus
from .errors import OntoqError
from .obo import load_ontology
from .query import QueryRequest, execute_search
from .service import ServiceConfig, search_result_to_json, start_service


def _compact_json(body) -> str:
    # same rendering as the HTTP responses, so `query --format json`
    # output equals the /search body byte for byte
    return json.dumps(
        body, ensure_ascii=False, allow_nan=False, separators=(",", ":")
    )


def catch_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except OntoqError as exc:
            click.echo(str(exc), err=True)
            sys.exit(1)

    return wrapper


def data_options(f):
    f = click.option(
        "--obo", "obo_files", multiple=True, type=click.Path(exists=True),
        help="OBO ontology file (repeatable).",
    )(f)
    f = click.option(
        "--annotations", "annotation_file", type=click.Path(exists=True),
        default=None, help="Annotation TSV file.",
    )(f)
    f = click.option(
        "--bridges-file", "bridge_files", multiple=True, type=click.Path(exists=True),
        help="Cross-ontology bridge TSV file (repeatable).",
    )(f)
    f = click.option(
        "--lenient", is_flag=True,
        help="Materialize stub terms for dangling references instead of failing.",
    )(f)
    return f


def _require_obo(obo_files) -> None:
    if not obo_files:
        raise click.UsageError("at least one --obo file is required")


def _load(obo_files, annotation_file, bridge_files, lenient):
    _require_obo(obo_files)
    return load_corpus(
        list(obo_files),
        annotation_path=annotation_file,
        bridge_paths=list(bridge_files),
        lenient=lenient,
    )


@click.group()
def cli():
    """Ontology-aware annotation search engine."""


@cli.command()
@click.argument("files", nargs=-1, type=click.Path(exists=True))
@data_options
def validate(files, obo_files, annotation_file, bridge_files, lenient):
    """Parse and check ontology, annotation, and bridge files.

    OBO files may be given as positional arguments or with --obo.
    """
    paths = list(files) + list(obo_files)
    if not paths and not annotation_file and not bridge_files:
        raise click.UsageError("nothing to validate: pass OBO files or data flags")
    failed = False
    parsed = []
    for path in paths:
        try:
            doc = load_ontology(path, lenient=lenient)
        except OntoqError as exc:
            click.echo(f"ERROR {exc}", err=True)
            failed = True
            continue
        for warning in doc.warnings:
            click.echo(f"WARN {warning}", err=True)
        click.echo(
            f"OK {doc.ontology_key}: {len(doc.terms)} terms, {len(doc.edges)} edges"
        )
        parsed.append(doc)
    if not failed and parsed:
        try:
            corpus = _load(tuple(paths), annotation_file, bridge_files, lenient)
        except OntoqError as exc:
            click.echo(f"ERROR {exc}", err=True)
            failed = True
        else:
            for warning in corpus.warnings:
                click.echo(f"WARN {warning}", err=True)
            if annotation_file:
                click.echo(f"OK annotations: {len(corpus.annotations)} annotations")
            if bridge_files:
                click.echo(f"OK bridges: {len(corpus.bridges)} links")
    sys.exit(1 if failed else 0)


@cli.command()
@data_options
@click.option("--term", required=True, help="Query term id, e.g. ZFA:0000001.")
@click.option("--descendants/--no-descendants", default=True,
              help="Include all subterms of the query term.")
@click.option("--relations", default="is_a,part_of", show_default=True,
              help="Comma-separated relations to traverse.")
@click.option("--composites/--no-composites", default=True,
              help="Match post-composed annotations through either component.")
@click.option("--ancestor-composites", is_flag=True,
              help="Also match composites on ancestor terms (flagged inferred).")
@click.option("--bridges", is_flag=True,
              help="Expand the query across bridge links.")
@click.option("--annotation-type", default=None,
              type=click.Choice(["expression", "phenotype", "function"]))
@click.option("--object-type", default=None)
@click.option("--format", "output_format", default="tsv",
              type=click.Choice(["tsv", "json"]), show_default=True)
@catch_errors
def query(obo_files, annotation_file, bridge_files, lenient, term, descendants,
          relations, composites, ancestor_composites, bridges, annotation_type,
          object_type, output_format):
    """Run one ontologically aware search and print the matches."""
    corpus = _load(obo_files, annotation_file, bridge_files, lenient)
    try:
        relation_set = frozenset(r.strip() for r in relations.split(","))
        request = QueryRequest(
            term=term,
            include_descendants=descendants,
            relations=relation_set,
            include_composites=composites,
            include_ancestor_composites=ancestor_composites,
            include_bridges=bridges,
            annotation_type_filter=annotation_type,
            object_type_filter=object_type,
        )
        result = execute_search(
            request, corpus.index, corpus.annotations, corpus.bridges
        )
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    if output_format == "json":
        click.echo(_compact_json(search_result_to_json(result)))
        return
    for ann, explanation in result.annotations:
        if isinstance(ann.entity, SimpleEntity):
            entity = ann.entity.term
        else:
            entity = f"{ann.entity.primary}^{ann.entity.secondary}"
        click.echo(
            "\t".join(
                [
                    ann.object.id,
                    ann.object.object_type,
                    ann.annotation_type,
                    entity,
                    explanation.path_kind,
                    ",".join(explanation.via_terms),
                ]
            )
        )


@cli.command()
@click.argument("text")
@data_options
@click.option("--limit", default=10, show_default=True, type=click.IntRange(min=1))
@click.option("--ontology", default=None, help="Restrict to one ontology key.")
@click.option("--include-obsolete", is_flag=True)
@catch_errors
def complete(text, obo_files, annotation_file, bridge_files, lenient, limit,
             ontology, include_obsolete):
    """Print ranked autocomplete matches, one per line."""
    corpus = _load(obo_files, annotation_file, bridge_files, lenient)
    if include_obsolete:
        from .lexical import build_lexical_index

        lexical = build_lexical_index(corpus.index, include_obsolete=True)
    else:
        lexical = corpus.lexical
    for m in lexical.autocomplete(text, limit, ontology_filter=ontology):
        click.echo(f"{m.term}\t{m.display_name}\t{m.tier}")


@cli.command()
@data_options
@catch_errors
def stats(obo_files, annotation_file, bridge_files, lenient):
    """Print corpus statistics."""
    corpus = _load(obo_files, annotation_file, bridge_files, lenient)
    for key, value in corpus.stats().items():
        click.echo(f"{key}: {value}")


@cli.command()
@data_options
@click.option("--port", envvar="ONTOQ_PORT", default=8000, show_default=True,
              type=int, help="Port to bind (env ONTOQ_PORT).")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--cors-origin", default=None,
              help="Allowed CORS origin for the browser UI.")
@catch_errors
def serve(obo_files, annotation_file, bridge_files, lenient, port, host,
          cors_origin):
    """Load the corpus and serve the HTTP API."""
    _require_obo(obo_files)
    start_service(
        ServiceConfig(
            obo_files=list(obo_files),
            annotation_file=annotation_file,
            bridge_files=list(bridge_files),
            lenient=lenient,
            port=port,
            host=host,
            cors_allowed_origin=cors_origin,
        )
    )


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
