"""Parser for a strict subset of the OBO 1.2 flat file format.

The supported grammar is line-oriented:

* header tags ``format-version:`` and ``ontology:``; all other header
  lines are ignored,
* a stanza starts at a line equal to ``[Term]``; stanzas with any other
  header (``[Typedef]``, ...) are skipped whole,
* stanza tags ``id``, ``name``, ``def``, ``synonym``, ``is_a``,
  ``relationship`` and ``is_obsolete``; unknown tags are ignored,
* a comment starts at the first unquoted ``!`` and runs to end of line;
  comments and trailing whitespace are stripped before tag parsing,
* the synonym value must be ``"TEXT" SCOPE [xrefs]`` with scope one of
  EXACT, BROAD, NARROW or RELATED (the xref list is carried in the file
  but not retained),
* ``relationship: REL TARGET_ID`` needs at least the two tokens shown.

Everything else in OBO 1.2 or 1.4 (Typedef semantics, imports, xref
resolution) is out of scope.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Literal

from .errors import ParseError, ResolutionError

TERM_ID_PATTERN = re.compile(r"^[A-Za-z_]+:[A-Za-z0-9_]+$")

SYNONYM_SCOPES = ("EXACT", "BROAD", "NARROW", "RELATED")

_SYNONYM_RE = re.compile(
    r'^"((?:[^"\\]|\\.)*)"\s+(EXACT|BROAD|NARROW|RELATED)\s+\[.*\]$'
)
_QUOTED_RE = re.compile(r'^"((?:[^"\\]|\\.)*)"')
_STANZA_RE = re.compile(r"^\[.+\]$")


@dataclass(frozen=True)
class Synonym:
    """One synonym of a term: its text and OBO scope."""

    text: str
    scope: str  # EXACT | BROAD | NARROW | RELATED


@dataclass(frozen=True)
class ParsedTerm:
    """One ``[Term]`` stanza.

    ``synthetic`` marks stub terms materialized by lenient reference
    resolution; they never come from an actual stanza.
    """

    id: str
    name: str
    definition: str | None = None
    synonyms: tuple[Synonym, ...] = ()
    obsolete: bool = False
    synthetic: bool = False


@dataclass(frozen=True)
class RelationEdge:
    """A directed child -> parent edge.

    ``relation`` is ``is_a``, ``part_of``, ``develops_from`` or any other
    label found in a ``relationship:`` line. ``line`` records where the
    edge was declared for error reporting; it does not participate in
    structural equality.
    """

    child_id: str
    parent_id: str
    relation: str
    line: int = field(default=0, compare=False)


@dataclass
class ParsedOntology:
    """In-memory form of one parsed OBO document.

    Terms are kept in stanza order and edges in line order so that
    round-trips through :func:`serialize_ontology` are exact.
    """

    ontology_key: str
    format_version: str
    terms: list[ParsedTerm]
    edges: list[RelationEdge]
    source_name: str = ""
    warnings: list[str] = field(default_factory=list)


def _strip_comment(line: str) -> str:
    """Drop an unquoted ``!`` comment and trailing whitespace."""
    in_quotes = False
    i = 0
    n = len(line)
    while i < n:
        c = line[i]
        if c == "\\" and in_quotes:
            i += 2
            continue
        if c == '"':
            in_quotes = not in_quotes
        elif c == "!" and not in_quotes:
            return line[:i].rstrip()
        i += 1
    return line.rstrip()


def _unescape(text: str) -> str:
    return re.sub(r"\\(.)", r"\1", text)


def _escape_quoted(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


class _Parser:
    """Single-pass, line-numbered OBO parser."""

    def __init__(self, source_name: str):
        self.source_name = source_name
        self.ontology_tag: str | None = None
        self.format_version = ""
        self.terms: list[ParsedTerm] = []
        self.edges: list[RelationEdge] = []
        self.seen_ids: dict[str, int] = {}

    def fail(self, line: int, message: str) -> ParseError:
        return ParseError(self.source_name, line, message)

    def parse(self, text: str) -> ParsedOntology:
        # stanza is None in the header, False inside a skipped stanza, or a
        # list of (tag, value, lineno) tuples inside a [Term] stanza.
        stanza: list[tuple[str, str, int]] | None | bool = None
        stanza_start = 0
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = _strip_comment(raw)
            if not line:
                continue
            if _STANZA_RE.match(line):
                if isinstance(stanza, list):
                    self._flush(stanza, stanza_start)
                if line == "[Term]":
                    stanza = []
                    stanza_start = lineno
                else:
                    stanza = False
                continue
            if ":" not in line:
                continue  # not a tag line; tolerated everywhere
            tag, _, value = line.partition(":")
            tag = tag.strip()
            value = value.strip()
            if stanza is None:
                if tag == "ontology":
                    self.ontology_tag = value
                elif tag == "format-version":
                    self.format_version = value
            elif isinstance(stanza, list):
                stanza.append((tag, value, lineno))
        if isinstance(stanza, list):
            self._flush(stanza, stanza_start)

        key = self.ontology_tag or Path(self.source_name).stem
        if not key:
            raise self.fail(1, "cannot determine ontology key (no ontology header)")
        return ParsedOntology(
            ontology_key=key,
            format_version=self.format_version,
            terms=self.terms,
            edges=self.edges,
            source_name=self.source_name,
        )

    def _flush(self, tags: list[tuple[str, str, int]], stanza_start: int) -> None:
        term_id = None
        for tag, value, lineno in tags:
            if tag == "id":
                term_id = value
                if not TERM_ID_PATTERN.match(term_id):
                    raise self.fail(lineno, f"invalid term id {term_id!r}")
                if term_id in self.seen_ids:
                    raise self.fail(
                        lineno,
                        f"duplicate id {term_id} (first declared at line "
                        f"{self.seen_ids[term_id]})",
                    )
                self.seen_ids[term_id] = lineno
                break
        if term_id is None:
            raise self.fail(stanza_start, "stanza is missing an id: tag")

        name = ""
        definition: str | None = None
        synonyms: list[Synonym] = []
        obsolete = False
        edges: list[RelationEdge] = []
        for tag, value, lineno in tags:
            if tag == "name":
                name = value
            elif tag == "def":
                m = _QUOTED_RE.match(value)
                definition = _unescape(m.group(1)) if m else value
            elif tag == "synonym":
                m = _SYNONYM_RE.match(value)
                if not m:
                    raise self.fail(
                        lineno,
                        'malformed synonym line (expected: synonym: "TEXT" SCOPE [...])',
                    )
                synonyms.append(Synonym(_unescape(m.group(1)), m.group(2)))
            elif tag == "is_a":
                target = value.split()[0] if value.split() else ""
                self._add_edge(edges, term_id, target, "is_a", lineno)
            elif tag == "relationship":
                tokens = value.split()
                if len(tokens) < 2:
                    raise self.fail(
                        lineno,
                        "relationship needs at least two tokens (REL TARGET_ID)",
                    )
                self._add_edge(edges, term_id, tokens[1], tokens[0], lineno)
            elif tag == "is_obsolete":
                obsolete = value.lower() == "true"

        if not name and not obsolete:
            raise self.fail(stanza_start, f"term {term_id} has no name")
        self.terms.append(
            ParsedTerm(
                id=term_id,
                name=name,
                definition=definition,
                synonyms=tuple(synonyms),
                obsolete=obsolete,
            )
        )
        self.edges.extend(edges)

    def _add_edge(
        self,
        edges: list[RelationEdge],
        child: str,
        target: str,
        relation: str,
        lineno: int,
    ) -> None:
        if not TERM_ID_PATTERN.match(target):
            raise self.fail(lineno, f"invalid reference id {target!r}")
        if target == child:
            raise self.fail(lineno, f"self-loop edge on {child}")
        edges.append(RelationEdge(child, target, relation, line=lineno))


def parse_obo_document(source_name: str, text: str) -> ParsedOntology:
    """Parse OBO text into a :class:`ParsedOntology`.

    Raises :class:`ParseError` with the offending 1-based line number on
    any violation of the grammar subset (missing or duplicate ids,
    malformed synonym lines, short relationship lines, self-loop edges).
    """
    return _Parser(source_name).parse(text)


def resolve_references(
    parsed: ParsedOntology, mode: Literal["strict", "lenient"] = "strict"
) -> ParsedOntology:
    """Check that every edge parent is declared in the same document.

    In strict mode a :class:`ResolutionError` carrying one
    :class:`ParseError` per dangling edge is raised. In lenient mode each
    dangling parent is materialized as a synthetic stub term (name equal
    to the id) and a warning is recorded on the returned ontology.

    Cross-document edges are deliberately illegal: links between
    ontologies travel only through bridge files.
    """
    declared = {t.id for t in parsed.terms}
    dangling = [e for e in parsed.edges if e.parent_id not in declared]
    if not dangling:
        return parsed
    if mode == "strict":
        raise ResolutionError(
            [
                ParseError(
                    parsed.source_name,
                    e.line,
                    f"dangling reference {e.parent_id} ({e.relation} edge from {e.child_id})",
                )
                for e in dangling
            ]
        )
    stubs: list[ParsedTerm] = []
    warnings = list(parsed.warnings)
    seen: set[str] = set()
    for e in dangling:
        if e.parent_id in seen:
            continue
        seen.add(e.parent_id)
        stubs.append(ParsedTerm(id=e.parent_id, name=e.parent_id, synthetic=True))
        warnings.append(
            f"{parsed.source_name}:{e.line}: materialized stub term "
            f"{e.parent_id} for dangling reference"
        )
    return replace(parsed, terms=parsed.terms + stubs, warnings=warnings)


def serialize_ontology(parsed: ParsedOntology) -> str:
    """Render a :class:`ParsedOntology` as canonical OBO text.

    One tag per line, stanza order preserved, each edge emitted inside its
    child's stanza (``is_a:`` for is_a edges, ``relationship:`` for all
    others). Reparsing the output yields a structurally identical
    ontology.
    """
    out: list[str] = []
    if parsed.format_version:
        out.append(f"format-version: {parsed.format_version}")
    out.append(f"ontology: {parsed.ontology_key}")
    by_child: dict[str, list[RelationEdge]] = {}
    for e in parsed.edges:
        by_child.setdefault(e.child_id, []).append(e)
    for term in parsed.terms:
        out.append("")
        out.append("[Term]")
        out.append(f"id: {term.id}")
        if term.name:
            out.append(f"name: {term.name}")
        if term.definition is not None:
            out.append(f'def: "{_escape_quoted(term.definition)}" []')
        for syn in term.synonyms:
            out.append(f'synonym: "{_escape_quoted(syn.text)}" {syn.scope} []')
        for e in by_child.get(term.id, ()):
            if e.relation == "is_a":
                out.append(f"is_a: {e.parent_id}")
            else:
                out.append(f"relationship: {e.relation} {e.parent_id}")
        if term.obsolete:
            out.append("is_obsolete: true")
    return "\n".join(out) + "\n"


def load_ontology(path: str | Path, lenient: bool = False) -> ParsedOntology:
    """Read, parse, and reference-resolve one OBO file."""
    path = Path(path)
    parsed = parse_obo_document(path.name, path.read_text(encoding="utf-8"))
    return resolve_references(parsed, "lenient" if lenient else "strict")
