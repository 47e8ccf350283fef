"""Synonym-aware ranked term lookup for autocomplete.

Matching is case-insensitive (keys are case-folded) and purely
prefix-based; there is no fuzzy matching. Matches are ranked into five
tiers:

1. query equals a term name,
2. query is a prefix of a term name,
3. query is a prefix of some whitespace-delimited token of a name,
4. query equals or is a prefix of a synonym,
5. query is a prefix of some token of a synonym.

Each term appears at most once in the output (best tier wins) and ties
break on (display name, term id) by code point, so output order is fully
deterministic. Lookups run over sorted key arrays with binary search
rather than a corpus scan.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .errors import EmptyQueryError
from .model import OntologyIndex


@dataclass(frozen=True)
class LexicalEntry:
    """One searchable string: a term name or one of its synonyms."""

    key: str  # case-folded text
    text: str  # original text, reported as matched_text
    kind: str  # "name" | "synonym"
    scope: str | None  # synonym scope, None for names
    term: str
    display_name: str
    ontology_key: str


@dataclass(frozen=True)
class AutocompleteMatch:
    term: str
    display_name: str
    matched_text: str
    matched_kind: str  # "name" | "synonym"
    tier: int


class LexicalIndex:
    def __init__(self, entries: list[LexicalEntry]):
        self.entries = entries
        names = [i for i, e in enumerate(entries) if e.kind == "name"]
        syns = [i for i, e in enumerate(entries) if e.kind == "synonym"]
        self._names = sorted((entries[i].key, i) for i in names)
        self._syns = sorted((entries[i].key, i) for i in syns)
        self._name_tokens = sorted(
            (tok, i) for i in names for tok in entries[i].key.split()
        )
        self._syn_tokens = sorted(
            (tok, i) for i in syns for tok in entries[i].key.split()
        )

    def __len__(self) -> int:
        return len(self.entries)

    def _prefix_hits(self, arr: list[tuple[str, int]], q: str):
        """Indices of entries whose sorted key starts with q."""
        i = bisect_left(arr, (q,))
        while i < len(arr) and arr[i][0].startswith(q):
            yield arr[i]
            i += 1

    def autocomplete(
        self,
        query: str,
        limit: int,
        ontology_filter: str | None = None,
    ) -> list[AutocompleteMatch]:
        """Ranked matches for ``query``, at most ``limit`` of them.

        Raises :class:`EmptyQueryError` for blank input and ``ValueError``
        for a non-positive limit.
        """
        q = query.strip().casefold()
        if not q:
            raise EmptyQueryError()
        if limit < 1:
            raise ValueError("limit must be a positive integer")

        # best (tier, matched_text) per term id
        best: dict[str, tuple[int, LexicalEntry]] = {}

        def consider(tier: int, entry: LexicalEntry) -> None:
            if ontology_filter is not None and entry.ontology_key != ontology_filter:
                return
            cur = best.get(entry.term)
            if cur is None or (tier, entry.text) < (cur[0], cur[1].text):
                best[entry.term] = (tier, entry)

        for key, i in self._prefix_hits(self._names, q):
            consider(1 if key == q else 2, self.entries[i])
        for _, i in self._prefix_hits(self._name_tokens, q):
            consider(3, self.entries[i])
        for _, i in self._prefix_hits(self._syns, q):
            consider(4, self.entries[i])
        for _, i in self._prefix_hits(self._syn_tokens, q):
            consider(5, self.entries[i])

        ranked = sorted(
            (
                AutocompleteMatch(
                    term=term,
                    display_name=entry.display_name,
                    matched_text=entry.text,
                    matched_kind=entry.kind,
                    tier=tier,
                )
                for term, (tier, entry) in best.items()
            ),
            key=lambda m: (m.tier, m.display_name, m.term),
        )
        return ranked[:limit]


def build_lexical_index(
    index: OntologyIndex, include_obsolete: bool = False
) -> LexicalIndex:
    """Index every term name plus one entry per synonym.

    Obsolete terms are left out unless ``include_obsolete`` is set.
    """
    entries: list[LexicalEntry] = []
    for term in index.terms.values():
        if term.obsolete and not include_obsolete:
            continue
        entries.append(
            LexicalEntry(
                key=term.name.casefold(),
                text=term.name,
                kind="name",
                scope=None,
                term=term.id,
                display_name=term.name,
                ontology_key=term.ontology_key,
            )
        )
        for syn in term.synonyms:
            entries.append(
                LexicalEntry(
                    key=syn.text.casefold(),
                    text=syn.text,
                    kind="synonym",
                    scope=syn.scope,
                    term=term.id,
                    display_name=term.name,
                    ontology_key=term.ontology_key,
                )
            )
    return LexicalIndex(entries)
