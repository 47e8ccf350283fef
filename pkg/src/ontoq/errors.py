"""Exception types shared across the ontoq package."""

from __future__ import annotations


class OntoqError(Exception):
    """Base class for all ontoq errors."""


class ParseError(OntoqError):
    """A malformed line in an OBO, annotation, or bridge file.

    Carries the source file name and the 1-based physical line number of
    the offending line.
    """

    def __init__(self, file: str, line: int, message: str):
        self.file = file
        self.line = line
        self.message = message
        super().__init__(f"{file}:{line}: {message}")


class ResolutionError(OntoqError):
    """Strict reference resolution failed; holds one ParseError per dangling edge."""

    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__(
            "; ".join(str(e) for e in errors) if errors else "resolution failed"
        )


class DuplicateTermError(OntoqError):
    """The same term id was declared by more than one ontology file."""

    def __init__(self, term_id: str, ontologies: tuple[str, str]):
        self.term_id = term_id
        self.ontologies = ontologies
        super().__init__(
            f"term {term_id} declared in both {ontologies[0]} and {ontologies[1]}"
        )


class UnknownTermError(OntoqError):
    """A term id that does not exist in the loaded ontologies."""

    def __init__(self, term_id: str):
        self.term_id = term_id
        super().__init__(f"unknown term {term_id}")


class CycleError(OntoqError):
    """Closure-eligible edges contain a cycle; ``cycle`` is one witness.

    The witness is a list of term ids with ``cycle[0] == cycle[-1]`` where
    every consecutive pair is connected by a closure-eligible edge
    (child followed by parent).
    """

    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("cycle detected: " + " -> ".join(cycle))


class EmptyQueryError(OntoqError):
    """Autocomplete was called with a blank query string."""

    def __init__(self) -> None:
        super().__init__("query is empty")


class StartupError(OntoqError):
    """The HTTP service could not start; wraps the underlying diagnostic."""

    def __init__(self, message: str, cause: Exception | None = None):
        self.cause = cause
        super().__init__(message)
