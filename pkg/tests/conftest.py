from pathlib import Path

import pytest

from ontoq import load_corpus

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def corpus():
    """The canonical miniature corpus: both ontologies, annotations, bridges."""
    return load_corpus(
        [FIXTURES / "mini-ao.obo", FIXTURES / "mini-go.obo"],
        annotation_path=FIXTURES / "annotations.tsv",
        bridge_paths=[FIXTURES / "bridge.tsv"],
    )


@pytest.fixture(scope="session")
def ontology_index(corpus):
    return corpus.index
