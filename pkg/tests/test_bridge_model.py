import random

import pytest

from ontoq import (
    BridgeLink,
    ParseError,
    bridged_sources,
    build_bridge_index,
    parse_bridge_file,
)

from .oracles import random_corpus


def test_fixture_links(corpus, fixture_dir):
    links = parse_bridge_file(
        (fixture_dir / "bridge.tsv").read_text(), corpus.index
    )
    assert links == [
        BridgeLink("GO:0000004", "process_of", "ZFA:0000002"),
        BridgeLink("GO:0000002", "process_of", "ZFA:0000001"),
    ]


def test_single_row(ontology_index):
    links = parse_bridge_file(
        "GO:0000004\tprocess_of\tZFA:0000002", ontology_index
    )
    assert links == [BridgeLink("GO:0000004", "process_of", "ZFA:0000002")]


def test_same_ontology_rejected(ontology_index):
    with pytest.raises(ParseError) as exc:
        parse_bridge_file("ZFA:0000002\tprocess_of\tZFA:0000001", ontology_index)
    assert "same ontology" in exc.value.message
    assert exc.value.line == 1


def test_unknown_id_rejected(ontology_index):
    with pytest.raises(ParseError) as exc:
        parse_bridge_file("GO:9999999\tprocess_of\tZFA:0000001", ontology_index)
    assert "GO:9999999" in exc.value.message


def test_wrong_column_count(ontology_index):
    with pytest.raises(ParseError) as exc:
        parse_bridge_file("GO:0000004\tZFA:0000002", ontology_index)
    assert "3 tab-separated columns" in exc.value.message


def test_empty_file(ontology_index):
    assert parse_bridge_file("", ontology_index) == []
    assert parse_bridge_file("# only a comment\n", ontology_index) == []


def test_bridged_sources_examples(corpus):
    bidx = corpus.bridges
    assert bridged_sources(bidx, {"ZFA:0000002"}) == {"GO:0000004"}
    assert bridged_sources(
        bidx, {"ZFA:0000001", "ZFA:0000002", "ZFA:0000003"}
    ) == {"GO:0000002", "GO:0000004"}
    assert bridged_sources(bidx, {"ZFA:0000010"}) == set()
    assert bridged_sources(bidx, set()) == set()


def test_duplicate_links_collapse():
    links = [
        BridgeLink("GO:0000004", "process_of", "ZFA:0000002"),
        BridgeLink("GO:0000004", "process_of", "ZFA:0000002"),
    ]
    bidx = build_bridge_index(links)
    assert len(bidx) == 1


def test_inverse_consistency(corpus):
    bidx = corpus.bridges
    for target, sources in bidx.by_target.items():
        for s in sources:
            assert target in bidx.by_source[s]
    for source, targets in bidx.by_source.items():
        for t in targets:
            assert source in bidx.by_target[t]
            assert source in bridged_sources(bidx, {t})


@pytest.mark.parametrize("seed", range(5))
def test_additivity(seed):
    rng = random.Random(86 + seed)
    docs, _, links = random_corpus(rng, max_terms=80, max_bridges=40)
    bidx = build_bridge_index(links)
    ids = [t.id for doc in docs for t in doc.terms]
    for _ in range(20):
        a = set(rng.sample(ids, rng.randint(0, 8)))
        b = set(rng.sample(ids, rng.randint(0, 8)))
        assert bridged_sources(bidx, a | b) == (
            bridged_sources(bidx, a) | bridged_sources(bidx, b)
        )
