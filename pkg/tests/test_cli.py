import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from ontoq import build_app
from ontoq.cli import cli

from .conftest import FIXTURES

AO = str(FIXTURES / "mini-ao.obo")
GO = str(FIXTURES / "mini-go.obo")
ANN = str(FIXTURES / "annotations.tsv")
BRIDGE = str(FIXTURES / "bridge.tsv")

ALL_DATA = [
    "--obo", AO, "--obo", GO, "--annotations", ANN, "--bridges-file", BRIDGE,
]


@pytest.fixture()
def runner():
    return CliRunner()


def test_validate_single_file(runner):
    result = runner.invoke(cli, ["validate", AO])
    assert result.exit_code == 0
    assert "OK zfa-mini: 5 terms, 3 edges" in result.output


def test_validate_full_corpus(runner):
    result = runner.invoke(cli, ["validate", AO, GO] + ALL_DATA[4:])
    assert result.exit_code == 0
    assert "OK zfa-mini: 5 terms, 3 edges" in result.output
    assert "OK go-mini: 4 terms, 3 edges" in result.output
    assert "OK annotations: 4 annotations" in result.output
    assert "OK bridges: 2 links" in result.output


def test_validate_broken_file(runner, tmp_path):
    bad = tmp_path / "bad.obo"
    bad.write_text("[Term]\nname: nameless\n")
    result = runner.invoke(cli, ["validate", str(bad)])
    assert result.exit_code == 1
    assert "ERROR" in result.stderr
    assert "bad.obo:1" in result.stderr


def test_validate_dangling_reference_strict_vs_lenient(runner, tmp_path):
    dangling = tmp_path / "dangling.obo"
    dangling.write_text(
        "ontology: d\n\n[Term]\nid: D:1\nname: one\nis_a: D:9\n"
    )
    strict = runner.invoke(cli, ["validate", str(dangling)])
    assert strict.exit_code == 1
    assert "D:9" in strict.stderr
    lenient = runner.invoke(cli, ["validate", str(dangling), "--lenient"])
    assert lenient.exit_code == 0
    assert "OK d: 2 terms, 1 edges" in lenient.output
    assert "WARN" in lenient.stderr and "D:9" in lenient.stderr


def test_validate_nothing_is_usage_error(runner):
    assert runner.invoke(cli, ["validate"]).exit_code == 2


def test_query_eye_with_bridges(runner):
    result = runner.invoke(
        cli, ["query", "--term", "ZFA:0000001", "--bridges"] + ALL_DATA
    )
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].split("\t") == [
        "ntla", "gene", "phenotype", "GO:0000004", "bridged",
        "ZFA:0000001,ZFA:0000002,GO:0000004",
    ]
    assert lines[1].split("\t") == [
        "pax6a", "gene", "expression", "ZFA:0000003", "descendant",
        "ZFA:0000001,ZFA:0000002,ZFA:0000003",
    ]


def test_query_composite_entity_rendering(runner):
    result = runner.invoke(cli, ["query", "--term", "ZFA:0000010"] + ALL_DATA)
    assert result.exit_code == 0
    lines = [line.split("\t") for line in result.output.strip().splitlines()]
    assert lines[1][0] == "ti282a"
    assert lines[1][3] == "ZFA:0000010^GO:0000001"
    assert lines[1][4] == "composite_component"


def test_query_unknown_term(runner):
    result = runner.invoke(cli, ["query", "--term", "XX:1", "--obo", AO])
    assert result.exit_code == 1
    assert "unknown term XX:1" in result.stderr


def test_query_requires_term_and_obo(runner):
    assert runner.invoke(cli, ["query", "--obo", AO]).exit_code == 2
    assert runner.invoke(cli, ["query", "--term", "ZFA:0000001"]).exit_code == 2


def test_query_bad_relations_is_usage_error(runner):
    result = runner.invoke(
        cli,
        ["query", "--term", "ZFA:0000001", "--relations", "bogus", "--obo", AO],
    )
    assert result.exit_code == 2


def test_query_json_matches_service_body(runner, corpus):
    result = runner.invoke(
        cli,
        ["query", "--term", "ZFA:0000001", "--bridges", "--format", "json"]
        + ALL_DATA,
    )
    assert result.exit_code == 0
    client = TestClient(build_app(corpus))
    resp = client.get("/search", params={"term": "ZFA:0000001", "bridges": "true"})
    assert result.output.strip() == resp.content.decode("utf-8")
    assert json.loads(result.output) == resp.json()


def test_complete_output(runner):
    result = runner.invoke(cli, ["complete", "ret", "--obo", AO, "--obo", GO])
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        "ZFA:0000002\tretina\t2",
        "GO:0000003\tretina development\t2",
        "ZFA:0000003\tretinal pigmented epithelium\t2",
        "GO:0000004\tneural retina development\t3",
    ]


def test_complete_limit_and_ontology(runner):
    result = runner.invoke(
        cli, ["complete", "ret", "--limit", "1", "--obo", AO, "--obo", GO]
    )
    assert result.output.splitlines() == ["ZFA:0000002\tretina\t2"]
    go_only = runner.invoke(
        cli, ["complete", "ret", "--ontology", "go-mini", "--obo", AO, "--obo", GO]
    )
    assert all(line.startswith("GO:") for line in go_only.output.splitlines())


def test_stats_output(runner):
    result = runner.invoke(cli, ["stats"] + ALL_DATA)
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        "terms: 9",
        "ontologies: 2",
        "annotations: 4",
        "bridges: 2",
    ]


def test_stats_parse_failure_exits_one(runner, tmp_path):
    bad = tmp_path / "bad.obo"
    bad.write_text("[Term]\nid: broken\n")
    result = runner.invoke(cli, ["stats", "--obo", str(bad)])
    assert result.exit_code == 1
    assert "bad.obo" in result.stderr


def test_unknown_subcommand_is_usage_error(runner):
    assert runner.invoke(cli, ["frobnicate"]).exit_code == 2


def test_serve_port_defaults_to_env(runner, monkeypatch):
    seen = {}
    monkeypatch.setattr(
        "ontoq.cli.start_service", lambda config: seen.update(port=config.port)
    )
    result = runner.invoke(
        cli, ["serve", "--obo", AO], env={"ONTOQ_PORT": "9321"}
    )
    assert result.exit_code == 0
    assert seen["port"] == 9321


def test_serve_flag_overrides_env(runner, monkeypatch):
    seen = {}
    monkeypatch.setattr(
        "ontoq.cli.start_service", lambda config: seen.update(port=config.port)
    )
    result = runner.invoke(
        cli, ["serve", "--obo", AO, "--port", "9222"], env={"ONTOQ_PORT": "9321"}
    )
    assert result.exit_code == 0
    assert seen["port"] == 9222


def test_serve_requires_obo(runner):
    assert runner.invoke(cli, ["serve"]).exit_code == 2
