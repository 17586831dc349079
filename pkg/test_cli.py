"""Command line surface: subcommands, output formats and exit codes."""

import json

import pytest

from conftest import E1, E2, E3, SAMPLES
from coxcent.api.schemas import AnalysisReport, OracleResult
from coxcent.cli import run
from coxcent.config import get_settings

WORKED = str(SAMPLES / "rank6_example.json")
AVOID = ";".join([E1, E2, E3])


def test_analyze_text(capsys):
    assert run(["analyze", WORKED, "--bound", "1", "--tree-avoid", AVOID]) == 0
    out = capsys.readouterr().out
    assert "graph C: 10 vertices" in out
    assert "B_I: generators a, g[2,3]" in out


def test_analyze_json(capsys):
    assert run(["analyze", WORKED, "--bound", "1", "--json", "--tree-avoid", AVOID]) == 0
    report = AnalysisReport.model_validate_json(capsys.readouterr().out)
    assert report.pi1.y1_rank == 3
    assert report.centralizer is not None
    assert not set(report.pi1.tree_edges) & {E1, E2, E3}


def test_normalizer_command(capsys):
    assert run(["normalizer", WORKED, "--bound", "1", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["centralizer"] is None
    assert data["normalizer"]["generators"] == ["h[1,3,2]"]


def test_dot_output(capsys, tmp_path):
    assert run(["analyze", WORKED, "--bound", "1", "--dot", str(tmp_path)]) == 0
    assert (tmp_path / "cgraph.dot").exists()
    assert (tmp_path / "wperp.dot").exists()


def test_missing_file(capsys, tmp_path):
    assert run(["analyze", str(tmp_path / "nope.json")]) == 2
    assert capsys.readouterr().err.startswith("InputError")


def test_malformed_document(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"generators": ["a"], "subset": ["b"]}), encoding="utf-8")
    assert run(["analyze", str(bad)]) == 2
    assert "subset[0]" in capsys.readouterr().err


def test_unknown_tree_key(capsys):
    assert run(["analyze", WORKED, "--tree-avoid", "s1,s2,s3>s4"]) == 2


def test_negative_bound(capsys):
    assert run(["analyze", WORKED, "--bound", "-1"]) == 2
    err = capsys.readouterr().err
    assert err.startswith("ConfigurationError")
    assert "bound_L" in err


def test_oracle_command(capsys):
    assert run(["oracle", str(SAMPLES / "b3_end.json")]) == 0
    result = OracleResult.model_validate_json(capsys.readouterr().out)
    assert result.centralizer_order == 16
    assert result.agrees


def test_oracle_cap(capsys):
    assert run(["oracle", str(SAMPLES / "affine_a2.json"), "--cap", "100"]) == 3


def test_config_command(capsys):
    assert run(["config"]) == 0
    out = capsys.readouterr().out
    assert "BOUND_L" in out
    assert "GROUP_ORDER_CAP" in out


@pytest.mark.parametrize("argv", [[], ["--help"]])
def test_help(capsys, argv):
    if argv:
        with pytest.raises(SystemExit):
            run(argv)
    else:
        assert run(argv) == 0
    assert "coxcent" in capsys.readouterr().out


def test_invalid_environment_setting(capsys, monkeypatch):
    monkeypatch.setenv("COXCENT_LOG_LEVEL", "LOUD")
    get_settings.cache_clear()
    try:
        assert run(["config"]) == 2
    finally:
        get_settings.cache_clear()
    err = capsys.readouterr().err
    assert err.startswith("ConfigurationError")
    assert "LOG_LEVEL" in err
