import json
import os

import pytest
from click.testing import CliRunner

import shared.constants as constants
from shared.errors import ContractViolation
from views.cli import setconj_cli
from views.cli.setconj_cli import setconj


def instance_path(name):
    return os.path.join(constants.INSTANCE_PATH, name + ".json")


@pytest.fixture
def runner(monkeypatch):
    # the run command writes caps into the constants module
    monkeypatch.setattr(constants, "FM_CONSTRAINT_CAP", constants.FM_CONSTRAINT_CAP)
    monkeypatch.setattr(constants, "COMPLEMENT_CELL_CAP", constants.COMPLEMENT_CELL_CAP)
    return CliRunner()


def test_run_writes_report(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(setconj, ["run", instance_path("two-point"), "--out", str(out)])
    assert result.exit_code == constants.EXIT_OK
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["passed"]
    assert report["seed"] == constants.DEFAULT_SEED
    assert "seconds" not in report["tasks"][0]


def test_run_selects_tasks(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(setconj, ["run", instance_path("two-point"), "--task", "biconjugate", "--seed", "7",
                                     "--out", str(out)])
    assert result.exit_code == constants.EXIT_OK
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["seed"] == 7
    assert [t["task"] for t in report["tasks"]] == ["biconjugate"]


def test_parse_error(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"spaces": {"x": 1, "z": 1}, "cone": [["1/0"]], "tasks": []}', encoding="utf-8")
    result = runner.invoke(setconj, ["run", str(bad)])
    assert result.exit_code == constants.EXIT_PARSE_ERROR


def test_resource_limit(runner, tmp_path):
    result = runner.invoke(setconj, ["run", instance_path("chain"), "--task", "chain", "--fm-cap", "0",
                                     "--out", str(tmp_path / "report.json")])
    assert result.exit_code == constants.EXIT_RESOURCE_LIMIT


def test_props(runner, tmp_path):
    out = tmp_path / "props.json"
    result = runner.invoke(setconj, ["props", "--only", "ext-real-laws", "--iters", "1", "--out", str(out)])
    assert result.exit_code == constants.EXIT_OK
    summary = json.loads(out.read_text(encoding="utf-8"))
    assert summary["passed"]
    assert [p["name"] for p in summary["properties"]] == ["ext-real-laws"]


def test_failed_verification(runner, tmp_path):
    # with z* = 0 alone the biconjugate is the whole space over the domain, not the hull
    with open(instance_path("two-point"), encoding="utf-8") as handle:
        document = json.load(handle)
    document["tasks"] = [{"task": "biconjugate", "function": "g",
                          "directions": [{"x_star": ["0"], "z_star": ["0", "0"]}]}]
    weak = tmp_path / "weak.json"
    weak.write_text(json.dumps(document), encoding="utf-8")
    out = tmp_path / "report.json"
    result = runner.invoke(setconj, ["run", str(weak), "--out", str(out)])
    assert result.exit_code == constants.EXIT_VERIFICATION_FAILED
    assert "Verification failed" in result.output
    report = json.loads(out.read_text(encoding="utf-8"))
    assert not report["passed"]
    assert not report["tasks"][0]["passed"]


def test_contract_violation_in_a_task(runner, monkeypatch):
    def violating(index, instance, seed):
        raise ContractViolation("duality directions must be nonzero")

    monkeypatch.setattr(setconj_cli, "run_task", violating)
    result = runner.invoke(setconj, ["run", instance_path("two-point")])
    assert result.exit_code == constants.EXIT_CONTRACT_ERROR
    assert "Contract violation" in result.output
    assert not isinstance(result.exception, ContractViolation)
