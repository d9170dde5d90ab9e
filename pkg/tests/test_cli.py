import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from qschur.cli import main

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, list(args))

    return go


def test_eval_split(run):
    r = run("eval", "split[d->a0|a1]", "1")
    assert r.exit_code == 0
    assert "output   u1 - v1" in r.output
    assert "degree shift +2" in r.output


def test_eval_json(run):
    r = run("eval", "id[1e+1t]; mx[@1,et]", "x1", "--json", "-")
    doc = json.loads(r.output)
    assert doc["output"] == "x2 + c1" and doc["conjectural"] is False


def test_eval_parse_error_position(run):
    r = run("eval", "split[d->a0|a1]", "u1+")
    assert r.exit_code == 2
    assert "position 3" in r.output
    assert r.output.rstrip().endswith("^")


def test_eval_conjectural_gate(run):
    r = run("eval", "id[1e+2t]; mx[@1,et]", "x1")
    assert r.exit_code == 2 and "conjectural" in r.output
    r = run("eval", "id[1e+2t]; mx[@1,et]", "x1", "--conjectural")
    assert r.exit_code == 0 and "(conjectural)" in r.output


def test_order_golden(run):
    r = run("order", "2d")
    assert r.exit_code == 0
    assert r.output == (GOLDEN / "order_2d.txt").read_text()


def test_order_imaginary(run):
    r = run("order", "2d", "--imaginary")
    assert len(r.output.strip().splitlines()) == 6


def test_cusp(run):
    assert "noncuspidal" in run("cusp", "(a1,a0)").output
    assert "no cut" in run("cusp", "(a0,a1)").output
    assert run("cusp", "(a0,a1").exit_code == 2


def test_zigzag(run):
    r = run("zigzag")
    assert r.output.startswith("(2, 0, 3)")
    assert json.loads(run("zigzag", "--json", "-").output)["dims"] == [2, 0, 3]


def test_cohomology_probes(run):
    r = run("cohomology", "-n", "2", "-D", "4", "--probe", "c1*c2", "--probe", "2*c1*c2")
    assert r.exit_code == 0
    assert "c1*c2: not a member" in r.output
    assert "2*c1*c2: member" in r.output


def test_cohomology_bad_degree(run):
    assert run("cohomology", "-D", "5").exit_code == 2


def test_check_colour_change(run):
    r = run("check", "--suite", "colour-change", "-n", "2", "-j", "1")
    assert r.exit_code == 0
    assert "Euler class" in r.output
    assert "all checks pass" in r.output


def test_check_json_and_file(run, tmp_path):
    out = tmp_path / "report.json"
    r = run("check", "--suite", "demazure", "--trials", "3", "-n", "2", "-D", "6", "-j", "1", "--json", str(out))
    assert r.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["passed"] and doc["config"]["trials"] == 3
    assert {c["verdict"] for c in doc["cases"]} == {"pass"}


def test_check_rejects_odd_degree(run):
    assert run("check", "--suite", "demazure", "-D", "7").exit_code == 2


def test_check_unknown_suite(run):
    r = run("check", "--suite", "nope")
    assert r.exit_code == 2 and "unknown suite" in r.output


def test_basis_pair(run):
    r = run("basis", "(d)", "(a1,a0)", "-D", "4")
    assert r.exit_code == 0 and "all independent" in r.output


def test_basis_usage_errors(run):
    assert run("basis", "(d)").exit_code == 2
    assert run("basis", "-D", "5", "(d)", "(d)").exit_code == 2
