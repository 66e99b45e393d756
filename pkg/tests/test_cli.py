import json

from click.testing import CliRunner

from rba6.cli import cli
from rba6.realize import StandardBasis, verify_transition


def run(*args, env=None):
    return CliRunner().invoke(cli, list(args), env=env)


def test_check_ok():
    r = run("check", "--params", "1,1,1,1;-1,-1,-1,1")
    assert r.exit_code == 0
    assert "n=6 (m_phi,m_chi)=(1,2)" in r.output


def test_check_json_schema():
    r = run("check", "--params", "2,2,8,4;-1,-1,-1,1", "--format", "json", "--approx")
    doc = json.loads(r.output)
    assert doc["schema"] == 1 and doc["ok"]
    assert doc["table"]["multiplicities"] == ["1", "8", "6"]
    assert doc["approx"]["m_chi"].startswith("~")


def test_check_rejects_linear_relation():
    r = run("check", "--params", "1,1,1,1;0,0,0,0")
    assert r.exit_code == 1
    assert "linear relation" in r.output


def test_malformed_literal_is_usage_error():
    r = run("check", "--params", "1,1,zz,1;0,0,0,0")
    assert r.exit_code == 2
    assert "column 5" in r.output
    assert run("construct", "--params", "1,1,1,1;-1,-1,-1,1", "--signs", "+,+").exit_code == 2


def test_construct_json_round_trip():
    r = run("construct", "--params", "10,10,20,20;1,1,-7,2", "--signs", "-,+,-", "--format", "json")
    assert r.exit_code == 0
    doc = json.loads(r.output)
    basis = StandardBasis.from_json(doc["basis"])
    assert verify_transition(basis.transition, basis.table).ok


def test_construct_text_is_exact_by_default():
    r = run("construct", "--params", "1,1,1,1;-1,-1,-1,1")
    assert "sqrt(3)" in r.output and "~" not in r.output
    assert "verified" in r.output
    assert "~" in run("construct", "--params", "1,1,1,1;-1,-1,-1,1", "--approx").output


def test_lambda_products():
    r = run("lambda", "--params", "1,2,2,2;-1,2,2,-2")
    assert r.exit_code == 0
    assert "b2*b2 = 2*b0 + b3" in r.output
    assert "integral=True table_algebra=True" in r.output


def test_classify_report():
    r = run("classify", "--params", "15,21,35,35;-15,-21,-35,35", "--format", "json")
    doc = json.loads(r.output)
    assert doc["mphi1"]["kind"] == "non-real-bipartite"
    assert doc["mphi1"]["witness"]["gamma"] == 3
    assert doc["family"]["best_effort"] is True


def test_classify_literature_note():
    r = run("classify", "--params", "19,19,19,19;-5,-5,3,3")
    assert "does not exist" in r.output


def test_enumerate_md_small():
    r = run("enumerate", "--max-order", "21", "--format", "md")
    assert r.exit_code == 0
    lines = r.output.splitlines()
    assert lines[0].startswith("| n |")
    assert any("PG(1,2)" in line for line in lines)


def test_enumerate_jobs_from_environment(tmp_path):
    out = tmp_path / "c.json"
    r = run("enumerate", "--max-order", "24", "-o", str(out), env={"RBA6_JOBS": "2"})
    assert r.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == 1 and doc["count"] == 8


def test_enumerate_rejects_small_bound():
    assert run("enumerate", "--max-order", "5").exit_code == 2
