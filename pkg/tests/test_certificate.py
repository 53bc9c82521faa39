import json
from dataclasses import replace

import pytest

from quartic_cert import cli
from quartic_cert.certificate import (
    CORE_CHECKS,
    FAIL,
    FAILED,
    NOT_RATIONAL,
    OUTSIDE,
    PASS,
    Certificate,
    Check,
    DependencyError,
    assemble_verdict,
    hurwitz_exclusion,
    product_exclusion,
    run_certificate,
)
from quartic_cert.exactfield import Rat

STRENGTH = {FAILED: 0, OUTSIDE: 1, NOT_RATIONAL: 2}


@pytest.fixture(scope="module")
def cert_t1():
    return run_certificate(Rat(1))


def test_hurwitz_examples():
    c = hurwitz_exclusion(5, 720, 2)
    assert c.status == PASS
    assert c.witness["aut_lower_bound"] == "360" and c.witness["hurwitz_bound"] == 336
    assert hurwitz_exclusion(5, 672, 2).status == FAIL
    assert hurwitz_exclusion(2, 720, 2).status == PASS  # 360 > 84
    assert hurwitz_exclusion(2, 120, 2).status == FAIL
    with pytest.raises(ValueError):
        hurwitz_exclusion(1, 720, 2)


def test_hurwitz_genus_two_bound():
    c = hurwitz_exclusion(2, 720, 2)
    assert c.witness["hurwitz_bound"] == 84


def test_product_exclusion_dim5():
    c = product_exclusion(5)
    assert c.status == PASS
    reasons = {e["p"]: e for e in c.witness["per_p"]}
    assert set(reasons) == {2, 3, 4, 5}
    assert all(reasons[p]["refuted"] for p in (2, 3, 4, 5))
    assert "trace" in reasons[5] and "trace" not in reasons[2]
    assert c.witness["normal_subgroup_orders"] == [1, 360, 720]


def test_product_exclusion_dim6_reports_survivors():
    c = product_exclusion(6)
    assert c.status == FAIL
    assert 2 in c.witness["surviving_p"] and 3 not in c.witness["surviving_p"]
    assert 6 in c.witness["surviving_p"]


def test_product_exclusion_dim4_is_honest_about_p2():
    c = product_exclusion(4)
    assert c.status == FAIL
    assert c.witness["surviving_p"] == [2]


def test_product_exclusion_dependency():
    with pytest.raises(DependencyError):
        product_exclusion(5, irreducible=False)


def test_check_invariants():
    with pytest.raises(ValueError):
        Check("x", "s", "r", PASS, {})
    with pytest.raises(ValueError):
        Check("x", "s", "r", "maybe", {"a": 1})
    with pytest.raises(ValueError):
        Certificate(Rat(1), [Check("a", "", "", FAIL), Check("a", "", "", FAIL)], FAILED)


def test_generic_certificate(cert_t1):
    assert cert_t1.verdict == NOT_RATIONAL
    assert [c.id for c in cert_t1.checks] == list(CORE_CHECKS)
    assert all(c.status == PASS for c in cert_t1.checks)
    assert cert_t1.check("product_exclusion").witness["dim_JX"] == 5
    assert cert_t1.check("decomposition").witness["dim_H2"] == 5
    assert cert_t1.check("exactly_30_nodes").witness["singular_scheme_degree"] == 30
    assert cert_t1.assumed


def test_json_schema_and_roundtrip(cert_t1):
    d = json.loads(cert_t1.to_json())
    assert list(d)[:3] == ["t", "verdict", "checks"]
    assert d["t"] == "1"
    assert list(d["checks"][0]) == ["id", "statement", "paper_ref", "status", "witness"]
    assert Certificate.from_json(cert_t1.to_json()) == cert_t1


def test_reports_are_deterministic(cert_t1):
    again = run_certificate(Rat(1))
    assert again.to_json() == cert_t1.to_json()
    assert again.render_text() == cert_t1.render_text()


def test_verdict_is_monotone(cert_t1):
    base = STRENGTH[cert_t1.verdict]
    for i, c in enumerate(cert_t1.checks):
        flipped = list(cert_t1.checks)
        flipped[i] = replace(c, status=FAIL)
        assert STRENGTH[assemble_verdict(cert_t1.t, flipped)] <= base
        assert assemble_verdict(cert_t1.t, flipped) == FAILED


def test_missing_core_check_is_not_certified(cert_t1):
    assert assemble_verdict(Rat(1), cert_t1.checks[:-1]) == FAILED


@pytest.mark.parametrize("t", [Rat(0), Rat(4)])
def test_gated_parameters(t):
    cert = run_certificate(t)
    assert cert.verdict == OUTSIDE
    assert [c.id for c in cert.checks] == ["hypothesis_gate"]
    assert cert.check("hypothesis_gate").witness["inside_hypotheses"] is False


def test_burkhardt_certificate():
    cert = run_certificate(Rat(2))
    assert cert.verdict == OUTSIDE
    assert all(c.status == PASS for c in cert.checks)
    assert cert.check("extra_orbit").witness["orbit_size"] == 15
    assert cert.check("cubics_through_both_orbits").witness["dim"] == 5
    assert cert.check("singular_degree").witness["singular_scheme_degree"] == 45
    assert any("JX = 0" in n and "classically" in n for n in cert.notes)


def test_ten_sevenths_certificate():
    cert = run_certificate(Rat(10, 7))
    assert cert.verdict == OUTSIDE
    w = cert.check("extra_orbit").witness
    assert (w["sum_x2"], w["sum_x4"], w["parameter_from_seed"]) == (30, 630, "10/7")
    assert any("10/17" in n for n in cert.notes)


# --- CLI ----------------------------------------------------------------------


def test_cli_verify_json(capsys):
    assert cli.main(["verify", "--t", "1", "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"] == NOT_RATIONAL


def test_cli_igusa(capsys):
    assert cli.main(["verify", "--t", "4"]) == 0
    assert OUTSIDE in capsys.readouterr().out


def test_cli_zero_over_one(capsys):
    assert cli.main(["verify", "--t", "0/1"]) == 0


@pytest.mark.parametrize("argv", [["verify", "--t", "abc"], ["verify"], [], ["verify", "--format", "xml", "--t", "1"]])
def test_cli_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_cli_report_text_and_env_sample(monkeypatch, capsys):
    monkeypatch.setenv("QC_DEFAULT_SAMPLE", "0, 4")
    assert cli.main(["report", "--sample", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.count("verdict: OUTSIDE HYPOTHESES") == 2
    assert "assumed" in out


def test_cli_bad_env_sample(monkeypatch):
    monkeypatch.setenv("QC_DEFAULT_SAMPLE", "1,x")
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--sample"])
    assert exc.value.code == 2


def test_cli_exit_code_on_failure(monkeypatch, capsys):
    def broken(t):
        return Certificate(t, [Check("hypothesis_gate", "", "", FAIL, {"error": "x"})], FAILED)

    monkeypatch.setattr(cli, "run_certificate", broken)
    assert cli.main(["verify", "--t", "1"]) == 1


def test_cli_timing_goes_to_stderr(capsys):
    assert cli.main(["verify", "--t", "4", "--timing", "--format", "json"]) == 0
    captured = capsys.readouterr()
    json.loads(captured.out)
    assert "# timing t=4" in captured.err
