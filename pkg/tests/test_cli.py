import json

import pytest

from hypseries.cli import main
from hypseries.series import MultiSeries


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_gauss(capsys):
    code, out, _ = run(capsys, "expand", "pfq", "--p", "2", "--q", "1", "--a", "1/2,1/3",
                       "--c", "5/4", "--order", "4")
    assert code == 0 and "2/15*x" in out


def test_expand_kernel(capsys):
    code, out, _ = run(capsys, "expand", "kernel", "coshsqrt", "--order", "2")
    assert code == 0 and out.strip() == "1 + 2*x + 2/3*x^2"


def test_expand_json_round_trip(capsys):
    code, out, _ = run(capsys, "expand", "appell_f1", "--a", "1/3", "--c", "5/4", "--b1", "2/5",
                       "--b2", "1/7", "--order", "5", "--format", "json")
    s = MultiSeries.from_json(json.loads(out))
    from fractions import Fraction as F
    from hypseries.specfun import family_series
    assert code == 0
    assert s == family_series("appell_f1", {"a": F(1, 3), "c": F(5, 4), "b1": F(2, 5),
                                            "b2": F(1, 7)}, order=5)


def test_expand_errors(capsys):
    assert run(capsys, "expand", "nosuch")[0] == 2
    assert run(capsys, "expand", "pfq", "--p", "2", "--a", "1/2", "--c", "1/3")[0] == 2
    assert run(capsys, "expand", "appell_f1", "--a", "1/x")[0] == 2


def test_check_pass(capsys):
    code, out, _ = run(capsys, "check", "Pfaff", "--seed", "1")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header.startswith("# hypseries ") and "seed=1" in header
    assert row.startswith("PASS")


def test_check_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("HYPSERIES_SEED", "4")
    _, out, _ = run(capsys, "check", "F1Pfaff", "--format", "json")
    header, row = (json.loads(line) for line in out.strip().splitlines())
    assert header["header"]["config"]["seed"] == 4
    assert json.loads(json.dumps(row))["outcome"] == "pass"


def test_check_explicit_params(capsys):
    code, out, _ = run(capsys, "check", "Pfaff", "--a", "1/2", "--b", "1/3", "--c", "-1")
    assert code == 2 and "InadmissibleLowerParameter" in out
    code, _, _ = run(capsys, "check", "F2to2F1", "--a", "3/2", "--b1", "1/4", "--b2", "2/3",
                     "-N", "10")
    assert code == 0


def test_regime_gate(capsys):
    code, _, err = run(capsys, "check", "Fnsubs", "--m", "5")
    assert code == 2 and "RegimeViolation" in err
    code, out, _ = run(capsys, "check", "Fnsubs", "--m", "5", "--evidence", "-N", "8")
    assert code == 0 and "[evidence]" in out


def test_unknown_identity(capsys):
    assert run(capsys, "check", "Nope")[0] == 2


def test_check_all(capsys):
    code, out, _ = run(capsys, "check-all", "--filter", "Qt*", "--draws", "1")
    lines = out.strip().splitlines()
    assert code == 0 and lines[-1].startswith("# total=")
    assert all(" Qt" in line for line in lines[1:-1])


def test_check_all_evidence(capsys):
    code, out, _ = run(capsys, "check-all", "--filter", "conj*", "--evidence", "--draws", "1",
                       "-N", "10")
    assert code == 0 and "[evidence]" in out and "FINDING" not in out


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "gauss-sum", "--a", "1/2", "--b", "1/3", "--c", "2")
    assert code == 0 and "residual=" in out
    residual = float(out.split("residual=")[1].split()[0])
    assert residual < 1e-8
    code, out, _ = run(capsys, "eval", "pfq", "--a", "1/2,1/3", "--c", "5/4", "--x", "0.25")
    assert code == 0 and "terms" in out
    code, _, err = run(capsys, "eval", "pfq", "--a", "1/2,1/3", "--c", "5/4", "--x", "2")
    assert code == 3 and "NoConvergenceDetected" in err
    code, out, _ = run(capsys, "eval", "radius", "--a", "1/2", "--c", "2")
    assert code == 0 and out.startswith("PASS")
    assert run(capsys, "eval", "Pfaff")[0] == 2


def test_list(capsys):
    code, out, _ = run(capsys, "list", "--filter", "F1Q*")
    assert code == 0 and "possibly-new" in out and len(out.strip().splitlines()) == 2


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
