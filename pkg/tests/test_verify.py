from fractions import Fraction as F

import pytest

from hypseries.opexpr import RegimeViolation
from hypseries.verify import (UnknownIdentity, check_all, check_identity,
                              choose_square_discriminant_t, get_case, negative_control,
                              registry_hash, registry_list)

CASES = registry_list()
NON_EVIDENCE = [c.id for c in CASES if c.status != "evidence"]


def test_registry_contents():
    ids = [c.id for c in CASES]
    assert len(ids) >= 40 and len(set(ids)) == len(ids)
    assert "Pfaff" in ids
    assert get_case("F1Q").possibly_new
    assert get_case("Fnsubs[m=3,generic]").status == "evidence"
    for needed in ("2F1", "1F1", "Bessel", "G2repr", "G1toF4", "H4repr", "Kummer",
                   "F1gentonFn1[n=4]", "Eulergen[n=-3]", "Qt7", "conj1eq[int]",
                   "2F1cubicerd", "2F1(1)", "F1(x,1)", "2F1(3/4)", "2F1(-1)"):
        assert needed in ids, needed
    assert registry_list() == CASES
    assert len(registry_hash()) == 16


def test_templates_are_listed_separately():
    templates = [c for c in registry_list(include_templates=True) if c.template]
    assert [c.id for c in templates] == ["Fnsubs"]
    with pytest.raises(RegimeViolation):
        check_identity("Fnsubs", {"m": 5})


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        check_identity("NoSuchThing")


def test_spec_examples():
    rep = check_identity("Pfaff", {"a": F(1, 2), "b": F(1, 3), "c": F(5, 4)}, N=12)
    assert rep.passed and rep.label == "theorem"
    rep = check_identity("Pfaff", {"a": F(1, 2), "b": F(1, 3), "c": F(-1)})
    assert rep.outcome == "error" and "InadmissibleLowerParameter" in rep.error
    rep = check_identity("F2to2F1", {"a": F(3, 2), "b1": F(1, 4), "b2": F(2, 3)}, N=10)
    assert rep.passed and rep.label == "corrected-typo"
    lit = check_identity("F2to2F1[literal]", {"a": F(3, 2), "b1": F(1, 4), "b2": F(2, 3)}, N=10)
    assert lit.outcome == "fail" and lit.as_expected


def test_determinism():
    a = check_identity("F1Pfaff", seed=5, draw=1)
    b = check_identity("F1Pfaff", seed=5, draw=1)
    assert a.key() == b.key()
    assert check_identity("F1Pfaff", seed=6, draw=1).params != a.params


def test_evidence_gate():
    with pytest.raises(RegimeViolation):
        check_identity("Fnsubs[m=3,generic]")
    rep = check_identity("Fnsubs[m=3,generic]", evidence=True)
    assert rep.passed and rep.label == "evidence"


def test_square_discriminant_parameter():
    t, tp, tm = choose_square_discriminant_t(0)
    assert tp + tm == 2 - 4 * t and tp * tm == 1 and tp != tm
    k = F(1, 3)
    t = 1 / (1 - k * k)
    assert t == F(9, 8) and t * (t - 1) == F(3, 8) ** 2
    assert {1 - 2 * t + 2 * k * t, 1 - 2 * t - 2 * k * t} == {F(-1, 2), F(-2)}


def test_draws_are_admissible():
    for d in range(3, 15):
        rep = check_identity("2F1(1)", seed=d, draw=d)
        p = {k: F(v) for k, v in rep.params.items()}
        assert rep.passed and p["c"] - p["a"] - p["b"] >= F(1, 10)


def test_filter():
    reports, summary = check_all(12, seed=7, filter="Qt*", draws=1)
    assert reports and all(r.id.startswith("Qt") for r in reports)
    assert summary["ok"] and summary["fail"] == 0


def test_evidence_mode_adds_rows():
    reports, summary = check_all(10, seed=7, filter="conj*", evidence_mode=True, draws=1)
    labels = {r.id: r.label for r in reports}
    assert labels["conj1eq[generic]"] == "evidence"
    assert summary["evidence_pass"] == 2 and summary["evidence_fail"] == 0
    reports, _ = check_all(10, seed=7, filter="conj*", draws=1)
    assert "conj1eq[generic]" not in {r.id for r in reports}


@pytest.mark.parametrize("id", [c.id for c in CASES])
def test_case_behaves_as_registered(id):
    case = get_case(id)
    rep = check_identity(id, seed=0, evidence=case.status == "evidence")
    assert rep.outcome == case.expected, rep.to_json()


@pytest.mark.parametrize("id", NON_EVIDENCE)
def test_negative_control(id):
    if get_case(id).status == "literal":
        pytest.skip("the printed form already fails")
    rep = negative_control(id, seed=0)
    assert rep.outcome == "fail", rep.to_json()
