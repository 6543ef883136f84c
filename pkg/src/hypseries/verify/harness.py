"""Parameter drawing, identity checking and suite runs over the registry."""
from __future__ import annotations

import fnmatch
import random
import time
from fractions import Fraction

from ..field import FieldError, format_field, is_integer
from ..hypop import InadmissibleLowerParameter, PochhammerPole
from ..numeval import NoConvergenceDetected, PoleProximity, run_numeric_check
from ..opexpr import (BadInnerSeries, NonInvertibleAtom, RegimeViolation, ZeroM,
                      check_operator_identity, monomial_testfns, random_series)
from ..report import CheckReport, mismatch_record
from ..series import SeriesError
from ..specfun import InadmissibleParameter

__all__ = ["UnknownIdentity", "AdmissibleDrawExhausted", "check_identity", "check_all",
           "negative_control", "choose_square_discriminant_t", "summarize", "draw_params"]

MAX_REDRAWS = 100

# failures of a particular parameter point, as opposed to bugs
BUILD_ERRORS = (InadmissibleLowerParameter, InadmissibleParameter, PochhammerPole,
                NonInvertibleAtom, BadInnerSeries, ZeroM, SeriesError, FieldError,
                ZeroDivisionError, PoleProximity, NoConvergenceDetected)


class UnknownIdentity(KeyError):
    pass


class AdmissibleDrawExhausted(RuntimeError):
    pass


def _generic_rational(rng: random.Random) -> Fraction:
    while True:
        q = Fraction(rng.randint(-20, 20), rng.randint(2, 20))
        if q.denominator != 1:
            return q


def choose_square_discriminant_t(seed=0):
    """Rational ``t`` with ``t(t-1)`` a square, and the slopes ``tau+``, ``tau-``.

    With ``t = 1/(1-k^2)`` one has ``t(t-1) = (kt)^2``; the slopes solve
    ``tau+ + tau- = 2-4t`` and ``tau+ tau- = 1``, namely ``1 - 2t +- 2kt``.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(f"tau:{seed}")
    while True:
        k = Fraction(rng.randint(1, 9), rng.randint(2, 12))
        if k in (0, 1):
            continue
        t = 1 / (1 - k * k)
        s = k * t
        assert t * (t - 1) == s * s
        tp, tm = 1 - 2 * t + 2 * s, 1 - 2 * t - 2 * s
        if tp != tm:
            return t, tp, tm


def draw_params(case, rng: random.Random, draw: int = 0, given: dict | None = None) -> dict:
    """One parameter point for ``case``; explicit values in ``given`` are kept."""
    given = dict(given or {})
    if draw < len(case.fixed) and not given:
        return dict(case.fixed[draw])
    p = {}
    for name in case.params:
        p[name] = given[name] if name in given else case.draw.get(name, _generic_rational)(rng)
    if case.derive is not None:
        for k, v in case.derive(p, rng).items():
            p.setdefault(k, given.get(k, v))
    for k, v in given.items():
        p[k] = v
    return p


def _fmt_params(p: dict) -> dict:
    return {k: format_field(v) if isinstance(v, Fraction) else str(v) for k, v in p.items()}


def _evaluate(case, p: dict, q: dict, N: int, seed, draw: int, tolerance=None) -> CheckReport:
    if case.kind == "numeric":
        chk = case.build(p, q, N)
        chk.params = _fmt_params(p)
        chk.label = case.status
        if tolerance is not None:
            chk.tolerance = tolerance
        rep = run_numeric_check(chk)
        rep.id = case.id
        return rep
    if case.kind == "operator":
        lhs, rhs, sub = case.build(p, q, N)
        var = rhs.vars[0]
        rng = random.Random(f"testfn:{seed}:{case.id}:{draw}")
        tests = monomial_testfns(var, N) + [random_series(var, N, rng)]
        return check_operator_identity(lhs, rhs, sub, tests, id=case.id, params=_fmt_params(p),
                                       label=case.status)
    t0 = time.perf_counter()
    lhs, rhs = case.build(p, q, N)
    found = lhs.first_mismatch(rhs)
    rep = CheckReport(id=case.id, outcome="pass" if found is None else "fail", kind="series",
                      params=_fmt_params(p), order=min(lhs.reliable, rhs.reliable),
                      label=case.status, mismatch=mismatch_record(found))
    rep.wall_time = time.perf_counter() - t0
    return rep


def _finish(rep: CheckReport, case, N: int) -> CheckReport:
    rep.expected = case.expected
    if rep.order is None and case.kind != "numeric":
        rep.order = N
    notes = [n for n in (case.note, rep.note) if n]
    if case.possibly_new:
        notes.insert(0, "possibly new")
    rep.note = "; ".join(notes)
    return rep


def _error_report(case, p, N, exc) -> CheckReport:
    rep = CheckReport(id=case.id, outcome="error", kind=case.kind, params=_fmt_params(p),
                      order=None if case.kind == "numeric" else N, label=case.status,
                      error=f"{type(exc).__name__}: {exc}")
    return _finish(rep, case, N)


def _conjectural(p: dict) -> bool:
    m = p.get("m")
    return m is not None and abs(m) > 2 and not is_integer(p["a"] - p["c"])


def _regime_gate(case, p: dict, evidence: bool):
    if case.status == "evidence" and not evidence:
        raise RegimeViolation(f"{case.id} is a conjecture-evidence case; enable evidence mode")
    if _conjectural(p) and not evidence:
        raise RegimeViolation(f"m={p['m']} needs a-c integral outside evidence mode")


def check_identity(id: str, params: dict | None = None, seed=0, N: int = 12, draw: int = 0,
                   evidence: bool = False, bump: str | None = None,
                   tolerance: float | None = None) -> CheckReport:
    """Check one registered identity.

    Missing parameters are drawn from ``(seed, id, draw)``; a drawn point
    whose construction fails is redrawn (at most 100 times).  Explicit
    parameters that do not build give an ``error`` report instead.  With
    ``bump`` set, that parameter is raised by one on the right side only.
    ``tolerance`` overrides the relative tolerance of numeric cases.
    """
    from .registry import get_case
    case = get_case(id)
    params = dict(params or {})
    if "m" in params:
        params["m"] = int(params["m"])
    explicit = bool(params) and all(n in params for n in case.params)
    rng = random.Random(f"{seed}:{id}:{draw}")
    last = None
    for _ in range(1 if explicit else MAX_REDRAWS):
        p = draw_params(case, rng, draw, params)
        if case.template and "m" not in p:
            raise RegimeViolation(f"{id} needs the parameter m")
        _regime_gate(case, p, evidence)
        if case.admissible is not None and not case.admissible(p):
            last = ValueError("parameters outside the admissible region")
            if explicit:
                return _error_report(case, p, N, last)
            continue
        q = dict(p)
        if bump is not None:
            q[bump] = q[bump] + 1
        try:
            rep = _evaluate(case, p, q, N, seed, draw, tolerance)
        except BUILD_ERRORS as exc:
            last = exc
            if explicit:
                return _error_report(case, p, N, exc)
            continue
        if rep.outcome == "error" and not explicit:
            last = RuntimeError(rep.error)
            continue
        if _conjectural(p):
            rep.label = "evidence"
        return _finish(rep, case, N)
    if explicit:
        return _error_report(case, p, N, last)
    raise AdmissibleDrawExhausted(f"{id}: no admissible draw in {MAX_REDRAWS} tries ({last})")


def negative_control(id: str, seed=0, N: int = 12, draw: int = 0) -> CheckReport:
    """The case with its bump parameter raised by one on the right side; should fail."""
    from .registry import get_case
    case = get_case(id)
    rep = check_identity(id, seed=seed, N=N, draw=draw, evidence=True, bump=case.bump_param)
    rep.expected = "fail"
    rep.label = "negative-control"
    return rep


def _selected(filter, evidence_mode):
    from .registry import registry_list
    for case in registry_list():
        if filter and not fnmatch.fnmatchcase(case.id, filter):
            continue
        if case.status == "evidence" and not evidence_mode:
            continue
        yield case


def check_all(N: int = 12, seed=0, filter: str | None = None, evidence_mode: bool = False,
              draws: int = 3):
    """Run every selected case ``draws`` times; returns ``(reports, summary)``."""
    reports = []
    for case in _selected(filter, evidence_mode):
        for d in range(draws):
            try:
                rep = check_identity(case.id, seed=seed, N=N, draw=d, evidence=evidence_mode)
            except AdmissibleDrawExhausted as exc:
                rep = _error_report(case, {}, N, exc)
            reports.append(rep)
    return reports, summarize(reports)


def summarize(reports) -> dict:
    s = {"total": len(reports), "pass": 0, "fail": 0, "error": 0, "evidence_pass": 0,
         "evidence_fail": 0, "expected_fail": 0, "unexpected": []}
    for r in reports:
        s[r.outcome] += 1
        if r.label == "evidence":
            s["evidence_pass" if r.passed else "evidence_fail"] += 1
            continue
        if r.expected == "fail" and r.outcome == "fail":
            s["expected_fail"] += 1
        elif not r.as_expected:
            s["unexpected"].append(r.id)
    s["unexpected"] = sorted(set(s["unexpected"]))
    s["ok"] = not s["unexpected"]
    return s
