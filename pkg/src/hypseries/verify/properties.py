"""Algebraic laws of the hypergeometrization operator on random inputs.

Each law is a function ``(f, g, p, N) -> (lhs, rhs)`` of two random series
in ``x`` and a dict of random parameters; the suite draws both and compares
exactly up to the reliable order.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

from ..hypop import HypParams, hyp_apply, hyp_difop_apply, pochhammer
from ..opexpr import random_series
from ..report import CheckReport, mismatch_record
from ..series import MultiSeries
from .harness import _generic_rational

__all__ = ["LAWS", "basic_property_suite", "pochpower_table"]


def H(f, a, c, var="x"):
    return hyp_apply(f, HypParams(a, c, var))


def _x(N):
    return MultiSeries.var("x", ("x",), N)


def _linearity(f, g, p, N):
    al, be = p["alpha"], p["beta"]
    return H(f * al + g * be, p["a"], p["c"]), H(f, p["a"], p["c"]) * al + H(g, p["a"], p["c"]) * be


def _commutativity(f, g, p, N):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    return H(H(f, b, d), a, c), H(H(f, a, c), b, d)


def _exchange(f, g, p, N):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    return H(H(f, b, d), a, c), H(H(f, b, c), a, d)


def _inverse(f, g, p, N):
    a, c = p["a"], p["c"]
    return H(H(f, a, c), c, a), f


def _shift(f, g, p, N):
    a, c, n = p["a"], p["c"], p["n"]
    ratio = pochhammer(a, n) / pochhammer(c, n)
    return H(f.mul_var("x", n), a, c), H(f, a + n, c + n).mul_var("x", n) * ratio


def _coshift(f, g, p, N):
    a, c, n = p["a"], p["c"], p["n"]
    ratio = pochhammer(a, n) / pochhammer(c, n)
    lhs, inner = H(f, a, c), f
    for _ in range(n):
        lhs, inner = lhs.derivative("x"), inner.derivative("x")
    return lhs, H(inner, a + n, c + n) * ratio


def _argscaling(f, g, p, N):
    a, c, al = p["a"], p["c"], p["alpha"]
    sx = _x(N) * al
    return H(f.compose({"x": sx}), a, c), H(f, a, c).compose({"x": sx})


def _nthpower(n):
    def law(f, g, p, N):
        a, c = p["a"], p["c"]
        xn = _x(N) ** n
        rhs = f
        for j in range(n):
            rhs = H(rhs, (a + j) / n, (c + j) / n)
        return H(f.compose({"x": xn}), a, c), rhs.compose({"x": xn})
    return law


def _contiguous(f, g, p, N):
    a, c = p["a"], p["c"]
    lhs = H(f, a, c) * c - H(f, a + 1, c + 1) * a + H(f, a, c + 1) * (a - c)
    return lhs, MultiSeries.zero(f.vars, N)


def _perpartes(f, g, p, N):
    a = p["a"]
    left = H(H(f, -a, 1 - a), a, a + 1)
    return left, H(f, a, a + 1) * Fraction(1, 2) + H(f, -a, 1 - a) * Fraction(1, 2)


def _hdifop(f, g, p, N):
    a, n = p["a"], p["n"]
    return hyp_difop_apply(f, a, n, "x"), H(f, a + n, a)


LAWS = {
    "linearity": _linearity,
    "commutativity": _commutativity,
    "exchange": _exchange,
    "inverse": _inverse,
    "shift": _shift,
    "coshift": _coshift,
    "argscaling": _argscaling,
    "secondpower": _nthpower(2),
    "thirdpower": _nthpower(3),
    "fourthpower": _nthpower(4),
    "contiguous": _contiguous,
    "perpartes": _perpartes,
    "Hdifop": _hdifop,
}


def _draw(rng):
    p = {k: _generic_rational(rng) for k in ("a", "b", "c", "d", "alpha", "beta")}
    p["n"] = rng.randint(1, 3)
    return p


def pochpower_table(nmax: int = 4, kmax: int = 6, a=None, rng=None):
    """``(a)_{nk}`` against ``n^{nk} prod_j ((a+j)/n)_k``; returns the first failing ``(n, k)``."""
    rng = rng or random.Random(0)
    a = _generic_rational(rng) if a is None else a
    for n in range(1, nmax + 1):
        for k in range(kmax + 1):
            rhs = Fraction(n) ** (n * k)
            for j in range(n):
                rhs *= pochhammer((a + j) / Fraction(n), k)
            if pochhammer(a, n * k) != rhs:
                return n, k
    return None


def basic_property_suite(draws: int = 200, N: int = 10, seed=0) -> list[CheckReport]:
    """One report per law; each law is checked on ``draws`` random (series, parameter) pairs."""
    rng = random.Random(f"laws:{seed}")
    samples = []
    for _ in range(draws):
        f = random_series("x", N, rng)
        g = random_series("x", N, rng)
        samples.append((f, g, _draw(rng)))
    reports = []
    for name, law in LAWS.items():
        t0 = time.perf_counter()
        rep = CheckReport(id=name, outcome="pass", kind="property", order=N,
                          params={"draws": str(draws), "seed": str(seed)})
        for i, (f, g, p) in enumerate(samples):
            lhs, rhs = law(f, g, p, N)
            found = lhs.first_mismatch(rhs)
            if found is not None:
                rep.outcome = "fail"
                rep.mismatch = mismatch_record(found, i)
                rep.params.update({k: str(v) for k, v in p.items()})
                break
        rep.wall_time = time.perf_counter() - t0
        reports.append(rep)
    t0 = time.perf_counter()
    bad = [pochpower_table(rng=rng) for _ in range(draws)]
    bad = [b for b in bad if b is not None]
    rep = CheckReport(id="Pochpower", outcome="fail" if bad else "pass", kind="property",
                      params={"draws": str(draws), "n<=": "4", "k<=": "6"},
                      note=f"first failure at (n, k) = {bad[0]}" if bad else "")
    rep.wall_time = time.perf_counter() - t0
    reports.append(rep)
    return reports
