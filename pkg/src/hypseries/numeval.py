"""Floating-point evaluation: complex gamma, hypergeometric partial sums,
summation formulas at the boundary and the radius-growth proxy.
"""
from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .field import to_float_complex
from .report import CheckReport

__all__ = [
    "PoleProximity", "NoConvergenceDetected", "gamma_complex", "rgamma_complex",
    "pfq_partial_sum", "pfq_at_one", "f1_at_y_one", "alternating_pfq",
    "bessel_j", "NumericCheck", "run_numeric_check", "radius_growth_proxy",
    "gauss_sum_target", "kummer_minus_one_target",
]


class PoleProximity(ArithmeticError):
    pass


class NoConvergenceDetected(ArithmeticError):
    pass


_G = 7
_LANCZOS = (
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
)


def _near_pole(z: complex) -> bool:
    r = round(z.real)
    return r <= 0 and abs(z - r) < 1e-12


def _lanczos_log(z: complex) -> complex:
    # log Gamma(z) for Re z >= 1/2
    z -= 1
    x = _LANCZOS[0]
    for i in range(1, _G + 2):
        x += _LANCZOS[i] / (z + i)
    t = z + _G + 0.5
    return 0.5 * math.log(2 * math.pi) + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def gamma_complex(z) -> complex:
    """Gamma function by the Lanczos approximation (g=7) with reflection."""
    z = complex(z)
    if _near_pole(z):
        raise PoleProximity(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma_complex(1 - z))
    if z.imag == 0 and z.real == round(z.real) and z.real <= 171:
        return complex(math.factorial(int(z.real) - 1))
    return cmath.exp(_lanczos_log(z))


def rgamma_complex(z) -> complex:
    """``1/Gamma(z)``, zero at the poles."""
    z = complex(z)
    if _near_pole(z):
        return 0j
    return 1 / gamma_complex(z)


def _as_c(v) -> complex:
    return to_float_complex(v) if not isinstance(v, (int, float, complex)) else complex(v)


def pfq_partial_sum(a, c, x, max_terms: int = 20000, stop_rel: float = 1e-17,
                    return_terms: bool = False):
    """Partial sum of ``pFq(a; c; x)``.

    Stops once three consecutive terms are each below ``stop_rel`` relative
    to the running sum (or vanish exactly, for terminating series).
    """
    a = [_as_c(v) for v in a]
    c = [_as_c(v) for v in c]
    x = complex(x)
    term = 1 + 0j
    total = term
    small = 0
    grow = 0
    prev = abs(term)
    for n in range(max_terms):
        num = 1 + 0j
        for v in a:
            num *= v + n
        den = 1 + 0j
        for v in c:
            den *= v + n
        if den == 0:
            raise PoleProximity(f"lower parameter pole at term {n + 1}")
        term = term * num / den * x / (n + 1)
        total += term
        mag = abs(term)
        if mag == 0 or mag <= stop_rel * abs(total):
            small += 1
            if small >= 3:
                return (total, n + 2) if return_terms else total
        else:
            small = 0
        grow = grow + 1 if mag > prev else 0
        prev = mag
        if grow > 200 and mag > 1e200:
            break
    raise NoConvergenceDetected(f"no convergence after {max_terms} terms at x={x}")


def _extrapolate_sum(term_at, s: complex, n0: int = 64, levels: int = 7):
    """Limit of partial sums whose tail expands in ``n**-(s + k)``, ``k >= 0``.

    ``term_at`` yields successive terms.  Partial sums are taken at
    ``n0 * 2**i`` and the limit solved from a linear system in the known
    exponents.
    """
    checkpoints = [n0 * 2 ** i for i in range(levels)]
    sums = []
    total = 0j
    it = iter(term_at)
    n = 0
    for cp in checkpoints:
        while n < cp:
            total += next(it)
            n += 1
        sums.append(total)
    m = len(checkpoints)
    A = np.zeros((m, m), dtype=complex)
    for i, nn in enumerate(checkpoints):
        A[i, 0] = 1
        for k in range(1, m):
            A[i, k] = nn ** (-(s + k - 1))
    sol = np.linalg.solve(A, np.array(sums))
    return complex(sol[0])


def _pfq_terms(a, c, x):
    a = [_as_c(v) for v in a]
    c = [_as_c(v) for v in c]
    term = 1 + 0j
    n = 0
    while True:
        yield term
        num = 1 + 0j
        for v in a:
            num *= v + n
        den = 1 + 0j
        for v in c:
            den *= v + n
        term = term * num / den * x / (n + 1)
        n += 1


def pfq_at_one(a, b, c) -> complex:
    """``2F1(a, b; c; 1)`` from its own series (requires ``Re(c-a-b) > 0``)."""
    s = _as_c(c) - _as_c(a) - _as_c(b)
    if s.real <= 0:
        raise NoConvergenceDetected("2F1 at 1 needs Re(c-a-b) > 0")
    return _extrapolate_sum(_pfq_terms([a, b], [c], 1.0), s)


def f1_at_y_one(a, c, b1, b2, x, max_j: int = 400, stop_rel: float = 1e-17) -> complex:
    """Appell ``F1(a; c; b1, b2; x, 1)`` as a double sum (inner sums over k at y=1)."""
    a, c, b1, b2 = (_as_c(v) for v in (a, c, b1, b2))
    x = complex(x)
    total = 0j
    outer = 1 + 0j
    small = 0
    for j in range(max_j):
        inner = _extrapolate_sum(_pfq_terms([a + j, b2], [c + j], 1.0), c - a - b2)
        term = outer * inner
        total += term
        if abs(term) <= stop_rel * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
        outer = outer * (a + j) * (b1 + j) / ((c + j) * (j + 1)) * x
    raise NoConvergenceDetected("outer sum did not settle")


def alternating_pfq(a, c, x=-1.0, terms: int = 400, passes: int = 40) -> complex:
    """Sum of a slowly alternating series by repeated averaging of partial sums."""
    sums = []
    total = 0j
    it = _pfq_terms(a, c, x)
    for _ in range(terms):
        total += next(it)
        sums.append(total)
    s = np.array(sums[-(passes + 1):])
    for _ in range(passes):
        s = (s[1:] + s[:-1]) / 2
    return complex(s[-1])


def bessel_j(nu, z, max_terms: int = 500) -> complex:
    """``J_nu(z)`` from its ascending series."""
    nu, z = complex(nu), complex(z)
    half = z / 2
    term = half ** nu * rgamma_complex(nu + 1)
    total = term
    for k in range(max_terms):
        term = term * -(half * half) / ((k + 1) * (nu + k + 1))
        total += term
        if abs(term) < 1e-18 * abs(total):
            return total
    raise NoConvergenceDetected("Bessel series did not settle")


def gauss_sum_target(a, b, c) -> complex:
    a, b, c = (_as_c(v) for v in (a, b, c))
    return (gamma_complex(c) * gamma_complex(c - a - b)
            * rgamma_complex(c - a) * rgamma_complex(c - b))


def kummer_minus_one_target(a, b) -> complex:
    a, b = (_as_c(v) for v in (a, b))
    return (2 ** (-a) * gamma_complex(1 + a - b) * math.sqrt(math.pi)
            * rgamma_complex(1 - b + a / 2) * rgamma_complex((a + 1) / 2))


@dataclass
class NumericCheck:
    """A numeric identity ``lhs() == rhs()`` checked to a relative tolerance."""
    id: str
    lhs: Callable[[], complex]
    rhs: Callable[[], complex]
    params: dict = field(default_factory=dict)
    tolerance: float = 1e-8
    stop_rule: str = "three consecutive terms below 1e-17 relative"
    perturb: float = 0.0
    label: str = "theorem"


def run_numeric_check(chk: NumericCheck) -> CheckReport:
    t0 = time.perf_counter()
    rep = CheckReport(id=chk.id, outcome="pass", kind="numeric", params=dict(chk.params),
                      order=None, label=chk.label, tolerance=chk.tolerance,
                      note=f"stop rule: {chk.stop_rule}")
    try:
        lhs = chk.lhs() + chk.perturb
        rhs = chk.rhs()
        resid = abs(lhs - rhs) / max(abs(rhs), 1e-300)
        rep.residual = resid
        rep.values = {"lhs": repr(lhs), "rhs": repr(rhs)}
        if not resid <= chk.tolerance:
            rep.outcome = "fail"
    except (NoConvergenceDetected, PoleProximity) as exc:
        rep.outcome = "error"
        rep.error = f"{type(exc).__name__}: {exc}"
    rep.wall_time = time.perf_counter() - t0
    return rep


def radius_growth_proxy(a, c, n_max: int = 500, tol: float = 0.01) -> CheckReport:
    """``n**(c-a) (a)_n/(c)_n -> Gamma(c)/Gamma(a)`` and polynomial growth of ``(a)_n/(c)_n``."""
    t0 = time.perf_counter()
    a, c = _as_c(a), _as_c(c)
    limit = gamma_complex(c) * rgamma_complex(a)
    ratio = 1 + 0j
    ratios = [ratio]
    for k in range(n_max):
        ratio = ratio * (a + k) / (c + k)
        ratios.append(ratio)
    errs = {n: abs(n ** (c - a) * ratios[n] - limit) / abs(limit)
            for n in range(max(1, n_max // 2), n_max + 1)}
    half, full = errs[max(1, n_max // 2)], errs[n_max]
    p = abs((c - a).real) + 1
    head = range(1, n_max // 2 + 1)
    C = max(abs(ratios[n]) / n ** p for n in head)
    bounded = all(abs(ratios[n]) <= C * n ** p * (1 + 1e-9) for n in range(1, n_max + 1))
    ok = full <= tol and full <= half and bounded
    rep = CheckReport(id="Radius", outcome="pass" if ok else "fail", kind="numeric",
                      params={"a": repr(a), "c": repr(c), "n_max": n_max}, order=None,
                      residual=full, tolerance=tol,
                      note=f"relative gap at n/2: {half:.3e}; polynomial bound C={C:.3e}, "
                           f"exponent {p:.3f}: {'holds' if bounded else 'violated'}")
    rep.wall_time = time.perf_counter() - t0
    return rep
