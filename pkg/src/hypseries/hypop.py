"""Pochhammer symbols and the hypergeometrization operator.

``hyp_apply(f, HypParams(a, c, var))`` multiplies the coefficient of
``var**n`` by ``(a)_n / (c)_n`` and leaves every other exponent alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import (QQ, QuadElem, format_field, is_nonpositive_int_shifted, quad_field,
                    to_float_complex)
from .series import MultiSeries, SeriesError

__all__ = [
    "PochhammerPole", "InadmissibleLowerParameter", "HypParams", "pochhammer",
    "pochhammer_int", "pochhammer_ratios", "hyp_apply", "hyp_difop_apply",
    "check_lower",
]


class PochhammerPole(ArithmeticError):
    pass


class InadmissibleLowerParameter(ValueError):
    pass


def check_lower(c):
    if is_nonpositive_int_shifted(c):
        raise InadmissibleLowerParameter(f"lower parameter {format_field(c)} is a nonpositive integer")
    return c


@dataclass(frozen=True)
class HypParams:
    a: object
    c: object
    var: str = "x"

    def __post_init__(self):
        check_lower(self.c)

    def inverse(self) -> "HypParams":
        return HypParams(self.c, self.a, self.var)

    def __str__(self):
        return f"H[{format_field(self.a)},{format_field(self.c)};{self.var}]"


def pochhammer(a, n: int):
    """Rising factorial ``a (a+1) ... (a+n-1)``; ``(a)_0 = 1``."""
    if n < 0:
        raise ValueError("use pochhammer_int for negative indices")
    out = Fraction(1)
    for k in range(n):
        out = out * (a + k)
    return out


def pochhammer_int(a, m: int):
    """``(a)_m`` for any integer m, with ``(a)_{-k} = 1/(a-k)_k``."""
    if m >= 0:
        return pochhammer(a, m)
    den = pochhammer(a + m, -m)
    if den == 0:
        raise PochhammerPole(f"({format_field(a)})_{m} has a pole")
    return 1 / den if isinstance(den, (int, Fraction)) else den.inverse()


def pochhammer_ratios(a, c, n: int) -> list:
    """``[(a)_k/(c)_k for k in 0..n]`` built incrementally."""
    check_lower(c)
    r = Fraction(1)
    out = [r]
    for k in range(n):
        r = r * (a + k) / (c + k)
        out.append(r)
    return out


def hyp_apply(f: MultiSeries, p: HypParams) -> MultiSeries:
    pos = f.u.var_index(p.var)
    ratios = pochhammer_ratios(p.a, p.c, f.order)
    quad = next((r for r in ratios if isinstance(r, QuadElem)), None)
    if quad is not None and f.field == QQ:
        f = f.to_field(quad_field(quad.d))
    if f.field.kind == "float":
        ratios = [to_float_complex(r) for r in ratios]
    else:
        ratios = [f.field.coerce(r) for r in ratios]
    coeffs = [v * ratios[e[pos]] if v else v for e, v in zip(f.u.exps, f.coeffs)]
    return MultiSeries(f.u, coeffs, f.field, f.reliable)


def hyp_difop_apply(f: MultiSeries, a, n: int, var: str = "x") -> MultiSeries:
    """``H_a^{a+n} f`` computed as ``(a + x d/dx)_n f / (a)_n`` (Euler-operator route)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    norm = pochhammer(a, n)
    if norm == 0:
        raise PochhammerPole(f"({format_field(a)})_{n} vanishes")
    out = f
    for k in range(n):
        out = out.euler(var) + out.scale(a + k)
    if out.reliable < f.reliable:
        raise SeriesError("input not reliable to the required degree")
    return out / norm
