"""Exact coefficient fields: rationals, quadratic extensions Q(sqrt d), and a
double-precision complex realization.

Rationals are plain :class:`fractions.Fraction` values and float-complex
values are plain :class:`complex`; only the quadratic extension needs its own
element type.  A *field object* (``QQ``, ``QuadraticField(d)``, ``CC``) is
carried by every series so that arithmetic stays inside one representation.
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "FieldError", "DivisionByZero", "MixedDiscriminant", "MixedRepresentation",
    "ZeroDenominator", "NonSquarefreeDiscriminant", "FieldParseError",
    "QuadElem", "Rationals", "QuadraticField", "FloatComplexField",
    "QQ", "CC", "quad_field", "kind_of", "field_of", "common_field",
    "make_field", "field_arith", "conj", "is_nonpositive_int_shifted",
    "is_integer", "to_float_complex", "parse_field", "format_field",
]


class FieldError(ArithmeticError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class MixedDiscriminant(FieldError):
    pass


class MixedRepresentation(FieldError):
    pass


class ZeroDenominator(FieldError):
    pass


class NonSquarefreeDiscriminant(FieldError):
    pass


class FieldParseError(FieldError, ValueError):
    pass


def _squarefree(d: int) -> bool:
    if d in (0, 1):
        return False
    n = abs(d)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class QuadElem:
    """``r + s*sqrt(d)`` with rational ``r, s`` and square-free ``d``."""

    __slots__ = ("r", "s", "d")

    def __init__(self, r, s, d: int):
        self.r = Fraction(r)
        self.s = Fraction(s)
        self.d = d

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise MixedDiscriminant(f"sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(other, 0, self.d)
        if isinstance(other, (float, complex)):
            raise MixedRepresentation("cannot mix QuadExt with float values")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.r + o.r, self.s + o.s, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.r - o.r, self.s - o.s, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(o.r - self.r, o.s - self.s, self.d)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.r * other, self.s * other, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.r * o.r + self.d * self.s * o.s,
                        self.r * o.s + self.s * o.r, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.r * self.r - self.d * self.s * self.s

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return QuadElem(self.r / n, -self.s / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return QuadElem(self.r / other, self.s / other, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return QuadElem(-self.r, -self.s, self.d)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadElem(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.r, -self.s, self.d)

    def __bool__(self):
        return bool(self.r) or bool(self.s)

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.d == other.d and self.r == other.r and self.s == other.s
        if isinstance(other, (int, Fraction)):
            return self.s == 0 and self.r == other
        return NotImplemented

    def __hash__(self):
        if self.s == 0:
            return hash(self.r)
        return hash((self.r, self.s, self.d))

    def __complex__(self):
        return float(self.r) + float(self.s) * cmath.sqrt(self.d)

    def __repr__(self):
        return f"QuadElem({format_field(self)!r})"

    def __str__(self):
        return format_field(self)


class Rationals:
    kind = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, QuadElem):
            raise MixedRepresentation("QuadExt value in a rational series")
        raise MixedRepresentation(f"cannot use {type(x).__name__} as a rational")

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction))

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class QuadraticField:
    kind = "quad"

    def __init__(self, d: int):
        if not _squarefree(d):
            raise NonSquarefreeDiscriminant(f"d={d} is not square-free")
        self.d = d
        self.zero = QuadElem(0, 0, d)
        self.one = QuadElem(1, 0, d)

    @property
    def sqrt(self) -> QuadElem:
        return QuadElem(0, 1, self.d)

    def coerce(self, x):
        if isinstance(x, QuadElem):
            if x.d != self.d:
                raise MixedDiscriminant(f"sqrt({x.d}) value in Q(sqrt({self.d}))")
            return x
        if isinstance(x, (int, Fraction)):
            return QuadElem(x, 0, self.d)
        raise MixedRepresentation(f"cannot use {type(x).__name__} in Q(sqrt({self.d}))")

    def contains(self, x) -> bool:
        return isinstance(x, QuadElem) and x.d == self.d

    def __repr__(self):
        return f"Q(sqrt({self.d}))"

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.d == self.d

    def __hash__(self):
        return hash(("Q", self.d))


class FloatComplexField:
    kind = "float"
    zero = 0j
    one = 1 + 0j

    def coerce(self, x):
        if isinstance(x, (complex, float)):
            return complex(x)
        if isinstance(x, int) and not isinstance(x, bool):
            return complex(x)
        raise MixedRepresentation(
            f"implicit exact->float conversion of {type(x).__name__}; use to_float_complex")

    def contains(self, x) -> bool:
        return isinstance(x, complex)

    def __repr__(self):
        return "CC"

    def __eq__(self, other):
        return isinstance(other, FloatComplexField)

    def __hash__(self):
        return hash("CC")


QQ = Rationals()
CC = FloatComplexField()


@lru_cache(maxsize=None)
def quad_field(d: int) -> QuadraticField:
    return QuadraticField(d)


def kind_of(x) -> str:
    if isinstance(x, (int, Fraction)):
        return "rational"
    if isinstance(x, QuadElem):
        return "quad"
    if isinstance(x, (complex, float)):
        return "float"
    raise TypeError(f"not a field element: {x!r}")


def field_of(x):
    k = kind_of(x)
    if k == "rational":
        return QQ
    if k == "quad":
        return quad_field(x.d)
    return CC


def common_field(*fields):
    """Smallest of the given fields containing all the others (Q embeds in Q(sqrt d))."""
    out = QQ
    for f in fields:
        if f == out or f == QQ:
            continue
        if out == QQ:
            out = f
            continue
        if isinstance(f, QuadraticField) and isinstance(out, QuadraticField):
            raise MixedDiscriminant(f"{out} vs {f}")
        raise MixedRepresentation(f"{out} vs {f}")
    return out


def make_field(kind: str, *data):
    """Construct a canonical element.

    ``make_field("rational", p, q)``, ``make_field("quad", r, s, d)``,
    ``make_field("float", re, im)``.
    """
    if kind == "rational":
        p, q = (data + (1,))[:2]
        if q == 0:
            raise ZeroDenominator("zero denominator")
        return Fraction(p) / Fraction(q)
    if kind == "quad":
        r, s, d = data
        if not _squarefree(d):
            raise NonSquarefreeDiscriminant(f"d={d} is not square-free")
        return QuadElem(r, s, d)
    if kind == "float":
        re_, im = (tuple(data) + (0.0,))[:2]
        return complex(float(re_), float(im))
    raise ValueError(f"unknown field kind {kind!r}")


def conj(x):
    if isinstance(x, QuadElem):
        return x.conjugate()
    if isinstance(x, complex):
        return x.conjugate()
    return x


def field_arith(lhs, rhs, op: str):
    """Strict binary/unary field operation; both operands must share a representation."""
    if op in ("neg", "conj"):
        return -lhs if op == "neg" else conj(lhs)
    kl, kr = kind_of(lhs), kind_of(rhs)
    if kl != kr:
        raise MixedRepresentation(f"{kl} vs {kr}")
    if kl == "quad" and lhs.d != rhs.d:
        raise MixedDiscriminant(f"sqrt({lhs.d}) vs sqrt({rhs.d})")
    if kl == "rational":
        lhs, rhs = Fraction(lhs), Fraction(rhs)
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        if rhs == 0:
            raise DivisionByZero("division by zero")
        return lhs / rhs
    if op == "eq":
        return lhs == rhs
    raise ValueError(f"unknown op {op!r}")


def is_integer(x) -> bool:
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    if isinstance(x, QuadElem):
        return x.s == 0 and x.r.denominator == 1
    raise TypeError("integrality is only defined for exact values")


def is_nonpositive_int_shifted(c) -> bool:
    """True iff ``1 - c`` is a positive integer, i.e. ``(c)_n`` vanishes for some n >= 1."""
    if isinstance(c, QuadElem):
        if c.s != 0:
            return False
        c = c.r
    c = Fraction(c)
    return c.denominator == 1 and c <= 0


def to_float_complex(x) -> complex:
    if isinstance(x, complex):
        return x
    if isinstance(x, QuadElem):
        return complex(x)
    return complex(float(x))


# --- text form ---------------------------------------------------------------

_RAT = r"\d+(?:/\d+)?"
_TERM = re.compile(
    rf"^(?P<coef>{_RAT})?(?:\*?sqrt\((?P<d>[+-]?\d+)\))?$")


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_field(x) -> str:
    if isinstance(x, (int, Fraction)):
        return _fmt_rat(Fraction(x))
    if isinstance(x, QuadElem):
        surd = f"sqrt({x.d})"
        if x.s == 0:
            return f"{_fmt_rat(x.r)} + 0*{surd}"
        mag = abs(x.s)
        s_txt = surd if mag == 1 else f"{_fmt_rat(mag)}*{surd}"
        if x.r == 0:
            return s_txt if x.s > 0 else f"-{s_txt}"
        return f"{_fmt_rat(x.r)} {'+' if x.s > 0 else '-'} {s_txt}"
    if isinstance(x, complex):
        return f"{x.real!r}{'+' if math.copysign(1, x.imag) > 0 else '-'}{abs(x.imag)!r}j"
    raise TypeError(f"not a field element: {x!r}")


def _split_signed(text: str):
    out, cur, depth = [], "", 0
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur and cur[-1] not in "*/":
            out.append(cur)
            cur = ch
        else:
            cur += ch
    out.append(cur)
    return [t for t in out if t not in ("", "+")]


def parse_field(text: str):
    """Parse ``"p/q"``, ``"p/q + r/s*sqrt(d)"`` or ``"re+imj"``."""
    src = text.replace(" ", "")
    if not src:
        raise FieldParseError("empty field text")
    if src.endswith("j") or "." in src or "e" in src.lower().replace("sqrt", ""):
        try:
            return complex(src)
        except ValueError as exc:
            raise FieldParseError(f"bad float text {text!r}") from exc
    rational = Fraction(0)
    surd, d = Fraction(0), None
    for term in _split_signed(src):
        sign = -1 if term[0] == "-" else 1
        body = term.lstrip("+-")
        m = _TERM.match(body)
        if not m or (m.group("coef") is None and m.group("d") is None):
            raise FieldParseError(f"bad field text {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("d") is None:
            rational += sign * coef
        else:
            dd = int(m.group("d"))
            if d is not None and dd != d:
                raise MixedDiscriminant(f"two surds in {text!r}")
            d = dd
            surd += sign * coef
    if d is None:
        return rational
    return make_field("quad", rational, surd, d)
