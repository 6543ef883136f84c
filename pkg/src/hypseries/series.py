"""Dense multivariate truncated power series over an exact (or float) field.

A series lives in a *universe*: an ordered tuple of variable names and a
total-degree cutoff ``N``.  Coefficients are stored densely, one slot per
exponent vector of total degree <= N, in graded order.  Every series also
carries a *reliable order* <= N: operations that lose information at the
truncation boundary (derivatives, division by a variable) lower it, and
comparisons only look at coefficients up to the smaller reliable order.
"""
from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .field import (CC, QQ, DivisionByZero, FieldError, QuadElem, QuadraticField,
                    common_field, field_of, format_field, parse_field,
                    to_float_complex)

__all__ = [
    "SeriesError", "ExponentOverflow", "MixedField", "VariableMismatch",
    "ZeroConstantTerm", "NonUnitConstantTerm", "NonzeroConstantTerm",
    "UnknownVariable", "Universe", "universe", "MultiSeries", "series_make",
    "series_add", "series_mul", "series_scale", "series_inv", "series_pow_field",
    "series_compose", "series_derivative", "series_coeff",
]

MAX_VARS = 4


class SeriesError(ArithmeticError):
    pass


class ExponentOverflow(SeriesError):
    pass


class MixedField(SeriesError):
    pass


class VariableMismatch(SeriesError):
    pass


class ZeroConstantTerm(SeriesError):
    pass


class NonUnitConstantTerm(SeriesError):
    pass


class NonzeroConstantTerm(SeriesError):
    pass


class UnknownVariable(SeriesError, KeyError):
    pass


def _graded_exponents(nv: int, order: int):
    out = []
    for d in range(order + 1):
        for combo in itertools.combinations_with_replacement(range(nv), d):
            e = [0] * nv
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    return out


class Universe:
    """Variable tuple + cutoff, with the index tables used by the kernels."""

    def __init__(self, vars: tuple, order: int):
        if len(vars) > MAX_VARS:
            raise VariableMismatch(f"at most {MAX_VARS} variables, got {vars}")
        if len(set(vars)) != len(vars):
            raise VariableMismatch(f"duplicate variable in {vars}")
        self.vars = vars
        self.order = order
        nv = len(vars)
        self.exps = _graded_exponents(nv, order)
        self.index = {e: i for i, e in enumerate(self.exps)}
        self.size = len(self.exps)
        base = order + 1
        self.codes = [sum(c * base ** k for k, c in enumerate(e)) for e in self.exps]
        self.lookup = [-1] * (base ** nv)
        for i, c in enumerate(self.codes):
            self.lookup[c] = i
        self.degs = [sum(e) for e in self.exps]
        self.deg_end = [0] * (order + 1)
        for d in self.degs:
            self.deg_end[d] += 1
        self.deg_end = list(itertools.accumulate(self.deg_end))
        self.codes_arr = np.asarray(self.codes, dtype=np.int64)
        self.lookup_arr = np.asarray(self.lookup, dtype=np.int64)
        self.degs_arr = np.asarray(self.degs, dtype=np.int64)
        self.deg_end_arr = np.asarray(self.deg_end, dtype=np.int64)

    def var_index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise UnknownVariable(f"{var!r} not in {self.vars}") from None

    def __repr__(self):
        return f"Universe({self.vars}, N={self.order})"


@lru_cache(maxsize=256)
def universe(vars: tuple, order: int) -> Universe:
    return Universe(tuple(vars), order)


# --- coefficient-level product dispatch --------------------------------------

_ZERO = Fraction(0)


def _to_ints(coeffs):
    den = math.lcm(*(c.denominator for c in coeffs if c))
    return [c.numerator * (den // c.denominator) if c else 0 for c in coeffs], den


def _mul_rational(a, b, u):
    if not any(a) or not any(b):
        return [_ZERO] * u.size
    ia, da = _to_ints(a)
    ib, db = _to_ints(b)
    den = da * db
    return [Fraction(v, den) if v else _ZERO for v in kernels.conv_int(ia, ib, u)]


def _mul_quad(a, b, u, d):
    ar, as_ = [c.r for c in a], [c.s for c in a]
    br, bs = [c.r for c in b], [c.s for c in b]
    rr = _mul_rational(ar, br, u)
    ss = _mul_rational(as_, bs, u)
    cross = _mul_rational([x + y for x, y in zip(ar, as_)],
                          [x + y for x, y in zip(br, bs)], u)
    return [QuadElem(p + d * q, m - p - q, d) for p, q, m in zip(rr, ss, cross)]


def _mul_coeffs(a, b, u, field):
    if field == QQ:
        return _mul_rational(a, b, u)
    if isinstance(field, QuadraticField):
        return _mul_quad(a, b, u, field.d)
    return kernels.conv_complex(a, b, u)


class MultiSeries:
    """Truncated power series; immutable by convention."""

    __slots__ = ("u", "field", "coeffs", "reliable")

    def __init__(self, u: Universe, coeffs: list, field=QQ, reliable: int | None = None):
        self.u = u
        self.coeffs = coeffs
        self.field = field
        self.reliable = u.order if reliable is None else min(reliable, u.order)

    # -- construction --------------------------------------------------------

    @classmethod
    def zero(cls, vars, order, field=QQ):
        u = universe(tuple(vars), order)
        return cls(u, [field.zero] * u.size, field)

    @classmethod
    def constant(cls, vars, order, value, field=None):
        field = field or field_of(value)
        s = cls.zero(vars, order, field)
        s.coeffs[0] = field.coerce(value)
        return s

    @classmethod
    def one(cls, vars, order, field=QQ):
        return cls.constant(vars, order, field.one, field)

    @classmethod
    def var(cls, name, vars, order, field=QQ):
        s = cls.zero(vars, order, field)
        if order >= 1:
            e = [0] * len(s.u.vars)
            e[s.u.var_index(name)] = 1
            s.coeffs[s.u.index[tuple(e)]] = field.one
        return s

    @classmethod
    def from_terms(cls, vars, order, terms, field=None):
        vars = tuple(vars)
        u = universe(vars, order)
        if field is None:
            field = common_field(*(field_of(v) for v in terms.values()))
        coeffs = [field.zero] * u.size
        for e, v in terms.items():
            e = (e,) if isinstance(e, int) else tuple(e)
            if len(e) != len(vars) or any(k < 0 for k in e):
                raise ExponentOverflow(f"bad exponent {e} for {vars}")
            if sum(e) > order:
                raise ExponentOverflow(f"exponent {e} exceeds order {order}")
            try:
                coeffs[u.index[e]] = coeffs[u.index[e]] + field.coerce(v)
            except FieldError as exc:
                raise MixedField(str(exc)) from exc
        return cls(u, coeffs, field)

    @classmethod
    def from_function(cls, vars, order, fn, field=QQ):
        """Build from ``fn(exponent tuple) -> coefficient`` (zero allowed)."""
        u = universe(tuple(vars), order)
        return cls(u, [field.coerce(fn(e)) for e in u.exps], field)

    # -- basic properties ----------------------------------------------------

    @property
    def vars(self):
        return self.u.vars

    @property
    def order(self):
        return self.u.order

    def terms(self):
        return {e: c for e, c in zip(self.u.exps, self.coeffs) if c}

    def coeff(self, exp):
        exp = (exp,) if isinstance(exp, int) else tuple(exp)
        if len(exp) != len(self.vars):
            raise ExponentOverflow(f"bad exponent {exp} for {self.vars}")
        if sum(exp) > self.order:
            raise ExponentOverflow(f"exponent {exp} beyond order {self.order}")
        return self.coeffs[self.u.index[exp]]

    def constant_term(self):
        return self.coeffs[0]

    def valuation(self) -> int:
        for d, c in zip(self.u.degs, self.coeffs):
            if c:
                return d
        return self.order + 1

    def is_zero(self, upto: int | None = None) -> bool:
        upto = self.reliable if upto is None else upto
        return not any(c for c, d in zip(self.coeffs, self.u.degs) if d <= upto)

    # -- field / universe changes --------------------------------------------

    def _promote(self, field):
        if field == self.field:
            return self
        if field == CC:
            return MultiSeries(self.u, [to_float_complex(c) for c in self.coeffs], CC, self.reliable)
        if self.field == QQ and isinstance(field, QuadraticField):
            return MultiSeries(self.u, [field.coerce(c) for c in self.coeffs], field, self.reliable)
        raise MixedField(f"cannot move a {self.field} series into {field}")

    def to_field(self, field):
        return self._promote(field)

    def truncate(self, order: int):
        if order > self.order:
            raise ExponentOverflow("truncate cannot raise the order; use extend")
        u = universe(self.vars, order)
        idx = self.u.index
        return MultiSeries(u, [self.coeffs[idx[e]] for e in u.exps], self.field,
                           min(self.reliable, order))

    def extend(self, order: int):
        """Pad with zero coefficients up to ``order``; reliability is unchanged."""
        u = universe(self.vars, order)
        c = [self.field.zero] * u.size
        idx = u.index
        for e, v in zip(self.u.exps, self.coeffs):
            c[idx[e]] = v
        return MultiSeries(u, c, self.field, self.reliable)

    def with_vars(self, vars, rename: dict | None = None):
        """Embed into a universe over ``vars`` (a superset after renaming)."""
        rename = rename or {}
        mine = [rename.get(v, v) for v in self.vars]
        vars = tuple(vars)
        missing = [v for v in mine if v not in vars]
        if missing:
            raise VariableMismatch(f"{missing} not in {vars}")
        pos = [vars.index(v) for v in mine]
        u = universe(vars, self.order)
        c = [self.field.zero] * u.size
        for e, v in zip(self.u.exps, self.coeffs):
            if v:
                t = [0] * len(vars)
                for p, k in zip(pos, e):
                    t[p] = k
                c[u.index[tuple(t)]] = v
        return MultiSeries(u, c, self.field, self.reliable)

    def rename(self, mapping: dict):
        return self.with_vars([mapping.get(v, v) for v in self.vars], mapping)

    # -- ring operations -----------------------------------------------------

    def _align(self, other):
        if not isinstance(other, MultiSeries):
            raise TypeError("expected MultiSeries")
        if self.u is not other.u:
            raise VariableMismatch(f"{self.u} vs {other.u}")
        if self.field == other.field:
            return self, other
        try:
            f = common_field(self.field, other.field)
        except FieldError as exc:
            raise MixedField(str(exc)) from exc
        return self._promote(f), other._promote(f)

    def _scalar(self, k):
        try:
            return self.field.coerce(k)
        except FieldError as exc:
            raise MixedField(str(exc)) from exc

    def __add__(self, other):
        if not isinstance(other, MultiSeries):
            c = list(self.coeffs)
            c[0] = c[0] + self._scalar(other)
            return MultiSeries(self.u, c, self.field, self.reliable)
        a, b = self._align(other)
        return MultiSeries(a.u, [x + y for x, y in zip(a.coeffs, b.coeffs)], a.field,
                           min(a.reliable, b.reliable))

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(self.u, [-x for x in self.coeffs], self.field, self.reliable)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k):
        k = self._scalar(k)
        return MultiSeries(self.u, [x * k for x in self.coeffs], self.field, self.reliable)

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            return self.scale(other)
        a, b = self._align(other)
        return MultiSeries(a.u, _mul_coeffs(a.coeffs, b.coeffs, a.u, a.field), a.field,
                           min(a.reliable, b.reliable))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiSeries):
            return self * other.inv()
        k = self._scalar(other)
        if k == 0:
            raise DivisionByZero("series divided by zero")
        return self.scale(self.field.one / k)

    def __pow__(self, k):
        if isinstance(k, int) and k >= 0:
            out = MultiSeries.one(self.vars, self.order, self.field)
            out.reliable = self.reliable
            base = self
            while k:
                if k & 1:
                    out = out * base
                k >>= 1
                if k:
                    base = base * base
            return out
        if isinstance(k, int):
            return self.inv() ** (-k)
        return self.pow_field(k)

    def inv(self):
        a0 = self.coeffs[0]
        if not a0:
            raise ZeroConstantTerm("series has zero constant term")
        a0inv = self.field.one / a0
        b = MultiSeries.constant(self.vars, self.order, a0inv, self.field)
        # Newton iteration b <- b(2 - ab) doubles the correct order each step.
        prec = 1
        while prec <= self.order:
            b = b * (2 - self * b)
            prec *= 2
        b.reliable = self.reliable
        return b

    def pow_field(self, alpha):
        """``self**alpha`` via the generalized binomial series (constant term must be 1)."""
        if self.coeffs[0] != 1:
            raise NonUnitConstantTerm("pow_field needs constant term exactly 1")
        alpha = self._scalar(alpha)
        uu = self - 1
        n = self.order
        binom = [self.field.one]
        for k in range(1, n + 1):
            binom.append(binom[-1] * (alpha - (k - 1)) / k)
        out = MultiSeries.constant(self.vars, self.order, binom[n], self.field)
        for k in range(n - 1, -1, -1):
            out = out * uu + binom[k]
        out.reliable = self.reliable
        return out

    def derivative(self, var: str):
        p = self.u.var_index(var)
        c = [self.field.zero] * self.u.size
        idx = self.u.index
        for e, v in zip(self.u.exps, self.coeffs):
            if v and e[p]:
                t = list(e)
                t[p] -= 1
                c[idx[tuple(t)]] = v * e[p]
        return MultiSeries(self.u, c, self.field, self.reliable - 1)

    def euler(self, var: str):
        """Apply ``var * d/dvar`` (exact, no loss of order)."""
        p = self.u.var_index(var)
        return MultiSeries(self.u, [v * e[p] for e, v in zip(self.u.exps, self.coeffs)],
                           self.field, self.reliable)

    def mul_var(self, var: str, k: int = 1):
        """Multiply by ``var**k``; top coefficients fall off the cutoff."""
        p = self.u.var_index(var)
        c = [self.field.zero] * self.u.size
        idx = self.u.index
        for e, v in zip(self.u.exps, self.coeffs):
            if v and sum(e) + k <= self.order:
                t = list(e)
                t[p] += k
                c[idx[tuple(t)]] = v
        return MultiSeries(self.u, c, self.field, self.reliable)

    def div_var(self, var: str, k: int = 1):
        """Exact division by ``var**k``; the reliable order drops by ``k``."""
        p = self.u.var_index(var)
        c = [self.field.zero] * self.u.size
        idx = self.u.index
        for e, v in zip(self.u.exps, self.coeffs):
            if not v:
                continue
            if e[p] < k:
                raise SeriesError(f"series not divisible by {var}^{k}")
            t = list(e)
            t[p] -= k
            c[idx[tuple(t)]] = v
        return MultiSeries(self.u, c, self.field, self.reliable - k)

    def map_coeffs(self, fn):
        """Return ``sum fn(e) * c_e x^e`` (``fn`` gets the exponent tuple)."""
        return MultiSeries(self.u, [v * fn(e) if v else v for e, v in zip(self.u.exps, self.coeffs)],
                           self.field, self.reliable)

    # -- composition ---------------------------------------------------------

    def compose(self, bindings: dict):
        """Substitute ``var -> series`` for the bound variables (Horner scheme)."""
        if not bindings:
            return self
        for v in bindings:
            if v not in self.vars:
                raise UnknownVariable(f"{v!r} not in {self.vars}")
        inners = list(bindings.values())
        iu = inners[0].u
        for g in inners:
            if g.u is not iu:
                raise VariableMismatch("bound series must share one universe")
            if g.coeffs[0]:
                raise NonzeroConstantTerm("substituted series needs zero constant term")
        free = [v for v in self.vars if v not in bindings]
        for v in free:
            if v not in iu.vars:
                raise VariableMismatch(f"unbound variable {v!r} missing from {iu.vars}")
        try:
            field = common_field(self.field, *(g.field for g in inners))
        except FieldError as exc:
            raise MixedField(str(exc)) from exc
        inners = {v: g._promote(field) for v, g in bindings.items()}
        outer = self._promote(field)
        bound_pos = [self.vars.index(v) for v in self.vars if v in bindings]
        free_pos = [(self.vars.index(v), iu.vars.index(v)) for v in free]
        rel = min([outer.reliable] + [g.reliable for g in inners.values()])
        terms = outer.terms()
        if not terms:
            out = MultiSeries(iu, [field.zero] * iu.size, field)
            out.reliable = min(rel, iu.order)
            return out
        out = _compose_rec(terms, bound_pos, [inners[self.vars[p]] for p in bound_pos],
                           free_pos, iu, field)
        out.reliable = min(rel, iu.order)
        return out

    def revert(self):
        """Compositional inverse of a univariate series with ``g(0)=0, g'(0)!=0``."""
        if len(self.vars) != 1:
            raise VariableMismatch("revert needs a univariate series")
        if self.coeffs[0]:
            raise NonzeroConstantTerm("revert needs zero constant term")
        g1 = self.coeffs[1] if self.order >= 1 else self.field.zero
        if not g1:
            raise ZeroConstantTerm("revert needs a nonzero linear coefficient")
        (v,) = self.vars
        y = MultiSeries.var(v, self.vars, self.order, self.field)
        rest = self - y * g1
        h = y / g1
        for _ in range(self.order):
            h = (y - rest.compose({v: h})) / g1
        h.reliable = self.reliable
        return h

    # -- comparison / evaluation ---------------------------------------------

    def first_mismatch(self, other, upto: int | None = None):
        """First exponent (graded order) where the two series differ, or ``None``."""
        a, b = self._align(other)
        lim = min(a.reliable, b.reliable) if upto is None else upto
        for e, d, x, y in zip(a.u.exps, a.u.degs, a.coeffs, b.coeffs):
            if d > lim:
                break
            if x != y:
                return e, x, y
        return None

    def max_abs_diff(self, other, upto: int | None = None) -> float:
        a, b = self._align(other)
        lim = min(a.reliable, b.reliable) if upto is None else upto
        return max((abs(to_float_complex(x) - to_float_complex(y))
                    for d, x, y in zip(a.u.degs, a.coeffs, b.coeffs) if d <= lim), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        if self.vars != other.vars or self.order != other.order:
            return False
        try:
            return self.first_mismatch(other, upto=self.order) is None
        except MixedField:
            return False

    __hash__ = None

    def evaluate(self, point: dict) -> complex:
        """Float-complex value of the truncated polynomial at ``point``."""
        vals = [complex(point[v]) for v in self.vars]
        total = 0j
        for e, c in zip(self.u.exps, self.coeffs):
            if c:
                m = to_float_complex(c)
                for x, k in zip(vals, e):
                    if k:
                        m *= x ** k
                total += m
        return total

    # -- text / JSON -----------------------------------------------------------

    def __str__(self):
        parts = []
        for e, c in zip(self.u.exps, self.coeffs):
            if not c:
                continue
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            txt = format_field(c)
            neg = False
            if isinstance(c, Fraction) or isinstance(c, int):
                neg = c < 0
                txt = format_field(abs(c))
            elif not isinstance(c, Fraction):
                txt = f"({txt})"
            if mono:
                body = mono if txt == "1" else f"{txt}*{mono}"
            else:
                body = txt
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts) if parts else "0"

    def __repr__(self):
        return f"MultiSeries({self.vars}, N={self.order}, {self})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "order": self.order,
            "terms": [{"exp": list(e), "coeff": format_field(c)} for e, c in self.terms().items()],
        }

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        terms = {tuple(t["exp"]): parse_field(t["coeff"]) for t in obj["terms"]}
        field = common_field(*(field_of(v) for v in terms.values())) if terms else QQ
        return cls.from_terms(obj["vars"], obj["order"], terms, field)


def _compose_rec(terms, bound_pos, inners, free_pos, iu, field):
    if not bound_pos:
        c = [field.zero] * iu.size
        for e, v in terms.items():
            t = [0] * len(iu.vars)
            for p_out, p_in in free_pos:
                t[p_in] = e[p_out]
            if sum(t) <= iu.order:
                k = iu.index[tuple(t)]
                c[k] = c[k] + v
        return MultiSeries(iu, c, field)
    p, g = bound_pos[0], inners[0]
    slices = {}
    for e, v in terms.items():
        t = list(e)
        k = t[p]
        t[p] = 0
        slices.setdefault(k, {})[tuple(t)] = v
    out = None
    for k in range(max(slices), -1, -1):
        piece = _compose_rec(slices[k], bound_pos[1:], inners[1:], free_pos, iu, field) \
            if k in slices else None
        if out is None:
            out = piece
        else:
            out = out * g
            if piece is not None:
                out = out + piece
    return out


# --- functional aliases -------------------------------------------------------

def series_make(vars, order, terms, field=None):
    return MultiSeries.from_terms(vars, order, terms, field)


def series_add(a, b):
    return a + b


def series_mul(a, b):
    return a * b


def series_scale(a, k):
    return a.scale(k)


def series_inv(a):
    return a.inv()


def series_pow_field(a, alpha):
    return a.pow_field(alpha)


def series_compose(outer, bindings):
    return outer.compose(bindings)


def series_derivative(a, var):
    return a.derivative(var)


def series_coeff(a, exp):
    return a.coeff(exp)
