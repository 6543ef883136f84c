"""Operator chains: products of hypergeometrizations, multiplications and
substitutions acting on truncated series, plus builders for the rewrite
identities (Pfaff / Euler properties, the F_m change of variable, ...).

A chain ``[A1, A2, ..., Ak]`` means the operator ``A1 A2 ... Ak``: the
rightmost atom acts first.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .field import QQ, format_field, is_integer, parse_field
from .hypop import HypParams, InadmissibleLowerParameter, check_lower, hyp_apply
from .report import CheckReport, mismatch_record
from .series import MultiSeries, NonzeroConstantTerm, SeriesError, ZeroConstantTerm

__all__ = [
    "NonInvertibleAtom", "RegimeViolation", "ZeroM", "BadInnerSeries",
    "Hyp", "MulPow", "MulSeries", "Subst", "OpChain", "chain_eval",
    "chain_product", "chain_invert", "pfaff_rewrite", "euler_rewrite",
    "eulergen_tilde", "eulergen_rewrite", "eulergenm_rewrite",
    "theorem_main_chains", "gensubs_chains", "qt_chains", "conj_chains",
    "power_chains", "check_operator_identity", "monomial_testfns",
    "random_series", "QT_NAMES",
]


class NonInvertibleAtom(ValueError):
    pass


class RegimeViolation(ValueError):
    pass


class ZeroM(ValueError):
    pass


class BadInnerSeries(ValueError):
    pass


def _fmt(x):
    t = format_field(x)
    return t if t.lstrip("-").isdigit() else f"({t})"


# --- atoms ------------------------------------------------------------------

@dataclass(frozen=True)
class Hyp:
    """Hypergeometrization ``H_c^a`` in ``var`` (lower parameter checked at use)."""
    a: object
    c: object
    var: str = "x"

    def apply(self, f):
        return hyp_apply(f, HypParams(self.a, self.c, self.var))

    def inverse(self):
        return Hyp(self.c, self.a, self.var)

    def lower_params(self):
        return [self.c]

    def __str__(self):
        return f"H[{format_field(self.a)},{format_field(self.c)};{self.var}]"

    def to_json(self):
        return {"type": "hyp", "a": format_field(self.a), "c": format_field(self.c),
                "var": self.var}


@dataclass(frozen=True, eq=False)
class MulPow:
    """Multiplication by ``base**exponent``; ``base`` has constant term 1."""
    base: MultiSeries
    exponent: object
    label: str = "g"

    def __post_init__(self):
        if self.base.coeffs[0] != 1:
            raise ValueError("MulPow base must have unit constant term")

    def factor(self):
        if self.exponent == 0:
            return None
        return self.base.pow_field(self.exponent)

    def apply(self, f):
        g = self.factor()
        return f if g is None else f * g

    def inverse(self):
        return MulPow(self.base, -self.exponent, self.label)

    def lower_params(self):
        return []

    def __str__(self):
        return f"{self.label}^{_fmt(self.exponent)}"

    def to_json(self):
        return {"type": "mulpow", "base": self.base.to_json(),
                "exponent": format_field(self.exponent), "label": self.label}


@dataclass(frozen=True, eq=False)
class MulSeries:
    """Multiplication by a fixed series."""
    g: MultiSeries
    label: str = "g"

    def apply(self, f):
        return f * self.g

    def inverse(self):
        try:
            return MulSeries(self.g.inv(), f"1/{self.label}")
        except ZeroConstantTerm as exc:
            raise NonInvertibleAtom(f"{self.label} is not a unit") from exc

    def lower_params(self):
        return []

    def __str__(self):
        return self.label

    def to_json(self):
        return {"type": "mulseries", "g": self.g.to_json(), "label": self.label}


@dataclass(frozen=True, eq=False)
class Subst:
    """``f(var) -> f(target(var))``; invertible only with a recorded inverse."""
    var: str
    target: MultiSeries
    inverse_target: MultiSeries | None = None
    label: str = "s"

    def __post_init__(self):
        if self.target.coeffs[0]:
            raise NonzeroConstantTerm("substitution target needs zero constant term")

    def apply(self, f):
        return f.compose({self.var: self.target})

    def inverse(self):
        if self.inverse_target is None:
            raise NonInvertibleAtom(f"substitution {self.label} has no registered inverse")
        return Subst(self.var, self.inverse_target, self.target, f"{self.label}^-1")

    def lower_params(self):
        return []

    def __str__(self):
        return f"[{self.var}->{self.label}]"

    def to_json(self):
        d = {"type": "subst", "var": self.var, "target": self.target.to_json(),
             "label": self.label}
        if self.inverse_target is not None:
            d["inverse"] = self.inverse_target.to_json()
        return d


def atom_from_json(d):
    kind = d["type"]
    if kind == "hyp":
        return Hyp(parse_field(d["a"]), parse_field(d["c"]), d["var"])
    if kind == "mulpow":
        return MulPow(MultiSeries.from_json(d["base"]), parse_field(d["exponent"]), d["label"])
    if kind == "mulseries":
        return MulSeries(MultiSeries.from_json(d["g"]), d["label"])
    if kind == "subst":
        inv = MultiSeries.from_json(d["inverse"]) if "inverse" in d else None
        return Subst(d["var"], MultiSeries.from_json(d["target"]), inv, d["label"])
    raise ValueError(f"unknown atom type {kind!r}")


class OpChain:
    def __init__(self, atoms, vars=("x",), order=12):
        self.atoms = tuple(atoms)
        self.vars = tuple(vars)
        self.order = order

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __add__(self, other):
        if isinstance(other, OpChain):
            other = other.atoms
        return OpChain(self.atoms + tuple(other), self.vars, self.order)

    def __radd__(self, other):
        return OpChain(tuple(other) + self.atoms, self.vars, self.order)

    def lower_params(self):
        return [c for atom in self.atoms for c in atom.lower_params()]

    def validate(self):
        for c in self.lower_params():
            check_lower(c)
        return self

    def __str__(self):
        return " ∘ ".join(str(a) for a in self.atoms) if self.atoms else "id"

    def __repr__(self):
        return f"OpChain({self})"

    def to_json(self):
        return {"vars": list(self.vars), "order": self.order,
                "atoms": [a.to_json() for a in self.atoms]}

    @classmethod
    def from_json(cls, d):
        return cls([atom_from_json(a) for a in d["atoms"]], d["vars"], d["order"])


def chain_eval(chain: OpChain, f: MultiSeries) -> MultiSeries:
    if tuple(f.vars) != chain.vars or f.order != chain.order:
        raise SeriesError(f"chain universe {chain.vars}/N={chain.order} "
                          f"vs series {f.vars}/N={f.order}")
    for atom in reversed(chain.atoms):
        f = atom.apply(f)
    return f


def _invert_atoms(atoms):
    out = []
    for atom in reversed(list(atoms)):
        if isinstance(atom, Hyp):
            try:
                check_lower(atom.a)
            except InadmissibleLowerParameter as exc:
                raise NonInvertibleAtom(str(exc)) from exc
        out.append(atom.inverse())
    return out


def chain_invert(chain: OpChain) -> OpChain:
    return OpChain(_invert_atoms(chain.atoms), chain.vars, chain.order)


def chain_product(factor, m: int, vars=("x",), order=12) -> OpChain:
    """``A_1 A_2 ... A_m`` for ``m >= 1``; identity for ``m = 0``;
    ``A_0^{-1} A_{-1}^{-1} ... A_{1+m}^{-1}`` for ``m < 0``.

    ``factor(j)`` returns the atom list of ``A_j``.
    """
    atoms = []
    if m > 0:
        for j in range(1, m + 1):
            atoms.extend(factor(j))
    elif m < 0:
        for j in range(1, -m + 1):
            atoms.extend(_invert_atoms(factor(1 - j)))
    return OpChain(atoms, vars, order)


# --- helpers -----------------------------------------------------------------

def _var(name, order, field=QQ):
    return MultiSeries.var(name, (name,), order, field)


def _one_minus(name, order):
    return 1 - _var(name, order)


def _pow(base_label, base, e):
    return MulPow(base, Fraction(e) if isinstance(e, int) else e, base_label)


def monomial_testfns(var="y", order=12, kmax=6):
    v = _var(var, order)
    return [v ** k for k in range(kmax + 1)]


def random_series(var="y", order=12, rng=None, lo=-20, hi=20):
    rng = rng or random.Random(0)
    terms = {(k,): Fraction(rng.randint(lo, hi), rng.randint(1, hi)) for k in range(order + 1)}
    return MultiSeries.from_terms((var,), order, terms, QQ)


# --- rewrite builders ----------------------------------------------------------

def pfaff_rewrite(params: HypParams, order=12):
    """``(1-x)^a H_c^a(x) (1-x)^{-c}`` versus ``H_c^a(y)``, ``y = x/(x-1)``."""
    a, c = params.a, params.c
    check_lower(c)
    x = _var("x", order)
    lhs = OpChain([_pow("(1-x)", 1 - x, a), Hyp(a, c, "x"), _pow("(1-x)", 1 - x, -c)],
                  ("x",), order)
    rhs = OpChain([Hyp(a, c, "y")], ("y",), order)
    return lhs, rhs, x / (x - 1)


def euler_rewrite(a, b, c, order=12):
    """``(1-x)^{a+b-c} H_c^a (1-x)^{-b} = H_c^{c-b} (1-x)^{-(c-a)} H_{c-b}^a``."""
    check_lower(c)
    check_lower(c - b)
    x = _var("x", order)
    om = 1 - x
    lhs = OpChain([_pow("(1-x)", om, a + b - c), Hyp(a, c), _pow("(1-x)", om, -b)], ("x",), order)
    rhs = OpChain([Hyp(c - b, c), _pow("(1-x)", om, a - c), Hyp(a, c - b)], ("x",), order)
    return lhs, rhs, x


def eulergen_tilde(a_seq, c_seq):
    """Sequences ``(a~_j, c~_j)`` of the generalized Euler rewrite."""
    a0 = a_seq(0)

    def at(j):
        if j >= 0:
            return a0 + sum((c_seq(k) for k in range(1, j + 1)), Fraction(0))
        return a0 - sum((c_seq(1 - k) for k in range(1, -j + 1)), Fraction(0))

    def ct(j):
        return c_seq(j) + c_seq(j - 1) - a_seq(j - 1) + a_seq(j - 2)

    return at, ct


def eulergen_rewrite(a_seq, c_seq, n: int, order=12, reverse=False):
    """Both sides of the product form of the Euler property for any integer ``n``.

    ``a_seq``/``c_seq`` are callables ``j -> value``.  With ``reverse`` the
    inverse-direction form is returned.
    """
    if not -4 <= n <= 4:
        raise ValueError("n must lie in [-4, 4]")
    x = _var("x", order)
    om = 1 - x
    at, ct = eulergen_tilde(a_seq, c_seq)

    def A(j):
        return [_pow("(1-x)", om, c_seq(j)), Hyp(a_seq(j), a_seq(j - 1))]

    def At(j):
        return [_pow("(1-x)", om, ct(j)), Hyp(at(j), at(j - 1))]

    orig = chain_product(A, n, ("x",), order)
    tilde = chain_product(At, n, ("x",), order)
    if not reverse:
        lhs = orig
        rhs = ([_pow("(1-x)", om, c_seq(1) - ct(1))] + tilde
               + [_pow("(1-x)", om, a_seq(n - 1) - at(n - 1)), Hyp(a_seq(n), at(n))])
    else:
        lhs = tilde
        rhs = ([_pow("(1-x)", om, ct(1) - c_seq(1))] + orig
               + [Hyp(at(n), a_seq(n)), _pow("(1-x)", om, at(n - 1) - a_seq(n - 1))])
    return lhs.validate(), rhs.validate(), x


def eulergenm_rewrite(a_seq, alpha, n: int, m: int, order=12):
    """Iterated generalized Euler rewrite with ``c_j = a_j - a_{j-1} + alpha``, ``m`` times."""
    if n < 1:
        raise ValueError("n must be positive")
    x = _var("x", order)
    om = 1 - x

    def c_seq(j):
        return a_seq(j) - a_seq(j - 1) + alpha

    lhs = chain_product(lambda j: [_pow("(1-x)", om, c_seq(j)), Hyp(a_seq(j), a_seq(j - 1))],
                        n, ("x",), order)
    first = chain_product(
        lambda j: [_pow("(1-x)", om, c_seq(j) + m * alpha),
                   Hyp(a_seq(j) + m * alpha * j, a_seq(j - 1) + m * alpha * (j - 1))],
        n, ("x",), order)
    an = a_seq(n)
    second = chain_product(
        lambda k: [_pow("(1-x)", om, -alpha * (n - 1)),
                   Hyp(an + (m - k) * alpha * n, an + (m + 1 - k) * alpha * n)],
        m, ("x",), order)
    rhs = [_pow("(1-x)", om, -alpha * m)] + first + second
    return lhs.validate(), rhs.validate(), x


def _unit_ratio_in_y(x_of_y_builder, order, scale):
    """``scale * x(y) / y`` as a unit series in ``y`` (built one order higher)."""
    hi = x_of_y_builder(order + 1)
    return (hi.div_var("y") * scale).truncate(order)


def theorem_main_chains(m: int, a, c, order=12, evidence=False):
    """Both sides of the ``y = 1-(1-x)^m`` change of variable for ``H_c^a``."""
    if m == 0:
        raise ZeroM("m must be nonzero")
    integral = is_integer(a - c)
    if abs(m) > 2 and not integral and not evidence:
        raise RegimeViolation(f"m={m} with a-c={format_field(a - c)} not an integer "
                              "is only available in evidence mode")
    check_lower(c)
    delta = (a - c) / m
    e = (a - c - 1) / m
    y = _var("y", order)
    om_y = 1 - y

    def x_of_y(n):
        yy = _var("y", n)
        return 1 - (1 - yy).pow_field(Fraction(1, m))

    u = _unit_ratio_in_y(x_of_y, order, m)

    def A(j):
        return [_pow("(1-y)", om_y, e), Hyp(c + j * delta, c + (j - 1) * delta, "y")]

    prod = chain_product(A, m, ("y",), order)
    rhs = OpChain([_pow("(mx/y)", u, 1 - c), _pow("(1-y)", om_y, 1 + (c - a) / m)]
                  + list(prod) + [_pow("(mx/y)", u, a - 1)], ("y",), order)
    lhs = OpChain([Hyp(a, c, "x")], ("x",), order)
    x = _var("x", order)
    subst = 1 - (1 - x) ** m if m > 0 else 1 - (1 - x).inv() ** (-m)
    return lhs.validate(), rhs.validate(), subst


def gensubs_chains(y_of_x: MultiSeries, a, n: int, order=None):
    """``H_a^{a+n}(x)`` versus its rewritten form in an arbitrary variable ``y(x)``."""
    order = order or y_of_x.order
    if not -4 <= n <= 4:
        raise ValueError("n must lie in [-4, 4]")
    if y_of_x.vars != ("x",):
        raise BadInnerSeries("inner series must be univariate in x")
    if y_of_x.coeffs[0] or y_of_x.coeffs[1] == 0:
        raise BadInnerSeries("need y(0)=0 and y'(0)!=0")
    y1 = y_of_x.coeffs[1]
    # everything in y is built one order higher, then cut back
    hi = y_of_x.extend(order + 1) if y_of_x.order < order + 1 else y_of_x
    if y_of_x.order < order + 1:
        # the caller's series is exact as a polynomial; treat it so
        hi.reliable = order + 1
    x_of_y = hi.revert().rename({"x": "y"})
    v = (x_of_y.div_var("y") * y1).truncate(order)  # (x/y) * y1, a unit series
    yprime = hi.derivative("x")
    yprime.reliable = order + 1
    dy = yprime.compose({"x": hi.revert()}).rename({"x": "y"}).truncate(order)
    kappa_n = (1 / y1) ** n if n >= 0 else y1 ** (-n)

    def A(j):
        return [MulSeries(dy, "y'"), Hyp(a + j, a + j - 1, "y")]

    prod = chain_product(A, n, ("y",), order)
    rhs = OpChain([MulSeries(MultiSeries.constant(("y",), order, kappa_n), _fmt(kappa_n)),
                   _pow("(x/y)", v, 1 - a)] + list(prod) + [_pow("(x/y)", v, a + n - 1)],
                  ("y",), order)
    lhs = OpChain([Hyp(a + n, a, "x")], ("x",), order)
    return lhs.validate(), rhs.validate(), y_of_x.truncate(order) if y_of_x.order > order else y_of_x


QT_NAMES = ("Qt1monom", "Qt2", "Qt3", "Qt4", "Qt5", "Qt6", "Qt7")


def qt_chains(name: str, a, c, order=12):
    """The change-of-variable catalog built from P, S, M_n and Q."""
    x = _var("x", order)
    y = _var("y", order)
    omx, omy = 1 - x, 1 - y
    beta = (a + c - 1) / 2
    half = Fraction(1, 2)
    core = [Hyp(beta, c, "y"), _pow("(1-y)", omy, -(c - a) / 2), Hyp(a, beta, "y")]
    if name == "Qt1monom":
        lhs = [_pow("(1-x)", omx, 2 * beta), Hyp(a, c), _pow("(1-x)", omx, -2 * beta)]
        rhs = core
        sub = -4 * x * (omx ** 2).inv()
    elif name == "Qt2":
        opx = 1 + x
        lhs = [_pow("(1+x)", opx, 2 * beta), Hyp(a, c), _pow("(1+x)", opx, -2 * beta)]
        rhs = core
        sub = 4 * x * (opx ** 2).inv()
    elif name == "Qt3":
        lhs = [_pow("(1-x)", omx, 1 - c), Hyp(a, c), _pow("(1-x)", omx, a - 1)]
        rhs = core
        sub = 4 * x * omx
    elif name == "Qt4":
        lhs = [_pow("(1-x)", omx, 1 - c), Hyp(a, c), _pow("(1-x)", omx, a - 1)]
        rhs = [_pow("(1-y)", omy, beta)] + core + [_pow("(1-y)", omy, -beta)]
        sub = 4 * x * (x - 1) * ((1 - 2 * x) ** 2).inv()
    elif name == "Qt5":
        lhs = [_pow("(1-x)", omx, a / 2), Hyp(a, c), _pow("(1-x)", omx, -c / 2)]
        rhs = [Hyp(a / 2, (c + 1) / 2, "y"), _pow("(1-y)", omy, -(c - a) / 2),
               Hyp((a + 1) / 2, c / 2, "y")]
        sub = x * x * (4 * (x - 1)).inv()
    elif name == "Qt6":
        b = 1 - x * half
        lhs = [_pow("(1-x/2)", b, a), Hyp(a, c), _pow("(1-x/2)", b, -c)]
        rhs = [Hyp(a / 2, (c + 1) / 2, "y"), Hyp((a + 1) / 2, c / 2, "y")]
        sub = x * x * ((2 - x) ** 2).inv()
    elif name == "Qt7":
        b = 1 - x * x
        lhs = [_pow("(1-x^2)", b, (a + 1) / 2), Hyp(a, c), _pow("(1-x^2)", b, -(c + 1) / 2)]
        rhs = [Hyp((a + 1) / 2, c / 2, "y"), _pow("(1-y)", omy, -(c - a) / 2),
               Hyp(a / 2, (c + 1) / 2, "y")]
        sub = x * x * (x * x - 1).inv()
    else:
        raise KeyError(name)
    return (OpChain(lhs, ("x",), order).validate(), OpChain(rhs, ("y",), order).validate(), sub)


def conj_chains(which: int, a, c, order=12, evidence=False, literal=False):
    """The two cubic change-of-variable formulas built on ``F_3``.

    ``literal=True`` keeps the ``(1+x)^{3-3a+c}`` exponent of the second
    formula as originally printed; the default uses ``3-3a-c``.
    """
    if not is_integer(a - c) and not evidence:
        raise RegimeViolation("generic a-c is only available in evidence mode")
    x = _var("x", order)
    y = _var("y", order)
    omy = 1 - y
    third = Fraction(1, 3)
    rhs = [_pow("(1-y)", omy, 1 - c * third), Hyp((2 + a + 2 * c) * third, c, "y"),
           _pow("(1-y)", omy, -(c - a) * third),
           Hyp((1 + 2 * a + c) * third, (2 + 2 * c + a) * third, "y"),
           _pow("(1-y)", omy, -(c - a) * third), Hyp(a, (1 + c + 2 * a) * third, "y"),
           _pow("(1-y)", omy, a * third - 1)]
    if which == 1:
        p2x, mx3 = 1 + 2 * x, 1 - x ** 3
        lhs = [_pow("(1+2x)", p2x, a + 3 * c - 3), _pow("(1-x^3)", mx3, 1 - c), Hyp(a, c),
               _pow("(1+2x)", p2x, 3 - 3 * a - c), _pow("(1-x^3)", mx3, a - 1)]
        sub = 1 - ((1 - x) * (1 + 2 * x).inv()) ** 3
    elif which == 2:
        omx, opx, q = 1 - x, 1 + x, 1 + x * x * third
        lhs = [_pow("(1-x)", omx, 1 - c), _pow("(1+x)", opx, 3 * c + a - 3),
               _pow("(1+x^2/3)", q, 1 - c), Hyp(a, c),
               _pow("(1-x)", omx, a - 1), _pow("(1+x)", opx, 3 - 3 * a + (c if literal else -c)),
               _pow("(1+x^2/3)", q, a - 1)]
        sub = 1 - ((1 - x) * (1 + x).inv()) ** 3
    else:
        raise KeyError(which)
    return (OpChain(lhs, ("x",), order).validate(), OpChain(rhs, ("y",), order).validate(), sub)


def power_chains(n: int, a, c, order=12, alpha=None):
    """``H_c^a(x)`` versus the ``n``-fold product in ``y = x^n`` (or ``y = alpha x``)."""
    x = _var("x", order)
    lhs = OpChain([Hyp(a, c)], ("x",), order)
    if alpha is not None:
        return lhs.validate(), OpChain([Hyp(a, c, "y")], ("y",), order), x * alpha
    rhs = OpChain([Hyp((a + j) / n, (c + j) / n, "y") for j in range(n)], ("y",), order)
    return lhs.validate(), rhs.validate(), x ** n


# --- checking -----------------------------------------------------------------

def check_operator_identity(lhs: OpChain, rhs: OpChain, subst, testfns, id="operator",
                            params=None, label="theorem") -> CheckReport:
    """Compare ``lhs(h o y)`` with ``(rhs h) o y`` for every test function ``h``."""
    t0 = time.perf_counter()
    rvar = rhs.vars[0]
    report = CheckReport(id=id, outcome="pass", kind="operator", params=params or {},
                         order=lhs.order, label=label)
    for i, h in enumerate(testfns):
        left = chain_eval(lhs, h.compose({rvar: subst}))
        right = chain_eval(rhs, h).compose({rvar: subst})
        found = left.first_mismatch(right)
        if found is not None:
            report.outcome = "fail"
            report.mismatch = mismatch_record(found, i)
            break
    report.wall_time = time.perf_counter() - t0
    return report
