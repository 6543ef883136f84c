"""Truncated series for the special functions and elementary kernels.

Two independent routes exist for every family:

* ``family_series`` expands the defining (multiple) sum directly and is the
  reference side of every check;
* ``rep_series`` builds an elementary kernel and pushes it through
  hypergeometrizations.

Families written in the ``t``-homogenized form (``F(tx, ty)``) live in the
universe ``(t, x, y)`` at order ``2N`` so that every term with ``j + k <= N``
is present.  Convergence regions are not modelled; everything is formal.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .field import QQ, common_field, field_of
from .hypop import HypParams, check_lower, hyp_apply, pochhammer, pochhammer_int
from .series import MultiSeries

__all__ = [
    "InadmissibleParameter", "KERNELS", "FAMILIES", "HOMOGENIZED", "kernel_series",
    "family_series", "rep_series", "rep_oracle", "f1_multi_series", "family_vars",
    "homogenize", "binom_pow",
]


class InadmissibleParameter(ValueError):
    pass


KERNELS = ("exp", "coshsqrt", "cossqrt", "fn", "binompow", "arctanratio",
           "f4kernel", "h4kernel", "f3arg")
FAMILIES = ("pfq", "appell_f1", "appell_f2", "appell_f3", "appell_f4", "f1_multi",
            "horn_g1", "horn_g2", "horn_g3", "h4", "phi1", "phi2", "phi3")
# families whose representation uses an auxiliary variable t
HOMOGENIZED = ("appell_f1", "appell_f3", "appell_f4", "f1_multi", "phi1", "phi2", "phi3")


def _field_for(*vals):
    vals = [v for v in vals if v is not None]
    return common_field(QQ, *(field_of(v) for v in vals)) if vals else QQ


def _var(name, vars, order, field=QQ):
    return MultiSeries.var(name, vars, order, field)


def binom_pow(base: MultiSeries, exponent):
    """``base ** exponent`` for a unit-constant ``base``."""
    return base.pow_field(exponent)


# --- kernels --------------------------------------------------------------------

def _univariate(vars, order, coef, field=QQ):
    (v,) = vars
    return MultiSeries.from_terms(vars, order, {(k,): coef(k) for k in range(order + 1)}, field)


def kernel_series(id: str, params: dict | None = None, vars=None, order: int = 12) -> MultiSeries:
    params = params or {}
    if id == "exp":
        lam = params.get("scale", 1)
        vars = tuple(vars or ("x",))
        return _univariate(vars, order, lambda k: Fraction(1, factorial(k)) * lam ** k,
                           _field_for(lam))
    if id == "coshsqrt":
        return _univariate(tuple(vars or ("x",)), order, lambda k: Fraction(4 ** k, factorial(2 * k)))
    if id == "cossqrt":
        return _univariate(tuple(vars or ("x",)), order,
                           lambda k: Fraction((-4) ** k, factorial(2 * k)))
    if id == "fn":
        n = int(params.get("n", 1))
        if n < 1:
            raise InadmissibleParameter("fn needs n >= 1")
        return _univariate(tuple(vars or ("x",)), order,
                           lambda k: Fraction(n ** (n * k), factorial(n * k)))
    if id == "binompow":
        lam, b = params.get("scale", 1), params["b"]
        vars = tuple(vars or ("x",))
        x = _var(vars[0], vars, order, _field_for(lam, b))
        return binom_pow(1 - x * lam, -b)
    if id == "arctanratio":
        return _univariate(tuple(vars or ("u",)), order,
                           lambda k: Fraction((-1) ** k, 2 * k + 1))
    if id == "f4kernel":
        vars = tuple(vars or ("t", "x", "y"))
        t, x, y = (_var(v, vars, order) for v in vars)
        s = t * (x + y)
        den = 1 - 2 * s + t * t * (x - y) ** 2
        return (1 - s) * den.inv()
    if id == "h4kernel":
        vars = tuple(vars or ("x", "y"))
        a = params["a"]
        x, y = (_var(v, vars, order, _field_for(a)) for v in vars)
        return binom_pow((1 - y) ** 2 - 4 * x, -a / 2)
    if id == "f3arg":
        vars = tuple(vars or ("t", "x", "y"))
        t, x, y = (_var(v, vars, order) for v in vars)
        return t * t * x * y - t * x - t * y
    raise KeyError(f"unknown kernel {id!r}")


# --- direct sums -------------------------------------------------------------------

def _prod_poch(params, n):
    out = Fraction(1)
    for p in params:
        out = out * pochhammer(p, n)
    return out


def _checked_lower(*cs):
    for c in cs:
        check_lower(c)


def family_vars(id: str, params: dict | None = None, homogenized: bool = False):
    if id == "pfq":
        return ("x",)
    if id == "f1_multi":
        n = len(params["b"])
        xs = tuple(f"x{i}" for i in range(1, n + 1))
        return ("t",) + xs if homogenized else xs
    return ("t", "x", "y") if homogenized else ("x", "y")


def _direct(id, p, vars, order):
    fld = _field_for(*[v for v in p.values() if not isinstance(v, (list, tuple))],
                     *[w for v in p.values() if isinstance(v, (list, tuple)) for w in v])
    f = None
    if id == "pfq":
        a, c = list(p["a"]), list(p["c"])
        _checked_lower(*c)

        def f(e):
            (k,) = e
            return _prod_poch(a, k) / (_prod_poch(c, k) * factorial(k))
    elif id == "appell_f1":
        _checked_lower(p["c"])

        def f(e):
            j, k = e
            return (pochhammer(p["a"], j + k) / pochhammer(p["c"], j + k)
                    * pochhammer(p["b1"], j) * pochhammer(p["b2"], k)
                    / (factorial(j) * factorial(k)))
    elif id == "appell_f2":
        _checked_lower(p["c1"], p["c2"])

        def f(e):
            j, k = e
            return (pochhammer(p["a"], j + k) * pochhammer(p["b1"], j) * pochhammer(p["b2"], k)
                    / (factorial(j) * factorial(k) * pochhammer(p["c1"], j) * pochhammer(p["c2"], k)))
    elif id == "appell_f3":
        _checked_lower(p["c"])

        def f(e):
            j, k = e
            return (pochhammer(p["a1"], j) * pochhammer(p["b1"], j) * pochhammer(p["a2"], k)
                    * pochhammer(p["b2"], k)
                    / (pochhammer(p["c"], j + k) * factorial(j) * factorial(k)))
    elif id == "appell_f4":
        _checked_lower(p["c"], p["d"])

        def f(e):
            j, k = e
            return (pochhammer(p["a"], j + k) * pochhammer(p["b"], j + k)
                    / (factorial(j) * factorial(k) * pochhammer(p["c"], j) * pochhammer(p["d"], k)))
    elif id == "f1_multi":
        _checked_lower(p["c"])
        bs = list(p["b"])

        def f(e):
            out = pochhammer(p["a"], sum(e)) / pochhammer(p["c"], sum(e))
            for b, k in zip(bs, e):
                out = out * pochhammer(b, k) / factorial(k)
            return out
    elif id == "horn_g1":
        def f(e):
            j, k = e
            return (pochhammer(p["a"], j + k) / (factorial(j) * factorial(k))
                    * pochhammer_int(p["b1"], j - k) * pochhammer_int(p["b2"], k - j))
    elif id == "horn_g2":
        def f(e):
            j, k = e
            return (pochhammer_int(p["a"], j - k) * pochhammer_int(p["c"], k - j)
                    * pochhammer(p["b1"], j) * pochhammer(p["b2"], k)
                    / (factorial(j) * factorial(k)))
    elif id == "horn_g3":
        def f(e):
            j, k = e
            return (pochhammer_int(p["a"], 2 * j - k) * pochhammer_int(p["c"], 2 * k - j)
                    / (factorial(j) * factorial(k)))
    elif id == "h4":
        _checked_lower(p["c"], p["d"])

        def f(e):
            j, k = e
            return (pochhammer(p["a"], 2 * j + k) * pochhammer(p["b"], k)
                    / (factorial(j) * factorial(k) * pochhammer(p["c"], j) * pochhammer(p["d"], k)))
    elif id == "phi1":
        _checked_lower(p["c"])

        def f(e):
            j, k = e
            return (pochhammer(p["a"], j + k) * pochhammer(p["b"], j)
                    / (pochhammer(p["c"], j + k) * factorial(j) * factorial(k)))
    elif id == "phi2":
        _checked_lower(p["c"])

        def f(e):
            j, k = e
            return (pochhammer(p["b1"], j) * pochhammer(p["b2"], k)
                    / (pochhammer(p["c"], j + k) * factorial(j) * factorial(k)))
    elif id == "phi3":
        _checked_lower(p["c"])

        def f(e):
            j, k = e
            return pochhammer(p["b"], j) / (pochhammer(p["c"], j + k) * factorial(j) * factorial(k))
    if f is None:
        raise KeyError(f"unknown family {id!r}")
    return MultiSeries.from_terms(vars, order, {e: f(e) for e in _exps(vars, order)}, fld)


def _exps(vars, order):
    from .series import universe
    return universe(tuple(vars), order).exps


def homogenize(f: MultiSeries, tvar: str = "t") -> MultiSeries:
    """``F(x, y, ...) -> F(t x, t y, ...)`` in ``(t, x, y, ...)`` at order ``2N``."""
    terms = {(sum(e),) + tuple(e): v for e, v in f.terms().items()}
    out = MultiSeries.from_terms((tvar,) + f.vars, 2 * f.order, terms, f.field)
    out.reliable = 2 * f.reliable
    return out


def family_series(id: str, params: dict, vars=None, order: int = 12,
                  homogenized: bool = False) -> MultiSeries:
    """Direct-sum expansion of a family up to total degree ``order`` (the oracle)."""
    plain = family_vars(id, params, False)
    f = _direct(id, params, plain, order)
    if homogenized:
        f = homogenize(f)
    if vars is not None:
        f = f.rename(dict(zip(f.vars, vars)))
    return f


# --- representations -----------------------------------------------------------

def _hyp(f, a, c, var):
    return hyp_apply(f, HypParams(a, c, var))


def f1_multi_series(a, c, b, slopes=None, order: int = 12, homogenized: bool = True):
    """``H_c^a(t) prod_i (1 - s_i t x_i)^{-b_i}``.

    With ``homogenized=False`` the result is the univariate series in ``t``
    with every ``x_i`` replaced by its slope (the lines ``x_i = s_i x``).
    """
    n = len(b)
    if not 1 <= n <= 3 and homogenized:
        raise InadmissibleParameter("homogenized multivariate F1 supports n <= 3")
    if n > 4:
        raise InadmissibleParameter("at most 4 slopes")
    check_lower(c)
    slopes = list(slopes) if slopes is not None else [1] * n
    fld = _field_for(a, c, *b, *slopes)
    if homogenized:
        vars = ("t",) + tuple(f"x{i}" for i in range(1, n + 1))
        N = 2 * order
        t = _var("t", vars, N, fld)
        g = MultiSeries.one(vars, N, fld)
        for i, (bi, si) in enumerate(zip(b, slopes)):
            xi = _var(vars[i + 1], vars, N, fld)
            g = g * binom_pow(1 - t * xi * si, -bi)
    else:
        vars = ("x",)
        x = _var("x", vars, order, fld)
        g = MultiSeries.one(vars, order, fld)
        for bi, si in zip(b, slopes):
            g = g * binom_pow(1 - x * si, -bi)
    return _hyp(g, a, c, vars[0])


def _exp_of(arg: MultiSeries):
    e = kernel_series("exp", {}, ("z",), arg.order)
    return e.compose({"z": arg})


def rep_series(id: str, params: dict, order: int = 12) -> MultiSeries:
    """Hypergeometrization side of the representation of a family."""
    p = params
    if id == "pfq":
        a, c = list(p["a"]), list(p["c"])
        P, Q = len(a), len(c)
        fld = _field_for(*a, *c)
        vars = ("x",)
        if P == Q + 1:
            x = _var("x", vars, order, fld)
            f = binom_pow(1 - x, -a[-1])
            for ai, ci in zip(a[:-1], c):
                f = _hyp(f, ai, ci, "x")
            return f
        if P == 0 or P > Q:
            raise InadmissibleParameter("representation needs 1 <= p <= q + 1")
        n = Q - P + 1
        f = kernel_series("fn", {"n": n}, vars, order)
        uppers = [Fraction(k, n) for k in range(1, n)] + a
        for ai, ci in reversed(list(zip(uppers, c))):
            f = _hyp(f, ai, ci, "x")
        return f
    if id == "appell_f1":
        return f1_multi_series(p["a"], p["c"], [p["b1"], p["b2"]], order=order).rename(
            {"x1": "x", "x2": "y"})
    if id == "f1_multi":
        return f1_multi_series(p["a"], p["c"], list(p["b"]), p.get("slopes"), order=order)
    if id == "appell_f2":
        fld = _field_for(*p.values())
        vars = ("x", "y")
        x, y = (_var(v, vars, order, fld) for v in vars)
        f = binom_pow(1 - x - y, -p["a"])
        return _hyp(_hyp(f, p["b2"], p["c2"], "y"), p["b1"], p["c1"], "x")
    if id == "appell_f3":
        vars, N = ("t", "x", "y"), 2 * order
        u = kernel_series("f3arg", {}, vars, N)
        f = kernel_series("arctanratio", {}, ("u",), N).compose({"u": u})
        f = _hyp(f, Fraction(3, 2), p["c"], "t")
        f = _hyp(f, p["b2"], Fraction(1, 2), "y")
        f = _hyp(f, p["a2"], 1, "y")
        f = _hyp(f, p["b1"], Fraction(1, 2), "x")
        return _hyp(f, p["a1"], 1, "x")
    if id == "appell_f4":
        vars, N = ("t", "x", "y"), 2 * order
        f = kernel_series("f4kernel", {}, vars, N)
        f = _hyp(f, p["a"], 1, "t")
        f = _hyp(f, p["b"], Fraction(1, 2), "t")
        f = _hyp(f, Fraction(1, 2), p["d"], "y")
        return _hyp(f, Fraction(1, 2), p["c"], "x")
    if id == "horn_g2":
        a, c = p["a"], p["c"]
        fld = _field_for(*p.values())
        vars = ("x", "y")
        x, y = (_var(v, vars, order, fld) for v in vars)
        f = binom_pow(1 + y, -c) * binom_pow(1 + x, -a) * binom_pow(1 - x * y, c + a - 1)
        return _hyp(_hyp(f, p["b2"], 1 - a, "y"), p["b1"], 1 - c, "x")
    if id == "h4":
        f = kernel_series("h4kernel", {"a": p["a"]}, ("x", "y"), order)
        f = _hyp(f, (p["a"] + 1) / 2, p["c"], "x")
        return _hyp(f, p["b"], p["d"], "y")
    if id == "phi1":
        vars, N = ("t", "x", "y"), 2 * order
        fld = _field_for(*p.values())
        t, x, y = (_var(v, vars, N, fld) for v in vars)
        f = _exp_of(t * x) * binom_pow(1 - t * y, -p["b"])
        return _hyp(f, p["a"], p["c"], "t")
    if id == "phi2":
        vars, N = ("t", "x", "y"), 2 * order
        c, b1, b2 = p["c"], p["b1"], p["b2"]
        t, x, y = (_var(v, vars, N) for v in vars)
        f = _exp_of(t * (x - y))
        f = _hyp(f, b1, c - b2, "x")
        return _hyp(f, c - b2, c, "t")
    if id == "phi3":
        vars, N = ("t", "x", "y"), 2 * order
        c, b = p["c"], p["b"]
        t, x, y = (_var(v, vars, N) for v in vars)
        ch = kernel_series("coshsqrt", {}, ("z",), N).compose({"z": t * y})
        f = ch * _exp_of(-(t * x))
        f = _hyp(f, Fraction(1, 2), c - b, "y")
        return _hyp(f, c - b, c, "t")
    if id in ("horn_g1", "horn_g3"):
        raise InadmissibleParameter(f"no hypergeometrization form registered for {id}")
    raise KeyError(f"unknown family {id!r}")


def rep_oracle(id: str, params: dict, order: int = 12, literal: bool = False) -> MultiSeries:
    """The direct-sum side that ``rep_series(id)`` must reproduce.

    The exponential/binomial kernel of ``phi1`` puts ``(b)_k`` on the second
    variable while the defining sum carries ``(b)_j``; unless ``literal`` is
    set the sum is evaluated with its two arguments exchanged.
    """
    hom = id in HOMOGENIZED
    f = family_series(id, params, order=order, homogenized=hom)
    if id == "phi1" and not literal:
        f = f.rename({"x": "y", "y": "x"}).with_vars(("t", "x", "y"))
    if id == "appell_f1":
        f = f.rename({"x1": "x", "x2": "y"}) if "x1" in f.vars else f
    if id in ("phi2", "phi3"):
        t, x, y = (_var(v, f.vars, f.order) for v in f.vars)
        f = _exp_of(-(t * (y if id == "phi2" else x))) * f
    return f
