"""Catalog of identity checks.

Every builder takes two parameter dicts ``p`` and ``q`` plus the order ``N``.
The left side is built from ``p`` and the right side from ``q``; a normal
check passes the same dict twice, the negative control bumps one entry of
``q`` only.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as _field
from fractions import Fraction
from typing import Callable

from .. import __version__
from ..field import QQ, format_field, quad_field
from ..hypop import hyp_apply, HypParams
from ..numeval import (NumericCheck, alternating_pfq, bessel_j, f1_at_y_one, gamma_complex,
                       gauss_sum_target, kummer_minus_one_target, pfq_at_one, pfq_partial_sum,
                       rgamma_complex)
from ..opexpr import (QT_NAMES, conj_chains, eulergen_rewrite, eulergenm_rewrite, euler_rewrite,
                      gensubs_chains, pfaff_rewrite, power_chains, qt_chains, theorem_main_chains)
from ..series import MultiSeries
from ..specfun import family_series, kernel_series, rep_oracle, rep_series

__all__ = ["IdentityCase", "registry_list", "get_case", "registry_hash", "CASES"]

F = Fraction
HALF = F(1, 2)
THIRD = F(1, 3)


@dataclass(frozen=True)
class IdentityCase:
    id: str
    kind: str  # series | operator | numeric
    params: tuple
    build: Callable = _field(repr=False)
    status: str = "theorem"  # theorem | evidence | corrected-typo | literal
    field: str = "QQ"
    bump: str | None = None
    draw: dict = _field(default_factory=dict, repr=False)
    derive: Callable | None = _field(default=None, repr=False)
    admissible: Callable | None = _field(default=None, repr=False)
    fixed: tuple = _field(default=(), repr=False)  # parameter dicts used for the first draws
    note: str = ""
    possibly_new: bool = False
    template: bool = False

    @property
    def expected(self) -> str:
        return "fail" if self.status == "literal" else "pass"

    @property
    def bump_param(self) -> str:
        return self.bump or self.params[0]

    def describe(self) -> dict:
        return {"id": self.id, "kind": self.kind, "params": list(self.params),
                "status": self.status, "field": self.field, "bump": self.bump_param,
                "possibly_new": self.possibly_new, "template": self.template,
                "note": self.note}


# --- small builders -----------------------------------------------------------------

def _v(name, vars, N, fld=QQ):
    return MultiSeries.var(name, vars, N, fld)


def _uni(N, fld=QQ):
    return _v("x", ("x",), N, fld)


def _biv(N, fld=QQ, names=("x", "y")):
    return _v(names[0], names, N, fld), _v(names[1], names, N, fld)


def fam(id, params, N, **args):
    """Family ``id`` evaluated at the given argument series."""
    return family_series(id, params, order=N).compose(args)


def pfq(a, c, arg):
    return fam("pfq", {"a": list(a), "c": list(c)}, arg.order, x=arg)


def f1(a, c, b1, b2, X, Y):
    return fam("appell_f1", {"a": a, "c": c, "b1": b1, "b2": b2}, X.order, x=X, y=Y)


def f2(a, b1, b2, c1, c2, X, Y):
    return fam("appell_f2", {"a": a, "b1": b1, "b2": b2, "c1": c1, "c2": c2}, X.order, x=X, y=Y)


def pw(base, e):
    return base.pow_field(e)


def H(f, a, c, var="x"):
    return hyp_apply(f, HypParams(a, c, var))


# --- representation cases -------------------------------------------------------------

def _rep(id, pack=lambda p: p, literal=False):
    def build(p, q, N):
        return rep_series(id, pack(p), N), rep_oracle(id, pack(q), N, literal=literal)
    return build


def _pfq_pack(m, k):
    def pack(p):
        return {"a": [p[f"a{i}"] for i in range(1, m + 1)],
                "c": [p[f"c{i}"] for i in range(1, k + 1)]}
    return pack


def _b_2f1(p, q, N):
    x = _uni(N)
    return H(pw(1 - x, -p["b"]), p["a"], p["c"]), pfq([q["a"], q["b"]], [q["c"]], x)


def _b_1f1(p, q, N):
    x = _uni(N)
    return H(kernel_series("exp", {}, ("x",), N), p["a"], p["c"]), pfq([q["a"]], [q["c"]], x)


def _b_bessel(p, q, N):
    x = _uni(N)
    return H(kernel_series("cossqrt", {}, ("x",), N), HALF, p["c"]), pfq([], [q["c"]], -x)


def _b_kummer(p, q, N):
    x = _uni(N)
    e = kernel_series("exp", {}, ("x",), N)
    return pfq([p["a"]], [p["c"]], x), e * pfq([q["c"] - q["a"]], [q["c"]], -x)


def _b_g1f4(p, q, N):
    x, y = _biv(N)
    lhs = fam("horn_g1", {"a": p["a"], "b1": p["b1"], "b2": p["b2"]}, N, x=x, y=y)
    a, b1, b2 = q["a"], q["b1"], q["b2"]
    s = (1 + x + y).inv()
    rhs = pw(1 + x + y, -a) * fam("appell_f4", {"a": a, "b": 1 - b1 - b2, "c": 1 - b1, "d": 1 - b2},
                                  N, x=y * s, y=x * s)
    return lhs, rhs


# --- transforms ----------------------------------------------------------------------

def _b_f1diag(p, q, N):
    x = _uni(N)
    return (f1(p["a"], p["c"], p["b1"], p["b2"], x, x),
            pfq([q["a"], q["b1"] + q["b2"]], [q["c"]], x))


def _b_f1minus(p, q, N):
    x = _uni(N)
    a, c, b = q["a"], q["c"], q["b"]
    return (f1(p["a"], p["c"], p["b"], p["b"], x, -x),
            pfq([a / 2, (a + 1) / 2, b], [c / 2, (c + 1) / 2], x * x))


def _b_f2repr(p, q, N):
    x, y = _biv(N)
    lhs = f2(p["a"], p["b1"], p["b2"], p["c1"], p["c2"], x, y)
    inner = pw(1 - x, -q["a"]) * pfq([q["a"], q["b2"]], [q["c2"]], y * (1 - x).inv())
    return lhs, H(inner, q["b1"], q["c1"], "x")


def _b_f1tof2(p, q, N):
    x, s = _biv(N, names=("x", "s"))
    lhs = f1(p["a"], p["c"], p["b1"], p["b2"], x, x * (1 - s).inv())
    a, c, b1, b2 = q["a"], q["c"], q["b1"], q["b2"]
    rhs = pw(1 - s, b2) * f2(b1 + b2, a, b2, c, b1 + b2, x, s)
    return lhs, rhs


def _b_pfaff(p, q, N):
    x = _uni(N)
    a, b, c = q["a"], q["b"], q["c"]
    return (pfq([p["a"], p["b"]], [p["c"]], x),
            pw(1 - x, -a) * pfq([a, c - b], [c], x * (x - 1).inv()))


def _b_euler(p, q, N):
    x = _uni(N)
    a, b, c = q["a"], q["b"], q["c"]
    return (pfq([p["a"], p["b"]], [p["c"]], x),
            pw(1 - x, c - a - b) * pfq([c - a, c - b], [c], x))


def _b_f1pfaff(p, q, N):
    x, y = _biv(N)
    a, c, b1, b2 = q["a"], q["c"], q["b1"], q["b2"]
    d = (x - 1).inv()
    return (f1(p["a"], p["c"], p["b1"], p["b2"], x, y),
            pw(1 - x, -a) * f1(a, c, c - b1 - b2, b2, x * d, (x - y) * d))


def _b_f1pfaffgen(p, q, N):
    vars = ("x1", "x2", "x3")
    xs = [_v(v, vars, N) for v in vars]
    lhs = fam("f1_multi", {"a": p["a"], "c": p["c"], "b": [p["b1"], p["b2"], p["b3"]]}, N,
              x1=xs[0], x2=xs[1], x3=xs[2])
    a, c, b1, b2, b3 = q["a"], q["c"], q["b1"], q["b2"], q["b3"]
    d = (xs[0] - 1).inv()
    rhs = pw(1 - xs[0], -a) * fam("f1_multi", {"a": a, "c": c, "b": [c - b1 - b2 - b3, b2, b3]}, N,
                                  x1=xs[0] * d, x2=(xs[0] - xs[1]) * d, x3=(xs[0] - xs[2]) * d)
    return lhs, rhs


def _b_2f1q(p, q, N):
    x = _uni(N)
    a, b = q["a"], q["b"]
    z = x * (1 - x).inv()
    return (pfq([p["a"], p["b"]], [2 * p["b"]], 2 * x),
            pw(1 - x, -a) * pfq([a / 2, (a + 1) / 2], [b + HALF], z * z))


def _roots_slopes(n):
    """Slopes ``1 - z_k`` (k = 1..n-1) for the n-th roots of unity, with their field."""
    if n == 2:
        return [F(2)], QQ
    if n == 3:
        K = quad_field(-3)
        w = K.coerce(F(-1, 2)) + K.sqrt * HALF  # exp(2 pi i / 3)
        return [1 - w, 1 - w.conjugate()], K
    if n == 4:
        K = quad_field(-1)
        i = K.sqrt
        return [1 - i, K.coerce(2), 1 + i], K
    raise ValueError(n)


def _b_f1to3f2(p, q, N):
    K = quad_field(-3)
    z = K.coerce(F(3, 2)) + K.sqrt * HALF  # z + zbar = 3, z zbar = 3
    x = _uni(N, K)
    lhs = f1(p["a"], 3 * p["b"], p["b"], p["b"], x * z, x * z.conjugate())
    a, b = q["a"], q["b"]
    u = x * (x - 1).inv()
    rhs = pw(1 - x, -a) * pfq([a / 3, (a + 1) / 3, (a + 2) / 3], [b + THIRD, b + 2 * THIRD], u ** 3)
    return lhs, rhs


def _b_gentonfn(n):
    def build(p, q, N):
        slopes, K = _roots_slopes(n)
        x = _uni(N, K)
        names = [f"x{i}" for i in range(1, n)]
        args = {v: x * s for v, s in zip(names, slopes)}
        lhs = fam("f1_multi", {"a": p["a"], "c": n * p["b"], "b": [p["b"]] * (n - 1)}, N, **args)
        a, b = q["a"], q["b"]
        u = x * (x - 1).inv()
        rhs = pw(1 - x, -a) * pfq([(a + k) / n for k in range(n)],
                                  [b + F(k, n) for k in range(1, n)], u ** n)
        return lhs, rhs
    return build


def _b_f1alt(p, q, N):
    x, y = _biv(N)
    a, c, b1, b2 = q["a"], q["c"], q["b1"], q["b2"]
    inner = pw(1 - x, -a) * pfq([a, b2], [c], (y - x) * (1 - x).inv())
    return f1(p["a"], p["c"], p["b1"], p["b2"], x, y), H(inner, b1, c - b2, "x")


def _b_f2to2f1(literal):
    def build(p, q, N):
        x, y = _biv(N)
        second = p["b1"] if literal else p["b2"]
        lhs = f2(p["a"], p["b1"], second, p["a"], p["a"], x, y)
        a, b1, b2 = q["a"], q["b1"], q["b2"]
        rhs = pw(1 - x, -b1) * pw(1 - y, -b2) * pfq([b1, b2], [a], x * y * ((x - 1) * (y - 1)).inv())
        return lhs, rhs
    return build


def _b_g2f2(p, q, N):
    x, y = _biv(N)
    lhs = fam("horn_g2", {k: p[k] for k in ("a", "c", "b1", "b2")}, N, x=x, y=y)
    a, c, b1, b2 = q["a"], q["c"], q["b1"], q["b2"]
    rhs = pw(1 + x, -b1) * pw(1 + y, -b2) * f2(1 - c - a, b1, b2, 1 - c, 1 - a,
                                               x * (x + 1).inv(), y * (y + 1).inv())
    return lhs, rhs


def _b_g2repr(p, q, N):
    pk = lambda d: {k: d[k] for k in ("a", "c", "b1", "b2")}
    return rep_series("horn_g2", pk(p), N), rep_oracle("horn_g2", pk(q), N)


def _b_3f2euler(p, q, N):
    x = _uni(N)
    a1, a2, a3, c1, c2 = (q[k] for k in ("a1", "a2", "a3", "c1", "c2"))
    s = c1 + c2 - a1 - a2 - a3
    inner = pw(1 - x, -(c1 - a1)) * pfq([a1, c2 - a2, c2 - a3], [s + a1, c2], x)
    return (pfq([p["a1"], p["a2"], p["a3"]], [p["c1"], p["c2"]], x),
            pw(1 - x, s) * H(inner, s + a1, c1))


def _b_2f1q1(p, q, N):
    x = _uni(N)
    a, b = q["a"], q["b"]
    return (pfq([p["a"], p["b"]], [p["a"] - p["b"] + 1], x),
            pw(1 - x, -a) * pfq([a / 2, a / 2 - b + HALF], [a - b + 1], -4 * x * ((1 - x) ** 2).inv()))


def _b_2f1q2(p, q, N):
    x = _uni(N)
    a, c = q["a"], q["c"]
    return (pw(1 - x, p["a"] / 2) * pfq([p["a"], p["c"] / 2], [p["c"]], x),
            pfq([a / 2, (c - a) / 2], [(c + 1) / 2], x * x * (4 * (x - 1)).inv()))


def _b_3f2quad(literal):
    def build(p, q, N):
        x = _uni(N)
        a, b, c = p["a"], p["b"], p["c"]
        lhs = pw(1 - x, c + a - 1) * pfq([c + a - 1, a + b, a], [c - b, c], x)
        a, b, c = q["a"], q["b"], q["c"]
        first = (c - a) / 2 - b if literal else c - a - b
        rhs = pfq([first, (c + a) / 2, (a + c - 1) / 2], [c - b, c], -4 * x * ((1 - x) ** 2).inv())
        return lhs, rhs
    return build


def _b_f1q(literal):
    def build(p, q, N):
        x = _uni(N)
        a, c, t = p["a"], p["c"], p["t"]
        tp, tm = p["tau_plus"], p["tau_minus"]
        beta = (a + c - 1) / 2
        lhs = f1(a, c, beta, beta, x * tp, x * tm)
        a, c, t = q["a"], q["c"], q["t"]
        beta = (a + c - 1) / 2
        den = (1 + x) ** 2 if literal else (1 - x) ** 2
        y = -4 * x * den.inv()
        rhs = pw(1 - x, 1 - a - c) * f1(beta, c, (c - a) / 2, a, y, y * t)
        return lhs, rhs
    return build


def _b_semicubic4f3(p, q, N):
    x = _uni(N)
    a, al = p["a"], p["alpha"]
    u = x * (x - 1).inv()
    lhs = pw(1 - x, -3 * al) * pfq([a / 3, (a + 1) / 3, (a + 2) / 3, al],
                                   [al + (1 - a) / 3, al + (2 - a) / 3, al + (3 - a) / 3], u ** 3)
    a, al = q["a"], q["alpha"]
    y = _v("y", ("y",), N)
    inner = pw(1 - y, -(3 * al - 2 * a + 1) / 2) * pfq([a, al], [3 * al / 2], y * F(3, 4))
    rhs = H(inner, 3 * al / 2, 3 * al - a + 1, "y").compose({"y": 4 * x * (1 - x)})
    return lhs, rhs


def _b_f1semicubic(literal):
    def build(p, q, N):
        x = _uni(N)
        a = p["a"]
        u = x * ((x + 1) if literal else (x - 1)).inv()
        lhs = pw(1 - x, -2 * a) * pfq([a / 3, 2 * a / 3], [a / 3 + 1], u ** 3)
        a = q["a"]
        rhs = f1(a, a + 1, HALF, 2 * a / 3, 4 * x * (1 - x), 3 * x * (1 - x))
        return lhs, rhs
    return build


def _b_cubicerd(literal):
    def build(p, q, N):
        x = _uni(N)
        a = p["a"]
        lhs = pfq([a, a + THIRD], [2 * a], 2 * x * (3 + x * x) * ((1 + x) ** 3).inv())
        a = q["a"]
        w = 1 + x * x * THIRD
        inner = (1 - x) ** 2 * pw(w, -a - 1)
        if literal:
            pre = pw(1 - x, 1 - a) * pw(1 + x, -3 * a - 3)
        else:
            pre = (1 - x).inv() * pw(1 + x, 3 * a - 1)
        return lhs, pre * pw(w, 1 - 2 * a) * H(inner, -a, 2 * a)
    return build


# --- operator identities ------------------------------------------------------------

def _op(make):
    """Operator builder: lhs chain from ``p``, rhs chain and substitution from ``q``."""
    def build(p, q, N):
        lhs = make(p, N)[0]
        _, rhs, sub = make(q, N)
        return lhs, rhs, sub
    return build


def _seq(p, names):
    cs = [p[n] for n in names]
    return lambda j: sum((c * j ** k for k, c in enumerate(cs)), F(0))


def _eulergen(n, reverse):
    def make(p, N):
        return eulergen_rewrite(_seq(p, ("a0", "a1", "a2")), _seq(p, ("c0", "c1")), n, N,
                                reverse=reverse)
    return make


def _eulergenm(n, m):
    def make(p, N):
        return eulergenm_rewrite(_seq(p, ("a0", "a1", "a2")), p["alpha"], n, m, N)
    return make


def _gensubs(n):
    def make(p, N):
        x = _uni(N)
        y = p["y1"] * x + p["y2"] * x ** 2 + p["y3"] * x ** 3
        return gensubs_chains(y, p["a"], n, N)
    return make


def _fnsubs(m, evidence=False):
    def make(p, N):
        return theorem_main_chains(p.get("m", m), p["a"], p["c"], N, evidence=evidence)
    return make


def _power(n):
    def make(p, N):
        return power_chains(n, p["a"], p["c"], N)
    return make


def _argscale(p, N):
    return power_chains(1, p["a"], p["c"], N, alpha=p["alpha"])


# --- numeric identities ---------------------------------------------------------------

def _n_gauss(p, q, N):
    return NumericCheck("2F1(1)", lambda: pfq_at_one(p["a"], p["b"], p["c"]),
                        lambda: gauss_sum_target(q["a"], q["b"], q["c"]), tolerance=1e-8,
                        stop_rule="partial sums at 64*2^i, i<7, extrapolated in n^-(s+k), s=c-a-b")


def _n_f1x1(p, q, N):
    x = float(p["x"])
    a, c, b1, b2 = (q[k] for k in ("a", "c", "b1", "b2"))
    return NumericCheck(
        "F1(x,1)", lambda: f1_at_y_one(p["a"], p["c"], p["b1"], p["b2"], x),
        lambda: gauss_sum_target(a, b2, c) * pfq_partial_sum([a, b1], [c - b2], float(q["x"])),
        tolerance=1e-7,
        stop_rule="outer: three terms below 1e-17 relative; inner at y=1 extrapolated")


def _gamma_ratio_34(a, literal):
    a = float(a)
    lead = 4 ** (2 / 3) if literal else 4 ** (2 * a / 3)
    return (lead * gamma_complex(1 + a / 3) * gamma_complex(a + 0.5)
            * rgamma_complex(0.5 + a / 3) * rgamma_complex(1 + a))


def _n_34(literal):
    def build(p, q, N):
        a = float(p["a"])
        return NumericCheck("2F1(3/4)" + ("[literal]" if literal else ""),
                            lambda: pfq_partial_sum([a, 2 * a / 3], [a + 0.5], 0.75),
                            lambda: _gamma_ratio_34(q["a"], literal), tolerance=1e-8)
    return build


def _n_kummer_m1(p, q, N):
    return NumericCheck("2F1(-1)", lambda: alternating_pfq([p["a"], p["b"]], [1 + p["a"] - p["b"]]),
                        lambda: kummer_minus_one_target(q["a"], q["b"]), tolerance=1e-8,
                        stop_rule="400 partial sums, 40 passes of pairwise averaging")


def _n_bessel(p, q, N):
    x = float(p["x"])

    def closed():
        c, xx = float(q["c"]), float(q["x"])
        return gamma_complex(c) * xx ** ((1 - c) / 2) * bessel_j(c - 1, 2 * xx ** 0.5)

    return NumericCheck("Bessel-closed", lambda: pfq_partial_sum([], [p["c"]], -x), closed,
                        tolerance=1e-8)


# --- draws ------------------------------------------------------------------------------

def _pos(lo_num=1, hi_num=60):
    return lambda rng: F(rng.randint(lo_num, hi_num), rng.randint(2, 20))


def _small_pos(rng):
    return F(rng.randint(1, 30), rng.randint(2, 20))


def _int_shift(rng):
    return rng.randint(-3, 3)


def _num_real(p, *names):
    return [float(p[n]) for n in names]


def _gauss_ok(p):
    a, b, c = _num_real(p, "a", "b", "c")
    return c - a - b >= 0.1 and c > 0


def _f1x1_ok(p):
    a, c, b1, b2 = _num_real(p, "a", "c", "b1", "b2")
    return c - a - b2 >= 0.1 and c > 0 and c - b2 > 0


def _kummer_ok(p):
    a, b = _num_real(p, "a", "b")
    return b <= 0.5 and 1 + a - b > 0 and abs(a) <= 3


def _build_cases():
    C = []

    def add(*args, **kw):
        C.append(IdentityCase(*args, **kw))

    # representations
    add("2F1", "series", ("a", "b", "c"), _b_2f1)
    add("1F1", "series", ("a", "c"), _b_1f1)
    add("Bessel", "series", ("c",), _b_bessel, note="checked in its 0F1 form")
    for m, k in ((1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)):
        names = tuple(f"a{i}" for i in range(1, m + 1)) + tuple(f"c{i}" for i in range(1, k + 1))
        add(f"pfqrepr[p={m},q={k}]", "series", names, _rep("pfq", _pfq_pack(m, k)))
    add("F1", "series", ("a", "c", "b1", "b2"), _rep("appell_f1"))
    add("F2", "series", ("a", "b1", "b2", "c1", "c2"), _rep("appell_f2"))
    add("F3", "series", ("a1", "b1", "a2", "b2", "c"), _rep("appell_f3"))
    add("F4", "series", ("a", "b", "c", "d"), _rep("appell_f4"))
    add("F1multi[n=3]", "series", ("a", "c", "b1", "b2", "b3"),
        _rep("f1_multi", lambda p: {"a": p["a"], "c": p["c"], "b": [p["b1"], p["b2"], p["b3"]]}))
    add("G2repr", "series", ("a", "c", "b1", "b2"), _b_g2repr, bump="b1")
    add("G1toF4", "series", ("a", "b1", "b2"), _b_g1f4)
    add("H4repr", "series", ("a", "c", "b", "d"), _rep("h4"))
    add("Phi1repr", "series", ("a", "c", "b"), _rep("phi1"), status="corrected-typo",
        note="defining sum evaluated with arguments exchanged (b belongs to the second variable)")
    add("Phi1repr[literal]", "series", ("a", "c", "b"), _rep("phi1", literal=True),
        status="literal", note="displayed sum with (b)_j on the first variable")
    add("Phi2repr", "series", ("c", "b1", "b2"), _rep("phi2"), bump="b1")
    add("Phi3repr", "series", ("c", "b"), _rep("phi3"), bump="b")
    add("Kummer", "series", ("a", "c"), _b_kummer)
    # elementary reductions and transforms
    add("F1toF1diag", "series", ("a", "c", "b1", "b2"), _b_f1diag)
    add("F1(x,-x)", "series", ("a", "c", "b"), _b_f1minus)
    add("F2repr", "series", ("a", "b1", "b2", "c1", "c2"), _b_f2repr)
    add("F1toF2", "series", ("a", "c", "b1", "b2"), _b_f1tof2,
        note="checked on the curve y = x/(1-s), where both sides are power series in (x, s)")
    add("Pfaff", "series", ("a", "b", "c"), _b_pfaff)
    add("Euler", "series", ("a", "b", "c"), _b_euler)
    add("F1Pfaff", "series", ("a", "c", "b1", "b2"), _b_f1pfaff)
    add("F1Pfaffgen[n=3]", "series", ("a", "c", "b1", "b2", "b3"), _b_f1pfaffgen)
    add("2F1q", "series", ("a", "b"), _b_2f1q)
    add("F1to3F2", "series", ("a", "b"), _b_f1to3f2, field="Q(sqrt(-3))")
    for n, fld in ((2, "QQ"), (3, "Q(sqrt(-3))"), (4, "Q(sqrt(-1))")):
        add(f"F1gentonFn1[n={n}]", "series", ("a", "b"), _b_gentonfn(n), field=fld)
    add("F1alt", "series", ("a", "c", "b1", "b2"), _b_f1alt)
    add("F2to2F1", "series", ("a", "b1", "b2"), _b_f2to2f1(False), status="corrected-typo",
        note="left side F2(a; b1, b2; a, a; x, y)")
    add("F2to2F1[literal]", "series", ("a", "b1", "b2"), _b_f2to2f1(True), status="literal",
        note="left side F2(a; b1, b1; a, a; x, y) as printed")
    add("G2toF2", "series", ("a", "c", "b1", "b2"), _b_g2f2, bump="b1", possibly_new=True)
    add("3F2Euler", "series", ("a1", "a2", "a3", "c1", "c2"), _b_3f2euler)
    add("2F1Q1", "series", ("a", "b"), _b_2f1q1)
    add("2F1Q2", "series", ("a", "c"), _b_2f1q2)
    add("3F2quadratic", "series", ("a", "b", "c"), _b_3f2quad(False), status="corrected-typo",
        note="first upper parameter on the right read as c-a-b")
    add("3F2quadratic[literal]", "series", ("a", "b", "c"), _b_3f2quad(True), status="literal",
        note="first upper parameter (c-a)/2-b as printed")
    tdraw = {"derive": lambda p, rng: _tau(rng)}
    add("F1Q", "series", ("a", "c"), _b_f1q(False), status="corrected-typo", possibly_new=True,
        note="y = -4x/(1-x)^2; tau from tau+ + tau- = 2-4t, tau+ tau- = 1 with t(t-1) a square",
        **tdraw)
    add("F1Q[literal]", "series", ("a", "c"), _b_f1q(True), status="literal",
        note="y = -4x/(1+x)^2 as printed", **tdraw)
    add("semicubic4F3", "series", ("a", "alpha"), _b_semicubic4f3)
    add("F1semicubic", "series", ("a",), _b_f1semicubic(False), status="corrected-typo",
        possibly_new=True, note="argument (x/(x-1))^3")
    add("F1semicubic[literal]", "series", ("a",), _b_f1semicubic(True), status="literal",
        note="argument (x/(x+1))^3 as printed")
    add("2F1cubicerd", "series", ("a",), _b_cubicerd(False), status="corrected-typo",
        note="prefactor (1-x)^-1 (1+x)^(3a-1) (1+x^2/3)^(1-2a)")
    add("2F1cubicerd[literal]", "series", ("a",), _b_cubicerd(True), status="literal",
        note="prefactor (1-x)^(1-a) (1+x)^(-3a-3) as printed")

    # operator identities
    add("Pfaffproperty", "operator", ("a", "c"), _op(lambda p, N: pfaff_rewrite(HypParams(p["a"], p["c"]), N)))
    add("Eulerproperty", "operator", ("a", "b", "c"), _op(lambda p, N: euler_rewrite(p["a"], p["b"], p["c"], N)))
    seq = ("a0", "a1", "a2", "c0", "c1")
    nonzero = (-3, -2, -1, 1, 2, 3)  # n = 0 is the empty product on both sides
    for n in nonzero:
        add(f"Eulergen[n={n}]", "operator", seq, _op(_eulergen(n, False)))
        add(f"Eulergenrev[n={n}]", "operator", seq, _op(_eulergen(n, True)))
    for m in (-2, -1, 1, 2):
        add(f"Eulergenm[n=2,m={m}]", "operator", ("a0", "a1", "a2", "alpha"), _op(_eulergenm(2, m)))
    for name in QT_NAMES:
        add(name, "operator", ("a", "c"), _op(lambda p, N, name=name: qt_chains(name, p["a"], p["c"], N)))
    for n in nonzero:
        add(f"gensubsder[n={n}]", "operator", ("a", "y1", "y2", "y3"), _op(_gensubs(n)))
    add("argscaling", "operator", ("a", "c", "alpha"), _op(_argscale))
    add("secondpower", "operator", ("a", "c"), _op(_power(2)))
    add("nthpower[n=3]", "operator", ("a", "c"), _op(_power(3)))
    int_regime = {"derive": lambda p, rng: {"a": p["c"] + _int_shift(rng)}}
    for m in (-2, -1, 1, 2):
        add(f"Fnsubs[m={m}]", "operator", ("a", "c"), _op(_fnsubs(m)))
    for m in (-4, -3, -2, -1, 1, 2, 3, 4):
        add(f"Fnsubs[m={m},int]", "operator", ("c",), _op(_fnsubs(m)), bump="a", **int_regime)
    for m in (-4, -3, 3, 4):
        add(f"Fnsubs[m={m},generic]", "operator", ("a", "c"), _op(_fnsubs(m, True)),
            status="evidence")
    add("Fnsubs", "operator", ("a", "c"), _op(_fnsubs(None, True)), template=True,
        note="template; needs m")
    for w in (1, 2):
        add(f"conj{w}eq[int]", "operator", ("c",),
            _op(lambda p, N, w=w: conj_chains(w, p["a"], p["c"], N)), bump="a", **int_regime)
        add(f"conj{w}eq[generic]", "operator", ("a", "c"),
            _op(lambda p, N, w=w: conj_chains(w, p["a"], p["c"], N, evidence=True)),
            status="evidence")
    add("conj2eq[literal]", "operator", ("c",),
        _op(lambda p, N: conj_chains(2, p["a"], p["c"], N, literal=True)), status="literal",
        bump="a", note="right prefactor (1+x)^(3-3a+c) as printed", **int_regime)

    # numeric identities
    add("2F1(1)", "numeric", ("a", "b", "c"), _n_gauss, field="float", admissible=_gauss_ok,
        fixed=({"a": HALF, "b": THIRD, "c": F(2)},))
    add("F1(x,1)", "numeric", ("a", "c", "b1", "b2"), _n_f1x1, field="float",
        admissible=_f1x1_ok, derive=lambda p, rng: {"x": F(3, 10)}, bump="b1",
        fixed=({"a": THIRD, "c": F(3), "b1": F(1, 4), "b2": F(1, 5), "x": F(3, 10)},))
    fixed34 = ({"a": F(3, 4)}, {"a": F(3, 2)})
    add("2F1(3/4)", "numeric", ("a",), _n_34(False), field="float", status="corrected-typo",
        draw={"a": _pos()}, fixed=fixed34, note="leading constant 4^(2a/3)")
    add("2F1(3/4)[literal]", "numeric", ("a",), _n_34(True), field="float", status="literal",
        draw={"a": _pos()}, fixed=fixed34, note="leading constant 4^(2/3) as printed")
    add("2F1(-1)", "numeric", ("a", "b"), _n_kummer_m1, field="float", admissible=_kummer_ok)
    add("Bessel-closed", "numeric", ("c",), _n_bessel, field="float",
        draw={"c": _small_pos}, derive=lambda p, rng: {"x": F(1, 5)},
        fixed=({"c": F(3, 2), "x": F(1, 5)},))
    return C


def _tau(rng):
    from .harness import choose_square_discriminant_t
    t, tp, tm = choose_square_discriminant_t(rng)
    return {"t": t, "tau_plus": tp, "tau_minus": tm}


CASES = _build_cases()
_BY_ID = {c.id: c for c in CASES}
assert len(_BY_ID) == len(CASES), "duplicate identity ids"


def registry_list(include_templates: bool = False):
    return [c for c in CASES if include_templates or not c.template]


def get_case(id: str) -> IdentityCase:
    from .harness import UnknownIdentity
    try:
        return _BY_ID[id]
    except KeyError:
        raise UnknownIdentity(id) from None


def registry_hash() -> str:
    blob = json.dumps([c.describe() for c in CASES], sort_keys=True)
    return hashlib.sha256(f"{__version__}:{blob}".encode()).hexdigest()[:16]


def format_params(p: dict) -> dict:
    return {k: format_field(v) if not isinstance(v, (int, float)) else str(v) for k, v in p.items()}
