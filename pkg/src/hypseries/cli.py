"""Command-line front end: ``hypseries expand|check|check-all|eval|list``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .field import FieldParseError, parse_field
from .numeval import NoConvergenceDetected, PoleProximity, pfq_partial_sum, radius_growth_proxy
from .opexpr import RegimeViolation
from .specfun import FAMILIES, InadmissibleParameter, family_series, kernel_series, rep_series
from .verify import (AdmissibleDrawExhausted, UnknownIdentity, check_all, check_identity,
                     registry_hash, registry_list)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NOCONV = 0, 1, 2, 3

LIST_PARAMS = {"pfq": {"a", "c"}, "f1_multi": {"b", "slopes"}}
EVAL_ALIASES = {
    "gauss-sum": "2F1(1)",
    "f1-y-one": "F1(x,1)",
    "three-quarters": "2F1(3/4)",
    "kummer-minus-one": "2F1(-1)",
    "bessel": "Bessel-closed",
}


class UsageError(Exception):
    pass


def _value(text: str):
    try:
        return parse_field(text)
    except FieldParseError as exc:
        raise UsageError(str(exc)) from None


def _extra_params(tokens, lists=frozenset()) -> dict:
    """``--name value`` pairs left over by argparse; list names take comma-separated values."""
    out = {}
    it = iter(tokens)
    for tok in it:
        if not tok.startswith("--") or len(tok) < 3:
            raise UsageError(f"unexpected argument {tok!r}")
        name, _, val = tok[2:].partition("=")
        if not val:
            val = next(it, None)
            if val is None:
                raise UsageError(f"missing value for --{name}")
        if name in lists:
            out[name] = [_value(v) for v in val.split(",") if v]
        else:
            out[name] = _value(val)
    return out


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HYPSERIES_SEED")
    try:
        return int(env) if env else 0
    except ValueError:
        raise UsageError(f"HYPSERIES_SEED must be an integer, got {env!r}") from None


def _header(args, **extra) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    cfg.update(extra)
    return {"suite": "hypseries", "version": __version__, "registry": registry_hash(),
            "config": cfg}


def _emit_header(args, **extra):
    h = _header(args, **extra)
    if args.format == "json":
        print(json.dumps({"header": h}, sort_keys=True, default=str))
    else:
        cfg = " ".join(f"{k}={v}" for k, v in sorted(h["config"].items()))
        print(f"# hypseries {h['version']} registry {h['registry']} {cfg}")


def _row(rep) -> str:
    params = ", ".join(f"{k}={v}" for k, v in rep.params.items())
    line = f"{rep.outcome.upper():5} {rep.id:24} [{rep.label}] ({params})"
    if rep.mismatch:
        m = rep.mismatch
        line += f" first mismatch at {m['exp']}: {m['lhs']} != {m['rhs']}"
    if rep.residual is not None:
        line += f" residual={rep.residual:.3e} tol={rep.tolerance:g}"
    if rep.error:
        line += f" {rep.error}"
    if rep.outcome != rep.expected:
        line += f" (expected {rep.expected})"
    return line


def _emit(args, rep):
    print(rep.to_json() if args.format == "json" else _row(rep))


# --- subcommands -----------------------------------------------------------------

def cmd_expand(args, extra) -> int:
    params = _extra_params(extra, LIST_PARAMS.get(args.id, ()))
    if args.id == "kernel":
        if not args.kernel:
            raise UsageError("expand kernel needs a kernel id")
        try:
            s = kernel_series(args.kernel, params, order=args.order)
        except KeyError as exc:
            raise UsageError(f"unknown kernel {args.kernel!r}") from exc
    else:
        if args.id not in FAMILIES:
            raise UsageError(f"unknown family {args.id!r}; choose from {', '.join(FAMILIES)}")
        if args.id == "pfq":
            params.setdefault("a", [])
            params.setdefault("c", [])
            for key, n in (("a", args.p), ("c", args.q)):
                if n is not None and len(params[key]) != n:
                    raise UsageError(f"--{key} has {len(params[key])} entries, expected {n}")
        try:
            if args.rep:
                s = rep_series(args.id, params, order=args.order)
            else:
                s = family_series(args.id, params, order=args.order,
                                  homogenized=args.homogenized)
        except KeyError as exc:
            raise UsageError(f"missing parameter {exc}") from exc
    if args.format == "json":
        print(json.dumps(s.to_json(), sort_keys=True))
    else:
        print(s)
    return EXIT_OK


def _exit_for(rep) -> int:
    if rep.outcome == "error":
        err = rep.error or ""
        if err.startswith(("NoConvergenceDetected", "PoleProximity")):
            return EXIT_NOCONV
        return EXIT_USAGE
    if rep.label in ("evidence", "literal") or rep.as_expected:
        return EXIT_OK
    return EXIT_FAIL


def cmd_check(args, extra) -> int:
    params = _extra_params(extra)
    seed = _seed(args)
    _emit_header(args, seed=seed)
    rep = check_identity(args.id, params or None, seed=seed, N=args.order, draw=args.draw,
                         evidence=args.evidence, tolerance=args.tolerance)
    _emit(args, rep)
    return _exit_for(rep)


def cmd_check_all(args, extra) -> int:
    if extra:
        raise UsageError(f"unexpected arguments {extra}")
    seed = _seed(args)
    _emit_header(args, seed=seed)
    reports, summary = check_all(args.order, seed=seed, filter=args.filter,
                                 evidence_mode=args.evidence, draws=args.draws)
    for rep in reports:
        _emit(args, rep)
    if args.format == "json":
        print(json.dumps({"summary": summary}, sort_keys=True))
    else:
        print(f"# total={summary['total']} pass={summary['pass']} fail={summary['fail']} "
              f"error={summary['error']} evidence_pass={summary['evidence_pass']} "
              f"evidence_fail={summary['evidence_fail']} "
              f"expected_fail={summary['expected_fail']}")
        if summary["evidence_fail"]:
            print("# FINDING: conjecture-evidence checks failed; see rows labeled evidence")
        if summary["unexpected"]:
            print(f"# unexpected outcomes: {', '.join(summary['unexpected'])}")
    return EXIT_OK if summary["ok"] else EXIT_FAIL


def cmd_eval(args, extra) -> int:
    name = EVAL_ALIASES.get(args.id, args.id)
    params = _extra_params(extra, LIST_PARAMS.get(name, ()))
    seed = _seed(args)
    if name == "pfq":
        if "x" not in params:
            raise UsageError("eval pfq needs --x")
        x = params["x"]
        x = complex(x) if isinstance(x, complex) else float(x)
        value, terms = pfq_partial_sum(params.get("a", []), params.get("c", []), x,
                                       return_terms=True)
        out = {"value": repr(value), "terms": terms}
        print(json.dumps(out) if args.format == "json" else f"{value!r}  ({terms} terms)")
        return EXIT_OK
    if name == "radius":
        if "a" not in params or "c" not in params:
            raise UsageError("eval radius needs --a and --c")
        rep = radius_growth_proxy(params["a"], params["c"], n_max=int(params.get("n_max", 500)),
                                  tol=args.tolerance or 0.01)
        _emit(args, rep)
        return _exit_for(rep)
    flat = dict(params)
    for k, v in flat.items():
        if isinstance(v, complex):
            flat[k] = Fraction(v.real).limit_denominator(10 ** 12) if not v.imag else v
    rep = check_identity(name, flat or None, seed=seed, N=args.order, draw=args.draw,
                         evidence=True, tolerance=args.tolerance)
    if rep.kind != "numeric":
        raise UsageError(f"{name} is not a numeric identity; use check")
    _emit(args, rep)
    if args.format != "json" and rep.values:
        print(f"  lhs={rep.values['lhs']} rhs={rep.values['rhs']}")
    return _exit_for(rep)


def cmd_list(args, extra) -> int:
    if extra:
        raise UsageError(f"unexpected arguments {extra}")
    cases = registry_list(include_templates=True)
    if args.filter:
        import fnmatch
        cases = [c for c in cases if fnmatch.fnmatchcase(c.id, args.filter)]
    for c in cases:
        if args.format == "json":
            print(json.dumps(c.describe(), sort_keys=True))
        else:
            flags = [f for f, on in (("possibly-new", c.possibly_new),
                                      ("template", c.template)) if on]
            print(f"{c.id:24} {c.kind:9} {c.status:15} {c.field:12} "
                  f"{','.join(c.params):28} {' '.join(flags)}")
    return EXIT_OK


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--order", "-N", type=int, default=12, help="truncation order")
    common.add_argument("--seed", type=int, default=None,
                        help="draw seed (default: $HYPSERIES_SEED or 0)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--tolerance", type=float, default=None,
                        help="relative tolerance for numeric checks")

    ap = argparse.ArgumentParser(prog="hypseries", description=__doc__, allow_abbrev=False)
    ap.add_argument("--version", action="version", version=f"hypseries {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], allow_abbrev=False, help="expand a family or kernel")
    p.add_argument("id", help="family id, or 'kernel'")
    p.add_argument("kernel", nargs="?", help="kernel id when expanding a kernel")
    p.add_argument("--p", type=int, default=None, help="number of upper parameters (pfq)")
    p.add_argument("--q", type=int, default=None, help="number of lower parameters (pfq)")
    p.add_argument("--rep", action="store_true", help="expand the hypergeometrized form")
    p.add_argument("--homogenized", action="store_true")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("check", parents=[common], allow_abbrev=False, help="check one identity")
    p.add_argument("id")
    p.add_argument("--draw", type=int, default=0)
    p.add_argument("--evidence", action="store_true", help="allow the conjectured regime")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("check-all", parents=[common], allow_abbrev=False, help="check every registered identity")
    p.add_argument("--filter", default=None, help="glob over identity ids, e.g. 'Qt*'")
    p.add_argument("--evidence", action="store_true", help="include conjecture-evidence cases")
    p.add_argument("--draws", type=int, default=3)
    p.set_defaults(func=cmd_check_all)

    p = sub.add_parser("eval", parents=[common], allow_abbrev=False, help="evaluate a numeric identity or pFq")
    p.add_argument("id", help="numeric identity id, alias (gauss-sum, ...), 'pfq' or 'radius'")
    p.add_argument("--draw", type=int, default=0)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("list", parents=[common], allow_abbrev=False, help="list registered identities")
    p.add_argument("--filter", default=None)
    p.set_defaults(func=cmd_list)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args, extra = ap.parse_known_args(argv)
    try:
        return args.func(args, extra)
    except (UsageError, UnknownIdentity, InadmissibleParameter) as exc:
        ap.print_usage(sys.stderr)
        print(f"hypseries: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RegimeViolation, AdmissibleDrawExhausted) as exc:
        print(f"hypseries: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoConvergenceDetected, PoleProximity) as exc:
        print(f"hypseries: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NOCONV


if __name__ == "__main__":
    sys.exit(main())
