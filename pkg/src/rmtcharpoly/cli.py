"""Command-line interface: ``rmt-charpoly <verb> [options]``.

Exact values are printed as "num/den" strings unless ``--float`` is given.
Exit codes: 0 success, 1 failed validation, 2 domain or resource error,
64 usage error.
"""

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import asymptotics as asy
from . import combinatorics as cb
from .errors import DomainError, ResourceError
from .exact import Poly, as_fraction, frac_str
from .orthopoly import EnsembleSpec

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2, 64

VERBS = ("moment", "correlation", "secular", "expansion", "asymptotics", "semicircle", "mc", "validate")

BUDGET_LIMITS = {
    "small": {"partitions": 2 * 10**4, "samples": 10**6},
    "full": {"partitions": 10**6, "samples": 10**8},
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _fraction_arg(text):
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from e


def _fraction_list(text):
    return [_fraction_arg(x) for x in text.split(",") if x.strip()]


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from e


def _add_ensemble(p, size=True):
    p.add_argument("--ensemble", choices=("gue", "lue", "jue"), default="gue")
    if size:
        p.add_argument("-N", type=int, required=True, help="matrix size")
    p.add_argument("--gamma", type=_fraction_arg, default=Fraction(0))
    p.add_argument("--gamma1", type=_fraction_arg, default=Fraction(0))
    p.add_argument("--gamma2", type=_fraction_arg, default=Fraction(0))


def _add_output(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--float", action="store_true", help="print decimals instead of fractions")
    p.add_argument("--budget", choices=("small", "full"), default=None)


def build_parser():
    parser = _Parser(prog="rmt-charpoly", description="Exact moments of characteristic polynomials of GUE/LUE/JUE.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("moment", help="E[det(t-M)^p], all coefficients or at one t")
    _add_ensemble(p)
    p.add_argument("-p", "--p", dest="p", type=int, required=True)
    p.add_argument("--t", type=_fraction_arg, default=None)
    p.add_argument("--route", default="PartitionSum",
                   choices=("PartitionSum", "BoxPhi", "DerivativeDet", "ClosedFormT0", "AppendixB"))
    _add_output(p)

    p = sub.add_parser("correlation", help="E[prod_j det(t_j-M)] or GUE correlation functions")
    _add_ensemble(p)
    p.add_argument("--points", type=_fraction_list, required=True, help="comma-separated rationals")
    p.add_argument("--density", action="store_true", help="GUE p-point eigenvalue density (p <= 2)")
    _add_output(p)

    p = sub.add_parser("secular", help="E[prod_j sc_{lam_j}(M)]")
    _add_ensemble(p)
    p.add_argument("--lambda", dest="lam", type=_int_list, required=True, help="e.g. 2,2")
    _add_output(p)

    p = sub.add_parser("expansion", help="Psi or Upsilon table over a box")
    _add_ensemble(p)
    p.add_argument("-p", "--p", dest="p", type=int, required=True, help="box height")
    p.add_argument("--direction", choices=("psi", "upsilon"), default="psi")
    p.add_argument("--vars", type=int, default=None, help="number of variables (default: box height)")
    _add_output(p)

    p = sub.add_parser("asymptotics", help="1/N series of the t = 0 normalization")
    p.add_argument("-p", "--p", dest="p", type=int, required=True)
    p.add_argument("--parity", choices=("even", "odd", "avg"), default="avg")
    p.add_argument("--n-order", type=int, default=6)
    p.add_argument("--generated", action="store_true", help="regenerate from Stirling's series")
    _add_output(p)

    p = sub.add_parser("semicircle", help="parity-averaged recovery of the semicircle Taylor series")
    p.add_argument("-p", "--p", dest="p", type=int, default=1)
    p.add_argument("--t-order", type=int, default=2)
    p.add_argument("--n-order", type=int, default=None)
    _add_output(p)

    p = sub.add_parser("mc", help="Monte Carlo estimate with the exact value for comparison")
    _add_ensemble(p)
    p.add_argument("--functional", choices=("moment", "correlation", "secular"), default="moment")
    p.add_argument("-p", "--p", dest="p", type=int, default=1)
    p.add_argument("--t", type=_fraction_arg, default=Fraction(0))
    p.add_argument("--points", type=_fraction_list, default=None)
    p.add_argument("--lambda", dest="lam", type=_int_list, default=None)
    p.add_argument("--samples", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("validate", help="run the self-check suites")
    p.add_argument("--suite", default="all", help="all or a comma-separated list of suite names")
    _add_output(p)
    return parser


# --- helpers ------------------------------------------------------------------------

def _spec(args):
    kind = args.ensemble.upper()
    return EnsembleSpec(kind, args.N, gamma=args.gamma, gamma1=args.gamma1, gamma2=args.gamma2)


def _budget(args):
    if os.environ.get("RMT_CHARPOLY_BUDGET") and args.budget is None:
        value = os.environ["RMT_CHARPOLY_BUDGET"]
        if value not in BUDGET_LIMITS:
            raise UsageError(f"RMT_CHARPOLY_BUDGET must be small or full, got {value!r}")
        return value
    return args.budget or "small"


def _check_box(args, N, p):
    limit = BUDGET_LIMITS[_budget(args)]["partitions"]
    if cb.box_count(N, p) > limit:
        raise ResourceError(f"box ({N}^{p}) has {cb.box_count(N, p)} partitions, over the {_budget(args)} budget {limit}")


def _render(obj, as_float):
    if isinstance(obj, Fraction):
        return float(obj) if as_float else frac_str(obj)
    if isinstance(obj, Poly):
        return [_render(c, as_float) for c in obj.coeffs]
    if isinstance(obj, dict):
        return {k: _render(v, as_float) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_render(v, as_float) for v in obj]
    return obj


def _emit(out, args, payload, rows=None, header=None):
    """JSON by default; CSV writes ``rows`` under ``header``."""
    if args.format == "csv":
        if rows is None:
            raise DomainError("this output has no CSV form")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(_render(list(row), args.float))
        out.write(buf.getvalue())
    else:
        out.write(json.dumps(_render(payload, args.float)) + "\n")


def _lam_str(lam):
    return "(" + ",".join(str(x) for x in lam) + ")"


# --- verbs --------------------------------------------------------------------------

def cmd_moment(args, out):
    from .moments import moment

    spec = _spec(args)
    _check_box(args, spec.N, args.p)
    res = moment(spec, args.p, args.t, route=args.route)
    payload = {"ensemble": spec.describe(), "N": spec.N, "p": args.p, "route": res.route}
    if isinstance(res.value, Poly):
        payload["coefficients"] = res.value
        rows = [(k, c) for k, c in enumerate(res.value.coeffs)]
        _emit(out, args, payload, rows, ["k", "coefficient"])
    else:
        payload["t"] = res.t
        payload["value"] = res.value
        _emit(out, args, payload, [(res.t, res.value)], ["t", "value"])
    return EXIT_OK


def cmd_correlation(args, out):
    from .moments import correlation, correlation_function

    spec = _spec(args)
    if args.density:
        if spec.kind != "GUE":
            raise DomainError("eigenvalue densities are provided for GUE only")
        d = correlation_function(spec.N, args.points)
        rational = d.rational(args.points[0]) if isinstance(d.rational, Poly) else d.rational
        payload = {"ensemble": spec.describe(), "points": args.points, "rational": rational, "unit": d.unit,
                   "value_float": d.evaluate(args.points[0]) if isinstance(d.rational, Poly) else d.evaluate()}
        _emit(out, args, payload, [(rational, d.unit)], ["rational", "unit"])
        return EXIT_OK
    _check_box(args, spec.N, len(args.points))
    value = correlation(spec, args.points)
    payload = {"ensemble": spec.describe(), "points": args.points, "value": value}
    _emit(out, args, payload, [(",".join(frac_str(t) for t in args.points), value)], ["points", "value"])
    return EXIT_OK


def cmd_secular(args, out):
    from .secular import secular_result

    spec = _spec(args)
    res = secular_result(spec, args.lam)
    res["value"] = Fraction(res["value"])
    _emit(out, args, res, [(_lam_str(res["lambda"]), res["value"])], ["lambda", "value"])
    return EXIT_OK


def cmd_expansion(args, out):
    from .expansions import ExpansionTable

    spec = _spec(args)
    _check_box(args, spec.N, args.p)
    table = ExpansionTable(spec, spec.N, args.p, args.direction, args.vars)
    rows = [(_lam_str(lam), _lam_str(nu), v) for lam, nu, v in table.rows()]
    payload = {"ensemble": spec.describe(), "box": [spec.N, args.p], "direction": args.direction,
               "rows": [{"lambda": a, "nu": b, "value": v} for a, b, v in rows]}
    _emit(out, args, payload, rows, ["lambda", "nu", "value"])
    return EXIT_OK


def cmd_asymptotics(args, out):
    make = asy.cd_series_generated if args.generated else asy.cd_series
    parities = ("even", "odd") if args.parity == "avg" else (args.parity,)
    series = {par: make(args.p, par, args.n_order) for par in parities}
    if args.parity == "avg":
        series["averaged"] = asy.parity_average(series["even"], series["odd"])
    payload = {
        name: {"leading": s.leading, "order": s.order, "coefficients": list(s.coefficients)}
        for name, s in series.items()
    }
    payload["p"] = args.p
    rows = [(name, k, c) for name, s in series.items() for k, c in enumerate(s.coefficients)]
    _emit(out, args, payload, rows, ["parity", "k", "coefficient"])
    return EXIT_OK


def cmd_semicircle(args, out):
    rep = asy.semicircle_recovery(args.p, args.t_order, args.n_order)
    payload = {
        "p": rep.p, "t_order": rep.t_order, "n_order": rep.n_order,
        "coefficients": rep.limit, "target": rep.target, "ok": rep.ok,
        "divergent_terms": {str(2 * K): {str(e): c for e, c in sorted(d.items())} for K, d in rep.divergent.items()},
    }
    rows = [(2 * K, a, b) for K, (a, b) in enumerate(zip(rep.limit, rep.target))]
    _emit(out, args, payload, rows, ["t_power", "coefficient", "target"])
    return EXIT_OK


def cmd_mc(args, out):
    from .montecarlo import MCConfig, concordance, functional_from

    spec = _spec(args)
    limit = BUDGET_LIMITS[_budget(args)]["samples"]
    if args.samples > limit:
        raise ResourceError(f"{args.samples} samples exceed the {_budget(args)} budget {limit}")
    if args.functional == "moment":
        f = functional_from("moment", p=args.p, t=args.t)
    elif args.functional == "correlation":
        if not args.points:
            raise UsageError("mc --functional correlation needs --points")
        f = functional_from("correlation", points=args.points)
    else:
        if not args.lam:
            raise UsageError("mc --functional secular needs --lambda")
        f = functional_from("secular", lam=args.lam)
    cfg = MCConfig(spec, args.samples, args.seed, args.workers)
    est, exact, ok = concordance(cfg, f)
    payload = {"functional": est.functional, "ensemble": spec.describe(), "N": spec.N, "samples": est.samples,
               "seed": args.seed, "mean": est.mean, "stderr": est.stderr, "exact": exact,
               "z_score": est.z_score(exact), "overflow": est.overflow, "within_4_stderr": ok}
    _emit(out, args, payload, [(est.functional, est.mean, est.stderr, exact, est.z_score(exact))],
          ["functional", "mean", "stderr", "exact", "z_score"])
    return EXIT_OK


def cmd_validate(args, out):
    from .validation import SUITES, run_suites

    names = list(SUITES) if args.suite == "all" else [s.strip() for s in args.suite.split(",")]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    results = run_suites(names, _budget(args))
    failed = sum(not r["ok"] for r in results)
    payload = {"budget": _budget(args), "passed": len(results) - failed, "failed": failed, "checks": results}
    rows = [(r["suite"], r["check"], "pass" if r["ok"] else "fail", r["seconds"]) for r in results]
    _emit(out, args, payload, rows, ["suite", "check", "status", "seconds"])
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    "moment": cmd_moment,
    "correlation": cmd_correlation,
    "secular": cmd_secular,
    "expansion": cmd_expansion,
    "asymptotics": cmd_asymptotics,
    "semicircle": cmd_semicircle,
    "mc": cmd_mc,
    "validate": cmd_validate,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.verb](args, out)
    except UsageError as e:
        err.write(str(e).rstrip() + "\n")
        return EXIT_USAGE
    except (DomainError, ResourceError) as e:
        err.write(f"error: {str(e).splitlines()[0] if str(e) else type(e).__name__}\n")
        return EXIT_DOMAIN


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
