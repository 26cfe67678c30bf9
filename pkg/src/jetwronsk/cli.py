"""Command-line front end.

Every command writes one JSON report to stdout and a short human-readable
summary to stderr.  Exit status: 0 success, 1 a verification failed, 2 bad
usage or input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (ParamSet, R_from_M, decompose_degree, degree_threshold, delta_conditions,
                     deng_bound, hypotheses_check, index_counts, jet_dim, kprime, pullback_twist,
                     r_threshold)
from .errors import JetWronskError
from .family import (FamilySpec, assemble_F, format_index, germ_in_hypersurface, homgluing_check,
                     parse_index, reduced_wronskian)
from .grassmann import incidence_point, phi_matrix, plucker_of, satisfies_plucker_relations
from .jets import CurveGerm, JetContext, JetPoint, jet_derivative, jet_of_curve
from .linalg import rank
from .parsing import parse_polynomial
from .suites import SUITES, run_suite
from .wronskian import WronskianSpec, wronskian

SCHEMA = "jetwronsk/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational_list(text: str) -> list:
    try:
        return [Fraction(part.strip()) for part in str(text).split(",") if part.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected a comma-separated list of rationals, got {text!r}") from None


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"missing required option(s): {flags}")


def _context(args) -> JetContext:
    _need(args, "n", "k")
    return JetContext(args.n, args.k)


def _load_spec(args) -> FamilySpec:
    _need(args, "spec")
    data = args.spec
    if isinstance(data, str):
        path = Path(data)
        data = json.loads(path.read_text()) if path.exists() else json.loads(data)
    return FamilySpec.from_json(data)


def _load_jet(ctx: JetContext, value) -> JetPoint:
    if isinstance(value, str):
        path = Path(value)
        value = json.loads(path.read_text()) if path.exists() else json.loads(value)
    return JetPoint.from_json(ctx, value)


# -- commands -------------------------------------------------------------

def cmd_diff(args) -> dict:
    _need(args, "expr", "p")
    ctx = _context(args)
    f = parse_polynomial(args.expr, ctx.variables)
    result = jet_derivative(ctx.lift(f), args.p)
    return {"results": {"derivative": str(result), "terms": result.poly.to_json()}}


def cmd_wronskian(args) -> dict:
    _need(args, "expr")
    ctx = _context(args)
    fs = [parse_polynomial(e, ctx.base_variables) for e in args.expr]
    spec = WronskianSpec(ctx, fs)
    W = wronskian(spec)
    return {"results": {"wronskian": str(W), "weight": spec.weight, "terms": W.poly.to_json()}}


def cmd_reduced_wronskian(args) -> dict:
    spec = _load_spec(args)
    _need(args, "indices")
    indices = [parse_index(part) for part in args.indices.split(";") if part.strip()]
    W = reduced_wronskian(spec, indices)
    ok = homgluing_check(spec, indices)
    return {"results": {"reduced_wronskian": str(W), "indices": [format_index(I) for I in indices]},
            "checks": {"factorization-identity": {"pass": ok}}}


def cmd_germ(args) -> dict:
    _need(args, "expr", "point", "order")
    x = _rational_list(args.point)
    ctx = JetContext(len(x), args.order)
    F = parse_polynomial(args.expr, ctx.base_variables)
    direction = _rational_list(args.direction) if args.direction is not None else None
    gamma = germ_in_hypersurface(F, x, args.order, ctx, direction)
    along = gamma.compose(F)
    ok = not any(along.coeffs)
    return {"results": {"components": [str(c) for c in gamma.components],
                        "coefficients": [[str(a) for a in c.coeffs] for c in gamma.components],
                        "jet": jet_of_curve(gamma).to_json()},
            "checks": {"composes-to-zero": {"pass": ok}}}


def cmd_plucker(args) -> dict:
    if args.matrix is not None:
        rows = [_rational_list(r) for r in args.matrix.split(";") if r.strip()]
        if len({len(r) for r in rows}) != 1:
            raise UsageError("matrix rows must have equal length")
        labels = None
    else:
        spec = _load_spec(args)
        _need(args, "jet")
        w = _load_jet(spec.context, args.jet)
        labels = spec.indices()
        rows = phi_matrix(spec, w, labels)
    pv = plucker_of(rows, labels)
    results = {"rank": rank(rows), "degenerate": pv is None,
               "matrix": [[str(x) for x in r] for r in rows]}
    checks = {}
    if pv is not None:
        results["plucker"] = pv.to_json()
        results["normalized"] = pv.normalized().to_json()
        if args.relations:
            checks["quadratic-relations"] = {"pass": satisfies_plucker_relations(pv)}
    return {"results": results, "checks": checks}


def cmd_incidence(args) -> dict:
    spec = _load_spec(args)
    F = assemble_F(spec)
    if args.germ is not None:
        rows = [_rational_list(r) for r in args.germ.split(";") if r.strip()]
        if len(rows) != spec.n:
            raise UsageError(f"--germ needs {spec.n} components")
        gamma = CurveGerm.from_coefficients(spec.context, rows, spec.k)
    else:
        _need(args, "point")
        x = _rational_list(args.point)
        direction = _rational_list(args.direction) if args.direction is not None else None
        gamma = germ_in_hypersurface(F, x, spec.k, spec.context, direction)
    point, residuals = incidence_point(spec, gamma)
    ok = not any(residuals)
    check = {"pass": ok}
    if not ok:
        check["witness"] = {"germ": [[str(a) for a in c.coeffs] for c in gamma.components],
                            "residuals": [str(v) for v in residuals]}
    return {"results": {"F": str(F.trimmed()), "T": [str(t) for t in point.T],
                        "residuals": [str(v) for v in residuals],
                        "germ": [str(c) for c in gamma.components],
                        "plucker": None if point.plucker is None else point.plucker.to_json()},
            "checks": {"incidence": check}}


def cmd_bounds(args) -> dict:
    if args.deng:
        _need(args, "n")
        d0, cap = deng_bound(args.n)
        return {"results": {"deng": {"n": args.n, "d0": d0, "cap": cap}},
                "checks": {"deng-inequality": {"pass": d0 <= cap}}}
    _need(args, "n", "N", "k", "delta")
    fields = dict(n=args.n, N=args.N, k=args.k, delta=args.delta)
    for name in ("epsilon", "u", "v", "m_inf", "M", "R"):
        if getattr(args, name) is not None:
            fields[name] = getattr(args, name)
    params = ParamSet(**fields)
    report = delta_conditions(params)
    thr = r_threshold(params.v, params.u, params.M, params.k, params.epsilon, params.delta)
    results = {
        "params": params.__dict__,
        "kprime": kprime(params.k),
        "jet_dim": jet_dim(params.n, params.k),
        "index_counts": list(index_counts(params.N, params.delta, params.N + 1)),
        "delta_conditions": report.to_json(),
        "r_threshold": thr,
        "R_from_M": R_from_M(params),
        "twist_at_threshold": pullback_twist(params, thr),
        "d0": degree_threshold(params),
        "hypotheses": hypotheses_check(params),
    }
    checks = {}
    if args.d is not None:
        dec = decompose_degree(params, args.d)
        bad = dec.validate(params)
        results["decomposition"] = {"d": dec.d, "epsilon": dec.epsilon, "r": dec.r}
        checks["decomposition-valid"] = {"pass": not bad, "violations": bad}
    return {"results": results, "checks": checks}


def cmd_verify(args) -> dict:
    _need(args, "suite")
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    if args.trials is not None and args.trials < 0:
        raise UsageError("--trials must be non-negative")
    res = run_suite(args.suite, args.seed, args.trials)
    passed = sum(t.passed for t in res.checks.values())
    failed = sum(t.failed for t in res.checks.values())
    return {"results": {"suite": res.suite, "trials": res.trials, "passed": passed, "failed": failed},
            "checks": res.to_json()}


COMMANDS = {
    "diff": cmd_diff,
    "wronskian": cmd_wronskian,
    "reduced-wronskian": cmd_reduced_wronskian,
    "germ": cmd_germ,
    "plucker": cmd_plucker,
    "incidence": cmd_incidence,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jetwronsk", description="Exact jet derivatives, Wronskians and related checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def command(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--input", help="JSON file whose keys fill in options not given on the command line")
        p.add_argument("--quiet", action="store_true", help="no summary on stderr")
        return p

    p = command("diff", "d^[p] of a polynomial")
    p.add_argument("--expr")
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)

    p = command("wronskian", "Wronskian of k+1 base polynomials")
    p.add_argument("--expr", action="append", help="repeat k+1 times")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)

    p = command("reduced-wronskian", "reduced Wronskian of a family")
    p.add_argument("--spec", help="family JSON (file path or inline)")
    p.add_argument("--indices", help='multi-indices separated by ";", e.g. "(1,0,0);(0,1,0)"')

    p = command("germ", "curve germ inside F = 0")
    p.add_argument("--expr")
    p.add_argument("--point", help="comma-separated rationals")
    p.add_argument("--order", type=int)
    p.add_argument("--direction")

    p = command("plucker", "Plücker coordinates of a matrix or of the span of jet derivatives")
    p.add_argument("--matrix", help='rows separated by ";", entries by ","')
    p.add_argument("--spec")
    p.add_argument("--jet", help="jet point JSON (file path or inline)")
    p.add_argument("--relations", action="store_true", help="also check every quadratic relation")

    p = command("incidence", "incidence test at a point of the hypersurface")
    p.add_argument("--spec")
    p.add_argument("--point")
    p.add_argument("--direction")
    p.add_argument("--germ", help='explicit germ coefficients instead of --point, rows separated by ";"')

    p = command("bounds", "numeric conditions and the degree decomposition")
    for flag in ("n", "N", "k", "delta", "epsilon", "u", "v", "M", "R", "d"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--m-inf", dest="m_inf", type=int)
    p.add_argument("--deng", action="store_true", help="report the effective degree bound for --n")

    p = command("verify", "run a randomized verification suite")
    p.add_argument("--suite")
    p.add_argument("--seed", default=None)
    p.add_argument("--trials", type=int)
    return parser


def _merge_input(args) -> None:
    try:
        data = json.loads(Path(args.input).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read --input: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"--input is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("--input must hold a JSON object")
    known = {k for k in vars(args) if k not in ("command", "input")}
    for key, value in data.items():
        dest = key.replace("-", "_")
        if dest not in known:
            raise UsageError(f"unknown key {key!r} in --input")
        if getattr(args, dest) in (None, False):
            if dest == "expr" and args.command == "wronskian" and isinstance(value, str):
                value = [value]
            setattr(args, dest, value)
    # re-validate integer options that came from JSON
    for dest in known:
        value = getattr(args, dest)
        if dest in ("n", "N", "k", "p", "delta", "epsilon", "u", "v", "m_inf", "M", "R", "d",
                    "order", "trials") and value is not None and (not isinstance(value, int) or isinstance(value, bool)):
            raise UsageError(f"{dest} must be an integer")


def _summary(report: dict) -> str:
    lines = [f"{report['command']}: {report.get('status', '')}"]
    for name, check in sorted((report.get("checks") or {}).items()):
        mark = "PASS" if check.get("pass") else "FAIL"
        extra = f"  {check['passed']}/{check['passed'] + check['failed']}" if "passed" in check else ""
        lines.append(f"  {name:<32} {mark}{extra}")
    results = report.get("results") or {}
    for key, value in sorted(results.items()):
        if isinstance(value, (str, int)):
            lines.append(f"  {key}: {value}")
    if "delta_conditions" in results:
        dc = results["delta_conditions"]
        lines.append(f"  delta >= n(k+1): {dc['basic']}  (estimation margin {dc['estimation_margin']})")
    if "deng" in results:
        lines.append(f"  d0 = {results['deng']['d0']} <= {results['deng']['cap']}")
    if "error" in report:
        lines.append(f"  error: {report['error']['message']}")
    return "\n".join(lines)


def _emit(report: dict, quiet: bool) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2, default=str) + "\n")
    if not quiet:
        sys.stderr.write(_summary(report) + "\n")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    start = time.perf_counter()
    report = {"schema": SCHEMA, "command": None, "inputs": {}, "results": None, "checks": {}, "seed": None}
    quiet = "--quiet" in argv
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: " + ", ".join(COMMANDS))
        report["command"] = args.command
        if args.input:
            _merge_input(args)
        if args.command == "verify" and args.seed is None:
            args.seed = 0
        inputs = {k: v for k, v in vars(args).items()
                  if k not in ("command", "input", "quiet") and v is not None and v is not False}
        report["inputs"] = inputs
        report["seed"] = getattr(args, "seed", None)
        out = COMMANDS[args.command](args)
        report["results"] = out.get("results")
        report["checks"] = out.get("checks", {})
        failed = any(not c.get("pass") for c in report["checks"].values())
        report["status"] = "fail" if failed else "pass"
        code = 1 if failed else 0
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (UsageError, JetWronskError, ValueError, ZeroDivisionError) as exc:
        report["status"] = "error"
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 2
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    _emit(report, quiet)
    return code


if __name__ == "__main__":
    sys.exit(main())
