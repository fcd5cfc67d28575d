"""Command-line entry point: scans, single computations and invariant suites."""

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, replace
from fractions import Fraction

from .bounds import YuBoundInput, stewart_threshold, yu_rhs
from .config import DEFAULT, Effort, RunConfig
from .errors import BudgetExceeded, PrimdivError
from .height import height, height_floor_check
from .ideals import field_bounds_check, primes_above
from .quadfield import QuadElement, make_field
from .scan import scan_quadratic, scan_rational
from .suites import SUITES, run_suite
from .theta import independence_rank, square_class_independent, theta_batch, verify_theta
from .valuation import nu_direct_oracle, nu_power_minus_one

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _triple(text: str):
    parts = text.split(",")
    if not 1 <= len(parts) <= 3:
        raise argparse.ArgumentTypeError(f"expected a,b,q; got {text!r}")
    try:
        vals = [int(x) for x in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers a,b,q; got {text!r}") from exc
    # a -> (a, 0, 1); a,b -> (a, b, 1)
    vals += [0, 1][len(vals) - 1:]
    return tuple(vals)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _effort(text: str) -> Effort:
    try:
        return Effort.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _element(m: int, t):
    a, b, q = t
    if q == 0:
        raise UsageError("denominator q must be nonzero")
    return QuadElement(m, a, b, q)


def _field(m: int):
    try:
        return make_field(m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _resolve_prime(fld, p: int, root):
    ideals = primes_above(fld, p)
    if root is None:
        return ideals[0]
    for P in ideals:
        if P.root == root:
            return P
    raise UsageError(f"no prime above {p} with root {root}; roots are {[P.root for P in ideals]}")


# --- commands ---------------------------------------------------------------------------------
# each returns (document, ok) where document = {"header": ..., "rows": [...], "suites": [...]}


def _doc(header, rows, suites=()):
    return {"header": header, "rows": list(rows), "suites": list(suites)}


def cmd_scan_rational(args, config):
    rep = scan_rational(args.gamma, args.n_min, args.n_max, config)
    return rep, rep.violations == 0, any(not r.fully_factored for r in rep.rows)


def cmd_scan_quad(args, config):
    fld = _field(args.field)
    gamma = _element(fld.radicand, args.gamma)
    if gamma.norm() != 1:
        print("warning: gamma does not have norm +1; the p = +-1 (mod n) check is disabled", file=sys.stderr)
    rep = scan_quadratic(fld, gamma, args.n_min, args.n_max, config)
    return rep, rep.violations == 0, any(not r.fully_factored for r in rep.rows)


def cmd_theta(args, config):
    fld = _field(args.field)
    batch = theta_batch(fld, args.count)
    rows = []
    for t in batch.thetas:
        r = verify_theta(t)
        rows.append({
            "p": t.source_prime, "theta": str(t.value), "generator": str(t.generator),
            "ideal_root": t.chosen_ideal.root, "aux_norm": t.auxiliary_ideal.norm, "unit_exponent": t.unit_exponent,
            "height": r.height, "window_lhs": r.window_lhs, "window_rhs": r.window_rhs, "window_pass": r.window_pass,
            "item2_status": r.item2_status, "support": {f"{k[0]}:{k[1]}": v for k, v in r.support.items()},
            "support_S_pass": r.support_S_pass, "support_all_pass": r.support_pass, "passed": r.passed,
        })
    rank = independence_rank(batch)
    indep, witness = square_class_independent([t.value for t in batch.thetas], fld)
    header = {"field": fld.radicand, "count": batch.count, "independence_rank": rank,
              "square_class_independent": indep, "witness": witness, "config_digest": config.digest()}
    ok = all(r["passed"] for r in rows) and rank == batch.count and indep
    return _doc(header, rows), ok, False


def cmd_height(args, config):
    if args.field is None:
        x = args.rational
        if x is None:
            raise UsageError("height needs --value a,b,q with --field, or --rational A/B")
    else:
        x = _element(args.field, args.value)
    h = height(x, config.effort)
    row = asdict(h)
    try:
        floor, ok = height_floor_check(x)
        row.update(floor=floor, floor_pass=ok)
    except (PrimdivError, ValueError) as exc:
        row.update(floor=None, floor_pass=None, note=str(exc))
        ok = True
    return _doc({"value": str(x), "config_digest": config.digest()}, [row]), ok, False


def cmd_valuation(args, config):
    if args.field is None:
        gamma, P, label = args.rational, args.p, str(args.p)
        if gamma is None:
            raise UsageError("valuation needs --gamma a,b,q with --field, or --rational A/B")
    else:
        fld = _field(args.field)
        gamma = _element(fld.radicand, args.gamma)
        P = _resolve_prime(fld, args.p, args.root)
        label = f"{P.p}:{P.kind}:{P.root}"
    fast = nu_power_minus_one(gamma, args.n, P)
    row = {"gamma": str(gamma), "n": args.n, "prime": label, "value": fast.value, "method": fast.method}
    ok = True
    if args.n <= config.direct_exponent_limit:
        slow = nu_direct_oracle(gamma, args.n, P, config.direct_exponent_limit)
        row["direct"] = slow.value
        ok = slow.value == fast.value
    return _doc({"config_digest": config.digest()}, [row]), ok, False


def cmd_yu_bound(args, config):
    heights = tuple(float(h) for h in args.heights.split(","))
    inp = YuBoundInput(args.k, args.d, heights, args.prime_norm, args.p, args.delta, args.B, args.u)
    rep = yu_rhs(inp)
    row = {"omega": rep.omega_value, "rhs": rep.rhs, "log_rhs": rep.log_rhs, "branch": rep.branch}
    return _doc({"input": asdict(inp)}, [row]), True, False


def cmd_threshold(args, config):
    t = stewart_threshold(args.n, args.variant)
    return _doc({"variant": args.variant, "n": args.n}, [asdict(t)]), True, False


def cmd_verify(args, config):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    results = [run_suite(n, config) for n in names]
    doc = _doc({"suites": names, "config_digest": config.digest(), "seed": config.seed}, [],
               [r.to_dict() for r in results])
    return doc, all(r.passed for r in results), False


def cmd_field_info(args, config):
    fld = _field(args.m)
    row = {
        "radicand": fld.radicand, "discriminant": fld.discriminant, "class_number": fld.class_number,
        "fundamental_unit": None if fld.fundamental_unit is None else str(fld.fundamental_unit),
        "log_eta": fld.log_eta, "torsion_order": fld.torsion_order,
    }
    bounds = field_bounds_check(fld)
    row["bounds"] = {k: {"lhs": v[0], "rhs": v[1], "pass": v[2]} for k, v in bounds.items()}
    return _doc({"m": args.m}, [row]), all(v[2] for v in bounds.values()), False


# --- output -----------------------------------------------------------------------------------


def _render(doc, fmt: str) -> str:
    if hasattr(doc, "to_json"):
        return doc.to_json() if fmt == "json" else doc.to_csv()
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True, default=str)
    buf = io.StringIO()
    rows = doc["rows"] or [c | {"suite": s["name"]} for s in doc["suites"] for c in s["checks"]]
    if rows:
        keys = sorted({k for r in rows for k in r})
        w = csv.DictWriter(buf, keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v, default=str) if isinstance(v, (dict, list)) else v for k, v in r.items()})
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT.seed)
    common.add_argument("--effort", type=_effort, default=None, help="trial_bound,rho_iters[,ecm_curves]")
    common.add_argument("--strict", action="store_true", help="exit 3 when a budget is exhausted")

    p = _Parser(prog="primdiv", description="Primitive divisors of gamma^n - 1 over Q and quadratic fields.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("scan-rational", parents=[common], help="scan Phi_n(gamma) for rational gamma")
    s.add_argument("--gamma", type=_fraction, required=True)
    s.add_argument("--n-min", type=_positive, default=1)
    s.add_argument("--n-max", type=_positive, required=True)
    s.set_defaults(func=cmd_scan_rational)

    s = sub.add_parser("scan-quad", parents=[common], help="scan Phi_n(gamma) in a quadratic field")
    s.add_argument("--field", type=int, required=True)
    s.add_argument("--gamma", type=_triple, required=True, help="a,b,q for (a + b sqrt m)/q")
    s.add_argument("--n-min", type=_positive, default=1)
    s.add_argument("--n-max", type=_positive, required=True)
    s.set_defaults(func=cmd_scan_quad)

    s = sub.add_parser("theta", parents=[common], help="build and verify theta_p for the first primes of S(K)")
    s.add_argument("--field", type=int, required=True)
    s.add_argument("--count", type=_positive, default=10)
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("height", parents=[common], help="absolute logarithmic height")
    s.add_argument("--field", type=int)
    s.add_argument("--value", type=_triple)
    s.add_argument("--rational", type=_fraction)
    s.set_defaults(func=cmd_height)

    s = sub.add_parser("valuation", parents=[common], help="nu_P(gamma^n - 1)")
    s.add_argument("--field", type=int)
    s.add_argument("--gamma", type=_triple)
    s.add_argument("--rational", type=_fraction)
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--root", type=int, help="residue of sqrt(D) selecting one split prime (default canonical)")
    s.set_defaults(func=cmd_valuation)

    s = sub.add_parser("yu-bound", parents=[common], help="p-adic linear forms bound")
    s.add_argument("--k", type=_positive, default=1)
    s.add_argument("--d", type=_positive, default=1)
    s.add_argument("--heights", required=True, help="comma-separated h(alpha_i)")
    s.add_argument("--prime-norm", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--delta", type=float, default=1.0)
    s.add_argument("--B", type=_positive, default=1)
    s.add_argument("--u", type=_positive, default=1)
    s.set_defaults(func=cmd_yu_bound)

    s = sub.add_parser("threshold", parents=[common], help="n exp(c log n / log log n)")
    s.add_argument("--variant", choices=("thm12", "thm13"), required=True)
    s.add_argument("--n", type=_positive, required=True)
    s.set_defaults(func=cmd_threshold)

    s = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    s.add_argument("--suite", required=True, help=f"one of: all, {', '.join(SUITES)}")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("field-info", parents=[common], help="discriminant, class number and unit")
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_field_info)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(seed=args.seed, strict=args.strict)
    if args.effort is not None:
        config = replace(config, effort=args.effort)
    try:
        doc, ok, exhausted = args.func(args, config)
    except UsageError as exc:
        print(f"primdiv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        # no report can be produced, so this exits 3 with or without --strict
        print(f"primdiv: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PrimdivError, ValueError) as exc:
        print(f"primdiv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = _render(doc, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    if not ok:
        return EXIT_CHECK
    if exhausted and args.strict:
        return EXIT_BUDGET
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
