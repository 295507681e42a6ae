"""Command-line entry point: eval, verify, sweep, bench, list.

Exit codes: 0 success / all PASS, 1 verification FAIL, 2 invalid input or
polar parameters, 3 numeric failure (no convergence, overflow).
Machine-readable output goes to stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .bench import bench, bench_csv
from .errors import HyperError, InvalidInput, NumericFailure, Overflow, SamplerExhausted
from .families import build_from_json
from .numeric import format_rational, parse_rational
from .reductions import IDS, ReductionParams, get_case, registry_json
from .series import eval_float, partial_sum, taylor_coeffs
from .verify import (
    FAIL,
    PASS,
    SKIPPED_POLAR,
    VerifyConfig,
    sample_params,
    summary_csv,
    verify_exact,
    verify_float,
    verify_sweep,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


def _rational_arg(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load_json(text):
    """Inline JSON, or a path to a JSON file."""
    if text is None:
        raise InvalidInput("missing JSON input")
    stripped = text.strip()
    if not stripped.startswith(("{", "[")):
        if not os.path.exists(text):
            raise InvalidInput(f"not inline JSON and no such file: {text}")
        with open(text, encoding="utf-8") as fh:
            stripped = fh.read()
    try:
        return json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc}") from None


def _emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _diag(msg):
    print(msg, file=sys.stderr)


def cmd_eval(args):
    body = _load_json(args.spec)
    if not isinstance(body, dict):
        raise InvalidInput("function spec must be a JSON object")
    fn = args.fn or body.get("fn")
    if fn is None:
        raise InvalidInput("no function given: pass --fn or a 'fn' field")
    body = {k: v for k, v in body.items() if k != "fn"}
    spec = build_from_json(fn, body)
    if args.mode == "exact":
        coeffs = taylor_coeffs(spec, args.order)
        out = [format_rational(c) for c in coeffs]
        if args.x is not None:
            _emit({"coeffs": out, "x": format_rational(args.x), "partial_sum": format_rational(partial_sum(coeffs, args.x))})
        else:
            _emit(out)
    else:
        if args.x is None:
            raise InvalidInput("float mode needs --x")
        res = eval_float(spec, args.x, args.tol, args.max_terms)
        _emit({"value": res.value, "est_error": res.est_error, "terms_used": res.terms_used})
    return EXIT_OK


def _params_for(args, identity_id, cfg):
    if args.params is not None:
        p = ReductionParams.from_json(_load_json(args.params))
    else:
        p = sample_params(args.seed, args.case_index, cfg, identity_id)
    if not get_case(identity_id).has_e and args.variant != "keep_e_factor":
        p = ReductionParams(p.d, None, p.alpha, p.beta, p.m, p.n)
    return p


def cmd_verify(args):
    get_case(args.id)
    cfg = VerifyConfig(
        order=args.order,
        seed=args.seed,
        strict_e_gt_d=args.strict_e_gt_d,
        beta_equals_alpha=args.beta_equals_alpha,
        m_max=args.m_max,
        n_max=args.n_max,
    )
    p = _params_for(args, args.id, cfg)
    mutations = {"variant": args.variant} if args.variant else {}
    if args.mode == "exact":
        report = verify_exact(args.id, p, args.order, **mutations)
    else:
        report = verify_float(args.id, p, args.x, args.tol, **mutations)
    _emit(report.to_json())
    return {PASS: EXIT_OK, FAIL: EXIT_FAIL, SKIPPED_POLAR: EXIT_INPUT}[report.status]


def cmd_sweep(args):
    ids = IDS if not args.ids else [s.strip() for s in args.ids.split(",") if s.strip()]
    for ident in ids:
        get_case(ident)
    cfg = VerifyConfig(
        order=args.order,
        trials=args.trials,
        seed=args.seed,
        strict_e_gt_d=args.strict_e_gt_d,
        m_max=args.m_max,
        n_max=args.n_max,
        float_x=args.x,
        float_tol=args.tol,
        beta_equals_alpha=args.beta_equals_alpha,
        float_check=not args.no_float,
    )
    reports, summary = verify_sweep(ids, cfg, jobs=args.jobs)
    lines = "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in reports)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(lines)
    else:
        sys.stdout.write(lines)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(summary_csv(summary))
    _diag(
        f"sweep: {summary.total} reports, {summary.passed} PASS, "
        f"{summary.failed} FAIL, {summary.skipped} SKIPPED_POLAR"
    )
    return EXIT_OK if summary.failed == 0 else EXIT_FAIL


def cmd_bench(args):
    get_case(args.id)
    cfg = VerifyConfig(seed=args.seed, m_max=args.m_max, n_max=args.n_max)
    p = _params_for(args, args.id, cfg)
    rows = bench(args.id, p, args.x, args.tol, args.repeats, args.max_oracle_order)
    text = bench_csv(rows)
    if args.csv and args.csv != "-":
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_list(args):
    sys.stdout.write(json.dumps(registry_json(), indent=None) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperreduce",
        description="Evaluate multi-index hypergeometric series and verify reduction identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate pfq / kdf / sd / f3 / raw series")
    ev.add_argument("--fn", choices=["pfq", "kdf", "sd", "f3", "series"])
    ev.add_argument("--spec", required=True, help="inline JSON or path to a JSON file")
    ev.add_argument("--x", type=_rational_arg)
    ev.add_argument("--mode", choices=["exact", "float"], default="exact")
    ev.add_argument("--order", type=int, default=12)
    ev.add_argument("--tol", type=float, default=1e-13)
    ev.add_argument("--max-terms", type=int, default=10**6)
    ev.set_defaults(func=cmd_eval)

    def param_source(p):
        p.add_argument("--params", help="inline JSON or file: {\"d\": \"1\", \"e\": \"3/2\", ...}")
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--case-index", type=int, default=0)
        p.add_argument("--m-max", type=int, default=4)
        p.add_argument("--n-max", type=int, default=4)

    ve = sub.add_parser("verify", help="verify one identity instance")
    ve.add_argument("--id", required=True)
    param_source(ve)
    ve.add_argument("--order", type=int, default=12)
    ve.add_argument("--mode", choices=["exact", "float"], default="exact")
    ve.add_argument("--x", type=_rational_arg, default=Fraction(1, 4))
    ve.add_argument("--tol", type=float, default=1e-10)
    ve.add_argument("--strict-e-gt-d", action="store_true")
    ve.add_argument("--beta-equals-alpha", action="store_true")
    ve.add_argument("--variant", help="rejected reading to test (e.g. quarter_x2)")
    ve.set_defaults(func=cmd_verify)

    sw = sub.add_parser("sweep", help="randomized verification sweep")
    sw.add_argument("--ids", help="comma-separated ids (default: all 16)")
    sw.add_argument("--trials", type=int, default=20)
    sw.add_argument("--seed", type=int, default=1)
    sw.add_argument("--order", type=int, default=12)
    sw.add_argument("--m-max", type=int, default=4)
    sw.add_argument("--n-max", type=int, default=4)
    sw.add_argument("--x", type=_rational_arg, default=Fraction(1, 4), help="float spot-check point")
    sw.add_argument("--tol", type=float, default=1e-10)
    sw.add_argument("--strict-e-gt-d", action="store_true")
    sw.add_argument("--beta-equals-alpha", action="store_true")
    sw.add_argument("--no-float", action="store_true", help="skip the float spot check")
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--out", help="JSONL report file (default stdout)")
    sw.add_argument("--csv", help="write the per-id CSV summary here")
    sw.set_defaults(func=cmd_sweep)

    be = sub.add_parser("bench", help="time direct vs reduced summation")
    be.add_argument("--id", required=True)
    param_source(be)
    be.add_argument("--x", type=_rational_arg, default=Fraction(1, 4))
    be.add_argument("--tol", type=float, default=1e-13)
    be.add_argument("--repeats", type=int, default=5)
    be.add_argument("--max-oracle-order", type=int, default=80)
    be.add_argument("--csv", help="CSV output file (default stdout)")
    be.set_defaults(func=cmd_bench, variant=None)

    li = sub.add_parser("list", help="print the identity registry")
    li.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InvalidInput, SamplerExhausted) as exc:
        _diag(f"error: {exc}")
        return EXIT_INPUT
    except (NumericFailure, Overflow) as exc:
        _diag(f"numeric failure: {exc}")
        return EXIT_NUMERIC
    except HyperError as exc:
        _diag(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
