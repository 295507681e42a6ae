"""Timing of each identity member: direct multi-index summation vs the reduced form."""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
from fractions import Fraction

from .numeric import as_rational, format_rational, to_float
from .reductions import F3, KDF, SUM, build_identity, get_case, rhs_sum_taylor
from .series import eval_float_detail, partial_sum, taylor_coeffs
from .verify import rel_diff

BENCH_FIELDS = (
    "id", "side", "x", "terms", "time_median_s", "repeats",
    "value", "oracle_value", "oracle_order", "rel_error",
)


def _side_float(built, kind, x, tol):
    """(value, terms, highest x-degree reached) for one member."""
    if kind == SUM:
        parts, terms, degree = [], 0, 0
        for term in built.rhs.terms:
            if term.coeff == 0:
                continue
            res = eval_float_detail(term.series, x, tol)
            terms += res.terms_used
            degree = max(degree, res.degree + term.x_power)
            parts.append(float(term.coeff) * x**term.x_power * res.value)
        return math.fsum(parts), terms, degree
    spec = built.lhs if kind == KDF else built.mid
    res = eval_float_detail(spec, x, tol)
    return res.value, res.terms_used, res.degree


def _side_exact(built, kind, order):
    if kind == SUM:
        return rhs_sum_taylor(built.rhs, order)
    return taylor_coeffs(built.lhs if kind == KDF else built.mid, order)


def bench(identity_id, p, x=Fraction(1, 4), tol=1e-13, repeats=5, max_oracle_order=80):
    """One row per member (KDF, optionally F3, SUM).

    The oracle is the exact partial sum up to a few degrees past the point
    where the float evaluation stopped, capped at ``max_oracle_order``.
    """
    case = get_case(identity_id)
    x = as_rational(x)
    xf = to_float(x)
    built = build_identity(identity_id, p)
    kinds = [KDF] + ([F3] if case.double else []) + [SUM]
    rows = []
    for kind in kinds:
        times = []
        value = terms = degree = None
        for _ in range(max(1, repeats)):
            start = time.perf_counter()
            value, terms, degree = _side_float(built, kind, xf, tol)
            times.append(time.perf_counter() - start)
        oracle_order = min(degree + 8, max_oracle_order)
        oracle = to_float(partial_sum(_side_exact(built, kind, oracle_order), x))
        rows.append({
            "id": identity_id,
            "side": kind,
            "x": format_rational(x),
            "terms": terms,
            "time_median_s": statistics.median(times),
            "repeats": max(1, repeats),
            "value": value,
            "oracle_value": oracle,
            "oracle_order": oracle_order,
            "rel_error": rel_diff(value, oracle),
        })
    return rows


def bench_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()
