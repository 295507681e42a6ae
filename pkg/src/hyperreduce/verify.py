"""Exact and floating-point verification of the reduction identities.

Exact mode compares Taylor coefficients as rationals, so PASS means
equality, coefficient by coefficient, up to the requested order.  Float mode
evaluates every member at a point and compares relative differences.
"""

from __future__ import annotations

import hashlib
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .errors import (
    InvalidInput,
    NoConvergence,
    PolarPrefactor,
    PoleWithinTruncation,
    SamplerExhausted,
)
from .numeric import as_rational, format_rational, is_nonpositive_integer
from .reductions import (
    F3,
    IDS,
    KDF,
    SUM,
    BuiltIdentity,
    ReductionParams,
    build_identity,
    get_case,
    identity_poles,
    rhs_sum_taylor,
)
from .series import eval_float_detail, taylor_coeffs

PASS, FAIL, SKIPPED_POLAR = "PASS", "FAIL", "SKIPPED_POLAR"
MAX_REJECTIONS = 2000
FLOAT_REL_TOL = 1e-14


@dataclass(frozen=True)
class VerifyConfig:
    order: int = 12
    trials: int = 20
    seed: int = 1
    strict_e_gt_d: bool = False
    m_max: int = 4
    n_max: int = 4
    float_x: Fraction = Fraction(1, 4)
    float_tol: float = 1e-10
    beta_equals_alpha: bool = False
    float_check: bool = True

    def __post_init__(self):
        if self.order < 2:
            raise InvalidInput("verification order must be at least 2")
        if self.trials < 0 or self.m_max < 0 or self.n_max < 0:
            raise InvalidInput("trials, m_max and n_max must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise InvalidInput("seed must be a 64-bit unsigned integer")
        if self.float_tol <= 0:
            raise InvalidInput("float_tol must be positive")
        object.__setattr__(self, "float_x", as_rational(self.float_x))


@dataclass
class LinkOutcome:
    link: str
    status: str
    checked: int = 0
    max_rel_diff: Optional[float] = None

    def to_json(self):
        out = {"link": self.link, "status": self.status, "checked": self.checked}
        if self.max_rel_diff is not None:
            out["max_rel_diff"] = self.max_rel_diff
        return out


@dataclass
class VerifyReport:
    id: str
    params: Optional[ReductionParams]
    mode: str
    status: str
    links: list = field(default_factory=list)
    first_divergence: Optional[dict] = None
    order: Optional[int] = None
    detail: Optional[str] = None
    float_check: Optional[dict] = None
    trial: Optional[int] = None

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "trial": self.trial,
            "mode": self.mode,
            "status": self.status,
            "params": None if self.params is None else self.params.to_json(),
            "order": self.order,
            "links": [link.to_json() for link in self.links],
            "first_divergence": self.first_divergence,
        }
        if self.float_check is not None:
            out["float_check"] = self.float_check
        if self.detail:
            out["detail"] = self.detail
        return out


# -- sampling --------------------------------------------------------------------


def _stream(seed: int, identity_id: Optional[str], case_index: int) -> random.Random:
    key = f"{seed}:{identity_id or '*'}:{case_index}".encode()
    return random.Random(int.from_bytes(hashlib.sha256(key).digest()[:8], "big"))


def _rand_rational(rng: random.Random, positive=False) -> Fraction:
    num = rng.randint(1 if positive else -9, 9)
    return Fraction(num, rng.randint(1, 6))


def _all_denominators(built: BuiltIdentity):
    specs = [built.lhs] + ([built.mid] if built.mid is not None else [])
    specs += [t.series for t in built.rhs.terms]
    for spec in specs:
        for b in spec.denominator:
            yield b


def _acceptable(identity_id, p, order) -> bool:
    try:
        built = build_identity(identity_id, p)
    except PolarPrefactor:
        return False
    if identity_poles(built, order):
        return False
    # Denominators that are nonpositive integers vanish at some finite order,
    # which would break the float spot check even when the exact order is safe.
    return not any(is_nonpositive_integer(b.value) for b in _all_denominators(built))


def sample_params(seed: int, case_index: int, cfg: VerifyConfig, identity_id: Optional[str] = None) -> ReductionParams:
    """Deterministic non-polar parameters for one trial.

    Numerators are drawn from [-9, 9], denominators from 1..6.  ``d = 0``
    is rejected because it makes every identity the vacuous ``1 = 1``.  With
    ``identity_id=None`` the tuple must be acceptable for every identity
    (e always drawn; m, n forced to 0 for the special cases).
    """
    rng = _stream(seed, identity_id, case_index)
    targets = IDS if identity_id is None else (get_case(identity_id).id,)
    cases = [get_case(t) for t in targets]
    needs_e = any(c.has_e for c in cases)
    has_mn = any(c.theorem is not None for c in cases)
    for _ in range(MAX_REJECTIONS):
        d = _rand_rational(rng, positive=cfg.strict_e_gt_d)
        e = _rand_rational(rng, positive=cfg.strict_e_gt_d) if needs_e else None
        alpha = _rand_rational(rng)
        beta = alpha if cfg.beta_equals_alpha else _rand_rational(rng)
        m = rng.randint(0, cfg.m_max) if has_mn else 0
        n = rng.randint(0, cfg.n_max) if has_mn else 0
        if d == 0:
            continue
        if cfg.strict_e_gt_d and e is not None and not e > d:
            continue
        ok = True
        for c in cases:
            p = ReductionParams(
                d,
                e if c.has_e else None,
                alpha,
                beta,
                m if c.theorem is not None else 0,
                n if c.theorem is not None else 0,
            )
            if not _acceptable(c.id, p, cfg.order):
                ok = False
                break
        if ok:
            return ReductionParams(d, e, alpha, beta, m, n)
    raise SamplerExhausted(f"no non-polar parameters after {MAX_REJECTIONS} draws (seed={seed}, case={case_index})")


# -- exact -----------------------------------------------------------------------


def _link_name(a, b):
    return f"{a}={b}"


def _polar_report(identity_id, p, mode, order, detail):
    return VerifyReport(identity_id, p, mode, SKIPPED_POLAR, order=order, detail=detail)


def verify_exact(identity_id: str, p: ReductionParams, order: int = 12, **mutations) -> VerifyReport:
    case = get_case(identity_id)
    try:
        built = build_identity(identity_id, p, **mutations)
    except PolarPrefactor as exc:
        return _polar_report(identity_id, p, "exact", order, str(exc))
    poles = identity_poles(built, order)
    if poles:
        return _polar_report(identity_id, p, "exact", order, "; ".join(poles))

    sides = {KDF: lambda: taylor_coeffs(built.lhs, order), SUM: lambda: rhs_sum_taylor(built.rhs, order)}
    if built.mid is not None:
        sides[F3] = lambda: taylor_coeffs(built.mid, order)
    cache = {}

    def coeffs(kind):
        if kind not in cache:
            cache[kind] = sides[kind]()
        return cache[kind]

    report = VerifyReport(identity_id, p, "exact", PASS, order=order)
    for a, b in case.links:
        left, right = coeffs(a), coeffs(b)
        bad = next((t for t in range(order + 1) if left[t] != right[t]), None)
        if bad is None:
            report.links.append(LinkOutcome(_link_name(a, b), PASS, order + 1))
        else:
            report.links.append(LinkOutcome(_link_name(a, b), FAIL, bad + 1))
            report.status = FAIL
            if report.first_divergence is None:
                report.first_divergence = {
                    "link": _link_name(a, b),
                    "coefficient": bad,
                    "lhs": format_rational(left[bad]),
                    "rhs": format_rational(right[bad]),
                }
    return report


# -- float -----------------------------------------------------------------------


def eval_rhs_float(built: BuiltIdentity, x: float, rel_tol=FLOAT_REL_TOL, max_terms=10**6, max_degree=None):
    """(value, terms) of the finite right-hand sum at ``x``.

    With ``max_degree`` every member is truncated so the whole sum stops at
    that x-degree, matching an exact partial sum of the same order.
    """
    parts = []
    terms = 0
    for term in built.rhs.terms:
        if term.coeff == 0:
            continue
        inner_max = None
        if max_degree is not None:
            inner_max = max_degree - term.x_power
            if inner_max < 0:
                continue
        res = eval_float_detail(term.series, x, rel_tol, max_terms, max_degree=inner_max)
        terms += res.terms_used
        parts.append(float(term.coeff) * x**term.x_power * res.value)
    return math.fsum(parts), terms


def eval_side_float(built: BuiltIdentity, kind: str, x: float, rel_tol=FLOAT_REL_TOL, max_terms=10**6, max_degree=None):
    if kind == SUM:
        return eval_rhs_float(built, x, rel_tol, max_terms, max_degree)
    spec = built.lhs if kind == KDF else built.mid
    res = eval_float_detail(spec, x, rel_tol, max_terms, max_degree=max_degree)
    return res.value, res.terms_used


def rel_diff(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def verify_float(
    identity_id: str,
    p: ReductionParams,
    x=Fraction(1, 4),
    tol: float = 1e-10,
    max_terms: int = 10**6,
    **mutations,
) -> VerifyReport:
    case = get_case(identity_id)
    xf = float(x)
    try:
        built = build_identity(identity_id, p, **mutations)
    except PolarPrefactor as exc:
        return _polar_report(identity_id, p, "float", None, str(exc))
    report = VerifyReport(identity_id, p, "float", PASS)
    values = {}
    try:
        for a, b in case.links:
            for kind in (a, b):
                if kind not in values:
                    values[kind] = eval_side_float(built, kind, xf, max_terms=max_terms)[0]
            diff = rel_diff(values[a], values[b])
            ok = diff <= tol
            report.links.append(LinkOutcome(_link_name(a, b), PASS if ok else FAIL, 1, diff))
            if not ok:
                report.status = FAIL
                if report.first_divergence is None:
                    report.first_divergence = {
                        "link": _link_name(a, b),
                        "x": format_rational(as_rational(x)) if not isinstance(x, float) else repr(x),
                        "lhs": repr(values[a]),
                        "rhs": repr(values[b]),
                    }
    except PoleWithinTruncation as exc:
        return _polar_report(identity_id, p, "float", None, str(exc))
    except NoConvergence as exc:
        report.status = FAIL
        report.detail = f"NoConvergence: {exc}"
    return report


# -- sweeps ----------------------------------------------------------------------


def run_trial(identity_id: str, trial: int, cfg: VerifyConfig) -> VerifyReport:
    try:
        p = sample_params(cfg.seed, trial, cfg, identity_id)
    except SamplerExhausted as exc:
        return VerifyReport(identity_id, None, "exact", SKIPPED_POLAR, order=cfg.order, detail=str(exc), trial=trial)
    case = get_case(identity_id)
    if not case.has_e:
        p = replace(p, e=None)
    report = verify_exact(identity_id, p, cfg.order)
    report.trial = trial
    if cfg.float_check and report.status != SKIPPED_POLAR:
        fr = verify_float(identity_id, p, cfg.float_x, cfg.float_tol)
        diffs = [link.max_rel_diff for link in fr.links if link.max_rel_diff is not None]
        report.float_check = {
            "x": format_rational(cfg.float_x),
            "tol": cfg.float_tol,
            "status": fr.status,
            "max_rel_diff": max(diffs) if diffs else None,
        }
        if fr.detail:
            report.float_check["detail"] = fr.detail
        if fr.status == FAIL:
            report.status = FAIL
            report.detail = "float spot check failed"
    return report


def _run_task(args):
    return run_trial(*args)


@dataclass
class SweepSummary:
    rows: list
    total: int
    passed: int
    failed: int
    skipped: int

    def to_json(self):
        return {
            "total": self.total,
            "pass": self.passed,
            "fail": self.failed,
            "skipped": self.skipped,
            "per_id": self.rows,
        }


def summarize(reports, ids, order) -> SweepSummary:
    rows = []
    for ident in ids:
        mine = [r for r in reports if r.id == ident]
        rows.append({
            "id": ident,
            "trials": len(mine),
            "pass": sum(r.status == PASS for r in mine),
            "fail": sum(r.status == FAIL for r in mine),
            "skipped": sum(r.status == SKIPPED_POLAR for r in mine),
            "max_order_checked": order if any(r.status != SKIPPED_POLAR for r in mine) else 0,
        })
    return SweepSummary(
        rows,
        len(reports),
        sum(r.status == PASS for r in reports),
        sum(r.status == FAIL for r in reports),
        sum(r.status == SKIPPED_POLAR for r in reports),
    )


def verify_sweep(ids=None, cfg: VerifyConfig = VerifyConfig(), jobs: int = 1):
    """Run ``cfg.trials`` sampled trials per id; returns (reports, summary).

    Parameter streams depend only on (seed, id, trial), and results come
    back in (id, trial) order, so ``jobs`` never changes the output.
    """
    ids = list(IDS if ids is None else ids)
    for ident in ids:
        get_case(ident)
    tasks = [(ident, t, cfg) for ident in ids for t in range(cfg.trials)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_task, tasks, chunksize=4))
    else:
        reports = [run_trial(*t) for t in tasks]
    return reports, summarize(reports, ids, cfg.order)


CSV_FIELDS = ("id", "trials", "pass", "fail", "skipped", "max_order_checked")


def summary_csv(summary: SweepSummary) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in summary.rows:
        writer.writerow(row)
    return buf.getvalue()
