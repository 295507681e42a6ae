"""Multi-index hypergeometric series in one formal variable.

A :class:`SeriesSpec` stands for

    prefactor_coeff * x**prefactor_degree
        * sum over k in N^n of  prod_num (a)_{w.k} / prod_den (b)_{w.k}
                               * prod_i (coeff_i * x**degree_i)**k_i / k_i!

where every parameter carries an integer weight vector ``w`` and ``w.k`` is
the dot product with the summation multi-index.  This covers pFq, the
Kampe de Feriet and Srivastava-Daoust double series and the triple F(3)
series, so a single engine produces exact Taylor coefficients and
floating-point values for all of them.

Multi-indices are visited by increasing x-degree; inside one degree block
the order is reverse-lexicographic (first index largest first).  Terms are
built by running ratios from the neighbour ``k - e_i`` where ``i`` is the
first nonzero index, so every Pochhammer product is updated incrementally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import (
    DegreeZeroArgument,
    InvalidInput,
    InvalidSpec,
    NoConvergence,
    PoleAtIndex,
    PoleWithinTruncation,
)
from .numeric import as_rational, format_rational, is_nonpositive_integer, parse_rational, pochhammer

DEFAULT_SAFE_RADIUS = 0.5
DEFAULT_REL_TOL = 1e-13
DEFAULT_MAX_TERMS = 10**6
_QUIET_BLOCKS = 3


@dataclass(frozen=True)
class WeightedParam:
    """Parameter ``value`` entering as ``(value)_{weights . k}``."""

    value: Fraction
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "value", as_rational(self.value))
        weights = tuple(int(w) for w in self.weights)
        if any(w < 0 for w in weights):
            raise InvalidSpec(f"parameter {self.label()} has a negative weight {weights}")
        if not any(weights):
            raise InvalidSpec(f"parameter {format_rational(self.value)} has all-zero weights {weights}")
        object.__setattr__(self, "weights", weights)

    def lag(self, k: Sequence[int]) -> int:
        return sum(w * ki for w, ki in zip(self.weights, k))

    def label(self) -> str:
        w = ",".join(str(x) for x in self.weights)
        return f"[{format_rational(self.value)}: {w}]"


@dataclass(frozen=True)
class ArgMonomial:
    """The series argument ``coeff * x**degree``."""

    coeff: Fraction
    degree: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_rational(self.coeff))
        if int(self.degree) < 0:
            raise InvalidSpec(f"argument degree must be nonnegative, got {self.degree}")
        object.__setattr__(self, "degree", int(self.degree))

    @property
    def active(self) -> bool:
        return self.coeff != 0


@dataclass(frozen=True)
class SeriesSpec:
    index_count: int
    numerator: tuple[WeightedParam, ...] = ()
    denominator: tuple[WeightedParam, ...] = ()
    args: tuple[ArgMonomial, ...] = ()
    prefactor_coeff: Fraction = Fraction(1)
    prefactor_degree: int = 0

    def __post_init__(self):
        if self.index_count not in (1, 2, 3):
            raise InvalidSpec(f"index_count must be 1, 2 or 3, got {self.index_count}")
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominator", tuple(self.denominator))
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(self, "prefactor_coeff", as_rational(self.prefactor_coeff))
        if self.prefactor_degree < 0:
            raise InvalidSpec("prefactor degree must be nonnegative")
        if len(self.args) != self.index_count:
            raise InvalidSpec(f"expected {self.index_count} arguments, got {len(self.args)}")
        for p in self.numerator + self.denominator:
            if len(p.weights) != self.index_count:
                raise InvalidSpec(
                    f"parameter {p.label()} has {len(p.weights)} weights, series has {self.index_count} indices"
                )

    def scaled(self, coeff, degree: int = 0) -> "SeriesSpec":
        """Same series multiplied by ``coeff * x**degree``."""
        return SeriesSpec(
            self.index_count,
            self.numerator,
            self.denominator,
            self.args,
            self.prefactor_coeff * as_rational(coeff),
            self.prefactor_degree + degree,
        )


@dataclass(frozen=True)
class PoleReport:
    offending: tuple[tuple[WeightedParam, tuple[int, ...]], ...] = field(default=())

    def __bool__(self):
        return bool(self.offending)

    def describe(self) -> str:
        if not self.offending:
            return "no poles"
        return "; ".join(f"{p.label()} vanishes at k={k}" for p, k in self.offending)


class FloatEval(NamedTuple):
    value: float
    est_error: float
    terms_used: int


def _check_degrees(spec: SeriesSpec):
    for i, a in enumerate(spec.args):
        if a.active and a.degree == 0:
            raise DegreeZeroArgument(
                f"argument {i} is {format_rational(a.coeff)}*x^0; coefficient extraction would not terminate"
            )


def _compositions(degrees: Sequence[int], active: Sequence[bool], total: int):
    """Multi-indices with sum(degrees[i] * k[i]) == total, reverse-lex order."""
    n = len(degrees)
    out = []
    k = [0] * n

    def rec(i, remaining):
        if i == n:
            if remaining == 0:
                out.append(tuple(k))
            return
        if not active[i]:
            k[i] = 0
            rec(i + 1, remaining)
            return
        for ki in range(remaining // degrees[i], -1, -1):
            k[i] = ki
            rec(i + 1, remaining - ki * degrees[i])
        k[i] = 0

    rec(0, total)
    return out


def enumerate_indices(spec: SeriesSpec, order: int):
    """Yield ``(k, x_degree)`` for every multi-index with x-degree <= order."""
    _check_degrees(spec)
    degrees = [a.degree for a in spec.args]
    active = [a.active for a in spec.args]
    for block in range(order - spec.prefactor_degree + 1):
        for k in _compositions(degrees, active, block):
            yield k, block + spec.prefactor_degree


def term_coeff(spec: SeriesSpec, k: Sequence[int]) -> tuple[Fraction, int]:
    """Exact coefficient and x-degree of the term at multi-index ``k``.

    Computed from scratch (no running ratios), so it doubles as an
    independent check on :func:`taylor_coeffs`.
    """
    k = tuple(int(v) for v in k)
    if len(k) != spec.index_count or any(v < 0 for v in k):
        raise InvalidInput(f"bad multi-index {k} for a {spec.index_count}-index series")
    den = Fraction(1)
    for b in spec.denominator:
        value = pochhammer(b.value, b.lag(k))
        if value == 0:
            raise PoleAtIndex(b.label(), k)
        den *= value
    num = spec.prefactor_coeff
    for a in spec.numerator:
        num *= pochhammer(a.value, a.lag(k))
    degree = spec.prefactor_degree
    for ki, arg in zip(k, spec.args):
        num *= arg.coeff**ki
        den *= math.factorial(ki)
        degree += arg.degree * ki
    return num / den, degree


def pole_check(spec: SeriesSpec, order: int) -> PoleReport:
    """Denominator parameters whose Pochhammer vanishes within x-degree <= order."""
    polar = [b for b in spec.denominator if is_nonpositive_integer(b.value)]
    if not polar:
        return PoleReport()
    found = []
    for b in polar:
        threshold = 1 - b.value.numerator
        for k, _ in enumerate_indices(spec, order):
            if b.lag(k) >= threshold:
                found.append((b, k))
                break
    return PoleReport(tuple(found))


class _Stepper:
    """Running-ratio term update ``term(k + e_i) = term(k) * ratio(k, i)``."""

    def __init__(self, spec: SeriesSpec, arg_values, convert):
        self.spec = spec
        self.num = [(convert(p.value), p.weights) for p in spec.numerator]
        self.den = [(convert(p.value), p.weights, p) for p in spec.denominator]
        self.arg_values = list(arg_values)

    def ratio(self, k, i):
        r = self.arg_values[i] / (k[i] + 1)
        for value, weights in self.num:
            wi = weights[i]
            if wi:
                base = value + sum(w * kj for w, kj in zip(weights, k))
                for t in range(wi):
                    r *= base + t
        for value, weights, param in self.den:
            wi = weights[i]
            if wi:
                base = value + sum(w * kj for w, kj in zip(weights, k))
                for t in range(wi):
                    f = base + t
                    if f == 0:
                        nxt = list(k)
                        nxt[i] += 1
                        raise PoleWithinTruncation(PoleReport(((param, tuple(nxt)),)))
                    r /= f
        return r

    def next_term(self, cache, k):
        i = next(j for j, v in enumerate(k) if v)
        prev = list(k)
        prev[i] -= 1
        prev = tuple(prev)
        return cache[prev] * self.ratio(prev, i)


def taylor_coeffs(spec: SeriesSpec, order: int) -> list[Fraction]:
    """Exact coefficients of x^0 ... x^order of the represented series."""
    if order < 0:
        raise InvalidInput("order must be nonnegative")
    _check_degrees(spec)
    report = pole_check(spec, order)
    if report:
        raise PoleWithinTruncation(report, order)
    coeffs = [Fraction(0)] * (order + 1)
    stepper = _Stepper(spec, [a.coeff for a in spec.args], as_rational)
    cache: dict[tuple[int, ...], Fraction] = {}
    zero = (0,) * spec.index_count
    for k, deg in enumerate_indices(spec, order):
        term = spec.prefactor_coeff if k == zero else stepper.next_term(cache, k)
        cache[k] = term
        coeffs[deg] += term
    return coeffs


def partial_sum(coeffs: Sequence[Fraction], x) -> Fraction:
    """Exact value of ``sum coeffs[t] * x**t`` (Horner)."""
    x = as_rational(x)
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


@dataclass
class _BlockSum:
    value: float
    est_error: float
    terms_used: int
    degree: int


def _sum_blocks(spec, x, rel_tol, max_terms, max_degree):
    _check_degrees(spec)
    pre = float(spec.prefactor_coeff) * x**spec.prefactor_degree
    if x == 0:
        value = float(spec.prefactor_coeff) if spec.prefactor_degree == 0 else 0.0
        return _BlockSum(value, 0.0, 1, spec.prefactor_degree)

    degrees = [a.degree for a in spec.args]
    active = [a.active for a in spec.args]
    stepper = _Stepper(spec, [float(a.coeff) * x**a.degree for a in spec.args], float)
    reach = max([d for d, a in zip(degrees, active) if a], default=1)
    zero = (0,) * spec.index_count

    blocks: dict[int, dict[tuple[int, ...], float]] = {}
    partials: list[float] = []
    running = 0.0
    quiet = 0
    terms = 0
    last_mag = 0.0
    block = 0
    limit = None if max_degree is None else max_degree - spec.prefactor_degree
    while True:
        if limit is not None and block > limit:
            break
        indices = _compositions(degrees, active, block)
        if block > 0 and not any(active):
            break
        if indices:
            cur: dict[tuple[int, ...], float] = {}
            lookup = _ChainLookup(blocks, degrees)
            for k in indices:
                if k == zero:
                    t = 1.0
                else:
                    t = stepper.next_term(lookup, k)
                cur[k] = t
            terms += len(indices)
            blocks[block] = cur
            block_sum = math.fsum(cur.values())
            last_mag = abs(block_sum)
            partials.append(block_sum)
            running = math.fsum(partials)
            if last_mag <= rel_tol * abs(running):
                quiet += 1
            else:
                quiet = 0
            if limit is None and quiet >= _QUIET_BLOCKS:
                break
        for old in [b for b in blocks if b <= block - reach]:
            del blocks[old]
        if terms > max_terms:
            raise NoConvergence(
                f"series did not converge within {max_terms} terms at x={x!r} "
                f"(last block magnitude {last_mag:.3e}, running sum {running:.17g})"
            )
        block += 1
    est = last_mag / abs(running) if running else last_mag
    return _BlockSum(pre * running, est, terms, block - 1 + spec.prefactor_degree)


class _ChainLookup:
    """Read-only view of the retained degree blocks keyed by multi-index."""

    def __init__(self, blocks, degrees):
        self.blocks = blocks
        self.degrees = degrees

    def __getitem__(self, k):
        deg = sum(d * v for d, v in zip(self.degrees, k))
        return self.blocks[deg][k]


def eval_float(
    spec: SeriesSpec,
    x,
    rel_tol: float = DEFAULT_REL_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    *,
    safe_radius: float | None = DEFAULT_SAFE_RADIUS,
    max_degree: int | None = None,
) -> FloatEval:
    """Floating-point value of the series at ``x``.

    Degree blocks are summed with ``math.fsum``.  Summation stops once three
    consecutive nonempty blocks each contribute less than ``rel_tol`` times
    the running sum.  With ``max_degree`` the sum is truncated at that x-degree
    instead and no convergence is required.
    """
    if rel_tol <= 0:
        raise InvalidInput("rel_tol must be positive")
    x = float(x)
    if safe_radius is not None and abs(x) > safe_radius:
        raise InvalidInput(f"|x| = {abs(x)} is outside the safe radius {safe_radius}")
    res = _sum_blocks(spec, x, rel_tol, max_terms, max_degree)
    return FloatEval(res.value, res.est_error, res.terms_used)


def eval_float_detail(spec, x, rel_tol=DEFAULT_REL_TOL, max_terms=DEFAULT_MAX_TERMS,
                      safe_radius=DEFAULT_SAFE_RADIUS, max_degree=None) -> _BlockSum:
    x = float(x)
    if safe_radius is not None and abs(x) > safe_radius:
        raise InvalidInput(f"|x| = {abs(x)} is outside the safe radius {safe_radius}")
    return _sum_blocks(spec, x, rel_tol, max_terms, max_degree)


# -- JSON wire format ---------------------------------------------------------


def _param_to_json(p: WeightedParam) -> dict:
    return {"value": format_rational(p.value), "weights": list(p.weights)}


def _rational_field(obj, key, where):
    try:
        raw = obj[key]
    except (KeyError, TypeError):
        raise InvalidSpec(f"{where}: missing field {key!r}") from None
    if isinstance(raw, int) and not isinstance(raw, bool):
        return Fraction(raw)
    if not isinstance(raw, str):
        raise InvalidSpec(f"{where}.{key}: rationals must be strings 'p/q', got {raw!r}")
    try:
        return parse_rational(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidSpec(f"{where}.{key}: {exc}") from None


def param_from_json(obj, where="param") -> WeightedParam:
    value = _rational_field(obj, "value", where)
    weights = obj.get("weights")
    if not isinstance(weights, list) or not all(isinstance(w, int) for w in weights):
        raise InvalidSpec(f"{where}.weights must be a list of integers")
    try:
        return WeightedParam(value, tuple(weights))
    except InvalidSpec as exc:
        raise InvalidSpec(f"{where}: {exc}") from None


def arg_from_json(obj, where="arg") -> ArgMonomial:
    coeff = _rational_field(obj, "coeff", where)
    degree = obj.get("degree", 1)
    if not isinstance(degree, int):
        raise InvalidSpec(f"{where}.degree must be an integer")
    return ArgMonomial(coeff, degree)


def spec_to_json(spec: SeriesSpec) -> dict:
    return {
        "indices": spec.index_count,
        "num": [_param_to_json(p) for p in spec.numerator],
        "den": [_param_to_json(p) for p in spec.denominator],
        "args": [{"coeff": format_rational(a.coeff), "degree": a.degree} for a in spec.args],
        "prefactor": {"coeff": format_rational(spec.prefactor_coeff), "degree": spec.prefactor_degree},
    }


def spec_from_json(obj) -> SeriesSpec:
    if not isinstance(obj, dict):
        raise InvalidSpec("series spec must be a JSON object")
    n = obj.get("indices")
    if not isinstance(n, int):
        raise InvalidSpec("series spec needs an integer 'indices' field")
    num = tuple(param_from_json(p, f"num[{i}]") for i, p in enumerate(obj.get("num", [])))
    den = tuple(param_from_json(p, f"den[{i}]") for i, p in enumerate(obj.get("den", [])))
    args = tuple(arg_from_json(a, f"args[{i}]") for i, a in enumerate(obj.get("args", [])))
    pre = obj.get("prefactor", {"coeff": "1", "degree": 0})
    coeff = _rational_field(pre, "coeff", "prefactor")
    degree = pre.get("degree", 0)
    if not isinstance(degree, int):
        raise InvalidSpec("prefactor.degree must be an integer")
    return SeriesSpec(n, num, den, args, coeff, degree)
