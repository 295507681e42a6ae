"""The sixteen reduction identities as executable builders.

Every identity has a Kampe de Feriet left-hand side and a right-hand side
that is a finite double sum over ``0 <= j <= m``, ``0 <= k <= n`` of

    C[j, k] * x**(j+k) * inner_series[j, k](x)

where the inner series is a Srivastava-Daoust double series in
``(x, x**2/4)`` for the single-link identities and a single 4F5 in
``x**2/4`` (4F3 in ``x**2`` when e is absent) for the double-link ones,
which also carry a triple F(3) middle member.

The three theorems differ only in the direction of the shifts ``2a+m`` vs
``2a-m`` and ``2b+n`` vs ``2b-n``.  A "minus" side is handled by working
with the shifted parameter ``a - m`` (resp. ``b - n``): then
``2a - m = 2(a-m) + m`` and every factor keeps the same shape, plus a sign
``(-1)**j`` (resp. ``(-1)**k``).

The SC13..SC16 cases are written out directly from their closed
``m = n = 0`` forms, not by calling the theorem builders, so comparing them
with ``T*`` at ``m = n = 0`` is a genuine cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import InvalidInput, PolarPrefactor, UnknownIdentity
from .families import F3Shape, KdfShape, SdShape, make_f3, make_kdf, make_pfq, make_sd
from .numeric import as_rational, format_rational, pochhammer
from .series import ArgMonomial, SeriesSpec, pole_check, taylor_coeffs

HALF = Fraction(1, 2)
X = ArgMonomial(1, 1)
MINUS_X = ArgMonomial(-1, 1)
QUARTER_X2 = ArgMonomial(Fraction(1, 4), 2)
X2 = ArgMonomial(1, 2)

KDF, F3, SUM = "KDF", "F3", "SUM"


@dataclass(frozen=True)
class ReductionParams:
    d: Fraction
    e: Optional[Fraction]
    alpha: Fraction
    beta: Fraction
    m: int = 0
    n: int = 0

    def __post_init__(self):
        for name in ("d", "alpha", "beta"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.e is not None:
            object.__setattr__(self, "e", as_rational(self.e))
        for name in ("m", "n"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise InvalidInput(f"{name} must be a nonnegative integer, got {v!r}")

    def to_json(self) -> dict:
        out = {
            "d": format_rational(self.d),
            "e": None if self.e is None else format_rational(self.e),
            "alpha": format_rational(self.alpha),
            "beta": format_rational(self.beta),
            "m": self.m,
            "n": self.n,
        }
        return out

    @classmethod
    def from_json(cls, obj) -> "ReductionParams":
        if not isinstance(obj, dict):
            raise InvalidInput("params must be a JSON object")
        try:
            def r(key):
                v = obj[key]
                if isinstance(v, float):
                    raise InvalidInput(f"{key}: rationals must be given as 'p/q' strings")
                return as_rational(v)

            e = obj.get("e")
            return cls(
                d=r("d"),
                e=None if e is None else r("e"),
                alpha=r("alpha"),
                beta=r("beta"),
                m=obj.get("m", 0),
                n=obj.get("n", 0),
            )
        except KeyError as exc:
            raise InvalidInput(f"params missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"bad params: {exc}") from None


@dataclass(frozen=True)
class IdentityCase:
    id: str
    equation: int
    theorem: Optional[int]
    has_e: bool
    double: bool
    links: tuple = field(default=())
    params: tuple = field(default=())

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "equation": self.equation,
            "links": [f"{a}={b}" for a, b in self.links],
            "params": list(self.params),
        }


def _registry():
    cases = {}
    eq = 0
    for theorem in (1, 2, 3):
        for slot in range(4):
            eq += 1
            has_e = slot in (0, 1)
            double = slot in (1, 3)
            cases[f"T{theorem}E{eq}"] = (eq, theorem, has_e, double)
    for slot in range(4):
        eq += 1
        cases[f"SC{eq}"] = (eq, None, slot in (0, 1), slot in (1, 3))
    out = {}
    for ident, (eq, theorem, has_e, double) in cases.items():
        links = ((KDF, F3), (F3, SUM)) if double else ((KDF, SUM),)
        names = ["d"] + (["e"] if has_e else []) + ["alpha", "beta"]
        if theorem is not None:
            names += ["m", "n"]
        out[ident] = IdentityCase(ident, eq, theorem, has_e, double, links, tuple(names))
    return out


REGISTRY: dict[str, IdentityCase] = _registry()
IDS = tuple(REGISTRY)


def registry_json() -> list[dict]:
    return [case.to_json() for case in REGISTRY.values()]


def get_case(identity_id: str) -> IdentityCase:
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentity(f"unknown identity id {identity_id!r}; known: {', '.join(IDS)}") from None


# -- theorem data ----------------------------------------------------------------

# (alpha side, beta side): "+" means 2a+m, "-" means 2a-m.
_SIDES = {1: ("+", "+"), 2: ("-", "-"), 3: ("+", "-")}

# Named structural factors of C[j, k], for mutation tests.
FACTORS = (
    "poch_d",      # (d)_{j+k}
    "poch_e",      # 1/(e)_{j+k}
    "poch_m",      # (-m)_j
    "poch_n",      # (-n)_k
    "poch_2a",     # (2a'-1)_j
    "poch_2b",     # (2b'-1)_k
    "den_2a",      # 1/(2a+-m)_j
    "den_2b",      # 1/(2b+-n)_k
    "den_a_half",  # 1/(a'-1/2)_j
    "den_b_half",  # 1/(b'-1/2)_k
    "pow4",        # 1/2^{2j+2k}
    "fact_j",      # 1/j!
    "fact_k",      # 1/k!
    "sign",        # (-1)^{j+k} (T2) or (-1)^k (T3)
)

# Rejected readings of the printed formulas, kept so tests can show that the
# exact oracle refutes them.
VARIANTS = {
    "one_plus_d_half": ("T3E10",),        # (1+d+j+k)/2 instead of (d+j+k)/2
    "keep_e_factor": ("T3E11",),            # keep 1/(e)_{j+k} in the prefactor
    "quarter_x2": ("T1E4", "T2E8", "T3E12", "SC16"),  # 4F3 at x^2/4 instead of x^2
}


class _Shifted(NamedTuple):
    a: Fraction   # alpha or alpha - m
    b: Fraction   # beta or beta - n
    den_a: Fraction  # 2 alpha +- m
    den_b: Fraction  # 2 beta +- n
    sign_j: bool
    sign_k: bool


def _shifted(theorem: int, p: ReductionParams) -> _Shifted:
    sa, sb = _SIDES[theorem]
    a = p.alpha if sa == "+" else p.alpha - p.m
    b = p.beta if sb == "+" else p.beta - p.n
    den_a = 2 * p.alpha + p.m if sa == "+" else 2 * p.alpha - p.m
    den_b = 2 * p.beta + p.n if sb == "+" else 2 * p.beta - p.n
    return _Shifted(a, b, den_a, den_b, sa == "-", sb == "-")


def _prefactor(theorem, j, k, p, use_e, drop=None) -> Fraction:
    if j < 0 or k < 0:
        raise InvalidInput("summation indices must be nonnegative")
    s = _shifted(theorem, p)
    num = {
        "poch_d": pochhammer(p.d, j + k),
        "poch_m": pochhammer(Fraction(-p.m), j),
        "poch_n": pochhammer(Fraction(-p.n), k),
        "poch_2a": pochhammer(2 * s.a - 1, j),
        "poch_2b": pochhammer(2 * s.b - 1, k),
        "sign": Fraction((-1) ** ((j if s.sign_j else 0) + (k if s.sign_k else 0))),
    }
    den = {
        "den_2a": (f"(2alpha{'-' if s.sign_j else '+'}m)_j", pochhammer(s.den_a, j)),
        "den_2b": (f"(2beta{'-' if s.sign_k else '+'}n)_k", pochhammer(s.den_b, k)),
        "den_a_half": ("(alpha'-1/2)_j", pochhammer(s.a - HALF, j)),
        "den_b_half": ("(beta'-1/2)_k", pochhammer(s.b - HALF, k)),
        "pow4": ("2^(2j+2k)", Fraction(4) ** (j + k)),
        "fact_j": ("j!", Fraction(pochhammer(1, j))),
        "fact_k": ("k!", Fraction(pochhammer(1, k))),
    }
    if use_e:
        if p.e is None:
            raise InvalidInput("this identity needs the parameter e")
        den["poch_e"] = ("(e)_{j+k}", pochhammer(p.e, j + k))
    value = Fraction(1)
    for name, (label, v) in den.items():
        if v == 0:
            raise PolarPrefactor(f"prefactor denominator {label} vanishes at j={j}, k={k}")
        if name != drop:
            value /= v
    for name, v in num.items():
        if name != drop:
            value *= v
    return value


def coeff_T1(j: int, k: int, p: ReductionParams, drop: Optional[str] = None) -> Fraction:
    return _prefactor(1, j, k, p, p.e is not None, drop)


def coeff_T2(j: int, k: int, p: ReductionParams, drop: Optional[str] = None) -> Fraction:
    return _prefactor(2, j, k, p, p.e is not None, drop)


def coeff_T3(j: int, k: int, p: ReductionParams, drop: Optional[str] = None) -> Fraction:
    return _prefactor(3, j, k, p, p.e is not None, drop)


# -- builders --------------------------------------------------------------------


@dataclass(frozen=True)
class RhsTerm:
    j: int
    k: int
    coeff: Fraction
    x_power: int
    series: SeriesSpec


@dataclass(frozen=True)
class RhsSum:
    terms: tuple[RhsTerm, ...]


class BuiltIdentity(NamedTuple):
    lhs: SeriesSpec
    mid: Optional[SeriesSpec]
    rhs: RhsSum


def _lhs_kdf(p, den_a, den_b, col_num, second_arg, has_e):
    return make_kdf(KdfShape(
        coupled_num=[p.d],
        row_num=[p.alpha],
        col_num=[col_num],
        coupled_den=[p.e] if has_e else [],
        row_den=[den_a],
        col_den=[den_b],
        arg1=X,
        arg2=second_arg,
    ))


def _mid_f3(p, den_a, den_b, has_e):
    return make_f3(F3Shape(
        all_num=[p.d],
        single2_num=[p.alpha],
        single3_num=[p.beta],
        all_den=[p.e] if has_e else [],
        single2_den=[den_a],
        single3_den=[den_b],
        arg1=MINUS_X,
        arg2=X,
        arg3=X,
    ))


def _inner_sd(d_shift, e_shift, a, b, j, k):
    s = a + b + j + k
    return make_sd(SdShape(
        coupled_num=[(d_shift, (1, 2))],
        col_num=[(s / 2, (0, 1)), ((s + 1) / 2, (0, 1))],
        coupled_den=[] if e_shift is None else [(e_shift, (1, 2))],
        col_den=[(a + j + HALF, (0, 1)), (b + k + HALF, (0, 1)), (s, (0, 1))],
        arg1=X,
        arg2=QUARTER_X2,
    ))


def _inner_pfq(d_num, e_shift, a, b, j, k, variant=None):
    # (d)_{2s} = 4^s (d/2)_s ((d+1)/2)_s; the 4^s cancels against (e)_{2s}
    # only when e is present, so the 4F3 forms run at x^2, not x^2/4.
    s = a + b + j + k
    num = [s / 2, (s + 1) / 2] + d_num
    den = [a + j + HALF, b + k + HALF, s]
    if e_shift is not None:
        den += [e_shift / 2, (e_shift + 1) / 2]
        arg = QUARTER_X2
    else:
        arg = QUARTER_X2 if variant == "quarter_x2" else X2
    return make_pfq(num, den, arg)


def _build_theorem(case, p, variant, drop_factor, drop_x_power):
    has_e = case.has_e
    if has_e and p.e is None:
        raise InvalidInput(f"{case.id} needs the parameter e")
    s = _shifted(case.theorem, p)
    keep_e_in_prefactor = has_e or variant == "keep_e_factor"
    if variant == "keep_e_factor" and p.e is None:
        raise InvalidInput("variant keep_e_factor needs a value for e")
    lhs_p = p if has_e else replace(p, e=None)

    if case.double:
        lhs = _lhs_kdf(lhs_p, s.den_a, s.den_b, s.den_b - p.beta, MINUS_X, has_e)
        mid = _mid_f3(lhs_p, s.den_a, s.den_b, has_e)
    else:
        lhs = _lhs_kdf(lhs_p, s.den_a, s.den_b, p.beta, X, has_e)
        mid = None

    terms = []
    for j in range(p.m + 1):
        for k in range(p.n + 1):
            c = _prefactor(case.theorem, j, k, p, keep_e_in_prefactor, drop_factor)
            e_shift = p.e + j + k if has_e else None
            if case.double:
                dn = p.d + j + k
                if variant == "one_plus_d_half":
                    d_num = [(1 + dn) / 2, (dn + 1) / 2]
                else:
                    d_num = [dn / 2, (dn + 1) / 2]
                inner = _inner_pfq(d_num, e_shift, s.a, s.b, j, k, variant)
            else:
                inner = _inner_sd(p.d + j + k, e_shift, s.a, s.b, j, k)
            terms.append(RhsTerm(j, k, c, 0 if drop_x_power else j + k, inner))
    return BuiltIdentity(lhs, mid, RhsSum(tuple(terms)))


def _build_special(case, p, variant):
    if p.m or p.n:
        raise InvalidInput(f"{case.id} is an m = n = 0 case; got m={p.m}, n={p.n}")
    if case.has_e and p.e is None:
        raise InvalidInput(f"{case.id} needs the parameter e")
    d, a, b = p.d, p.alpha, p.beta
    e = p.e if case.has_e else None
    ab = a + b
    if case.double:
        lhs = make_kdf(KdfShape(
            coupled_num=[d], row_num=[a], col_num=[b],
            coupled_den=[e] if e is not None else [], row_den=[2 * a], col_den=[2 * b],
            arg1=X, arg2=MINUS_X,
        ))
        mid = make_f3(F3Shape(
            all_num=[d], single2_num=[a], single3_num=[b],
            all_den=[e] if e is not None else [], single2_den=[2 * a], single3_den=[2 * b],
            arg1=MINUS_X, arg2=X, arg3=X,
        ))
        den = [a + HALF, b + HALF, ab]
        if e is not None:
            den += [e / 2, (e + 1) / 2]
            arg = QUARTER_X2
        else:
            arg = QUARTER_X2 if variant == "quarter_x2" else X2
        inner = make_pfq([ab / 2, (ab + 1) / 2, d / 2, (d + 1) / 2], den, arg)
    else:
        lhs = make_kdf(KdfShape(
            coupled_num=[d], row_num=[a], col_num=[b],
            coupled_den=[e] if e is not None else [], row_den=[2 * a], col_den=[2 * b],
            arg1=X, arg2=X,
        ))
        mid = None
        inner = make_sd(SdShape(
            coupled_num=[(d, (1, 2))],
            col_num=[(ab / 2, (0, 1)), ((ab + 1) / 2, (0, 1))],
            coupled_den=[(e, (1, 2))] if e is not None else [],
            col_den=[(a + HALF, (0, 1)), (b + HALF, (0, 1)), (ab, (0, 1))],
            arg1=X, arg2=QUARTER_X2,
        ))
    return BuiltIdentity(lhs, mid, RhsSum((RhsTerm(0, 0, Fraction(1), 0, inner),)))


def build_identity(
    identity_id: str,
    p: ReductionParams,
    *,
    variant: Optional[str] = None,
    drop_factor: Optional[str] = None,
    drop_x_power: bool = False,
) -> BuiltIdentity:
    """Instantiate both sides of one identity.

    ``variant``, ``drop_factor`` and ``drop_x_power`` build deliberately
    wrong right-hand sides (rejected readings and mutations) so tests can
    show that exact verification tells them apart.
    """
    case = get_case(identity_id)
    if variant is not None:
        if variant not in VARIANTS:
            raise InvalidInput(f"unknown variant {variant!r}")
        if identity_id not in VARIANTS[variant]:
            raise InvalidInput(f"variant {variant!r} applies only to {', '.join(VARIANTS[variant])}")
    if drop_factor is not None and drop_factor not in FACTORS:
        raise InvalidInput(f"unknown prefactor factor {drop_factor!r}")
    if case.theorem is None:
        if drop_factor or drop_x_power:
            raise InvalidInput("special cases have no prefactor to mutate")
        return _build_special(case, p, variant)
    return _build_theorem(case, p, variant, drop_factor, drop_x_power)


def rhs_sum_taylor(rhs: RhsSum, order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for term in rhs.terms:
        if term.coeff == 0 or term.x_power > order:
            continue
        inner = taylor_coeffs(term.series, order - term.x_power)
        for t, c in enumerate(inner):
            out[t + term.x_power] += term.coeff * c
    return out


def rhs_taylor(identity_id: str, p: ReductionParams, order: int, **mutations) -> list[Fraction]:
    return rhs_sum_taylor(build_identity(identity_id, p, **mutations).rhs, order)


def identity_poles(built: BuiltIdentity, order: int) -> list[str]:
    """Descriptions of every series pole within the truncation order."""
    found = []
    for name, spec in (("lhs", built.lhs), ("mid", built.mid)):
        if spec is not None:
            report = pole_check(spec, order)
            if report:
                found.append(f"{name}: {report.describe()}")
    for term in built.rhs.terms:
        if term.x_power <= order:
            report = pole_check(term.series, order - term.x_power)
            if report:
                found.append(f"rhs[j={term.j},k={term.k}]: {report.describe()}")
    return found
