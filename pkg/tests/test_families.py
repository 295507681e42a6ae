from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import non_integer_rationals, rationals
from hyperreduce.errors import InvalidSpec
from hyperreduce.families import (
    F3Shape,
    KdfShape,
    SdShape,
    build_from_json,
    make_f3,
    make_kdf,
    make_pfq,
    make_sd,
)
from hyperreduce.reductions import ReductionParams, build_identity
from hyperreduce.series import ArgMonomial, taylor_coeffs, term_coeff

X = ArgMonomial(1, 1)
ZERO = ArgMonomial(0, 1)
HALF = Fraction(1, 2)


def test_pfq_examples():
    assert taylor_coeffs(make_pfq([], [], X), 6) == taylor_coeffs(make_pfq([], []), 6)
    assert taylor_coeffs(make_pfq([], [], X), 4) == [1, 1, HALF, Fraction(1, 6), Fraction(1, 24)]
    assert taylor_coeffs(make_pfq([1, 1], [2], X), 3) == [1, HALF, Fraction(1, 3), Fraction(1, 4)]


def test_eq14_pfq_numerators_at_beta_equal_alpha():
    a, d, e = Fraction(2, 3), Fraction(5, 2), Fraction(7, 2)
    built = build_identity("T1E2", ReductionParams(d, e, a, a, 0, 0))
    (term,) = built.rhs.terms
    values = sorted(p.value for p in term.series.numerator)
    assert values == sorted([a, a + HALF, d / 2, (d + 1) / 2])


def test_kdf_eq13_lhs_first_coefficient():
    for a, b in [(Fraction(1, 3), Fraction(1, 5)), (Fraction(-7, 2), Fraction(4))]:
        spec = make_kdf(KdfShape([1], [a], [b], [2], [2 * a], [2 * b], X, X))
        # d/e * (a/(2a) + b/(2b)) = 1/2
        assert taylor_coeffs(spec, 1) == [1, HALF]


def test_sd_eq13_rhs_first_coefficient():
    spec = make_sd(SdShape(
        coupled_num=[(1, (1, 2))],
        col_num=[(Fraction(4, 15), (0, 1)), (Fraction(19, 30), (0, 1))],
        coupled_den=[(2, (1, 2))],
        col_den=[(Fraction(5, 6), (0, 1)), (Fraction(7, 10), (0, 1)), (Fraction(8, 15), (0, 1))],
        arg1=X,
        arg2=ArgMonomial(Fraction(1, 4), 2),
    ))
    assert taylor_coeffs(spec, 1) == [1, HALF]


def test_sd_weight_structure():
    spec = make_sd(SdShape(coupled_num=[(Fraction(3, 2), (1, 2))], arg2=ArgMonomial(Fraction(1, 4), 2)))
    for r in range(4):
        for s in range(4):
            coeff, deg = term_coeff(spec, (r, s))
            assert deg == r + 2 * s
            assert spec.numerator[0].lag((r, s)) == r + 2 * s


def test_sd_rejects_zero_weights():
    with pytest.raises(InvalidSpec, match="coupled_num"):
        make_sd(SdShape(coupled_num=[(1, (0, 0))]))


def test_f3_eq2_instance_normalized():
    spec = make_f3(F3Shape(
        all_num=[Fraction(3, 2)], single2_num=[HALF], single3_num=[Fraction(1, 3)],
        all_den=[Fraction(5, 2)], single2_den=[Fraction(7, 3)], single3_den=[Fraction(5, 3)],
        arg1=ArgMonomial(-1, 1), arg2=X, arg3=X,
    ))
    assert taylor_coeffs(spec, 0) == [1]


params = non_integer_rationals()


@st.composite
def kdf_shapes(draw):
    lists = lambda s: draw(st.lists(s, max_size=2))
    return KdfShape(
        lists(rationals()), lists(rationals()), lists(rationals()),
        lists(params), lists(params), lists(params),
        ArgMonomial(draw(rationals(3, 3).filter(bool)), 1),
        ArgMonomial(draw(rationals(3, 3).filter(bool)), draw(st.integers(1, 2))),
    )


@settings(max_examples=25, deadline=None)
@given(kdf_shapes())
def test_kdf_with_zero_second_argument_is_pfq(shape):
    kdf = make_kdf(KdfShape(**{**shape.__dict__, "arg2": ZERO}))
    pfq = make_pfq(list(shape.coupled_num) + list(shape.row_num),
                   list(shape.coupled_den) + list(shape.row_den), shape.arg1)
    assert taylor_coeffs(kdf, 12) == taylor_coeffs(pfq, 12)


@settings(max_examples=25, deadline=None)
@given(kdf_shapes())
def test_kdf_index_exchange_symmetry(shape):
    swapped = KdfShape(
        shape.coupled_num, shape.col_num, shape.row_num,
        shape.coupled_den, shape.col_den, shape.row_den,
        shape.arg2, shape.arg1,
    )
    assert taylor_coeffs(make_kdf(shape), 10) == taylor_coeffs(make_kdf(swapped), 10)


@settings(max_examples=25, deadline=None)
@given(kdf_shapes())
def test_sd_with_unit_weights_is_kdf(shape):
    sd = make_sd(SdShape(
        [(v, (1, 1)) for v in shape.coupled_num],
        [(v, (1, 0)) for v in shape.row_num],
        [(v, (0, 1)) for v in shape.col_num],
        [(v, (1, 1)) for v in shape.coupled_den],
        [(v, (1, 0)) for v in shape.row_den],
        [(v, (0, 1)) for v in shape.col_den],
        shape.arg1, shape.arg2,
    ))
    assert taylor_coeffs(sd, 10) == taylor_coeffs(make_kdf(shape), 10)


@settings(max_examples=20, deadline=None)
@given(kdf_shapes(), st.lists(rationals(), max_size=1), st.lists(params, max_size=1))
def test_f3_with_zero_third_argument_is_kdf(shape, pair12_num, pair12_den):
    # With k3 = 0 the (1,1,1) and (1,1,0) groups both couple indices 1 and 2,
    # and the (0,1,1) group acts on index 2 alone.
    f3 = make_f3(F3Shape(
        all_num=shape.coupled_num, pair12_num=pair12_num, single1_num=shape.row_num,
        single2_num=shape.col_num, pair23_num=[Fraction(7, 3)], single3_num=[Fraction(-5, 2)],
        all_den=shape.coupled_den, pair12_den=pair12_den, single1_den=shape.row_den,
        single2_den=shape.col_den, single3_den=[Fraction(1, 3)],
        arg1=shape.arg1, arg2=shape.arg2, arg3=ZERO,
    ))
    kdf = make_kdf(KdfShape(
        list(shape.coupled_num) + list(pair12_num), shape.row_num, list(shape.col_num) + [Fraction(7, 3)],
        list(shape.coupled_den) + list(pair12_den), shape.row_den, shape.col_den,
        shape.arg1, shape.arg2,
    ))
    assert taylor_coeffs(f3, 10) == taylor_coeffs(kdf, 10)


@settings(max_examples=15, deadline=None)
@given(params, rationals(), rationals(), st.integers(0, 3), st.integers(0, 3))
def test_f3_cancelling_d_equals_e(d, a, b, m, n):
    def f3(all_num, all_den):
        return make_f3(F3Shape(
            all_num=all_num, single2_num=[a], single3_num=[b],
            all_den=all_den, single2_den=[2 * a + m + Fraction(1, 7)], single3_den=[2 * b + n + Fraction(1, 7)],
            arg1=ArgMonomial(-1, 1), arg2=X, arg3=X,
        ))
    assert taylor_coeffs(f3([d], [d]), 9) == taylor_coeffs(f3([], []), 9)


def test_build_from_json_shapes():
    kdf = build_from_json("kdf", {"coupled_num": ["1"], "row_num": ["1/3"], "col_num": ["1/5"],
                                  "coupled_den": ["2"], "row_den": ["2/3"], "col_den": ["2/5"]})
    assert taylor_coeffs(kdf, 1) == [1, HALF]
    pfq = build_from_json("pfq", {"num": ["1", "1"], "den": ["2"]})
    assert taylor_coeffs(pfq, 3) == [1, HALF, Fraction(1, 3), Fraction(1, 4)]
    sd = build_from_json("sd", {"coupled_num": [{"value": "3/2", "weights": [1, 2]}],
                                "arg2": {"coeff": "1/4", "degree": 2}})
    assert sd.numerator[0].weights == (1, 2)
    f3 = build_from_json("f3", {"all_num": ["1"], "single2_num": ["1/2"], "arg1": {"coeff": "-1", "degree": 1}})
    assert f3.index_count == 3
    with pytest.raises(InvalidSpec, match=r"coupled_num\[0\]"):
        build_from_json("sd", {"coupled_num": [{"value": "1/2", "weights": [0, 0]}]})
    with pytest.raises(InvalidSpec):
        build_from_json("lauricella", {})
