from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

import golden
import oracles
from regulith.gf2core import Point
from regulith.polynomial import (
    CountingPolynomial,
    Fraction,
    add,
    evaluate,
    format_polynomial,
    from_fraction,
    from_fraction_naive,
    is_indicator,
    multiply,
    orthogonal_strength,
    subtract,
)
from regulith.regular import RegularSpec, indicator_of, regularity_of

SMALL = CountingPolynomial.from_coefficients(2, golden.SMALL_COEFS)


@st.composite
def point_set_pairs(draw):
    m = draw(st.integers(1, 5))
    pts = st.sets(st.integers(0, (1 << m) - 1))
    return Fraction.from_points(m, draw(pts)), Fraction.from_points(m, draw(pts))


@st.composite
def multisets(draw):
    m = draw(st.integers(1, 5))
    counts = draw(st.dictionaries(st.integers(0, (1 << m) - 1), st.integers(1, 5)))
    return Fraction(m, counts)


def test_from_fraction_examples():
    assert from_fraction(Fraction.from_rows(golden.SMALL_RUNS)) == SMALL
    single = from_fraction(Fraction.from_rows([(-1, -1)]))
    assert [single.coefficient(a) for a in range(4)] == [Q(1, 4), Q(-1, 4), Q(-1, 4), Q(1, 4)]
    full = from_fraction(Fraction.full(3))
    assert full == CountingPolynomial.constant(3, 1)


def test_evaluate_examples():
    assert evaluate(SMALL, Point.from_levels((-1, -1))) == 1
    assert evaluate(SMALL, Point.from_levels((1, 1))) == 0
    zero = CountingPolynomial(2, {})
    assert all(evaluate(zero, Point(p, 2)) == 0 for p in range(4))
    with pytest.raises(ValueError):
        evaluate(SMALL, Point(0, 3))


def test_union_of_two_regular_fractions():
    F1 = CountingPolynomial.from_coefficients(2, {"0": Q(1, 4), "1": Q(-1, 4), "2": Q(-1, 4), "12": Q(1, 4)})
    F2 = CountingPolynomial.from_coefficients(2, {"0": Q(1, 2), "12": Q(-1, 2)})
    assert add(F1, F2) - multiply(F1, F2) == SMALL
    assert subtract(add(F1, F2), F1 * F2) == SMALL


def test_pb_difference_chain():
    F = CountingPolynomial.from_coefficients(5, golden.PB_INDICATOR)
    R1 = indicator_of(RegularSpec.parse(5, golden.PB_STEP1[0]))
    R2 = indicator_of(RegularSpec.parse(5, golden.PB_STEP2[0]))
    R3 = indicator_of(RegularSpec.parse(5, golden.PB_STEP3[0]))
    assert F - R1 == CountingPolynomial.from_coefficients(5, golden.PB_AFTER_STEP1)
    assert F - R1 - R2 == CountingPolynomial.from_coefficients(5, golden.PB_AFTER_STEP2)
    assert F - R1 - R2 == R3


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        SMALL + CountingPolynomial.constant(3)
    with pytest.raises(ValueError):
        multiply(SMALL, CountingPolynomial.constant(3))


def test_is_indicator_examples():
    assert is_indicator(SMALL)
    assert not is_indicator(SMALL * 2)
    assert not is_indicator(CountingPolynomial.constant(2, Q(1, 2)))


def test_orthogonal_strength_examples():
    F = CountingPolynomial.from_coefficients(5, golden.PB_INDICATOR)
    assert orthogonal_strength(F) == 2
    assert orthogonal_strength(CountingPolynomial.constant(4)) == 4
    assert orthogonal_strength(SMALL) == 0
    with pytest.raises(ValueError):
        orthogonal_strength(SMALL * 2)
    assert orthogonal_strength(SMALL * 2, counting=True) == 0


def test_regularity_examples():
    F2 = CountingPolynomial.from_coefficients(2, {"0": Q(1, 2), "12": Q(-1, 2)})
    r = regularity_of(F2)
    assert r.generators == (3,) and r.signs == (-1,)
    assert regularity_of(SMALL) is None
    assert regularity_of(CountingPolynomial.from_coefficients(5, golden.PB_INDICATOR)) is None
    with pytest.raises(ValueError):
        regularity_of(CountingPolynomial(2, {}))


def test_formatting():
    assert format_polynomial(SMALL) == "3/4 - 1/4 X1 - 1/4 X2 - 1/4 X12"
    assert format_polynomial(CountingPolynomial(3, {})) == "0"
    assert format_polynomial(CountingPolynomial.constant(2)) == "1"
    F = CountingPolynomial.from_coefficients(3, {"0": 1, "123": Q(-1, 2)})
    assert str(F) == "1 - 1/2 X123"


def test_coefficients_must_be_dyadic():
    with pytest.raises(ValueError):
        CountingPolynomial.from_coefficients(2, {"0": Q(1, 3)})


@given(multisets())
def test_roundtrip(f):
    F = from_fraction(f)
    assert all(F.evaluate(t) == f.count(t) for t in range(1 << f.m))
    assert F.is_counting()
    if f.run_count:
        assert F.to_fraction() == f


@given(multisets())
def test_fast_matches_naive_and_oracle(f):
    F = from_fraction(f)
    assert F == from_fraction_naive(f) == from_fraction(f, method="naive")
    assert [F.coefficient(a) for a in range(1 << f.m)] == oracles.coefficients(f.m, dict(f.counts))


@given(multisets())
def test_run_count_is_scaled_constant(f):
    F = from_fraction(f)
    assert sum(F.values()) == (1 << f.m) * F.coefficient(0) == f.run_count


@given(point_set_pairs())
def test_product_is_intersection(pair):
    f, g = pair
    assert from_fraction(f) * from_fraction(g) == from_fraction(f & g)


@given(point_set_pairs())
def test_indicator_is_idempotent(pair):
    f, _ = pair
    F = from_fraction(f)
    assert F.is_indicator() and F * F == F


@given(point_set_pairs())
def test_strength_matches_definition(pair):
    f, _ = pair
    if not f.run_count:
        return
    F = from_fraction(f)
    coefs = oracles.coefficients(f.m, dict(f.counts))
    s = 0
    while s < f.m and all(coefs[a] == 0 for a in range(1, 1 << f.m) if bin(a).count("1") <= s + 1):
        s += 1
    assert orthogonal_strength(F) == s


def test_multiset_fraction():
    f = Fraction.from_points(2, [0, 0, 3])
    assert f.run_count == 3 and f.distinct_count == 2 and not f.is_set()
    F = from_fraction(f)
    assert not F.is_indicator() and F.is_counting()
    assert F.evaluate(0) == 2
