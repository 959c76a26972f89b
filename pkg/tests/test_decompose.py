import pytest
from hypothesis import given
from hypothesis import strategies as st

import golden
import oracles
from regulith.decompose import Decomposition, decompose_all, decompose_greedy, disjoint, exact_covers
from regulith.polynomial import CountingPolynomial, Fraction, from_fraction
from regulith.regular import RegularSpec, indicator_of, points_of

SMALL = CountingPolynomial.from_coefficients(2, golden.SMALL_COEFS)
PB = CountingPolynomial.from_coefficients(5, golden.PB_INDICATOR)


def R(i):
    return RegularSpec.parse(5, golden.PB_R_FIXED[i - 1])


def test_disjoint_examples():
    assert disjoint(R(1), R(12)) and disjoint(R(1), R(14))
    assert not disjoint(R(1), R(1))
    assert disjoint(RegularSpec.parse(3, "+12"), RegularSpec.parse(3, "-12"))
    with pytest.raises(ValueError):
        disjoint(R(1), RegularSpec.parse(3, "+1"))


def test_disjoint_equals_point_disjointness():
    specs = [RegularSpec.parse(5, s) for s in golden.PB_R_FIXED]
    for a in specs:
        for b in specs:
            pa, pb_ = points_of(a).support(), points_of(b).support()
            assert disjoint(a, b) == (not pa & pb_)


def test_greedy_regular_input():
    r = RegularSpec.parse(4, "+12 -34")
    d = decompose_greedy(indicator_of(r))
    assert len(d) == 1 and indicator_of(d.parts[0]) == indicator_of(r)


def test_greedy_three_runs():
    d = decompose_greedy(SMALL)
    assert sorted(d.sizes) == [1, 2]
    assert d.is_valid()


def test_greedy_pb_walkthrough_with_preferred_order():
    prefer = [RegularSpec.parse(5, s).subgroup() for s, _ in (golden.PB_STEP1, golden.PB_STEP2, golden.PB_STEP3)]
    d = decompose_greedy(PB, prefer=prefer)
    assert d.sizes == [4, 4, 4]
    want = [indicator_of(RegularSpec.parse(5, s)) for s, _ in (golden.PB_STEP1, golden.PB_STEP2, golden.PB_STEP3)]
    assert [indicator_of(r) for r in d.parts] == want
    assert d.is_valid()


def test_greedy_pb_default_order():
    d = decompose_greedy(PB)
    assert d.sizes == [4, 4, 4] and d.is_valid()


def test_greedy_rejects_bad_input():
    with pytest.raises(ValueError):
        decompose_greedy(SMALL * 2)
    with pytest.raises(ValueError):
        decompose_greedy(CountingPolynomial(3, {}))


def test_decompose_all_pb():
    ds = decompose_all(PB, 4)
    assert len(ds) == 5
    with pytest.raises(ValueError):
        decompose_all(PB, 8)
    assert all(d.is_valid() for d in ds)


def test_decompose_all_singletons():
    ds = decompose_all(SMALL, 1)
    assert len(ds) == 1 and ds[0].sizes == [1, 1, 1]


def test_decompose_all_errors():
    with pytest.raises(ValueError):
        decompose_all(PB, 3)
    with pytest.raises(ValueError):
        decompose_all(SMALL, 2)  # 2 does not divide 3


def test_decompose_all_parallel_matches_serial():
    F = from_fraction(Fraction.from_points(6, range(0, 64, 2)))
    assert decompose_all(F, 16, workers=4) == decompose_all(F, 16)


def test_twelve_points_into_pairs():
    # any two distinct points form a regular fraction, so pairings are 11!! in number
    F = from_fraction(Fraction.from_points(4, range(12)))
    assert len(decompose_all(F, 2)) == 10395


def test_exact_covers_small():
    sets = [frozenset(s) for s in ({1, 2}, {3}, {1}, {2, 3}, {2})]
    covers = sorted(sorted(c) for c in exact_covers([1, 2, 3], sets))
    assert covers == [[0, 1], [1, 2, 4], [2, 3]]


def test_decomposition_is_valid_detects_overlap():
    F = indicator_of(RegularSpec.parse(2, "-1"))
    target = F.to_fraction()
    bad = Decomposition((RegularSpec.parse(2, "-1"), RegularSpec.parse(2, "-1 -2")), target)
    assert not bad.is_valid()
    good = Decomposition((RegularSpec.parse(2, "-1 -2"), RegularSpec.parse(2, "-1 +2")), target)
    assert good.is_valid()


@st.composite
def small_targets(draw):
    m = draw(st.integers(1, 4))
    size = draw(st.sampled_from([s for s in (1, 2, 4, 8) if s <= 1 << m]))
    pts = draw(st.sets(st.integers(0, (1 << m) - 1), min_size=size, max_size=8 if size < 4 else 16))
    pts = sorted(pts)[: len(pts) - len(pts) % size]
    return Fraction.from_points(m, pts), size


@given(small_targets())
def test_decompose_all_matches_oracle(case):
    f, size = case
    ds = decompose_all(from_fraction(f), size)
    got = [frozenset(frozenset(p) for p in d.point_sets()) for d in ds]
    assert len(got) == len(set(got))
    want = oracles.partitions(f.support(), oracles.regular_subsets(f.support(), size))
    assert set(got) == set(want)


@given(st.integers(1, 4).flatmap(lambda m: st.tuples(st.just(m), st.sets(st.integers(0, (1 << m) - 1), min_size=1))))
def test_greedy_always_valid(case):
    m, pts = case
    d = decompose_greedy(from_fraction(Fraction.from_points(m, pts)))
    assert d.is_valid()
    assert d.sizes == sorted(d.sizes, reverse=True)
