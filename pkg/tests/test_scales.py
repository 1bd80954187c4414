import math
from fractions import Fraction as F

import pytest
from mpmath import mp
from hypothesis import given, strategies as st

from galelab.numeric import RealExpr
from galelab.scales import (
    MONOTONE_FROM, DomainError, domain_lower_bound, in_domain, monotone_threshold, scale_bounds,
    scale_delta, scale_eval,
)

half = F(1, 2)


@pytest.mark.parametrize("i, m, s, value", [(0, 10, half, 5), (1, 16, 1, 16),
                                            (2, 65536, half, 16), (1, 16, half, 4),
                                            (0, -3, F(2, 3), -2)])
def test_collapsing_examples(i, m, s, value):
    assert scale_eval(i, m, s) == RealExpr(value)


def test_irrational_value_is_symbolic_and_enclosed():
    e = scale_eval(1, 10, half)
    assert not e.is_rational
    lo, hi = scale_bounds(1, 10, half)
    assert lo * lo <= 10 <= hi * hi
    assert hi - lo < F(1, 10**30)


def test_delta_examples():
    assert scale_delta(0, 7, F(3, 5)) == RealExpr(F(3, 5))
    assert scale_delta(1, 15, 1) == RealExpr(1)
    lo, hi = scale_delta(1, 15, half).bounds(128)
    with mp.workprec(200):
        ref = F(str(4 - mp.sqrt(15)))
    assert abs(lo - ref) < F(1, 10**40) and abs(hi - ref) < F(1, 10**30)
    assert abs(ref - 0.12702) < 1e-5


def test_delta_cancels_exactly_when_summed():
    total = sum((scale_delta(2, m, half) for m in range(3, 10)), RealExpr(0))
    assert total == scale_eval(2, 10, half) - scale_eval(2, 3, half)


@pytest.mark.parametrize("i, a", [(0, -math.inf), (1, 0.0), (2, 1.0), (3, 2.0), (4, 4.0),
                                  (5, 16.0)])
def test_domain_lower_bounds(i, a):
    assert domain_lower_bound(i) == a


@pytest.mark.parametrize("i, m", [(1, 0), (2, 1), (3, 2), (4, 4), (5, 16), (1, -1)])
def test_domain_errors(i, m):
    assert not in_domain(i, m)
    with pytest.raises(DomainError):
        scale_eval(i, m, half)


def test_bad_arguments():
    with pytest.raises(ValueError):
        scale_eval(0, 3, -1)
    with pytest.raises(ValueError):
        scale_eval(6, 100, half)


ms = st.integers(min_value=17, max_value=10**6)


@given(st.integers(min_value=0, max_value=5), ms)
def test_rate_one_is_identity(i, m):
    assert scale_eval(i, m, 1) == RealExpr(m)


@given(st.integers(min_value=1, max_value=5), ms, ms)
def test_rate_zero_is_constant(i, m1, m2):
    assert scale_eval(i, m1, 0) == scale_eval(i, m2, 0)


@given(st.integers(min_value=1, max_value=3), st.integers(min_value=20, max_value=4000),
       st.fractions(min_value=F(1, 10), max_value=F(9, 10), max_denominator=10))
def test_recursive_unfolding(i, m, s):
    # g_{i}(2**m, s) = 2**g_{i-1}(m, s)
    lo, hi = scale_bounds(i, 2**m, s, 96) if i < 3 else scale_bounds(i, 2**m, s, 128)
    ilo, ihi = scale_bounds(i - 1, m, s, 96)
    if ihi < 60:
        assert lo <= 2 ** float(ihi) * (1 + 1e-12)
        assert hi >= 2 ** float(ilo) * (1 - 1e-12)


def test_monotone_thresholds_from_sampling():
    rates = [F(k, 8) for k in range(9)]
    for i, start in MONOTONE_FROM.items():
        grid = [F(start) + F(k, 4) for k in range(1, 40)] + [start + 2**k for k in range(4, 12)]
        # strictly increasing in s just above the recorded point
        assert monotone_threshold(i, grid, rates) == grid[0]


def test_monotone_threshold_detects_failures():
    # below 1, m**s decreases in s
    assert monotone_threshold(1, [F(1, 2), F(3, 4), 2, 3], [F(1, 4), F(1, 2)]) == 2


@pytest.mark.parametrize("i", [0, 1, 2, 3])
def test_divergence_spot_check(i):
    s, s2 = F(1, 3), F(2, 3)
    start = max(MONOTONE_FROM[i], 1)
    gaps = []
    for m in (64 * start, 256 * start, 1024 * start):
        lo_hi = (scale_eval(i, m, s2) - scale_eval(i, m, s)).bounds(128)
        gaps.append(lo_hi)
    assert gaps[0][1] < gaps[1][0] < gaps[1][1] < gaps[2][0]
