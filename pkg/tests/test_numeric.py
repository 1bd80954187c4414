import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from galelab.numeric import (
    CapVector, Cmp, ExactCapital, IntervalCapital, RealExpr, cap_add, cap_cmp, cap_div, cap_mul,
    cap_sum, pow2, to_interval,
)
from galelab.scales import scale_eval

half = F(1, 2)


def test_mul_examples():
    assert cap_mul(ExactCapital(3, half), ExactCapital(1, half)) == ExactCapital(6)
    x = ExactCapital(F(5, 7), F(1, 3))
    assert cap_mul(x, ExactCapital(1, 0)) == x
    assert cap_mul(ExactCapital(0), x) == ExactCapital(0)


def test_div_examples():
    assert cap_div(ExactCapital(6, 1), ExactCapital(3, half)) == ExactCapital(2, half)
    x = ExactCapital(F(5, 7), F(1, 3))
    assert cap_div(x, x) == ExactCapital(1)
    with pytest.raises(ZeroDivisionError):
        cap_div(x, ExactCapital(0))


def test_add_same_class_is_exact():
    total = cap_add(ExactCapital(1, -half), ExactCapital(3, -half))
    assert total == ExactCapital(4, -half)
    x = ExactCapital(F(2, 3), F(1, 5))
    assert cap_add(x, 0) == x


@pytest.mark.parametrize("prec", [64, 128, 256])
def test_add_mixed_class_gives_tight_interval(prec):
    v = cap_add(ExactCapital(1), ExactCapital(1, half), prec)
    assert isinstance(v, IntervalCapital)
    exact = 1 + math.sqrt(2)
    assert float(v.lo) <= exact <= float(v.hi)
    assert v.hi - v.lo <= F(2) ** (1 - prec) * v.hi


def test_normal_form():
    assert ExactCapital(1, F(5, 2)) == ExactCapital(4, half)
    assert ExactCapital(0, 7).exp2 == 0
    assert str(ExactCapital(3, F(-1, 2))) == "3/2*2^(1/2)"


def test_cmp_examples():
    assert cap_cmp(ExactCapital(4, -half), ExactCapital(1, half)) is Cmp.GT
    x = ExactCapital(F(3, 11), F(2, 7))
    assert cap_cmp(x, x) is Cmp.EQ
    a = IntervalCapital(F(1), F(6, 5), 128)
    b = IntervalCapital(F(11, 10), F(13, 10), 128)
    assert cap_cmp(a, b) is Cmp.INDETERMINATE


def test_pow2_examples():
    assert pow2(3) == ExactCapital(8)
    assert pow2(-half) == ExactCapital(1, -half)
    # g_1(10, 1/2) = 2**((1/2) log2 10) encloses sqrt(10); pow2 of it is 2**sqrt(10)
    e = scale_eval(1, 10, half)
    lo, hi = e.bounds(128)
    assert lo < F(316228, 10**5) and hi > F(316227, 10**5)
    assert lo * lo <= 10 <= hi * hi
    v = pow2(e)
    assert abs(float(v) - 2 ** math.sqrt(10)) < 1e-12


def test_symbolic_exponents_cancel():
    a = pow2(scale_eval(1, 15, half))
    b = pow2(RealExpr(0) - scale_eval(1, 15, half))
    assert cap_mul(a, b) == ExactCapital(1)
    # same symbolic class: sums stay exact
    assert cap_add(a, a) == ExactCapital(2, scale_eval(1, 15, half))


rationals = st.fractions(min_value=F(1, 50), max_value=1000, max_denominator=60)
small_exps = st.fractions(min_value=-8, max_value=8, max_denominator=12)
caps = st.builds(ExactCapital, rationals, small_exps)


@given(caps, caps)
def test_exact_cmp_matches_high_precision_floats(a, b):
    c = cap_cmp(a, b)
    assert c is not Cmp.INDETERMINATE
    la, ha = a.bounds(256)
    lb, hb = b.bounds(256)
    if c is Cmp.LT:
        assert la <= hb
    elif c is Cmp.GT:
        assert ha >= lb
    else:
        assert a == b or (la <= hb and lb <= ha)


@given(rationals, rationals)
def test_order_embedding(p, q):
    expected = Cmp.LT if p < q else Cmp.GT if p > q else Cmp.EQ
    assert cap_cmp(ExactCapital(p), ExactCapital(q)) is expected


def _tree(depth):
    leaf = caps.map(lambda c: ("leaf", c))
    if depth == 0:
        return leaf
    sub = _tree(depth - 1)
    return st.one_of(leaf, st.tuples(st.sampled_from(["add", "mul"]), sub, sub))


def _eval(tree, prec):
    if tree[0] == "leaf":
        return tree[1]
    a, b = _eval(tree[1], prec), _eval(tree[2], prec)
    return cap_add(a, b, prec) if tree[0] == "add" else cap_mul(a, b, prec)


def _float_eval(tree):
    if tree[0] == "leaf":
        c = tree[1]
        return float(c.coeff) * 2.0 ** float(c.exp2.rational)
    a, b = _float_eval(tree[1]), _float_eval(tree[2])
    return a + b if tree[0] == "add" else a * b


@settings(max_examples=150, deadline=None)
@given(_tree(3))
def test_interval_soundness_on_expression_trees(tree):
    v = _eval(tree, 96)
    lo, hi = to_interval(v, 96).bounds(96)
    ref = _float_eval(tree)
    assert float(lo) <= ref * (1 + 1e-9) + 1e-300
    assert float(hi) >= ref * (1 - 1e-9) - 1e-300


@settings(max_examples=60, deadline=None)
@given(st.lists(caps, min_size=2, max_size=5), caps)
def test_precision_escalation_is_monotone(terms, other):
    total = cap_sum(terms, 64)
    widths, verdicts = [], []
    for prec in (64, 128, 256, 512):
        iv = to_interval(total, prec)
        widths.append(iv.hi - iv.lo)
        verdicts.append(cap_cmp(total, other, prec, prec))
    assert all(w2 <= w1 for w1, w2 in zip(widths, widths[1:]))
    for v1, v2 in zip(verdicts, verdicts[1:]):
        if v1 is not Cmp.INDETERMINATE:
            assert v2 is v1


def test_capvector_fast_paths():
    base = ExactCapital(F(1, 3), half)
    v = CapVector.fast(base, [1, 2, 3, 4])
    assert v[1] == ExactCapital(F(2, 3), half)
    sums = v.pair_sums()
    assert sums.values() == [ExactCapital(1, half), ExactCapital(F(7, 3), half)]
    lhs = sums.scale(pow2(half))
    assert lhs.is_fast
    cmp = lhs.compare(CapVector.fast(ExactCapital(1, 0), [2, 3]))
    # 2^(1/2) * 2^(1/2) * 1 = 2 = 2 ; 7/3 * 2 = 14/3 > 3
    assert cmp.tolist() == [0, 1]
    assert (v * v)[3] == ExactCapital(F(16, 9), 1)


def test_capvector_general_fallback():
    v = CapVector.from_values([ExactCapital(1), ExactCapital(1, half)])
    assert not v.is_fast
    w = CapVector.from_values([ExactCapital(1), ExactCapital(2)])
    assert w.is_fast
    out = (v + w).compare(CapVector.from_values([2, 3]))
    assert out.tolist() == [0, 1]
    zeros = CapVector.fast(ExactCapital(1), np.zeros(2, dtype=object))
    assert (v + zeros).values() == v.values()
