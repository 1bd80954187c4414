from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from galelab.gales import (
    FunctionGale, GaleError, NeutralGale, ScaledNeutralGale, ZeroGale, all_in_on_zeros,
    constant_source, random_source, rescale, run_trajectory, success_report,
    validate_scaled_supergale, validate_supergale, weighted_sum,
)
from galelab.numeric import ExactCapital, pow2
from galelab.scales import DomainError

half = F(1, 2)
words = st.text(alphabet="01", max_size=14)


def test_neutral_is_valid_with_equality_everywhere():
    rep = validate_supergale(NeutralGale(half), half, 8, pinned=None)
    assert rep.verdict == "PASS" and not rep.quotient
    assert rep.checked == 2**8 - 1
    assert rep.martingale and rep.equalities == rep.checked


def test_quotient_walk_agrees_with_full_tree():
    g = NeutralGale(half)
    quick = validate_supergale(g, half, 10)
    assert quick.quotient and quick.checked == 10
    full = validate_supergale(g, half, 10, pinned=None)
    assert quick.verdict == full.verdict == "PASS"
    assert quick.martingale and full.martingale


def test_flat_gale_violates_at_root():
    d = FunctionGale(lambda w: 1)
    rep = validate_supergale(d, half, 1)
    assert rep.verdict == "FAIL"
    assert rep.violations == [""]
    assert list(rep.to_lines()) == ["λ\tFAIL"]


def test_equality_lines_and_summary():
    rep = validate_supergale(NeutralGale(1), 1, 2, pinned=None)
    assert list(rep.to_lines()) == ["λ\tEQ", "0\tEQ", "1\tEQ"]
    summary = rep.summary()
    assert summary["checked"] == 3 and summary["verdict"] == "PASS"


def test_strict_inequality_at_larger_s():
    rep = validate_supergale(NeutralGale(half), F(3, 4), 6)
    assert rep.valid and rep.strict == rep.checked and not rep.martingale


def test_scaled_neutral_depth_32():
    rep = validate_scaled_supergale(ScaledNeutralGale(1, half), 1, half, 32)
    assert rep.verdict == "PASS"
    assert rep.indeterminate == []
    # prefix lengths start inside the domain (m > 0)
    assert rep.levels[0][0] == 1


@pytest.mark.parametrize("gale, s", [(NeutralGale(half), half), (NeutralGale(half), F(1, 4)),
                                     (all_in_on_zeros(), 1), (all_in_on_zeros(), half),
                                     (FunctionGale(lambda w: 1), 1)])
def test_scale_zero_matches_plain_validation(gale, s):
    a = validate_supergale(gale, s, 7)
    b = validate_scaled_supergale(gale, 0, s, 7)
    assert list(a.records()) == list(b.records())


def test_gale_error_carries_prefix():
    def bad(w):
        if w == "01":
            raise ArithmeticError("boom")
        return 2 ** len(w) if w in ("", "0", "01") else 0
    with pytest.raises(GaleError) as err:
        validate_supergale(FunctionGale(bad), 1, 3)
    assert err.value.prefix == "01"


def test_negative_capital_rejected():
    with pytest.raises(GaleError):
        FunctionGale(lambda w: -1)("0")


def test_rescale_multiplier_example():
    d = rescale(NeutralGale(half), (0, half), (1, half))
    w = "0" * 16
    # neutral value 2**-8 times the multiplier 2**(4 - 8)
    assert d(w) == ExactCapital(1, -12)
    assert d.multiplier(16) == pow2(-4)


def test_rescale_identity_and_domain():
    g = NeutralGale(half)
    assert rescale(g, (1, half), (1, half)) is g
    with pytest.raises(DomainError):
        rescale(g, (0, half), (1, half))("")


@settings(max_examples=40, deadline=None)
@given(words.filter(lambda w: len(w) > 2))
def test_rescale_composition(w):
    base = NeutralGale(F(2, 3))
    a, b, c = (0, F(2, 3)), (1, half), (2, F(3, 4))
    assert rescale(rescale(base, a, b), b, c)(w) == rescale(base, a, c)(w)


def test_rescale_transfers_validity():
    d = rescale(NeutralGale(half), (0, half), (1, half))
    rep = validate_scaled_supergale(d, 1, half, 20)
    assert rep.verdict == "PASS" and not rep.indeterminate


def test_weighted_sum_examples():
    r = F(3, 4)
    d = weighted_sum([(F(1, i * i), NeutralGale(r)) for i in (1, 2, 3)])
    for w in ("", "0", "0110", "1" * 9):
        assert d(w) == ExactCapital(F(49, 36), (r - 1) * len(w))
    g = NeutralGale(r)
    assert weighted_sum([(1, g)]) is g
    plus_zero = weighted_sum([(1, g), (5, ZeroGale())])
    assert all(plus_zero(w) == g(w) for w in ("", "1", "0101"))


def test_weighted_sum_rejects_bad_weights():
    with pytest.raises(ValueError):
        weighted_sum([])
    with pytest.raises(ValueError):
        weighted_sum([(0, NeutralGale(half))])


def test_weighted_sum_of_supergales_validates():
    d = weighted_sum([(F(1, 3), all_in_on_zeros()), (F(2, 5), NeutralGale(1)),
                      (7, FunctionGale(lambda w: F(3, 2) ** w.count("1") / 2 ** w.count("0")))])
    assert validate_supergale(d, 1, 9).verdict == "PASS"


def test_constant_trajectory():
    t = run_trajectory(NeutralGale(1), random_source(3), 12)
    assert [st.value for st in t.steps] == [ExactCapital(1)] * 13
    rep = success_report(t, 2, 0)
    assert (rep.hit, rep.sustained) == (False, False)


def test_doubling_trajectory():
    t = run_trajectory(all_in_on_zeros(), constant_source("0"), 20)
    assert [t.value(n) for n in range(21)] == [ExactCapital(2**n) for n in range(21)]
    rep = success_report(t, 2**10, 15)
    assert rep.hit and rep.first_hit == 10 and rep.sustained
    with pytest.raises(ValueError):
        success_report(t, 2, 21)


def test_trajectory_records_errors_per_step():
    def fn(w):
        if len(w) == 2:
            raise ValueError("nope")
        return 1
    t = run_trajectory(FunctionGale(fn), "0000", 3)
    lines = list(t.to_lines())
    assert lines[0] == "0\t1" and lines[2].startswith("2\tERROR")
    assert t.value(2) is None and t.value(3) == ExactCapital(1)


def test_trajectory_sources():
    assert run_trajectory(NeutralGale(1), iter([0, 1, 1]), 3).horizon == 3
    with pytest.raises(ValueError):
        run_trajectory(NeutralGale(1), "01", 5)


def test_determinism():
    d = weighted_sum([(1, all_in_on_zeros()), (F(1, 4), ScaledNeutralGale(0, half))])
    t1 = list(run_trajectory(d, random_source(11), 30).to_lines())
    t2 = list(run_trajectory(d, random_source(11), 30).to_lines())
    assert t1 == t2
