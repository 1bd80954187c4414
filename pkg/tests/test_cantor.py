import math

import pytest
from hypothesis import given, strategies as st

from galelab.cantor import (
    all_codes, bitwise_and, count_index_set, decode, encode, in_index_set, in_mask_language,
    index_of_string, index_set_positions, mask_language_prefix, mask_prefix, string_of_index,
)

from oracles import count_index_set_naive, string_of_index_naive

bits = st.text(alphabet="01", max_size=80)


@pytest.mark.parametrize("k, w", [(0, ""), (1, "0"), (2, "1"), (3, "00"), (5, "10"), (6, "11"),
                                  (7, "000")])
def test_string_of_index_examples(k, w):
    assert string_of_index(k) == w
    assert index_of_string(w) == k


def test_enumeration_matches_naive_walk():
    for k in range(3000):
        assert string_of_index(k) == string_of_index_naive(k)


def test_round_trip_to_2_17():
    for k in range(2**17 + 1):
        assert index_of_string(string_of_index(k)) == k


def test_length_lex_order():
    prev = string_of_index(0)
    for k in range(1, 5000):
        cur = string_of_index(k)
        assert (len(prev), prev) < (len(cur), cur)
        prev = cur


@pytest.mark.parametrize("x, y, out", [("1010", "1100", "1000"), ("", "", ""),
                                       ("111", "000", "000")])
def test_bitwise_and(x, y, out):
    assert bitwise_and(x, y) == out


def test_bitwise_and_length_mismatch():
    with pytest.raises(ValueError):
        bitwise_and("10", "1")


@pytest.mark.parametrize("w, expected", [("000", True), ("00", False), ("", True), ("0", False),
                                         ("0000", False), ("00000", True)])
def test_mask_language(w, expected):
    assert in_mask_language(w) is expected


@pytest.mark.parametrize("n, expected", [(0, False), (1, True), (2, True), (6, True), (7, False),
                                         (14, False), (15, True), (30, True), (31, False)])
def test_index_set(n, expected):
    assert in_index_set(n) is expected


@pytest.mark.parametrize("n, expected", [(1, 0), (2, 1), (7, 6), (15, 6), (16, 7), (31, 22)])
def test_count_index_set_examples(n, expected):
    assert count_index_set(n) == expected


def test_count_index_set_rejects_zero():
    with pytest.raises(ValueError):
        count_index_set(0)


def test_count_matches_enumeration_small():
    naive = count_index_set_naive(5000)
    assert all(count_index_set(n) == naive[n] for n in range(1, 5001))


def test_mask_prefix_examples():
    assert mask_prefix("1111111") == "1000000"
    assert mask_prefix("") == ""
    w = "1" + "0" * 6 + "1" * 8
    assert mask_prefix(w) == w


def test_mask_language_prefix():
    assert mask_language_prefix(16) == "1000000" + "1" * 8 + "0"
    assert index_set_positions(16) == [1, 2, 3, 4, 5, 6, 15]


@given(bits)
def test_mask_identity_and_idempotence(w):
    m = mask_prefix(w)
    assert len(m) == len(w)
    for i, (a, b) in enumerate(zip(w, m)):
        assert b == ("0" if in_index_set(i) else a)
    assert mask_prefix(m) == m
    assert m == bitwise_and(w, mask_language_prefix(len(w)))


@given(st.integers(min_value=0, max_value=10**6))
def test_index_set_consistent_with_language(n):
    assert in_index_set(n) is (not in_mask_language(string_of_index(n)))


@given(bits)
def test_codes_round_trip(w):
    assert decode(encode(w), len(w)) == w


def test_all_codes_large_lengths_use_python_ints():
    assert all_codes(3).tolist() == list(range(8))
    assert decode(2**70 - 1, 70) == "1" * 70


def test_sparse_points_bound():
    # at n = 2 * 2**(2**k - 1) - 1 the count exceeds sqrt(n) but stays below 2 sqrt(n)
    for n in (3, 15, 255, 65535):
        c = count_index_set(n)
        assert c * c <= 4 * n
    assert count_index_set(15) > math.sqrt(15)
    assert count_index_set(255) > math.sqrt(255)
