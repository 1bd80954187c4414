"""Binary strings, the standard enumeration, and the power-of-two mask.

Bit strings are plain ``str`` objects over ``"0"``/``"1"``; the empty string
plays the role of lambda.  The standard enumeration lists strings by length,
then lexicographically: ``s_0 = ""``, ``s_1 = "0"``, ``s_2 = "1"``,
``s_3 = "00"``, ...  A characteristic sequence position ``n`` therefore talks
about the string ``s_n`` of length ``floor(log2(n + 1))``.

The mask language ``L`` holds the strings whose length is not a power of two
(``1 = 2**0`` counts as a power); the index set ``I`` holds the positions
``n`` with ``|s_n|`` a power of two.  ``count_index_set(n)`` is the number of
positions ``1 <= k <= n - 1`` in ``I``.
"""
from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

# 1 = 2**0 counts as a power of two; 0 does not
POWER_OF_TWO_INCLUDES_ONE = True

BitString = str


def check_bits(w: str) -> str:
    if not isinstance(w, str) or w.strip("01"):
        raise ValueError(f"not a bit string: {w!r}")
    return w


def is_power_of_two(m: int) -> bool:
    return m >= 1 and m & (m - 1) == 0


def string_of_index(k: int) -> BitString:
    """``s_k`` in the standard (length-lexicographic) enumeration."""
    if k < 0:
        raise ValueError("index must be nonnegative")
    n = (k + 1).bit_length() - 1
    if n == 0:
        return ""
    return format(k + 1 - (1 << n), f"0{n}b")


def index_of_string(w: BitString) -> int:
    check_bits(w)
    return (1 << len(w)) - 1 + (int(w, 2) if w else 0)


def length_of_index(k: int) -> int:
    return (k + 1).bit_length() - 1


def bitwise_and(x: BitString, y: BitString) -> BitString:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    return "".join("1" if a == "1" and b == "1" else "0" for a, b in zip(x, y))


def in_mask_language(w: BitString) -> bool:
    return not is_power_of_two(len(w))


def in_index_set(n: int) -> bool:
    return is_power_of_two(length_of_index(n))


def _index_set_blocks(limit: int) -> Iterator[tuple[int, int]]:
    """Half-open position ranges ``[start, stop)`` of I, up to ``limit``."""
    j = 0
    while True:
        length = 1 << j
        start = (1 << length) - 1
        if start >= limit:
            return
        yield start, (1 << (length + 1)) - 1
        j += 1


def count_index_set(n: int) -> int:
    """``#n``: how many positions ``k`` with ``0 < k <= n - 1`` lie in I.

    Closed form: whole power-of-two length blocks contribute ``2**(2**j)``
    positions each, plus whatever part of the last block falls below ``n``.
    """
    if n < 1:
        raise ValueError("count_index_set needs n >= 1")
    total = 0
    for start, stop in _index_set_blocks(n):
        total += min(stop, n) - start
    return total


def mask_prefix(w: BitString) -> BitString:
    """``w`` AND the characteristic prefix of L: zero every position in I."""
    out = list(w)
    for start, stop in _index_set_blocks(len(w)):
        for i in range(start, min(stop, len(w))):
            out[i] = "0"
    return "".join(out)


def mask_language_prefix(n: int) -> BitString:
    """The first ``n`` bits of L's characteristic sequence."""
    return "".join("0" if in_index_set(k) else "1" for k in range(n))


def index_set_positions(n: int) -> list[int]:
    """Positions below ``n`` that lie in I."""
    return [k for start, stop in _index_set_blocks(n) for k in range(start, min(stop, n))]


# ---------------------------------------------------------------------------
# integer codes: a length-n string w <-> int(w, 2) (first character = MSB)

def code_dtype(n: int):
    return np.int64 if n <= 62 else object


def all_codes(n: int) -> np.ndarray:
    if n <= 62:
        return np.arange(1 << n, dtype=np.int64)
    return np.array(range(1 << n), dtype=object)


def encode(w: BitString) -> int:
    return int(w, 2) if w else 0


def decode(code: int, n: int) -> BitString:
    return format(int(code), f"0{n}b") if n else ""


def all_strings(n: int) -> Iterator[BitString]:
    for bits in itertools.product("01", repeat=n):
        yield "".join(bits)
