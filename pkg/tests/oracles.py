"""Independent reference implementations used to freeze expected values.

Nothing here imports the package's fast paths: each function recomputes its
quantity from the definition by the most direct route available.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


# ---------------------------------------------------------------------------
# enumeration and the index set

def string_of_index_naive(k: int) -> str:
    """Walk the length-lexicographic order one string at a time."""
    length, offset = 0, k
    while offset >= 2**length:
        offset -= 2**length
        length += 1
    return format(offset, f"0{length}b") if length else ""


def count_index_set_naive(limit: int) -> list[int]:
    """``counts[n]`` = #{0 < k <= n-1 : |s_k| is a power of two} for n <= limit."""
    counts = [0, 0]
    running = 0
    for n in range(2, limit + 1):
        k = n - 1
        length = len(string_of_index_naive(k)) if k < 4096 else (k + 1).bit_length() - 1
        if length > 0 and length & (length - 1) == 0:
            running += 1
        counts.append(running)
    return counts


# ---------------------------------------------------------------------------
# circuits: raw 16-op basis, no normalisation, no symmetry

def _raw_ops(a: int, b: int, full: int) -> set[int]:
    out = set()
    for op in range(16):
        # op bit (2*x + y) gives the gate's value on inputs (x, y)
        v = 0
        if op & 1:
            v |= ~a & ~b
        if op & 2:
            v |= ~a & b
        if op & 4:
            v |= a & ~b
        if op & 8:
            v |= a & b
        out.add(v & full)
    return out


def circuit_sizes_bruteforce(arity: int) -> dict[int, int]:
    """Exact sizes of every table (bit j = value on big-endian assignment j).

    Breadth-first over the sets of functions computed by the gates of a
    circuit; a table costs g when it is the output of some g-gate circuit.
    """
    n = 1 << arity
    full = (1 << n) - 1
    inputs = [sum(1 << j for j in range(n) if (j >> (arity - 1 - i)) & 1) for i in range(arity)]
    base = frozenset(inputs + [0, full])
    cost = {f: 0 for f in base}
    states = {frozenset()}
    g = 0
    while len(cost) < 1 << n:
        g += 1
        nxt = set()
        for st in states:
            wires = list(base | st)
            for a, b in itertools.combinations(wires, 2):
                for f in _raw_ops(a, b, full):
                    cost.setdefault(f, g)
                    if f not in base and f not in st:
                        nxt.add(st | {f})
            if len(cost) == 1 << n:
                break
        states = nxt
    return cost


# ---------------------------------------------------------------------------
# block gales straight from their piecewise definitions

def io_block_value(w: str, i: int, r: Fraction, members: list[str]) -> tuple[Fraction, Fraction]:
    """``(coefficient, exponent)`` with value ``coefficient * 2**exponent``."""
    start, end, length = 2**i - 1, 2**(i + 1) - 1, 2**i
    n = len(w)
    if not members or n <= start:
        return Fraction(1), (r - 1) * n
    seg = w[start:min(n, end)]
    count = sum(1 for x in members if x.startswith(seg))
    k = len(seg)
    exp = (r - 1) * start + r * k + (r - 1) * max(0, n - end)
    assert k <= length
    return Fraction(count, len(members)), exp


def ae_block_value(w: str, i: int, r: Fraction, blocks: dict[int, list[str]]
                   ) -> tuple[Fraction, Fraction]:
    end = 2**(i + 1) - 1
    n = len(w)
    universe = []
    for bits in itertools.product(*([["0", "1"]] + [blocks[k] for k in range(1, i + 1)])):
        universe.append("".join(bits))
    if not universe:
        return Fraction(1), (r - 1) * n
    head = w[:end]
    count = sum(1 for x in universe if x.startswith(head))
    return Fraction(count, len(universe)), r * min(n, end) + (r - 1) * max(0, n - end)


# ---------------------------------------------------------------------------
# the lower-bound transform as a literal recursion

def lowerbound_recursive(d, s, is_index, mask, cap_mul, cap_div, pow2, zero):
    """Memoised ``d'`` following the three-case recursion one bit at a time."""
    memo: dict[str, object] = {}
    step = pow2(1 - s)

    def value(w: str):
        if w in memo:
            return memo[w]
        if not w:
            v = d("")
        else:
            u = w[:-1]
            if is_index(len(u)):
                v = value(u)
            else:
                den = d(mask(u))
                if den.is_zero():
                    v = zero
                else:
                    v = cap_mul(cap_mul(step, value(u)), cap_div(d(mask(w)), den))
        memo[w] = v
        return v

    return value
