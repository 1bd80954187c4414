"""Exact minimum circuit size of small truth tables.

Circuit model: fan-in-2 gates, any of the 16 two-input Boolean functions;
inputs and the constants are free; size is the number of gates.

Truth tables are bit strings of length ``2**k``; character ``j`` is the
function value on the input assignment whose big-endian encoding is ``j``
(``x1`` is the most significant input).  Internally a table is the integer
whose bit ``j`` is character ``j``.

Search: gates may be shared, so the state of a partial circuit is the *set* of
functions it has computed, not a single table.  Because the basis is closed
under negating gate inputs and outputs, every gate can be taken 0-preserving
("normal"), which leaves five useful gate types (AND, a&~b, ~a&b, OR, XOR), and
states can be reduced modulo input permutations and negations.  Level ``g``
holds one canonical state per symmetry class of ``g``-gate circuits; one more
gate on top of level ``g`` reaches every function of cost ``g + 1``, and a
two-gate lookahead reaches cost ``g + 2`` without materialising level ``g + 1``.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np

log = logging.getLogger(__name__)

ARITY_CAP = 4


class ArityError(ValueError):
    """Truth table beyond the exhaustive-search cap."""


def table_arity(x: str) -> int:
    n = len(x)
    if n == 0 or n & (n - 1):
        raise ValueError(f"truth table length {n} is not a power of two")
    if x.strip("01"):
        raise ValueError(f"not a bit string: {x!r}")
    return n.bit_length() - 1


def table_to_int(x: str) -> int:
    return int(x[::-1], 2)


def int_to_table(t: int, arity: int) -> str:
    return format(t, f"0{1 << arity}b")[::-1]


def projection(i: int, arity: int) -> int:
    """Table of input ``x_i`` (1-based, ``x_1`` most significant)."""
    shift = arity - i
    return sum(1 << j for j in range(1 << arity) if (j >> shift) & 1)


def _transforms(arity: int) -> np.ndarray:
    """Bit permutations of the table induced by input permutation + negation."""
    n = 1 << arity
    perms = []
    for perm in itertools.permutations(range(arity)):
        for neg in range(1 << arity):
            src = np.empty(n, dtype=np.int64)
            for j in range(n):
                bits = [(j >> (arity - 1 - p)) & 1 for p in range(arity)]
                y = 0
                for p in range(arity):
                    y = (y << 1) | bits[perm[p]]
                src[j] = y ^ neg
            perms.append(src)
    return np.array(perms)


class _Symmetry:
    def __init__(self, arity: int):
        self.arity = arity
        self.n = 1 << arity
        self.full = (1 << self.n) - 1
        perms = _transforms(arity)
        tables = np.arange(1 << self.n, dtype=np.int64)
        images = np.zeros((len(perms), len(tables)), dtype=np.int64)
        for t, src in enumerate(perms):
            for j in range(self.n):
                images[t] |= ((tables >> src[j]) & 1) << j
        # normalise (0-preserving representative)
        images = np.where(images & 1, images ^ self.full, images)
        self.images = images.astype(np.uint16 if self.n <= 16 else np.int64)
        self.canon = self.images.min(axis=0)

    def canonical_state(self, state: tuple[int, ...]) -> tuple[int, ...]:
        if not state:
            return state
        rows = np.sort(self.images[:, list(state)], axis=1)
        best = np.lexsort(rows.T[::-1])[0]
        return tuple(int(v) for v in rows[best])


def _normal_ops(u: np.ndarray, v: np.ndarray, full: int) -> np.ndarray:
    """The five nontrivial normal gates on every (u, v) pair."""
    return np.concatenate([u & v, u & (v ^ full), (u ^ full) & v, u | v, u ^ v])


def _wires(inputs: list[int], state: tuple[int, ...]) -> np.ndarray:
    return np.array(inputs + list(state), dtype=np.int64)


def _gate_outputs(wires: np.ndarray, full: int) -> np.ndarray:
    iu, jv = np.triu_indices(len(wires), k=1)
    return _normal_ops(wires[iu], wires[jv], full)


def _one_gate(states, inputs, sym: _Symmetry, class_cost: np.ndarray, cost: int) -> int:
    found = 0
    for state in states:
        cls = sym.canon[_gate_outputs(_wires(inputs, state), sym.full)]
        fresh = np.unique(cls[class_cost[cls] < 0])
        if len(fresh):
            class_cost[fresh] = cost
            found += len(fresh)
    return found


def _two_gates(states, inputs, sym: _Symmetry, class_cost: np.ndarray, cost: int) -> int:
    """Classes reached by a gate ``a`` on the state followed by ``op(a, w)``.

    In a circuit of minimum size the next-to-last gate feeds the last one, so
    this reaches every class of cost exactly ``cost`` = level + 2.
    """
    found = 0
    for state in states:
        wires = _wires(inputs, state)
        mids = np.unique(_gate_outputs(wires, sym.full))
        mids = mids[(mids != 0) & ~np.isin(mids, wires)]
        if not len(mids):
            continue
        a = np.repeat(mids, len(wires))
        w = np.tile(wires, len(mids))
        cls = sym.canon[_normal_ops(a, w, sym.full)]
        fresh = np.unique(cls[class_cost[cls] < 0])
        if len(fresh):
            class_cost[fresh] = cost
            found += len(fresh)
    return found


def _next_level(states, inputs, sym: _Symmetry) -> list[tuple[int, ...]]:
    out: set[tuple[int, ...]] = set()
    trivial = set(inputs) | {0}
    for state in states:
        base = set(state)
        for f in np.unique(_gate_outputs(_wires(inputs, state), sym.full)):
            f = int(f)
            if f in trivial or f in base:
                continue
            out.add(sym.canonical_state(tuple(sorted(base | {f}))))
    return sorted(out)


@dataclass
class SearchStats:
    arity: int
    states_per_level: list[int]
    max_size: int


def circuit_sizes(arity: int, cap: int = ARITY_CAP) -> tuple[np.ndarray, SearchStats]:
    """Exact size of every ``arity``-input function, indexed by table integer."""
    if arity > cap:
        raise ArityError(f"arity {arity} exceeds the exhaustive cap {cap}")
    if arity < 0:
        raise ValueError("arity must be nonnegative")
    n_funcs = 1 << (1 << arity)
    if arity == 0:
        return np.zeros(2, dtype=np.int64), SearchStats(0, [1], 0)

    sym = _Symmetry(arity)
    full = sym.full
    inputs = [projection(i, arity) for i in range(1, arity + 1)]
    UNKNOWN = -1
    class_cost = np.full(n_funcs, UNKNOWN, dtype=np.int64)  # indexed by canonical table
    class_cost[0] = 0
    for p in inputs:
        class_cost[sym.canon[p]] = 0
    is_class = np.zeros(n_funcs, dtype=bool)
    is_class[np.unique(sym.canon)] = True
    pending = int(is_class.sum() - (class_cost[is_class] >= 0).sum())

    states: list[tuple[int, ...]] = [()]
    level_sizes = [1]
    g = 0
    while pending:
        found = _one_gate(states, inputs, sym, class_cost, g + 1)
        pending -= found
        log.debug("arity %d: level %d states=%d new classes=%d pending=%d",
                  arity, g, len(states), found, pending)
        if not pending:
            break
        # past the peak of the cost distribution: try a two-gate lookahead
        if pending < found:
            pending -= _two_gates(states, inputs, sym, class_cost, g + 2)
            if not pending:
                break
        states = _next_level(states, inputs, sym)
        level_sizes.append(len(states))
        g += 1

    # expand class costs to every table
    sizes = np.empty(n_funcs, dtype=np.int64)
    tables = np.arange(n_funcs, dtype=np.int64)
    normal = np.where(tables & 1, tables ^ full, tables)
    sizes[:] = class_cost[sym.canon[normal]]
    trivial = set(inputs) | {0}
    for t in range(n_funcs):
        if tables[t] & 1 and sizes[t] == 0:
            comp = t ^ full
            # constant 1 is free; a negated input needs one gate
            sizes[t] = 0 if comp == 0 else 1 if comp in trivial else sizes[t]
    if (sizes < 0).any():
        raise RuntimeError("circuit search left tables unresolved")
    stats = SearchStats(arity, level_sizes, int(sizes.max()))
    return sizes, stats
