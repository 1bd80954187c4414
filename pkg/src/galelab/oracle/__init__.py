"""Complexity oracles and the threshold sets built from them.

Two oracles share one interface (``oracle(x) -> int | None``):

* :class:`CircuitSizeOracle` -- exact minimum circuit size of a truth table,
  backed by a persistent text cache;
* :class:`ToyKTOracle` -- the toy KT complexity of :mod:`.toykt`.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .circuits import (
    ARITY_CAP, ArityError, circuit_sizes, int_to_table, projection, table_arity, table_to_int,
)
from .toykt import DEFAULT_BUDGET, TOY_MACHINE, toy_kt, toy_kt_bruteforce


class CacheFormatError(ValueError):
    def __init__(self, path, lineno: int, msg: str):
        super().__init__(f"{path}:{lineno}: {msg}")
        self.lineno = lineno


def table_hex(x: str) -> str:
    """Hex of the table read as a big-endian binary number, zero padded."""
    width = max(1, (len(x) + 3) // 4)
    return format(int(x, 2), f"0{width}x")


def hex_table(h: str, arity: int) -> str:
    n = 1 << arity
    value = int(h, 16)
    if value >> n:
        raise ValueError(f"{h} does not fit in {n} bits")
    return format(value, f"0{n}b")


class CircuitSizeOracle:
    """Exact circuit size, computed one arity at a time and cached."""

    kind = "circuit_size"

    def __init__(self, cap: int = ARITY_CAP):
        self.cap = cap
        self.cache: dict[str, int] = {}
        self._complete: set[int] = set()

    def __call__(self, x: str) -> int:
        v = self.cache.get(x)
        if v is not None:
            return v
        arity = table_arity(x)
        if arity > self.cap:
            raise ArityError(f"arity {arity} exceeds the cap {self.cap}")
        self.build(arity)
        return self.cache[x]

    def build(self, arity: int) -> np.ndarray:
        """Fill the cache for every table of the given arity."""
        if arity > self.cap:
            raise ArityError(f"arity {arity} exceeds the cap {self.cap}")
        sizes, _ = circuit_sizes(arity, self.cap)
        if arity not in self._complete:
            for t, size in enumerate(sizes):
                self.cache.setdefault(int_to_table(t, arity), int(size))
            self._complete.add(arity)
        return sizes

    def sizes(self, arity: int) -> dict[str, int]:
        if arity not in self._complete and not self._has_all(arity):
            self.build(arity)
        n = 1 << arity
        return {x: v for x, v in self.cache.items() if len(x) == n}

    def _has_all(self, arity: int) -> bool:
        n = 1 << arity
        if sum(1 for x in self.cache if len(x) == n) == 1 << n:
            self._complete.add(arity)
            return True
        return False

    def describe(self) -> dict:
        return {"kind": self.kind, "cap": self.cap}


class ToyKTOracle:
    kind = "toy_kt"

    def __init__(self, budget: int = DEFAULT_BUDGET):
        self.budget = budget

    def __call__(self, x: str) -> int | None:
        return toy_kt(x, self.budget)

    def describe(self) -> dict:
        return {"kind": self.kind, "machine": TOY_MACHINE, "budget": self.budget}


ComplexityOracle = CircuitSizeOracle | ToyKTOracle


def make_oracle(spec: dict | None) -> ComplexityOracle:
    spec = spec or {"kind": "circuit_size"}
    kind = spec.get("kind", "circuit_size")
    if kind == "circuit_size":
        oracle = CircuitSizeOracle(spec.get("cap", ARITY_CAP))
        if spec.get("cache"):
            loaded = cache_load(spec["cache"])
            oracle.cache.update(loaded.cache)
        return oracle
    if kind == "toy_kt":
        return ToyKTOracle(spec.get("budget", DEFAULT_BUDGET))
    raise ValueError(f"unknown oracle kind {kind!r}")


# ---------------------------------------------------------------------------
# cache files: "hex<TAB>arity<TAB>size", sorted by (arity, hex)

def cache_records(oracle: CircuitSizeOracle) -> list[tuple[int, str, int]]:
    return sorted((table_arity(x), table_hex(x), v) for x, v in oracle.cache.items())


def cache_save(oracle: CircuitSizeOracle, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for arity, h, size in cache_records(oracle):
            fh.write(f"{h}\t{arity}\t{size}\n")


def cache_load(path) -> CircuitSizeOracle:
    oracle = CircuitSizeOracle()
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise CacheFormatError(path, lineno, f"expected 3 tab-separated fields, got {len(parts)}")
            h, arity_s, size_s = parts
            try:
                arity, size = int(arity_s), int(size_s)
                if arity < 0 or size < 0:
                    raise ValueError("negative field")
                x = hex_table(h, arity)
            except ValueError as exc:
                raise CacheFormatError(path, lineno, str(exc)) from None
            if len(h) != max(1, ((1 << arity) + 3) // 4):
                raise CacheFormatError(path, lineno, f"hex width does not match arity {arity}")
            oracle.cache[x] = size
    return oracle


def build_cache(cap: int, path) -> int:
    """Write sizes of every table with arity ``1..cap`` (arity 0 when cap is 0)."""
    if cap > ARITY_CAP or cap < 0:
        raise ArityError(f"arity cap must be in 0..{ARITY_CAP}")
    oracle = CircuitSizeOracle(cap)
    for arity in range(min(1, cap), cap + 1):
        oracle.build(arity)
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        raise OSError(f"cannot write cache: no directory {parent}")
    cache_save(oracle, path)
    return len(oracle.cache)


# ---------------------------------------------------------------------------
# thresholds

@dataclass(frozen=True)
class ThresholdFunction:
    """``n -> n**c`` ("power"), an explicit table, or no bound at all."""

    form: str = "unbounded"
    c: int | None = None
    table: tuple[tuple[int, int], ...] = ()

    @classmethod
    def power(cls, c: int) -> "ThresholdFunction":
        if c < 1:
            raise ValueError("exponent must be >= 1")
        return cls("power", c=c)

    @classmethod
    def explicit(cls, table: dict[int, int]) -> "ThresholdFunction":
        items = tuple(sorted((int(k), int(v)) for k, v in table.items()))
        vals = [v for _, v in items]
        if vals != sorted(vals):
            raise ValueError("threshold table must be nondecreasing")
        return cls("table", table=items)

    @classmethod
    def unbounded(cls) -> "ThresholdFunction":
        return cls("unbounded")

    def __call__(self, n: int) -> int | None:
        if self.form == "power":
            return n**self.c
        if self.form == "table":
            for k, v in self.table:
                if k == n:
                    return v
            raise KeyError(f"threshold table has no entry for n = {n}")
        return None

    def admits(self, value: int | None, n: int) -> bool:
        """``value < f(n)``; an exceeded-budget oracle value never passes."""
        bound = self(n)
        if bound is None:
            return True
        return value is not None and value < bound

    def describe(self) -> dict:
        if self.form == "power":
            return {"form": "power", "c": self.c}
        if self.form == "table":
            return {"form": "table", "table": {str(k): v for k, v in self.table}}
        return {"form": "unbounded"}

    @classmethod
    def from_descriptor(cls, d: dict | None) -> "ThresholdFunction":
        d = d or {"form": "unbounded"}
        form = d.get("form", "unbounded")
        if form == "power":
            return cls.power(int(d["c"]))
        if form == "table":
            return cls.explicit({int(k): int(v) for k, v in d["table"].items()})
        if form == "unbounded":
            return cls.unbounded()
        raise ValueError(f"unknown threshold form {form!r}")


@dataclass(frozen=True)
class ThresholdSet:
    """``{x in {0,1}^(2^i) : oracle(x) < f(i)}`` with its exact size."""

    i: int
    members: tuple[str, ...]
    bound_ok: bool | None = None
    bound_informational: bool = False

    @property
    def count(self) -> int:
        return len(self.members)

    def __contains__(self, x: str) -> bool:
        return x in self._lookup

    @property
    def _lookup(self) -> frozenset:
        return frozenset(self.members)


def _all_strings(n: int) -> Iterable[str]:
    for v in range(1 << n):
        yield format(v, f"0{n}b")


def threshold_set(i: int, f: ThresholdFunction, oracle) -> ThresholdSet:
    """Enumerate the length-``2**i`` strings the oracle puts below ``f(i)``.

    When ``f`` is ``n**c`` the count is compared with ``2**(i**c)``; for the
    circuit-size oracle that comparison is informational only.
    """
    n = 1 << i
    if isinstance(oracle, CircuitSizeOracle):
        if i > oracle.cap:
            raise ArityError(f"block index {i} needs arity {i} > cap {oracle.cap}")
        sizes = oracle.build(i) if i not in oracle._complete else None
        if sizes is None:
            members = tuple(x for x in _all_strings(n) if f.admits(oracle(x), i))
        else:
            members = tuple(int_to_table(t, i) for t in range(len(sizes))
                            if f.admits(int(sizes[t]), i))
            members = tuple(sorted(members))
    else:
        if n > 16:
            raise ArityError(f"block length {n} is too long to enumerate")
        members = tuple(x for x in _all_strings(n) if f.admits(oracle(x), i))
    bound_ok = None
    if f.form == "power":
        bound_ok = len(members) <= 2 ** (i**f.c)
    return ThresholdSet(i, members, bound_ok, isinstance(oracle, CircuitSizeOracle))


__all__ = [
    "ARITY_CAP", "ArityError", "CacheFormatError", "CircuitSizeOracle", "ComplexityOracle",
    "ThresholdFunction", "ThresholdSet", "ToyKTOracle", "TOY_MACHINE", "build_cache",
    "cache_load", "cache_records", "cache_save", "circuit_sizes", "hex_table", "int_to_table",
    "make_oracle", "projection", "table_arity", "table_hex", "table_to_int", "threshold_set",
    "toy_kt", "toy_kt_bruteforce",
]
