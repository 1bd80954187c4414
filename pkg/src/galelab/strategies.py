"""The betting strategies behind the circuit-class dimension bounds.

* :func:`build_io_block_gale` bets only inside block ``i`` (positions
  ``2**i - 1 .. 2**(i+1) - 2``), spreading capital uniformly over the
  low-complexity tables ``C_i``.
* :func:`build_ae_block_gale` bets on the first ``2**(i+1) - 1`` bits at once,
  over ``C_<=i`` = all strings whose blocks ``1..i`` are each low-complexity.
* :func:`build_combined` takes ``sum_i d_i / i**2`` for ``i <= imax``.
* :func:`build_scaled_variant` moves a gale to the ``j``-th scale.
* :func:`io_lowerbound_transform` turns an s-supergale into a supermartingale
  that ignores every position whose string has power-of-two length.

Block gales evaluate whole tree levels with integer arithmetic: capital is
``2**(rational) * count / |C|`` with ``count`` read off prefix-count tables.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .cantor import _index_set_blocks, code_dtype, count_index_set, in_index_set
from .gales import (
    Gale, NeutralGale, ScaledNeutralGale, WeightedSum, ZeroGale, all_in_on_zeros, rescale,
    weighted_sum,
)
from .numeric import (
    ZERO, CapVector, ExactCapital, as_fraction, cap_div, cap_mul, frac_str, pow2,
)
from .oracle import ThresholdFunction, make_oracle, threshold_set


def block_start(k: int) -> int:
    """First position of block ``k`` (the truth table at input length ``k``)."""
    return (1 << k) - 1


def block_end(k: int) -> int:
    """One past the last position of block ``k``, i.e. ``2**(k+1) - 1``."""
    return (1 << (k + 1)) - 1


@dataclass(frozen=True)
class BlockGaleConfig:
    i: int
    r: Fraction
    threshold: ThresholdFunction = field(default_factory=ThresholdFunction.unbounded)
    oracle: object = None

    def __post_init__(self):
        object.__setattr__(self, "r", as_fraction(self.r))
        if not 0 < self.r <= 1:
            raise ValueError("rate r must lie in (0, 1]")
        if self.i < 1:
            raise ValueError("block index must be >= 1")
        if self.oracle is None:
            object.__setattr__(self, "oracle", make_oracle(None))

    def members(self, k: int | None = None) -> tuple[str, ...]:
        k = self.i if k is None else k
        return threshold_set(k, self.threshold, self.oracle).members

    def describe(self) -> dict:
        return {"i": self.i, "r": frac_str(self.r), "threshold": self.threshold.describe(),
                "oracle": self.oracle.describe()}


class BlockCounts:
    """``|C^u|`` for every prefix ``u`` of a set ``C`` of equal-length strings.

    ``table[j][u]`` is the number of members starting with the ``j``-bit
    string whose code is ``u``.
    """

    def __init__(self, members, length: int):
        self.length = length
        self.members = tuple(members)
        ints = np.array([int(x, 2) for x in self.members], dtype=np.int64)
        self.table = [np.bincount(ints >> (length - j), minlength=1 << j).astype(np.int64)
                      for j in range(length + 1)]

    @property
    def size(self) -> int:
        return len(self.members)

    def count(self, prefix: str) -> int:
        return int(self.table[len(prefix)][int(prefix, 2) if prefix else 0])

    def lookup(self, j: int, bits: np.ndarray) -> np.ndarray:
        return self.table[j][np.asarray(bits).astype(np.int64)]


def _bits(codes: np.ndarray, n: int, a: int, b: int) -> np.ndarray:
    """Codes of the substrings at positions ``[a, b)`` of length-``n`` strings."""
    width = b - a
    out = (codes >> (n - b)) & ((1 << width) - 1)
    return out.astype(np.int64) if out.dtype == object else out


class IOBlockGale(Gale):
    def __init__(self, cfg: BlockGaleConfig):
        self.cfg = cfg
        self.i, self.r = cfg.i, cfg.r
        self.start, self.end = block_start(cfg.i), block_end(cfg.i)
        self.counts = BlockCounts(cfg.members(), 1 << cfg.i)
        self.dead = self.counts.size == 0
        self.descriptor = {"kind": "io-block", **cfg.describe()}
        lo, hi = self.start, self.end
        self.pinned = (lambda k: True) if self.dead else (lambda k: not lo <= k < hi)

    def level(self, n: int, codes: np.ndarray) -> CapVector:
        r = self.r
        if self.dead or n <= self.start:
            return CapVector.fast(pow2((r - 1) * n), np.ones(len(codes), dtype=object))
        size = self.counts.size
        if n <= self.end:
            k = n - self.start
            ints = self.counts.lookup(k, _bits(codes, n, self.start, n))
            base = (r - 1) * self.start + r * k
        else:
            ints = self.counts.lookup(1 << self.i, _bits(codes, n, self.start, self.end))
            base = (r - 1) * self.start + r * (1 << self.i) + (r - 1) * (n - self.end)
        return CapVector.fast(ExactCapital(Fraction(1, size), base), ints)


class AEBlockGale(Gale):
    def __init__(self, cfg: BlockGaleConfig):
        self.cfg = cfg
        self.i, self.r = cfg.i, cfg.r
        self.end = block_end(cfg.i)
        self.blocks = [BlockCounts(cfg.members(k), 1 << k) for k in range(1, cfg.i + 1)]
        self.size = 2 * math.prod(b.size for b in self.blocks)
        self.dead = self.size == 0
        self.descriptor = {"kind": "ae-block", **cfg.describe()}
        end = self.end
        # bit 0 is unconstrained, so the capital never depends on it
        self.pinned = (lambda k: True) if self.dead else (lambda k: k == 0 or k >= end)

    def conditional_count(self, n: int, codes: np.ndarray) -> np.ndarray:
        """``|C_<=i^w|`` for the length-``n`` prefixes (``n <= 2**(i+1) - 1``)."""
        ints = np.full(len(codes), 2 if n == 0 else 1, dtype=object)
        for k, blk in enumerate(self.blocks, start=1):
            a, b = block_start(k), block_end(k)
            if n <= a:
                ints = ints * blk.size
            else:
                stop = min(n, b)
                ints = ints * self.blocks[k - 1].lookup(stop - a, _bits(codes, n, a, stop)).astype(object)
        return ints

    def level(self, n: int, codes: np.ndarray) -> CapVector:
        r = self.r
        if self.dead:
            return CapVector.fast(pow2((r - 1) * n), np.ones(len(codes), dtype=object))
        if n <= self.end:
            return CapVector.fast(ExactCapital(Fraction(1, self.size), r * n),
                                  self.conditional_count(n, codes))
        head = codes >> (n - self.end)
        if head.dtype == object:
            head = head.astype(np.int64)
        ints = self.conditional_count(self.end, head)
        return CapVector.fast(
            ExactCapital(Fraction(1, self.size), r * self.end + (r - 1) * (n - self.end)), ints)


def build_io_block_gale(cfg: BlockGaleConfig) -> Gale:
    """Neutral before block ``i``, a uniform bet on ``C_i`` inside it, neutral after.

    An empty ``C_i`` makes the gale neutral throughout.
    """
    return IOBlockGale(cfg)


def build_ae_block_gale(cfg: BlockGaleConfig) -> Gale:
    return AEBlockGale(cfg)


BUILDERS = {"io": build_io_block_gale, "ae": build_ae_block_gale}


def build_combined(mode: str, r, imax: int, threshold: ThresholdFunction | None = None,
                   oracle=None) -> Gale:
    """``sum_{i=1..imax} d_i / i**2`` over block gales of one mode."""
    if imax < 1:
        raise ValueError("imax must be >= 1")
    if mode not in BUILDERS:
        raise ValueError(f"unknown block gale mode {mode!r}")
    threshold = threshold or ThresholdFunction.unbounded()
    oracle = oracle or make_oracle(None)
    terms = [(Fraction(1, i * i), BUILDERS[mode](BlockGaleConfig(i, r, threshold, oracle)))
             for i in range(1, imax + 1)]
    return weighted_sum(terms)


def build_scaled_variant(d: Gale, j: int, s, r) -> Gale:
    """``d(w) * 2**(g_j(|w|, s) - g_0(|w|, r))``."""
    return rescale(d, (0, r), (j, s))


# ---------------------------------------------------------------------------
# the lower-bound transform

def _non_index_runs(n: int) -> list[tuple[int, int]]:
    """Maximal runs ``[a, b)`` of positions below ``n`` outside I."""
    runs, pos = [], 0
    for start, stop in _index_set_blocks(n):
        if pos < start:
            runs.append((pos, start))
        pos = stop
    if pos < n:
        runs.append((pos, n))
    return runs


def _off_index_mask(n: int) -> int:
    mask = 0
    for a, b in _non_index_runs(n):
        mask |= ((1 << (b - a)) - 1) << (n - b)
    return mask


class LowerBoundGale(Gale):
    """``d'`` with ``d'(wb) = d'(w)`` when ``|w|`` is in I and
    ``d'(wb) = 2**(1-s) d'(w) d(mask(wb)) / d(mask(w))`` otherwise.

    Unrolling the recursion over each maximal run ``[a, b)`` of positions
    outside I telescopes the ratios, so

        d'(w) = d(lambda) * 2**((1-s)(n - #n)) * prod_runs d(m[:b]) / d(m[:a])

    with ``m = mask(w)``.  A zero denominator means the capital died on an
    earlier step, and the value is 0.
    """

    def __init__(self, base: Gale, s):
        self.base = base
        self.s = as_fraction(s)
        self.pinned = in_index_set
        self.descriptor = {"kind": "lowerbound", "s": frac_str(self.s), "gale": base.descriptor}

    def level(self, n: int, codes: np.ndarray) -> CapVector:
        s = self.s
        dt = code_dtype(n)
        masked = codes & _off_index_mask(n) if n else codes
        if masked.dtype != dt:
            masked = masked.astype(dt)
        factors: list[tuple[CapVector, CapVector]] = []
        for a, b in _non_index_runs(n):
            num = self.base.level(b, masked >> (n - b))
            den = self.base.level(a, masked >> (n - a))
            factors.append((num, den))
        lam = self.base.level(0, np.zeros(1, dtype=np.int64))[0]
        head = cap_mul(lam, pow2((1 - s) * (n - count_index_set(n) if n else 0)))
        if all(x.is_fast and y.is_fast for x, y in factors):
            return self._fast(head, factors, len(codes))
        out = []
        for k in range(len(codes)):
            v = head
            for num, den in factors:
                dv = den[k]
                if isinstance(dv, ExactCapital) and dv.is_zero():
                    v = ZERO
                    break
                v = cap_mul(v, cap_div(num[k], dv))
            out.append(v)
        return CapVector.from_values(out)

    @staticmethod
    def _fast(head, factors, size: int) -> CapVector:
        base = head
        p = np.ones(size, dtype=object)
        q = np.ones(size, dtype=object)
        for num, den in factors:
            base = cap_mul(cap_div(base, den.base), num.base) if den.base.coeff else base
            p = p * num.ints
            q = q * den.ints
        dead = q == 0
        if dead.any():
            p = np.where(dead, 0, p)
            q = np.where(dead, 1, q)
        lcm = math.lcm(*(int(v) for v in q)) if size else 1
        ints = p * (lcm // q)
        return CapVector.fast(cap_mul(base, ExactCapital(Fraction(1, lcm))), ints)


def io_lowerbound_transform(d: Gale, s) -> Gale:
    return LowerBoundGale(d, s)


# ---------------------------------------------------------------------------
# witness sequences

class WitnessError(ValueError):
    def __init__(self, n: int, msg: str):
        super().__init__(f"block n = {n}: {msg}")
        self.n = n


FILLERS = ("ones", "zeros", "random")


@dataclass(frozen=True)
class WitnessPlan:
    """Designated blocks (length index ``n`` -> ``2**n`` bits) plus a filler."""

    blocks: dict = field(default_factory=dict)
    filler: str = "ones"
    seed: int = 0

    def __post_init__(self):
        if self.filler not in FILLERS:
            raise ValueError(f"filler must be one of {FILLERS}")
        for n, x in self.blocks.items():
            if int(n) < 0 or len(x) != 1 << int(n) or x.strip("01"):
                raise WitnessError(int(n), f"planned block {x!r} is not a string of length {1 << int(n)}")

    @classmethod
    def zeros(cls, ns, filler: str = "ones", seed: int = 0) -> "WitnessPlan":
        return cls({n: "0" * (1 << n) for n in ns}, filler, seed)

    def describe(self) -> dict:
        return {"blocks": {str(n): x for n, x in sorted(self.blocks.items())},
                "filler": self.filler, "seed": self.seed}


class WitnessSequence:
    """Deterministic prefix generator: ``seq(n)`` is the first ``n`` bits."""

    def __init__(self, plan: WitnessPlan):
        self.plan = plan
        self._placed = {}
        for n, x in plan.blocks.items():
            a = block_start(int(n))
            for off, bit in enumerate(x):
                self._placed[a + off] = bit

    def _filler(self, n: int) -> list[str]:
        if self.plan.filler == "ones":
            return ["1"] * n
        if self.plan.filler == "zeros":
            return ["0"] * n
        rng = random.Random(self.plan.seed)
        return ["1" if rng.getrandbits(1) else "0" for _ in range(n)]

    def __call__(self, n: int) -> str:
        bits = self._filler(n)
        for pos, bit in self._placed.items():
            if pos < n:
                bits[pos] = bit
        return "".join(bits)

    def block(self, n: int) -> str:
        return self(block_end(n))[block_start(n):]


def make_witness_sequence(plan: WitnessPlan, oracle=None, f: ThresholdFunction | None = None
                          ) -> WitnessSequence:
    """Check every planned block against ``oracle(x) < f(n)`` and build the sequence."""
    if oracle is not None and f is not None:
        for n, x in sorted(plan.blocks.items()):
            value = oracle(x)
            if not f.admits(value, int(n)):
                raise WitnessError(int(n), f"planned block {x} has complexity {value}, "
                                           f"not below the threshold {f(int(n))}")
    return WitnessSequence(plan)


# ---------------------------------------------------------------------------
# descriptors

def gale_from_descriptor(desc: dict, oracle_factory: Callable[[dict | None], object] = make_oracle
                         ) -> Gale:
    """Rebuild a gale from its ``descriptor``."""
    kind = desc.get("kind")
    if kind == "neutral":
        return NeutralGale(as_fraction(desc["s"]))
    if kind == "zero":
        return ZeroGale()
    if kind == "all-in-zeros":
        return all_in_on_zeros()
    if kind == "scaled-neutral":
        return ScaledNeutralGale(int(desc["scale"]), as_fraction(desc["s"]))
    if kind == "sum":
        return WeightedSum([(as_fraction(wt), gale_from_descriptor(g, oracle_factory))
                            for wt, g in desc["terms"]])
    if kind == "rescale":
        src, dst = desc["from"], desc["to"]
        return rescale(gale_from_descriptor(desc["gale"], oracle_factory),
                       (int(src[0]), as_fraction(src[1])), (int(dst[0]), as_fraction(dst[1])))
    if kind in ("io-block", "ae-block"):
        cfg = BlockGaleConfig(int(desc["i"]), as_fraction(desc["r"]),
                              ThresholdFunction.from_descriptor(desc.get("threshold")),
                              oracle_factory(desc.get("oracle")))
        return BUILDERS[kind[:2]](cfg)
    if kind == "combined":
        oracle = oracle_factory(desc.get("oracle"))
        return build_combined(desc["mode"], as_fraction(desc["r"]), int(desc["imax"]),
                              ThresholdFunction.from_descriptor(desc.get("threshold")), oracle)
    if kind == "lowerbound":
        return io_lowerbound_transform(gale_from_descriptor(desc["gale"], oracle_factory),
                                       as_fraction(desc["s"]))
    raise ValueError(f"unknown gale kind {kind!r}")


__all__ = [
    "AEBlockGale", "BlockCounts", "BlockGaleConfig", "IOBlockGale", "LowerBoundGale",
    "WitnessError", "WitnessPlan", "WitnessSequence", "block_end", "block_start",
    "build_ae_block_gale", "build_combined", "build_io_block_gale", "build_scaled_variant",
    "gale_from_descriptor", "io_lowerbound_transform", "make_witness_sequence",
]
