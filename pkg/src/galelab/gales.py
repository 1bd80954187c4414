"""Gales, their validators, rescaling, and finite-horizon success monitoring.

A :class:`Gale` maps bit strings to capital.  Gales evaluate a whole tree
level at once (:meth:`Gale.level`), given the integer codes of the strings;
single-string evaluation goes through the same path.  Validators walk the
binary tree level by level and check

    2**s * d(w) >= d(w0) + d(w1)                      (s-supergale)
    2**Dg(|w|, s) * d(w) >= d(w0) + d(w1)             (g-scaled s-supergale)

at every prefix, exactly where possible and with escalating interval
precision otherwise.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

from .cantor import all_codes, check_bits, code_dtype, decode, encode
from .numeric import (
    DEFAULT_PREC, MAX_PREC, ONE, CapVector, CapitalValue, Cmp,
    ExactCapital, as_fraction, cap_cmp, capital, frac_str, pow2,
)
from .scales import domain_lower_bound, scale_delta, scale_eval

Pinned = Callable[[int], bool]


class GaleError(RuntimeError):
    """Evaluation failure, tagged with the offending prefix."""

    def __init__(self, prefix: str, cause: Exception):
        super().__init__(f"evaluation failed at prefix {prefix or 'λ'!r}: {cause}")
        self.prefix = prefix
        self.cause = cause


class Gale:
    """Base class: subclasses implement :meth:`level`.

    ``descriptor`` is a JSON-serialisable description of the strategy.
    ``pinned(k)`` is true for positions whose bit the gale ignores; validators
    use it to walk the quotient tree (see :func:`validate_supergale`).
    """

    descriptor: dict = {}
    pinned: Pinned | None = None
    max_depth: int | None = None

    def level(self, n: int, codes: np.ndarray) -> CapVector:
        raise NotImplementedError

    def __call__(self, w: str) -> CapitalValue:
        check_bits(w)
        n = len(w)
        codes = np.array([encode(w)], dtype=code_dtype(n))
        return self.level(n, codes)[0]

    def values(self, words: Sequence[str]) -> list[CapitalValue]:
        return [self(w) for w in words]


class FunctionGale(Gale):
    """Wraps a plain ``str -> capital`` function (memoised)."""

    def __init__(self, fn: Callable[[str], object], descriptor: dict | None = None,
                 pinned: Pinned | None = None):
        self.fn = fn
        self.descriptor = descriptor or {"kind": "function"}
        self.pinned = pinned
        self._memo: dict[str, CapitalValue] = {}

    def __call__(self, w: str) -> CapitalValue:
        v = self._memo.get(w)
        if v is None:
            try:
                v = capital(self.fn(w))
            except Exception as exc:  # noqa: BLE001 - re-raised with the prefix
                raise GaleError(w, exc) from exc
            if isinstance(v, ExactCapital) and v.coeff < 0:
                raise GaleError(w, ValueError("negative capital"))
            self._memo[w] = v
        return v

    def level(self, n: int, codes: np.ndarray) -> CapVector:
        return CapVector.from_values([self(decode(c, n)) for c in codes])


def _every_position(k: int) -> bool:
    return True


class NeutralGale(Gale):
    """``d(w) = 2**((s-1)|w|)``: the s-supergale that never bets."""

    pinned = staticmethod(_every_position)

    def __init__(self, s):
        self.s = as_fraction(s)
        self.descriptor = {"kind": "neutral", "s": frac_str(self.s)}

    def level(self, n: int, codes: np.ndarray) -> CapVector:
        return CapVector.fast(pow2((self.s - 1) * n), np.ones(len(codes), dtype=object))


class ZeroGale(Gale):
    descriptor = {"kind": "zero"}
    pinned = staticmethod(_every_position)

    def level(self, n: int, codes: np.ndarray) -> CapVector:
        return CapVector.fast(ONE, np.zeros(len(codes), dtype=object))


class ScaledNeutralGale(Gale):
    """``d(w) = 2**(g_i(|w|, s) - |w|)``, neutral for the i-th scale."""

    pinned = staticmethod(_every_position)

    def __init__(self, i: int, s):
        self.i, self.s = i, as_fraction(s)
        self.descriptor = {"kind": "scaled-neutral", "scale": i, "s": frac_str(self.s)}

    def level(self, n: int, codes: np.ndarray) -> CapVector:
        return CapVector.fast(pow2(scale_eval(self.i, n, self.s) - n),
                              np.ones(len(codes), dtype=object))


def all_in_on_zeros() -> Gale:
    """The martingale ``2**|w| * [w == 0**|w|]``."""
    return FunctionGale(lambda w: 0 if "1" in w else 2 ** len(w),
                        {"kind": "all-in-zeros"})


class WeightedSum(Gale):
    def __init__(self, terms: Sequence[tuple[object, Gale]]):
        if not terms:
            raise ValueError("weighted_sum needs at least one term")
        self.terms = [(as_fraction(wt), g) for wt, g in terms]
        for wt, _ in self.terms:
            if wt <= 0:
                raise ValueError("weights must be positive")
        self.descriptor = {
            "kind": "sum",
            "terms": [[frac_str(wt), g.descriptor] for wt, g in self.terms],
        }
        pins = [g.pinned for _, g in self.terms]
        if all(p is not None for p in pins):
            self.pinned = lambda k: all(p(k) for p in pins)

    def level(self, n: int, codes: np.ndarray) -> CapVector:
        acc = None
        for wt, g in self.terms:
            v = g.level(n, codes).scale(ExactCapital(wt))
            acc = v if acc is None else acc + v
        return acc


def weighted_sum(terms: Sequence[tuple[object, Gale]]) -> Gale:
    """Pointwise ``sum(weight_k * d_k)``; a single unit-weight term is returned as is."""
    if len(terms) == 1 and as_fraction(terms[0][0]) == 1:
        return terms[0][1]
    return WeightedSum(terms)


class RescaledGale(Gale):
    """``d'(w) = d(w) * 2**(g_to(|w|, s_to) - g_from(|w|, s_from))``."""

    def __init__(self, base: Gale, src: tuple[int, object], dst: tuple[int, object]):
        self.base = base
        self.src = (src[0], as_fraction(src[1]))
        self.dst = (dst[0], as_fraction(dst[1]))
        self.pinned = base.pinned
        self.descriptor = {
            "kind": "rescale",
            "from": [self.src[0], frac_str(self.src[1])],
            "to": [self.dst[0], frac_str(self.dst[1])],
            "gale": base.descriptor,
        }

    def multiplier(self, n: int) -> ExactCapital:
        (i1, s1), (i2, s2) = self.src, self.dst
        return pow2(scale_eval(i2, n, s2) - scale_eval(i1, n, s1))

    def level(self, n: int, codes: np.ndarray) -> CapVector:
        return self.base.level(n, codes).scale(self.multiplier(n))


def rescale(d: Gale, src: tuple[int, object], dst: tuple[int, object]) -> Gale:
    if src[0] == dst[0] and as_fraction(src[1]) == as_fraction(dst[1]):
        return d
    return RescaledGale(d, src, dst)


# ---------------------------------------------------------------------------
# validation

VERDICT_NAMES = {1: "GT", 0: "EQ", -1: "FAIL", 2: "INDETERMINATE"}


@dataclass
class ValidationReport:
    """Outcome of an exhaustive (quotient-)tree check.

    ``levels`` holds, per checked length ``n``, the codes of the checked
    prefixes and a verdict code for each: 1 strict, 0 equality, -1 violation,
    2 undecided at the maximum precision.
    """

    condition: str
    s: Fraction
    depth: int
    scale_index: int = 0
    quotient: bool = False
    levels: list[tuple[int, np.ndarray, np.ndarray]] = field(default_factory=list)

    def _count(self, code: int) -> int:
        return int(sum(int((v == code).sum()) for _, _, v in self.levels))

    @property
    def checked(self) -> int:
        return int(sum(len(v) for _, _, v in self.levels))

    @property
    def equalities(self) -> int:
        return self._count(0)

    @property
    def strict(self) -> int:
        return self._count(1)

    def _prefixes(self, code: int) -> list[str]:
        out = []
        for n, codes, verdicts in self.levels:
            for c in codes[verdicts == code]:
                out.append(decode(c, n))
        return out

    @property
    def violations(self) -> list[str]:
        return self._prefixes(-1)

    @property
    def indeterminate(self) -> list[str]:
        return self._prefixes(2)

    @property
    def valid(self) -> bool:
        return all(not ((v == -1) | (v == 2)).any() for _, _, v in self.levels)

    @property
    def martingale(self) -> bool:
        """Equality at every checked prefix."""
        return all((v == 0).all() for _, _, v in self.levels)

    @property
    def verdict(self) -> str:
        if any((v == -1).any() for _, _, v in self.levels):
            return "FAIL"
        if any((v == 2).any() for _, _, v in self.levels):
            return "INDETERMINATE"
        return "PASS"

    def records(self) -> Iterator[tuple[str, str]]:
        for n, codes, verdicts in self.levels:
            for c, v in zip(codes, verdicts):
                yield decode(c, n), VERDICT_NAMES[int(v)]

    def to_lines(self) -> Iterator[str]:
        for prefix, verdict in self.records():
            yield f"{prefix or 'λ'}\t{verdict}"

    def summary(self) -> dict:
        return {
            "condition": self.condition,
            "s": frac_str(self.s),
            "scale": self.scale_index,
            "depth": self.depth,
            "quotient": self.quotient,
            "checked": self.checked,
            "equalities": self.equalities,
            "strict": self.strict,
            "violations": len(self.violations),
            "indeterminate": len(self.indeterminate),
            "verdict": self.verdict,
        }


def _children(codes: np.ndarray, n: int) -> np.ndarray:
    dt = code_dtype(n + 1)
    kids = np.empty(2 * len(codes), dtype=dt)
    shifted = codes.astype(dt) * 2 if dt is object else codes.astype(dt) << 1
    kids[0::2] = shifted
    kids[1::2] = shifted + 1
    return kids


def _quotient_codes(n: int, pinned: Pinned | None) -> np.ndarray:
    """Codes of length-``n`` strings with every pinned position set to 0."""
    if pinned is None:
        return all_codes(n)
    codes = np.zeros(1, dtype=code_dtype(0))
    for k in range(n):
        codes = _children(codes, k)
        if pinned(k):
            codes = codes[0::2]
    return codes


def _walk(d: Gale, factor: Callable[[int], ExactCapital], depth: int, start: int,
          pinned: Pinned | None, prec: int, max_prec: int, report: ValidationReport):
    codes = _quotient_codes(start, pinned)
    try:
        parent = d.level(start, codes)
    except GaleError:
        raise
    except Exception as exc:
        raise GaleError(decode(codes[0], start), exc) from exc
    for n in range(start, depth):
        kids = _children(codes, n)
        try:
            child = d.level(n + 1, kids)
        except GaleError:
            raise
        except Exception as exc:
            raise GaleError(decode(kids[0], n + 1), exc) from exc
        lhs = parent.scale(factor(n), prec)
        verdicts = lhs.compare(child.pair_sums(), prec, max_prec)
        report.levels.append((n, codes, verdicts))
        if pinned is not None and pinned(n):
            codes, parent = kids[0::2], child.take(slice(0, None, 2))
        else:
            codes, parent = kids, child
    return report


def validate_supergale(d: Gale, s, depth: int = 12, *, pinned: Pinned | None | bool = True,
                       prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC) -> ValidationReport:
    """Check ``2**s d(w) >= d(w0) + d(w1)`` for every ``|w| < depth``.

    The walk covers all ``2**depth - 1`` prefixes unless the gale declares
    pinned positions (bits it ignores).  Then only prefixes with zeros at
    pinned positions are expanded, while both children of every visited
    prefix are still evaluated; since the gale's value does not depend on
    pinned bits this covers the full tree.  Pass ``pinned=None`` to force the
    full tree, or a predicate to restrict the walk to a subtree.
    """
    s = as_fraction(s)
    pin = d.pinned if pinned is True else (pinned or None)
    report = ValidationReport("supergale", s, depth, 0, quotient=pin is not None)
    factor = pow2(s)
    return _walk(d, lambda n: factor, depth, 0, pin, prec, max_prec, report)


def validate_scaled_supergale(d: Gale, i: int, s, depth: int = 12, *,
                              pinned: Pinned | None | bool = True,
                              prec: int = DEFAULT_PREC,
                              max_prec: int = MAX_PREC) -> ValidationReport:
    """Check ``d(w) >= 2**-Dg_i(|w|, s) [d(w0) + d(w1)]`` for ``|w| < depth``
    with ``|w|`` in the scale's domain (shorter prefixes are not constrained).
    """
    s = as_fraction(s)
    pin = d.pinned if pinned is True else (pinned or None)
    report = ValidationReport("scaled", s, depth, i, quotient=pin is not None)
    a = domain_lower_bound(i)
    start = 0 if a < 0 else int(a) + 1
    if start >= depth:
        return report
    return _walk(d, lambda n: pow2(scale_delta(i, n, s)), depth, start, pin,
                 prec, max_prec, report)


# ---------------------------------------------------------------------------
# trajectories

@dataclass
class TrajectoryStep:
    n: int
    value: CapitalValue | None
    error: str | None = None


@dataclass
class Trajectory:
    steps: list[TrajectoryStep]
    horizon: int
    annotations: dict = field(default_factory=dict)

    def value(self, n: int) -> CapitalValue | None:
        return self.steps[n].value

    def to_lines(self) -> Iterator[str]:
        for st in self.steps:
            if st.error is not None:
                yield f"{st.n}\tERROR {st.error}"
            else:
                yield f"{st.n}\t{st.value}"


SequenceSource = object  # str, iterable of bits, or callable n -> prefix


def _prefix_of(source, horizon: int) -> str:
    if isinstance(source, str):
        bits = source[:horizon]
    elif callable(source):
        bits = source(horizon)
    else:
        bits = "".join(str(int(b)) for b in itertools.islice(iter(source), horizon))
    check_bits(bits)
    if len(bits) < horizon:
        raise ValueError(f"source yielded {len(bits)} bits, need {horizon}")
    return bits


def run_trajectory(d: Gale, source: SequenceSource, horizon: int) -> Trajectory:
    """Record ``d(S[0..n-1])`` for ``n = 0..horizon``."""
    bits = _prefix_of(source, horizon)
    steps = []
    for n in range(horizon + 1):
        try:
            steps.append(TrajectoryStep(n, d(bits[:n])))
        except Exception as exc:  # noqa: BLE001 - recorded at its step
            steps.append(TrajectoryStep(n, None, str(exc)))
    return Trajectory(steps, horizon)


@dataclass
class SuccessReport:
    hit: bool
    sustained: bool
    first_hit: int | None
    indeterminate: int


def success_report(t: Trajectory, threshold, window_start: int,
                   prec: int = DEFAULT_PREC) -> SuccessReport:
    """Finite-horizon proxies for success (hit) and strong success (sustained).

    Undecidable comparisons count as not reaching the threshold.
    """
    if window_start > t.horizon:
        raise ValueError("window_start beyond the horizon")
    threshold = capital(threshold)
    above = []
    undecided = 0
    for st in t.steps:
        if st.value is None:
            above.append(False)
            continue
        c = cap_cmp(st.value, threshold, prec)
        if c is Cmp.INDETERMINATE:
            undecided += 1
        above.append(c in (Cmp.GT, Cmp.EQ))
    first = next((k for k, ok in enumerate(above) if ok), None)
    return SuccessReport(
        hit=first is not None,
        sustained=all(above[window_start:]),
        first_hit=first,
        indeterminate=undecided,
    )


def constant_source(bit: str) -> Callable[[int], str]:
    return lambda n: bit * n


def random_source(seed: int) -> Callable[[int], str]:
    def prefix(n: int) -> str:
        rng = random.Random(seed)
        return "".join("1" if rng.getrandbits(1) else "0" for _ in range(n))
    return prefix
