"""Capital values: exact ``c * 2**e`` numbers with an interval fallback.

Every capital a gale produces is held as an :class:`ExactCapital` whenever the
arithmetic allows it.  The exponent is a :class:`RealExpr` -- a rational plus a
rational combination of irreducible "atoms" (scale values such as
``g_1(15, 1/2) = 15**0.5``) -- so products, quotients and sums of values whose
exponents differ by an integer stay exact.  Anything else is demoted to an
:class:`IntervalCapital` with rigorous (outward rounded) dyadic endpoints.
"""
from __future__ import annotations

import enum
import math
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

import numpy as np
from mpmath import iv, mp, mpf

DEFAULT_PREC = 128
MAX_PREC = 1024
# extra working bits so that a value computed "at P bits" is accurate to P bits
GUARD_BITS = 32

Rational = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected a rational, got {type(x).__name__}: {x!r}")


def frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _q(q: Fraction) -> str:
    """Compact display form: integers without a denominator."""
    return str(q.numerator) if q.denominator == 1 else frac_str(q)


class Cmp(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"
    INDETERMINATE = "INDETERMINATE"

    def flipped(self) -> "Cmp":
        return {Cmp.LT: Cmp.GT, Cmp.GT: Cmp.LT}.get(self, self)


# integer codes used by the vectorised comparisons
CMP_CODES = {Cmp.LT: -1, Cmp.EQ: 0, Cmp.GT: 1, Cmp.INDETERMINATE: 2}
CODE_CMP = {v: k for k, v in CMP_CODES.items()}


# ---------------------------------------------------------------------------
# interval helpers (mpmath's iv context does the outward rounding)

@contextmanager
def working_precision(bits: int) -> Iterator[None]:
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, _bc = raw
    man = int(man)
    if sign:
        man = -man
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)


def box_endpoints(box) -> tuple[Fraction, Fraction]:
    """Exact dyadic endpoints of an mpmath interval."""
    a, b = box._mpi_
    return _raw_to_fraction(a), _raw_to_fraction(b)


def iv_fraction(q: Fraction):
    """Enclosure of a rational at the current working precision."""
    q = as_fraction(q)
    if q.denominator == 1:
        return iv.mpf(q.numerator)
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def iv_box(lo: Fraction, hi: Fraction):
    return iv.mpf([iv_fraction(lo).a, iv_fraction(hi).b])


def iv_pow2(x):
    return iv.exp(x * iv.log(2))


def iv_log2(x):
    return iv.log(x) / iv.log(2)


# ---------------------------------------------------------------------------
# exponents

class RealExpr:
    """``rational + sum(coeff * atom)``, a linear form over irreducible atoms.

    Atoms must be hashable and provide ``key`` (a sortable tuple), ``interval()``
    (an enclosure at the current working precision) and ``__str__``.
    """

    __slots__ = ("rational", "terms", "_hash")

    def __init__(self, rational: Rational = 0, terms: Iterable = ()):
        self.rational = as_fraction(rational)
        merged: dict = {}
        for atom, c in terms:
            c = as_fraction(c)
            merged[atom] = merged.get(atom, 0) + c
        self.terms = tuple(sorted(((a, c) for a, c in merged.items() if c != 0),
                                  key=lambda t: t[0].key))
        self._hash = None

    @classmethod
    def atom(cls, atom) -> "RealExpr":
        return cls(0, [(atom, 1)])

    @property
    def is_rational(self) -> bool:
        return not self.terms

    def symbolic_part(self) -> "RealExpr":
        return RealExpr(0, self.terms)

    def __add__(self, other) -> "RealExpr":
        other = to_expr(other)
        return RealExpr(self.rational + other.rational, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "RealExpr":
        return RealExpr(-self.rational, [(a, -c) for a, c in self.terms])

    def __sub__(self, other) -> "RealExpr":
        return self + (-to_expr(other))

    def __rsub__(self, other) -> "RealExpr":
        return to_expr(other) - self

    def __mul__(self, k) -> "RealExpr":
        k = as_fraction(k)
        return RealExpr(self.rational * k, [(a, c * k) for a, c in self.terms])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.rational == other
        if not isinstance(other, RealExpr):
            return NotImplemented
        return self.rational == other.rational and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational:
                self._hash = hash(self.rational)
            else:
                self._hash = hash((self.rational, self.terms))
        return self._hash

    def interval(self, prec: int = DEFAULT_PREC):
        """Enclosure as an mpmath interval, computed with guard bits."""
        with working_precision(prec + GUARD_BITS):
            acc = iv_fraction(self.rational)
            for atom, c in self.terms:
                acc = acc + iv_fraction(c) * atom.interval()
            return acc

    def bounds(self, prec: int = DEFAULT_PREC) -> tuple[Fraction, Fraction]:
        return box_endpoints(self.interval(prec))

    def __float__(self) -> float:
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    def __str__(self) -> str:
        parts = [_q(self.rational)] if self.rational or not self.terms else []
        for atom, c in self.terms:
            parts.append(str(atom) if c == 1 else f"{_q(c)}*{atom}")
        return "+".join(parts).replace("+-", "-")

    def __repr__(self) -> str:
        return f"RealExpr({self})"


def to_expr(x) -> RealExpr:
    if isinstance(x, RealExpr):
        return x
    return RealExpr(as_fraction(x))


# ---------------------------------------------------------------------------
# capital values

class ExactCapital:
    """The nonnegative number ``coeff * 2**exp2``.

    Normal form: zero has ``exp2 == 0``; otherwise the integer part of the
    exponent's rational part is folded into ``coeff`` so the rational part
    lies in ``[0, 1)``.  Two values share an *exponent class* exactly when
    their ``exp2`` are equal, and then their sum is exact.
    """

    __slots__ = ("coeff", "exp2")

    def __init__(self, coeff: Rational = 1, exp2=0):
        coeff = as_fraction(coeff)
        if coeff < 0:
            raise ValueError("capital values are nonnegative")
        exp2 = to_expr(exp2)
        if coeff == 0:
            self.coeff, self.exp2 = Fraction(0), _ZERO_EXPR
            return
        whole = math.floor(exp2.rational)
        if whole:
            coeff = coeff * 2**whole if whole > 0 else coeff / 2**-whole
            exp2 = RealExpr(exp2.rational - whole, exp2.terms)
        self.coeff, self.exp2 = coeff, exp2

    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def is_rational(self) -> bool:
        return self.exp2 == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coeff

    def interval(self, prec: int = DEFAULT_PREC):
        if self.coeff == 0:
            return iv.mpf(0)
        with working_precision(prec + GUARD_BITS):
            c = iv_fraction(self.coeff)
            if self.exp2 == 0:
                return c
            return c * iv_pow2(self.exp2.interval(prec))

    def bounds(self, prec: int = DEFAULT_PREC) -> tuple[Fraction, Fraction]:
        lo, hi = box_endpoints(self.interval(prec))
        return max(lo, Fraction(0)), hi

    def __float__(self) -> float:
        if self.exp2 == 0:
            return float(self.coeff)
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.exp2 == 0 and self.coeff == other
        if not isinstance(other, ExactCapital):
            return NotImplemented
        return self.coeff == other.coeff and self.exp2 == other.exp2

    def __hash__(self) -> int:
        return hash((self.coeff, self.exp2))

    def __str__(self) -> str:
        if self.coeff == 0 or self.exp2 == _ZERO_EXPR:
            return _q(self.coeff)
        return f"{_q(self.coeff)}*2^({self.exp2})"

    def __repr__(self) -> str:
        return f"ExactCapital({self})"


_ZERO_EXPR = RealExpr(0)
ZERO = ExactCapital(0)
ONE = ExactCapital(1)


class IntervalCapital:
    """A capital known only to lie in ``[lo, hi]`` (exact dyadic endpoints).

    ``terms`` keeps the exact summands the value came from, when there are
    any, so the enclosure can be recomputed at a higher precision.
    """

    __slots__ = ("lo", "hi", "prec", "terms")

    def __init__(self, lo: Fraction, hi: Fraction, prec: int,
                 terms: tuple[ExactCapital, ...] | None = None):
        if lo > hi:
            raise ValueError("empty interval")
        self.lo = max(Fraction(lo), Fraction(0))
        self.hi = Fraction(hi)
        self.prec = prec
        self.terms = terms

    @classmethod
    def of_sum(cls, terms: Sequence[ExactCapital], prec: int = DEFAULT_PREC) -> "IntervalCapital":
        lo, hi = _sum_bounds(terms, prec)
        return cls(lo, hi, prec, tuple(terms))

    @property
    def refinable(self) -> bool:
        return self.terms is not None

    def at_precision(self, prec: int) -> "IntervalCapital":
        """Recompute at ``prec`` bits, intersected with the current enclosure."""
        if not self.refinable or prec <= self.prec:
            return self
        lo, hi = _sum_bounds(self.terms, prec)
        return IntervalCapital(max(lo, self.lo), min(hi, self.hi), prec, self.terms)

    def width(self) -> Fraction:
        return self.hi - self.lo

    def interval(self, prec: int = DEFAULT_PREC):
        with working_precision(max(prec, self.prec) + GUARD_BITS):
            return iv_box(self.lo, self.hi)

    def bounds(self, prec: int = DEFAULT_PREC) -> tuple[Fraction, Fraction]:
        v = self.at_precision(prec)
        return v.lo, v.hi

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __str__(self) -> str:
        with mp.workprec(self.prec + GUARD_BITS):
            digits = max(6, int(self.prec * 0.30103))
            lo = mp.nstr(mpf(self.lo.numerator) / self.lo.denominator, digits)
            hi = mp.nstr(mpf(self.hi.numerator) / self.hi.denominator, digits)
        return f"[{lo},{hi}]@{self.prec}bits"

    def __repr__(self) -> str:
        return f"IntervalCapital({self})"


CapitalValue = Union[ExactCapital, IntervalCapital]


def _sum_bounds(terms: Sequence[ExactCapital], prec: int) -> tuple[Fraction, Fraction]:
    with working_precision(prec + GUARD_BITS):
        acc = iv.mpf(0)
        for t in terms:
            acc = acc + t.interval(prec)
        lo, hi = box_endpoints(acc)
    return max(lo, Fraction(0)), hi


def capital(x) -> CapitalValue:
    """Coerce numbers to capital values (``ExactCapital`` for rationals)."""
    if isinstance(x, (ExactCapital, IntervalCapital)):
        return x
    return ExactCapital(as_fraction(x))


def _summands(x: CapitalValue) -> tuple[ExactCapital, ...] | None:
    if isinstance(x, ExactCapital):
        return (x,)
    return x.terms


def _group(terms: Iterable[ExactCapital]) -> list[ExactCapital]:
    """Merge summands sharing an exponent class; drops zeros."""
    acc: dict[RealExpr, Fraction] = {}
    for t in terms:
        if t.coeff:
            acc[t.exp2] = acc.get(t.exp2, 0) + t.coeff
    return [ExactCapital(c, e) for e, c in acc.items()]


def _from_summands(terms: Iterable[ExactCapital], prec: int) -> CapitalValue:
    grouped = _group(terms)
    if not grouped:
        return ZERO
    if len(grouped) == 1:
        return grouped[0]
    grouped.sort(key=lambda t: (t.exp2.rational, [a.key for a, _ in t.exp2.terms]))
    return IntervalCapital.of_sum(grouped, prec)


def _mul_exact(a: ExactCapital, b: ExactCapital) -> ExactCapital:
    if a.coeff == 0 or b.coeff == 0:
        return ZERO
    return ExactCapital(a.coeff * b.coeff, a.exp2 + b.exp2)


def _div_exact(a: ExactCapital, b: ExactCapital) -> ExactCapital:
    if b.coeff == 0:
        raise ZeroDivisionError("capital division by zero")
    if a.coeff == 0:
        return ZERO
    return ExactCapital(a.coeff / b.coeff, a.exp2 - b.exp2)


def cap_mul(a, b, prec: int = DEFAULT_PREC) -> CapitalValue:
    a, b = capital(a), capital(b)
    if isinstance(a, ExactCapital) and isinstance(b, ExactCapital):
        return _mul_exact(a, b)
    sa, sb = _summands(a), _summands(b)
    if sa is not None and sb is not None:
        return _from_summands((_mul_exact(x, y) for x in sa for y in sb), prec)
    p = max(prec, getattr(a, "prec", 0), getattr(b, "prec", 0))
    with working_precision(p + GUARD_BITS):
        lo, hi = box_endpoints(a.interval(p) * b.interval(p))
    return IntervalCapital(lo, hi, p)


def cap_div(a, b, prec: int = DEFAULT_PREC) -> CapitalValue:
    """Quotient ``a / b``; raises ZeroDivisionError when ``b`` may be zero."""
    a, b = capital(a), capital(b)
    if isinstance(b, ExactCapital):
        if b.coeff == 0:
            raise ZeroDivisionError("capital division by zero")
        if isinstance(a, ExactCapital):
            return _div_exact(a, b)
        if a.terms is not None:
            return _from_summands((_div_exact(t, b) for t in a.terms), prec)
    elif b.lo == 0:
        raise ZeroDivisionError("divisor interval contains zero")
    p = max(prec, getattr(a, "prec", 0), getattr(b, "prec", 0))
    with working_precision(p + GUARD_BITS):
        lo, hi = box_endpoints(a.interval(p) / b.interval(p))
    return IntervalCapital(lo, hi, p)


def cap_add(a, b, prec: int = DEFAULT_PREC) -> CapitalValue:
    a, b = capital(a), capital(b)
    sa, sb = _summands(a), _summands(b)
    if sa is not None and sb is not None:
        return _from_summands(sa + sb, prec)
    p = max(prec, getattr(a, "prec", 0), getattr(b, "prec", 0))
    with working_precision(p + GUARD_BITS):
        lo, hi = box_endpoints(a.interval(p) + b.interval(p))
    return IntervalCapital(lo, hi, p)


def cap_sum(values: Iterable, prec: int = DEFAULT_PREC) -> CapitalValue:
    total: CapitalValue = ZERO
    for v in values:
        total = cap_add(total, v, prec)
    return total


def pow2(e) -> ExactCapital:
    """``2**e`` for a rational or a :class:`RealExpr` exponent.

    Irrational exponents stay symbolic; ``.interval()``/``.bounds()`` give an
    enclosure at any precision.
    """
    return ExactCapital(1, to_expr(e) if not isinstance(e, RealExpr) else e)


def _cmp_rational_pow2(q: Fraction, e: Fraction) -> Cmp:
    """Compare ``q`` with ``2**e`` exactly (``q > 0``)."""
    p, d = e.numerator, e.denominator
    lhs = q**d
    rhs = Fraction(2) ** p
    return Cmp.LT if lhs < rhs else Cmp.GT if lhs > rhs else Cmp.EQ


def exact_cmp(a: ExactCapital, b: ExactCapital) -> Cmp | None:
    """Exact comparison, or None when the symbolic exponent parts differ."""
    if a.coeff == 0 or b.coeff == 0:
        if a.coeff == b.coeff:
            return Cmp.EQ
        return Cmp.LT if a.coeff == 0 else Cmp.GT
    if a.exp2.terms != b.exp2.terms:
        return None
    if a.exp2.rational == b.exp2.rational:
        return Cmp.LT if a.coeff < b.coeff else Cmp.GT if a.coeff > b.coeff else Cmp.EQ
    # c1 * 2**e1 vs c2 * 2**e2  <=>  c1/c2 vs 2**(e2 - e1)
    return _cmp_rational_pow2(a.coeff / b.coeff, b.exp2.rational - a.exp2.rational)


def _interval_cmp(alo, ahi, blo, bhi) -> Cmp:
    if ahi < blo:
        return Cmp.LT
    if alo > bhi:
        return Cmp.GT
    if alo == ahi == blo == bhi:
        return Cmp.EQ
    return Cmp.INDETERMINATE


def _signed_summands(a: CapitalValue, b: CapitalValue):
    sa, sb = _summands(a), _summands(b)
    if sa is None or sb is None:
        return None
    acc: dict[RealExpr, Fraction] = {}
    for t in sa:
        acc[t.exp2] = acc.get(t.exp2, 0) + t.coeff
    for t in sb:
        acc[t.exp2] = acc.get(t.exp2, 0) - t.coeff
    return {e: c for e, c in acc.items() if c}


def cap_cmp(a, b, prec: int = DEFAULT_PREC, max_prec: int = MAX_PREC) -> Cmp:
    """Compare two capitals, exactly when possible.

    Falls back to interval comparison, doubling the precision from ``prec`` up
    to ``max_prec``; INDETERMINATE means the enclosures still overlap.
    """
    a, b = capital(a), capital(b)
    if isinstance(a, ExactCapital) and isinstance(b, ExactCapital):
        res = exact_cmp(a, b)
        if res is not None:
            return res
    diff = _signed_summands(a, b)
    if diff is not None:
        if not diff:
            return Cmp.EQ
        signs = {c > 0 for c in diff.values()}
        if signs == {True}:
            return Cmp.GT
        if signs == {False}:
            return Cmp.LT
    p = prec
    ia, ib = _as_interval(a, p), _as_interval(b, p)
    while True:
        res = _interval_cmp(ia.lo, ia.hi, ib.lo, ib.hi)
        if res is not Cmp.INDETERMINATE or p >= max_prec:
            return res
        if not (ia.refinable or ib.refinable):
            return res
        p *= 2
        ia, ib = ia.at_precision(p), ib.at_precision(p)


def _as_interval(x: CapitalValue, prec: int) -> IntervalCapital:
    if isinstance(x, IntervalCapital):
        return x.at_precision(prec)
    lo, hi = x.bounds(prec)
    return IntervalCapital(lo, hi, prec, (x,))


def to_interval(x, prec: int = DEFAULT_PREC) -> IntervalCapital:
    """Enclosure of any capital value at ``prec`` bits."""
    return _as_interval(capital(x), prec)


# ---------------------------------------------------------------------------
# vectors of capitals (one tree level at a time)

class CapVector:
    """A batch of capitals, usually ``base * ints[k]`` with a shared base.

    The shared-base ("fast") form keeps all coefficients as Python integers in
    a numpy object array, which is what makes exhaustive tree validation
    affordable.  Values that do not share an exponent class fall back to a
    plain list of capital values.
    """

    __slots__ = ("base", "ints", "items")

    def __init__(self, base: ExactCapital | None = None, ints=None, items=None):
        self.base = base
        self.ints = ints
        self.items = items

    @classmethod
    def fast(cls, base: ExactCapital, ints) -> "CapVector":
        arr = np.asarray(ints)
        if arr.dtype != object:
            arr = arr.astype(object)
        return cls(base=base, ints=arr)

    @classmethod
    def from_values(cls, values: Sequence) -> "CapVector":
        values = [capital(v) for v in values]
        nonzero = [v for v in values if not (isinstance(v, ExactCapital) and v.coeff == 0)]
        if all(isinstance(v, ExactCapital) for v in values):
            classes = {v.exp2 for v in nonzero}
            if len(classes) <= 1:
                exp2 = classes.pop() if classes else _ZERO_EXPR
                den = 1
                for v in nonzero:
                    den = den * v.coeff.denominator // math.gcd(den, v.coeff.denominator)
                ints = np.empty(len(values), dtype=object)
                for k, v in enumerate(values):
                    ints[k] = int(v.coeff * den) if v.coeff else 0
                return cls.fast(ExactCapital(Fraction(1, den), exp2), ints)
        return cls(items=values)

    @property
    def is_fast(self) -> bool:
        return self.items is None

    def __len__(self) -> int:
        return len(self.ints) if self.is_fast else len(self.items)

    def __getitem__(self, k: int) -> CapitalValue:
        if self.is_fast:
            n = self.ints[k]
            return _mul_exact(self.base, ExactCapital(n)) if n else ZERO
        return self.items[k]

    def values(self) -> list[CapitalValue]:
        return [self[k] for k in range(len(self))]

    def general(self) -> list[CapitalValue]:
        return self.values() if self.is_fast else list(self.items)

    def take(self, idx) -> "CapVector":
        if self.is_fast:
            return CapVector.fast(self.base, self.ints[idx])
        idx = np.arange(len(self.items))[idx]
        return CapVector(items=[self.items[k] for k in idx])

    def scale(self, c, prec: int = DEFAULT_PREC) -> "CapVector":
        c = capital(c)
        if self.is_fast and isinstance(c, ExactCapital):
            if c.coeff == 0:
                return CapVector.fast(ONE, np.zeros(len(self), dtype=object))
            return CapVector.fast(_mul_exact(self.base, c), self.ints)
        return CapVector(items=[cap_mul(v, c, prec) for v in self.general()])

    def __add__(self, other: "CapVector") -> "CapVector":
        if len(self) != len(other):
            raise ValueError("length mismatch")
        if self.is_fast and other.is_fast:
            if not other.ints.any():
                return self
            if not self.ints.any():
                return other
            if self.base.exp2 == other.base.exp2:
                q = other.base.coeff / self.base.coeff
                a, b = q.numerator, q.denominator
                ints = self.ints * b + other.ints * a
                return CapVector.fast(ExactCapital(self.base.coeff / b, self.base.exp2), ints)
        return CapVector(items=[cap_add(x, y) for x, y in zip(self.general(), other.general())])

    def __mul__(self, other: "CapVector") -> "CapVector":
        if len(self) != len(other):
            raise ValueError("length mismatch")
        if self.is_fast and other.is_fast:
            return CapVector.fast(_mul_exact(self.base, other.base), self.ints * other.ints)
        return CapVector(items=[cap_mul(x, y) for x, y in zip(self.general(), other.general())])

    def pair_sums(self) -> "CapVector":
        """Sums of consecutive pairs: entry k is ``v[2k] + v[2k+1]``."""
        if self.is_fast:
            return CapVector.fast(self.base, self.ints[0::2] + self.ints[1::2])
        vals = self.items
        return CapVector(items=[cap_add(vals[k], vals[k + 1]) for k in range(0, len(vals), 2)])

    def compare(self, other: "CapVector", prec: int = DEFAULT_PREC,
                max_prec: int = MAX_PREC) -> np.ndarray:
        """Elementwise comparison codes (see ``CMP_CODES``)."""
        if len(self) != len(other):
            raise ValueError("length mismatch")
        if self.is_fast and other.is_fast:
            if not other.ints.any():
                return np.sign(self.ints).astype(np.int8)
            if not self.ints.any():
                return -np.sign(other.ints).astype(np.int8)
            ratio = exact_cmp_ratio(self.base, other.base)
            if ratio is not None:
                # self.base / other.base == a / b
                a, b = ratio
                lhs = self.ints * a
                rhs = other.ints * b
                return np.sign(lhs - rhs).astype(np.int8)
        out = np.empty(len(self), dtype=np.int8)
        for k, (x, y) in enumerate(zip(self.general(), other.general())):
            out[k] = CMP_CODES[cap_cmp(x, y, prec, max_prec)]
        return out


def exact_cmp_ratio(a: ExactCapital, b: ExactCapital) -> tuple[int, int] | None:
    """``a / b`` as an integer pair when it is rational, else None."""
    if a.coeff == 0 or b.coeff == 0 or a.exp2 != b.exp2:
        return None
    q = a.coeff / b.coeff
    return q.numerator, q.denominator
