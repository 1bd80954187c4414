"""The scale family ``g_i`` used by scaled gales.

``g_0(m, s) = s*m`` and ``g_{i+1}(m, s) = 2**g_i(log2 m, s)`` on the domain
``m > a_{i+1}`` with ``a_0 = -inf`` and ``a_{i+1} = 2**a_i``.  So
``g_1(m, s) = m**s`` and ``g_2(m, s) = 2**((log2 m)**s)``.

Values are returned as :class:`~galelab.numeric.RealExpr`.  Whenever the tower
collapses to a rational (``g_1(16, 1/2) = 4``, ``g_i(m, 1) = m``, ...) the
expression is that rational; otherwise it is a single irreducible
:class:`ScaleAtom`.  The collapse rule is deterministic, so the same
``(i, m, s)`` always yields the same expression and differences such as
``g(m+1, s) - g(m, s)`` cancel exactly against the exponents of scaled gales.
"""
from __future__ import annotations

import math
from fractions import Fraction

import gmpy2

from .numeric import RealExpr, as_fraction, frac_str, iv_fraction, iv_log2, iv_pow2

MAX_SCALE_INDEX = 5


class DomainError(ValueError):
    """Argument outside a scale's domain ``(a_i, inf)``."""


def domain_lower_bound(i: int) -> float:
    """``a_i``: ``-inf, 0, 1, 2, 4, 16, ...``"""
    if i < 0:
        raise ValueError("scale index must be nonnegative")
    a = -math.inf
    for _ in range(i):
        a = 0.0 if a == -math.inf else 2.0**a
    return a


def in_domain(i: int, m) -> bool:
    return as_fraction(m) > domain_lower_bound(i)


# s -> g_i(m, s) is strictly increasing exactly for m above these points
# (found by sampling; see tests/test_scales.py)
MONOTONE_FROM = {0: 0, 1: 1, 2: 2, 3: 4, 4: 16}


class ScaleAtom:
    """The irrational value ``g_i(m, s)``, kept symbolic."""

    __slots__ = ("i", "m", "s", "key")

    def __init__(self, i: int, m: Fraction, s: Fraction):
        self.i, self.m, self.s = i, m, s
        self.key = (i, m, s)

    def __eq__(self, other) -> bool:
        return isinstance(other, ScaleAtom) and self.key == other.key

    def __hash__(self) -> int:
        return hash(("g",) + self.key)

    def interval(self):
        """Enclosure at the current working precision."""
        return _g_interval(self.i, iv_fraction(self.m), self.s)

    def __str__(self) -> str:
        m = str(self.m.numerator) if self.m.denominator == 1 else frac_str(self.m)
        return f"g{self.i}({m},{frac_str(self.s)})"

    __repr__ = __str__


def _g_interval(i: int, x, s: Fraction):
    if i == 0:
        return iv_fraction(s) * x
    if i == 1:
        return iv_pow2(iv_fraction(s) * iv_log2(x))
    return iv_pow2(_g_interval(i - 1, iv_log2(x), s))


def _exact_log2(x: Fraction) -> int | None:
    if x <= 0:
        return None
    num, den = x.numerator, x.denominator
    if den == 1 and num & (num - 1) == 0:
        return num.bit_length() - 1
    if num == 1 and den & (den - 1) == 0:
        return -(den.bit_length() - 1)
    return None


def _exact_power(x: Fraction, s: Fraction) -> Fraction | None:
    """``x**s`` when it is rational (x > 0)."""
    p, q = s.numerator, s.denominator
    rn, ok_n = gmpy2.iroot(gmpy2.mpz(x.numerator), q)
    rd, ok_d = gmpy2.iroot(gmpy2.mpz(x.denominator), q)
    if not (ok_n and ok_d):
        return None
    return Fraction(int(rn), int(rd)) ** p


def _zero_rate_value(i: int) -> Fraction:
    v = Fraction(0)
    for _ in range(i):
        v = Fraction(2) ** int(v)
    return v


def _g_exact(i: int, x: Fraction, s: Fraction) -> Fraction | None:
    if s == 1:
        return x
    if i == 0:
        return s * x
    if s == 0:
        return _zero_rate_value(i)
    if i == 1:
        return _exact_power(x, s) if x > 0 else None
    lx = _exact_log2(x)
    if lx is None:
        return None
    inner = _g_exact(i - 1, Fraction(lx), s)
    if inner is None or inner.denominator != 1:
        return None
    return Fraction(2) ** int(inner)


def scale_eval(i: int, m, s) -> RealExpr:
    """``g_i(m, s)`` as an exact expression (rational or one atom)."""
    m, s = as_fraction(m), as_fraction(s)
    if s < 0:
        raise ValueError("scale rate must be nonnegative")
    if i < 0 or i > MAX_SCALE_INDEX:
        raise ValueError(f"scale index {i} outside 0..{MAX_SCALE_INDEX}")
    if not m > domain_lower_bound(i):
        raise DomainError(f"g_{i} is undefined at m = {m} (needs m > {domain_lower_bound(i)})")
    exact = _g_exact(i, m, s)
    if exact is not None:
        return RealExpr(exact)
    return RealExpr.atom(ScaleAtom(i, m, s))


def scale_delta(i: int, m, s) -> RealExpr:
    """``g_i(m + 1, s) - g_i(m, s)``."""
    m = as_fraction(m)
    return scale_eval(i, m + 1, s) - scale_eval(i, m, s)


def scale_bounds(i: int, m, s, prec: int = 128) -> tuple[Fraction, Fraction]:
    return scale_eval(i, m, s).bounds(prec)


def monotone_threshold(i: int, grid_m, rates) -> int | None:
    """Smallest grid point from which ``s -> g_i(m, s)`` is strictly increasing
    on ``rates`` at every later grid point (checked with intervals)."""
    rates = sorted(as_fraction(r) for r in rates)
    good = []
    for m in grid_m:
        if not in_domain(i, m):
            good.append(False)
            continue
        vals = [scale_eval(i, m, r).bounds(96) for r in rates]
        good.append(all(vals[k][1] < vals[k + 1][0] for k in range(len(vals) - 1)))
    threshold = None
    for m, ok in zip(reversed(list(grid_m)), reversed(good)):
        if not ok:
            break
        threshold = m
    return threshold


__all__ = [
    "DomainError", "ScaleAtom", "MONOTONE_FROM", "domain_lower_bound", "in_domain",
    "scale_eval", "scale_delta", "scale_bounds", "monotone_threshold",
]
