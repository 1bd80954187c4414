"""A toy KT complexity: ``min |p| + t`` over programs of a fixed tiny machine.

Machine ``TOYU-1`` (queried with a program ``p`` and a 0-based index ``i``):

* ``p = "0" + q`` with ``|q| >= 1`` (PERIOD): outputs ``q[i mod |q|]`` after
  ``(i mod |q|) + 1`` steps (it scans ``q``).
* ``p = "1" + b + m`` with ``|m| >= 1`` (SPLIT): outputs ``b`` when
  ``i < int(m, 2)`` and ``1 - b`` otherwise, after ``|m| + 1`` steps (it reads
  the counter).
* every other program (``"0"``, ``"1"``, ``"10"``, ``"11"``) never halts.

``toy_kt(x)`` is the least ``|p| + t`` such that ``U(p, i) = x[i]`` within
``t`` steps for every ``i < |x|``, or ``None`` when no program does so within
the step budget.  :func:`toy_kt_bruteforce` enumerates programs by length;
:func:`toy_kt` reaches the same value by solving for the only programs that
can print ``x``.
"""
from __future__ import annotations

import itertools

TOY_MACHINE = "TOYU-1"
MAX_LENGTH = 1 << 8
DEFAULT_BUDGET = 1 << 20


def run(p: str, i: int) -> tuple[str, int] | None:
    """``(output bit, steps)`` of the machine, or None if it does not halt."""
    if len(p) >= 2 and p[0] == "0":
        q = p[1:]
        k = i % len(q)
        return q[k], k + 1
    if len(p) >= 3 and p[0] == "1":
        b, m = p[1], p[2:]
        out = b if i < int(m, 2) else ("1" if b == "0" else "0")
        return out, len(m) + 1
    return None


def _time_to_print(p: str, x: str) -> int | None:
    t = 0
    for i, bit in enumerate(x):
        res = run(p, i)
        if res is None or res[0] != bit:
            return None
        t = max(t, res[1])
    return t


def toy_kt_bruteforce(x: str, budget: int = DEFAULT_BUDGET) -> int | None:
    """Reference value by enumerating programs in length-lexicographic order."""
    if not x:
        return 0
    best = None
    for length in itertools.count(1):
        # t >= 1 for nonempty x, so longer programs cannot win
        if best is not None and length + 1 >= best:
            break
        if length > len(x) + 1 and best is None:
            break
        for bits in itertools.product("01", repeat=length):
            p = "".join(bits)
            t = _time_to_print(p, x)
            if t is None or t > budget:
                continue
            if best is None or length + t < best:
                best = length + t
    return best


def toy_kt(x: str, budget: int = DEFAULT_BUDGET) -> int | None:
    if x.strip("01"):
        raise ValueError(f"not a bit string: {x!r}")
    if len(x) > MAX_LENGTH:
        raise ValueError(f"toy KT is limited to strings of length <= {MAX_LENGTH}")
    n = len(x)
    if n == 0:
        return 0
    best = None

    def offer(cost: int, t: int):
        nonlocal best
        if t <= budget and (best is None or cost < best):
            best = cost

    # PERIOD: q must be x[:L] and x must have period L; longer q never helps
    for period in range(1, n + 1):
        if all(x[i] == x[i - period] for i in range(period, n)):
            offer(1 + period + period, period)
            break  # the cost grows with the period
    # SPLIT: x = b^m (1-b)^(n-m)
    first = x[0]
    cut = x.find("1" if first == "0" else "0")
    if cut == -1:
        # constant: m >= n with b = x[0], or m = 0 with b flipped
        for mbits in (max(1, n.bit_length()), 1):
            offer(3 + 2 * mbits, mbits + 1)
    elif first not in x[cut:]:
        mbits = max(1, cut.bit_length())
        offer(3 + 2 * mbits, mbits + 1)
    return best
