"""Exact counting of valid relay transmission schedules.

A schedule of length 2n is a binary word with n ones (receive slots) and
n zeros (forward slots) in which every prefix contains at least as many
ones as zeros, so the relay buffer never goes negative.  S(n) denotes the
number of such words; F(n, k) counts the subset whose first k symbols are
all ones.  Everything here is integer-exact: counts are plain Python ints
and only the final rate figures move to floating point.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional

__all__ = [
    "BallotTable",
    "RateFigure",
    "brute_force_count",
    "catalan_closed_form",
    "f_count",
    "log2_int",
    "rate_figures",
    "s_count",
]

BRUTE_FORCE_MAX_N = 13


class BallotTable:
    """Memoized joint table of S(n) and F(n, k).

    The two recurrences used:

        S(n)    = S(n-1) + F(n, 2)
        F(n, k) = sum_{i=0..k} C(k, i) * F(n-k+i, 2i)

    with F(n, k) = 0 for k > n, F(n, n) = 1, F(n, 0) = F(n, 1) = S(n) and
    S(0) = 1.  Even-k entries are filled bottom-up in n and, within one n,
    in descending k, so every term on the right is already available; odd
    k (which never feeds back into the table) is expanded on demand.
    """

    def __init__(self) -> None:
        self._s: List[int] = [1]  # S(0) = 1, the empty schedule
        self._f_even: Dict[tuple, int] = {}
        self._f_odd: Dict[tuple, int] = {}

    @property
    def max_n(self) -> int:
        return len(self._s) - 1

    def _ensure(self, n: int) -> None:
        for m in range(self.max_n + 1, n + 1):
            # descending even k; the i == k term needs F(m, 2k), which is
            # either 0 (2k > m) or was just filled earlier in this pass.
            for k in range((m if m % 2 == 0 else m - 1), 1, -2):
                self._f_even[(m, k)] = self._expand(m, k)
            self._s.append(self._s[m - 1] + self._f_even.get((m, 2), 0))

    def _expand(self, n: int, k: int) -> int:
        if k == n:
            return 1
        total = 0
        # terms with i > n - k vanish because 2i then exceeds n - k + i
        for i in range(0, min(k, n - k) + 1):
            total += math.comb(k, i) * self.f(n - k + i, 2 * i)
        return total

    def f(self, n: int, k: int) -> int:
        if n < 0 or k < 0:
            raise ValueError("f_count requires n >= 0 and k >= 0")
        if k > n:
            return 0
        if k <= 1:
            return self.s(n)
        if k == n:
            return 1
        if k % 2 == 0:
            # memo first: _expand reaches back into the pass that is
            # currently filling this n, before S(n) lands in the list
            hit = self._f_even.get((n, k))
            if hit is not None:
                return hit
            self._ensure(n)
            return self._f_even[(n, k)]
        key = (n, k)
        if key not in self._f_odd:
            if n > self.max_n:
                self._ensure(n)
            self._f_odd[key] = self._expand(n, k)
        return self._f_odd[key]

    def s(self, n: int) -> int:
        if n < 0:
            raise ValueError("s_count requires n >= 0")
        if n > self.max_n:
            self._ensure(n)
        return self._s[n]


_SHARED = BallotTable()


def f_count(n: int, k: int, table: Optional[BallotTable] = None) -> int:
    """Number of valid length-2n schedules whose first k symbols are '1'."""
    return (table or _SHARED).f(n, k)


def s_count(n: int, table: Optional[BallotTable] = None) -> int:
    """Number of valid schedules of length 2n."""
    return (table or _SHARED).s(n)


def catalan_closed_form(n: int) -> int:
    """C(2n, n) / (n + 1), checked to divide exactly."""
    if n < 0:
        raise ValueError("catalan_closed_form requires n >= 0")
    binom = math.comb(2 * n, n)
    q, rem = divmod(binom, n + 1)
    if rem:  # cannot happen; guards against a broken comb
        raise ArithmeticError("binomial not divisible by n + 1")
    return q


def brute_force_count(n: int) -> int:
    """Count valid schedules by enumerating all 4**n binary words.

    Independent of the recurrences above: every integer in [0, 2**(2n))
    is expanded to its bit pattern and tested against the definition
    (balanced, every prefix non-negative).  Guarded because the scan is
    exponential.
    """
    if n < 0:
        raise ValueError("brute_force_count requires n >= 0")
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(
            f"brute_force_count limited to n <= {BRUTE_FORCE_MAX_N} (got {n})"
        )
    if n == 0:
        return 1
    import numpy as np

    width = 2 * n
    total = 1 << width
    shifts = np.arange(width - 1, -1, -1, dtype=np.uint32)
    steps = np.arange(1, width + 1)
    chunk = 1 << 20
    count = 0
    for start in range(0, total, chunk):
        vals = np.arange(start, min(start + chunk, total), dtype=np.uint32)
        bits = ((vals[:, None] >> shifts) & 1).astype(np.int8)
        surplus = 2 * np.cumsum(bits, axis=1) - steps  # ones minus zeros
        ok = (surplus[:, -1] == 0) & (surplus.min(axis=1) >= 0)
        count += int(ok.sum())
    return count


def log2_int(value: int) -> float:
    """log2 of a positive integer, good to well past 12 significant digits.

    Splits off the top 64 bits so the float conversion never overflows
    regardless of magnitude.
    """
    if value <= 0:
        raise ValueError("log2_int requires a positive integer")
    nbits = value.bit_length()
    if nbits <= 64:
        return math.log2(value)
    shift = nbits - 64
    return shift + math.log2(value >> shift)


@dataclass(frozen=True)
class RateFigure:
    """Rate summary for the optimal schedule book of length 2n."""

    n: int
    count: int
    bits_total: float
    bits_per_pulse: float
    weight_a: float  # bits per slot pair, 2 * bits_per_pulse


def rate_figures(n: int, table: Optional[BallotTable] = None) -> RateFigure:
    """log2 S(n) and the derived per-slot rates for length 2n."""
    if n <= 0:
        raise ValueError("rate_figures requires n >= 1")
    count = s_count(n, table)
    bits = log2_int(count)
    per_pulse = bits / (2 * n)
    return RateFigure(
        n=n,
        count=count,
        bits_total=bits,
        bits_per_pulse=per_pulse,
        weight_a=2.0 * per_pulse,
    )
