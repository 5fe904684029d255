"""Concatenated schedule codes for long blocks.

Storing the optimal book of length 2n is hopeless once n grows, so a long
schedule is assembled from m components of a fixed even length L plus one
tail of length r = 2n - m*L (absent when r == 0).  Each component block is
itself an optimal book, addressed arithmetically through a PathCountTable,
so nothing is ever materialized.  The price is rate: log2 of the product
of component counts per pulse instead of log2 S(n) per pulse.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from .ballot import catalan_closed_form, log2_int
from .codebook import PathCountTable, rank, unrank, validate

__all__ = [
    "ConcatMetrics",
    "ConcatScheme",
    "concat_decode",
    "concat_encode",
    "metrics",
    "plan",
]


@dataclass(frozen=True)
class ConcatScheme:
    target_len: int  # 2n
    L: int
    m: int
    r: int
    body: Optional[PathCountTable]  # component coder, None when m == 0
    tail: Optional[PathCountTable]  # tail coder, None when r == 0
    body_count: int  # S(L/2)
    tail_count: int  # S(r/2), 1 when r == 0

    @property
    def capacity(self) -> int:
        """Number of addressable schedules, S(L/2)**m * S(r/2)."""
        return self.body_count**self.m * self.tail_count


def plan(target_len: int, L: int) -> ConcatScheme:
    """Split target_len as m*L + r with 0 <= r < L and build the coders.

    target_len and L must be positive and even; r then comes out even.
    Lengths below L degenerate to a single tail block (m == 0), and
    multiples of L have no tail.
    """
    if target_len <= 0 or target_len % 2:
        raise ValueError("target_len must be positive and even")
    if L <= 0 or L % 2:
        raise ValueError("L must be positive and even")
    m, r = divmod(target_len, L)
    body = PathCountTable.build(L // 2) if m else None
    tail = PathCountTable.build(r // 2) if r else None
    return ConcatScheme(
        target_len=target_len,
        L=L,
        m=m,
        r=r,
        body=body,
        tail=tail,
        body_count=catalan_closed_form(L // 2) if m else 1,
        tail_count=catalan_closed_form(r // 2) if r else 1,
    )


def concat_encode(scheme: ConcatScheme, index: int) -> str:
    """Mixed-radix expansion of index, one digit per block, big-endian."""
    if not 0 <= index < scheme.capacity:
        raise ValueError(f"index {index} outside [0, {scheme.capacity})")
    rem = index
    tail_digit = 0
    if scheme.r:
        rem, tail_digit = divmod(rem, scheme.tail_count)
    body_digits = []
    for _ in range(scheme.m):
        rem, d = divmod(rem, scheme.body_count)
        body_digits.append(d)
    body_digits.reverse()  # first block is the most significant digit
    parts = [unrank(d, scheme.body) for d in body_digits]
    if scheme.r:
        parts.append(unrank(tail_digit, scheme.tail))
    return "".join(parts)


def concat_decode(scheme: ConcatScheme, word: str) -> int:
    """Inverse of concat_encode; names the offending block on bad input."""
    if len(word) != scheme.target_len:
        raise ValueError(
            f"word length {len(word)} != scheme length {scheme.target_len}"
        )
    index = 0
    for b in range(scheme.m):
        block = word[b * scheme.L:(b + 1) * scheme.L]
        if not validate(block):
            raise ValueError(f"block {b + 1} is not a valid schedule: {block!r}")
        index = index * scheme.body_count + rank(block, scheme.body)
    if scheme.r:
        block = word[scheme.m * scheme.L:]
        if not validate(block):
            raise ValueError(
                f"block {scheme.m + 1} is not a valid schedule: {block!r}"
            )
        index = index * scheme.tail_count + rank(block, scheme.tail)
    return index


@dataclass(frozen=True)
class ConcatMetrics:
    scheme: ConcatScheme
    rate_per_pulse: float
    rho_rate: float  # fraction of the optimal rate given up
    rho_memory: float  # stored words relative to the optimal book
    stored_words: int
    optimal_words: int

    @property
    def stored_bits(self) -> int:
        """Raw storage if the component books were written out."""
        bits = 0
        if self.scheme.m:
            bits += self.scheme.body_count * self.scheme.L
        if self.scheme.r:
            bits += self.scheme.tail_count * self.scheme.r
        return bits

    @property
    def optimal_bits(self) -> int:
        return self.optimal_words * self.scheme.target_len


def metrics(scheme: ConcatScheme) -> ConcatMetrics:
    """Rate and storage of the scheme against the optimal book."""
    n = scheme.target_len // 2
    optimal = catalan_closed_form(n)
    rate = log2_int(scheme.capacity) / scheme.target_len
    optimal_rate = log2_int(optimal) / scheme.target_len
    # n == 1 has a single schedule and zero rate either way
    rho_rate = 0.0 if optimal_rate == 0.0 else 1.0 - rate / optimal_rate
    stored = 0
    if scheme.m:
        stored += scheme.body_count
    if scheme.r:
        stored += scheme.tail_count
    if not stored:  # cannot happen: target_len > 0 forces a block
        stored = 1
    # counts can exceed float range at large n; go through log space
    rho_mem = 2.0 ** (log2_int(stored) - log2_int(optimal))
    return ConcatMetrics(
        scheme=scheme,
        rate_per_pulse=rate,
        rho_rate=rho_rate,
        rho_memory=rho_mem,
        stored_words=stored,
        optimal_words=optimal,
    )
