"""Schedule codebooks: construction, ranking, and flow replay.

Codewords are strings over '1' (relay receives) and '0' (relay forwards).
The canonical order places '1' before '0', so index 0 of a book is always
"1...10...0" and, for equal-length words, canonical order is plain string
order reversed.

Two independent ways in and out of a book are provided: materializing it
via the sub-book decomposition (build_codebook, bounded by a size guard)
and arithmetic ranking against a table of path counts (PathCountTable),
which works at lengths far beyond anything that fits in memory.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .ballot import s_count

__all__ = [
    "BUILD_MAX_N",
    "Codebook",
    "FlowTrace",
    "FlowViolationError",
    "PathCountTable",
    "SlotRecord",
    "build_codebook",
    "check_unique_decodability",
    "rank",
    "simulate_flow",
    "unrank",
    "validate",
]

BUILD_MAX_N = 16  # S(16) is ~3.6e7 words; refuse to materialize past this


class FlowViolationError(RuntimeError):
    """A schedule asked the relay to forward data it does not hold."""


def validate(word: str) -> bool:
    """True iff word is a valid schedule: balanced, no prefix below zero."""
    if len(word) % 2:
        return False
    surplus = 0
    for ch in word:
        if ch == "1":
            surplus += 1
        elif ch == "0":
            surplus -= 1
            if surplus < 0:
                return False
        else:
            raise ValueError(f"schedule words use only '0'/'1', got {ch!r}")
    return surplus == 0


def _canonical(words) -> Tuple[str, ...]:
    # '1' < '0' in canonical order == reverse of ASCII order at equal length
    return tuple(sorted(words, reverse=True))


@dataclass(frozen=True)
class Codebook:
    n: int
    words: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.words)

    def index(self, word: str) -> int:
        return self.words.index(word)


class _Builder:
    """Materializes books through the first-run decomposition.

    A word counted by F(n, k) with 0 < k < n splits as: k leading ones, a
    free block of k symbols containing i ones (any arrangement keeps the
    buffer non-negative there), and a remainder that is in bijection with
    the words of the (n-k+i, 2i) sub-book with their 2i leading ones cut
    off.  The top level splits on the second symbol: S(n) words are "10"
    plus a length-2(n-1) word, or start "11" and live in the (n, 2) book.
    """

    def __init__(self) -> None:
        self._books: Dict[int, List[str]] = {0: [""]}
        self._sub: Dict[Tuple[int, int], List[str]] = {}

    def book(self, n: int) -> List[str]:
        if n not in self._books:
            out = ["10" + w for w in self.book(n - 1)]
            out.extend(self.sub_book(n, 2))
            self._books[n] = out
        return self._books[n]

    def sub_book(self, n: int, k: int) -> List[str]:
        """All valid length-2n words whose first k symbols are '1'."""
        if k > n:
            return []
        if k == 0:
            return self.book(n)
        if k == n:
            return ["1" * n + "0" * n]
        key = (n, k)
        if key not in self._sub:
            head = "1" * k
            out = []
            for i in range(0, min(k, n - k) + 1):
                tails = [w[2 * i:] for w in self.sub_book(n - k + i, 2 * i)]
                for block in _arrangements(k, i):
                    for tail in tails:
                        out.append(head + block + tail)
            self._sub[key] = out
        return self._sub[key]


def _arrangements(length: int, ones: int) -> List[str]:
    """All binary strings of the given length and population count."""
    if ones == 0:
        return ["0" * length]
    if ones == length:
        return ["1" * length]
    with_one = ["1" + s for s in _arrangements(length - 1, ones - 1)]
    with_zero = ["0" + s for s in _arrangements(length - 1, ones)]
    return with_one + with_zero


def build_codebook(n: int, max_n: int = BUILD_MAX_N) -> Codebook:
    """The full book of valid length-2n schedules in canonical order."""
    if n < 0:
        raise ValueError("build_codebook requires n >= 0")
    if n > max_n:
        raise ValueError(
            f"build_codebook materializes S(n) words; n={n} exceeds the "
            f"guard {max_n}"
        )
    words = _canonical(_Builder().book(n))
    return Codebook(n=n, words=words)


@dataclass
class PathCountTable:
    """count[p][h] = number of valid completions from position p, surplus h.

    Position runs 0..2n, surplus 0..n.  count[0][0] is S(n) and
    count[2n][0] is 1; anything that would dip below zero counts 0.
    """

    n: int
    count: List[List[int]] = field(repr=False)

    @classmethod
    def build(cls, n: int) -> "PathCountTable":
        if n < 0:
            raise ValueError("PathCountTable requires n >= 0")
        width = 2 * n
        count = [[0] * (n + 2) for _ in range(width + 1)]
        count[width][0] = 1
        for p in range(width - 1, -1, -1):
            row, nxt = count[p], count[p + 1]
            for h in range(0, n + 1):
                c = nxt[h + 1] if h + 1 <= n else 0
                if h > 0:
                    c += nxt[h - 1]
                row[h] = c
        return cls(n=n, count=count)

    def completions(self, p: int, h: int) -> int:
        if h < 0:
            return 0
        if not (0 <= p <= 2 * self.n) or h > self.n:
            return 0
        return self.count[p][h]


def rank(word: str, table: PathCountTable) -> int:
    """Canonical index of a valid word; inverse of unrank."""
    if len(word) != 2 * table.n:
        raise ValueError(
            f"word length {len(word)} does not match table n={table.n}"
        )
    if not validate(word):
        raise ValueError(f"not a valid schedule word: {word!r}")
    index = 0
    surplus = 0
    for p, ch in enumerate(word):
        if ch == "0":
            # every word taking '1' here precedes this one
            index += table.completions(p + 1, surplus + 1)
            surplus -= 1
        else:
            surplus += 1
    return index


def unrank(index: int, table: PathCountTable) -> str:
    """Word at the given canonical index."""
    total = table.completions(0, 0)
    if not 0 <= index < total:
        raise ValueError(f"index {index} outside [0, {total})")
    out = []
    surplus = 0
    remaining = index
    for p in range(2 * table.n):
        ones_branch = table.completions(p + 1, surplus + 1)
        if remaining < ones_branch:
            out.append("1")
            surplus += 1
        else:
            remaining -= ones_branch
            out.append("0")
            surplus -= 1
    return "".join(out)


def check_unique_decodability(book: Codebook) -> bool:
    """All words distinct, equal length 2n, and valid."""
    words = book.words
    if len(set(words)) != len(words):
        return False
    want = 2 * book.n
    return all(len(w) == want and validate(w) for w in words)


@dataclass(frozen=True)
class SlotRecord:
    slot: int
    link: str  # "in" while the relay receives, "out" while it forwards
    duration: float
    bits: float
    buffer_after: float


@dataclass(frozen=True)
class FlowTrace:
    word: str
    n: int
    total_time: float
    dt_in: float
    dt_out: float
    delivered_bits: float
    slots: Tuple[SlotRecord, ...]


def simulate_flow(word: str, c1: float, c2: float, total_time: float) -> FlowTrace:
    """Replay a schedule against link rates c1 (into relay), c2 (out).

    Slot durations are chosen so one receive slot fills exactly what one
    forward slot drains: dt_in = c2*T/((c1+c2)*n) and dt_out = c1*T/
    ((c1+c2)*n).  Raises FlowViolationError as soon as the buffer would
    go negative, which happens exactly on the invalid schedules.
    """
    if c1 <= 0 or c2 <= 0 or total_time <= 0:
        raise ValueError("simulate_flow requires c1, c2, total_time > 0")
    if len(word) % 2 or not word:
        raise ValueError("schedule words have positive even length")
    ones = word.count("1")
    zeros = len(word) - ones
    if any(ch not in "01" for ch in word):
        raise ValueError("schedule words use only '0'/'1'")
    if ones != zeros:
        raise FlowViolationError(
            f"unbalanced schedule: {ones} receive vs {zeros} forward slots"
        )
    n = ones
    dt_in = c2 * total_time / ((c1 + c2) * n)
    dt_out = c1 * total_time / ((c1 + c2) * n)
    quantum = c1 * dt_in  # == c2 * dt_out up to rounding
    tol = 1e-9 * quantum
    buffer_bits = 0.0
    delivered = 0.0
    slots = []
    for i, ch in enumerate(word):
        if ch == "1":
            moved = c1 * dt_in
            buffer_bits += moved
            slots.append(SlotRecord(i, "in", dt_in, moved, buffer_bits))
        else:
            moved = c2 * dt_out
            buffer_bits -= moved
            if buffer_bits < -tol:
                raise FlowViolationError(
                    f"slot {i}: relay buffer would fall to {buffer_bits:.6g} bits"
                )
            delivered += moved
            slots.append(SlotRecord(i, "out", dt_out, moved, buffer_bits))
    return FlowTrace(
        word=word,
        n=n,
        total_time=total_time,
        dt_in=dt_in,
        dt_out=dt_out,
        delivered_bits=delivered,
        slots=tuple(slots),
    )
