"""Alphabet and word primitives: overlaps, periodicity, and counting.

Words are plain strings of base-36 digits; symbol ``i`` is written as
``"0123456789abcdefghijklmnopqrstuvwxyz"[i]``.  All functions treat the
alphabet as the canonical symbols ``0 .. q-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
MAX_ALPHABET = len(DIGITS)


def check_alphabet(q: int) -> None:
    if not 2 <= q <= MAX_ALPHABET:
        raise ValueError(f"alphabet size must be in [2, {MAX_ALPHABET}], got {q}")


def symbols(q: int) -> str:
    """The canonical symbols of a q-ary alphabet, as a digit string."""
    check_alphabet(q)
    return DIGITS[:q]


def check_word(w: str, q: int) -> None:
    check_alphabet(q)
    if not w:
        raise ValueError("empty word")
    for ch in w:
        if ch not in DIGITS[:q]:
            raise ValueError(f"symbol {ch!r} not in alphabet of size {q}")


def all_words(q: int, n: int) -> Iterator[str]:
    """All words of length n, lexicographically."""
    check_alphabet(q)
    for tup in product(DIGITS[:q], repeat=n):
        yield "".join(tup)


def check_window(n: int, t1: int, t2: int) -> None:
    if not 1 <= t1 <= t2 <= n - 1:
        raise ValueError(f"overlap window must satisfy 1 <= t1 <= t2 <= n-1, "
                         f"got t1={t1}, t2={t2}, n={n}")


@dataclass(frozen=True)
class CodeSet:
    """A set of equal-length words with the overlap window it claims to satisfy."""

    q: int
    n: int
    words: frozenset[str]
    window: tuple[int, int] | None = None

    def __post_init__(self):
        check_alphabet(self.q)
        if self.n < 1:
            raise ValueError("block length must be positive")
        for w in self.words:
            if len(w) != self.n:
                raise ValueError(f"word {w!r} does not have length {self.n}")
            check_word(w, self.q)
        if self.window is not None:
            check_window(self.n, *self.window)

    def __len__(self) -> int:
        return len(self.words)

    def sorted_words(self) -> list[str]:
        return sorted(self.words)


def code(q: int, n: int, words, window: tuple[int, int] | None = None) -> CodeSet:
    return CodeSet(q=q, n=n, words=frozenset(words), window=window)


@dataclass(frozen=True)
class OverlapWitness:
    """A forbidden overlap: the t-prefix of u equals the t-suffix of v."""

    u: str
    v: str
    t: int


def overlap_lengths(u: str, v: str) -> set[int]:
    """All t with prefix_t(u) = suffix_t(v).  Directional: callers that need
    the symmetric notion must also test the swapped pair."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    n = len(u)
    return {t for t in range(1, n) if u[:t] == v[n - t:]}


def verify_overlap_free(c: CodeSet, t1: int, t2: int) -> OverlapWitness | None:
    """None if no ordered pair of codewords (u = v included) has a t-overlap
    for t in [t1, t2]; otherwise the first witness in (t, v, u) order."""
    check_window(c.n, t1, t2)
    words = c.sorted_words()
    for t in range(t1, t2 + 1):
        prefixes: dict[str, str] = {}
        for u in words:
            prefixes.setdefault(u[:t], u)
        cut = c.n - t
        for v in words:
            u = prefixes.get(v[cut:])
            if u is not None:
                return OverlapWitness(u=u, v=v, t=t)
    return None


def self_compatible(w: str, t1: int, t2: int) -> bool:
    """True if w has no t-overlap with itself for t in [t1, t2]."""
    n = len(w)
    return all(w[:t] != w[n - t:] for t in range(t1, min(t2, n - 1) + 1))


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def least_period(w: str) -> int:
    """Smallest i with w = (w_1..w_i)^(|w|/i).  Periods are required to divide
    |w| (the repetition reading of periodicity), so this returns |w| unless a
    proper divisor works."""
    n = len(w)
    for d in divisors(n):
        if n % d == 0 and w == w[:d] * (n // d):
            return d
    return n


def is_primitive(w: str) -> bool:
    return least_period(w) == len(w)


def mobius(d: int) -> int:
    if d < 1:
        raise ValueError("mobius is defined for positive integers")
    if d == 1:
        return 1
    result = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            result = -result
        p += 1
    if d > 1:
        result = -result
    return result


def primitive_count(q: int, n: int) -> int:
    """Number of primitive words of length n over q symbols."""
    check_alphabet(q)
    if n < 1:
        raise ValueError("length must be positive")
    return sum(mobius(d) * q ** (n // d) for d in divisors(n))
