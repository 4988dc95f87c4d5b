"""Code constructions driven by partition families, with exact size formulas.

Each construction materializes a union of concatenation terms
``L_{a1} ... L_j R_{s-j} ... R_{ap}`` (possibly padded by free symbols) and
attaches the overlap window the result is guaranteed to satisfy.  Where the
underlying theory asserts the union terms are disjoint, ``strict=True`` turns
a duplicate into an error instead of a silent dedup.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product as iproduct
from math import prod
from typing import Iterable, Iterator, Sequence

from .families import PartitionFamily, checked, compositions
from .words import DIGITS, CodeSet, check_window, code

DEFAULT_MAX_WORDS = 10_000_000


class CodeTooLarge(RuntimeError):
    """Predicted code size exceeds the materialization cap."""


class DisjointnessViolation(RuntimeError):
    """Union terms produced the same word twice in strict mode."""


def _alphabet_factors(q: int, count: int) -> tuple[frozenset[str], ...]:
    sigma = frozenset(DIGITS[:q])
    return (sigma,) * count


def _materialize(terms: Iterable[Sequence[frozenset[str]]], *, q: int, n: int,
                 window: tuple[int, int] | None, strict: bool,
                 max_words: int, label: str) -> CodeSet:
    words: set[str] = set()
    generated = 0
    for factors in terms:
        size = prod(len(s) for s in factors)
        if size == 0:
            continue
        generated += size
        if generated > max_words:
            raise CodeTooLarge(
                f"{label}: more than {max_words} words would be generated; "
                f"use the size formula instead or raise max_words")
        for parts in iproduct(*factors):
            words.add("".join(parts))
    if generated != len(words):
        message = (f"{label}: union terms are not disjoint "
                   f"({generated} generated, {len(words)} distinct)")
        if strict:
            raise DisjointnessViolation(message)
        warnings.warn(message)
    return code(q, n, words, window)


def _require_depth(f: PartitionFamily, needed: int, label: str) -> None:
    if f.depth < needed:
        raise ValueError(f"{label}: family depth {f.depth} < required {needed}")


def non_overlapping(f: PartitionFamily, n: int, *, strict: bool = False,
                    max_words: int = DEFAULT_MAX_WORDS) -> CodeSet:
    """The layered code ``union(L_i R_{n-i} for i in [1, n-1])``; it is
    overlap-free on the whole window (1, n-1)."""
    checked(f)
    if n < 2:
        raise ValueError("block length must be >= 2")
    _require_depth(f, n - 1, "non_overlapping")
    terms = [(f.left(i), f.right(n - i)) for i in range(1, n)]
    return _materialize(terms, q=f.q, n=n, window=(1, n - 1), strict=strict,
                        max_words=max_words, label="non_overlapping")


def non_overlapping_size(f: PartitionFamily, n: int) -> int:
    checked(f)
    _require_depth(f, n - 1, "non_overlapping_size")
    return sum(len(f.left(i)) * len(f.right(n - i)) for i in range(1, n))


def _one_k_terms(f: PartitionFamily, n: int, k: int,
                 ) -> Iterator[tuple[frozenset[str], ...]]:
    for s in range(k + 1, n + 1):
        j_lo, j_hi = s - k, k
        if j_lo > j_hi:
            continue
        for alpha in compositions(n - s):
            for i in range(0, len(alpha) + 1):
                for j in range(j_lo, j_hi + 1):
                    yield (tuple(f.left(a) for a in alpha[:i])
                           + (f.left(j), f.right(s - j))
                           + tuple(f.right(a) for a in alpha[i:]))


def _check_one_k(f: PartitionFamily, n: int, k: int, label: str) -> None:
    checked(f)
    if k < 1:
        raise ValueError(f"{label}: k must be >= 1")
    if n < k + 1:
        raise ValueError(f"{label}: block length must be at least k+1")
    # composition parts reach n-k-1, so the family must be that deep too
    _require_depth(f, max(k, n - k - 1), label)


def overlap_free_1k(f: PartitionFamily, n: int, k: int, *, strict: bool = False,
                    max_words: int = DEFAULT_MAX_WORDS) -> CodeSet:
    """The (1, k)-overlap-free code built from all compositions of the slack
    n - s around a central block ``L_j R_{s-j}`` with s in [k+1, n]."""
    _check_one_k(f, n, k, "overlap_free_1k")
    return _materialize(_one_k_terms(f, n, k), q=f.q, n=n, window=(1, k),
                        strict=strict, max_words=max_words,
                        label="overlap_free_1k")


def code_size_1k(f: PartitionFamily, n: int, k: int) -> int:
    """Size of overlap_free_1k by the product formula (terms are disjoint)."""
    _check_one_k(f, n, k, "code_size_1k")
    return sum(prod(len(s) for s in factors)
               for factors in _one_k_terms(f, n, k))


def wmu_expanded(f: PartitionFamily, n: int, k: int, *, strict: bool = False,
                 max_words: int = DEFAULT_MAX_WORDS) -> CodeSet:
    """Expand a depth-(n-1) family into a weakly-mutually-uncorrelated code of
    length n + k: ``union(L_i R_j Sigma^(n+k-i-j) for n <= i+j <= n+k)`` with
    i, j in [1, n-1].  The result is (k+1, n+k-1)-overlap-free."""
    checked(f)
    if not 0 <= k <= n - 2:
        raise ValueError("wmu_expanded: k must satisfy 0 <= k <= n-2")
    _require_depth(f, n - 1, "wmu_expanded")
    terms = [(f.left(i), f.right(j)) + _alphabet_factors(f.q, n + k - i - j)
             for i in range(1, n)
             for j in range(1, n)
             if n <= i + j <= n + k]
    return _materialize(terms, q=f.q, n=n + k, window=(k + 1, n + k - 1),
                        strict=strict, max_words=max_words, label="wmu_expanded")


def wmu_size(f: PartitionFamily, n: int, k: int) -> int:
    checked(f)
    if not 0 <= k <= n - 2:
        raise ValueError("wmu_size: k must satisfy 0 <= k <= n-2")
    _require_depth(f, n - 1, "wmu_size")
    return sum(len(f.left(i)) * len(f.right(j)) * f.q ** (n + k - i - j)
               for i in range(1, n)
               for j in range(1, n)
               if n <= i + j <= n + k)


def pad_t1t2(x: CodeSet, t1: int, t2: int, *,
             max_words: int = DEFAULT_MAX_WORDS) -> CodeSet:
    """Append t1-1 free symbols to a (1, t2)-overlap-free code (a fully
    non-overlapping one when t2 reaches past the base length); the result is
    (t1, t2)-overlap-free at length ``x.n + t1 - 1``."""
    from .words import verify_overlap_free

    n = x.n + t1 - 1
    check_window(n, t1, t2)
    base_t2 = min(t2, x.n - 1)
    witness = verify_overlap_free(x, 1, base_t2)
    if witness is not None:
        raise ValueError(
            f"pad_t1t2: base code is not (1,{base_t2})-overlap-free: prefix of "
            f"{witness.u!r} is a suffix of {witness.v!r} at t={witness.t}")
    terms = [(frozenset(x.words),) + _alphabet_factors(x.q, t1 - 1)]
    return _materialize(terms, q=x.q, n=n, window=(t1, t2), strict=True,
                        max_words=max_words, label="pad_t1t2")


def _t1t2_terms(f: PartitionFamily, n: int, t1: int, t2: int,
                ) -> Iterator[tuple[frozenset[str], ...]]:
    for pad in range(0, t1):
        sigma = _alphabet_factors(f.q, pad)
        for s in range(t1 + t2 - pad, n - pad + 1):
            j_lo, j_hi = s - t2, t2
            if j_lo > j_hi:
                continue
            for alpha in compositions(n - pad - s):
                for i in range(0, len(alpha) + 1):
                    for j in range(j_lo, j_hi + 1):
                        yield (tuple(f.left(a) for a in alpha[:i])
                               + (f.left(j), f.right(s - j))
                               + tuple(f.right(a) for a in alpha[i:])
                               + sigma)


def t1t2_expanded(f: PartitionFamily, n: int, t1: int, t2: int, *,
                  strict: bool = False,
                  max_words: int = DEFAULT_MAX_WORDS) -> CodeSet:
    """The (t1, t2)-overlap-free expansion that layers free tails of every
    length below t1 over the (1, t2) construction.  Requires t1 + t2 <= n."""
    checked(f)
    check_window(n, t1, t2)
    if t1 + t2 > n:
        raise ValueError("t1t2_expanded: requires t1 + t2 <= n")
    _require_depth(f, max(t2, n - t1 - t2), "t1t2_expanded")
    return _materialize(_t1t2_terms(f, n, t1, t2), q=f.q, n=n, window=(t1, t2),
                        strict=strict, max_words=max_words,
                        label="t1t2_expanded")


def simultaneous(f: PartitionFamily, n: int, k: int, *, strict: bool = False,
                 max_words: int = DEFAULT_MAX_WORDS) -> CodeSet:
    """A code that is both (1, k)- and (n-k, n-1)-overlap-free: the length
    k+1 layered code, a free middle, and every composition of k as an R-tail.
    Requires k < n/2."""
    checked(f)
    if not 1 <= k or not 2 * k < n:
        raise ValueError("simultaneous: requires 1 <= k < n/2")
    _require_depth(f, k, "simultaneous")
    x = non_overlapping(f, k + 1, strict=strict, max_words=max_words)
    middle = _alphabet_factors(f.q, n - 2 * k - 1)
    terms = [(frozenset(x.words),) + middle + tuple(f.right(a) for a in alpha)
             for alpha in compositions(k)]
    return _materialize(terms, q=f.q, n=n, window=(1, k), strict=strict,
                        max_words=max_words, label="simultaneous")


def simultaneous_size(f: PartitionFamily, n: int, k: int) -> int:
    checked(f)
    if not 1 <= k or not 2 * k < n:
        raise ValueError("simultaneous_size: requires 1 <= k < n/2")
    _require_depth(f, k, "simultaneous_size")
    base = non_overlapping_size(f, k + 1)
    tails = sum(prod(len(f.right(a)) for a in alpha) for alpha in compositions(k))
    return base * f.q ** (n - 2 * k - 1) * tails


def lift_code(c: CodeSet, n: int, *, max_words: int = DEFAULT_MAX_WORDS) -> CodeSet:
    """Insert all free middles into a code of length 2*t2, preserving its
    window; the size multiplies by q^(n - 2 t2)."""
    if c.window is None:
        raise ValueError("lift_code: code must declare its overlap window")
    t1, t2 = c.window
    if c.n != 2 * t2:
        raise ValueError(f"lift_code: base length must be 2*t2 = {2 * t2}, got {c.n}")
    if n <= c.n:
        raise ValueError("lift_code: target length must exceed the base length")
    words: set[str] = set()
    count = len(c.words) * c.q ** (n - c.n)
    if count > max_words:
        raise CodeTooLarge(f"lift_code: {count} words exceed cap {max_words}")
    for w in c.words:
        for mid in iproduct(DIGITS[: c.q], repeat=n - c.n):
            words.add(w[:t2] + "".join(mid) + w[t2:])
    return code(c.q, n, words, c.window)


def project_code(c: CodeSet, t2: int) -> CodeSet:
    """Delete the middle positions t2+1 .. n-t2 from every word; inverse of
    lift_code on lifted codes."""
    if c.n <= 2 * t2:
        raise ValueError("project_code: requires block length > 2*t2")
    words = {w[:t2] + w[c.n - t2:] for w in c.words}
    return code(c.q, 2 * t2, words, c.window)


@dataclass(frozen=True)
class ConstructionSpec:
    """Uniform driver record for the CLI: which construction, on what family
    (or base code, for padding), with which window parameters."""

    kind: str
    n: int
    family: PartitionFamily | None = None
    base_code: CodeSet | None = None
    k: int | None = None
    t1: int | None = None
    t2: int | None = None

    KINDS = ("NonOverlapping", "OneK", "WMU", "PadT1T2", "ExpandedT1T2",
             "Simultaneous")


def claimed_windows(spec: ConstructionSpec) -> list[tuple[int, int]]:
    """The overlap windows the construction output is guaranteed to satisfy."""
    if spec.kind == "NonOverlapping":
        return [(1, spec.n - 1)]
    if spec.kind == "OneK":
        return [(1, spec.k)]
    if spec.kind == "WMU":
        total = spec.n + spec.k
        return [(spec.k + 1, total - 1)]
    if spec.kind in ("PadT1T2", "ExpandedT1T2"):
        return [(spec.t1, spec.t2)]
    if spec.kind == "Simultaneous":
        return [(1, spec.k), (spec.n - spec.k, spec.n - 1)]
    raise ValueError(f"unknown construction kind {spec.kind!r}")


def run_construction(spec: ConstructionSpec, *, strict: bool = False,
                     max_words: int = DEFAULT_MAX_WORDS) -> CodeSet:
    kind = spec.kind
    if kind not in ConstructionSpec.KINDS:
        raise ValueError(f"unknown construction kind {kind!r}")
    if kind == "PadT1T2":
        if spec.t1 is None or spec.t2 is None:
            raise ValueError("PadT1T2 requires t1 and t2")
        base = spec.base_code
        if base is None:
            if spec.family is None:
                raise ValueError("PadT1T2 requires a family or a base code")
            base_n = spec.n - spec.t1 + 1
            if spec.t2 < base_n:
                base = overlap_free_1k(spec.family, base_n, spec.t2,
                                       strict=strict, max_words=max_words)
            else:
                base = non_overlapping(spec.family, base_n, strict=strict,
                                       max_words=max_words)
        return pad_t1t2(base, spec.t1, spec.t2, max_words=max_words)
    if spec.family is None:
        raise ValueError(f"{kind} requires a family")
    if kind == "NonOverlapping":
        return non_overlapping(spec.family, spec.n, strict=strict,
                               max_words=max_words)
    if kind == "OneK":
        if spec.k is None:
            raise ValueError("OneK requires k")
        return overlap_free_1k(spec.family, spec.n, spec.k, strict=strict,
                               max_words=max_words)
    if kind == "WMU":
        if spec.k is None:
            raise ValueError("WMU requires k")
        return wmu_expanded(spec.family, spec.n, spec.k, strict=strict,
                            max_words=max_words)
    if kind == "ExpandedT1T2":
        if spec.t1 is None or spec.t2 is None:
            raise ValueError("ExpandedT1T2 requires t1 and t2")
        return t1t2_expanded(spec.family, spec.n, spec.t1, spec.t2,
                             strict=strict, max_words=max_words)
    if kind == "Simultaneous":
        if spec.k is None:
            raise ValueError("Simultaneous requires k")
        return simultaneous(spec.family, spec.n, spec.k, strict=strict,
                            max_words=max_words)
    raise AssertionError("unreachable")
