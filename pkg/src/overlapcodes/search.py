"""Exhaustive ground truth: exact maximum codes, maximality tests, and the
family-level maximality certificate.

A (t1, t2)-overlap-free code is exactly a clique in the compatibility graph
whose vertices are the self-compatible words.  Three exact engines cover the
desk-scale parameter space:

* ``raw``       - branch and bound with greedy-coloring bounds on the full graph.
* ``quotient``  - the same, after contracting words with equal (prefix_t2,
                  suffix_t2) signatures; compatibility only depends on the
                  signature, so groups are modules and carry weights.
* ``rectangle`` - for n >= 2*t2 a maximum code is a product P x Sigma^(n-2t2)
                  x S with the prefix sets of P disjoint from the suffix sets
                  of S level by level; enumerate the level splits directly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Iterator

from .constructions import overlap_free_1k
from .families import PartitionFamily, checked
from .words import (DIGITS, CodeSet, all_words, check_alphabet, check_window,
                    code, self_compatible, verify_overlap_free)

DEFAULT_NODE_BUDGET = 20_000_000
DEFAULT_VERTEX_CAP = 1 << 20
_RECTANGLE_ASSIGNMENT_CAP = 1 << 13
_RECTANGLE_SIDE_CAP = 1 << 12
_CLASSCOUNT_CAP = 1 << 20


class SearchBudgetExceeded(Exception):
    """Internal: node budget ran out mid-search."""


@dataclass(frozen=True)
class CompatibilityGraph:
    q: int
    n: int
    t1: int
    t2: int
    vertices: tuple[str, ...]
    adjacency: tuple[int, ...]

    def index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.vertices)}


def build_graph(q: int, n: int, t1: int, t2: int, *,
                vertex_cap: int = DEFAULT_VERTEX_CAP) -> CompatibilityGraph:
    """Vertices: self-compatible words in lexicographic order.  Edge absent
    iff some t in [t1, t2] makes a prefix of one word a suffix of the other,
    in either direction."""
    check_alphabet(q)
    check_window(n, t1, t2)
    if q ** n > vertex_cap:
        raise ValueError(f"universe of {q ** n} words exceeds vertex cap {vertex_cap}")
    verts = [w for w in all_words(q, n) if self_compatible(w, t1, t2)]
    m = len(verts)
    full = (1 << m) - 1
    adj = [full & ~(1 << i) for i in range(m)]
    for t in range(t1, t2 + 1):
        by_prefix: dict[str, list[int]] = {}
        for i, w in enumerate(verts):
            by_prefix.setdefault(w[:t], []).append(i)
        cut = n - t
        for j, w in enumerate(verts):
            for i in by_prefix.get(w[cut:], ()):
                if i != j:
                    adj[i] &= ~(1 << j)
                    adj[j] &= ~(1 << i)
    return CompatibilityGraph(q, n, t1, t2, tuple(verts), tuple(adj))


class _MaxWeightClique:
    """Deterministic branch and bound with greedy-coloring weight bounds."""

    def __init__(self, adjacency: list[int], weights: list[int],
                 node_budget: int):
        self.adj = adjacency
        self.weights = weights
        self.m = len(adjacency)
        self.budget = node_budget
        self.nodes = 0
        self.best_weight = 0
        self.best_mask = 0

    def _greedy_seed(self) -> None:
        mask, weight, cand = 0, 0, (1 << self.m) - 1
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            mask |= low
            weight += self.weights[v]
            cand &= self.adj[v]
        self.best_weight, self.best_mask = weight, mask

    def _color_order(self, cand: int, threshold: int,
                     ) -> list[tuple[int, int]] | None:
        """(vertex, bound) pairs in branch order: vertices grouped into
        greedy independent classes, bound = cumulative max class weight.
        None when the total bound cannot beat the threshold."""
        adj = self.adj
        weights = self.weights
        class_masks: list[int] = []
        class_maxw: list[int] = []
        rest = cand
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest &= ~low
            av = adj[v]
            wv = weights[v]
            for idx, cmask in enumerate(class_masks):
                if not (av & cmask):
                    class_masks[idx] = cmask | low
                    if wv > class_maxw[idx]:
                        class_maxw[idx] = wv
                    break
            else:
                class_masks.append(low)
                class_maxw.append(wv)
        if sum(class_maxw) <= threshold:
            return None
        ordered: list[tuple[int, int]] = []
        running = 0
        for cmask, cmax in zip(class_masks, class_maxw):
            running += cmax
            members = cmask
            while members:
                low = members & -members
                members &= ~low
                ordered.append((low.bit_length() - 1, running))
        return ordered

    def _expand(self, r_mask: int, r_weight: int, cand: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded
        order = self._color_order(cand, self.best_weight - r_weight)
        if order is None:
            return
        adj = self.adj
        weights = self.weights
        for v, bound in reversed(order):
            if r_weight + bound <= self.best_weight:
                return
            bit = 1 << v
            new_cand = cand & adj[v]
            new_weight = r_weight + weights[v]
            if new_cand:
                self._expand(r_mask | bit, new_weight, new_cand)
            elif new_weight > self.best_weight:
                self.best_weight = new_weight
                self.best_mask = r_mask | bit
            cand &= ~bit

    def solve(self) -> tuple[int, int, int, bool]:
        if self.m == 0:
            return 0, 0, 0, True
        self._greedy_seed()
        exact = True
        try:
            self._expand(0, 0, (1 << self.m) - 1)
        except SearchBudgetExceeded:
            exact = False
        return self.best_weight, self.best_mask, self.nodes, exact


def _signature_groups(graph: CompatibilityGraph) -> tuple[list[str], list[int], list[list[str]]]:
    """Contract equal (prefix_t2, suffix_t2) words into weighted groups."""
    t2, n = graph.t2, graph.n
    groups: dict[tuple[str, str], list[str]] = {}
    for w in graph.vertices:
        groups.setdefault((w[:t2], w[n - t2:]), []).append(w)
    reps = sorted(groups, key=lambda sig: groups[sig][0])
    members = [sorted(groups[sig]) for sig in reps]
    weights = [len(g) for g in members]
    return [groups[sig][0] for sig in reps], weights, members


def _rectangle_levels_feasible(q: int, t1: int, t2: int) -> bool:
    assignments = 1
    for t in range(t1, t2):
        assignments *= 2 ** (q ** t)
        if assignments > _RECTANGLE_ASSIGNMENT_CAP:
            return False
    return q ** t2 <= _RECTANGLE_SIDE_CAP


def _best_split(u: int, shared: int, v: int) -> tuple[int, int]:
    """Maximize (u + j) * (v + shared - j) over j in [0, shared]."""
    best_j, best_val = 0, u * (v + shared)
    for j in {0, shared, max(0, min(shared, (v + shared - u) // 2)),
              max(0, min(shared, (v + shared - u + 1) // 2))}:
        val = (u + j) * (v + shared - j)
        if val > best_val or (val == best_val and j < best_j):
            best_j, best_val = j, val
    return best_j, best_val


def _rectangle_max(q: int, t1: int, t2: int) -> tuple[int, list[str], list[str]]:
    """Maximum |P| * |S| with P, S subsets of Sigma^t2 such that no prefix of
    P at any level t in [t1, t2] equals a suffix of S at the same level.

    Enumerates the claimed prefix sets for levels t1 .. t2-1 and closes the
    top level in closed form.
    """
    side = ["".join(p) for p in iproduct(DIGITS[:q], repeat=t2)]
    lower = list(range(t1, t2))
    level_words = {t: ["".join(p) for p in iproduct(DIGITS[:q], repeat=t)]
                   for t in lower}
    best = (-1, [], [])

    def close_top(claimed: dict[str, bool]) -> None:
        nonlocal best
        u_only, shared, v_only = [], [], []
        for x in side:
            in_u = all(claimed.get(x[:t], False) for t in lower)
            in_v = all(not claimed.get(x[len(x) - t:], False) for t in lower)
            if in_u and in_v:
                shared.append(x)
            elif in_u:
                u_only.append(x)
            elif in_v:
                v_only.append(x)
        j, val = _best_split(len(u_only), len(shared), len(v_only))
        if val > best[0]:
            p_side = sorted(u_only) + sorted(shared)[:j]
            s_side = sorted(v_only) + sorted(shared)[j:]
            best = (val, sorted(p_side), sorted(s_side))

    def assign(level_idx: int, claimed: dict[str, bool]) -> None:
        if level_idx == len(lower):
            close_top(claimed)
            return
        t = lower[level_idx]
        words_t = level_words[t]
        for bits in range(2 ** len(words_t)):
            for pos, wt in enumerate(words_t):
                claimed[wt] = bool(bits >> pos & 1)
            assign(level_idx + 1, claimed)
        for wt in words_t:
            del claimed[wt]

    assign(0, {})
    return best


def _classcount_feasible(q: int, n: int, t1: int, t2: int) -> bool:
    if t1 != t2 or n >= 2 * t2:
        return False
    head = 2 * t2 - n
    if 2 * head > t2:
        return False  # head and tail regions overlap inside a word
    classes = q ** head * q ** head
    mult = q ** (t2 - 2 * head)
    try:
        return (mult + 1) ** classes <= _CLASSCOUNT_CAP
    except OverflowError:
        return False


def _classcount_max(q: int, n: int, t: int) -> tuple[int, set[str]]:
    """Exact maximum for a single-level window t1 = t2 = t with n < 2t.

    A code is a pair (P, S) of disjoint subsets of Sigma^t (realized prefixes
    and suffixes); its size is the number of words gluing some x in P to some
    y in S over their shared length-(2t - n) key.  The count only depends on
    how many strings each (head-key, tail-key) class contributes to P, and
    the suffix side always takes everything P leaves behind.
    """
    head = 2 * t - n
    mult = q ** (t - 2 * head)
    keys = ["".join(p) for p in iproduct(DIGITS[:q], repeat=head)]
    a_count = len(keys)
    cap = a_count * mult  # strings per head key (= per tail key)

    best_val = -1
    best_flat: tuple[int, ...] = ()
    for flat in iproduct(range(mult + 1), repeat=a_count * a_count):
        row = [0] * a_count
        col = [0] * a_count
        pos = 0
        for a in range(a_count):
            for b in range(a_count):
                v = flat[pos]
                pos += 1
                if v:
                    row[a] += v
                    col[b] += v
        val = sum(col[k] * (cap - row[k]) for k in range(a_count))
        if val > best_val:
            best_val, best_flat = val, flat

    middles = ["".join(p) for p in iproduct(DIGITS[:q], repeat=t - 2 * head)]
    p_side: set[str] = set()
    s_side: set[str] = set()
    pos = 0
    for a, ka in enumerate(keys):
        for b, kb in enumerate(keys):
            taken = best_flat[pos]
            pos += 1
            strings = sorted(ka + mid + kb for mid in middles)
            p_side.update(strings[:taken])
            s_side.update(strings[taken:])
    words = {x + y[head:]
             for x in p_side
             for y in s_side
             if x[t - head:] == y[:head]}
    if len(words) != best_val:
        raise AssertionError("class-count witness disagrees with its value")
    return best_val, words


@dataclass(frozen=True)
class SearchResult:
    size: int
    code: CodeSet
    exact: bool
    nodes: int
    method: str


def max_code(q: int, n: int, t1: int, t2: int, *,
             node_budget: int = DEFAULT_NODE_BUDGET,
             method: str = "auto",
             vertex_cap: int = DEFAULT_VERTEX_CAP,
             max_words: int = 10_000_000) -> SearchResult:
    """A maximum (t1, t2)-overlap-free code, exact unless the node budget is
    exhausted.  method: auto | rectangle | quotient | raw."""
    check_alphabet(q)
    check_window(n, t1, t2)
    if method not in ("auto", "rectangle", "classcount", "quotient", "raw"):
        raise ValueError(f"unknown search method {method!r}")

    use_rectangle = (n >= 2 * t2 and _rectangle_levels_feasible(q, t1, t2))
    if method == "rectangle" and not use_rectangle:
        raise ValueError("rectangle method requires n >= 2*t2 and small levels")
    use_classcount = _classcount_feasible(q, n, t1, t2)
    if method == "classcount" and not use_classcount:
        raise ValueError("classcount method requires t1 == t2, n < 2*t2, and "
                         "small key classes")
    if method in ("auto", "classcount") and use_classcount:
        value, words = _classcount_max(q, n, t2)
        witness = code(q, n, words, (t1, t2))
        if verify_overlap_free(witness, t1, t2) is not None:
            raise AssertionError("class-count witness failed verification")
        return SearchResult(size=value, code=witness, exact=True, nodes=0,
                            method="classcount")
    if method in ("auto", "rectangle") and use_rectangle:
        value, p_side, s_side = _rectangle_max(q, t1, t2)
        middle = n - 2 * t2
        total = value * q ** middle
        if total > max_words:
            raise ValueError(f"witness of {total} words exceeds max_words")
        words = {p + "".join(mid) + s
                 for p in p_side
                 for mid in iproduct(DIGITS[:q], repeat=middle)
                 for s in s_side}
        witness = code(q, n, words, (t1, t2))
        if verify_overlap_free(witness, t1, t2) is not None:
            raise AssertionError("rectangle witness failed verification")
        return SearchResult(size=total, code=witness, exact=True, nodes=0,
                            method="rectangle")

    graph = build_graph(q, n, t1, t2, vertex_cap=vertex_cap)
    if method == "raw":
        reps = list(graph.vertices)
        weights = [1] * len(reps)
        members = [[w] for w in reps]
        adjacency = list(graph.adjacency)
        used = "raw"
    else:
        reps, weights, members = _signature_groups(graph)
        index = graph.index()
        adjacency = []
        rep_ids = [index[r] for r in reps]
        for i, ri in enumerate(rep_ids):
            mask = 0
            arow = graph.adjacency[ri]
            for jj, rj in enumerate(rep_ids):
                if jj != i and (arow >> rj) & 1:
                    mask |= 1 << jj
            adjacency.append(mask)
        used = "quotient"

    solver = _MaxWeightClique(adjacency, weights, node_budget)
    weight, mask, nodes, exact = solver.solve()
    words: set[str] = set()
    picked = mask
    while picked:
        low = picked & -picked
        picked &= ~low
        words.update(members[low.bit_length() - 1])
    witness = code(q, n, words, (t1, t2))
    if verify_overlap_free(witness, t1, t2) is not None:
        raise AssertionError("search witness failed verification")
    if len(witness.words) != weight:
        raise AssertionError("witness size disagrees with solver weight")
    return SearchResult(size=weight, code=witness, exact=exact, nodes=nodes,
                        method=used)


def extension_word(c: CodeSet, t1: int, t2: int,
                   graph: CompatibilityGraph | None = None) -> str | None:
    """Lexicographically first word whose addition keeps c overlap-free, or
    None when c is maximal."""
    if verify_overlap_free(c, t1, t2) is not None:
        raise ValueError("code does not verify its window")
    if graph is None:
        graph = build_graph(c.q, c.n, t1, t2)
    index = graph.index()
    cand = (1 << len(graph.vertices)) - 1
    for w in c.words:
        cand &= graph.adjacency[index[w]]
    if cand == 0:
        return None
    return graph.vertices[(cand & -cand).bit_length() - 1]


def is_maximal(c: CodeSet, t1: int, t2: int,
               graph: CompatibilityGraph | None = None) -> bool:
    return extension_word(c, t1, t2, graph) is None


def greedy_complete(c: CodeSet, t1: int, t2: int,
                    graph: CompatibilityGraph | None = None) -> CodeSet:
    """Deterministic maximal superset: scan candidate words lexicographically."""
    if verify_overlap_free(c, t1, t2) is not None:
        raise ValueError("code does not verify its window")
    if graph is None:
        graph = build_graph(c.q, c.n, t1, t2)
    index = graph.index()
    cand = (1 << len(graph.vertices)) - 1
    for w in c.words:
        cand &= graph.adjacency[index[w]]
    words = set(c.words)
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        words.add(graph.vertices[v])
        cand &= graph.adjacency[v]
    return code(c.q, c.n, words, (t1, t2))


def enumerate_maximal_codes(q: int, n: int, t1: int, t2: int, *,
                            vertex_cap: int = DEFAULT_VERTEX_CAP,
                            graph: CompatibilityGraph | None = None,
                            ) -> Iterator[CodeSet]:
    """All maximal (t1, t2)-overlap-free codes (maximal cliques), via
    Bron-Kerbosch with pivoting; deterministic order."""
    if graph is None:
        graph = build_graph(q, n, t1, t2, vertex_cap=vertex_cap)
    adj = graph.adjacency
    m = len(graph.vertices)

    def bk(r: int, p: int, x: int) -> Iterator[int]:
        if p == 0 and x == 0:
            yield r
            return
        pux = p | x
        pivot, pivot_deg = -1, -1
        scan = pux
        while scan:
            low = scan & -scan
            scan &= ~low
            u = low.bit_length() - 1
            deg = (p & adj[u]).bit_count()
            if deg > pivot_deg:
                pivot, pivot_deg = u, deg
        ext = p & ~adj[pivot]
        while ext:
            low = ext & -ext
            ext &= ~low
            v = low.bit_length() - 1
            yield from bk(r | low, p & adj[v], x & adj[v])
            p &= ~low
            x |= low

    if m == 0:
        return
    for mask in bk(0, (1 << m) - 1, 0):
        words = set()
        picked = mask
        while picked:
            low = picked & -picked
            picked &= ~low
            words.add(graph.vertices[low.bit_length() - 1])
        yield code(q, n, words, (t1, t2))


@dataclass(frozen=True)
class MaximalityCertificate:
    """Outcome of the realized-prefix/suffix condition on a family's code."""

    verdict: str  # "certified-maximal" | "condition-failure" | "inconclusive"
    level: int | None = None
    word: str | None = None


def _realization_failure(f: PartitionFamily, c: CodeSet, k: int,
                         skip_level: int | None = None,
                         ) -> tuple[int, str] | None:
    prefixes = {w[:t] for w in c.words for t in range(1, k + 1)}
    suffixes = {w[c.n - t:] for w in c.words for t in range(1, k + 1)}
    for t in range(1, k + 1):
        if t == skip_level:
            continue
        for x in sorted(f.left(t)):
            if x not in prefixes:
                return t, x
        for x in sorted(f.right(t)):
            if x not in suffixes:
                return t, x
    return None


def maximality_certificate(f: PartitionFamily, n: int, k: int,
                           ) -> MaximalityCertificate:
    """Certify maximality of the (1, k) construction: every element of L_t
    must appear as a codeword prefix and every element of R_t as a suffix.
    For an even split point n/2 with a singleton level the converse direction
    is not available and the verdict is inconclusive."""
    checked(f)
    if 2 * k < n:
        raise ValueError("maximality_certificate: requires k >= n/2")
    c = overlap_free_1k(f, n, k)
    failure = _realization_failure(f, c, k)
    if failure is None:
        return MaximalityCertificate(verdict="certified-maximal")
    level, word = failure
    if n % 2 == 0:
        half = n // 2
        if len(f.left(half) | f.right(half)) == 1:
            return MaximalityCertificate(verdict="inconclusive",
                                         level=level, word=word)
    return MaximalityCertificate(verdict="condition-failure",
                                 level=level, word=word)


@dataclass(frozen=True)
class EdgeCaseClause:
    clause: str
    holds: bool
    detail: str = ""


@dataclass(frozen=True)
class EdgeCaseReport:
    applicable: bool
    clauses: tuple[EdgeCaseClause, ...] = ()

    def all_hold(self) -> bool:
        return all(cl.holds for cl in self.clauses)


def binary_edge_check(f: PartitionFamily, n: int, k: int) -> EdgeCaseReport:
    """Check the singleton-midpoint statements on a maximal code whose n/2
    level holds exactly one word (a binary-alphabet phenomenon).

    (i)  every other level is prefix/suffix realized;
    (ii) if the midpoint word u sits in L_{n/2} and is not a prefix, the
         words in L_j L_{n/2} (and the L_1-chain variants) are prefixes;
    (iii) the mirror image of (ii) on the R side.
    """
    checked(f)
    if 2 * k < n:
        raise ValueError("binary_edge_check: requires k >= n/2")
    if n % 2 == 1:
        return EdgeCaseReport(applicable=False)
    half = n // 2
    mid = f.left(half) | f.right(half)
    if len(mid) != 1:
        raise ValueError("binary_edge_check: requires a singleton n/2 level")
    c = overlap_free_1k(f, n, k)
    if not is_maximal(c, 1, k):
        raise ValueError("binary_edge_check: requires a maximal code")

    prefixes = {w[:t] for w in c.words for t in range(1, k + 1)}
    suffixes = {w[c.n - t:] for w in c.words for t in range(1, k + 1)}
    clauses: list[EdgeCaseClause] = []

    failure = _realization_failure(f, c, k, skip_level=half)
    clauses.append(EdgeCaseClause(
        clause="i", holds=failure is None,
        detail="" if failure is None else f"level {failure[0]}: {failure[1]!r}"))

    (u,) = mid
    if u in f.left(half) and u not in prefixes:
        for j in range(2, k - half + 1):
            for y in sorted(f.left(j)):
                word = y + u
                clauses.append(EdgeCaseClause(
                    clause="ii", holds=word in prefixes,
                    detail=f"L{j}*L{half} word {word!r}"))
        if k > half:
            l1_words = [y + u for y in sorted(f.left(1))]
            direct = all(word in prefixes for word in l1_words)
            if direct:
                clauses.append(EdgeCaseClause(
                    clause="ii", holds=True, detail="L1*Lhalf realized"))
            else:
                ok = len(f.left(half - 1)) == 0
                detail = "L1*Lhalf unrealized; checking the chain"
                if ok:
                    for j in range(1, k - half):
                        for y in sorted(f.left(j)):
                            for z in l1_words:
                                word = y + z
                                ok = ok and word in prefixes
                clauses.append(EdgeCaseClause(clause="ii", holds=ok, detail=detail))
    if u in f.right(half) and u not in suffixes:
        for j in range(2, k - half + 1):
            for y in sorted(f.right(j)):
                word = u + y
                clauses.append(EdgeCaseClause(
                    clause="iii", holds=word in suffixes,
                    detail=f"R{half}*R{j} word {word!r}"))
        if k > half:
            r1_words = [u + y for y in sorted(f.right(1))]
            direct = all(word in suffixes for word in r1_words)
            if direct:
                clauses.append(EdgeCaseClause(
                    clause="iii", holds=True, detail="Rhalf*R1 realized"))
            else:
                ok = len(f.right(half - 1)) == 0
                detail = "Rhalf*R1 unrealized; checking the chain"
                if ok:
                    for j in range(1, k - half):
                        for y in sorted(f.right(j)):
                            for z in r1_words:
                                word = z + y
                                ok = ok and word in suffixes
                clauses.append(EdgeCaseClause(clause="iii", holds=ok, detail=detail))
    return EdgeCaseReport(applicable=True, clauses=tuple(clauses))


@dataclass(frozen=True)
class RoundTripCounterexample:
    code: CodeSet
    rebuilt: CodeSet


def all_maximal_from_construction(q: int, n: int, k: int, *,
                                  vertex_cap: int = DEFAULT_VERTEX_CAP,
                                  max_codes: int | None = None,
                                  ) -> RoundTripCounterexample | None:
    """Check that every maximal (1, k)-overlap-free code is rebuilt exactly
    by the layered construction on the family derived from its prefixes.
    Returns the first counterexample, or None.  max_codes caps the
    enumeration (in its deterministic order) where the full population is
    too large to sweep."""
    from .families import family_from_code

    if 2 * k < n:
        raise ValueError("all_maximal_from_construction: requires k >= n/2")
    for i, c in enumerate(enumerate_maximal_codes(q, n, 1, k,
                                                  vertex_cap=vertex_cap)):
        if max_codes is not None and i >= max_codes:
            break
        f = family_from_code(c, k)
        rebuilt = overlap_free_1k(f, n, k)
        if rebuilt.words != c.words:
            return RoundTripCounterexample(code=c, rebuilt=rebuilt)
    return None
