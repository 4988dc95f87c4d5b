import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from overlapcodes.words import (CodeSet, OverlapWitness, all_words, code,
                                divisors, is_primitive, least_period, mobius,
                                overlap_lengths, primitive_count,
                                self_compatible, verify_overlap_free)


def naive_overlap_free(words, n, t1, t2):
    """Quadratic re-implementation used as the verification oracle."""
    for u in words:
        for v in words:
            for t in range(t1, t2 + 1):
                if u[:t] == v[n - t:]:
                    return (u, v, t)
    return None


words_q2 = st.integers(2, 3).flatmap(
    lambda q: st.integers(1, 8).flatmap(
        lambda n: st.text(alphabet="012"[:q], min_size=n, max_size=n)))


def test_overlap_lengths_examples():
    assert overlap_lengths("0110", "1001") == {2}
    assert overlap_lengths("000", "000") == {1, 2}
    assert overlap_lengths("010", "010") == {1}


def test_overlap_lengths_rejects_length_mismatch():
    with pytest.raises(ValueError):
        overlap_lengths("01", "011")


@given(words_q2, st.data())
def test_overlap_lengths_matches_slicing(u, data):
    v = data.draw(st.text(alphabet="012", min_size=len(u), max_size=len(u)))
    got = overlap_lengths(u, v)
    for t in range(1, len(u)):
        assert (t in got) == (v[len(v) - t:] == u[:t])


def test_verify_examples():
    c = code(2, 4, {"0111", "0011"})
    witness = verify_overlap_free(c, 1, 3)
    assert witness == OverlapWitness(u="0111", v="0011", t=3)
    assert verify_overlap_free(c, 1, 2) is None
    assert verify_overlap_free(code(2, 4, set()), 1, 3) is None


@given(st.integers(2, 3), st.integers(3, 5), st.data())
@settings(max_examples=60, deadline=None)
def test_verify_matches_naive(q, n, data):
    alphabet = "012"[:q]
    pool = ["".join(w) for w in __import__("itertools").product(alphabet, repeat=n)]
    words = data.draw(st.sets(st.sampled_from(pool), max_size=8))
    t1 = data.draw(st.integers(1, n - 1))
    t2 = data.draw(st.integers(t1, n - 1))
    c = code(q, n, words)
    fast = verify_overlap_free(c, t1, t2)
    slow = naive_overlap_free(words, n, t1, t2)
    assert (fast is None) == (slow is None)
    if fast is not None:
        assert fast.u[:fast.t] == fast.v[n - fast.t:]
        assert t1 <= fast.t <= t2


def test_least_period_examples():
    assert least_period("0101") == 2
    assert least_period("0110") == 4  # 3 is a classical period but not a divisor
    assert least_period("000") == 1


@given(words_q2)
def test_least_period_divides_length(w):
    d = least_period(w)
    assert len(w) % d == 0
    assert w == w[:d] * (len(w) // d)


def test_self_overlap_of_periodic_words():
    # least period d < |w| with d | |w| forces a d-overlap with itself
    for q in (2, 3):
        for n in range(2, 9):
            for w in all_words(q, n):
                d = least_period(w)
                if d < n:
                    assert w[:d] == w[n - d:]
                    assert not self_compatible(w, d, d)


def test_mobius_examples():
    assert mobius(1) == 1
    assert mobius(4) == 0
    assert mobius(6) == 1
    assert mobius(2) == -1
    assert mobius(30) == -1
    assert mobius(12) == 0
    with pytest.raises(ValueError):
        mobius(0)


def test_primitive_count_examples():
    assert primitive_count(2, 2) == 2
    assert primitive_count(2, 4) == 12
    assert primitive_count(3, 2) == 6


@pytest.mark.parametrize("q", [2, 3, 4])
def test_primitive_count_matches_enumeration(q):
    limit = {2: 10, 3: 8, 4: 6}[q]
    for n in range(1, limit + 1):
        brute = sum(1 for w in all_words(q, n) if is_primitive(w))
        assert primitive_count(q, n) == brute


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


def test_codeset_validation():
    with pytest.raises(ValueError):
        code(2, 3, {"012"})  # symbol 2 outside binary alphabet
    with pytest.raises(ValueError):
        code(2, 3, {"01"})  # wrong length
    with pytest.raises(ValueError):
        CodeSet(q=1, n=3, words=frozenset())
    c = code(2, 3, {"001", "011"}, window=(1, 2))
    assert len(c) == 2
    assert c.sorted_words() == ["001", "011"]
