import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from overlapcodes.families import (EnumerationBudgetExceeded, balanced_family,
                                   compositions, concat_layer, decompose,
                                   enumerate_families, family,
                                   family_from_code, validate)
from overlapcodes.words import code


EXAMPLE_FAMILY = family(3, [({"0", "1"}, {"2"}), ({"02"}, {"12"})])


def test_validate_example_family():
    assert validate(EXAMPLE_FAMILY) is None


def test_validate_names_failing_level():
    broken = family(3, [({"0", "1"}, {"2"}), ({"02"}, set())])
    problem = validate(broken)
    assert problem is not None and "level 2" in problem and "12" in problem


def test_validate_empty_side_level_one():
    broken = family(2, [(set(), {"0", "1"})])
    problem = validate(broken)
    assert problem is not None and "level 1" in problem


def test_validate_rejects_overlap():
    broken = family(2, [({"0", "1"}, {"1"})])
    assert "intersect" in validate(broken)


def test_enumerate_depth_one():
    fams = list(enumerate_families(2, 1))
    assert [(sorted(f.left(1)), sorted(f.right(1))) for f in fams] == [
        (["0"], ["1"]), (["1"], ["0"])]
    assert len(list(enumerate_families(3, 1))) == 6


def test_enumerate_depth_two_extensions():
    fams = [f for f in enumerate_families(2, 2)
            if f.left(1) == frozenset("0")]
    levels = {(frozenset(f.left(2)), frozenset(f.right(2))) for f in fams}
    assert levels == {(frozenset(), frozenset({"01"})),
                      (frozenset({"01"}), frozenset())}


def test_enumerate_budget_signal():
    it = enumerate_families(3, 2, max_families=3)
    got = []
    with pytest.raises(EnumerationBudgetExceeded):
        for f in it:
            got.append(f)
    assert len(got) == 3


@pytest.mark.parametrize("q,k", [(2, 4), (3, 3)])
def test_enumerated_families_are_valid_with_consistent_counts(q, k):
    seen = set()
    for f in enumerate_families(q, k):
        assert validate(f) is None
        for i in range(2, k + 1):
            assert len(f.left(i)) + len(f.right(i)) == sum(
                len(f.left(j)) * len(f.right(i - j)) for j in range(1, i))
        seen.add(f.levels)
    assert len(seen) == len(set(seen))  # exactly-once enumeration


def test_balanced_family_examples():
    f = balanced_family(2, 1, 3, "L_empty")
    assert sorted(f.left(1)) == ["0"]
    assert sorted(f.right(2)) == ["01"]
    assert sorted(f.right(3)) == ["001"]
    assert validate(f) is None

    g = balanced_family(3, 2, 2, "R_empty")
    assert sorted(g.right(1)) == ["0", "1"]
    assert sorted(g.left(1)) == ["2"]
    assert sorted(g.left(2)) == ["20", "21"]
    assert not g.right(2)
    assert validate(g) is None

    with pytest.raises(ValueError):
        balanced_family(2, 2, 3, "L_empty")


@pytest.mark.parametrize("q,x,k,side", [
    (2, 1, 4, "L_empty"), (3, 1, 3, "R_empty"), (3, 2, 4, "L_empty"),
    (4, 2, 3, "R_empty"),
])
def test_balanced_families_validate(q, x, k, side):
    assert validate(balanced_family(q, x, k, side)) is None


def test_decompose_worked_example():
    # the two short pairs rewrite simultaneously; the surviving pair spans a
    # subword longer than the depth, so the trace stops
    trace = decompose("02122", EXAMPLE_FAMILY)
    assert trace.steps[0] == "lrlrr"
    assert trace.final == "lrr"
    assert trace.spans[-1] == ((0, 2), (2, 4), (4, 5))


def test_decompose_trivial_depth_one():
    f = family(2, [({"0"}, {"1"})])
    trace = decompose("01", f)
    assert trace.steps == ("lr",)


def test_decompose_stops_on_long_span():
    f = family(2, [({"0"}, {"1"}), (set(), {"01"})])
    trace = decompose("0011", f)
    assert trace.steps == ("llrr", "lrr")


def test_decompose_rejects_bad_boundary():
    with pytest.raises(ValueError):
        decompose("2012", EXAMPLE_FAMILY)
    with pytest.raises(ValueError):
        decompose("010", family(2, [({"0"}, {"1"})]))


@given(st.data())
@settings(max_examples=100, deadline=None)
def test_decompose_steps_strictly_shrink(data):
    fams = list(enumerate_families(2, 3))
    f = data.draw(st.sampled_from(fams))
    n = data.draw(st.integers(2, 7))
    first = data.draw(st.sampled_from(sorted(f.left(1))))
    last = data.draw(st.sampled_from(sorted(f.right(1))))
    middle = data.draw(st.text(alphabet="01", min_size=n - 2, max_size=n - 2))
    trace = decompose(first + middle + last, f)
    lengths = [len(s) for s in trace.steps]
    assert lengths[0] == n
    assert all(a > b for a, b in zip(lengths, lengths[1:]))
    assert len(trace.steps) <= n
    for step, spans in zip(trace.steps, trace.spans):
        assert len(step) == len(spans)
        assert spans[0][0] == 0 and spans[-1][1] == n


def test_family_from_code_examples():
    # level i draws from the concatenation layer, so "00" (a realized prefix
    # but not in L1 R1) stays out; the construction still rebuilds the code
    f = family_from_code(code(2, 4, {"0001", "0011"}), 2)
    assert sorted(f.left(1)) == ["0"]
    assert sorted(f.left(2)) == []
    assert sorted(f.right(2)) == ["01"]

    g = family_from_code(code(2, 3, {"001"}), 1)
    assert sorted(g.left(1)) == ["0"]
    assert sorted(g.right(1)) == ["1"]

    h = family_from_code(code(3, 4, {"0212"}), 2)
    assert sorted(h.left(1)) == ["0"]
    assert sorted(h.right(1)) == ["1", "2"]
    assert sorted(h.left(2)) == ["02"]
    assert sorted(h.right(2)) == ["01"]


def test_family_from_code_refuses_overlapping_code():
    with pytest.raises(ValueError):
        family_from_code(code(2, 4, {"0111", "0011"}), 3)


def test_compositions_examples():
    assert list(compositions(0)) == [()]
    assert list(compositions(1)) == [(1,)]
    assert list(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]


@given(st.integers(1, 11))
def test_compositions_count_and_order(m):
    comps = list(compositions(m))
    assert len(comps) == 2 ** (m - 1)
    assert all(sum(c) == m for c in comps)
    assert comps == sorted(comps)
    assert len(set(comps)) == len(comps)


def test_concat_layer():
    assert concat_layer(EXAMPLE_FAMILY, 2) == {"02", "12"}
    f = family(3, [({"0", "1"}, {"2"}), ({"02"}, {"12"})])
    # level 3 layer: L1 R2 + L2 R1
    assert concat_layer(f, 3) == {"012", "112", "022"}
