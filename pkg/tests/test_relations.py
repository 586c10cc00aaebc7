from __future__ import annotations

import itertools
import operator
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from rpolab.relations import (CarrierNotFinite, Lifting, RelationSpec, check_lifting_law, find_cycle, greater_than,
                              is_wellfounded_finite, lex_ext, lex_index, multiset_cover, multiset_ext)


def dm_oracle(base, xs, ys) -> bool:
    """Dershowitz-Manna by brute force over index subsets of ``xs``."""
    for k in range(1, len(xs) + 1):
        for removed in itertools.combinations(range(len(xs)), k):
            rest = Counter(x for i, x in enumerate(xs) if i not in removed)
            need = Counter(ys)
            if rest - need:
                continue
            added = need - rest
            if all(any(base(xs[i], y) for i in removed) for y in added.elements()):
                return True
    return False


def descends_oracle(r: RelationSpec) -> bool:
    """A descending chain with more steps than elements exists iff some cycle does."""
    carrier = r.carrier
    frontier = set(carrier)
    for _ in range(len(carrier) + 1):
        frontier = {y for x in frontier for y in carrier if r(x, y)}
    return bool(frontier)


small_lists = st.lists(st.integers(0, 4), max_size=4)


@given(small_lists, small_lists)
def test_multiset_matches_oracle_on_naturals(xs, ys):
    assert multiset_ext(operator.gt, xs, ys) == dm_oracle(operator.gt, xs, ys)


@st.composite
def relation_on_four(draw):
    edges = draw(st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3))))
    return lambda a, b: (a, b) in edges


@given(relation_on_four(), small_lists.map(lambda l: [v % 4 for v in l]), small_lists.map(lambda l: [v % 4 for v in l]))
@settings(max_examples=300)
def test_multiset_matches_oracle_for_arbitrary_base(base, xs, ys):
    assert multiset_ext(base, xs, ys) == dm_oracle(base, xs, ys)


def test_multiset_cover_witness():
    kept, covered = multiset_cover(operator.gt, [5, 3], [4, 4, 3])
    assert kept == [(1, 2)]
    assert sorted(covered) == [(0, 0), (0, 1)]


@pytest.mark.parametrize("xs,ys,expected", [
    ([3], [2, 2, 2], True),
    ([3, 1], [3, 1], False),
    ([], [], False),
    ([1], [], True),
    ([2, 2], [2, 1, 1], True),
    ([2, 1], [2, 2], False),
])
def test_multiset_examples(xs, ys, expected):
    assert multiset_ext(operator.gt, xs, ys) is expected


def test_lex():
    assert lex_ext(operator.gt, (1, 5), (1, 4))
    assert lex_index(operator.gt, (2, 0, 9), (2, 0, 3)) == 2
    assert not lex_ext(operator.gt, (1, 4), (1, 5))
    assert not lex_ext(operator.gt, (1, 4), (1, 4))
    with pytest.raises(ValueError):
        lex_ext(operator.gt, (1,), (1, 2))


def test_find_cycle_returns_closed_walk():
    succ = {0: [1], 1: [2], 2: [0], 3: [0]}
    cycle = find_cycle(succ, lambda x: succ[x])
    assert cycle[0] == cycle[-1]
    assert all(b in succ[a] for a, b in zip(cycle, cycle[1:]))
    assert find_cycle({0: [1], 1: []}, lambda x: {0: [1], 1: []}[x]) is None


@given(st.sets(st.tuples(st.integers(0, 4), st.integers(0, 4))))
def test_wellfoundedness_matches_chain_oracle(edges):
    r = RelationSpec.from_edges(range(5), edges)
    ok, cycle = is_wellfounded_finite(r)
    assert ok == (not descends_oracle(r))
    if cycle:
        assert all(r(a, b) for a, b in zip(cycle, cycle[1:]))


def test_relation_spec_json_roundtrip():
    r = RelationSpec.from_edges(["a", "b"], [("a", "b")], "r")
    back = RelationSpec.from_json(r.to_json())
    assert back.edges() == [("a", "b")] and back.carrier == ("a", "b")


def test_abstract_relation_has_no_carrier():
    r = RelationSpec(operator.gt)
    assert r(2, 1)
    with pytest.raises(CarrierNotFinite):
        r.edges()


@pytest.mark.parametrize("lift", list(Lifting))
def test_liftings_preserve_wellfoundedness(lift):
    samples = [greater_than(range(4)), RelationSpec.from_edges(range(3), [(0, 1), (1, 0)], "cyclic")]
    report = check_lifting_law(lift, 2, samples)
    assert report.ok
    assert [e.outcome for e in report.entries] == ["pass", "skipped"]
