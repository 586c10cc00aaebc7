from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from rpolab.lab.campaigns import random_instance
from rpolab.lab.instance import (CounterChain, InvalidInstance, PrincipleInstance, Unknown, Witness, Yes,
                                 emin_check, ewf, min_check, require_small, swf)
from rpolab.lab.sequences import LazySequence, lasso_family, splice
from rpolab.terms import ResourceError


def nat_instance(k=10):
    """(ℕ<k, >) with ⊳ also >."""
    edges = [(a, b) for a in range(k) for b in range(k) if a > b]
    return PrincipleInstance.from_edges(range(k), edges, edges)


CYCLE = PrincipleInstance.from_edges("abc", [("a", "b"), ("b", "a")], [("c", "a")])


def walk_oracle(inst, x, k):
    """A descending path with ``k`` steps leaves ``x``."""
    frontier = {x}
    for _ in range(k):
        frontier = {y for u in frontier for y in inst.carrier if inst.succ(u, y)}
    return bool(frontier)


def ewf_oracle(inst, x):
    return not walk_oracle(inst, x, len(inst.carrier) + 1)


def swf_oracle(inst, alpha, probes):
    for n in range(probes):
        if not inst.succ(alpha[n], alpha[n + 1]):
            return n
    return None


def min_oracle(inst, alpha):
    """MIN over every splice ᾱn * y * τ, τ ranging over all small lassos."""
    tails = list(lasso_family(inst.carrier, len(inst.carrier), len(inst.carrier)))
    for n in range(alpha.horizon() + 1):
        for y in inst.carrier:
            if not inst.sub(alpha[n], y):
                continue
            for tail in tails:
                if swf_oracle(inst, splice(alpha, n, y, tail), 40) is None:
                    return False
    return True


def emin_oracle(inst, alpha):
    for n in range(alpha.horizon() + 1):
        for y in inst.carrier:
            if inst.sub(alpha[n], y) and (n == 0 or inst.succ(alpha[n - 1], y)) and not ewf_oracle(inst, y):
                return False
    return True


def test_swf_examples():
    nat = nat_instance()
    assert swf(nat, LazySequence.from_lasso([3, 2, 1], [0])) == Witness(3)
    assert swf(nat, LazySequence.constant(4)) == Witness(0)
    assert isinstance(swf(CYCLE, LazySequence.from_lasso([], "ab"), fuel=500), Unknown)


def test_ewf_examples():
    assert ewf(nat_instance(), 3) == Yes()
    assert ewf(CYCLE, "a") == CounterChain(("a", "b", "a"))
    assert ewf(CYCLE, "c") == Yes()


def test_min_examples():
    nat = nat_instance()
    # nothing below 0, so the scope is empty
    assert min_check(nat, LazySequence.constant(0))
    assert min_check(nat, LazySequence.from_lasso(range(9), [9]))
    # splicing c ⊳ a into position 0 yields a cycle
    assert not min_check(CYCLE, LazySequence.constant("c"))


def test_emin_examples():
    empty = PrincipleInstance.from_edges("ab", [("a", "b"), ("b", "a")], [])
    assert emin_check(empty, LazySequence.from_lasso([], "ab"))
    # n = 0: c ⊳ a and a is ill-founded, no constraint from a predecessor
    assert not emin_check(CYCLE, LazySequence.constant("c"))
    assert emin_check(nat_instance(), LazySequence.from_lasso([5, 4], [2]))


small = st.integers(0, 10_000).map(lambda s: random_instance(random.Random(s), 3, 0.4))


@given(small, st.data())
@settings(max_examples=60, deadline=None)
def test_predicates_match_oracles(inst, data):
    carrier = list(inst.carrier)
    head = data.draw(st.lists(st.sampled_from(carrier), max_size=2))
    loop = data.draw(st.lists(st.sampled_from(carrier), min_size=1, max_size=2))
    alpha = LazySequence.from_lasso(head, loop)
    for x in carrier:
        assert isinstance(ewf(inst, x), Yes) == ewf_oracle(inst, x)
    out = swf(inst, alpha)
    expected = swf_oracle(inst, alpha, 50)
    assert (out == Witness(expected)) if expected is not None else isinstance(out, Unknown)
    assert min_check(inst, alpha) == min_oracle(inst, alpha)
    assert emin_check(inst, alpha) == emin_oracle(inst, alpha)


def test_counter_chain_is_bad():
    chain = ewf(CYCLE, "a")
    seq = chain.as_sequence()
    assert isinstance(swf(CYCLE, seq), Unknown)


def test_rejects_cyclic_sub():
    with pytest.raises(InvalidInstance):
        PrincipleInstance.from_edges("ab", [], [("a", "b"), ("b", "a")])


def test_json_roundtrip_and_validation():
    doc = CYCLE.to_json()
    back = PrincipleInstance.from_json(doc)
    assert back.to_json() == doc
    with pytest.raises(InvalidInstance):
        PrincipleInstance.from_json({"carrier": [1], "succ": [[1, 2]], "sub": []})
    with pytest.raises(InvalidInstance):
        PrincipleInstance.from_json({"succ": []})


def test_tuple_elements_survive_json():
    inst = PrincipleInstance.from_edges([(0,), (0, 1)], [((0,), (0, 1))], [])
    back = PrincipleInstance.from_json(inst.to_json())
    assert back.succ((0,), (0, 1))


def test_size_cap():
    with pytest.raises(ResourceError):
        require_small(nat_instance(13))
    require_small(nat_instance(12))
