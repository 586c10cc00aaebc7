from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from rpolab.lab.campaigns import decomposed_instance, gl_instance, random_instance
from rpolab.lab.export import rpo_principle_instance
from rpolab.lab.instance import PrincipleInstance
from rpolab.lab.simplification import MissingRelation, a_set, gl_check, induced_succ0, stp_check
from rpolab.relations import is_wellfounded_finite
from rpolab.rpo import PrecedenceStatus, RpoInstance
from rpolab.terms import Signature, enumerate_ground_terms

SIG = Signature.of("0/0", "s/1", "ack/2")
ACK = RpoInstance(SIG, PrecedenceStatus.from_pairs([("ack", "s"), ("ack", "0")], {"ack": "lex"}))


@pytest.fixture(scope="module")
def rpo3():
    return rpo_principle_instance(ACK, enumerate_ground_terms(SIG, 3))


def test_rpo_instance_passes(rpo3):
    rep = stp_check(rpo3)
    assert rep.decomposition_ok and rep.hypotheses_hold and rep.conclusion
    assert is_wellfounded_finite(rpo3.succ)[0]
    assert len(rep.A) == len(rpo3.carrier)


def test_law_b_violation_detected():
    # a ≻₀ b but b ⊳ c without a ≻ c
    inst = PrincipleInstance.from_edges("abc", [("a", "b"), ("b", "c")], [("b", "c")], [("a", "b")])
    rep = stp_check(inst)
    assert ("b", "a", "b") in rep.law_violations
    assert not rep.hypotheses_hold


def test_law_a_violation_with_succ0_empty():
    inst = PrincipleInstance.from_edges("ab", [("a", "b")], [], [])
    assert [v[0] for v in stp_check(inst).law_violations] == ["a"]


def test_empty_order_is_trivial():
    inst = PrincipleInstance.from_edges("abc", [], [("a", "b")], [])
    rep = stp_check(inst)
    assert rep.hypotheses_hold and rep.conclusion


def test_missing_relations():
    inst = PrincipleInstance.from_edges("a", [], [])
    with pytest.raises(MissingRelation):
        stp_check(inst)
    with pytest.raises(MissingRelation):
        gl_check(inst)


def test_a_set_oracle():
    # c ⊳ a with a on a cycle: c is not in A, a and b are
    inst = PrincipleInstance.from_edges("abc", [("a", "b"), ("b", "a")], [("c", "a")], [("a", "b"), ("b", "a")])
    assert a_set(inst) == {"a", "b"}
    rep = stp_check(inst)
    assert set(rep.ewf_a_failures) == {"a", "b"} and not rep.hypotheses_hold


def brute_stp(inst):
    """Hypotheses by definition: laws on all pairs, eWF_A by walking ≻₀ inside A for |carrier|+1 steps."""
    C = inst.carrier
    for x in C:
        for y in C:
            if inst.succ(x, y) and not inst.succ0(x, y) and not any(
                    inst.sub(x, u) and (u == y or inst.succ(u, y)) for u in C):
                return False
            if inst.succ0(x, y) and not all(inst.succ(x, u) for u in C if inst.sub(y, u)):
                return False
    wf = {x for x in C if not _walks(inst.succ, C, {x})}
    A = {x for x in C if all(y in wf for y in C if inst.sub(x, y))}
    return all(not _walks(inst.succ0, A, {x}) for x in A)


def _walks(rel, nodes, frontier):
    for _ in range(len(nodes) + 1):
        frontier = {y for u in frontier for y in nodes if rel(u, y)}
    return bool(frontier)


@given(st.integers(0, 100_000))
@settings(max_examples=300, deadline=None)
def test_hypotheses_match_brute_force(seed):
    rng = random.Random(seed)
    inst = decomposed_instance(rng, 5) if seed % 2 else random_instance(rng, 5, 0.4, with_succ0=True)
    rep = stp_check(inst)
    assert rep.hypotheses_hold == brute_stp(inst)
    if rep.hypotheses_hold:
        assert rep.conclusion


def test_decomposed_generator_satisfies_laws():
    for seed in range(200):
        assert stp_check(decomposed_instance(random.Random(seed))).decomposition_ok


def test_gl_on_rpo_export():
    inst = rpo_principle_instance(ACK, enumerate_ground_terms(SIG, 2))
    rep = gl_check(inst)
    assert rep.hypotheses_hold and rep.stp.hypotheses_hold and rep.stp.conclusion


def test_gl_cycle_in_a_is_reported():
    inst = PrincipleInstance.from_edges("ab", [], [], gg=[("a", "b"), ("b", "a")])
    rep = gl_check(inst)
    assert set(rep.inaccessible) == {"a", "b"}
    assert not rep.hypotheses_hold and rep.stp is None and rep.conclusion is None


def test_gl_empty_order():
    rep = gl_check(PrincipleInstance.from_edges("ab", [], [("a", "b")], gg=[]))
    assert rep.hypotheses_hold and rep.stp.conclusion


def test_induced_relation_definition():
    inst = gl_instance(random.Random(3))
    ind = induced_succ0(inst)
    for x in inst.carrier:
        for y in inst.carrier:
            expected = inst.gg(x, y) and all(inst.succ(x, u) for u in inst.carrier if inst.sub(y, u))
            assert ind(x, y) == expected


def test_gl_implies_stp_on_random():
    for seed in range(300):
        rep = gl_check(gl_instance(random.Random(seed)))
        if rep.hypotheses_hold:
            assert rep.stp.hypotheses_hold and rep.stp.conclusion
