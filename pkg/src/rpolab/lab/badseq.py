"""The two direct proofs of the termination principle, run on finite instances.

A sequence is *bad* when it descends everywhere.  On a finite carrier a
finite prefix extends to a bad sequence exactly when it descends and its
last element reaches a ``≻``-cycle, so every question here is decided by
graph search rather than by sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from ..relations import find_cycle
from .instance import PrincipleInstance, Unknown, min_check, swf
from .sequences import LazySequence

DEFAULT_LENGTH = 8


# -- minimal bad sequence ---------------------------------------------------

@dataclass(frozen=True)
class NoBad:
    pass


@dataclass(frozen=True)
class MinimalBad:
    prefix: tuple
    sequence: LazySequence = field(compare=False)
    verified: bool = True


def _choose(inst: PrincipleInstance, prefix: tuple):
    """First admissible ``x``: ``prefix * x`` extends bad, no ``y ◁ x`` does."""
    for x in inst.carrier:
        if inst.extends_bad(prefix + (x,)) and not any(inst.extends_bad(prefix + (y,)) for y in inst.below(x)):
            return x
    raise AssertionError("no admissible element; the subterm relation must be cyclic")


def minimal_bad_sequence(inst: PrincipleInstance, L: int = DEFAULT_LENGTH) -> NoBad | MinimalBad:
    """Greedy minimal bad sequence, first admissible element in carrier order."""
    if L < 1:
        raise ValueError("L must be at least 1")
    if not inst.extends_bad(()):
        return NoBad()
    # after the first step the choice depends only on the last element
    walk = [_choose(inst, ())]
    seen = {walk[0]: 0}
    while True:
        nxt = _choose(inst, (walk[-1],))
        if nxt in seen:
            j = seen[nxt]
            seq = LazySequence.from_lasso(walk[:j], walk[j:])
            break
        seen[nxt] = len(walk)
        walk.append(nxt)
    prefix = seq.prefix(L)
    return MinimalBad(prefix, seq, verify_minimal_bad(inst, prefix))


def _bad_oracle(inst: PrincipleInstance):
    """Brute force: ``walk(x, k)`` iff a descending path of ``k`` steps leaves ``x``."""
    bound = len(inst.carrier)

    @lru_cache(maxsize=None)
    def walk(x, k: int) -> bool:
        if k == 0:
            return True
        return any(walk(y, k - 1) for y in inst.carrier if inst.succ(x, y))

    def extends_bad(prefix: tuple) -> bool:
        if any(not inst.succ(a, b) for a, b in zip(prefix, prefix[1:])):
            return False
        if not prefix:
            return any(walk(x, bound) for x in inst.carrier)
        # a path with as many steps as there are elements revisits one
        return walk(prefix[-1], bound)

    return extends_bad


def verify_minimal_bad(inst: PrincipleInstance, prefix: tuple) -> bool:
    """Every prefix extends bad; swapping any ``α(n)`` for a ``y ◁ α(n)`` does not."""
    extends_bad = _bad_oracle(inst)
    for n in range(len(prefix)):
        if not extends_bad(prefix[:n + 1]):
            return False
        if any(extends_bad(prefix[:n] + (y,)) for y in inst.below(prefix[n])):
            return False
    return True


# -- bar induction ----------------------------------------------------------

def p_holds(inst: PrincipleInstance, a: tuple) -> bool:
    """``P(a)``: every extension of ``a`` is well-founded."""
    return not inst.extends_bad(a)


def s_holds(inst: PrincipleInstance, a: tuple) -> bool:
    """``S(a)``: branching below ``a(n)`` at any ``n < |a|`` gives well-founded sequences."""
    return all(not inst.extends_bad(a[:n] + (y,)) for n in range(len(a)) for y in inst.below(a[n]))


def _s_step(inst: PrincipleInstance, a: tuple, x) -> bool:
    """The last-point part of ``S(a * x)``."""
    return all(not inst.extends_bad(a + (y,)) for y in inst.below(x))


def bad_in_s(inst: PrincipleInstance) -> LazySequence | None:
    """A bad sequence all of whose prefixes satisfy ``S``, as a lasso, if any.

    For a bad ``α`` the prefixes stay in ``S`` exactly when each ``α(n)``
    has no ill-founded ``y ◁ α(n)`` with ``α(n-1) ≻ y``.
    """
    def guarded(prev, x) -> bool:
        return all(inst.is_wf(y) for y in inst.below(x) if prev is None or inst.succ(prev, y))

    ill = [x for x in inst.carrier if not inst.is_wf(x)]
    step = {x: [z for z in inst.succ_of(x) if not inst.is_wf(z) and guarded(x, z)] for x in ill}
    starts = [x for x in ill if guarded(None, x)]
    # reachability from the starts, then a cycle among reached nodes
    reached, parent, stack = set(starts), {x: None for x in starts}, list(starts)
    while stack:
        x = stack.pop()
        for z in step[x]:
            if z not in reached:
                reached.add(z)
                parent[z] = x
                stack.append(z)
    cycle = find_cycle([x for x in ill if x in reached], lambda x: [z for z in step[x] if z in reached])
    if cycle is None:
        return None
    head = []
    node = parent[cycle[0]]
    while node is not None:
        head.append(node)
        node = parent[node]
    return LazySequence.from_lasso(tuple(reversed(head)), tuple(cycle[:-1]))


@dataclass
class BarInductionReport:
    s_empty: bool
    bar_premise: bool
    bar_witness: str | None
    step_premise: bool
    step_witness: tuple | None
    tp_premise: bool
    tp_witness: str | None
    derived_p_empty: bool | None
    actual_p_empty: bool
    states: int
    L: int

    @property
    def premises_hold(self) -> bool:
        return self.s_empty and self.bar_premise and self.step_premise

    @property
    def sound(self) -> bool:
        """Premises imply ``P(⟨⟩)``, and the side induction reproduces it."""
        if not self.premises_hold:
            return True
        return self.actual_p_empty and self.derived_p_empty is True

    def to_json(self) -> dict:
        return {
            "L": self.L, "states": self.states,
            "S_empty": self.s_empty,
            "bar_premise": self.bar_premise, "bar_witness": self.bar_witness,
            "step_premise": self.step_premise,
            "step_witness": list(self.step_witness) if self.step_witness is not None else None,
            "tp_premise": self.tp_premise, "tp_witness": self.tp_witness,
            "derived_P_empty": self.derived_p_empty, "actual_P_empty": self.actual_p_empty,
            "sound": self.sound,
        }


def side_induction(inst: PrincipleInstance, a: tuple, hypothesis) -> dict | None:
    """Derive ``P(a * x)`` for every ``x`` by induction along ``⊳``.

    ``hypothesis(x)`` stands for ``S(a * x) → P(a * x)``.  Returns the
    derived table, or ``None`` when the hypothesis is needed but absent.
    """
    derived: dict = {}
    order = _sub_topological(inst)
    for x in order:
        # ∀y ◁ x P(a*y) gives the last point of S(a*x); S(a) is assumed
        if not all(derived[y] for y in inst.below(x)):
            derived[x] = False
            continue
        if not hypothesis(x):
            return None
        derived[x] = True
    return derived


def _sub_topological(inst: PrincipleInstance) -> list:
    """Carrier order with every ``y ◁ x`` placed before ``x``."""
    out, done = [], set()

    def visit(x):
        stack = [(x, iter(inst.below(x)))]
        while stack:
            node, it = stack[-1]
            child = next((y for y in it if y not in done), None)
            if child is None:
                stack.pop()
                if node not in done:
                    done.add(node)
                    out.append(node)
            else:
                stack.append((child, iter(inst.below(child))))

    for x in inst.carrier:
        if x not in done:
            visit(x)
    return out


def bar_induction_check(inst: PrincipleInstance, L: int = DEFAULT_LENGTH) -> BarInductionReport:
    """Materialise ``S`` and ``P`` on sequences of length ``<= L`` and test the premises.

    Sequences are explored up to the state ``(descends, last element,
    S)``, which determines ``P``, ``S`` and every one-step extension.
    """
    bad = bad_in_s(inst)
    bar_ok = bad is None
    bar_witness = None if bar_ok else bad.describe()

    # the premise of the termination principle, checked on the same witness
    tp_witness = None
    if bad is not None and min_check(inst, bad) and isinstance(swf(inst, bad), Unknown):
        tp_witness = bad.describe()
    tp_ok = tp_witness is None

    step_ok, step_witness = True, None
    frontier = {_state(inst, ()): ()}
    seen = dict(frontier)
    for _ in range(L):
        nxt = {}
        for state, a in frontier.items():
            if not state[2]:
                continue
            hyp = all(not s_holds(inst, a + (x,)) or p_holds(inst, a + (x,)) for x in inst.carrier)
            if hyp and not p_holds(inst, a) and step_ok:
                step_ok, step_witness = False, a
            for x in inst.carrier:
                b = a + (x,)
                st = _state(inst, b)
                if st not in seen:
                    seen[st] = b
                    nxt[st] = b
        frontier = nxt

    root_hyp = lambda x: not s_holds(inst, (x,)) or p_holds(inst, (x,))
    table = side_induction(inst, (), root_hyp)
    derived = None if table is None else all(table.values())
    return BarInductionReport(True, bar_ok, bar_witness, step_ok, step_witness, tp_ok, tp_witness,
                              derived, inst.all_wf(), len(seen), L)


def _state(inst: PrincipleInstance, a: tuple) -> tuple[bool, Any, bool]:
    descends = all(inst.succ(x, y) for x, y in zip(a, a[1:]))
    return descends, (a[-1] if a else None), s_holds(inst, a)
