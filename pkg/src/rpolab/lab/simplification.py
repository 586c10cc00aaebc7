"""Decomposition-based termination checks on finite instances.

``stp_check`` tests the three hypotheses of the simplification-order
principle (decomposition laws, the set ``A`` of elements whose
⊳-predecessors are all well-founded, and ``≻₀``-termination inside
``A``) and, when they hold, that every element is well-founded.
``gl_check`` does the same starting from an accessibility relation
``≫`` and derives ``≻₀`` from it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..relations import RelationSpec, find_cycle
from .instance import PrincipleInstance, accessible_part


class MissingRelation(ValueError):
    pass


@dataclass
class StpReport:
    law_violations: list[tuple[str, Any, Any]]
    A: frozenset
    ewf_a_failures: list[Any]
    ill_founded: list[Any]
    succ0_in_succ: bool

    @property
    def decomposition_ok(self) -> bool:
        return not self.law_violations

    @property
    def hypotheses_hold(self) -> bool:
        return self.decomposition_ok and not self.ewf_a_failures

    @property
    def conclusion(self) -> bool:
        """Every element is ``≻``-well-founded."""
        return not self.ill_founded

    @property
    def sound(self) -> bool:
        return not self.hypotheses_hold or self.conclusion

    def to_json(self) -> dict:
        return {
            "decomposition_ok": self.decomposition_ok,
            "law_violations": [[law, _j(x), _j(y)] for law, x, y in self.law_violations],
            "A": sorted(map(_j, self.A), key=str),
            "ewf_a_failures": [_j(x) for x in self.ewf_a_failures],
            "hypotheses_hold": self.hypotheses_hold,
            "all_wellfounded": self.conclusion,
            "ill_founded": [_j(x) for x in self.ill_founded],
            "succ0_in_succ": self.succ0_in_succ,
            "sound": self.sound,
        }


def _j(x):
    return list(x) if isinstance(x, tuple) else x


def decomposition_violations(inst: PrincipleInstance, succ0) -> list[tuple[str, Any, Any]]:
    """Law (a): ``x ≻ y`` needs ``x ⊳ u ⪰ y`` for some ``u`` or ``x ≻₀ y``.
    Law (b): ``x ≻₀ y`` needs ``x ≻ u`` for every ``y ⊳ u``."""
    out = []
    for x in inst.carrier:
        for y in inst.carrier:
            x0y = succ0(x, y)
            if inst.succ(x, y) and not x0y and not any(u == y or inst.succ(u, y) for u in inst.below(x)):
                out.append(("a", x, y))
            if x0y and not all(inst.succ(x, u) for u in inst.below(y)):
                out.append(("b", x, y))
    return out


def a_set(inst: PrincipleInstance) -> frozenset:
    """``A = {x : every y with x ⊳ y is well-founded}``."""
    return frozenset(x for x in inst.carrier if all(inst.is_wf(y) for y in inst.below(x)))


def ewf_a_failures(inst: PrincipleInstance, rel, A: frozenset) -> list:
    """Elements of ``A`` that start an infinite ``rel``-chain staying in ``A``."""
    inside = [x for x in inst.carrier if x in A]
    ok = accessible_part(inside, lambda x: [y for y in inst.carrier if y in A and rel(x, y)])
    return [x for x in inside if x not in ok]


def stp_check(inst: PrincipleInstance) -> StpReport:
    if inst.succ0 is None:
        raise MissingRelation("stp_check needs succ0")
    succ0 = inst.succ0
    laws = decomposition_violations(inst, succ0)
    A = a_set(inst)
    failures = ewf_a_failures(inst, succ0, A)
    ill = [x for x in inst.carrier if not inst.is_wf(x)]
    in_succ = all(inst.succ(x, y) for x in inst.carrier for y in inst.carrier if succ0(x, y))
    return StpReport(laws, A, failures, ill, in_succ)


def induced_succ0(inst: PrincipleInstance) -> RelationSpec:
    """``x ≻₀ y :≡ x ≫ y ∧ ∀u (y ⊳ u → x ≻ u)``."""
    gg = inst.gg
    edges = [(x, y) for x in inst.carrier for y in inst.carrier
             if gg(x, y) and all(inst.succ(x, u) for u in inst.below(y))]
    return RelationSpec.from_edges(inst.carrier, edges, "≻₀(≫)")


@dataclass
class GlReport:
    split_failures: list[tuple[Any, Any]]
    sub_cycle: list | None
    inaccessible: list[Any]
    induced: RelationSpec
    stp: StpReport | None = field(default=None)

    @property
    def hypotheses_hold(self) -> bool:
        return not self.split_failures and self.sub_cycle is None and not self.inaccessible

    @property
    def conclusion(self) -> bool | None:
        return None if self.stp is None else self.stp.conclusion

    @property
    def sound(self) -> bool:
        if not self.hypotheses_hold:
            return True
        return self.stp is not None and self.stp.hypotheses_hold and self.stp.conclusion

    def to_json(self) -> dict:
        return {
            "split_failures": [[_j(x), _j(y)] for x, y in self.split_failures],
            "sub_wellfounded": self.sub_cycle is None,
            "inaccessible": [_j(x) for x in self.inaccessible],
            "hypotheses_hold": self.hypotheses_hold,
            "stp": self.stp.to_json() if self.stp else None,
            "sound": self.sound,
        }


def gl_check(inst: PrincipleInstance) -> GlReport:
    """Goubault-Larrecq style hypotheses, then the induced ``stp_check``."""
    if inst.gg is None:
        raise MissingRelation("gl_check needs gg")
    gg = inst.gg
    split = []
    for x in inst.carrier:
        for y in inst.carrier:
            if not inst.succ(x, y):
                continue
            via_sub = any(u == y or inst.succ(u, y) for u in inst.below(x))
            via_gg = gg(x, y) and all(inst.succ(x, u) for u in inst.below(y))
            if not (via_sub or via_gg):
                split.append((x, y))
    sub_cycle = find_cycle(inst.carrier, inst.sub_of)
    A = a_set(inst)
    inaccessible = ewf_a_failures(inst, gg, A)
    induced = induced_succ0(inst)
    report = GlReport(split, sub_cycle, inaccessible, induced)
    if report.hypotheses_hold:
        report.stp = stp_check(inst.with_relations(succ0=induced))
    return report
