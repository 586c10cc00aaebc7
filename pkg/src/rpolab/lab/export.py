"""Finite instances read off a recursive path order on a ground universe."""

from __future__ import annotations

from typing import Sequence

from ..rpo import RpoInstance
from ..terms import Term, immediate_subterms
from .instance import PrincipleInstance


def rpo_principle_instance(rpo: RpoInstance, universe: Sequence[Term], *, with_gg: bool = True) -> PrincipleInstance:
    """Carrier = printed terms; ``≻`` = RPO, ``⊳`` = immediate subterm, ``≻₀`` = RPO without clause (i).

    ``≫`` is set to ``≻₀`` when ``with_gg`` is true.  Subterms outside
    the universe are dropped, which cannot happen for a full height
    enumeration.
    """
    names = [str(t) for t in universe]
    members = set(names)
    succ, sub, succ0 = [], [], []
    for t, a in zip(universe, names):
        sub += [(a, b) for b in sorted({str(u) for u in immediate_subterms(t)}) if b in members]
        for s, b in zip(universe, names):
            if rpo.gt(t, s):
                succ.append((a, b))
            if rpo.gt0(t, s):
                succ0.append((a, b))
    return PrincipleInstance.from_edges(names, succ, sub, succ0, succ0 if with_gg else None)
