"""Finite instances ``(ρ, ≻, ⊳[, ≻₀][, ≫])`` and the basic predicates on them.

Over a finite carrier every infinite quantifier in sWF, eWF, MIN and eMIN
reduces to a graph question: an element is well-founded exactly when no
``≻``-cycle is reachable from it.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Sequence

from ..relations import RelationSpec, _freeze, find_cycle
from .sequences import LazySequence, shift, splice

CARRIER_CAP = 12


class InvalidInstance(ValueError):
    pass


def accessible_part(nodes: Iterable, successors: Callable[[Any], Iterable]) -> set:
    """Elements from which every descending path is finite."""
    nodes = list(nodes)
    members = set(nodes)
    pending = {}
    preds: dict = defaultdict(list)
    for x in nodes:
        succ = {y for y in successors(x) if y in members}
        pending[x] = len(succ)
        for y in succ:
            preds[y].append(x)
    queue = [x for x in nodes if pending[x] == 0]
    done = set()
    while queue:
        x = queue.pop()
        done.add(x)
        for p in preds[x]:
            pending[p] -= 1
            if pending[p] == 0:
                queue.append(p)
    return done


@dataclass(eq=False)
class PrincipleInstance:
    carrier: tuple
    succ: RelationSpec
    sub: RelationSpec
    succ0: RelationSpec | None = None
    gg: RelationSpec | None = None
    validate: bool = True
    _wf: set | None = field(default=None, repr=False)

    def __post_init__(self):
        self.carrier = tuple(self.carrier)
        if len(set(self.carrier)) != len(self.carrier):
            raise InvalidInstance("carrier has duplicates")
        if self.validate:
            cycle = find_cycle(self.carrier, self.sub_of)
            if cycle is not None:
                raise InvalidInstance(f"subterm relation is not well-founded: {' ⊳ '.join(map(str, cycle))}")

    @classmethod
    def from_edges(cls, carrier: Iterable, succ: Iterable = (), sub: Iterable = (),
                   succ0: Iterable | None = None, gg: Iterable | None = None, **kw) -> "PrincipleInstance":
        carrier = tuple(carrier)
        rel = lambda edges, name: None if edges is None else RelationSpec.from_edges(carrier, edges, name)
        return cls(carrier, rel(succ, "≻"), rel(sub, "⊳"), rel(succ0, "≻₀"), rel(gg, "≫"), **kw)

    @classmethod
    def from_json(cls, doc: dict | str) -> "PrincipleInstance":
        """``{"carrier": [...], "succ": [[x,y]..], "sub": [[..]], "succ0"?: .., "gg"?: ..}``."""
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            carrier = [_freeze(x) for x in doc["carrier"]]
            members = set(carrier)

            def edges(key):
                if key not in doc or doc[key] is None:
                    return None
                out = []
                for e in doc[key]:
                    if len(e) != 2:
                        raise InvalidInstance(f"{key}: edge {e} is not a pair")
                    x, y = _freeze(e[0]), _freeze(e[1])
                    if x not in members or y not in members:
                        raise InvalidInstance(f"{key}: edge {e} leaves the carrier")
                    out.append((x, y))
                return out

            return cls.from_edges(carrier, edges("succ") or [], edges("sub") or [], edges("succ0"), edges("gg"))
        except (KeyError, TypeError) as err:
            raise InvalidInstance(f"malformed instance document: {err}") from None

    def to_json(self) -> dict:
        doc = {"carrier": list(self.carrier), "succ": [list(e) for e in self.succ.edges()],
               "sub": [list(e) for e in self.sub.edges()]}
        if self.succ0 is not None:
            doc["succ0"] = [list(e) for e in self.succ0.edges()]
        if self.gg is not None:
            doc["gg"] = [list(e) for e in self.gg.edges()]
        return doc

    def succ_of(self, x) -> list:
        return self.succ.successors(x)

    def sub_of(self, x) -> list:
        return self.sub.successors(x)

    def below(self, x) -> list:
        """Everything ``y`` with ``x ⊳ y``."""
        return self.sub.successors(x)

    @property
    def wellfounded_part(self) -> set:
        if self._wf is None:
            self._wf = accessible_part(self.carrier, self.succ_of)
        return self._wf

    def is_wf(self, x) -> bool:
        return x in self.wellfounded_part

    def all_wf(self) -> bool:
        return len(self.wellfounded_part) == len(self.carrier)

    def extends_bad(self, prefix: Sequence) -> bool:
        """Some ``≻``-descending infinite sequence starts with ``prefix``."""
        if not prefix:
            return not self.all_wf()
        if any(not self.succ(a, b) for a, b in zip(prefix, prefix[1:])):
            return False
        return not self.is_wf(prefix[-1])

    def with_relations(self, **changes) -> "PrincipleInstance":
        fields = dict(carrier=self.carrier, succ=self.succ, sub=self.sub, succ0=self.succ0, gg=self.gg,
                      validate=False)
        fields.update(changes)
        return PrincipleInstance(**fields)


# -- outcomes ---------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    n: int


@dataclass(frozen=True)
class Unknown:
    fuel: int


@dataclass(frozen=True)
class Yes:
    pass


@dataclass(frozen=True)
class CounterChain:
    chain: tuple

    def as_sequence(self) -> LazySequence:
        """The bad lasso that repeats the chain's final loop forever."""
        *walk, last = self.chain
        j = walk.index(last)
        return LazySequence.from_lasso(walk[:j], walk[j:])


def swf(inst: PrincipleInstance, alpha: LazySequence, fuel: int | None = None,
        relation: Callable | None = None) -> Witness | Unknown:
    """Least ``n <= fuel`` with ``α(n) ⊁ α(n+1)``.

    Without ``fuel`` a lasso sequence is probed exactly over its
    horizon, anything else for ``DEFAULT_PROBES`` positions.
    """
    rel = relation or inst.succ
    if fuel is None:
        fuel = alpha.horizon()
    for n in range(fuel + 1):
        if not rel(alpha[n], alpha[n + 1]):
            return Witness(n)
    return Unknown(fuel)


def ewf(inst: PrincipleInstance, x) -> Yes | CounterChain:
    """``Yes`` when no ``≻``-cycle is reachable from ``x``, else a pumping chain."""
    if inst.is_wf(x):
        return Yes()
    chain = [x]
    seen = {x: 0}
    while True:
        nxt = next(y for y in inst.succ_of(chain[-1]) if not inst.is_wf(y))
        chain.append(nxt)
        if nxt in seen:
            return CounterChain(tuple(chain))
        seen[nxt] = len(chain) - 1


def bad_sequence_from(inst: PrincipleInstance, x) -> LazySequence | None:
    out = ewf(inst, x)
    return out.as_sequence() if isinstance(out, CounterChain) else None


def descent_tails(inst: PrincipleInstance, y) -> Iterator[LazySequence]:
    """Tails after a spliced ``y``: the constant one, plus a bad one if ``y`` has it.

    On a finite carrier these two decide every ``sWF`` question about
    ``prefix * y * tail``.
    """
    yield LazySequence.constant(y)
    bad = bad_sequence_from(inst, y)
    if bad is not None:
        yield shift(bad, 1)


def lex_below(inst: PrincipleInstance, alpha: LazySequence, n_max: int | None = None,
              tails: Callable[[PrincipleInstance, Any], Iterable[LazySequence]] = descent_tails,
              ) -> Iterator[tuple[int, Any, LazySequence]]:
    """Sequences ``β = ᾱn * y * τ`` with ``α(n) ⊳ y``, for ``n < n_max``."""
    if n_max is None:
        n_max = alpha.horizon() + 1
    for n in range(n_max):
        for y in inst.below(alpha[n]):
            for tail in tails(inst, y):
                yield n, y, splice(alpha, n, y, tail)


def min_counterexample(inst: PrincipleInstance, alpha: LazySequence,
                       scope: Iterable | None = None) -> LazySequence | None:
    if scope is None:
        scope = (beta for _, _, beta in lex_below(inst, alpha))
    for beta in scope:
        if isinstance(beta, tuple):
            beta = beta[-1]
        if isinstance(swf(inst, beta), Unknown):
            return beta
    return None


def min_check(inst: PrincipleInstance, alpha: LazySequence, scope: Iterable | None = None) -> bool:
    """MIN(α) over ``scope`` (default: the exact finite-carrier scope)."""
    return min_counterexample(inst, alpha, scope) is None


def emin_failure(inst: PrincipleInstance, alpha: LazySequence, fuel: int | None = None) -> tuple[int, Any] | None:
    if fuel is None:
        fuel = alpha.horizon()
    for n in range(fuel + 1):
        for y in inst.below(alpha[n]):
            if n > 0 and not inst.succ(alpha[n - 1], y):
                continue
            if not inst.is_wf(y):
                return n, y
    return None


def emin_check(inst: PrincipleInstance, alpha: LazySequence, fuel: int | None = None) -> bool:
    """eMIN(α) for ``n <= fuel``; at ``n = 0`` only ``α(0) ⊳ y`` is required."""
    return emin_failure(inst, alpha, fuel) is None


def require_small(inst: PrincipleInstance, cap: int = CARRIER_CAP) -> None:
    from ..terms import ResourceError

    if len(inst.carrier) > cap:
        raise ResourceError(f"carrier of size {len(inst.carrier)} exceeds the cap {cap}")
