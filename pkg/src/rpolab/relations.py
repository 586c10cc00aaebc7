"""Decidable binary relations, their liftings, and acyclicity checks."""

from __future__ import annotations

import enum
import itertools
import json
import operator
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence


class CarrierNotFinite(ValueError):
    pass


def _freeze(x: Any) -> Any:
    """JSON lists become tuples so they can live in sets."""
    if isinstance(x, list):
        return tuple(_freeze(v) for v in x)
    return x


@dataclass(eq=False)
class RelationSpec:
    """A binary relation ``holds(x, y)`` over an optional finite carrier.

    ``kind`` is ``"finite"`` for an enumerated domain, ``"terms"`` for a
    bounded ground-term universe and ``"abstract"`` when only the
    predicate is known.
    """

    holds: Callable[[Any, Any], bool]
    carrier: tuple | None = None
    kind: str = "finite"
    name: str = ""
    _succ: dict | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.carrier is None:
            self.kind = "abstract"
        else:
            self.carrier = tuple(self.carrier)

    @classmethod
    def from_edges(cls, carrier: Iterable, edges: Iterable[tuple], name: str = "") -> "RelationSpec":
        carrier = tuple(carrier)
        edge_set = frozenset((x, y) for x, y in edges)
        rel = cls(lambda x, y: (x, y) in edge_set, carrier, "finite", name)
        succ: dict = {x: [] for x in carrier}
        for x in carrier:
            for y in carrier:
                if (x, y) in edge_set:
                    succ[x].append(y)
        rel._succ = succ
        return rel

    @classmethod
    def from_json(cls, doc: dict | str, name: str = "") -> "RelationSpec":
        """Read ``{"carrier": [...], "edges": [[x, y], ...]}``."""
        if isinstance(doc, str):
            doc = json.loads(doc)
        carrier = [_freeze(x) for x in doc["carrier"]]
        members = set(carrier)
        edges = []
        for e in doc["edges"]:
            x, y = _freeze(e[0]), _freeze(e[1])
            if x not in members or y not in members:
                raise ValueError(f"edge {e} leaves the carrier")
            edges.append((x, y))
        return cls.from_edges(carrier, edges, name)

    def to_json(self) -> dict:
        return {"carrier": list(self._require_carrier()), "edges": [list(e) for e in self.edges()]}

    def __call__(self, x, y) -> bool:
        return bool(self.holds(x, y))

    def _require_carrier(self) -> tuple:
        if self.carrier is None:
            raise CarrierNotFinite(f"relation {self.name or '<anonymous>'} has no finite carrier")
        return self.carrier

    def successors(self, x) -> list:
        if self._succ is None:
            carrier = self._require_carrier()
            self._succ = {a: [b for b in carrier if self.holds(a, b)] for a in carrier}
        return self._succ[x]

    def edges(self) -> list[tuple]:
        return [(x, y) for x in self._require_carrier() for y in self.successors(x)]


def as_relation(r: RelationSpec | Callable) -> Callable[[Any, Any], bool]:
    return r if callable(r) else r.holds


def greater_than(carrier: Iterable[int]) -> RelationSpec:
    """``>`` on a finite set of integers."""
    return RelationSpec(operator.gt, tuple(carrier), "finite", ">")


def multiset_cover(base: Callable, xs: Sequence, ys: Sequence) -> tuple[list, list] | None:
    """Witness for the Dershowitz-Manna extension of ``base``, or ``None``.

    Returns ``(kept, covered)``: ``kept`` pairs ``(i, j)`` with
    ``xs[i] == ys[j]`` are left untouched, every other ``ys[j]`` appears
    in ``covered`` as ``(i, j)`` with ``base(xs[i], ys[j])`` for some removed
    ``xs[i]``; at least one ``xs`` element is removed.
    """
    # Elements shared by both sides may or may not be kept; try every
    # choice, largest first (for a strict order keeping all is optimal).
    ys_left = list(range(len(ys)))
    shared = []
    for i, x in enumerate(xs):
        for j in ys_left:
            if ys[j] == x:
                shared.append((i, j))
                ys_left.remove(j)
                break
    for k in range(len(shared), -1, -1):
        for kept in itertools.combinations(shared, k):
            kept_x = {i for i, _ in kept}
            kept_y = {j for _, j in kept}
            removed = [i for i in range(len(xs)) if i not in kept_x]
            if not removed:
                continue
            covered = []
            for j in range(len(ys)):
                if j in kept_y:
                    continue
                i = next((i for i in removed if base(xs[i], ys[j])), None)
                if i is None:
                    break
                covered.append((i, j))
            else:
                return list(kept), covered
    return None


def multiset_ext(base: Callable, xs: Sequence, ys: Sequence) -> bool:
    return multiset_cover(base, xs, ys) is not None


def lex_index(base: Callable, xs: Sequence, ys: Sequence, eq: Callable = operator.eq) -> int | None:
    """First index where ``xs`` strictly decreases after an equal prefix."""
    if len(xs) != len(ys):
        raise ValueError(f"lexicographic comparison needs equal lengths, got {len(xs)} and {len(ys)}")
    for i, (x, y) in enumerate(zip(xs, ys)):
        if eq(x, y):
            continue
        return i if base(x, y) else None
    return None


def lex_ext(base: Callable, xs: Sequence, ys: Sequence, eq: Callable = operator.eq) -> bool:
    return lex_index(base, xs, ys, eq) is not None


def find_cycle(nodes: Iterable[Hashable], succ: Callable[[Any], Iterable]) -> list | None:
    """A cycle ``[x0, x1, ..., x0]`` in the graph, or ``None``.

    Iterative three-colour DFS, so deep graphs do not hit the recursion
    limit.
    """
    WHITE, GREY, BLACK = 0, 1, 2
    colour: dict = {}
    for root in nodes:
        if colour.get(root, WHITE) != WHITE:
            continue
        colour[root] = GREY
        path = [root]
        stack = [iter(succ(root))]
        while stack:
            nxt = next(stack[-1], _DONE)
            if nxt is _DONE:
                stack.pop()
                colour[path.pop()] = BLACK
                continue
            c = colour.get(nxt, WHITE)
            if c == GREY:
                return path[path.index(nxt):] + [nxt]
            if c == WHITE:
                colour[nxt] = GREY
                path.append(nxt)
                stack.append(iter(succ(nxt)))
    return None


_DONE = object()


def is_wellfounded_finite(r: RelationSpec) -> tuple[bool, list | None]:
    """On a finite carrier, well-founded means acyclic."""
    carrier = r._require_carrier()
    cycle = find_cycle(carrier, r.successors)
    return cycle is None, cycle


class Lifting(enum.Enum):
    LEX = "lex"
    MUL = "mul"

    def compare(self, base: Callable, xs: Sequence, ys: Sequence) -> bool:
        if self is Lifting.LEX:
            return lex_ext(base, xs, ys)
        return multiset_ext(base, xs, ys)

    def extend(self, base: RelationSpec, n: int) -> RelationSpec:
        """The lifted relation on ``n``-tuples over ``base``'s carrier."""
        carrier = tuple(itertools.product(base._require_carrier(), repeat=n))
        return RelationSpec(lambda xs, ys: self.compare(base, xs, ys), carrier, "finite",
                            f"{self.value}^{n}({base.name})")


@dataclass
class LiftingCheck:
    sample: str
    outcome: str  # "pass" | "fail" | "skipped"
    cycle: list | None = None


@dataclass
class LiftingReport:
    lifting: Lifting
    arity: int
    entries: list[LiftingCheck]

    @property
    def ok(self) -> bool:
        return all(e.outcome != "fail" for e in self.entries)


def check_lifting_law(lift: Lifting, n: int, samples: Sequence[RelationSpec]) -> LiftingReport:
    entries = []
    for k, base in enumerate(samples):
        label = base.name or f"sample{k}"
        if not is_wellfounded_finite(base)[0]:
            entries.append(LiftingCheck(label, "skipped"))
            continue
        ok, cycle = is_wellfounded_finite(lift.extend(base, n))
        entries.append(LiftingCheck(label, "pass" if ok else "fail", cycle))
    return LiftingReport(lift, n, entries)
