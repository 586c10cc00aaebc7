"""Infinite sequences as a base function plus finite overrides."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Mapping, Sequence

DEFAULT_PROBES = 64


class LazySequence:
    """``α(n) = overrides[n]`` if present, else ``base(n)``; memoised.

    ``lasso = (p, c)`` records that ``α(i) == α(i + c)`` for every
    ``i >= p``.  Checkers use it to probe exactly ``p + c`` positions
    instead of a fuel bound.
    """

    __slots__ = ("base", "overrides", "lasso", "label", "_memo")

    def __init__(self, base: Callable[[int], Any], overrides: Mapping[int, Any] | None = None,
                 *, lasso: tuple[int, int] | None = None, label: str = ""):
        self.base = base
        self.overrides = dict(overrides or {})
        self.lasso = lasso
        self.label = label
        self._memo: dict[int, Any] = {}

    def __getitem__(self, n: int):
        if n < 0:
            raise IndexError(f"negative index {n}")
        try:
            return self._memo[n]
        except KeyError:
            pass
        value = self.overrides[n] if n in self.overrides else self.base(n)
        # concurrent probes may race here; they store the same value
        return self._memo.setdefault(n, value)

    def prefix(self, n: int) -> tuple:
        """The initial segment of length ``n``."""
        return tuple(self[i] for i in range(n))

    def horizon(self, default: int = DEFAULT_PROBES) -> int:
        """Positions ``0 .. horizon-1`` cover every distinct adjacent pair."""
        if self.lasso is None:
            return default
        p, c = self.lasso
        return p + c

    def with_overrides(self, changes: Mapping[int, Any]) -> "LazySequence":
        lasso = None
        if self.lasso is not None:
            p, c = self.lasso
            lasso = (max([p] + [i + 1 for i in changes]), c)
        return LazySequence(self.base, {**self.overrides, **changes}, lasso=lasso)

    def __repr__(self) -> str:
        if self.label:
            return f"LazySequence({self.label})"
        if self.lasso is not None:
            p, c = self.lasso
            head = ",".join(map(str, self.prefix(p)))
            loop = ",".join(map(str, (self[i] for i in range(p, p + c))))
            return f"LazySequence({head};{loop})"
        return f"LazySequence({','.join(map(str, self.prefix(5)))},...)"

    def describe(self) -> str:
        """``prefix;cycle`` for lasso sequences, as accepted by :func:`parse_alpha`."""
        return repr(self)[len("LazySequence("):-1]

    @classmethod
    def from_lasso(cls, prefix: Sequence, cycle: Sequence) -> "LazySequence":
        prefix, cycle = tuple(prefix), tuple(cycle)
        if not cycle:
            raise ValueError("a lasso needs a nonempty cycle")
        p, c = len(prefix), len(cycle)

        def base(n: int):
            return prefix[n] if n < p else cycle[(n - p) % c]

        return cls(base, lasso=(p, c))

    @classmethod
    def eventually_constant(cls, prefix: Sequence, tail) -> "LazySequence":
        return cls.from_lasso(prefix, (tail,))

    @classmethod
    def constant(cls, x) -> "LazySequence":
        return cls.from_lasso((), (x,))

    @classmethod
    def from_function(cls, f: Callable[[int], Any], label: str = "") -> "LazySequence":
        return cls(f, label=label)


def splice(alpha: LazySequence, n: int, y, beta: LazySequence) -> LazySequence:
    """``ᾱn * y * β``: ``α`` below ``n``, then ``y``, then ``β`` from its start."""

    def base(i: int):
        if i < n:
            return alpha[i]
        return beta[i - n - 1]

    lasso = None
    if beta.lasso is not None:
        p, c = beta.lasso
        lasso = (n + 1 + p, c)
    return LazySequence(base, {n: y}, lasso=lasso)


def shift(alpha: LazySequence, k: int) -> LazySequence:
    """``α`` with its first ``k`` elements dropped."""
    lasso = None
    if alpha.lasso is not None:
        p, c = alpha.lasso
        lasso = (max(p - k, 0), c)
    return LazySequence(lambda i: alpha[i + k], lasso=lasso)


def extend_with(prefix: Sequence, beta: LazySequence) -> LazySequence:
    """``a * β`` for a finite ``a``."""
    k = len(prefix)
    lasso = None
    if beta.lasso is not None:
        p, c = beta.lasso
        lasso = (k + p, c)
    return LazySequence(lambda i: beta[i - k], dict(enumerate(prefix)), lasso=lasso)


def is_prefix(a: Sequence, b: Sequence) -> bool:
    """``a ◀ b`` for finite sequences."""
    return len(a) <= len(b) and tuple(b[:len(a)]) == tuple(a)


def lasso_family(carrier: Sequence, max_prefix: int, max_cycle: int) -> Iterator[LazySequence]:
    """Every lasso sequence with prefix and cycle lengths within the bounds."""
    for p in range(max_prefix + 1):
        for head in itertools.product(carrier, repeat=p):
            for c in range(1, max_cycle + 1):
                for loop in itertools.product(carrier, repeat=c):
                    yield LazySequence.from_lasso(head, loop)


@dataclass(frozen=True)
class OpenPredicate:
    """``U(α) := ∃n B(ᾱn)`` for a kernel ``B`` on finite sequences."""

    kernel: Callable[[tuple], bool]

    def first_bar(self, alpha: LazySequence, fuel: int = DEFAULT_PROBES) -> int | None:
        for n in range(fuel + 1):
            if self.kernel(alpha.prefix(n)):
                return n
        return None

    def holds(self, alpha: LazySequence, fuel: int = DEFAULT_PROBES) -> bool:
        return self.first_bar(alpha, fuel) is not None

    @classmethod
    def non_descent(cls, succ: Callable) -> "OpenPredicate":
        """The kernel ``s[-2] ⊁ s[-1]`` whose open predicate is sWF."""
        return cls(lambda s: len(s) >= 2 and not succ(s[-2], s[-1]))


def parse_alpha(spec: str) -> LazySequence:
    """``"5,4,3;7"`` is 5,4,3 then 7 forever; ``";0"`` is constant 0.

    More than one element after ``;`` repeats periodically.
    """
    head, sep, loop = spec.partition(";")
    if not sep:
        raise ValueError(f"sequence spec {spec!r} needs ';' before the repeating tail")

    def ints(part: str) -> list[int]:
        part = part.strip()
        return [int(v) for v in part.split(",")] if part else []

    cycle = ints(loop)
    if not cycle:
        raise ValueError(f"sequence spec {spec!r} has an empty repeating tail")
    return LazySequence.from_lasso(ints(head), cycle)
