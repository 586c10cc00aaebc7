"""First-order terms over a finite signature.

Terms are immutable and compared syntactically.  Constants are printed
without parentheses, so ``s(0)`` is the application of ``s/1`` to the
constant ``0``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

MAX_HEIGHT = 12

Position = tuple[int, ...]


class ResourceError(RuntimeError):
    """A configured size cap was hit."""


class ParseError(ValueError):
    def __init__(self, message: str, token: str = "", position: int = -1):
        self.message = message
        self.token = token
        self.position = position
        where = f" at position {position}" if position >= 0 else ""
        shown = f" (token {token!r})" if token else ""
        super().__init__(f"{message}{where}{shown}")


class TermSyntaxError(ParseError):
    pass


class UnknownSymbolError(ParseError):
    pass


class ArityError(ParseError):
    pass


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate symbol names in {names}")
        for name, arity in self.symbols:
            if arity < 0:
                raise ValueError(f"negative arity for {name}")
        object.__setattr__(self, "_arity", dict(self.symbols))
        object.__setattr__(self, "_order", {name: i for i, name in enumerate(names)})

    @classmethod
    def of(cls, *decls: str | tuple[str, int]) -> "Signature":
        """Build from ``"name/arity"`` strings or ``(name, arity)`` pairs."""
        out = []
        for d in decls:
            if isinstance(d, str):
                name, _, arity = d.rpartition("/")
                out.append((name, int(arity)))
            else:
                out.append((d[0], int(d[1])))
        return cls(tuple(out))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    def arity(self, name: str) -> int:
        return self._arity[name]

    def index(self, name: str) -> int:
        return self._order[name]

    def __contains__(self, name: object) -> bool:
        return name in self._arity

    def constants(self) -> list[str]:
        return [name for name, arity in self.symbols if arity == 0]

    def extended(self, *decls: tuple[str, int]) -> "Signature":
        return Signature(self.symbols + tuple(decls))

    def check(self, t: "Term") -> None:
        """Raise if ``t`` uses an undeclared symbol or a wrong arity."""
        for u in subterms(t):
            if isinstance(u, App):
                if u.symbol not in self._arity:
                    raise UnknownSymbolError("unknown symbol", u.symbol)
                if self._arity[u.symbol] != len(u.args):
                    raise ArityError(
                        f"{u.symbol} expects {self._arity[u.symbol]} arguments, got {len(u.args)}",
                        u.symbol,
                    )


class Term:
    """Base class of :class:`Var` and :class:`App`."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


@dataclass(frozen=True, slots=True)
class App(Term):
    symbol: str
    args: tuple[Term, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return f"{self.symbol}({','.join(map(str, self.args))})"

    def __repr__(self) -> str:
        return f"App({str(self)!r})"


@dataclass(frozen=True, slots=True)
class Hole(Term):
    """The distinguished hole marker of a :class:`Context`."""

    def __str__(self) -> str:
        return "[]"


HOLE = Hole()

Substitution = Mapping[str, Term]


def app(symbol: str, *args: Term) -> App:
    return App(symbol, tuple(args))


def height(t: Term) -> int:
    if isinstance(t, App) and t.args:
        return 1 + max(height(a) for a in t.args)
    return 0


def size(t: Term) -> int:
    if isinstance(t, App):
        return 1 + sum(size(a) for a in t.args)
    return 1


def variables(t: Term) -> set[str]:
    return {u.name for u in subterms(t) if isinstance(u, Var)}


def is_ground(t: Term) -> bool:
    return not variables(t)


def immediate_subterms(t: Term) -> list[Term]:
    if isinstance(t, App):
        return list(t.args)
    return []


def is_immediate_subterm(t: Term, u: Term) -> bool:
    """``t ⊳ u`` for the immediate subterm relation."""
    return isinstance(t, App) and u in t.args


def subterms(t: Term) -> Iterator[Term]:
    """All subterms of ``t`` in pre-order (outermost-leftmost first)."""
    for _, u in positions(t):
        yield u


def positions(t: Term) -> Iterator[tuple[Position, Term]]:
    stack: list[tuple[Position, Term]] = [((), t)]
    while stack:
        pos, u = stack.pop()
        yield pos, u
        if isinstance(u, App):
            for i in range(len(u.args) - 1, -1, -1):
                stack.append((pos + (i,), u.args[i]))


def subterm_at(t: Term, pos: Position) -> Term:
    for i in pos:
        if not isinstance(t, App):
            raise IndexError(f"no position {pos}")
        t = t.args[i]
    return t


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    if not pos:
        return new
    if not isinstance(t, App):
        raise IndexError(f"no position {pos}")
    i, rest = pos[0], pos[1:]
    args = list(t.args)
    args[i] = replace_at(args[i], rest, new)
    return App(t.symbol, tuple(args))


def apply_substitution(t: Term, sigma: Substitution) -> Term:
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if isinstance(t, App) and t.args:
        return App(t.symbol, tuple(apply_substitution(a, sigma) for a in t.args))
    return t


@dataclass(frozen=True)
class Context:
    term: Term

    def __post_init__(self):
        holes = [pos for pos, u in positions(self.term) if isinstance(u, Hole)]
        if len(holes) != 1:
            raise ValueError(f"a context needs exactly one hole, found {len(holes)}")
        object.__setattr__(self, "hole", holes[0])

    @classmethod
    def at(cls, t: Term, pos: Position) -> "Context":
        return cls(replace_at(t, pos, HOLE))

    def plug(self, t: Term) -> Term:
        return replace_at(self.term, self.hole, t)

    def __str__(self) -> str:
        return str(self.term)


def enumerate_ground_terms(sig: Signature, depth: int, *, max_height: int = MAX_HEIGHT) -> list[Term]:
    """All ground terms of height at most ``depth``.

    Ordered by height, then symbol declaration order, then arguments
    lexicographically by their own position in this list.
    """
    if depth > max_height:
        raise ResourceError(f"depth {depth} exceeds the height cap {max_height}")
    if depth < 0:
        return []
    universe: list[Term] = [App(c) for c in sig.constants()]
    if not universe:
        return []
    level_start = 0
    for _ in range(depth):
        lower = universe[:]  # all terms of height < h, in order
        fresh = set(range(level_start, len(lower)))
        level_start = len(universe)
        for name, arity in sig.symbols:
            if arity == 0:
                continue
            for idx in itertools.product(range(len(lower)), repeat=arity):
                if any(i in fresh for i in idx):
                    universe.append(App(name, tuple(lower[i] for i in idx)))
    return universe


_TOKEN = re.compile(r"\s*(?:(?P<punct>[(),])|(?P<name>(?:[^\s(),\-]|-(?!>))+))")


def tokenize(text: str, offset: int = 0) -> list[tuple[str, int]]:
    """Split ``text`` into names and ``( ) ,`` with character offsets."""
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = text[pos:].lstrip()
            start = len(text) - len(bad)
            raise TermSyntaxError("unexpected character", bad[:2], offset + start)
        kind = "punct" if m.group("punct") else "name"
        out.append((m.group(kind), offset + m.start(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: Sequence[tuple[str, int]], end: int):
        self.tokens = tokens
        self.i = 0
        self.end = end

    def peek(self) -> tuple[str, int]:
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("", self.end)

    def take(self) -> tuple[str, int]:
        tok = self.peek()
        if not tok[0]:
            raise TermSyntaxError("unexpected end of input", "", tok[1])
        self.i += 1
        return tok

    def raw(self) -> tuple:
        """Parse ``name`` or ``name(t1,...,tn)`` into ``(name, pos, args)``."""
        name, pos = self.take()
        if name in "(),":
            raise TermSyntaxError("expected a name", name, pos)
        args = []
        if self.peek()[0] == "(":
            self.take()
            args.append(self.raw())
            while self.peek()[0] == ",":
                self.take()
                args.append(self.raw())
            tok, tpos = self.take()
            if tok != ")":
                raise TermSyntaxError("expected ')' or ','", tok, tpos)
            if not args:
                raise TermSyntaxError("empty argument list", name, pos)
        return (name, pos, args)


def parse_raw(text: str) -> tuple:
    p = _Parser(tokenize(text), len(text))
    tree = p.raw()
    tok, pos = p.peek()
    if tok:
        raise TermSyntaxError("trailing input", tok, pos)
    return tree


def build_term(raw: tuple, sig: Signature, vars: Iterable[str], *, max_height: int = MAX_HEIGHT) -> Term:
    vars = set(vars)

    def go(node, depth):
        name, pos, args = node
        if depth > max_height:
            raise ResourceError(f"term deeper than the height cap {max_height}")
        if name in vars:
            if args:
                raise TermSyntaxError("variable applied to arguments", name, pos)
            return Var(name)
        if name not in sig:
            raise UnknownSymbolError("unknown symbol", name, pos)
        if sig.arity(name) != len(args):
            raise ArityError(f"{name} expects {sig.arity(name)} arguments, got {len(args)}", name, pos)
        return App(name, tuple(go(a, depth + 1) for a in args))

    return go(raw, 0)


def parse_term(text: str, sig: Signature, vars: Iterable[str] = (), *, max_height: int = MAX_HEIGHT) -> Term:
    return build_term(parse_raw(text), sig, vars, max_height=max_height)
