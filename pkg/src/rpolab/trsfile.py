"""Reader for the old TPDB-style TRS text format::

    # comment
    (VAR x y)
    (RULES
      ack(0,y) -> s(y)
      ack(s(x),0) -> ack(x,s(0))
    )

The signature is inferred from the rules in order of first occurrence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .rewriting import Rule, Trs
from .terms import ArityError, ParseError, Signature, TermSyntaxError, _Parser, build_term

_TOKEN = re.compile(r"\s*(?:(?P<tok>->|[(),])|(?P<name>(?:[^\s(),\-]|-(?!>))+))")


def _strip_comments(text: str) -> str:
    # keep offsets stable: blank out comment characters instead of deleting
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = len(text) - len(text[pos:].lstrip())
            raise TermSyntaxError("unexpected character", text[start:start + 1], start)
        kind = "tok" if m.group("tok") else "name"
        out.append((m.group(kind), m.start(kind)))
        pos = m.end()
    return out


@dataclass(frozen=True)
class TrsFile:
    variables: tuple[str, ...]
    trs: Trs

    @property
    def signature(self) -> Signature:
        return self.trs.signature

    def dump(self) -> str:
        lines = [f"(VAR {' '.join(self.variables)})", "(RULES"]
        lines += [f"  {r}" for r in self.trs.rules]
        lines.append(")")
        return "\n".join(lines) + "\n"


def _with_location(err: ParseError, text: str) -> ParseError:
    if err.position < 0:
        return err
    line, col = _line_col(text, err.position)
    located = type(err)(f"{err.message} (line {line}, column {col})", err.token, -1)
    located.position = err.position
    located.line, located.column = line, col
    return located


def parse_trs(text: str) -> TrsFile:
    try:
        return _parse_trs(text)
    except ParseError as err:
        raise _with_location(err, text) from None


def _parse_trs(text: str) -> TrsFile:
    text = _strip_comments(text)
    tokens = _tokenize(text)
    p = _Parser(tokens, len(text))

    def expect(value: str):
        tok, pos = p.take()
        if tok != value:
            raise TermSyntaxError(f"expected {value!r}", tok, pos)

    variables: list[str] = []
    expect("(")
    head, pos = p.take()
    if head == "VAR":
        while p.peek()[0] not in (")", ""):
            name, npos = p.take()
            if name in ("(", ",", "->"):
                raise TermSyntaxError("expected a variable name", name, npos)
            variables.append(name)
        expect(")")
        expect("(")
        head, pos = p.take()
    if head != "RULES":
        raise TermSyntaxError("expected RULES", head, pos)

    raw_rules = []
    while p.peek()[0] != ")":
        if not p.peek()[0]:
            raise TermSyntaxError("unterminated RULES block", "", p.peek()[1])
        lhs = p.raw()
        expect("->")
        rhs = p.raw()
        raw_rules.append((lhs, rhs))
    expect(")")
    tok, pos = p.peek()
    if tok:
        raise TermSyntaxError("trailing input after RULES block", tok, pos)

    var_set = set(variables)
    arities: dict[str, int] = {}

    def collect(node):
        name, npos, args = node
        if name in var_set:
            if args:
                raise TermSyntaxError("variable applied to arguments", name, npos)
            return
        if name == "->":
            raise TermSyntaxError("misplaced '->'", name, npos)
        known = arities.setdefault(name, len(args))
        if known != len(args):
            raise ArityError(f"{name} used with {len(args)} arguments, earlier with {known}", name, npos)
        for a in args:
            collect(a)

    for lhs, rhs in raw_rules:
        collect(lhs)
        collect(rhs)
    sig = Signature(tuple(arities.items()))
    rules = []
    for k, (lhs, rhs) in enumerate(raw_rules):
        l = build_term(lhs, sig, var_set)
        r = build_term(rhs, sig, var_set)
        try:
            rules.append(Rule(l, r))
            Trs(sig, (rules[-1],))
        except ValueError as err:
            raise TermSyntaxError(str(err), lhs[0], lhs[1]) from None
    return TrsFile(tuple(variables), Trs(sig, tuple(rules)))


def load_trs(path: str | Path) -> TrsFile:
    return parse_trs(Path(path).read_text())
