from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from rpolab.terms import (HOLE, ArityError, Context, ResourceError, Signature, TermSyntaxError,
                          UnknownSymbolError, Var, app, apply_substitution, enumerate_ground_terms, height,
                          is_immediate_subterm, parse_term, positions, replace_at, size, subterm_at, subterms)

SIG = Signature.of("0/0", "s/1", "ack/2")
ZERO = app("0")


def s(t):
    return app("s", t)


def ground_terms(max_leaves=6):
    return st.recursive(st.just(ZERO),
                        lambda inner: st.one_of(inner.map(s), st.tuples(inner, inner).map(lambda p: app("ack", *p))),
                        max_leaves=max_leaves)


def test_parse_and_print_roundtrip():
    t = parse_term("ack(s(0), ack(x, 0))", SIG, ["x"])
    assert t == app("ack", s(ZERO), app("ack", Var("x"), ZERO))
    assert str(t) == "ack(s(0),ack(x,0))"


@pytest.mark.parametrize("text,err", [
    ("ack(0)", ArityError),
    ("f(0)", UnknownSymbolError),
    ("s(0", TermSyntaxError),
    ("s()", TermSyntaxError),
    ("s(0) 0", TermSyntaxError),
    ("x(0)", TermSyntaxError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_term(text, SIG, ["x"])


def test_parse_error_reports_position():
    with pytest.raises(UnknownSymbolError) as info:
        parse_term("s(foo)", SIG)
    assert info.value.position == 2 and info.value.token == "foo"


def test_height_cap():
    deep = "s(" * 13 + "0" + ")" * 13
    with pytest.raises(ResourceError):
        parse_term(deep, SIG)
    assert height(parse_term("s(" * 12 + "0" + ")" * 12, SIG)) == 12


def test_height_and_size():
    t = parse_term("ack(s(0),0)", SIG)
    assert height(t) == 2 and size(t) == 4
    assert height(ZERO) == 0 and height(Var("x")) == 0


def _brute_universe(depth):
    """Every term of height <= depth, built level by level without ordering concerns."""
    terms = {ZERO}
    for _ in range(depth):
        terms = terms | {s(t) for t in terms} | {app("ack", a, b) for a, b in itertools.product(terms, repeat=2)}
    return terms


@pytest.mark.parametrize("depth", [0, 1, 2, 3])
def test_enumeration_matches_brute_force(depth):
    listed = enumerate_ground_terms(SIG, depth)
    assert len(listed) == len(set(listed))
    assert set(listed) == _brute_universe(depth)
    assert [height(t) for t in listed] == sorted(height(t) for t in listed)


def test_universe_sizes():
    # a(h) = 1 + a(h-1) + a(h-1)^2: the constant, s over the previous level, ack over pairs
    assert [len(enumerate_ground_terms(SIG, d)) for d in range(4)] == [1, 3, 13, 183]


def test_enumeration_without_constants_is_empty():
    assert enumerate_ground_terms(Signature.of("f/1"), 3) == []


@given(ground_terms())
def test_positions_address_subterms(t):
    for pos, u in positions(t):
        assert subterm_at(t, pos) == u
        assert replace_at(t, pos, u) == t
    assert list(subterms(t))[0] == t


@given(ground_terms(), ground_terms())
def test_context_plugging(t, u):
    for pos, _ in positions(t):
        ctx = Context.at(t, pos)
        assert ctx.plug(subterm_at(t, pos)) == t
        assert subterm_at(ctx.plug(u), pos) == u


def test_context_needs_one_hole():
    with pytest.raises(ValueError):
        Context(app("ack", HOLE, HOLE))
    with pytest.raises(ValueError):
        Context(ZERO)


def test_substitution():
    t = parse_term("ack(x,s(y))", SIG, ["x", "y"])
    assert apply_substitution(t, {"x": ZERO, "y": s(ZERO)}) == parse_term("ack(0,s(s(0)))", SIG)


def test_immediate_subterm():
    t = parse_term("ack(s(0),0)", SIG)
    assert is_immediate_subterm(t, s(ZERO))
    assert not is_immediate_subterm(t, t)
    assert not is_immediate_subterm(s(s(ZERO)), ZERO)


def test_signature_basics():
    assert SIG.names == ("0", "s", "ack")
    assert SIG.constants() == ["0"]
    assert "ack" in SIG and SIG.arity("ack") == 2
    with pytest.raises(ValueError):
        Signature.of("f/1", "f/2")
