from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import ordered_subtypes
from systemt import stdlib
from systemt.errors import ParseError, TypeCheckError, UnboundIdentifierError, UnboundVariableError
from systemt.parser import parse_term, parse_type
from systemt.syntax import (
    EMPTY,
    N,
    SUCC,
    ZERO,
    App,
    Arrow,
    Lam,
    Rec,
    TypingContext,
    Var,
    alpha_eq,
    arrow,
    decompose,
    is_closed,
    is_pure,
    numeral_term,
    numeral_value,
    pretty,
    shift,
    show_type,
    subtypes,
    term_size,
)
from systemt.typecheck import check_closed, infer_type

types = st.recursive(st.just(N), lambda sub: st.builds(Arrow, sub, sub), max_leaves=6)


# -- types -------------------------------------------------------------------


def test_parse_type_examples():
    assert parse_type("N") == N
    assert parse_type("N -> N -> N") == Arrow(N, Arrow(N, N))
    worked = parse_type("((N -> N) -> N) -> N")
    assert worked == Arrow(Arrow(Arrow(N, N), N), N)
    assert parse_type("N → N") == Arrow(N, N)


@pytest.mark.parametrize("bad", ["", "N ->", "(N", "N N", "M", "N -> )"])
def test_parse_type_errors_carry_position(bad):
    with pytest.raises(ParseError) as info:
        parse_type(bad)
    assert "column" in str(info.value)
    assert info.value.category == "syntax"


@given(types)
def test_show_parse_type_roundtrip(t):
    assert parse_type(show_type(t)) == t


@given(types)
def test_unique_decomposition(t):
    args = decompose(t)
    assert arrow(*args, N) == t


# -- terms -------------------------------------------------------------------


def test_parse_term_examples():
    assert parse_term("\\x:N. S x") == Lam(N, App(SUCC, Var(0)))
    assert parse_term("#3") == App(SUCC, App(SUCC, App(SUCC, ZERO)))
    assert parse_term("0") == ZERO
    pred = parse_term("R[N] #0 (\\a:N. \\b:N. b)")
    assert pred == stdlib.arith("Pred").term
    assert parse_term("λx:N. x") == Lam(N, Var(0))


def test_comments_and_layout():
    text = """
    -- the identity
    \\x:N.   -- binder
      x
    """
    assert parse_term(text) == Lam(N, Var(0))


def test_trailing_lambda_argument():
    t = parse_term("\\f:(N -> N) -> N. f \\y:N. y")
    assert t == Lam(Arrow(Arrow(N, N), N), App(Var(0), Lam(N, Var(0))))


def test_unbound_identifier():
    with pytest.raises(UnboundIdentifierError) as info:
        parse_term("\\x:N. y")
    assert info.value.category == "unbound"
    assert "line 1, column 7" in str(info.value)


def test_context_and_definitions():
    ctx = TypingContext.of(f="N -> N", x="N")
    t = parse_term("f x", ctx)
    assert t == App(Var(1), Var(0))
    add = stdlib.arith("Add").term
    assert parse_term("Add", defs={"Add": add}) is add
    # bound names shadow the context
    assert parse_term("\\x:N. x", ctx) == Lam(N, Var(0))


def test_numeral_helpers():
    for n in (0, 1, 5, 41):
        assert numeral_value(numeral_term(n)) == n
    assert numeral_value(Var(0)) is None
    assert term_size(numeral_term(3)) == 7


def test_purity_and_closedness():
    assert is_pure(parse_term("\\x:N. x"))
    assert not is_pure(parse_term("\\x:N. S x"))
    assert not is_pure(Rec(N))
    assert is_closed(parse_term("\\x:N. x"))
    assert not is_closed(Var(0))


def test_shift():
    t = Lam(N, App(Var(0), Var(1)))
    assert shift(t, 2) == Lam(N, App(Var(0), Var(3)))
    assert shift(t, 0) is t


# -- alpha equivalence -------------------------------------------------------


def test_alpha_eq_examples():
    assert alpha_eq(parse_term("\\x:N. x"), parse_term("\\y:N. y"))
    assert not alpha_eq(parse_term("\\x:N. x"), parse_term("\\x:N. S x"))
    a = parse_term("\\f:N -> N. \\x:N. f x")
    b = parse_term("\\g:N -> N. \\y:N. g y")
    assert alpha_eq(a, b)
    assert a == b and hash(a) == hash(b)
    assert not alpha_eq(parse_term("\\x:N. \\y:N. x"), parse_term("\\x:N. \\y:N. y"))


# -- typing ------------------------------------------------------------------


def test_infer_type_examples():
    assert infer_type(EMPTY, Rec(N)) == parse_type("N -> (N -> N -> N) -> N -> N")
    assert infer_type(EMPTY, parse_term("\\x:N. x")) == Arrow(N, N)
    with pytest.raises(TypeCheckError) as info:
        infer_type(EMPTY, parse_term("S (\\x:N. x)"))
    assert "\\x:N. x" in str(info.value)


def test_constant_types():
    assert infer_type(EMPTY, ZERO) == N
    assert infer_type(EMPTY, SUCC) == Arrow(N, N)
    rec_nn = infer_type(EMPTY, Rec(Arrow(N, N)))
    assert rec_nn == parse_type("(N -> N) -> ((N -> N) -> N -> N -> N) -> N -> N -> N")


def test_unbound_variable_in_typechecker():
    with pytest.raises(UnboundVariableError):
        infer_type(EMPTY, Var(0))
    with pytest.raises(TypeCheckError):
        check_closed(Var(2))


def test_open_typing():
    ctx = TypingContext.of(f="(N -> N) -> N")
    assert infer_type(ctx, parse_term("f (\\y:N. y)", ctx)) == N


# -- subtypes ----------------------------------------------------------------


def test_subtypes_examples():
    assert subtypes(N) == [N]
    worked = subtypes(parse_type("((N -> N) -> N) -> N"))
    assert [show_type(t) for t in worked] == ["((N -> N) -> N) -> N", "(N -> N) -> N", "N -> N", "N"]
    assert worked[2] == Arrow(N, N)
    tstar = subtypes(parse_type("(N -> N -> N) -> N -> N"))
    assert [show_type(t) for t in tstar] == ["(N -> N -> N) -> N -> N", "N -> N -> N", "N -> N", "N"]


@given(types)
def test_subtypes_properties(t):
    s = subtypes(t)
    assert s[0] == t and N in s
    assert len(set(s)) == len(s)
    assert s == ordered_subtypes(t)


# -- printing ----------------------------------------------------------------


def test_pretty_parse_roundtrip_on_stdlib():
    ns = stdlib.namespace()
    terms = [c.term for c in map(stdlib.combinator, ns)]
    terms += [stdlib.iteration(N)[1].term, stdlib.cons(Arrow(N, N)).term]
    terms += [c.term for c in stdlib.curry_pair(Arrow(N, N), arrow(N, N, N))]
    for t in terms:
        assert alpha_eq(parse_term(pretty(t)), t)


def test_pretty_avoids_capture():
    # body mentions the outer x through index 1 while the inner binder is also x
    t = Lam(N, Lam(N, App(App(Var(2, "f"), Var(1, "x")), Var(0, "x")), "x"), "x")
    ctx = TypingContext.of(f="N -> N -> N")
    text = pretty(t, ctx)
    assert parse_term(text, ctx) == t
    assert pretty(numeral_term(4)) == "#4"
