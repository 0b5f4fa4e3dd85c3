"""Closed combinators of System T: arithmetic, pairing, tuples, lists, iteration.

Every term is written out in the surface grammar and parsed, so each
definition below reads as the term it builds.  Combinators are cached, which
keeps their object identity stable; jets rely on that.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Sequence

from . import codec
from .errors import PreconditionError
from .normalizer import register_jet
from .parser import parse_term, parse_type
from .syntax import N, Arrow, Term, TypeExpr, apply, arrow, decompose, show_type
from .typecheck import check_closed


@dataclass(frozen=True)
class Combinator:
    name: str
    term: Term
    type: TypeExpr

    def __str__(self) -> str:
        return f"{self.name} : {show_type(self.type)}"


def _make(name: str, text: str, expected: str | TypeExpr, **defs: Term) -> Combinator:
    term = parse_term(text, defs=defs)
    ty = check_closed(term)
    want = parse_type(expected) if isinstance(expected, str) else expected
    if ty != want:
        raise AssertionError(f"{name} has type {ty}, expected {want}")
    return Combinator(name, term, ty)


def _ty(t: TypeExpr) -> str:
    return f"({show_type(t)})" if isinstance(t, Arrow) else "N"


# ---------------------------------------------------------------------------
# Arithmetic on numerals


@functools.cache
def _arith() -> dict[str, Combinator]:
    c: dict[str, Combinator] = {}
    terms: dict[str, Term] = {}

    def define(name, text, ty):
        c[name] = _make(name, text, ty, **terms)
        terms[name] = c[name].term

    define("Add", r"\x:N. R[N] x (\a:N. \b:N. S a)", "N -> N -> N")
    define("Mult", r"\x:N. R[N] 0 (\a:N. \b:N. Add a x)", "N -> N -> N")
    define("Pred", r"R[N] 0 (\a:N. \b:N. b)", "N -> N")
    define("Monus", r"\x:N. R[N] x (\a:N. \b:N. Pred a)", "N -> N -> N")
    define("Cond", r"\x:N. \y:N. R[N] x (\a:N. \b:N. y)", "N -> N -> N -> N")
    define(
        "Sum",
        r"\x:N. \f:N -> N. R[N] 0 (\a:N. \b:N. Add a (f b)) (S x)",
        "N -> (N -> N) -> N",
    )
    define(
        "MaxLe",
        r"\x:N. \f:N -> N. R[N] 0 (\a:N. \b:N. Cond b a (f b)) (S x)",
        "N -> (N -> N) -> N",
    )
    define("Div", r"\x:N. \y:N. MaxLe x (\a:N. Monus (Mult a y) x)", "N -> N -> N")
    # x(x+3) + y(y+1) + 2xy, halved
    define(
        "P0",
        r"""\x:N. \y:N. Div
              (Add (Add (Mult x (Add x #3)) (Mult y (Add y #1))) (Mult (Mult #2 x) y))
              #2""",
        "N -> N -> N",
    )
    # |z - <x,y>| is (z - <x,y>) + (<x,y> - z)
    define(
        "P1",
        r"""\z:N. Sum z (\y:N. MaxLe z (\x:N.
              Add (Monus z (P0 x y)) (Monus (P0 x y) z)))""",
        "N -> N",
    )
    define(
        "P2",
        r"""\z:N. Sum z (\x:N. MaxLe z (\y:N.
              Add (Monus z (P0 x y)) (Monus (P0 x y) z)))""",
        "N -> N",
    )

    register_jet("Add", terms["Add"], 2, lambda x, y: x + y)
    register_jet("Mult", terms["Mult"], 2, lambda x, y: x * y)
    register_jet("Monus", terms["Monus"], 2, lambda x, y: max(x - y, 0))
    register_jet("Cond", terms["Cond"], 3, lambda x, y, n: x if n == 0 else y)
    register_jet("Div", terms["Div"], 2, lambda x, y: x if y == 0 else x // y)
    register_jet("P0", terms["P0"], 2, codec.pair)
    register_jet("P1", terms["P1"], 1, lambda z: codec.unpair(z)[0])
    register_jet("P2", terms["P2"], 1, lambda z: codec.unpair(z)[1])
    return c


ARITH_NAMES = ("Add", "Mult", "Pred", "Monus", "Cond", "Sum", "MaxLe", "Div")
CANTOR_NAMES = ("P0", "P1", "P2")


def arith(name: str) -> Combinator:
    if name not in ARITH_NAMES:
        raise KeyError(f"unknown arithmetic combinator {name!r}")
    return _arith()[name]


def cantor(name: str) -> Combinator:
    if name not in CANTOR_NAMES:
        raise KeyError(f"unknown pairing combinator {name!r}")
    return _arith()[name]


def namespace() -> dict[str, Term]:
    """Named closed combinators, for ``parse_term(..., defs=namespace())``."""
    return {name: comb.term for name, comb in _arith().items()}


def combinator(name: str) -> Combinator:
    table = _arith()
    if name not in table:
        raise KeyError(f"unknown combinator {name!r}; known: {', '.join(table)}")
    return table[name]


# ---------------------------------------------------------------------------
# Zeros, products and Curry pairing


@functools.cache
def zero_of_type(sigma: TypeExpr) -> Combinator:
    """``0_N`` at ``N``; ``\\x1 ... xm. 0`` at ``s1 -> ... -> sm -> N``."""
    binders = "".join(f"\\x{i}:{show_type(s)}. " for i, s in enumerate(decompose(sigma), 1))
    return _make(f"0[{show_type(sigma)}]", binders + "0", sigma)


@functools.cache
def product_type(sigma: TypeExpr, tau: TypeExpr) -> TypeExpr:
    """``s1 -> ... -> sm -> t1 -> ... -> tn -> (N -> N -> N) -> N``."""
    return arrow(*decompose(sigma), *decompose(tau), arrow(N, N, N), N)


@functools.cache
def curry_pair(sigma: TypeExpr, tau: TypeExpr) -> tuple[Combinator, Combinator, Combinator]:
    """``D0 : s -> t -> s*t``, ``D1 : s*t -> s`` and ``D2 : s*t -> t``.

    ``D0 x y = \\s.. t.. p. p (x s..) (y t..)``; the projections feed zeros to
    the other component's arguments and select with ``\\a b. a`` or
    ``\\a b. b``.
    """
    ss, ts = decompose(sigma), decompose(tau)
    prod = product_type(sigma, tau)
    tag = f"{show_type(sigma)}, {show_type(tau)}"
    s_bind = "".join(f"\\s{i}:{show_type(s)}. " for i, s in enumerate(ss, 1))
    t_bind = "".join(f"\\t{i}:{show_type(t)}. " for i, t in enumerate(ts, 1))
    s_vars = "".join(f" s{i}" for i in range(1, len(ss) + 1))
    t_vars = "".join(f" t{i}" for i in range(1, len(ts) + 1))
    zs = {f"zs{i}": zero_of_type(s).term for i, s in enumerate(ss, 1)}
    zt = {f"zt{i}": zero_of_type(t).term for i, t in enumerate(ts, 1)}

    d0 = _make(
        f"D0[{tag}]",
        f"\\x:{show_type(sigma)}. \\y:{show_type(tau)}. {s_bind}{t_bind}"
        f"\\p:N -> N -> N. p (x{s_vars}) (y{t_vars})",
        arrow(sigma, tau, prod),
    )
    d1 = _make(
        f"D1[{tag}]",
        f"\\q:{show_type(prod)}. {s_bind}q{s_vars}{''.join(' ' + z for z in zt)} "
        f"(\\a:N. \\b:N. a)",
        Arrow(prod, sigma),
        **zt,
    )
    d2 = _make(
        f"D2[{tag}]",
        f"\\q:{show_type(prod)}. {t_bind}q{''.join(' ' + z for z in zs)}{t_vars} "
        f"(\\a:N. \\b:N. b)",
        Arrow(prod, tau),
        **zs,
    )
    return d0, d1, d2


def tuple_type(types: Sequence[TypeExpr]) -> TypeExpr:
    """Right-nested product ``t1 * (t2 * (... * tk))``."""
    result = types[-1]
    for t in reversed(types[:-1]):
        result = product_type(t, result)
    return result


@functools.cache
def _projections(types: tuple[TypeExpr, ...]) -> tuple[Combinator, ...]:
    k = len(types)
    whole = tuple_type(types)
    if k == 1:
        return (_make("D1[1]", f"\\q:{show_type(whole)}. q", Arrow(whole, whole)),)
    projs = []
    for i in range(1, k + 1):
        defs: dict[str, Term] = {}
        expr = "q"
        # peel i-1 right components
        for level in range(min(i, k - 1) - 1):
            _, _, d2 = curry_pair(types[level], tuple_type(types[level + 1:]))
            defs[f"d2_{level}"] = d2.term
            expr = f"d2_{level} ({expr})"
        level = min(i, k - 1) - 1
        _, d1, d2 = curry_pair(types[level], tuple_type(types[level + 1:]))
        if i < k:
            defs["last"] = d1.term
        else:
            defs["last"] = d2.term
        expr = f"last ({expr})"
        projs.append(
            _make(f"D{i}[{k}]", f"\\q:{show_type(whole)}. {expr}", Arrow(whole, types[i - 1]), **defs)
        )
    return tuple(projs)


def tuple_literal(types: Sequence[TypeExpr], items: Sequence[Term]) -> Term:
    """``{A1, {A2, ... {A(k-1), Ak}}}`` built from Curry pairs."""
    if len(types) != len(items):
        raise ValueError("one item per component type is required")
    result = items[-1]
    for i in range(len(items) - 2, -1, -1):
        d0, _, _ = curry_pair(types[i], tuple_type(types[i + 1:]))
        result = apply(d0.term, items[i], result)
    return result


def tuple_ops(
    types: Sequence[TypeExpr],
) -> tuple[Callable[[Sequence[Term]], Term], list[Combinator]]:
    """Literal builder and projections ``D_1 ... D_k`` for a k-tuple, k >= 2."""
    types = tuple(types)
    if len(types) < 2:
        raise PreconditionError("tuples need at least two components")
    return functools.partial(tuple_literal, types), list(_projections(types))


def projection(types: Sequence[TypeExpr], i: int) -> Combinator:
    """``D_i`` for the tuple type over ``types``; one component is the identity."""
    types = tuple(types)
    if not 1 <= i <= len(types):
        raise PreconditionError(f"projection index {i} out of range 1..{len(types)}")
    return _projections(types)[i - 1]


def literal(types: Sequence[TypeExpr], items: Sequence[Term]) -> Term:
    if len(types) == 1:
        return items[0]
    return tuple_literal(types, items)


# ---------------------------------------------------------------------------
# Lists and iteration


@functools.cache
def cons(tau: TypeExpr) -> Combinator:
    t = show_type(tau)
    return _make(
        f"Cons[{t}]",
        f"\\x:{t}. \\y:N -> {_ty(tau)}. R[{t}] x (\\a:{t}. y)",
        arrow(tau, Arrow(N, tau), N, tau),
    )


def list_literal(tau: TypeExpr, items: Sequence[Term]) -> Term:
    """``[A0, ..., An]`` as nested ``Cons`` ending in ``0_{N -> tau}``."""
    c = cons(tau).term
    result = zero_of_type(Arrow(N, tau)).term
    for item in reversed(items):
        result = apply(c, item, result)
    return result


@functools.cache
def iteration(tau: TypeExpr) -> tuple[Combinator, Combinator]:
    """``Iter_t`` from ``R_t``, and ``R_t`` rebuilt from ``Iter_{t*N}``."""
    t = show_type(tau)
    it = _iter_only(tau)
    pair_t = product_type(tau, N)
    d0, d1, d2 = curry_pair(tau, N)
    h = h_term(tau)
    rec = _make(
        f"RecFromIter[{t}]",
        f"\\a:{t}. \\b:{_ty(tau)} -> N -> {_ty(tau)}. \\c:N. "
        "D1 (Iter (D0 a 0) (H b) c)",
        arrow(tau, arrow(tau, N, tau), N, tau),
        D0=d0.term,
        D1=d1.term,
        Iter=_iter_only(pair_t).term,
        H=h.term,
    )
    return it, rec


@functools.cache
def _iter_only(tau: TypeExpr) -> Combinator:
    t = show_type(tau)
    return _make(
        f"Iter[{t}]",
        f"\\a:{t}. \\b:{_ty(tau)} -> {_ty(tau)}. R[{t}] a (\\x:{t}. \\y:N. b x)",
        arrow(tau, Arrow(tau, tau), N, tau),
    )


@functools.cache
def h_term(tau: TypeExpr) -> Combinator:
    """``H_t : (t -> N -> t) -> t*N -> t*N``, the step of the paired iteration."""
    t = show_type(tau)
    pair_t = product_type(tau, N)
    d0, d1, d2 = curry_pair(tau, N)
    return _make(
        f"H[{t}]",
        f"\\x:{_ty(tau)} -> N -> {_ty(tau)}. \\y:{show_type(pair_t)}. "
        "D0 (x (D1 y) (D2 y)) (S (D2 y))",
        arrow(arrow(tau, N, tau), pair_t, pair_t),
        D0=d0.term,
        D1=d1.term,
        D2=d2.term,
    )
