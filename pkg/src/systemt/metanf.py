"""Meta-level structure of pure βη-normal forms.

The three-way shape of a normal form (variable, abstraction, or a variable
applied to normal arguments) doubles as a production system; it drives both
``classify`` and the exhaustive generator used as a test oracle.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple, Union

from ._deep import deep
from .errors import PreconditionError
from .syntax import (
    EMPTY,
    App,
    Arrow,
    Lam,
    Term,
    TypeExpr,
    TypingContext,
    Var,
    binder_name,
    canonical_names,
    decompose,
    free_indices,
    is_pure,
    occurs,
    pretty,
    spine,
    term_size,
)
from .typecheck import infer_type


@dataclass(frozen=True)
class VariableCase:
    var: Var


@dataclass(frozen=True)
class LambdaCase:
    binder_type: TypeExpr
    body: Term
    name: str


@dataclass(frozen=True)
class SpineCase:
    head: Var
    args: tuple[Term, ...]


NfShape = Union[VariableCase, LambdaCase, SpineCase]


def _is_eta_redex(t: Term) -> bool:
    return (
        isinstance(t, Lam)
        and isinstance(t.body, App)
        and isinstance(t.body.arg, Var)
        and t.body.arg.index == 0
        and not occurs(t.body.fun, 0)
    )


@deep
def is_beta_eta_normal(t: Term) -> bool:
    """No β-redex and no η-redex anywhere (recursor redexes are not checked)."""
    if isinstance(t, Lam):
        return not _is_eta_redex(t) and is_beta_eta_normal(t.body)
    if isinstance(t, App):
        if isinstance(t.fun, Lam):
            return False
        return is_beta_eta_normal(t.fun) and is_beta_eta_normal(t.arg)
    return True


def is_pure_closed_nf(t: Term) -> bool:
    return is_pure(t) and not free_indices(t) and is_beta_eta_normal(t)


def classify(t: Term) -> NfShape:
    if not is_pure(t):
        raise PreconditionError("classify expects a pure term")
    if not is_beta_eta_normal(t):
        raise PreconditionError("classify expects a beta-eta-normal form")
    if isinstance(t, Var):
        return VariableCase(t)
    if isinstance(t, Lam):
        return LambdaCase(t.ty, t.body, t.name)
    head, args = spine(t)
    assert isinstance(head, Var), "pure normal spines have a variable head"
    return SpineCase(head, tuple(args))


class FreeVar(NamedTuple):
    index: int
    name: str
    type: TypeExpr


def free_vars(t: Term, ctx: TypingContext = EMPTY) -> set[FreeVar]:
    """Free variables of ``t`` with their types under ``ctx``."""
    return {FreeVar(i, ctx.names[i], ctx.lookup(i)) for i in free_indices(t)}


# ---------------------------------------------------------------------------
# Subterm depths


class Occurrence(NamedTuple):
    path: tuple[int, ...]  # 0 = lambda body, 1 = function, 2 = argument
    term: Term


def subterm_depths(a: Term) -> dict[int, list[Occurrence]]:
    """Occurrences of subterms of ``a`` grouped by depth.

    Depth 0 holds ``a`` itself; the body of an abstraction and both sides of
    an application sit one level below their parent.
    """
    index: dict[int, list[Occurrence]] = {}
    layer = [Occurrence((), a)]
    d = 0
    while layer:
        index[d] = layer
        nxt = []
        for path, t in layer:
            if isinstance(t, Lam):
                nxt.append(Occurrence(path + (0,), t.body))
            elif isinstance(t, App):
                nxt.append(Occurrence(path + (1,), t.fun))
                nxt.append(Occurrence(path + (2,), t.arg))
        layer = nxt
        d += 1
    return index


# ---------------------------------------------------------------------------
# Exhaustive generation

def _compositions(total: int, parts: int):
    """All tuples of ``parts`` positive ints summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


@functools.cache
def _gen(ctx: tuple[TypeExpr, ...], ty: TypeExpr, size: int) -> tuple[tuple[Term, str], ...]:
    """Pure η-short β-normal forms of exactly ``size`` nodes, with their case."""
    out: list[tuple[Term, str]] = []
    if size <= 0:
        return ()
    if isinstance(ty, Arrow):
        for body, _ in _gen((ty.dom, *ctx), ty.cod, size - 1):
            lam = Lam(ty.dom, body, binder_name(len(ctx)))
            if not _is_eta_redex(lam):
                out.append((lam, "lambda"))
    for i, vty in enumerate(ctx):
        params = decompose(vty)
        rest = vty
        for k in range(len(params) + 1):
            if k:
                rest = rest.cod
            if rest != ty:
                continue
            budget = size - 1 - k
            if k == 0:
                if budget == 0:
                    out.append((Var(i), "variable"))
                continue
            for sizes in _compositions(budget, k):
                for args in _products([_gen(ctx, params[m], sizes[m]) for m in range(k)]):
                    t: Term = Var(i)
                    for a, _ in args:
                        t = App(t, a)
                    out.append((t, "spine"))
    return tuple(out)


def _products(pools):
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for rest in _products(pools[1:]):
            yield (head, *rest)


def enumerate_with_cases(ty: TypeExpr, max_size: int) -> list[tuple[Term, str]]:
    if max_size < 1:
        raise PreconditionError("max_size must be at least 1")
    found = [pair for s in range(1, max_size + 1) for pair in _gen((), ty, s)]
    found.sort(key=lambda p: (term_size(p[0]), pretty(p[0])))
    return found


def enumerate_pure_closed_nf(ty: TypeExpr, max_size: int) -> list[Term]:
    """Every pure closed η-short βη-normal form of ``ty`` with at most
    ``max_size`` nodes, ordered by size and then printed form."""
    return [t for t, _ in enumerate_with_cases(ty, max_size)]


def census_lines(ty: TypeExpr, max_size: int) -> list[str]:
    """Golden-file lines: one printed term per line, sorted."""
    return sorted(pretty(canonical_names(t)) for t in enumerate_pure_closed_nf(ty, max_size))


def check_lemma_subterm_types(a: Term) -> bool:
    """Every subterm's type, and every free variable's type, is a subtype."""
    from .syntax import subtypes

    tau = infer_type(EMPTY, a)
    allowed = set(subtypes(tau))

    def walk(t: Term, ctx: TypingContext) -> bool:
        if infer_type(ctx, t) not in allowed:
            return False
        if any(fv.type not in allowed for fv in free_vars(t, ctx)):
            return False
        if isinstance(t, Lam):
            return walk(t.body, ctx.extend(t.name, t.ty))
        if isinstance(t, App):
            return walk(t.fun, ctx) and walk(t.arg, ctx)
        return True

    return walk(a, EMPTY)
