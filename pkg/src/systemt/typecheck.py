from __future__ import annotations

from ._deep import deep
from .errors import TypeCheckError, UnboundVariableError
from .syntax import (
    EMPTY,
    N,
    App,
    Arrow,
    Lam,
    Rec,
    Succ,
    Term,
    TypeExpr,
    TypingContext,
    Var,
    Zero,
    arrow,
    pretty,
    show_type,
)


def rec_type(ty: TypeExpr) -> TypeExpr:
    """``R[t] : t -> (t -> N -> t) -> N -> t``."""
    return arrow(ty, arrow(ty, N, ty), N, ty)


@deep
def infer_type(ctx: TypingContext, t: Term) -> TypeExpr:
    """The unique simple type of ``t`` under ``ctx``."""
    return _infer(ctx.types, t, ctx)


def _infer(types: tuple[TypeExpr, ...], t: Term, ctx: TypingContext) -> TypeExpr:
    if isinstance(t, Var):
        if t.index >= len(types):
            raise UnboundVariableError(f"unbound variable {t.name!r}")
        return types[t.index]
    if isinstance(t, Lam):
        return Arrow(t.ty, _infer((t.ty, *types), t.body, ctx))
    if isinstance(t, App):
        # iterate down the spine; arguments recurse
        fun_ty = _infer(types, t.fun, ctx)
        arg_ty = _infer(types, t.arg, ctx)
        if not isinstance(fun_ty, Arrow):
            raise TypeCheckError(
                f"cannot apply a term of type {show_type(fun_ty)}: {_show(t, types, ctx)}"
            )
        if fun_ty.dom != arg_ty:
            raise TypeCheckError(
                f"argument of type {show_type(arg_ty)} where {show_type(fun_ty.dom)} "
                f"was expected: {_show(t, types, ctx)}"
            )
        return fun_ty.cod
    if isinstance(t, Zero):
        return N
    if isinstance(t, Succ):
        return Arrow(N, N)
    if isinstance(t, Rec):
        return rec_type(t.ty)
    raise TypeError(f"not a term: {t!r}")


def _show(t: Term, types: tuple[TypeExpr, ...], ctx: TypingContext) -> str:
    # names for binders introduced below ctx are unknown here
    names = [f"v{i}" for i in range(len(types) - len(ctx))] + list(ctx.names)
    text = pretty(t, names)
    return text if len(text) <= 200 else text[:197] + "..."


def check_closed(t: Term) -> TypeExpr:
    return infer_type(EMPTY, t)
