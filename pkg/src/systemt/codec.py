"""Cantor pairing on exact integers and the Gödel code of pure normal forms."""

from __future__ import annotations

from math import isqrt

from .errors import GuardExceeded, PreconditionError
from .syntax import EMPTY, App, Lam, Term, TypingContext, Var, subtypes

DEFAULT_GUARD = 10**6


def pair(m1: int, m2: int) -> int:
    """``(m1 (m1 + 3) + m2 (m2 + 1) + 2 m1 m2) / 2``, exactly."""
    return (m1 * (m1 + 3) + m2 * (m2 + 1) + 2 * m1 * m2) // 2


def unpair(n: int) -> tuple[int, int]:
    if n < 0:
        raise ValueError("codes are non-negative")
    w = (isqrt(8 * n + 1) - 1) // 2
    m1 = n - w * (w + 1) // 2
    return m1, w - m1


class _Encoder:
    def __init__(self, a: Term):
        from .metanf import is_pure_closed_nf
        from .typecheck import infer_type

        if not is_pure_closed_nf(a):
            raise PreconditionError("encoding needs a pure closed beta-eta-normal form")
        self.infer = infer_type
        self.types = subtypes(infer_type(EMPTY, a))
        self.index = {t: i for i, t in enumerate(self.types, 1)}
        self.n = len(self.types)

    def walk(self, b: Term, depth: int, binders: tuple[int, ...], ctx: TypingContext):
        """Returns ``(code, nested-pair notation)`` for the occurrence ``b``."""
        if isinstance(b, Var):
            d = binders[b.index]
            return pair(0, d), f"<0,{d}>"
        if isinstance(b, Lam):
            c, s = self.walk(b.body, depth + 1, (depth, *binders), ctx.extend(b.name, b.ty))
            return pair(self.n + 1, c), f"<{self.n + 1},{s}>"
        if isinstance(b, App):
            arg_ty = self.infer(ctx, b.arg)
            j = self.index.get(arg_ty)
            if j is None:
                raise AssertionError(f"argument type {arg_ty} is not a subtype")
            cf, sf = self.walk(b.fun, depth + 1, binders, ctx)
            ca, sa = self.walk(b.arg, depth + 1, binders, ctx)
            return pair(j, pair(cf, ca)), f"<{j},<{sf},{sa}>>"
        raise PreconditionError("constants cannot be encoded")


def encode_oslash(a: Term) -> int:
    """Gödel code of the pure closed normal form ``a``."""
    return _Encoder(a).walk(a, 0, (), EMPTY)[0]


def encode_nested(a: Term) -> tuple[int, str]:
    """Code together with its nested-pair notation, e.g. ``<3,<0,0>>``."""
    return _Encoder(a).walk(a, 0, (), EMPTY)


def numeral_of_code(n: int, guard: int = DEFAULT_GUARD):
    from .normalizer import numeral

    if n > guard:
        raise GuardExceeded(f"numeral for code {n} needs {n + 1} nodes; guard is {guard}")
    return numeral(n)


def code_of_numeral(nf) -> int:
    from .normalizer import eval_numeral

    return eval_numeral(nf)
