"""Leftmost-outermost rewriting by explicit substitution.

Deliberately simple and slow: it shares nothing with the production
evaluator beyond the term datatype, and serves as the confluence oracle.
β, η and both recursor axioms are treated uniformly as redexes.
"""

from __future__ import annotations

from ._deep import deep
from .errors import BudgetExhausted
from .syntax import App, Lam, Rec, Succ, Term, Var, Zero, occurs, shift


def _subst(t: Term, j: int, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.index == j else t
    if isinstance(t, Lam):
        return Lam(t.ty, _subst(t.body, j + 1, shift(s, 1)), t.name)
    if isinstance(t, App):
        return App(_subst(t.fun, j, s), _subst(t.arg, j, s))
    return t


def _beta(lam: Lam, arg: Term) -> Term:
    return shift(_subst(lam.body, 0, shift(arg, 1)), -1)


def _contract(t: Term) -> Term | None:
    """Contract ``t`` if it is itself a redex."""
    if isinstance(t, App):
        if isinstance(t.fun, Lam):
            return _beta(t.fun, t.arg)
        f = t.fun
        if isinstance(f, App) and isinstance(f.fun, App) and isinstance(f.fun.fun, Rec):
            a, b, c = f.fun.arg, f.arg, t.arg
            if isinstance(c, Zero):
                return a
            if isinstance(c, App) and isinstance(c.fun, Succ):
                return App(App(b, App(App(App(f.fun.fun, a), b), c.arg)), c.arg)
    if isinstance(t, Lam):
        body = t.body
        if (
            isinstance(body, App)
            and isinstance(body.arg, Var)
            and body.arg.index == 0
            and not occurs(body.fun, 0)
        ):
            return shift(body.fun, -1)
    return None


def _step(t: Term) -> Term | None:
    r = _contract(t)
    if r is not None:
        return r
    if isinstance(t, Lam):
        b = _step(t.body)
        return None if b is None else Lam(t.ty, b, t.name)
    if isinstance(t, App):
        f = _step(t.fun)
        if f is not None:
            return App(f, t.arg)
        a = _step(t.arg)
        return None if a is None else App(t.fun, a)
    return None


@deep
def naive_normalize(t: Term, max_steps: int = 10**6) -> tuple[Term, int]:
    """Rewrite ``t`` to βηT-normal form; returns ``(normal_form, steps)``."""
    steps = 0
    while True:
        nxt = _step(t)
        if nxt is None:
            return t, steps
        steps += 1
        if steps > max_steps:
            raise BudgetExhausted(steps, 0, "naive step limit")
        t = nxt
