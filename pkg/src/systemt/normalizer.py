"""βηT-normalization by evaluation.

Terms are evaluated call-by-need into semantic values (closures over
environments of memoizing thunks), then read back to β/T-normal terms and
finally η-contracted.  Thunks are shared, so a recursor that unfolds
thousands of times evaluates every layer once.

Numerals have a compact value form (``Num``).  A *jet* is an optional fast
path for a registered closed combinator: when the combinator is applied to
enough arguments and every argument evaluates to a numeral, the result is
computed natively.  A jet is only sound if it agrees with the combinator's
term on all numerals; ``stdlib`` registers its jets and the test suite checks
each one against jet-free evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Collection

from ._deep import deep
from .errors import BudgetExhausted, PreconditionError, TypeCheckError
from .syntax import (
    EMPTY,
    N,
    SUCC,
    ZERO,
    App,
    Lam,
    Rec,
    Succ,
    Term,
    TypeExpr,
    TypingContext,
    Var,
    Zero,
    free_indices,
    numeral_term,
    numeral_value,
    occurs,
    shift,
)
from .typecheck import infer_type


@dataclass(frozen=True)
class Budget:
    max_steps: int = 10**8
    max_nodes: int = 10**7

    def __post_init__(self):
        if self.max_steps <= 0 or self.max_nodes <= 0:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = Budget()


@dataclass
class Stats:
    steps: int = 0
    beta: int = 0
    rec: int = 0
    eta: int = 0
    jets: int = 0
    nodes: int = 0


@dataclass(frozen=True)
class NormalForm:
    term: Term
    type: TypeExpr
    stats: Stats = field(default_factory=Stats, compare=False, repr=False)


# ---------------------------------------------------------------------------
# Jets


@dataclass(frozen=True)
class Jet:
    name: str
    arity: int
    fn: Callable[..., int]
    term: Lam


_JETS: dict[int, Jet] = {}


def register_jet(name: str, term: Term, arity: int, fn: Callable[..., int]) -> None:
    """Attach a native implementation to the closed combinator ``term``.

    Jets are keyed by object identity, so only the registered term object
    (and terms that embed it) take the fast path.
    """
    if not isinstance(term, Lam):
        raise ValueError(f"jet {name} must be a lambda")
    _JETS[id(term)] = Jet(name, arity, fn, term)


def registered_jets() -> list[str]:
    return sorted(j.name for j in _JETS.values())


# ---------------------------------------------------------------------------
# Values


class Thunk:
    __slots__ = ("term", "env", "value")

    def __init__(self, term=None, env=None, value=None):
        self.term = term
        self.env = env
        self.value = value


class RecThunk(Thunk):
    """Delayed ``R[ty] a b n`` built when a recursor fires on ``S n``."""

    __slots__ = ("ty", "a", "b", "n")

    def __init__(self, ty, a, b, n):
        super().__init__()
        self.ty, self.a, self.b, self.n = ty, a, b, n


class Num:
    __slots__ = ("n",)

    def __init__(self, n: int):
        self.n = n


class VSucc:
    __slots__ = ("pred",)

    def __init__(self, pred: Thunk):
        self.pred = pred


class SuccFn:
    __slots__ = ()


class Closure:
    __slots__ = ("lam", "env")

    def __init__(self, lam: Lam, env):
        self.lam = lam
        self.env = env


class RecPartial:
    __slots__ = ("ty", "args")

    def __init__(self, ty, args):
        self.ty = ty
        self.args = args


class JetPartial:
    __slots__ = ("jet", "closure", "args")

    def __init__(self, jet: Jet, closure: Closure, args):
        self.jet = jet
        self.closure = closure
        self.args = args


class StuckRec:
    __slots__ = ("ty", "a", "b", "target")

    def __init__(self, ty, a, b, target):
        self.ty, self.a, self.b, self.target = ty, a, b, target


class Neutral:
    """A variable (level, name) or a stuck recursor, applied to a spine."""

    __slots__ = ("head", "name", "spine")

    def __init__(self, head, name, spine):
        self.head = head
        self.name = name
        self.spine = spine


SUCC_FN = SuccFn()
NUM0 = Num(0)


class Evaluator:
    def __init__(self, budget: Budget = DEFAULT_BUDGET, jets: bool | Collection[str] = True):
        self.budget = budget
        self.stats = Stats()
        if jets is True:
            self.jets = _JETS
        elif not jets:
            self.jets = {}
        else:
            wanted = set(jets)
            self.jets = {k: j for k, j in _JETS.items() if j.name in wanted}
        self._quoted: dict = {}

    # -- bookkeeping

    def tick(self) -> None:
        st = self.stats
        st.steps += 1
        if st.steps > self.budget.max_steps:
            raise BudgetExhausted(st.steps, st.nodes, "step limit")

    def grow(self, k: int) -> None:
        st = self.stats
        st.nodes += k
        if st.nodes > self.budget.max_nodes:
            raise BudgetExhausted(st.steps, st.nodes, "node limit")

    # -- evaluation

    def force(self, th: Thunk):
        v = th.value
        if v is None:
            if type(th) is RecThunk:
                v = self.rec(th.ty, th.a, th.b, th.n)
                th.a = th.b = th.n = None
            else:
                v = self.eval(th.term, th.env)
                th.term = th.env = None
            th.value = v
        return v

    def eval(self, t: Term, env):
        tt = type(t)
        if tt is Var:
            i = t.index
            while i:
                env = env[1]
                i -= 1
            return self.force(env[0])
        if tt is App:
            f = self.eval(t.fun, env)
            a = t.arg
            ta = type(a)
            if ta is Var:
                e, i = env, a.index
                while i:
                    e = e[1]
                    i -= 1
                th = e[0]
            elif ta is Zero:
                th = Thunk(value=NUM0)
            else:
                th = Thunk(a, env)
            return self.apply(f, th)
        if tt is Lam:
            jet = self.jets.get(id(t))
            if jet is not None:
                return JetPartial(jet, Closure(t, env), ())
            return Closure(t, env)
        if tt is Zero:
            return NUM0
        if tt is Succ:
            return SUCC_FN
        if tt is Rec:
            return RecPartial(t.ty, ())
        raise TypeError(f"not a term: {t!r}")

    def apply(self, f, th: Thunk):
        tf = type(f)
        if tf is Closure:
            self.tick()
            self.stats.beta += 1
            return self.eval(f.lam.body, (th, f.env))
        if tf is SuccFn:
            v = th.value
            if type(v) is Num:
                return Num(v.n + 1)
            return VSucc(th)
        if tf is RecPartial:
            args = f.args + (th,)
            if len(args) < 3:
                return RecPartial(f.ty, args)
            return self.rec(f.ty, *args)
        if tf is Neutral:
            return Neutral(f.head, f.name, f.spine + (th,))
        if tf is JetPartial:
            args = f.args + (th,)
            jet = f.jet
            if len(args) < jet.arity:
                return JetPartial(jet, f.closure, args)
            nats = []
            for a in args:
                n = self.nat(a)
                if n is None:
                    break
                nats.append(n)
            else:
                self.tick()
                self.stats.jets += 1
                return Num(jet.fn(*nats))
            v = f.closure
            for a in args:
                v = self.apply(v, a)
            return v
        raise TypeCheckError(f"cannot apply value {f!r}")

    def rec(self, ty, a: Thunk, b: Thunk, n: Thunk):
        v = self.force(n)
        tv = type(v)
        if tv is Num:
            self.tick()
            self.stats.rec += 1
            if v.n == 0:
                return self.force(a)
            pred = Thunk(value=Num(v.n - 1))
            return self.apply(self.apply(self.force(b), RecThunk(ty, a, b, pred)), pred)
        if tv is VSucc:
            self.tick()
            self.stats.rec += 1
            pred = v.pred
            return self.apply(self.apply(self.force(b), RecThunk(ty, a, b, pred)), pred)
        if tv is Neutral:
            return Neutral(StuckRec(ty, a, b, v), None, ())
        raise TypeCheckError("recursor applied to a non-numeral")

    def nat(self, th: Thunk) -> int | None:
        """Value of ``th`` as a closed numeral, or None if it is stuck."""
        v = self.force(th)
        if type(v) is Num:
            return v.n
        chain = [th]
        while type(v) is VSucc:
            chain.append(v.pred)
            v = self.force(v.pred)
        if type(v) is not Num:
            return None
        base = v.n
        for k, link in enumerate(reversed(chain)):
            link.value = Num(base + k)
        return base + len(chain) - 1

    # -- read-back

    def quote(self, v, lvl: int) -> Term:
        key = (id(v), lvl)
        hit = self._quoted.get(key)
        if hit is not None:
            return hit[1]
        t = self._quote(v, lvl)
        self._quoted[key] = (v, t)
        return t

    def _quote(self, v, lvl: int) -> Term:
        tv = type(v)
        if tv is Num:
            self.grow(v.n + 1)
            return numeral_term(v.n)
        if tv is VSucc:
            k = 0
            while type(v) is VSucc:
                k += 1
                v = self.force(v.pred)
            if type(v) is Num:
                self.grow(v.n + k + 1)
                return numeral_term(v.n + k)
            t = self.quote(v, lvl)
            self.grow(k)
            for _ in range(k):
                t = App(SUCC, t)
            return t
        if tv is SuccFn:
            self.grow(1)
            return SUCC
        if tv is Closure:
            lam = v.lam
            x = Thunk(value=Neutral(lvl, lam.name, ()))
            body = self.eval(lam.body, (x, v.env))
            self.grow(1)
            return Lam(lam.ty, self.quote(body, lvl + 1), lam.name)
        if tv is JetPartial:
            w = v.closure
            for a in v.args:
                w = self.apply(w, a)
            return self.quote(w, lvl)
        if tv is RecPartial:
            t: Term = Rec(v.ty)
            self.grow(1 + len(v.args))
            for a in v.args:
                t = App(t, self.quote(self.force(a), lvl))
            return t
        if tv is Neutral:
            head = v.head
            if type(head) is StuckRec:
                t = App(
                    App(
                        App(Rec(head.ty), self.quote(self.force(head.a), lvl)),
                        self.quote(self.force(head.b), lvl),
                    ),
                    self.quote(head.target, lvl),
                )
                self.grow(4)
            else:
                t = Var(lvl - head - 1, v.name)
                self.grow(1)
            self.grow(len(v.spine))
            for a in v.spine:
                t = App(t, self.quote(self.force(a), lvl))
            return t
        raise TypeError(f"cannot read back {v!r}")

    # -- eta

    def eta(self, t: Term) -> Term:
        memo: dict[int, tuple[Term, Term]] = {}

        def go(s: Term) -> Term:
            hit = memo.get(id(s))
            if hit is not None:
                return hit[1]
            ts = type(s)
            if ts is Lam:
                body = go(s.body)
                if (
                    type(body) is App
                    and type(body.arg) is Var
                    and body.arg.index == 0
                    and not occurs(body.fun, 0)
                ):
                    self.tick()
                    self.stats.eta += 1
                    r = shift(body.fun, -1)
                else:
                    r = s if body is s.body else Lam(s.ty, body, s.name)
            elif ts is App:
                f, a = go(s.fun), go(s.arg)
                r = s if f is s.fun and a is s.arg else App(f, a)
            else:
                r = s
            memo[id(s)] = (s, r)
            return r

        return go(t)


def _context_env(ctx: TypingContext):
    env = None
    k = len(ctx)
    for i in reversed(range(k)):
        env = (Thunk(value=Neutral(k - 1 - i, ctx.names[i], ())), env)
    return env


@deep
def normalize(
    t: Term,
    budget: Budget | None = None,
    ctx: TypingContext = EMPTY,
    jets: bool | Collection[str] = True,
) -> NormalForm:
    """The βηT-normal (η-short) form of ``t``, alpha-canonical."""
    ty = infer_type(ctx, t)
    ev = Evaluator(budget or DEFAULT_BUDGET, jets)
    value = ev.eval(t, _context_env(ctx))
    term = ev.eta(ev.quote(value, len(ctx)))
    return NormalForm(term, ty, ev.stats)


@deep
def equal(
    a: Term,
    b: Term,
    budget: Budget | None = None,
    ctx: TypingContext = EMPTY,
    jets: bool | Collection[str] = True,
) -> bool:
    """Decide ``T |- a = b`` by comparing normal forms."""
    ta, tb = infer_type(ctx, a), infer_type(ctx, b)
    if ta != tb:
        raise TypeCheckError(f"cannot compare terms of types {ta} and {tb}")
    return normalize(a, budget, ctx, jets).term == normalize(b, budget, ctx, jets).term


def numeral(n: int) -> NormalForm:
    if n < 0:
        raise ValueError("numerals are non-negative")
    return NormalForm(numeral_term(n), N)


def eval_numeral(nf: NormalForm | Term) -> int:
    term = nf.term if isinstance(nf, NormalForm) else nf
    if isinstance(nf, NormalForm) and nf.type != N:
        raise PreconditionError(f"expected a normal form of type N, got {nf.type}")
    n = numeral_value(term)
    if n is None:
        if free_indices(term):
            raise PreconditionError("expected a closed numeral, got an open term")
        raise PreconditionError("term is not a numeral S^n 0")
    return n


__all__ = [
    "Budget",
    "DEFAULT_BUDGET",
    "NormalForm",
    "Stats",
    "normalize",
    "equal",
    "numeral",
    "eval_numeral",
    "register_jet",
    "registered_jets",
    "ZERO",
]
