"""Types and terms of System T, with nameless (de Bruijn) binding.

Variable and binder names are carried along for printing only and never take
part in equality, so ``==`` on terms *is* alpha-equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from ._deep import deep
from .errors import UnboundVariableError

# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True, slots=True)
class Ground:
    def __str__(self) -> str:
        return "N"


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: TypeExpr
    cod: TypeExpr

    def __str__(self) -> str:
        return show_type(self)


TypeExpr = Union[Ground, Arrow]

N = Ground()


def arrow(*types: TypeExpr) -> TypeExpr:
    """``arrow(a, b, c)`` is ``a -> b -> c``."""
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Arrow(t, result)
    return result


def decompose(t: TypeExpr) -> list[TypeExpr]:
    """Argument types ``[t1, ..., tn]`` of ``t = t1 -> ... -> tn -> N``."""
    args = []
    while isinstance(t, Arrow):
        args.append(t.dom)
        t = t.cod
    return args


def type_size(t: TypeExpr) -> int:
    if isinstance(t, Arrow):
        return 1 + type_size(t.dom) + type_size(t.cod)
    return 1


def show_type(t: TypeExpr) -> str:
    if isinstance(t, Arrow):
        dom = show_type(t.dom)
        if isinstance(t.dom, Arrow):
            dom = f"({dom})"
        return f"{dom} -> {show_type(t.cod)}"
    return "N"


def subtypes(t: TypeExpr) -> list[TypeExpr]:
    """All subtypes of ``t``, duplicate-free, with ``t`` first.

    The rest are ordered by decreasing structural size, ties broken by the
    printed form, so ``((N -> N) -> N) -> N`` lists ``N -> N`` third.
    """
    found: set[TypeExpr] = set()

    def walk(s: TypeExpr) -> None:
        found.add(s)
        if isinstance(s, Arrow):
            walk(s.dom)
            walk(s.cod)

    walk(t)
    found.discard(t)
    rest = sorted(found, key=lambda s: (-type_size(s), show_type(s)))
    return [t, *rest]


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True, slots=True)
class Var:
    index: int
    name: str = field(default="x", compare=False)


@dataclass(frozen=True, slots=True)
class Lam:
    ty: TypeExpr
    body: Term
    name: str = field(default="x", compare=False)


@dataclass(frozen=True, slots=True)
class App:
    fun: Term
    arg: Term


@dataclass(frozen=True, slots=True)
class Zero:
    pass


@dataclass(frozen=True, slots=True)
class Succ:
    pass


@dataclass(frozen=True, slots=True)
class Rec:
    ty: TypeExpr


Term = Union[Var, Lam, App, Zero, Succ, Rec]

ZERO = Zero()
SUCC = Succ()


def apply(fun: Term, *args: Term) -> Term:
    for a in args:
        fun = App(fun, a)
    return fun


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split ``h a1 ... ak`` into ``(h, [a1, ..., ak])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def numeral_term(n: int) -> Term:
    t: Term = ZERO
    for _ in range(n):
        t = App(SUCC, t)
    return t


def numeral_value(t: Term) -> int | None:
    """``n`` if ``t`` is literally ``S (S ... 0)``, else None."""
    n = 0
    while isinstance(t, App) and isinstance(t.fun, Succ):
        n += 1
        t = t.arg
    return n if isinstance(t, Zero) else None


@dataclass(frozen=True)
class TypingContext:
    """Types (and display names) of free variables; index 0 is innermost."""

    types: tuple[TypeExpr, ...] = ()
    names: tuple[str, ...] = ()

    @classmethod
    def of(cls, **bindings: TypeExpr | str) -> TypingContext:
        """Build a context from keyword bindings; the last one is innermost."""
        from .parser import parse_type

        ctx = cls()
        for name, ty in bindings.items():
            ctx = ctx.extend(name, parse_type(ty) if isinstance(ty, str) else ty)
        return ctx

    def extend(self, name: str, ty: TypeExpr) -> TypingContext:
        return TypingContext((ty, *self.types), (name, *self.names))

    def lookup(self, index: int) -> TypeExpr:
        if not 0 <= index < len(self.types):
            raise UnboundVariableError(f"unbound variable with index {index}")
        return self.types[index]

    def find(self, name: str) -> int | None:
        try:
            return self.names.index(name)
        except ValueError:
            return None

    def __len__(self) -> int:
        return len(self.types)


EMPTY = TypingContext()


def shift(t: Term, d: int, cutoff: int = 0) -> Term:
    """Add ``d`` to every variable index ``>= cutoff``."""
    if d == 0:
        return t
    return _shift(t, d, cutoff)


def _shift(t: Term, d: int, c: int) -> Term:
    if isinstance(t, Var):
        return Var(t.index + d, t.name) if t.index >= c else t
    if isinstance(t, Lam):
        body = _shift(t.body, d, c + 1)
        return t if body is t.body else Lam(t.ty, body, t.name)
    if isinstance(t, App):
        f, a = _shift(t.fun, d, c), _shift(t.arg, d, c)
        return t if f is t.fun and a is t.arg else App(f, a)
    return t


def occurs(t: Term, index: int) -> bool:
    if isinstance(t, Var):
        return t.index == index
    if isinstance(t, Lam):
        return occurs(t.body, index + 1)
    if isinstance(t, App):
        return occurs(t.fun, index) or occurs(t.arg, index)
    return False


def free_indices(t: Term, depth: int = 0) -> set[int]:
    """Indices (relative to the enclosing context) of free variables of ``t``."""
    if isinstance(t, Var):
        return {t.index - depth} if t.index >= depth else set()
    if isinstance(t, Lam):
        return free_indices(t.body, depth + 1)
    if isinstance(t, App):
        return free_indices(t.fun, depth) | free_indices(t.arg, depth)
    return set()


def is_closed(t: Term) -> bool:
    return not free_indices(t)


def is_pure(t: Term) -> bool:
    return not any(isinstance(s, (Zero, Succ, Rec)) for s in iter_subterms(t))


def iter_subterms(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, Lam):
            stack.append(s.body)
        elif isinstance(s, App):
            stack.append(s.arg)
            stack.append(s.fun)


def term_size(t: Term) -> int:
    return sum(1 for _ in iter_subterms(t))


@deep
def alpha_eq(a: Term, b: Term) -> bool:
    return a == b


# ---------------------------------------------------------------------------
# Printing

BINDER_NAMES = "xyzuvwabcdefghk"


def binder_name(depth: int) -> str:
    """Canonical display name for the binder at ``depth`` (outermost is 0)."""
    return BINDER_NAMES[depth] if depth < len(BINDER_NAMES) else f"x{depth}"


def canonical_names(t: Term) -> Term:
    """Same term with every binder renamed by its depth; equality is unchanged."""

    def go(s: Term, depth: int) -> Term:
        if isinstance(s, Lam):
            return Lam(s.ty, go(s.body, depth + 1), binder_name(depth))
        if isinstance(s, App):
            return App(go(s.fun, depth), go(s.arg, depth))
        if isinstance(s, Var):
            return Var(s.index, binder_name(depth - 1 - s.index) if s.index < depth else s.name)
        return s

    return deep(go)(t, 0)


RESERVED = frozenset({"N", "S", "R"})


def _fresh(hint: str, scope: Iterable[str]) -> str:
    taken = set(scope) | RESERVED
    base = hint.rstrip("0123456789'") or "x"
    if hint not in taken:
        return hint
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


@deep
def pretty(t: Term, names: Iterable[str] | TypingContext = ()) -> str:
    """Render ``t`` in the surface grammar, re-parseable by ``parse_term``.

    ``names`` lists free-variable names with index 0 first (or a context).
    """
    if isinstance(names, TypingContext):
        scope = list(names.names)
    else:
        scope = list(names)
    out: list[str] = []
    _emit(t, scope, out, 0)
    return "".join(out)


# precedence levels: 0 = anywhere, 1 = function position, 2 = argument position
def _emit(t: Term, scope: list[str], out: list[str], level: int) -> None:
    n = numeral_value(t)
    if n is not None:
        out.append(f"#{n}")
        return
    if isinstance(t, Var):
        if t.index < len(scope):
            out.append(scope[t.index])
        else:
            out.append(f"v{t.index - len(scope)}")
        return
    if isinstance(t, Succ):
        out.append("S")
        return
    if isinstance(t, Zero):
        out.append("0")
        return
    if isinstance(t, Rec):
        out.append(f"R[{show_type(t.ty)}]")
        return
    if isinstance(t, Lam):
        if level > 0:
            out.append("(")
        name = _fresh(t.name, scope)
        out.append(f"\\{name}:{show_type(t.ty)}. ")
        scope.insert(0, name)
        _emit(t.body, scope, out, 0)
        del scope[0]
        if level > 0:
            out.append(")")
        return
    if level == 2:
        out.append("(")
    _emit(t.fun, scope, out, 1)
    out.append(" ")
    _emit(t.arg, scope, out, 2)
    if level == 2:
        out.append(")")
