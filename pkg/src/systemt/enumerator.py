"""In-theory enumerators of pure closed normal forms.

For a type ``t`` with subtypes ``t1 = t, t2, ..., tn`` this builds the terms
``A``, ``B_i``, ``J_{j,i}``, ``L_{j,l}`` and the enumerator ``E : N -> t``
whose value at the Gödel code of a normal form is that normal form.  Each
term is transcribed as written, with the tuple/list sugar expanded through
``stdlib``.
"""

from __future__ import annotations

import functools
from collections.abc import Collection
from dataclasses import dataclass, field

from . import stdlib
from .codec import DEFAULT_GUARD, numeral_of_code
from .normalizer import Budget, NormalForm, equal, normalize
from .parser import parse_term
from .syntax import N, App, Arrow, Term, TypeExpr, arrow, numeral_term, show_type, subtypes
from .typecheck import check_closed

ENUMERATOR_BUDGET = Budget(max_steps=10**9, max_nodes=10**7)


def _par(t: TypeExpr) -> str:
    return f"({show_type(t)})" if isinstance(t, Arrow) else "N"


@dataclass
class EnumeratorBundle:
    tau: TypeExpr
    types: list[TypeExpr]  # t1 ... tn, 1-based in every report
    upsilons: list[TypeExpr]  # u_i = (N -> t1) -> ... -> (N -> tn) -> N -> t_i
    upsilon: TypeExpr  # u1 * ... * un
    A: Term = field(repr=False)
    B: dict[int, Term] = field(repr=False)
    J: dict[tuple[int, int], Term] = field(repr=False)
    L: dict[tuple[int, int], Term] = field(repr=False)
    E: Term = field(repr=False)
    # (j, i) -> k for the application slots, (n+1, i) -> (j, k) for the
    # abstraction slot; degenerate slots are absent
    dispatch: dict[tuple[int, int], object] = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.types)

    def degenerate(self) -> list[tuple[int, int]]:
        """``(j, i)`` slots filled by the constant-zero fallback."""
        return sorted(
            (j, i)
            for i in range(1, self.n + 1)
            for j in range(1, self.n + 2)
            if (j, i) not in self.dispatch
        )

    def stated_types(self) -> dict[str, TypeExpr]:
        """The type each term must have, keyed by a display name."""
        nu = Arrow(N, self.upsilon)
        out = {"A": arrow(N, N, self.upsilon), "E": Arrow(N, self.tau)}
        for i in range(1, self.n + 1):
            out[f"B{i}"] = arrow(nu, N, self.upsilons[i - 1])
            for j in range(0, self.n + 2):
                out[f"J{j},{i}"] = arrow(nu, N, self.upsilons[i - 1])
        for j in range(1, self.n + 1):
            for l in range(1, self.n + 1):
                out[f"L{j},{l}"] = Arrow(self.types[j - 1], self.types[l - 1])
        return out

    def terms(self) -> dict[str, Term]:
        out = {"A": self.A, "E": self.E}
        out.update({f"B{i}": t for i, t in self.B.items()})
        out.update({f"J{j},{i}": t for (j, i), t in self.J.items()})
        out.update({f"L{j},{l}": t for (j, l), t in self.L.items()})
        return out


@functools.cache
def build_bundle(tau: TypeExpr) -> EnumeratorBundle:
    ts = subtypes(tau)
    n = len(ts)
    index = {t: k for k, t in enumerate(ts, 1)}
    to_nat = [Arrow(N, t) for t in ts]
    ups = [arrow(*to_nat, N, t) for t in ts]
    upsilon = stdlib.tuple_type(ups)

    defs: dict[str, Term] = dict(stdlib.namespace())
    for l, t in enumerate(ts, 1):
        defs[f"Cons{l}"] = stdlib.cons(t).term
        defs[f"Zero{l}"] = stdlib.zero_of_type(t).term
        defs[f"ZeroN{l}"] = stdlib.zero_of_type(Arrow(N, t)).term
        defs[f"Proj{l}"] = stdlib.projection(ups, l).term
        defs[f"ConsU{l}"] = stdlib.cons(ups[l - 1]).term
        defs[f"ZeroU{l}"] = stdlib.zero_of_type(ups[l - 1]).term
        defs[f"ZeroNU{l}"] = stdlib.zero_of_type(Arrow(N, ups[l - 1])).term
    defs["ConsV"] = stdlib.cons(upsilon).term
    defs["ZeroNV"] = stdlib.zero_of_type(Arrow(N, upsilon)).term

    def parse(text: str) -> Term:
        return parse_term(text, defs=defs)

    head = f"\\a:N -> {_par(upsilon)}. \\b:N. "
    xs = "".join(f"\\x{l}:N -> {_par(t)}. " for l, t in enumerate(ts, 1))

    L: dict[tuple[int, int], Term] = {}
    for j, tj in enumerate(ts, 1):
        for l, tl in enumerate(ts, 1):
            if l == j:
                L[j, l] = parse(f"\\z:{show_type(tj)}. z")
            else:
                L[j, l] = stdlib.zero_of_type(Arrow(tj, tl)).term
            defs[f"L{j}_{l}"] = L[j, l]

    J: dict[tuple[int, int], Term] = {}
    dispatch: dict[tuple[int, int], object] = {}
    shifted = " ".join(f"(Cons{l} Zero{l} x{l})" for l in range(1, n + 1))
    for i, ti in enumerate(ts, 1):
        J[0, i] = parse(f"{head}{xs}\\y:N. x{i} (Monus (Monus y #1) (P2 b))")
        for j, tj in enumerate(ts, 1):
            k = index.get(Arrow(tj, ti))
            if k is None:
                J[j, i] = parse(f"{head}ZeroU{i}")
                continue
            dispatch[j, i] = k
            J[j, i] = parse(
                f"{head}{xs}\\y:N. "
                f"(Proj{k} (a (Monus (Monus b #1) (P1 (P2 b)))) {shifted} (S y)) "
                f"(Proj{j} (a (Monus (Monus b #1) (P2 (P2 b)))) {shifted} (S y))"
            )
        if isinstance(ti, Arrow):
            j, k = index[ti.dom], index[ti.cod]
            dispatch[n + 1, i] = (j, k)
            pushed = " ".join(f"(Cons{l} (L{j}_{l} z) x{l})" for l in range(1, n + 1))
            J[n + 1, i] = parse(
                f"{head}{xs}\\y:N. \\z:{show_type(ts[j - 1])}. "
                f"Proj{k} (a (Monus (Monus b #1) (P2 b))) {pushed} (S y)"
            )
        else:
            J[n + 1, i] = parse(f"{head}ZeroU{i}")

    B: dict[int, Term] = {}
    for i in range(1, n + 1):
        for j in range(0, n + 2):
            defs[f"J{j}_{i}"] = J[j, i]
        items = "ZeroNU%d" % i
        for j in reversed(range(0, n + 2)):
            items = f"ConsU{i} (J{j}_{i} a b) ({items})"
        B[i] = parse(f"{head}({items}) (P1 b)")
        defs[f"B{i}"] = B[i]

    # {B1 a b, ..., Bn a b}
    tup = f"(B{n} a b)"
    for l in reversed(range(1, n)):
        d0, _, _ = stdlib.curry_pair(ups[l - 1], stdlib.tuple_type(ups[l:]))
        defs[f"Pair{l}"] = d0.term
        tup = f"(Pair{l} (B{l} a b) {tup})"
    A = parse(
        f"\\x:N. R[N -> {_par(upsilon)}] ZeroNV "
        f"(\\a:N -> {_par(upsilon)}. \\b:N. ConsV {tup} a) (S x)"
    )
    defs["A"] = A
    zeros = " ".join(f"ZeroN{l}" for l in range(1, n + 1))
    E = parse(f"\\x:N. Proj1 (A x #0) {zeros} #0")

    return EnumeratorBundle(tau, ts, ups, upsilon, A, B, J, L, E, dispatch)


def typecheck_bundle(bundle: EnumeratorBundle) -> dict[str, bool]:
    """Check every term in the bundle against its stated type."""
    stated = bundle.stated_types()
    return {name: check_closed(t) == stated[name] for name, t in bundle.terms().items()}


def check_lemma_a(
    bundle: EnumeratorBundle,
    i: int,
    j: int,
    budget: Budget = ENUMERATOR_BUDGET,
    jets: bool | Collection[str] = True,
) -> bool:
    """``A (i+j) j`` and ``A i 0`` have the same normal form."""
    lhs = App(App(bundle.A, numeral_term(i + j)), numeral_term(j))
    rhs = App(App(bundle.A, numeral_term(i)), numeral_term(0))
    return equal(lhs, rhs, budget, jets=jets)


def apply_enumerator(
    bundle: EnumeratorBundle,
    code: int,
    budget: Budget = ENUMERATOR_BUDGET,
    guard: int = DEFAULT_GUARD,
    jets: bool | Collection[str] = True,
) -> NormalForm:
    """Normal form of ``E code``."""
    arg = numeral_of_code(code, guard).term
    return normalize(App(bundle.E, arg), budget, jets=jets)
