"""Binary-tree codes for the type ``(N -> N -> N) -> N -> N`` and the U/V
encodings of functionals.

The reduction of an arbitrary type to the tree type is supplied as a
*witness* term ``M : t -> (N -> N -> N) -> N -> N``; only the identity witness
at the tree type itself ships here.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Union

from . import codec
from .enumerator import EnumeratorBundle
from .errors import PreconditionError, TypeCheckError
from .metanf import is_pure_closed_nf
from .parser import parse_term, parse_type
from .stdlib import namespace
from .syntax import EMPTY, N, App, Arrow, Lam, Term, TypeExpr, Var, arrow, is_closed, is_pure
from .typecheck import check_closed, infer_type

TREE_TYPE: TypeExpr = arrow(arrow(N, N, N), N, N)


@dataclass(frozen=True)
class Leaf:
    def __str__(self) -> str:
        return "Leaf"


@dataclass(frozen=True)
class Node:
    left: "BinaryTree"
    right: "BinaryTree"

    def __str__(self) -> str:
        return f"Node({self.left}, {self.right})"


BinaryTree = Union[Leaf, Node]
LEAF = Leaf()


def tree_size(t: BinaryTree) -> int:
    """Number of branching nodes."""
    size, stack = 0, [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Node):
            size += 1
            stack += [s.left, s.right]
    return size


def tree_of_nf(t: Term) -> BinaryTree:
    """Read ``\\x y. A`` as a tree: ``y`` is a leaf, ``x C D`` a node."""
    if not is_pure_closed_nf(t) or check_closed(t) != TREE_TYPE:
        raise PreconditionError("expected a pure closed normal form of type (N -> N -> N) -> N -> N")
    if not (isinstance(t, Lam) and isinstance(t.body, Lam)):
        raise PreconditionError("tree normal forms have two leading abstractions")

    def walk(a: Term) -> BinaryTree:
        if isinstance(a, Var) and a.index == 0:
            return LEAF
        if (
            isinstance(a, App)
            and isinstance(a.fun, App)
            and isinstance(a.fun.fun, Var)
            and a.fun.fun.index == 1
        ):
            return Node(walk(a.fun.arg), walk(a.arg))
        raise PreconditionError("not a tree body")

    return walk(t.body.body)


def nf_of_tree(tree: BinaryTree) -> Term:
    """Inverse of ``tree_of_nf``."""

    def walk(s: BinaryTree) -> Term:
        if isinstance(s, Leaf):
            return Var(0, "y")
        return App(App(Var(1, "x"), walk(s.left)), walk(s.right))

    return Lam(arrow(N, N, N), Lam(N, walk(tree), "y"), "x")


@functools.lru_cache(maxsize=None)
def tree_numeral(tree: BinaryTree) -> int:
    """Leaf is 0 and ``Node(c, d)`` is ``1 + pair(c, d)``."""
    if isinstance(tree, Leaf):
        return 0
    return 1 + codec.pair(tree_numeral(tree.left), tree_numeral(tree.right))


@functools.cache
def trees_of_size(k: int) -> tuple[BinaryTree, ...]:
    """All trees with exactly ``k`` branching nodes."""
    if k == 0:
        return (LEAF,)
    return tuple(
        Node(left, right)
        for i in range(k)
        for left in trees_of_size(i)
        for right in trees_of_size(k - 1 - i)
    )


def all_trees(max_nodes: int) -> Iterator[BinaryTree]:
    for k in range(max_nodes + 1):
        yield from trees_of_size(k)


@dataclass(frozen=True)
class ReducibilityWitness:
    tau: TypeExpr
    M: Term

    def __post_init__(self) -> None:
        if not is_pure(self.M):
            raise PreconditionError("witness must be a pure term")
        if not is_closed(self.M):
            raise PreconditionError("witness must be closed")
        got = check_closed(self.M)
        want = Arrow(self.tau, TREE_TYPE)
        if got != want:
            raise TypeCheckError(f"witness has type {got}, expected {want}")


def identity_witness() -> ReducibilityWitness:
    return ReducibilityWitness(TREE_TYPE, Lam(TREE_TYPE, Var(0, "x"), "x"))


def load_witness(source: str | Path, tau: TypeExpr | str | None = None) -> ReducibilityWitness:
    """Parse a witness from a file path or from source text.

    When ``tau`` is omitted it is read off the witness's own type.
    """
    path = Path(source) if not isinstance(source, Path) else source
    try:
        text = path.read_text() if path.is_file() else str(source)
    except OSError:
        text = str(source)
    M = parse_term(text)
    if tau is None:
        ty = check_closed(M)
        if not isinstance(ty, Arrow):
            raise TypeCheckError(f"witness has non-arrow type {ty}")
        tau = ty.dom
    elif isinstance(tau, str):
        tau = parse_type(tau)
    return ReducibilityWitness(tau, M)


def build_N(witness: ReducibilityWitness) -> Term:
    """``\\x. M x (\\c d. S (P0 c d)) #0`` at type ``t -> N``."""
    term = parse_term(
        f"\\x:({witness.tau}). M x (\\c:N. \\d:N. S (P0 c d)) #0",
        defs={"M": witness.M, "P0": namespace()["P0"]},
    )
    check_closed(term)
    return term


def _expect(term: Term, ty: TypeExpr, what: str) -> None:
    if not is_closed(term):
        raise PreconditionError(f"{what} must be closed")
    got = infer_type(EMPTY, term)
    if got != ty:
        raise TypeCheckError(f"{what} has type {got}, expected {ty}")


def encode_U(
    F: Term,
    sigma: TypeExpr,
    tau: TypeExpr,
    wit_tau: ReducibilityWitness,
    bundle_sigma: EnumeratorBundle,
) -> Term:
    """``\\x:N. N_t (F (E_s x))``: reads a Gödel code, emits a tree code."""
    _expect(F, Arrow(sigma, tau), "F")
    if wit_tau.tau != tau:
        raise TypeCheckError(f"witness is for {wit_tau.tau}, not {tau}")
    if bundle_sigma.tau != sigma:
        raise TypeCheckError(f"enumerator is for {bundle_sigma.tau}, not {sigma}")
    term = Lam(N, App(build_N(wit_tau), App(F, App(bundle_sigma.E, Var(0, "x")))), "x")
    check_closed(term)
    return term


def decode_V(
    G: Term,
    sigma: TypeExpr,
    tau: TypeExpr,
    wit_sigma: ReducibilityWitness,
    bundle_tau: EnumeratorBundle,
) -> Term:
    """``\\x:s. E_t (G (N_s x))``: reads a tree code, decodes a Gödel code."""
    _expect(G, Arrow(N, N), "G")
    if wit_sigma.tau != sigma:
        raise TypeCheckError(f"witness is for {wit_sigma.tau}, not {sigma}")
    if bundle_tau.tau != tau:
        raise TypeCheckError(f"enumerator is for {bundle_tau.tau}, not {tau}")
    term = Lam(sigma, App(bundle_tau.E, App(G, App(build_N(wit_sigma), Var(0, "x")))), "x")
    check_closed(term)
    return term
