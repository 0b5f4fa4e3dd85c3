from __future__ import annotations

import pytest

from oracles import ARITH_JETS, cantor
from systemt.codec import encode_oslash, numeral_of_code
from systemt.enumerator import build_bundle
from systemt.errors import PreconditionError, TypeCheckError
from systemt.metanf import enumerate_pure_closed_nf
from systemt.normalizer import eval_numeral, normalize
from systemt.parser import parse_term, parse_type
from systemt.reducibility import (
    LEAF,
    TREE_TYPE,
    Node,
    ReducibilityWitness,
    all_trees,
    build_N,
    decode_V,
    encode_U,
    identity_witness,
    load_witness,
    nf_of_tree,
    tree_numeral,
    tree_of_nf,
    tree_size,
    trees_of_size,
)
from systemt.syntax import App, canonical_names, pretty

JETS = ARITH_JETS
LITERAL_P0 = ARITH_JETS - {"P0"}
GRAFT = "\\t:(N -> N -> N) -> N -> N. \\x:N -> N -> N. \\y:N. x (t x y) y"


def meta_numeral(tree):
    if tree == LEAF:
        return 0
    return 1 + cantor(meta_numeral(tree.left), meta_numeral(tree.right))


def test_tree_examples():
    assert tree_numeral(LEAF) == 0
    assert tree_numeral(Node(LEAF, LEAF)) == 1
    assert tree_numeral(Node(Node(LEAF, LEAF), LEAF)) == 3
    assert tree_numeral(Node(LEAF, Node(LEAF, LEAF))) == 2
    assert str(Node(LEAF, LEAF)) == "Node(Leaf, Leaf)"


def test_tree_counts_and_injectivity():
    catalan = [1, 1, 2, 5, 14, 42, 132]
    assert [len(trees_of_size(k)) for k in range(7)] == catalan
    trees = list(all_trees(6))
    nums = [tree_numeral(t) for t in trees]
    assert len(set(nums)) == len(nums) == sum(catalan)
    assert nums == [meta_numeral(t) for t in trees]
    assert all(tree_size(t) <= 6 for t in trees)


def test_tree_nf_bijection():
    # k branching nodes give a term of size 3 + 4k
    nfs = enumerate_pure_closed_nf(TREE_TYPE, 15)
    assert {tree_of_nf(t) for t in nfs} == set(all_trees(3))
    assert len(nfs) == sum(1 for _ in all_trees(3))
    for t in all_trees(5):
        assert tree_of_nf(nf_of_tree(t)) == t
    with pytest.raises(PreconditionError):
        tree_of_nf(parse_term("\\x:N. x"))


def test_build_N_identity_separates():
    n = build_N(identity_witness())
    seen = {}
    for tree in all_trees(5):
        value = eval_numeral(normalize(App(n, nf_of_tree(tree)), jets=JETS))
        assert value == tree_numeral(tree)
        seen[value] = tree
    assert len(seen) == sum(1 for _ in all_trees(5))


def test_build_N_literal_pairing():
    # P0 computed by its term, not the jet
    n = build_N(identity_witness())
    for tree in all_trees(2):
        assert eval_numeral(normalize(App(n, nf_of_tree(tree)), jets=LITERAL_P0)) == tree_numeral(tree)


@pytest.fixture(scope="module")
def tree_bundle():
    return build_bundle(TREE_TYPE)


def test_encode_U_identity(tree_bundle):
    U = encode_U(parse_term(f"\\t:({TREE_TYPE}). t"), TREE_TYPE, TREE_TYPE, identity_witness(), tree_bundle)
    leaf = nf_of_tree(LEAF)
    assert encode_oslash(leaf) == 501
    assert eval_numeral(normalize(App(U, numeral_of_code(501).term), jets=JETS)) == 0


def test_encode_U_graft(tree_bundle):
    U = encode_U(parse_term(GRAFT), TREE_TYPE, TREE_TYPE, identity_witness(), tree_bundle)
    assert eval_numeral(normalize(App(U, numeral_of_code(501).term), jets=JETS)) == 1


def test_decode_V_constant(tree_bundle):
    V = decode_V(parse_term("\\n:N. #501"), TREE_TYPE, TREE_TYPE, identity_witness(), tree_bundle)
    out = normalize(App(V, nf_of_tree(Node(LEAF, Node(LEAF, LEAF)))), jets=JETS).term
    assert out == nf_of_tree(LEAF)


def test_decode_V_golden(tree_bundle, golden):
    V = decode_V(parse_term("\\n:N. n"), TREE_TYPE, TREE_TYPE, identity_witness(), tree_bundle)
    for line in (golden / "decode_v_identity_tree.txt").read_text().splitlines():
        src, want = line.split("\t")
        got = normalize(App(V, parse_term(src)), jets=JETS).term
        assert pretty(canonical_names(got)) == want


def test_U_type_errors(tree_bundle):
    with pytest.raises(TypeCheckError):
        encode_U(parse_term("\\x:N. x"), TREE_TYPE, TREE_TYPE, identity_witness(), tree_bundle)
    with pytest.raises(TypeCheckError):
        decode_V(parse_term("\\x:N. \\y:N. x"), TREE_TYPE, TREE_TYPE, identity_witness(), tree_bundle)
    with pytest.raises(TypeCheckError):
        encode_U(
            parse_term("\\x:N -> N. x"),
            parse_type("N -> N"),
            parse_type("N -> N"),
            identity_witness(),
            build_bundle(parse_type("N -> N")),
        )


def test_witness_validation(tmp_path):
    with pytest.raises(PreconditionError):
        ReducibilityWitness(TREE_TYPE, parse_term(f"\\t:({TREE_TYPE}). \\x:N -> N -> N. \\y:N. S y"))
    with pytest.raises(TypeCheckError):
        ReducibilityWitness(TREE_TYPE, parse_term("\\x:N. x"))
    path = tmp_path / "w.t"
    path.write_text(f"\\t:({TREE_TYPE}). t")
    w = load_witness(path)
    assert w.tau == TREE_TYPE and w == identity_witness()
    assert load_witness(GRAFT, tau=str(TREE_TYPE)).tau == TREE_TYPE
