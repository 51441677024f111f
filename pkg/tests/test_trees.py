from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mcmodels.core import InvalidInput
from mcmodels.trees import (BLACK, WHITE, WTree, coeff_F, coeff_G, coeff_W, corolla, enumerate_dectrees,
                            enumerate_planar, enumerate_rooted, enumerate_wptrees, from_json, graft, to_json)

# little Schröder numbers and phylogenetic tree counts (OEIS A001003, A000311)
SCHROEDER = {1: 1, 2: 1, 3: 3, 4: 11, 5: 45}
PHYLO = {1: 1, 2: 1, 3: 4, 4: 26, 5: 236}


def test_trivial_tree_is_not_enumerated():
    # only trees with at least one vertex take part in transfer formulas
    assert enumerate_planar(1) == [] and enumerate_rooted(1) == []


@pytest.mark.parametrize("n", range(2, 6))
def test_planar_reduced_counts(n):
    assert len(enumerate_planar(n)) == SCHROEDER[n]


@pytest.mark.parametrize("n", range(2, 6))
def test_rooted_reduced_counts(n):
    assert len(enumerate_rooted(n)) == PHYLO[n]


def test_non_reduced_needs_a_bound():
    with pytest.raises(InvalidInput):
        enumerate_planar(3, reduced=False)
    # the corolla, a unary vertex below it, or one above either leaf
    assert len(enumerate_planar(2, reduced=False, max_vertices=2)) == 4


def test_binary_weighted_trees_are_catalan():
    # weight-1 binary vertices only: trees of weight k are counted by Catalan(k)
    trees = enumerate_wptrees(5, [(2, 1)])
    counts = [sum(1 for t in trees if coeff_W(t) == k) for k in range(6)]
    assert counts == [1, 1, 2, 5, 14, 42]


def test_tree_factorial():
    # the Butcher tree factorial: a chain of k unary vertices has F = k!
    t = None
    for k in range(1, 6):
        t = WTree(1, (t,))
        assert coeff_F(t) == [1, 2, 6, 24, 120][k - 1]
    assert coeff_F(WTree(2, (corolla(0), corolla(0, 3)))) == 6 * 1 * 3


def test_graft_and_json_roundtrip():
    t = graft(corolla(2), 1, corolla(3, 2))
    assert t.arity == 4 and coeff_W(t) == 3
    assert from_json(to_json(t)) == t


@given(st.integers(0, 4))
def test_wptree_weights_bounded(cap):
    for t in enumerate_wptrees(cap, [(0, 1), (1, 2), (2, 1)]):
        assert coeff_W(t) <= cap


def test_dectree_coefficients():
    decs = enumerate_dectrees(3)
    assert decs, "there are decorated trees of weight 3"
    for T in decs:
        g = coeff_G(T)
        assert isinstance(g, Fraction) and g != 0
    with pytest.raises(InvalidInput):
        coeff_G(BLACK)
    assert WHITE != BLACK
