from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from mcmodels.core import (GMap, GradedSpace, InvalidInput, Vec, ZERO, check_complex, compositions,
                           hom_differential, identity_map, koszul_sign, permutation_sign,
                           scalar_to_str, set_partitions, suspend, unshuffles)

vecs = st.dictionaries(st.sampled_from("abcde"), st.fractions(max_denominator=6), max_size=5).map(Vec)


def test_scalar_serialisation():
    assert scalar_to_str(Fraction(-3, 6)) == "-1/2"
    assert scalar_to_str(2) == "2/1"


def test_vec_drops_zeros():
    v = Vec({"a": 1, "b": 0}) + Vec({"a": -1})
    assert v == ZERO and not v and len(v) == 0


@given(vecs, vecs, vecs)
def test_vec_is_a_vector_space(u, v, w):
    assert (u + v) + w == u + (v + w)
    assert u + v == v + u
    assert u - u == ZERO
    assert (u + v) * 3 == u * 3 + v * 3


def test_koszul_sign_examples():
    # swapping two odd elements costs a sign, even ones do not
    assert koszul_sign([1, 0], [1, 1]) == -1
    assert koszul_sign([1, 0], [2, 1]) == 1
    assert koszul_sign([2, 1, 0], [1, 1, 1]) == -1
    assert permutation_sign([1, 2, 0]) == 1


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=5), st.data())
def test_koszul_sign_is_a_homomorphism(degs, data):
    n = len(degs)
    s = data.draw(st.permutations(range(n)))
    t = data.draw(st.permutations(range(n)))
    # apply s, then t to the reordered list
    st_ = [s[t[i]] for i in range(n)]
    moved = [degs[i] for i in s]
    assert koszul_sign(st_, degs) == koszul_sign(s, degs) * koszul_sign(t, moved)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=5))
def test_koszul_all_even_is_trivial(degs):
    degs = [2 * d for d in degs]
    assert all(koszul_sign(p, degs) == 1 for p in permutations(range(len(degs))))


def test_bad_permutation():
    with pytest.raises(InvalidInput):
        koszul_sign([0, 0], [1, 1])


def test_counting_helpers():
    assert sum(1 for _ in compositions(5)) == 16
    assert sum(1 for _ in compositions(6, 3)) == 10
    assert sum(1 for _ in unshuffles(5, 2)) == 10
    assert sum(1 for _ in set_partitions(tuple(range(5)))) == 52  # Bell number


def _cone():
    V = GradedSpace.of([("x", 1), ("y", 0)])
    d = GMap(V, V, -1, {"x": Vec({"y": 1})})
    return V, d


def test_complex_and_suspension():
    V, d = _cone()
    assert check_complex(d)
    sd = suspend(d)
    assert sd.source.deg("x") == 2
    assert sd.on_basis("x") == Vec({"y": -1})


def test_hom_differential_of_identity_vanishes():
    V, d = _cone()
    assert hom_differential(identity_map(V), d, d).is_zero()


def test_gmap_rejects_wrong_degree():
    V, _ = _cone()
    with pytest.raises(InvalidInput):
        GMap(V, V, -1, {"y": Vec({"x": 1})})
