from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mcmodels.core import InvalidInput
from mcmodels.freelie import (FreeAlg, bch, bernoulli, bracket, free_nilpotent_lie, gauge_closed_form,
                              is_primitive, lawrence_sullivan, mc_curvature, tensor_exp, tensor_log)

ALG = FreeAlg.of({"a": 0, "b": 0, "c": 0}, 5)
a, b, c = (ALG.gen(g) for g in "abc")

lie_elts = st.lists(st.tuples(st.sampled_from([a, b, c, bracket(a, b), bracket(b, c)]),
                              st.integers(-3, 3)), min_size=1, max_size=3).map(
    lambda terms: sum((e * k for e, k in terms), ALG.zero()))


def test_bernoulli_numbers():
    want = [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42), 0, Fraction(-1, 30)]
    assert [bernoulli(n) for n in range(9)] == want


def test_bch_low_weights():
    z = bch(a, b, 4)
    L = z.alg
    A, B = L.gen("a"), L.gen("b")
    ab = bracket(A, B)
    want3 = A + B + ab / 2 + (bracket(A, ab) + bracket(B, bracket(B, A))) / 12
    assert z.upto(3) == want3
    # classical weight-4 term −1/24 [b, [a, [a, b]]]
    assert z.weight_part(4) == bracket(B, bracket(A, ab)) * Fraction(-1, 24)


@given(lie_elts, lie_elts)
def test_bracket_antisymmetric(x, y):
    assert bracket(x, y) == -bracket(y, x)


@given(lie_elts, lie_elts, lie_elts)
def test_jacobi(x, y, z):
    j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert not j


@given(lie_elts, lie_elts)
def test_bch_is_primitive(x, y):
    assert is_primitive(bch(x, y))


@given(lie_elts, lie_elts, lie_elts)
def test_bch_associative(x, y, z):
    assert bch(bch(x, y), z) == bch(x, bch(y, z))


@given(lie_elts)
def test_log_inverts_exp(x):
    assert tensor_log(tensor_exp(x)) == x


def test_non_primitive_detected():
    assert not is_primitive(a * b)
    assert is_primitive(bracket(a, bracket(a, b)))


def test_bch_rejects_odd_inputs():
    odd = FreeAlg.of({"x": -1}, 3)
    with pytest.raises(InvalidInput):
        bch(odd.gen("x"), odd.gen("x"))


@pytest.mark.parametrize("cap,dims", [(5, [2, 1, 2, 3, 6])])
def test_free_lie_dimensions_match_witt(cap, dims):
    basis, elems, br = free_nilpotent_lie({"x": 0, "y": 0}, cap)
    got = [sum(1 for _, _, w in basis if w == k) for k in range(1, cap + 1)]
    assert got == dims


def test_free_lie_odd_generator_squares():
    # [x, x] ≠ 0 for x odd: weights 1..3 on one odd generator have dims 1, 1, 0
    basis, _, _ = free_nilpotent_lie({"x": -1}, 3)
    assert [sum(1 for _, _, w in basis if w == k) for k in (1, 2, 3)] == [1, 1, 0]


@pytest.mark.parametrize("cap", [3, 5])
def test_lawrence_sullivan_square_zero(cap):
    alg, d = lawrence_sullivan(cap)
    assert d.square_vanishes()


def test_gauge_connects_x0_to_x1():
    alg, d = lawrence_sullivan(6)
    x0, x1, lam = alg.gen("x0"), alg.gen("x1"), alg.gen("lam")
    assert gauge_closed_form(lam, x0, d, 1) == x1
    assert gauge_closed_form(lam, x0, d, 0) == x0


def test_generators_are_mc():
    alg, d = lawrence_sullivan(4)
    assert not mc_curvature(alg.gen("x0"), d)
    assert mc_curvature(alg.gen("lam"), d)  # wrong degree, not a solution
