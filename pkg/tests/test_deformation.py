from fractions import Fraction
from itertools import combinations, permutations, product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mcmodels.core import InvalidInput, PreconditionViolation, Vec, permutation_sign
from mcmodels.deformation import (Cochain, affine_lie, algebra_from_json, associativity_residual,
                                  ce_bracket, ce_differential, chevalley_eilenberg, circ, cochain,
                                  cochain_from_json, dual_numbers, gerstenhaber, hoch_differential,
                                  hochschild_dimension, infinitesimal_deformation_check, is_mc_associative,
                                  jacobi_residual, matrix_algebra_2, random_alternating, random_bilinear,
                                  sl2, trivial_deformation)


def _random_cochain(ids, n, seed):
    import random

    rng = random.Random(seed)
    return cochain(ids, n, lambda *k: Vec({o: rng.randint(-2, 2) for o in ids}))


@settings(max_examples=50)
@given(st.integers(0, 10 ** 6))
def test_half_bracket_is_associativity(seed):
    m = random_bilinear(seed)
    assert gerstenhaber(m, m).scale(Fraction(1, 2)).is_zero() == associativity_residual(m).is_zero()
    is_mc_associative(m)  # raises if the two routes disagree


def test_fixture_kinds():
    assert is_mc_associative(random_bilinear(3, associative=True))
    assert not is_mc_associative(random_bilinear(3, dim=2, associative=False))


@pytest.mark.parametrize("m", [dual_numbers(), matrix_algebra_2()], ids=["dual", "M2"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_hochschild_square_zero(m, n):
    f = _random_cochain(m.ids, n, n)
    assert hoch_differential(m, hoch_differential(m, f)).is_zero()


def test_hochschild_dimensions():
    # k[x]/x² over a field of characteristic 0: HH⁰ = A, HHⁿ = k for n ≥ 1
    assert [hochschild_dimension(dual_numbers(), n) for n in range(4)] == [2, 1, 1, 1]
    # matrix algebras are separable: only the centre survives
    assert [hochschild_dimension(matrix_algebra_2(), n) for n in range(3)] == [1, 0, 0]


@given(st.integers(0, 1000))
def test_coboundaries_are_cocycles(seed):
    for m in (dual_numbers(), matrix_algebra_2()):
        g = _random_cochain(m.ids, 1, seed)
        assert infinitesimal_deformation_check(m, trivial_deformation(m, g))


def test_cocycle_check_needs_associative_product():
    m = random_bilinear(3, dim=2, associative=False)
    with pytest.raises(PreconditionViolation):
        infinitesimal_deformation_check(m, m)


def test_gerstenhaber_graded_antisymmetry():
    m = dual_numbers()
    f, g = _random_cochain(m.ids, 2, 1), _random_cochain(m.ids, 3, 2)
    # |f| = 1, |g| = 2
    assert gerstenhaber(f, g) == gerstenhaber(g, f).scale(-(-1) ** (1 * 2))
    assert circ(f, g).n == 4


@pytest.mark.parametrize("b", [affine_lie(), sl2()], ids=["aff", "sl2"])
def test_lie_fixtures(b):
    assert jacobi_residual(b).is_zero()
    for n in (1, 2, 3):
        if n > len(b.ids):
            continue
        f = random_alternating(b.ids, n, n)
        assert chevalley_eilenberg(b, chevalley_eilenberg(b, f)).is_zero()


@given(st.integers(0, 1000))
def test_half_bracket_is_the_jacobiator(seed):
    # for an arbitrary alternating bracket ½[b, b] = b∘b is the cyclic Jacobi sum
    b = random_alternating(("x", "y", "z"), 2, seed)
    assert ce_bracket(b, b).scale(Fraction(1, 2)) == jacobi_residual(b)


def test_ce_differential_is_bracket_with_structure():
    for b in (affine_lie(), sl2()):
        for n in (1, 2):
            f = random_alternating(b.ids, n, n + 3)
            assert ce_differential(b, f) == ce_bracket(b, f).scale((-1) ** (n + 1))


def test_non_lie_bracket_rejected():
    for seed in range(20):
        bad = random_alternating(("x", "y", "z"), 2, seed)
        if not jacobi_residual(bad).is_zero():
            break
    with pytest.raises(InvalidInput):
        chevalley_eilenberg(bad, random_alternating(bad.ids, 1, 0))


def _ce_cohomology(b):
    """dim Hⁿ(g, g) from ranks of the CE differential on alternating cochains."""
    ids = b.ids
    dims = []
    ranks = {}
    for n in range(len(ids) + 1):
        cols = []
        for S in combinations(ids, n):
            for o in ids:
                table = {tuple(S[i] for i in p): Vec({o: permutation_sign(list(p))})
                         for p in permutations(range(n))}
                cols.append(ce_differential(b, Cochain(ids, n, table)).vector())
        M = sympy.Matrix(cols).T if cols and cols[0] else sympy.zeros(1, len(cols))
        ranks[n] = (len(cols), M.rank())
    for n in range(len(ids) + 1):
        size, r = ranks[n]
        dims.append(size - r - (ranks[n - 1][1] if n else 0))
    return dims


def test_adjoint_cohomology_vanishes():
    # sl2 is semisimple and the adjoint module is non-trivial; aff(1) is complete
    assert _ce_cohomology(sl2()) == [0, 0, 0, 0]
    assert _ce_cohomology(affine_lie()) == [0, 0, 0]


def test_json_loading():
    obj = {"basis": ["1", "x"], "product": [{"inputs": ["1", "1"], "output": [["1", "1"]]},
                                            {"inputs": ["1", "x"], "output": [["x", "1/1"]]},
                                            {"inputs": ["x", "1"], "output": [["x", "1"]]}]}
    m = algebra_from_json(obj)
    assert m == dual_numbers()
    f = cochain_from_json(m.ids, 2, [{"inputs": ["x", "x"], "output": [["1", "1"]]}])
    # x·x = ε·1 is a first-order deformation of the dual numbers
    assert infinitesimal_deformation_check(m, f)
    with pytest.raises(InvalidInput):
        algebra_from_json({"basis": ["1"], "product": [{"inputs": ["1", "z"], "output": []}]})
