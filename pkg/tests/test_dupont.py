from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, strategies as st

from mcmodels.core import InvalidInput, Vec
from mcmodels.dupont import (d_form, d_whitney, degeneracy, face, h_map, i_map, integrate, monomials,
                             p_map, t, transfer_cn_structure, verify_contraction, wedge, whitney,
                             whitney_basis)
from mcmodels.htt import check_ainfty


def _sympy_integral(e, n):
    """∫ over {t_i ≥ 0, Σ t_i ≤ 1} of ∏ t_i^{e_i}, by iterated integration."""
    ts = sympy.symbols(f"t1:{n + 1}")
    f = sympy.Integer(1)
    for ti, ei in zip(ts, e):
        f *= ti ** ei
    for k in reversed(range(n)):
        f = sympy.integrate(f, (ts[k], 0, 1 - sum(ts[:k])))
    return Fraction(str(f))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_integration_against_sympy(n):
    top = tuple(range(1, n + 1))
    for key in monomials(n, 3):
        if key[1] == top:
            assert integrate(Vec({key: 1}), n) == _sympy_integral(key[0], n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_top_whitney_form_integrates_to_one(n):
    assert integrate(whitney(tuple(range(n + 1)), n), n) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_d_of_whitney_form(n):
    # dω_I = Σ_i ω_{iI} over vertices i outside I, with the index put in front
    for I in whitney_basis(n):
        acc = Vec()
        for i in range(n + 1):
            if i in I:
                continue
            J = tuple(sorted((i,) + I))
            pos = J.index(i)
            acc = acc + whitney(J, n) * (-1) ** pos
        assert d_form(whitney(I, n)) == acc


def test_whitney_rejects_bad_indices():
    with pytest.raises(InvalidInput):
        whitney((1, 0), 2)
    with pytest.raises(InvalidInput):
        whitney((0, 4), 2)


forms2 = st.lists(st.tuples(st.sampled_from(monomials(2, 2)), st.integers(-3, 3)), max_size=4).map(Vec)


@given(forms2)
def test_d_squared_zero(a):
    assert not d_form(d_form(a))


@given(forms2, forms2)
def test_leibniz_chain_convention(a, b):
    # homogeneous parts, d has degree −1 and dt_i has degree −1
    for ka, ca in a.items():
        x = Vec({ka: ca})
        s = (-1) ** len(ka[1])
        assert d_form(wedge(x, b)) == wedge(d_form(x), b) + wedge(x, d_form(b)) * s


@given(forms2)
def test_faces_commute_with_d(a):
    for i in range(3):
        assert face(d_form(a), i) == d_form(face(a, i))
        assert degeneracy(d_form(a), i) == d_form(degeneracy(a, i))


@given(forms2)
def test_cosimplicial_identities(a):
    for j in range(3):
        assert face(degeneracy(a, j), j) == a
        assert face(degeneracy(a, j), j + 1) == a
    for i, j in combinations(range(3), 2):
        assert face(face(a, j), i) == face(face(a, i), j - 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_contraction(n):
    rep = verify_contraction(n, 4 if n == 3 else 5)
    assert rep.ok, rep.to_json()


def test_p_of_vertex_functions():
    # p sends t_i to the vertex class ω_i
    for i in range(3):
        assert p_map(t(2, i), 2) == Vec({(i,): 1})


def test_i_and_d_commute_on_whitney():
    for I in whitney_basis(2):
        c = Vec({I: 1})
        assert d_form(i_map(c, 2)) == i_map(d_whitney(c, 2), 2)


def test_transferred_structure_on_interval():
    small, m, C = transfer_cn_structure(1, 4)
    assert check_ainfty(small, 4).ok
    # the product of the two vertex classes vanishes, each is idempotent
    assert not m[2]((0,), (1,))
    assert Vec(m[2]((0,), (0,))) == Vec({(0,): 1})
