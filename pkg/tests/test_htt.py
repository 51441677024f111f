from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from mcmodels.acceptance import an_transfer, connecting_agrees, multicomplex_fixture
from mcmodels.core import GMap, PreconditionViolation, Vec
from mcmodels.htt import (An_contraction, bar_sign, check_ainfty, check_ainfty_morphism, check_multicomplex,
                          check_unshifted_ainfty, detect_orientation, from_bar, to_bar, transfer_dual_numbers)


@pytest.mark.parametrize("n", [2, 3])
def test_transfer_to_truncated_polynomials(n):
    C, small, icomps, m, i = an_transfer(n, 4)
    assert check_ainfty(small, 4).ok
    assert check_ainfty_morphism(icomps, small, C.big, 4, list(C.small_basis))
    for a, b in product(range(1, n), repeat=2):
        want = Vec({("z", a + b): 1}) if a + b < n else Vec()
        assert Vec(m[2](("z", a), ("z", b))) == want
    for combo in product(C.small_basis, repeat=3):
        assert not m[3](*combo)


def test_bar_conversion_roundtrip():
    C, m_ops, deg, basis = An_contraction(2)
    bar = to_bar(m_ops, deg, 2, basis)
    back = from_bar(bar.ops, bar.deg)
    for k in basis[:6]:
        assert Vec(back[1](k)) == Vec(m_ops[1](k))
        assert bar.ops[1](k) == Vec(m_ops[1](k))  # b_1 = +d
    for a, b in product(basis[:5], repeat=2):
        assert Vec(back[2](a, b)) == Vec(m_ops[2](a, b))


def test_bar_sign_small_cases():
    assert bar_sign([0]) == 1
    assert bar_sign([0, 0]) == -1
    assert bar_sign([1, 0]) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_unshifted_relations_agree_with_bar_relations(n):
    C, small, icomps, m, i = an_transfer(n, 4)
    assert check_unshifted_ainfty(m, lambda k: 0, list(C.small_basis), 4)
    C, m_ops, deg, basis = An_contraction(n)
    assert check_unshifted_ainfty(m_ops, deg, basis[:8], 3)


def test_orientation_rejects_non_contraction():
    V = {"x": 0}
    with pytest.raises(PreconditionViolation):
        detect_orientation(lambda k: Vec(), lambda k: Vec({k: 2}), lambda k: Vec({k: 1}),
                           lambda k: Vec(), list(V))


@settings(max_examples=6)
@given(st.integers(0, 50))
def test_multicomplex_transfer_matches_connecting_map(seed):
    d, Ds = multicomplex_fixture(seed)
    H, out, i, p, h = transfer_dual_numbers(d, Ds[1], 4)
    assert check_multicomplex(GMap(H, H, -1, {}), out)
    assert connecting_agrees(d, Ds[1], H, out[1], i)
