from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from mcmodels.core import InvalidInput, PreconditionViolation, Vec
from mcmodels.linfty import mc_residual, strict_lie_fixture
from mcmodels.mcspace import (LevelModel, P_map, _mcinf1_skeleton, at_vertex, build_mc0, build_mc1,
                              build_mcinf0, build_mcinf1, cell_from_images, dlam_fixed_point, dlam_tree_sum,
                              gamma_membership, images_from_cell, mc_membership, random_mc_cell,
                              random_mc_path, rect)


@lru_cache(maxsize=None)
def level(seed, n=1):
    return LevelModel(strict_lie_fixture(seed, 3, (0,)), n)


@settings(max_examples=6)
@given(st.integers(0, 30))
def test_cells_and_their_images_are_mc(seed):
    M = level(seed % 3)
    beta = random_mc_cell(M, seed)
    assert not mc_residual(M.small, beta)
    x = M.I(beta)
    assert not mc_membership(M, x)
    assert M.P(x) == beta


@settings(max_examples=6)
@given(st.integers(0, 30))
def test_level1_cells_are_gauge_triples(seed):
    # the three components of an MC cell are two MC elements and a gauge between them
    M = level(seed % 3)
    x0, x1, lam = images_from_cell(M, random_mc_cell(M, seed))
    beta = cell_from_images(M, x0, x1, lam, check=True)
    assert images_from_cell(M, beta) == (x0, x1, lam)


def test_wrong_gauge_is_rejected():
    M = level(1)
    for seed in range(20):
        x0, x1, lam = images_from_cell(M, random_mc_cell(M, seed))
        if x0 != x1:
            break
    else:
        raise AssertionError("no cell with distinct endpoints")
    # λ moves x0 to x1, so it is not a gauge from x0 to itself
    with pytest.raises(InvalidInput):
        cell_from_images(M, x0, x0, lam, check=True)


@pytest.mark.parametrize("seed", [0, 2])
def test_rectified_paths(seed):
    M = level(seed)
    assert M.validate().ok
    x = random_mc_path(M, seed + 11)
    r = rect(M, x)
    assert gamma_membership(M, r)
    assert all(at_vertex(r, i, 1) == at_vertex(x, i, 1) for i in (0, 1))
    assert rect(M, r) == r


def test_p_needs_mc_path():
    M = level(0)
    x = random_mc_path(M, 3)
    with pytest.raises(PreconditionViolation):
        P_map(M, x + x)


def test_level_zero_is_the_algebra_itself():
    M = level(1, 0)
    beta = random_mc_cell(M, 2)
    assert M.P(M.I(beta)) == beta


def test_level_bound():
    with pytest.raises(InvalidInput):
        LevelModel(strict_lie_fixture(0, 2, (0,)), 3)


def test_low_level_presentations():
    alg, d = build_mc0(5)
    assert d.square_vanishes()
    alg, d = build_mc1(4)
    assert d.square_vanishes()
    A = build_mcinf0(4)
    assert not A.d_squared(["a"])


@pytest.mark.parametrize("cap", [3, 4])
def test_mcinf1_fixed_point_schedules_and_trees(cap):
    A = _mcinf1_skeleton(cap, strict=False)
    pic = dlam_fixed_point(A, "picard")
    assert pic == dlam_fixed_point(A, "graded") == dlam_tree_sum(A)


def test_mcinf1_report():
    _, rep = build_mcinf1(3)
    assert rep.ok, rep.to_json()
