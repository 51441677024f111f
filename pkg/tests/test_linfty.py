from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mcmodels.core import GMap, GradedSpace, InvalidInput, PreconditionViolation, Vec
from mcmodels.linfty import (InfMorphism, SLInfty, check_lie, check_morphism, check_relations, compose_inf,
                             free_lie_data, gauge_flow, identity_inf, mc_pushforward, mc_residual,
                             pullback_structure, random_fixture, random_gauge, random_inf_components,
                             random_mc, strict_fixture, strict_lie_fixture, suspend_lie, twist)

seeds = st.integers(0, 40)


def test_d_squared_failure_is_caught():
    V = GradedSpace.of([("x", 1), ("y", 0), ("z", -1)])
    d = GMap(V, V, -1, {"x": Vec({"y": 1}), "y": Vec({"z": 1})})
    rep = check_relations(SLInfty.from_tables(V, {1: d}), 1)
    assert not rep.ok and rep.failure == ("x",)


def test_from_tables_checks_degree_and_symmetry():
    V = GradedSpace.of([("a", 0), ("b", 0), ("c", -1)])
    with pytest.raises(InvalidInput):
        SLInfty.from_tables(V, {2: {("a", "b"): {"a": 1}}})
    with pytest.raises(InvalidInput):
        SLInfty.from_tables(V, {2: {("a", "b"): {"c": 1}, ("b", "a"): {"c": 2}}})
    A = SLInfty.from_tables(V, {2: {("b", "a"): {"c": 1}}})
    assert A.ell(2, Vec({"a": 1}), Vec({"b": 1})) == Vec({"c": 1})


def test_free_lie_and_suspension():
    g = free_lie_data({"a": 0, "b": -1}, 3)
    assert check_lie(g)
    assert check_relations(suspend_lie(g), 3).ok


@pytest.mark.parametrize("seed", range(3))
def test_fixtures_satisfy_relations(seed):
    assert check_relations(strict_fixture(seed, 3), 3).ok
    assert check_relations(random_fixture(seed, 3, 3), 4).ok


@settings(max_examples=10)
@given(seeds)
def test_gauge_flow_preserves_mc(seed):
    A = random_fixture(seed % 5, 3, 3)
    x0 = random_mc(A, seed)
    assert not mc_residual(A, x0)
    x1 = gauge_flow(A, random_gauge(A, seed + 1), x0)
    assert not mc_residual(A, x1)


def _not_mc(A):
    ks = [k for k in A.basis if A.deg(k) == 0]
    for a in ks:
        for b in ks:
            if mc_residual(A, Vec({a: 1, b: 1})):
                return Vec({a: 1, b: 1})
    raise AssertionError("fixture has no non-MC degree 0 basis element")


def test_gauge_flow_needs_mc_start():
    A = strict_fixture(7, 3)
    with pytest.raises(PreconditionViolation):
        gauge_flow(A, random_gauge(A, 0), _not_mc(A))


@settings(max_examples=10)
@given(seeds, seeds)
def test_twisting_shifts_mc_equation(seed, seed2):
    # MC(α + y) in A equals the twisted MC residual of y in A^α
    A = random_fixture(seed % 4, 3, 3)
    alpha = random_mc(A, seed)
    y = Vec({k: Fraction(seed2 % 5 - 2) for k in A.basis if A.deg(k) == 0 and A.weight(k) >= 2})
    At = twist(A, alpha)
    assert mc_residual(At, y) == mc_residual(A, alpha + y)


def test_twisted_algebra_satisfies_relations():
    A = random_fixture(2, 3, 3)
    At = twist(A, random_mc(A, 5)).tabulate()
    assert check_relations(At, 4).ok


def test_twist_needs_mc():
    A = strict_fixture(7, 3)
    with pytest.raises(PreconditionViolation):
        twist(A, _not_mc(A))


def _pair(seed):
    C0 = strict_fixture(seed, 3, (0,))
    comps = random_inf_components(C0, seed + 100)
    B = pullback_structure(C0, comps, 3).tabulate()
    Psi = InfMorphism(B, C0, {1: lambda k: Vec({k: 1}), **comps}, 3)
    return B, C0, Psi


@pytest.mark.parametrize("seed", range(3))
def test_pullback_morphism_is_valid(seed):
    B, C0, Psi = _pair(seed)
    assert check_relations(B, 4).ok
    assert check_morphism(Psi, 4).ok


@settings(max_examples=8)
@given(seeds)
def test_pushforward_of_mc_is_mc(seed):
    B, C0, Psi = _pair(seed % 4)
    x = random_mc(B, seed)
    assert not mc_residual(C0, mc_pushforward(Psi, x))


def test_identity_is_neutral():
    B, C0, Psi = _pair(1)
    x = random_mc(B, 3)
    assert mc_pushforward(identity_inf(B), x) == x
    both = compose_inf(Psi, identity_inf(B))
    assert mc_pushforward(both, x) == mc_pushforward(Psi, x)


def test_lie_fixture_degrees():
    g = strict_lie_fixture(0, 3, (0,))
    assert check_lie(g)
