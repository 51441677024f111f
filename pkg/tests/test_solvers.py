from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from mcmodels.core import InvalidInput, Vec
from mcmodels.solvers import (FODE, FPEq, fp_residual, ode_residual, solve_fixed_point, solve_ode_recursive,
                              solve_ode_trees)

# power series in t: keys are exponents, weight = exponent


def _mul(x, y, cap):
    out = {}
    for i, a in x.items():
        for j, b in y.items():
            if i + j <= cap:
                out[i + j] = out.get(i + j, 0) + a * b
    return Vec(out)


def _shift(x):
    return Vec((k + 1, c) for k, c in x.items())


def _catalan_eq(cap):
    # x = 1 + t x², the Catalan generating function
    return FPEq(Vec({0: 1}), {1: lambda x: _shift(_mul(x, x, cap))}, lambda k: k, cap)


@pytest.mark.parametrize("schedule", ["picard", "graded"])
def test_catalan_fixed_point(schedule):
    cap = 8
    x = solve_fixed_point(_catalan_eq(cap), schedule)
    assert [x.get(k) for k in range(cap + 1)] == [comb(2 * k, k) // (k + 1) for k in range(cap + 1)]
    assert not fp_residual(_catalan_eq(cap), x)


def test_operator_must_raise_filtration():
    eq = FPEq(Vec({0: 1}), {1: lambda x: Vec({0: 1})}, lambda k: k, 3)
    with pytest.raises(InvalidInput):
        solve_fixed_point(eq)
    with pytest.raises(InvalidInput):
        solve_fixed_point(_catalan_eq(3), "newton")


def _ode_geometric(cap):
    # ẋ = x², x(0) = 1:  x = 1/(1 − t)
    return FODE({(2, 0): lambda a, b: Vec({"e": a.get("e") * b.get("e")})}, Vec({"e": 1}), cap)


def _ode_gauss(cap):
    # ẋ = t x:  x = exp(t²/2)
    return FODE({(1, 1): lambda a: a}, Vec({"e": 1}), cap)


@pytest.mark.parametrize("solver", [solve_ode_recursive, solve_ode_trees])
def test_closed_form_odes(solver):
    assert [c.get("e") for c in solver(_ode_geometric(6))] == [1] * 7
    want = [Fraction(1, 2 ** (j // 2) * factorial(j // 2)) if j % 2 == 0 else 0 for j in range(7)]
    assert [c.get("e") for c in solver(_ode_gauss(6))] == want


coeff = st.fractions(min_value=-2, max_value=2, max_denominator=3)


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 2)), coeff, min_size=1, max_size=4),
       coeff)
def test_solvers_agree_on_random_scalar_odes(terms, x0):
    # ẋ = Σ c_{n,k} t^k xⁿ
    ops = {}
    for (n, k), c in terms.items():
        ops[(n, k)] = (lambda c, n: lambda *xs: Vec({"e": c * _prod(x.get("e") for x in xs)}))(c, n)
    ode = FODE(ops, Vec({"e": x0}), 5)
    rec = solve_ode_recursive(ode)
    assert rec == solve_ode_trees(ode)
    assert not any(ode_residual(ode, rec))


def _prod(it):
    out = Fraction(1)
    for x in it:
        out *= x
    return out
