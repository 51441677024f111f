"""Formal fixed-point equations and formal ODEs in filtered spaces.

Vectors are ``Vec`` over hashable keys; a weight function on keys gives the
filtration.  Operators are plain callables on Vecs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable

from .core import Accumulator, InvalidInput, Vec, ZERO, compositions
from .trees import WTree, coeff_F, coeff_W


def truncate(v, weight, cap: int) -> Vec:
    """Drop components of weight > cap."""
    return Vec((k, c) for k, c in v.items() if weight(k) <= cap)


def min_weight(v, weight):
    return min((weight(k) for k in v), default=None)


@dataclass
class FPEq:
    """x = P_0 + Σ_n P_n(x), with P_n raising the filtration by n ≥ 1."""

    P0: Vec
    operators: dict  # n -> callable(Vec) -> Vec
    weight: Callable
    weight_cap: int = 6


def _apply_ops(eq: FPEq, x: Vec, check: bool = True) -> Vec:
    acc = Accumulator()
    acc.add_vec(eq.P0)
    for n, P in sorted(eq.operators.items()):
        if n < 1:
            raise InvalidInput("operators must raise the filtration by n ≥ 1")
        y = truncate(P(x), eq.weight, eq.weight_cap)
        if check and y:
            lo = min_weight(x, eq.weight)
            if lo is None or min_weight(y, eq.weight) < lo + n:
                raise InvalidInput(f"operator P_{n} does not raise the filtration by {n}")
        acc.add_vec(y)
    return truncate(acc.vec(), eq.weight, eq.weight_cap)


def solve_fixed_point(eq: FPEq, schedule: str = "picard") -> Vec:
    """Solution of the fixed-point equation modulo weights > cap.

    ``picard`` iterates x ← P_0 + ΣP_n(x); ``graded`` fixes one weight at a
    time by adding the weight-(i+1) part of the residual.  Both agree.
    """
    w, cap = eq.weight, eq.weight_cap
    x = truncate(eq.P0, w, cap)
    if schedule == "picard":
        for _ in range(cap + 2):
            nxt = _apply_ops(eq, x)
            if nxt == x:
                return x
            x = nxt
        if _apply_ops(eq, x) != x:
            raise InvalidInput("iteration did not stabilise; are weights positive?")
        return x
    if schedule == "graded":
        lo = min_weight(eq.P0, w) or 0
        x = Vec((k, c) for k, c in eq.P0.items() if w(k) <= lo)
        for i in range(lo, cap + 1):
            r = _apply_ops(eq, x) - x
            bad = [k for k in r if w(k) < i]
            if bad:
                raise InvalidInput("residual below the current weight; operators not filtration raising")
            x = x + Vec((k, c) for k, c in r.items() if w(k) == i)
        if _apply_ops(eq, x) != x:
            raise InvalidInput("graded schedule did not converge")
        return x
    raise InvalidInput(f"unknown schedule {schedule!r}")


def fp_residual(eq: FPEq, x: Vec) -> Vec:
    return _apply_ops(eq, x, check=False) - truncate(x, eq.weight, eq.weight_cap)


# ---------------------------------------------------------------- formal ODEs


@dataclass
class FODE:
    """ẋ = Σ_{n,k} t^k f_{n,k}(x, ..., x) with x(0) = v0.

    ``ops[(n, k)]`` is an n-linear callable on Vecs (n = 0: no arguments).
    Solutions are lists of Vec coefficients of t^0 .. t^cap.
    """

    ops: dict
    v0: Vec
    degree_cap: int = 6
    weight: Callable | None = None
    weight_cap: int | None = None

    def trunc(self, v):
        if self.weight is None or self.weight_cap is None:
            return v
        return truncate(v, self.weight, self.weight_cap)


def solve_ode_recursive(ode: FODE) -> list:
    """Coefficient recursion (j+1) a_{j+1} = Σ f_{n,k}(a_{j_1}, ..., a_{j_n})."""
    a = [ode.trunc(Vec(ode.v0))]
    for j in range(ode.degree_cap):
        acc = Accumulator()
        for (n, k), f in ode.ops.items():
            rest = j - k
            if rest < 0:
                continue
            if n == 0:
                if rest == 0:
                    acc.add_vec(f())
                continue
            for comp in compositions(rest + n, n):
                args = [a[c - 1] for c in comp]
                if any(not x for x in args):
                    continue
                acc.add_vec(f(*args))
        a.append(ode.trunc(acc.vec() / (j + 1)))
    return a


def eval_wtree(tau, ode: FODE) -> Vec:
    """τ(v_0): the empty tree gives v_0, a vertex of weight w and arity n
    applies f_{n,w-1} to its children's values."""
    if tau is None:
        return ode.v0
    f = ode.ops.get((len(tau.children), tau.weight - 1))
    if f is None:
        return ZERO
    args = [eval_wtree(c, ode) for c in tau.children]
    if any(not x for x in args):
        return ZERO
    return ode.trunc(Vec(f(*args)))


def _valued_trees(ode: FODE, cap: int):
    """(τ, τ(v_0)) for every weighted planar tree with W(τ) ≤ cap and τ(v_0) ≠ 0.

    Built bottom-up so a subtree that evaluates to zero is never extended;
    by multilinearity every tree containing it vanishes too."""
    allowed = sorted((n, k + 1) for (n, k) in ode.ops)
    v0 = ode.trunc(Vec(ode.v0))

    @lru_cache(maxsize=None)
    def upto(budget):
        out = [(None, v0)] if v0 else []
        for n, w in allowed:
            if w > budget:
                continue
            f = ode.ops[(n, w - 1)]
            for kids in _children(n, budget - w):
                val = ode.trunc(Vec(f(*(v for _, v in kids))))
                if val:
                    out.append((WTree(w, tuple(t for t, _ in kids)), val))
        return tuple(out)

    @lru_cache(maxsize=None)
    def _children(n, budget):
        if n == 0:
            return ((),)
        res = []
        for first in upto(budget):
            for rest in _children(n - 1, budget - coeff_W(first[0])):
                res.append((first,) + rest)
        return tuple(res)

    return upto(cap)


def solve_ode_trees(ode: FODE, weight_cap: int | None = None) -> list:
    """Σ over weighted planar trees of τ(v_0)/F(τ), sorted by t-degree W(τ)."""
    cap = ode.degree_cap if weight_cap is None else weight_cap
    coeffs = [Accumulator() for _ in range(cap + 1)]
    for tau, val in _valued_trees(ode, cap):
        coeffs[coeff_W(tau)].add_vec(val, Fraction(1, coeff_F(tau)))
    return [c.vec() for c in coeffs]


def ode_residual(ode: FODE, coeffs: list) -> list:
    """ẋ − Σ t^k f_{n,k}(x^n) coefficientwise, through t^{len-2}."""
    cap = len(coeffs) - 1
    out = []
    for j in range(cap):
        acc = Accumulator()
        acc.add_vec(coeffs[j + 1], j + 1)
        for (n, k), f in ode.ops.items():
            rest = j - k
            if rest < 0:
                continue
            if n == 0:
                if rest == 0:
                    acc.add_vec(f(), -1)
                continue
            for comp in compositions(rest + n, n):
                args = [coeffs[c - 1] for c in comp]
                if all(args):
                    acc.add_vec(f(*args), -1)
        out.append(ode.trunc(acc.vec()))
    return out
