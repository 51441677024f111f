"""Shifted L∞-algebras (sL∞): all brackets ℓ_n have degree −1 and are graded
symmetric; ℓ_1 is the differential.  MC elements have degree 0.

Carriers may be infinite: a structure only needs a degree function on keys
and callables ℓ_n(k_1, ..., k_n) -> Vec.  Finite carriers can be tabulated
on sorted basis tuples.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial, prod
from collections import Counter
from typing import Callable

from .core import (Accumulator, GMap, GradedSpace, InvalidInput, PreconditionViolation, Vec, ZERO,
                   koszul_sign, multilinear_extension, scalar_to_str, set_partitions, sign, unshuffles)


def _multinomial(counts) -> int:
    n = sum(counts)
    return factorial(n) // prod(factorial(c) for c in counts)


class SymTable:
    """A graded-symmetric multilinear map stored on sorted basis tuples."""

    def __init__(self, order: dict, deg: Callable, table: dict):
        self.order = order
        self.deg = deg
        self.table = table

    def __call__(self, *keys) -> Vec:
        idx = sorted(range(len(keys)), key=lambda i: self.order[keys[i]])
        skeys = tuple(keys[i] for i in idx)
        v = self.table.get(skeys)
        if not v:
            return ZERO
        s = koszul_sign(idx, [self.deg(k) for k in keys])
        return v if s == 1 else -v


class SLInfty:
    """ops[n](k_1..k_n) -> Vec for 1 ≤ n ≤ arity_cap; missing n means zero."""

    def __init__(self, deg: Callable, ops: dict, arity_cap: int, basis: list | None = None,
                 weight: Callable | None = None, weight_cap: int | None = None, name: str = ""):
        self.deg = deg
        self.ops = dict(ops)
        self.arity_cap = arity_cap
        self.basis = basis
        self.weight = weight
        self.weight_cap = weight_cap
        self.name = name

    # -------------------------------------------------------------- evaluation

    def op(self, n: int):
        return self.ops.get(n)

    def ell(self, n: int, *vecs) -> Vec:
        f = self.ops.get(n)
        if f is None or any(not v for v in vecs):
            return ZERO
        return self.trunc(multilinear_extension(f, list(vecs)))

    def trunc(self, v: Vec) -> Vec:
        if self.weight is None or self.weight_cap is None:
            return v
        return Vec((k, c) for k, c in v.items() if self.weight(k) <= self.weight_cap)

    def ell_power(self, n: int, x: Vec, tail: tuple = ()) -> Vec:
        """ℓ_n(x, ..., x, *tail) with n − len(tail) copies of an even element x."""
        f = self.ops.get(n)
        m = n - len(tail)
        if f is None or m < 0 or not x or any(not t for t in tail):
            return ZERO
        if any(self.deg(k) % 2 for k in x):
            return self.ell(n, *([x] * m), *tail)
        keys = sorted(x, key=repr)
        acc = Accumulator()
        for combo in combinations_with_replacement(range(len(keys)), m):
            cnt = Counter(combo)
            coeff = _multinomial(cnt.values()) * prod(x[keys[i]] for i in combo)
            head = tuple(keys[i] for i in combo)
            if tail:
                acc.add_vec(multilinear_extension(lambda *ks: f(*head, *ks), list(tail)), coeff)
            else:
                acc.add_vec(f(*head), coeff)
        return self.trunc(acc.vec())

    def d(self, v: Vec) -> Vec:
        return self.ell(1, v)

    def degree_of(self, v: Vec) -> int:
        ds = {self.deg(k) for k in v}
        if len(ds) > 1:
            raise InvalidInput("not homogeneous")
        return ds.pop() if ds else 0

    # -------------------------------------------------------------- tables

    def tabulate(self, basis: list | None = None) -> "SLInfty":
        basis = basis or self.basis
        if basis is None:
            raise InvalidInput("tabulation needs a finite basis")
        order = {k: i for i, k in enumerate(basis)}
        ops = {}
        for n, f in self.ops.items():
            table = {}
            for combo in combinations_with_replacement(basis, n):
                v = self.trunc(Vec(f(*combo)))
                if v:
                    table[combo] = v
            ops[n] = SymTable(order, self.deg, table)
        return SLInfty(self.deg, ops, self.arity_cap, list(basis), self.weight, self.weight_cap, self.name)

    @classmethod
    def from_tables(cls, space: GradedSpace, tables: dict, arity_cap: int | None = None,
                    weight_cap: int | None = None) -> "SLInfty":
        """tables[n] maps key tuples (any order) to Vecs; ℓ_1 may be a GMap."""
        order = {k: i for i, k in enumerate(space.ids)}
        ops = {}
        for n, tab in tables.items():
            if isinstance(tab, GMap):
                ops[n] = tab.on_basis
                continue
            clean = {}
            for keys, v in tab.items():
                keys = tuple(keys)
                idx = sorted(range(len(keys)), key=lambda i: order[keys[i]])
                s = koszul_sign(idx, [space.deg(k) for k in keys])
                sk = tuple(keys[i] for i in idx)
                v = Vec(v) * s
                if sk in clean and clean[sk] != v:
                    raise InvalidInput(f"inconsistent symmetric entries for {sk}")
                clean[sk] = v
                want = sum(space.deg(k) for k in keys) - 1
                if any(space.deg(t) != want for t in v):
                    raise InvalidInput("brackets must have degree -1")
            ops[n] = SymTable(order, space.deg, clean)
        cap = arity_cap or max(tables, default=1)
        return cls(space.deg, ops, cap, space.ids, space.weight, weight_cap)

    def to_json(self, space: GradedSpace | None = None):
        t = self.tabulate() if self.basis else self
        out = []
        for n in sorted(t.ops):
            for keys, v in sorted(t.ops[n].table.items(), key=lambda kv: repr(kv[0])):
                out.append({"n": n, "inputs": list(keys),
                            "output": [[k, scalar_to_str(c)] for k, c in v.sorted_items()]})
        return out


# ---------------------------------------------------------------- relations


def relation_value(A: SLInfty, keys: tuple) -> Vec:
    """Σ_{n1+n2=n+1} Σ_{unshuffles} ε ℓ_{n2}(ℓ_{n1}(x_σ(1..n1)), x_σ(rest))."""
    n = len(keys)
    degs = [A.deg(k) for k in keys]
    acc = Accumulator()
    for n1 in range(1, n + 1):
        n2 = n + 1 - n1
        f1, f2 = A.ops.get(n1), A.ops.get(n2)
        if f1 is None or f2 is None:
            continue
        for chosen, rest in unshuffles(n, n1):
            inner = f1(*(keys[i] for i in chosen))
            if not inner:
                continue
            s = koszul_sign(chosen + rest, degs)
            rk = tuple(keys[i] for i in rest)
            for k, c in inner.items():
                acc.add_vec(f2(k, *rk), s * c)
    return A.trunc(acc.vec())


@dataclass
class RelationReport:
    ok: bool
    checked: int
    failure: tuple | None = None
    value: Vec | None = None

    def to_json(self):
        out = {"ok": self.ok, "checked": self.checked}
        if self.failure is not None:
            out["failure"] = list(self.failure)
            out["value"] = [[k, scalar_to_str(c)] for k, c in self.value.sorted_items()]
        return out


def check_relations(A: SLInfty, n_max: int | None = None, basis: list | None = None) -> RelationReport:
    basis = basis or A.basis
    if basis is None:
        raise InvalidInput("relation check needs a finite list of test keys")
    n_max = n_max or A.arity_cap
    count = 0
    for n in range(1, n_max + 1):
        for combo in combinations_with_replacement(basis, n):
            count += 1
            v = relation_value(A, combo)
            if v:
                return RelationReport(False, count, combo, v)
    return RelationReport(True, count)


# ---------------------------------------------------------------- MC elements


def _check_degree0(A: SLInfty, x: Vec):
    if any(A.deg(k) != 0 for k in x):
        raise InvalidInput("MC elements have degree 0")


def mc_residual(A: SLInfty, x: Vec) -> Vec:
    """dx + Σ_{n≥2} ℓ_n(x, ..., x)/n!."""
    _check_degree0(A, x)
    acc = Accumulator()
    acc.add_vec(A.d(x))
    for n in range(2, A.arity_cap + 1):
        acc.add_vec(A.ell_power(n, x), Fraction(1, factorial(n)))
    return A.trunc(acc.vec())


def is_mc(A: SLInfty, x: Vec) -> bool:
    return not mc_residual(A, x)


def twist(A: SLInfty, alpha: Vec, check: bool = True) -> SLInfty:
    """ℓ^α_m(x_1..x_m) = Σ_j ℓ_{m+j}(α^j, x_1..x_m)/j!."""
    _check_degree0(A, alpha)
    if check and mc_residual(A, alpha):
        raise PreconditionViolation("twisting element is not Maurer-Cartan")
    if not alpha:
        return A
    akeys = sorted(alpha, key=repr)
    cap = A.arity_cap
    # precompute the weighted multisets α^j / j!
    powers = {}
    for j in range(1, cap):
        lst = []
        for combo in combinations_with_replacement(range(len(akeys)), j):
            cnt = Counter(combo)
            c = Fraction(prod(alpha[akeys[i]] for i in combo), prod(factorial(v) for v in cnt.values()))
            lst.append((tuple(akeys[i] for i in combo), c))
        powers[j] = lst

    def make(m):
        def op(*keys):
            acc = Accumulator()
            f = A.ops.get(m)
            if f is not None:
                acc.add_vec(f(*keys))
            for j in range(1, cap - m + 1):
                g = A.ops.get(m + j)
                if g is None:
                    continue
                for head, c in powers[j]:
                    acc.add_vec(g(*head, *keys), c)
            return A.trunc(acc.vec())
        return op

    ops = {m: make(m) for m in range(1, cap + 1)}
    return SLInfty(A.deg, ops, cap, A.basis, A.weight, A.weight_cap, A.name + "^α")


def gauge_ode(A: SLInfty, lam: Vec, x0: Vec, degree_cap: int):
    """ẋ = ℓ_1(λ) + Σ_{n≥2} ℓ_n(x, ..., x, λ)/(n−1)! as a formal ODE."""
    from .solvers import FODE

    ops = {(0, 0): (lambda: A.d(lam))}
    for n in range(2, A.arity_cap + 1):
        if n not in A.ops:
            continue
        c = Fraction(1, factorial(n - 1))
        ops[(n - 1, 0)] = (lambda n, c: lambda *xs: A.ell(n, *xs, lam) * c)(n, c)
    return FODE(ops, x0, degree_cap, A.weight, A.weight_cap)


def gauge_flow(A: SLInfty, lam: Vec, x0: Vec, degree_cap: int | None = None, check: bool = True) -> Vec:
    """x(1) for the gauge flow started at the MC element x0 (|λ| = 1)."""
    from .solvers import solve_ode_recursive

    if any(A.deg(k) != 1 for k in lam):
        raise InvalidInput("gauges have degree 1")
    if check and mc_residual(A, x0):
        raise PreconditionViolation("starting point is not Maurer-Cartan")
    if degree_cap is None:
        if A.weight_cap is None:
            raise InvalidInput("need a degree cap or a weight witness")
        degree_cap = A.weight_cap
    coeffs = solve_ode_recursive(gauge_ode(A, lam, x0, degree_cap))
    out = Accumulator()
    for c in coeffs:
        out.add_vec(c)
    return A.trunc(out.vec())


# ---------------------------------------------------------------- ∞-morphisms


class InfMorphism:
    """Components φ_n(k_1..k_n) -> Vec, graded symmetric, degree 0."""

    def __init__(self, source: SLInfty, target: SLInfty, comps: dict, arity_cap: int | None = None):
        self.source = source
        self.target = target
        self.comps = dict(comps)
        self.arity_cap = arity_cap or max(source.arity_cap, target.arity_cap)

    def phi(self, n: int, *vecs) -> Vec:
        f = self.comps.get(n)
        if f is None or any(not v for v in vecs):
            return ZERO
        return self.target.trunc(multilinear_extension(f, list(vecs)))

    def tabulate(self) -> "InfMorphism":
        basis = self.source.basis
        order = {k: i for i, k in enumerate(basis)}
        comps = {}
        for n, f in self.comps.items():
            table = {}
            for combo in combinations_with_replacement(basis, n):
                v = self.target.trunc(Vec(f(*combo)))
                if v:
                    table[combo] = v
            comps[n] = SymTable(order, self.source.deg, table)
        return InfMorphism(self.source, self.target, comps, self.arity_cap)


def identity_inf(A: SLInfty) -> InfMorphism:
    return InfMorphism(A, A, {1: lambda k: Vec({k: 1})})


def strict_inf(A: SLInfty, B: SLInfty, f: Callable) -> InfMorphism:
    return InfMorphism(A, B, {1: f})


def _partition_terms(keys, degs):
    """(sign, blocks) for every unordered set partition of the positions."""
    n = len(keys)
    for part in set_partitions(tuple(range(n))):
        perm = [i for b in part for i in b]
        yield koszul_sign(perm, degs), part


def _apply_outer(outer, blocks_vals: list) -> Vec:
    return multilinear_extension(outer, blocks_vals)


def compose_inf(Psi: InfMorphism, Phi: InfMorphism) -> InfMorphism:
    """(ΨΦ)_n = Σ_k Σ_{partitions into k blocks} ε ψ_k(φ_{B_1}, ..., φ_{B_k})."""
    cap = min(Psi.arity_cap, Phi.arity_cap)
    A = Phi.source

    def make(n):
        def op(*keys):
            degs = [A.deg(k) for k in keys]
            acc = Accumulator()
            for s, part in _partition_terms(keys, degs):
                outer = Psi.comps.get(len(part))
                if outer is None:
                    continue
                vals = []
                for b in part:
                    f = Phi.comps.get(len(b))
                    v = f(*(keys[i] for i in b)) if f is not None else ZERO
                    if not v:
                        break
                    vals.append(v)
                else:
                    acc.add_vec(_apply_outer(outer, vals), s)
            return Psi.target.trunc(acc.vec())
        return op

    return InfMorphism(A, Psi.target, {n: make(n) for n in range(1, cap + 1)}, cap)


def morphism_relation_value(Phi: InfMorphism, keys: tuple) -> Vec:
    """Σ_part ℓ^B_k(φ_B..) − Σ_j Σ_unsh φ_{n−j+1}(ℓ^A_j(x_σ..), rest)."""
    A, B = Phi.source, Phi.target
    n = len(keys)
    degs = [A.deg(k) for k in keys]
    acc = Accumulator()
    for s, part in _partition_terms(keys, degs):
        outer = B.ops.get(len(part))
        if outer is None:
            continue
        vals = []
        for b in part:
            f = Phi.comps.get(len(b))
            v = f(*(keys[i] for i in b)) if f is not None else ZERO
            if not v:
                break
            vals.append(v)
        else:
            acc.add_vec(_apply_outer(outer, vals), s)
    for j in range(1, n + 1):
        inner_op = A.ops.get(j)
        outer = Phi.comps.get(n - j + 1)
        if inner_op is None or outer is None:
            continue
        for chosen, rest in unshuffles(n, j):
            inner = inner_op(*(keys[i] for i in chosen))
            if not inner:
                continue
            s = koszul_sign(chosen + rest, degs)
            rk = tuple(keys[i] for i in rest)
            for k, c in inner.items():
                acc.add_vec(outer(k, *rk), -s * c)
    return B.trunc(acc.vec())


def check_morphism(Phi: InfMorphism, n_max: int | None = None, basis: list | None = None) -> RelationReport:
    basis = basis or Phi.source.basis
    n_max = n_max or Phi.arity_cap
    count = 0
    for n in range(1, n_max + 1):
        for combo in combinations_with_replacement(basis, n):
            count += 1
            v = morphism_relation_value(Phi, combo)
            if v:
                return RelationReport(False, count, combo, v)
    return RelationReport(True, count)


def phi_power(Phi: InfMorphism, n: int, x: Vec, tail: tuple = ()) -> Vec:
    """φ_n(x, ..., x, *tail) for even x, summed over multisets."""
    f = Phi.comps.get(n)
    m = n - len(tail)
    if f is None or not x or m < 0:
        return ZERO
    keys = sorted(x, key=repr)
    acc = Accumulator()
    for combo in combinations_with_replacement(range(len(keys)), m):
        cnt = Counter(combo)
        coeff = _multinomial(cnt.values()) * prod(x[keys[i]] for i in combo)
        head = tuple(keys[i] for i in combo)
        if tail:
            acc.add_vec(multilinear_extension(lambda *ks: f(*head, *ks), list(tail)), coeff)
        else:
            acc.add_vec(f(*head), coeff)
    return Phi.target.trunc(acc.vec())


def mc_pushforward(Phi: InfMorphism, x: Vec) -> Vec:
    """MC(Φ)(x) = Σ_n φ_n(x, ..., x)/n!."""
    _check_degree0(Phi.source, x)
    acc = Accumulator()
    for n in range(1, Phi.arity_cap + 1):
        acc.add_vec(phi_power(Phi, n, x), Fraction(1, factorial(n)))
    return Phi.target.trunc(acc.vec())


def twist_inf(Phi: InfMorphism, alpha: Vec) -> InfMorphism:
    """φ^α_k(x..) = Σ_j φ_{k+j}(α^j, x..)/j!, a morphism A^α → B^{MC(Φ)(α)}."""
    A, B = Phi.source, Phi.target
    cap = Phi.arity_cap
    A2 = twist(A, alpha)
    B2 = twist(B, mc_pushforward(Phi, alpha))
    akeys = sorted(alpha, key=repr)
    powers = {}
    for j in range(1, cap):
        lst = []
        for combo in combinations_with_replacement(range(len(akeys)), j):
            cnt = Counter(combo)
            c = Fraction(prod(alpha[akeys[i]] for i in combo), prod(factorial(v) for v in cnt.values()))
            lst.append((tuple(akeys[i] for i in combo), c))
        powers[j] = lst

    def make(k):
        def op(*keys):
            acc = Accumulator()
            f = Phi.comps.get(k)
            if f is not None:
                acc.add_vec(f(*keys))
            for j in range(1, cap - k + 1):
                g = Phi.comps.get(k + j)
                if g is None:
                    continue
                for head, c in powers[j]:
                    acc.add_vec(g(*head, *keys), c)
            return B.trunc(acc.vec())
        return op

    return InfMorphism(A2, B2, {k: make(k) for k in range(1, cap + 1)}, cap)


def pullback_structure(B: SLInfty, comps: dict, arity_cap: int) -> SLInfty:
    """The sL∞ structure on the carrier of B making φ (with φ_1 = id) an
    ∞-morphism A → B.  Solves the morphism relation arity by arity:
    ℓ^A_n = Σ_part ℓ^B(φ..) − Σ_{j<n} φ_{n−j+1}(ℓ^A_j(..), ..)."""
    basis = B.basis
    order = {k: i for i, k in enumerate(basis)}
    A = SLInfty(B.deg, {1: B.ops[1]}, arity_cap, basis, B.weight, B.weight_cap, "pullback")
    allcomps = {1: (lambda k: Vec({k: 1}))}
    allcomps.update(comps)
    for n in range(2, arity_cap + 1):
        Phi = InfMorphism(A, B, allcomps, arity_cap)
        table = {}
        for combo in combinations_with_replacement(basis, n):
            # morphism_relation_value with ℓ^A_n still missing equals ℓ^B-side minus known terms;
            # the missing term is −φ_1(ℓ^A_n(x)) = −ℓ^A_n(x)
            v = morphism_relation_value(Phi, combo)
            if v:
                table[combo] = v
        A.ops[n] = SymTable(order, B.deg, table)
    return A


# ---------------------------------------------------------------- strict Lie data


@dataclass
class LieData:
    """A finite dg Lie algebra (unshifted): basis, differential, bracket."""

    space: GradedSpace
    d: dict  # id -> Vec
    br: Callable  # (id, id) -> Vec

    def bracket(self, x: Vec, y: Vec) -> Vec:
        return multilinear_extension(self.br, [x, y])

    def diff(self, x: Vec) -> Vec:
        acc = Accumulator()
        for k, c in x.items():
            acc.add_vec(self.d.get(k, ZERO), c)
        return acc.vec()


def check_lie(g: LieData) -> bool:
    """Antisymmetry, Jacobi, d² = 0 and the Leibniz rule on basis elements."""
    ids, deg = g.space.ids, g.space.deg
    for a in ids:
        if g.diff(g.diff(Vec({a: 1}))):
            return False
        for b in ids:
            ab = g.br(a, b)
            if ab != g.br(b, a) * (-sign(deg(a) * deg(b))):
                return False
            lhs = g.diff(ab)
            rhs = g.bracket(g.diff(Vec({a: 1})), Vec({b: 1})) + \
                g.bracket(Vec({a: 1}), g.diff(Vec({b: 1}))) * sign(deg(a))
            if lhs != rhs:
                return False
            for c in ids:
                j = (g.bracket(Vec({a: 1}), Vec(g.br(b, c))) * sign(deg(a) * deg(c))
                     + g.bracket(Vec({b: 1}), Vec(g.br(c, a))) * sign(deg(b) * deg(a))
                     + g.bracket(Vec({c: 1}), Vec(g.br(a, b))) * sign(deg(c) * deg(b)))
                if j:
                    return False
    return True


def suspend_lie(g: LieData, check: bool = True) -> SLInfty:
    """ℓ_1(sx) = −s dx and ℓ_2(sx, sy) = (−1)^{|x|} s[x, y]; keys are kept and
    degrees shift by one."""
    if check and not check_lie(g):
        raise InvalidInput("not a dg Lie algebra")
    sdeg = {k: g.space.deg(k) + 1 for k in g.space.ids}

    def l1(k):
        return -g.d.get(k, ZERO)

    def l2(a, b):
        return Vec(g.br(a, b)) * sign(sdeg[a] - 1)

    space = GradedSpace(tuple((b[0], b[1] + 1, b[2]) for b in g.space.basis))
    return SLInfty(space.deg, {1: l1, 2: l2}, 2, space.ids, space.weight,
                   max((b[2] for b in space.basis), default=None), "s" + "g")


def tensor_lie_cdga(g: LieData, A_space: GradedSpace, A_d: dict, A_mul: Callable,
                    weight_cap: int | None = None) -> LieData:
    """g ⊗ A with [x⊗a, y⊗b] = (−1)^{|a||y|}[x,y]⊗ab, d(x⊗a) = dx⊗a + (−1)^{|x|} x⊗da."""
    basis = []
    for x, dx, wx in g.space.basis:
        for a, da, wa in A_space.basis:
            if weight_cap is None or wx + wa <= weight_cap:
                basis.append(((x, a), dx + da, wx + wa))
    space = GradedSpace(tuple(basis))
    gdeg, adeg = g.space.deg, A_space.deg

    def keep(v):
        return Vec((k, c) for k, c in v.items() if k in space)

    d = {}
    for (x, a), _, _ in basis:
        acc = Accumulator()
        for y, c in g.d.get(x, ZERO).items():
            acc.add((y, a), c)
        for b, c in A_d.get(a, ZERO).items():
            acc.add((x, b), c * sign(gdeg(x)))
        v = keep(acc.vec())
        if v:
            d[(x, a)] = v

    def br(p, q):
        (x, a), (y, b) = p, q
        s = sign(adeg(a) * gdeg(y))
        acc = Accumulator()
        xy = g.br(x, y)
        if not xy:
            return ZERO
        ab = A_mul(a, b)
        for z, c in xy.items():
            for e, c2 in ab.items():
                acc.add((z, e), s * c * c2)
        return keep(acc.vec())

    return LieData(space, d, br)


def free_lie_data(gens: dict, cap: int) -> LieData:
    from .freelie import free_nilpotent_lie

    basis, _, br = free_nilpotent_lie(gens, cap)
    return LieData(GradedSpace.of(basis), {}, br)


# ---------------------------------------------------------------- seeded fixtures

# a small cdga: 1 (deg 0), u (deg 0), e (deg −1), du = e, products of u, e vanish
CDGA_UE = (GradedSpace.of([("1", 0, 0), ("u", 0, 1), ("e", -1, 1)]),
           {"u": Vec({"e": 1})},
           lambda a, b: Vec({b: 1}) if a == "1" else (Vec({a: 1}) if b == "1" else ZERO))


def strict_lie_fixture(seed: int, weight_cap: int = 4, degrees=(0, -1)) -> LieData:
    """(free nilpotent Lie on two generators) ⊗ CDGA_UE, with generator
    degrees picked by the seed from ``degrees``."""
    rng = random.Random(seed)
    gens = {"a": rng.choice(degrees), "b": rng.choice(degrees)}
    g = free_lie_data(gens, weight_cap)
    sp, dA, mul = CDGA_UE
    return tensor_lie_cdga(g, sp, dA, mul, weight_cap)


def strict_fixture(seed: int, weight_cap: int = 4, degrees=(0, -1)) -> SLInfty:
    """Suspension of ``strict_lie_fixture``."""
    L = suspend_lie(strict_lie_fixture(seed, weight_cap, degrees), check=False)
    L.weight_cap = weight_cap
    return L.tabulate()


def random_inf_components(A: SLInfty, seed: int, arity_cap: int = 3, density: float = 0.3) -> dict:
    """Random symmetric components φ_n, n ≥ 2, of degree 0 that raise weight."""
    rng = random.Random(seed)
    basis = A.basis
    order = {k: i for i, k in enumerate(basis)}
    comps = {}
    for n in range(2, arity_cap + 1):
        table = {}
        for combo in combinations_with_replacement(basis, n):
            if any(A.deg(k) % 2 for k, m in Counter(combo).items() if m > 1):
                continue
            d = sum(A.deg(k) for k in combo)
            w = sum(A.weight(k) for k in combo)
            targets = [k for k in basis if A.deg(k) == d and A.weight(k) >= w]
            if not targets or rng.random() > density:
                continue
            t = rng.choice(targets)
            table[combo] = Vec({t: Fraction(rng.randint(-3, 3), rng.randint(1, 2))})
        comps[n] = SymTable(order, A.deg, table)
    return comps


def random_fixture(seed: int, comp_arity: int = 3, weight_cap: int = 4) -> SLInfty:
    """A nilpotent sL∞ algebra with genuinely higher brackets: the pullback
    of a strict one along a random ∞-isomorphism.  All keys have weight ≥ 1,
    so brackets of arity > weight_cap vanish and the structure is complete."""
    C = strict_fixture(seed, weight_cap)
    comps = random_inf_components(C, seed + 1000, comp_arity)
    return pullback_structure(C, comps, weight_cap).tabulate()


def random_gauge(A: SLInfty, seed: int) -> Vec:
    rng = random.Random(seed)
    keys = [k for k in A.basis if A.deg(k) == 1]
    return Vec((k, Fraction(rng.randint(-2, 2))) for k in keys)


def random_mc(A: SLInfty, seed: int, tries: int = 8) -> Vec:
    """An MC element reached from 0 by the gauge flow of a random gauge.

    A gauge that happens to flow to 0 is replaced by the next derived seed;
    the result is 0 only when A has no degree 1 elements moving 0 at all."""
    for j in range(tries):
        x = gauge_flow(A, random_gauge(A, seed * 1009 + j if j else seed), Vec())
        if x:
            return x
    return x


# ---------------------------------------------------------------- free sL∞ algebras


class FreeSLInfty(SLInfty):
    """The free sL∞ algebra on finitely many generators, modulo weight > cap.

    As a graded algebra it is free, so elements are Vecs over formal
    expressions: a generator name, or ("l", kids) standing for ℓ_n(kids) with
    the kids sorted (Koszul sign; repeated odd kids give 0).  ℓ_1 is given on
    generators by ``gen_d`` and extended to ℓ_n(kids) through the arity-n
    relation.  ``strict`` kills ℓ_n for n ≥ 3.
    """

    def __init__(self, gens: dict, weight_cap: int, arity_cap: int | None = None, strict: bool = False,
                 gen_d: dict | None = None, name: str = "free"):
        self.gens = dict(gens)  # name -> (degree, weight)
        self.gen_d = dict(gen_d or {})
        self.strict = strict
        self._d_memo: dict = {}
        self._deg_memo: dict = {}
        self._w_memo: dict = {}
        cap = arity_cap or weight_cap
        ops = {1: self._ell1}
        for n in range(2, cap + 1):
            if strict and n > 2:
                break
            ops[n] = self._constructor
        super().__init__(self._deg, ops, cap, sorted(gens), self._weight, weight_cap, name)

    def _deg(self, k):
        if isinstance(k, str):
            return self.gens[k][0]
        if k not in self._deg_memo:
            self._deg_memo[k] = sum(self._deg(c) for c in k[1]) - 1
        return self._deg_memo[k]

    def _weight(self, k):
        if isinstance(k, str):
            return self.gens[k][1]
        if k not in self._w_memo:
            self._w_memo[k] = sum(self._weight(c) for c in k[1])
        return self._w_memo[k]

    def gen(self, name) -> Vec:
        return Vec({name: 1})

    def _constructor(self, *keys) -> Vec:
        if self.strict and len(keys) > 2:
            return ZERO
        if sum(self._weight(k) for k in keys) > self.weight_cap:
            return ZERO
        idx = sorted(range(len(keys)), key=lambda j: repr(keys[j]))
        sk = tuple(keys[j] for j in idx)
        for a, b in zip(sk, sk[1:]):
            if a == b and self._deg(a) % 2:
                return ZERO
        return Vec({("l", sk): koszul_sign(idx, [self._deg(k) for k in keys])})

    def set_d(self, name, value: Vec):
        self.gen_d[name] = self.trunc(Vec(value))
        self._d_memo.clear()

    def _ell1(self, k) -> Vec:
        if isinstance(k, str):
            return self.gen_d.get(k, ZERO)
        if k in self._d_memo:
            return self._d_memo[k]
        kids = k[1]
        n = len(kids)
        degs = [self._deg(c) for c in kids]
        acc = Accumulator()
        for n1 in range(1, n):
            n2 = n + 1 - n1
            f1 = self.ops.get(n1)
            f2 = self.ops.get(n2)
            if f1 is None or f2 is None:
                continue
            for chosen, rest in unshuffles(n, n1):
                inner = f1(*(kids[j] for j in chosen))
                if not inner:
                    continue
                s = koszul_sign(chosen + rest, degs)
                rk = tuple(kids[j] for j in rest)
                for key, c in inner.items():
                    acc.add_vec(f2(key, *rk), -s * c)
        out = self.trunc(acc.vec())
        self._d_memo[k] = out
        return out

    def d_squared(self, keys=None) -> dict:
        """ℓ_1ℓ_1 on the given keys (default: the generators); nonzero entries only."""
        out = {}
        for k in keys or sorted(self.gens):
            v = self.d(self.d(Vec({k: 1})))
            if v:
                out[k] = v
        return out
