"""Homotopy transfer along a contraction (i, p, h).

Everything is in the shifted (bar) convention: operations have degree −1,
i and p degree 0, h degree +1.  In this convention the composites h∘ℓ are of
degree 0, so tree evaluation carries no signs beyond the Koszul sign of
sorting the inputs into the blocks of a rooted tree.  Planar (A∞) trees need
no signs at all.

The overall sign of h that enters the tree sums depends on whether
ℓ_1 h + h ℓ_1 equals 1 − ip or ip − 1; ``Contraction.orientation`` records
which, and the transfer uses h_eff = −orientation · h.  That choice is the one
that makes the relation checker pass on the A^n family and the Dupont
contraction, and it is asserted in the tests.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import factorial, prod
from collections import Counter
from typing import Callable

from .core import (Accumulator, GMap, GradedSpace, InvalidInput, PreconditionViolation,
                   UnsupportedInstance, Vec, ZERO, compositions, koszul_sign, linear_extension,
                   multilinear_extension, set_partitions, sign, unshuffles)
from .linfty import InfMorphism, SLInfty, SymTable, mc_residual, check_relations
from .trees import (WTree, enumerate_planar, enumerate_rooted, rooted_leaves)


# ---------------------------------------------------------------- contractions


@dataclass
class Contraction:
    """Big side ``big`` (its op 1 is the differential), small side given by a
    basis, degree function and differential; i, p, h act on basis keys."""

    big: object
    small_basis: list
    small_deg: Callable
    small_d: Callable
    i: Callable
    p: Callable
    h: Callable
    small_weight: Callable | None = None
    orientation: int = 1  # +1: ℓ_1 h + h ℓ_1 = 1 − ip

    def I(self, v):
        return linear_extension(self.i, v)

    def P(self, v):
        return linear_extension(self.p, v)

    def H(self, v):
        return linear_extension(self.h, v)

    def h_eff(self, v):
        return self.H(v) * (-self.orientation)

    def h_eff_key(self, k):
        return self.h(k) * (-self.orientation)


def detect_orientation(big_d: Callable, i, p, h, keys) -> int:
    """+1 if dh + hd = 1 − ip on the keys, −1 if it equals ip − 1."""
    plus = minus = True
    for k in keys:
        e = Vec({k: 1})
        lhs = linear_extension(big_d, linear_extension(h, e)) + linear_extension(h, big_d(k))
        ip = linear_extension(i, p(k))
        if lhs != e - ip:
            plus = False
        if lhs != ip - e:
            minus = False
    if plus and not minus:
        return 1
    if minus and not plus:
        return -1
    if plus and minus:
        return 1
    raise PreconditionViolation("the maps do not form a contraction")


def check_side_conditions(C: Contraction, big_keys) -> dict:
    """pi = 1 on the small basis; h² = 0, ph = 0 on big keys; hi = 0."""
    out = {"pi": True, "hh": True, "ph": True, "hi": True}
    for k in C.small_basis:
        if C.P(C.i(k)) != Vec({k: 1}):
            out["pi"] = False
        if C.H(C.i(k)):
            out["hi"] = False
    for k in big_keys:
        hk = C.h(k)
        if C.H(hk):
            out["hh"] = False
        if C.P(hk):
            out["ph"] = False
    return out


def contraction_from_maps(big, small_space: GradedSpace, small_d: dict, i: dict, p: Callable, h: Callable,
                          probe_keys, small_weight=None) -> Contraction:
    o = detect_orientation(big.ops[1], lambda k: i[k], p, h, probe_keys) if probe_keys else 1
    return Contraction(big, small_space.ids, small_space.deg, lambda k: small_d.get(k, ZERO),
                       lambda k: i[k], p, h, small_weight or small_space.weight, o)


# ---------------------------------------------------------------- tree evaluation


def tau_h_eval(tree, labels: dict, h: Callable, inputs: list, deg: Callable | None = None) -> Vec:
    """Evaluate a tree with operation labels[arity] at each vertex and h on
    every internal edge.  Planar trees (WTree) take the inputs in order;
    rooted trees (nested tuples with leaf labels 1..n) first sort the inputs
    into the planar leaf order with the Koszul sign, which needs ``deg`` of
    the input vectors."""
    if isinstance(tree, WTree) or tree is None:
        if (1 if tree is None else tree.arity) != len(inputs):
            raise InvalidInput("tree arity and number of inputs differ")
        return _eval_planar(tree, labels, h, list(inputs))
    leaves = rooted_leaves(tree)
    if sorted(leaves) != list(range(1, len(inputs) + 1)):
        raise InvalidInput("tree arity and number of inputs differ")
    s = 1
    if deg is not None:
        s = koszul_sign([l - 1 for l in leaves], [_vdeg(v, deg) for v in inputs])
    ordered = [inputs[l - 1] for l in leaves]
    return _eval_nested(tree, labels, h, ordered) * s


def _vdeg(v, deg):
    for k in v:
        return deg(k)
    return 0


def _eval_planar(tree, labels, h, inputs):
    if tree is None:
        return inputs.pop(0)
    args = []
    for c in tree.children:
        if c is None:
            args.append(inputs.pop(0))
        else:
            args.append(linear_extension(h, _eval_planar(c, labels, h, inputs)))
    f = labels.get(len(args))
    if f is None or any(not a for a in args):
        return ZERO
    return multilinear_extension(f, args)


def _eval_nested(node, labels, h, ordered):
    it = iter(ordered)

    def rec(nd):
        if isinstance(nd, int):
            return next(it)
        args = []
        for c in nd:
            v = rec(c)
            args.append(v if isinstance(c, int) else linear_extension(h, v))
        f = labels.get(len(args))
        if f is None or any(not a for a in args):
            return ZERO
        return multilinear_extension(f, args)

    return rec(node)


# ---------------------------------------------------------------- sL∞ transfer


class _SymTransfer:
    """Memoised q(keys) = Σ_{partitions, ≥2 blocks} ε ℓ_k(h_eff q(B_1), ...)."""

    def __init__(self, C: Contraction, method: str = "recursive"):
        self.C = C
        self.big = C.big
        self.order = {k: j for j, k in enumerate(C.small_basis)}
        self.method = method
        self._root: dict = {}

    def sort_keys(self, keys):
        idx = sorted(range(len(keys)), key=lambda j: self.order[keys[j]])
        s = koszul_sign(idx, [self.C.small_deg(k) for k in keys])
        return tuple(keys[j] for j in idx), s

    def leg(self, keys: tuple) -> Vec:
        """i(k) for one key, h_eff(root sum) otherwise (this is i_n)."""
        if len(keys) == 1:
            return self.C.i(keys[0])
        return self.C.h_eff(self.root(keys))

    def root(self, keys: tuple) -> Vec:
        """Σ over trees with ≥ 2 root children, without the final p or h."""
        if keys in self._root:
            return self._root[keys]
        if self.method == "trees":
            val = self._root_trees(keys)
        else:
            val = self._root_rec(keys)
        val = self.big.trunc(val) if hasattr(self.big, "trunc") else val
        self._root[keys] = val
        return val

    def _root_rec(self, keys):
        degs = [self.C.small_deg(k) for k in keys]
        acc = Accumulator()
        for part in set_partitions(tuple(range(len(keys)))):
            if len(part) < 2:
                continue
            f = self.big.ops.get(len(part))
            if f is None:
                continue
            s = koszul_sign([j for b in part for j in b], degs)
            args = [self.leg(tuple(keys[j] for j in b)) for b in part]
            if any(not a for a in args):
                continue
            acc.add_vec(multilinear_extension(f, args), s)
        return acc.vec()

    def _root_trees(self, keys):
        n = len(keys)
        inputs = [self.C.i(k) for k in keys]
        acc = Accumulator()
        for tau in enumerate_rooted(n):
            acc.add_vec(tau_h_eval(tau, self.big.ops, self.C.h_eff_key, inputs, self.C.small_deg))
        return acc.vec()


def transfer_slinfty(C: Contraction, arity_cap: int, method: str = "recursive"):
    """Transferred brackets ℓ_n = p Σ_{τ ∈ RT_n} τ^h (i, ..., i) and i_∞.

    ``method`` is "trees" (explicit sum over labelled reduced rooted trees)
    or "recursive" (the same sum organised by the root's block partition)."""
    T = _SymTransfer(C, method)
    small_d = C.small_d

    def make_l(n):
        if n == 1:
            return small_d

        def op(*keys):
            sk, s = T.sort_keys(keys)
            v = C.P(T.root(sk))
            return v * s if s != 1 else v
        return op

    def make_i(n):
        def op(*keys):
            sk, s = T.sort_keys(keys)
            v = T.leg(sk)
            return v * s if s != 1 else v
        return op

    small = SLInfty(C.small_deg, {n: make_l(n) for n in range(1, arity_cap + 1)}, arity_cap,
                    list(C.small_basis), C.small_weight, getattr(C.big, "weight_cap", None), "transferred")
    i_inf = InfMorphism(small, C.big, {n: make_i(n) for n in range(1, arity_cap + 1)}, arity_cap)
    return small, i_inf


def i_infinity(C: Contraction, arity_cap: int, method: str = "recursive") -> InfMorphism:
    return transfer_slinfty(C, arity_cap, method)[1]


# ---------------------------------------------------------------- A∞ (bar convention)


class AInfty:
    """ops[n](k_1..k_n) -> Vec, degree −1, no symmetry (bar convention)."""

    def __init__(self, deg: Callable, ops: dict, arity_cap: int, basis: list | None = None,
                 weight: Callable | None = None, weight_cap: int | None = None):
        self.deg = deg
        self.ops = dict(ops)
        self.arity_cap = arity_cap
        self.basis = basis
        self.weight = weight
        self.weight_cap = weight_cap

    def trunc(self, v):
        if self.weight is None or self.weight_cap is None:
            return v
        return Vec((k, c) for k, c in v.items() if self.weight(k) <= self.weight_cap)

    def tabulate(self) -> "AInfty":
        ops = {}
        for n, f in self.ops.items():
            table = {}
            for combo in product(self.basis, repeat=n):
                v = Vec(f(*combo))
                if v:
                    table[combo] = v
            ops[n] = (lambda tb: lambda *ks: tb.get(ks, ZERO))(table)
        return AInfty(self.deg, ops, self.arity_cap, self.basis, self.weight, self.weight_cap)


def ainfty_relation_value(A: AInfty, keys: tuple) -> Vec:
    """Σ_{n1+n2=n+1} Σ_j (−1)^{|x_1|+…+|x_j|} b_{n2}(x_1..x_j, b_{n1}(x_{j+1}..), ..)."""
    n = len(keys)
    degs = [A.deg(k) for k in keys]
    acc = Accumulator()
    for n1 in range(1, n + 1):
        n2 = n + 1 - n1
        f1, f2 = A.ops.get(n1), A.ops.get(n2)
        if f1 is None or f2 is None:
            continue
        for j in range(n - n1 + 1):
            inner = f1(*keys[j:j + n1])
            if not inner:
                continue
            s = sign(sum(degs[:j]))
            for k, c in inner.items():
                acc.add_vec(f2(*keys[:j], k, *keys[j + n1:]), s * c)
    return A.trunc(acc.vec())


def check_ainfty(A: AInfty, n_max: int | None = None, basis: list | None = None):
    from .linfty import RelationReport

    basis = basis or A.basis
    n_max = n_max or A.arity_cap
    count = 0
    for n in range(1, n_max + 1):
        for combo in product(basis, repeat=n):
            count += 1
            v = ainfty_relation_value(A, combo)
            if v:
                return RelationReport(False, count, combo, v)
    return RelationReport(True, count)


def bar_sign(degs_unshifted) -> int:
    """b_n = s m_n (s^{-1})^{⊗n}: b_n(sx_1..sx_n) = (−1)^{Σ_r (n−r)(|x_r|+1)} s m_n(x_1..x_n).
    With this rule the unshifted m_n satisfy
    ∂(m_n) = Σ (−1)^{n_2(n_1−j)+j+1} m_{n_1} ∘_j m_{n_2}."""
    n = len(degs_unshifted)
    return sign(sum((n - r) * (d + 1) for r, d in enumerate(degs_unshifted, 1)))


def morphism_bar_sign(degs_unshifted) -> int:
    """∞-morphism components convert by f_n = s^{-1} φ_n s^{⊗n}, i.e. with
    (−1)^{Σ_r (n−r)|x_r|}; this differs from the rule for operations by
    (−1)^{n(n−1)/2} and gives i_2 = h m_2(i, i) on the nose."""
    n = len(degs_unshifted)
    return sign(sum((n - r) * d for r, d in enumerate(degs_unshifted, 1)))


def morphism_from_bar(comps: dict, deg_shifted: Callable) -> dict:
    def make(f):
        return lambda *ks: Vec(f(*ks)) * morphism_bar_sign([deg_shifted(k) - 1 for k in ks])

    return {n: make(f) for n, f in comps.items()}


def to_bar(m_ops: dict, deg_unshifted: Callable, arity_cap: int, basis=None, weight=None) -> AInfty:
    """Shifted operations from unshifted m_n (|m_n| = n − 2); keys are kept,
    degrees move up by one."""
    sdeg = lambda k: deg_unshifted(k) + 1

    def make(n, f):
        return lambda *ks: Vec(f(*ks)) * bar_sign([deg_unshifted(k) for k in ks])

    return AInfty(sdeg, {n: make(n, f) for n, f in m_ops.items()}, arity_cap, basis, weight)


def from_bar(b_ops: dict, deg_shifted: Callable) -> dict:
    """Inverse of to_bar (the sign is an involution)."""

    def make(f):
        return lambda *ks: Vec(f(*ks)) * bar_sign([deg_shifted(k) - 1 for k in ks])

    return {n: make(f) for n, f in b_ops.items()}


def check_unshifted_ainfty(m_ops: dict, deg: Callable, basis: list, n_max: int) -> bool:
    """∂(m_n) = Σ (−1)^{n_2(n_1−j)+j+1} m_{n_1} ∘_j m_{n_2} with n_1, n_2 ≥ 2,
    where ∂f = m_1 f − (−1)^{|f|} f m_1 (m_1 acting as a derivation on tensors)."""
    d = m_ops.get(1)
    for n in range(2, n_max + 1):
        for keys in product(basis, repeat=n):
            degs = [deg(k) for k in keys]
            acc = Accumulator()
            f = m_ops.get(n)
            if f is not None:
                if d is not None:
                    acc.add_vec(linear_extension(d, f(*keys)))
                    fd = sign(n - 2)
                    for r in range(n):
                        s = sign(sum(degs[:r]))
                        for k, c in d(keys[r]).items():
                            acc.add_vec(f(*keys[:r], k, *keys[r + 1:]), -fd * s * c)
            for n1 in range(2, n):
                n2 = n + 1 - n1
                g1, g2 = m_ops.get(n1), m_ops.get(n2)
                if g1 is None or g2 is None:
                    continue
                for j in range(1, n1 + 1):
                    # m_{n1} ∘_j m_{n2}: m_{n2} on inputs j..j+n2-1, passing x_1..x_{j-1}
                    s0 = sign(n2 * (n1 - j) + j + 1)
                    s1 = sign((n2 - 2) * sum(degs[:j - 1]))
                    inner = g2(*keys[j - 1:j - 1 + n2])
                    for k, c in inner.items():
                        acc.add_vec(g1(*keys[:j - 1], k, *keys[j - 1 + n2:]), -s0 * s1 * c)
            if acc.vec():
                return False
    return True


class _PlanarTransfer:
    def __init__(self, C: Contraction, method: str = "recursive"):
        self.C = C
        self.big = C.big
        self.method = method
        self._root: dict = {}

    def leg(self, keys):
        if len(keys) == 1:
            return self.C.i(keys[0])
        return self.C.h_eff(self.root(keys))

    def root(self, keys):
        if keys in self._root:
            return self._root[keys]
        if self.method == "trees":
            acc = Accumulator()
            inputs = [self.C.i(k) for k in keys]
            for t in enumerate_planar(len(keys)):
                acc.add_vec(tau_h_eval(t, self.big.ops, self.C.h_eff_key, inputs))
            val = acc.vec()
        else:
            acc = Accumulator()
            n = len(keys)
            for comp in compositions(n):
                if len(comp) < 2:
                    continue
                f = self.big.ops.get(len(comp))
                if f is None:
                    continue
                args, pos = [], 0
                for c in comp:
                    args.append(self.leg(keys[pos:pos + c]))
                    pos += c
                if any(not a for a in args):
                    continue
                acc.add_vec(multilinear_extension(f, args))
            val = acc.vec()
        self._root[keys] = val
        return val


def transfer_ainfty_ns(C: Contraction, arity_cap: int, method: str = "recursive"):
    """Transferred m_n = p Σ_{t ∈ PT_n} t^h(i, ..., i) (bar convention) and the
    components of i_∞ = h_eff Σ_t t^h."""
    T = _PlanarTransfer(C, method)
    ops = {1: C.small_d}
    icomps = {1: C.i}
    for n in range(2, arity_cap + 1):
        ops[n] = lambda *ks: C.P(T.root(tuple(ks)))
        icomps[n] = lambda *ks: T.leg(tuple(ks))
    small = AInfty(C.small_deg, ops, arity_cap, list(C.small_basis), C.small_weight)
    return small, icomps


def check_ainfty_morphism(icomps: dict, A: AInfty, B: AInfty, n_max: int, basis) -> bool:
    """Σ_{compositions} b^B_k(f_{c_1}, ..., f_{c_k}) = Σ f_{n−n1+1}(.., b^A_{n1}(..), ..) for
    degree-0 components f (bar convention)."""
    for n in range(1, n_max + 1):
        for keys in product(basis, repeat=n):
            degs = [A.deg(k) for k in keys]
            acc = Accumulator()
            for comp in compositions(n):
                g = B.ops.get(len(comp))
                if g is None:
                    continue
                args, pos = [], 0
                for c in comp:
                    f = icomps.get(c)
                    args.append(Vec(f(*keys[pos:pos + c])) if f else ZERO)
                    pos += c
                if all(args):
                    acc.add_vec(multilinear_extension(g, args))
            for n1 in range(1, n + 1):
                inner_op = A.ops.get(n1)
                outer = icomps.get(n - n1 + 1)
                if inner_op is None or outer is None:
                    continue
                for j in range(n - n1 + 1):
                    inner = inner_op(*keys[j:j + n1])
                    s = sign(sum(degs[:j]))
                    for k, c in inner.items():
                        acc.add_vec(Vec(outer(*keys[:j], k, *keys[j + n1:])), -s * c)
            if acc.vec():
                return False
    return True


# ---------------------------------------------------------------- the A^n family


def build_An(n: int, degree_cap: int | None = None):
    """A^n: augmentation ideal of k[x, y], |x| = 0, |y| = 1, y² = 0, dy = xⁿ.

    Keys ('x', a) = x^a (a ≥ 1) and ('y', a) = x^a y (a ≥ 0), truncated at
    x-degree ≤ degree_cap.  Returns (unshifted m-ops, degree, basis,
    contraction maps i, p, h, small basis)."""
    if n < 2:
        raise InvalidInput("n ≥ 2")
    cap = degree_cap or 2 * n + 2
    basis = [("x", a) for a in range(1, cap + 1)] + [("y", a) for a in range(0, cap + 1 - n)]
    deg = lambda k: 0 if k[0] == "x" else 1

    def keep(v):
        return Vec((k, c) for k, c in v.items() if k[1] <= cap or k[0] == "y" and k[1] + n <= cap)

    def m1(k):
        if k[0] == "y":
            return Vec({("x", k[1] + n): 1})
        return ZERO

    def m2(a, b):
        if a[0] == "y" and b[0] == "y":
            return ZERO
        tot = a[1] + b[1]
        kind = "y" if "y" in (a[0], b[0]) else "x"
        if (kind == "x" and tot > cap) or (kind == "y" and tot + n > cap):
            return ZERO
        return Vec({(kind, tot): 1})

    small = [("z", a) for a in range(1, n)]
    i = {("z", a): Vec({("x", a): 1}) for a in range(1, n)}

    def p(k):
        if k[0] == "x" and k[1] < n:
            return Vec({("z", k[1]): 1})
        return ZERO

    def h(k):
        if k[0] == "x" and k[1] >= n:
            return Vec({("y", k[1] - n): 1})
        return ZERO

    return {1: m1, 2: m2}, deg, basis, i, p, h, small


def An_contraction(n: int, degree_cap: int | None = None):
    """The A^n contraction in bar form, plus the unshifted data."""
    m_ops, deg, basis, i, p, h, small = build_An(n, degree_cap)
    big = to_bar(m_ops, deg, 2, basis)
    sdeg = lambda k: 1  # z_a has unshifted degree 0
    C = Contraction(big, small, sdeg, lambda k: ZERO, lambda k: i[k], p, h,
                    lambda k: 0)
    cap = degree_cap or 2 * n + 2
    probe = [k for k in basis if k[1] <= cap - n]
    C.orientation = detect_orientation(big.ops[1], C.i, p, h, probe)
    return C, m_ops, deg, basis


# ---------------------------------------------------------------- dual numbers


def transfer_dual_numbers(d: GMap, Delta: GMap, n_max: int, contraction=None):
    """Δ_n = p (Δ h_eff)^{n−1} Δ i on the homology of d, for a complex with an
    anticommuting square-zero Δ of degree +1.  Returns (H, {n: GMap}, i, p, h)."""
    from .linalg import contraction_to_homology

    if contraction is None:
        contraction = contraction_to_homology(d)
    H, dH, i, p, h = contraction
    V = d.source
    orient = detect_orientation(d.on_basis, i.on_basis, p.on_basis, h.on_basis, V.ids)
    heff = h.scale(-orient)
    out = {}
    for n in range(1, n_max + 1):
        m = Delta.compose(i)
        for _ in range(n - 1):
            m = Delta.compose(heff.compose(m))
        out[n] = p.compose(m)
    return H, out, i, p, h


def check_multicomplex(d: GMap, Deltas: dict) -> bool:
    """Σ_{a+b=n} Δ_a Δ_b = 0 with Δ_0 = d, for all n up to the largest given."""
    ops = {0: d, **Deltas}
    top = max(ops)
    for n in range(top + 1):
        total = None
        for a in range(n + 1):
            b = n - a
            if a in ops and b in ops:
                t = ops[a].compose(ops[b])
                total = t if total is None else GMap(t.source, t.target, t.degree,
                                                     {k: total.on_basis(k) + t.on_basis(k)
                                                      for k in t.source.ids})
        if total is not None and not total.is_zero():
            return False
    return True


# ---------------------------------------------------------------- MC pushforward along p_∞


def _sym_sort(keys: tuple, coeff, deg: Callable, order: Callable):
    idx = sorted(range(len(keys)), key=lambda j: order(keys[j]))
    sk = tuple(keys[j] for j in idx)
    for a, b in zip(sk, sk[1:]):
        if a == b and deg(a) % 2:
            return None, 0
    return sk, coeff * koszul_sign(idx, [deg(k) for k in keys])


class SymAlg:
    """Elements of the symmetric coalgebra on the big carrier: Vecs keyed by
    sorted key tuples (classes of v_1 ⊗ … ⊗ v_n)."""

    def __init__(self, big, weight_cap: int | None = None):
        self.big = big
        self.deg = big.deg
        self.weight = getattr(big, "weight", None)
        self.cap = weight_cap if weight_cap is not None else getattr(big, "weight_cap", None)
        self.order = repr

    def monomial(self, keys, coeff) -> Vec:
        sk, c = _sym_sort(tuple(keys), coeff, self.deg, self.order)
        if sk is None or not c:
            return ZERO
        if self.cap is not None and self.weight is not None:
            if sum(self.weight(k) for k in sk) > self.cap:
                return ZERO
        return Vec({sk: c})

    def exp(self, x: Vec) -> Vec:
        """e^x without the constant term, for even x of positive weight."""
        keys = sorted(x, key=repr)
        acc = Accumulator()
        top = self.cap if self.cap is not None else 8
        for n in range(1, top + 1):
            any_term = False
            for combo in combinations_with_replacement(range(len(keys)), n):
                cnt = Counter(combo)
                c = Fraction(prod(x[keys[j]] for j in combo), prod(factorial(v) for v in cnt.values()))
                m = self.monomial([keys[j] for j in combo], c)
                if m:
                    any_term = True
                    acc.add_vec(m)
            if not any_term and n > 1:
                break
        return acc.vec()

    def delta(self, z: Vec) -> Vec:
        """The coderivation extending ℓ_m, m ≥ 2."""
        acc = Accumulator()
        for keys, c in z.items():
            n = len(keys)
            degs = [self.deg(k) for k in keys]
            for m in range(2, n + 1):
                f = self.big.ops.get(m)
                if f is None:
                    continue
                for chosen, rest in unshuffles(n, m):
                    val = f(*(keys[j] for j in chosen))
                    if not val:
                        continue
                    s = koszul_sign(chosen + rest, degs) * c
                    rk = [keys[j] for j in rest]
                    for k, cv in val.items():
                        acc.add_vec(self.monomial([k] + rk, s * cv))
        return acc.vec()

    def homotopy(self, z: Vec, h: Callable, ip: Callable) -> Vec:
        """Symmetrised tensor trick: (1/n!) Σ_σ Σ_j (1^{j−1} ⊗ h ⊗ (ip)^{n−j})^σ."""
        acc = Accumulator()
        for keys, c in z.items():
            n = len(keys)
            degs = [self.deg(k) for k in keys]
            for a in range(n):
                others = [j for j in range(n) if j != a]
                ha = h(keys[a])
                if not ha:
                    continue
                for r in range(len(others) + 1):
                    w = Fraction(factorial(r) * factorial(n - 1 - r), factorial(n))
                    for S in _subsets(others, r):
                        rest = [j for j in others if j not in S]
                        perm = list(S) + [a] + rest
                        s = koszul_sign(perm, degs) * sign(sum(degs[j] for j in S))
                        ips = [ip(keys[j]) for j in rest]
                        if any(not v for v in ips):
                            continue
                        vecs = [Vec({keys[j]: 1}) for j in S] + [ha] + ips
                        for combo in product(*[list(v.items()) for v in vecs]):
                            coef = s * c * w * prod(cv for _, cv in combo)
                            acc.add_vec(self.monomial([k for k, _ in combo], coef))
        return acc.vec()


def _subsets(items, r):
    from itertools import combinations
    return combinations(items, r)


def mc_pushforward_p(C: Contraction, x: Vec, weight_cap: int | None = None, h_sign: int | None = None) -> Vec:
    """MC(p_∞)(x) = p([Σ_k (δH)^k e^x]_1) with H the symmetrised tensor-trick
    homotopy built from h_eff (perturbation lemma on the symmetric coalgebra)."""
    S = SymAlg(C.big, weight_cap)
    sgn = -C.orientation if h_sign is None else h_sign
    h = lambda k: C.h(k) * sgn
    ip = lambda k: C.I(C.p(k))
    z = S.exp(x)
    y1 = Accumulator()
    y1.add_vec(x)
    for _ in range(64):
        z = S.delta(S.homotopy(z, h, ip))
        if not z:
            break
        for keys, c in z.items():
            if len(keys) == 1:
                y1.add(keys[0], c)
    return C.P(y1.vec())


def mc_pushforward_i(i_inf: InfMorphism, y: Vec) -> Vec:
    from .linfty import mc_pushforward
    return mc_pushforward(i_inf, y)


@dataclass
class PushforwardValidation:
    v1: bool
    v2: bool
    v3: bool
    v4: bool

    @property
    def ok(self):
        return self.v1 and self.v2 and self.v3 and self.v4

    def to_json(self):
        return {"V1": self.v1, "V2": self.v2, "V3": self.v3, "V4": self.v4}


def validate_pushforward(C: Contraction, small: SLInfty, i_inf: InfMorphism, big_samples: list,
                         small_samples: list, h_sign: int | None = None) -> PushforwardValidation:
    """V1: P(I(y)) = y.  V2: h(I(P(x))) = 0.  V3: x ↦ (P(x), h(x)) injective
    on the samples.  V4: P(x) is MC on the small side."""
    v1 = all(mc_pushforward_p(C, mc_pushforward_i(i_inf, y), h_sign=h_sign) == y for y in small_samples)
    outs = [mc_pushforward_p(C, x, h_sign=h_sign) for x in big_samples]
    v2 = all(not C.H(mc_pushforward_i(i_inf, y)) for y in outs)
    seen = {}
    v3 = True
    for x, y in zip(big_samples, outs):
        key = (y, C.H(x))
        if key in seen and seen[key] != x:
            v3 = False
        seen[key] = x
    v4 = all(not mc_residual(small, y) for y in outs)
    return PushforwardValidation(v1, v2, v3, v4)
