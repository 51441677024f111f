"""Exact rational linear algebra, a thin layer over sympy's DomainMatrix."""
from __future__ import annotations

from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .core import Accumulator, GMap, GradedSpace, Vec, InvalidInput


def _qq(x) -> "QQ":
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def to_dm(rows) -> DomainMatrix:
    rows = [list(r) for r in rows]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    return DomainMatrix([[_qq(x) for x in r] for r in rows], (nr, nc), QQ)


def from_dm(m: DomainMatrix):
    return [[_frac(x) for x in row] for row in m.to_list()]


def rank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return to_dm(rows).rank()


def nullspace(rows, ncols: int | None = None):
    """Basis of {x : A x = 0} as a list of column vectors (lists)."""
    rows = [list(r) for r in rows]
    if not rows:
        if ncols is None:
            raise InvalidInput("need ncols for an empty matrix")
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ns = to_dm(rows).nullspace()
    return from_dm(ns)


def rref(rows):
    m, pivots = to_dm(rows).rref()
    return from_dm(m), list(pivots)


def solve(rows, rhs):
    """One solution x of A x = rhs, or None if inconsistent."""
    rows = [list(r) for r in rows]
    n = len(rows[0]) if rows else 0
    aug = [r + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = red[i][n]
    return x


def in_span(vectors: list, target: dict, keys: list | None = None) -> bool:
    """Is the sparse vector target in the span of the sparse vectors?"""
    if keys is None:
        ks = set(target)
        for v in vectors:
            ks |= set(v)
        keys = sorted(ks, key=repr)
    if not vectors:
        return all(not target.get(k) for k in keys)
    cols = [[v.get(k, 0) for k in keys] for v in vectors]
    a = [list(r) for r in zip(*cols)]
    return rank(a) == rank([r + [target.get(k, 0)] for r, k in zip(a, keys)])


def vec_matrix(vectors: list, keys: list):
    """Columns are the given sparse vectors."""
    return [[v.get(k, Fraction(0)) for v in vectors] for k in keys]


def contraction_to_homology(d: GMap, label: str = "H"):
    """A contraction (i, p, h) of a finite complex onto its homology.

    Returns (H, dH, i, p, h) where H is spanned by fresh symbols
    (label, k).  Each V_n is split as B_n ⊕ H_n ⊕ C_n with B_n = d(C_{n+1})
    and d injective on C_n; h inverts d from B_n to C_{n+1}.  This gives
    pi = 1, 1 - ip = dh + hd and h² = hi = ph = 0.
    """
    V = d.source
    ids = V.ids
    degrees = sorted({V.deg(k) for k in ids})
    # complements C_n of the cycles, spanned by standard basis vectors
    C: dict = {}
    Z: dict = {}
    for n in degrees:
        Vn, Vm = V.in_degree(n), V.in_degree(n - 1)
        if Vm:
            dn = [[d.on_basis(c).get(r) for c in Vn] for r in Vm]
            zs = nullspace(dn, len(Vn))
        else:
            zs = nullspace([], len(Vn))
        Z[n] = [{Vn[j]: z[j] for j in range(len(Vn)) if z[j]} for z in zs]
        chosen = [dict(z) for z in Z[n]]
        C[n] = []
        for k in Vn:
            e = {k: Fraction(1)}
            if not in_span(chosen, e, Vn):
                chosen.append(e)
                C[n].append(k)
    h_images: dict = {}
    i_images: dict = {}
    p_images: dict = {}
    H_basis = []
    counter = 0
    for n in degrees:
        Vn = V.in_degree(n)
        pre = C.get(n + 1, [])
        Bvecs = [dict(d.on_basis(c)) for c in pre]
        chosen = list(Bvecs)
        Hkeys, Hvecs = [], []
        for z in Z[n]:
            if not in_span(chosen, z, Vn):
                chosen.append(z)
                key = (label, counter)
                counter += 1
                H_basis.append((key, n, 0))
                i_images[key] = Vec(z)
                Hkeys.append(key)
                Hvecs.append(z)
        for k in C[n]:
            chosen.append({k: Fraction(1)})
        M = vec_matrix(chosen, Vn)
        nB, nH = len(Bvecs), len(Hvecs)
        for k in Vn:
            coords = solve(M, [Fraction(int(r == k)) for r in Vn])
            h_images[k] = Vec((pre[j], coords[j]) for j in range(nB))
            p_images[k] = Vec((Hkeys[j], coords[nB + j]) for j in range(nH))
    H = GradedSpace(tuple(H_basis))
    i = GMap(H, V, 0, i_images)
    p = GMap(V, H, 0, p_images)
    h = GMap(V, V, 1, h_images)
    dH = GMap(H, H, -1, {})
    return H, dH, i, p, h
