"""Polynomial differential forms on Δⁿ, Whitney forms and Dupont's contraction.

Forms on Δⁿ are Vecs keyed by (exps, dts): exps is an n-tuple of exponents
of t_1..t_n and dts a strictly increasing tuple of indices in 1..n.  The
variables t_0 = 1 − Σ t_i and dt_0 = −Σ dt_i are eliminated.  Chain
convention: dt_i has degree −1, so a key has degree −len(dts).

C_n is spanned by Whitney forms ω_I, keyed by strictly increasing index
tuples I (length k+1, degree −k, k ≥ 0).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial

from .core import Accumulator, GradedSpace, InvalidInput, Vec, ZERO, scalar_to_str, sign


# ---------------------------------------------------------------- the algebra


def _merge_dts(S: tuple, T: tuple):
    """dt_S ∧ dt_T = sign · dt_{S∪T} (or None if they overlap)."""
    if set(S) & set(T):
        return None, 0
    seq = list(S) + list(T)
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return tuple(sorted(seq)), sign(inv)


def key_degree(key) -> int:
    return -len(key[1])


def one(n: int) -> Vec:
    return Vec({((0,) * n, ()): 1})


def t(n: int, i: int) -> Vec:
    """t_i on Δⁿ (i = 0 is 1 − Σ t_j)."""
    if not 0 <= i <= n:
        raise InvalidInput("vertex index out of range")
    if i == 0:
        acc = Accumulator()
        acc.add(((0,) * n, ()), 1)
        for j in range(1, n + 1):
            acc.add((_unit(n, j), ()), -1)
        return acc.vec()
    return Vec({(_unit(n, i), ()): 1})


def dt(n: int, i: int) -> Vec:
    if not 0 <= i <= n:
        raise InvalidInput("vertex index out of range")
    z = (0,) * n
    if i == 0:
        return Vec(((z, (j,)), -1) for j in range(1, n + 1))
    return Vec({(z, (i,)): 1})


def _unit(n, i):
    return tuple(int(j == i) for j in range(1, n + 1))


def _level(v: Vec):
    for k in v:
        return len(k[0])
    return None


def wedge(a: Vec, b: Vec) -> Vec:
    la, lb = _level(a), _level(b)
    if la is not None and lb is not None and la != lb:
        raise InvalidInput("forms live on different simplices")
    acc = Accumulator()
    for (ea, Sa), ca in a.items():
        for (eb, Sb), cb in b.items():
            S, s = _merge_dts(Sa, Sb)
            if S is None:
                continue
            acc.add((tuple(x + y for x, y in zip(ea, eb)), S), s * ca * cb)
    return acc.vec()


def d_form(a: Vec) -> Vec:
    """d(f dt_S) = Σ_i ∂_i f dt_i ∧ dt_S."""
    acc = Accumulator()
    for (e, S), c in a.items():
        for i, ei in enumerate(e):
            if ei == 0 or (i + 1) in S:
                continue
            ne = e[:i] + (ei - 1,) + e[i + 1:]
            T, s = _merge_dts((i + 1,), S)
            acc.add((ne, T), s * c * ei)
    return acc.vec()


def power(a: Vec, k: int, n: int) -> Vec:
    out = one(n)
    for _ in range(k):
        out = wedge(out, a)
    return out


def substitute(a: Vec, t_images: list, dt_images: list, target_n: int) -> Vec:
    """Algebra map sending t_j ↦ t_images[j-1], dt_j ↦ dt_images[j-1]."""
    acc = Accumulator()
    cache: dict = {}

    def tpow(j, k):
        key = (j, k)
        if key not in cache:
            cache[key] = power(t_images[j], k, target_n)
        return cache[key]

    for (e, S), c in a.items():
        term = one(target_n)
        for j, ej in enumerate(e):
            if ej:
                term = wedge(term, tpow(j, ej))
                if not term:
                    break
        for s in S:
            if not term:
                break
            term = wedge(term, dt_images[s - 1])
        acc.add_vec(term, c)
    return acc.vec()


def face(a: Vec, i: int) -> Vec:
    """∂_i^*: Ω_n → Ω_{n−1}, restriction to the face opposite vertex i."""
    n = _level(a)
    if n is None:
        return ZERO
    if not 0 <= i <= n or n == 0:
        raise InvalidInput("face index out of range")
    m = n - 1
    ti, dti = [], []
    for k in range(1, n + 1):
        if k < i:
            ti.append(t(m, k)); dti.append(dt(m, k))
        elif k == i:
            ti.append(ZERO); dti.append(ZERO)
        else:
            ti.append(t(m, k - 1)); dti.append(dt(m, k - 1))
    return substitute(a, ti, dti, m)


def degeneracy(a: Vec, j: int) -> Vec:
    """s_j^*: Ω_n → Ω_{n+1}, t_k ↦ t_k (k < j), t_j + t_{j+1}, t_{k+1} (k > j)."""
    n = _level(a)
    if n is None:
        return ZERO
    if not 0 <= j <= n:
        raise InvalidInput("degeneracy index out of range")
    m = n + 1
    ti, dti = [], []
    for k in range(1, n + 1):
        if k < j:
            ti.append(t(m, k)); dti.append(dt(m, k))
        elif k == j:
            ti.append(t(m, k) + t(m, k + 1)); dti.append(dt(m, k) + dt(m, k + 1))
        else:
            ti.append(t(m, k + 1)); dti.append(dt(m, k + 1))
    return substitute(a, ti, dti, m)


def integrate(a: Vec, n: int | None = None) -> Fraction:
    """∫_{Δⁿ} of the top-degree part: ∫ t^a dt_1…dt_n = ∏ a_i! / (n + Σ a_i)!."""
    if n is None:
        n = _level(a) or 0
    top = tuple(range(1, n + 1))
    total = Fraction(0)
    for (e, S), c in a.items():
        if S != top:
            continue
        num = 1
        for x in e:
            num *= factorial(x)
        total += c * Fraction(num, factorial(n + sum(e)))
    return total


# ---------------------------------------------------------------- Whitney forms


@lru_cache(maxsize=None)
def whitney(indices: tuple, n: int) -> Vec:
    """ω_I = k! Σ_j (−1)^j t_{i_j} dt_{i_0} … \\hat{dt_{i_j}} … dt_{i_k}."""
    I = tuple(indices)
    if len(set(I)) != len(I) or list(I) != sorted(I):
        raise InvalidInput("Whitney indices must be strictly increasing")
    if not I or I[0] < 0 or I[-1] > n:
        raise InvalidInput("Whitney indices out of range")
    k = len(I) - 1
    acc = Accumulator()
    for j in range(k + 1):
        term = t(n, I[j])
        for r in range(k + 1):
            if r != j:
                term = wedge(term, dt(n, I[r]))
        acc.add_vec(term, sign(j) * factorial(k))
    return acc.vec()


def whitney_basis(n: int) -> list:
    return [I for k in range(n + 1) for I in combinations(range(n + 1), k + 1)]


def whitney_space(n: int) -> GradedSpace:
    return GradedSpace.of((I, -(len(I) - 1)) for I in whitney_basis(n))


def d_whitney(c: Vec, n: int) -> Vec:
    """d on C_n: dω_I = Σ_i ω_{i I} with the index moved into place."""
    acc = Accumulator()
    for I, coef in c.items():
        for i in range(n + 1):
            if i in I:
                continue
            J = tuple(sorted(I + (i,)))
            pos = J.index(i)
            acc.add(J, sign(pos) * coef)
    return acc.vec()


def i_map(c: Vec, n: int) -> Vec:
    acc = Accumulator()
    for I, coef in c.items():
        acc.add_vec(whitney(I, n), coef)
    return acc.vec()


@lru_cache(maxsize=None)
def _face_inclusion(I: tuple, n: int):
    """Images of t_1..t_n, dt_1..dt_n under the pullback along Δ^k → Δⁿ with vertices I."""
    k = len(I) - 1
    ti, dti = [], []
    for m in range(1, n + 1):
        if m in I:
            j = I.index(m)
            ti.append(t(k, j)); dti.append(dt(k, j))
        else:
            ti.append(ZERO); dti.append(ZERO)
    return ti, dti


def restrict(a: Vec, I: tuple, n: int) -> Vec:
    ti, dti = _face_inclusion(tuple(I), n)
    return substitute(a, ti, dti, len(I) - 1)


def p_map(a: Vec, n: int) -> Vec:
    """p(ω) = Σ_I (∫_{Δ^k} f_I^* ω) ω_I."""
    acc = Accumulator()
    by_deg: dict = {}
    for key, c in a.items():
        by_deg.setdefault(len(key[1]), {})[key] = c
    for k, part in by_deg.items():
        part = Vec(part)
        for I in combinations(range(n + 1), k + 1):
            acc.add(I, integrate(restrict(part, I, n), k))
    return acc.vec()


def _beta_integral(p: int, q: int) -> Fraction:
    """∫_0^1 (1−u)^p u^q du."""
    return Fraction(factorial(p) * factorial(q), factorial(p + q + 1))


def h_vertex(a: Vec, i: int, n: int) -> Vec:
    """h_(i): pull back along (u, t) ↦ (1−u)t + u e_i, write the result as
    α + du ∧ β and integrate β over u ∈ [0, 1]."""
    acc = Accumulator()
    for (e, S), c in a.items():
        m = len(S)
        if m == 0:
            continue
        base_p = sum(x for j, x in enumerate(e, 1) if j != i) + (m - 1)
        ai = e[i - 1] if i >= 1 else 0
        for r, s in enumerate(S):
            rest = S[:r] + S[r + 1:]
            for cc in range(ai + 1):
                w = comb(ai, cc) * _beta_integral(base_p + cc, ai - cc)
                ne = list(e)
                if i >= 1:
                    ne[i - 1] = cc
                coef = sign(r) * c * w
                # factor (δ_{is} − t_s)
                if i == s:
                    acc.add((tuple(ne), rest), coef)
                ne2 = list(ne)
                ne2[s - 1] += 1
                acc.add((tuple(ne2), rest), -coef)
    return acc.vec()


H_SIGN = -1  # the chain-convention sign; pinned by verify_contraction


def h_map(a: Vec, n: int) -> Vec:
    """h_n = Σ_{k ≤ n−1} Σ_I ω_I ∧ h_(i_k) ⋯ h_(i_0)."""
    acc = Accumulator()
    for k in range(n):
        for I in combinations(range(n + 1), k + 1):
            v = a
            for i in I:
                v = h_vertex(v, i, n)
                if not v:
                    break
            if v:
                acc.add_vec(wedge(whitney(I, n), v), H_SIGN)
    return acc.vec()


def monomials(n: int, degree_cap: int) -> list:
    out = []
    for S_len in range(n + 1):
        for S in combinations(range(1, n + 1), S_len):
            for total in range(degree_cap + 1):
                for e in _exps(n, total):
                    out.append((e, S))
    return out


def _exps(n, total):
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _exps(n - 1, total - first):
            yield (first,) + rest


@dataclass
class ContractionReport:
    n: int
    degree_cap: int
    checked: int
    failures: dict

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def to_json(self):
        return {"n": self.n, "degree_cap": self.degree_cap, "checked": self.checked, "ok": self.ok,
                "failures": {k: [repr(x) for x in v] for k, v in self.failures.items()}}


def verify_contraction(n: int, degree_cap: int) -> ContractionReport:
    """pi = 1, 1 − ip = dh + hd, h² = ph = hi = 0 on all monomials of
    polynomial degree ≤ cap and on the Whitney basis."""
    fails = {"pi": [], "homotopy": [], "hh": [], "ph": [], "hi": []}
    checked = 0
    for I in whitney_basis(n):
        c = Vec({I: 1})
        iv = i_map(c, n)
        if p_map(iv, n) != c:
            fails["pi"].append(I)
        if h_map(iv, n):
            fails["hi"].append(I)
        checked += 1
    for key in monomials(n, degree_cap):
        a = Vec({key: 1})
        ha = h_map(a, n)
        lhs = a - i_map(p_map(a, n), n)
        rhs = d_form(ha) + h_map(d_form(a), n)
        if lhs != rhs:
            fails["homotopy"].append(key)
        if h_map(ha, n):
            fails["hh"].append(key)
        if p_map(ha, n):
            fails["ph"].append(key)
        checked += 1
    return ContractionReport(n, degree_cap, checked, fails)


class PolyForm:
    """A form on Δⁿ with arithmetic; thin wrapper over the keyed Vec."""

    __slots__ = ("n", "v")

    def __init__(self, n: int, v: Vec | None = None):
        self.n = n
        self.v = v if v is not None else Vec()

    def __add__(self, o):
        self._same(o)
        return PolyForm(self.n, self.v + o.v)

    def __sub__(self, o):
        self._same(o)
        return PolyForm(self.n, self.v - o.v)

    def __mul__(self, o):
        if isinstance(o, PolyForm):
            self._same(o)
            return PolyForm(self.n, wedge(self.v, o.v))
        return PolyForm(self.n, self.v * o)

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, PolyForm) and self.n == o.n and self.v == o.v

    def _same(self, o):
        if o.n != self.n:
            raise InvalidInput("forms live on different simplices")

    def d(self):
        return PolyForm(self.n, d_form(self.v))

    def to_json(self):
        return [[list(e), list(S), scalar_to_str(c)] for (e, S), c in self.v.sorted_items()]

    def __repr__(self):
        return f"PolyForm({self.n}, {self.v!r})"


# ---------------------------------------------------------------- transfer to C_n


def omega_keys(n: int, degree_cap: int) -> list:
    return monomials(n, degree_cap)


def dupont_contraction(n: int, degree_cap: int = 6):
    """The Dupont contraction of Ω_n onto C_n in bar form (forms as the big
    side with b_1 = d and b_2 the bar-converted wedge product)."""
    from .htt import Contraction, detect_orientation, to_bar

    def m1(k):
        return d_form(Vec({k: 1}))

    def m2(a, b):
        return wedge(Vec({a: 1}), Vec({b: 1}))

    big = to_bar({1: m1, 2: m2}, key_degree, 2, None)
    cs = whitney_space(n)
    C = Contraction(big, cs.ids, lambda I: -(len(I) - 1) + 1,
                    lambda I: d_whitney(Vec({I: 1}), n),
                    lambda I: whitney(I, n), lambda k: p_map(Vec({k: 1}), n),
                    lambda k: h_map(Vec({k: 1}), n), lambda I: 0)
    C.orientation = detect_orientation(big.ops[1], C.i, C.p, C.h, monomials(n, min(degree_cap, 3)))
    return C


def transfer_cn_structure(n: int, arity_cap: int = 4, method: str = "recursive"):
    """Transferred A∞ (in fact C∞) operations on C_n, returned both in bar
    form and as unshifted m_k on Whitney keys."""
    from .htt import from_bar, transfer_ainfty_ns

    if n > 3:
        raise InvalidInput("n ≤ 3")
    C = dupont_contraction(n)
    small, icomps = transfer_ainfty_ns(C, arity_cap, method)
    return small, from_bar(small.ops, small.deg), C
