"""Convolution algebras hom(C, A) for a conilpotent cocommutative coalgebra C.

Two instances:

* ``iota``: A a shifted sL∞ algebra, ℓ_n(f_1..f_n) = ℓ^A_n (f_1 ⊗ … ⊗ f_n) Δ_n
  with Δ_n the iterated reduced coproduct.  The result is again sL∞.
* ``kappa``: A an unshifted dg Lie algebra, [f, g] = [-,-]_A (f ⊗ g) Δ.
  This is a dg Lie algebra.

Hom elements are Vecs over pairs (a, c), meaning the map c ↦ a, so the
degree of (a, c) is |a| − |c|.

Also here: the failure of bifunctoriality for ∞-morphisms of coalgebras and
algebras on a concrete pair, and the tensor-product route to the brackets on
g ⊗ C_1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
import random

from .core import (Accumulator, GradedSpace, InvalidInput, Vec, ZERO, compositions,
                   koszul_sign, linear_extension, sign, unshuffles)
from .linfty import LieData, SLInfty, check_lie, mc_residual, suspend_lie
from .htt import _sym_sort


# ---------------------------------------------------------------- coalgebras


@dataclass
class ConilCoalg:
    """Finite conilpotent cocommutative dg coalgebra given by its reduced
    coproduct: cop[k] is a Vec over pairs (k1, k2); d has degree −1."""

    space: GradedSpace
    cop: dict
    d: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self._cache = {}
        top = len(self.space) + 2
        for k in self.space.ids:
            if self.delta_n(top, k):
                raise InvalidInput(f"coproduct of {k!r} is not conilpotent")

    def deg(self, k) -> int:
        return self.space.deg(k)

    def delta(self, k) -> Vec:
        return self.cop.get(k, ZERO)

    def delta_n(self, n: int, k) -> Vec:
        """(1 ⊗ … ⊗ Δ̄)…(1 ⊗ Δ̄)Δ̄ on k, keyed by n-tuples."""
        if n == 1:
            return Vec({(k,): 1})
        ck = (n, k)
        if ck not in self._cache:
            acc = Accumulator()
            for (a, b), c in self.delta(k).items():
                for tail, c2 in self.delta_n(n - 1, b).items():
                    acc.add((a,) + tail, c * c2)
            self._cache[ck] = acc.vec()
        return self._cache[ck]

    def diff(self, k) -> Vec:
        return self.d.get(k, ZERO)

    def depth(self) -> int:
        n = 1
        while any(self.delta_n(n + 1, k) for k in self.space.ids):
            n += 1
        return n


def check_coalgebra(C: ConilCoalg) -> bool:
    """Coassociativity, graded cocommutativity, d² = 0 and d a coderivation."""
    deg = C.deg
    for k in C.space.ids:
        left = Accumulator()
        for (a, b), c in C.delta(k).items():
            for (a1, a2), c1 in C.delta(a).items():
                left.add((a1, a2, b), c * c1)
        if left.vec() != C.delta_n(3, k):
            return False
        flip = Vec({(b, a): c * sign(deg(a) * deg(b)) for (a, b), c in C.delta(k).items()})
        if flip != C.delta(k):
            return False
        if linear_extension(C.diff, C.diff(k)):
            return False
        lhs = linear_extension(C.delta, C.diff(k))
        rhs = Accumulator()
        for (a, b), c in C.delta(k).items():
            for a2, c2 in C.diff(a).items():
                rhs.add((a2, b), c * c2)
            for b2, c2 in C.diff(b).items():
                rhs.add((a, b2), c * c2 * sign(deg(a)))
        if lhs != rhs.vec():
            return False
    return True


def _sym_monomials(gens: dict, depth: int):
    names = sorted(gens)
    out = []

    def rec(start, cur):
        if cur:
            out.append(tuple(cur))
        if len(cur) == depth:
            return
        for j in range(start, len(names)):
            g = names[j]
            if cur and cur[-1] == g and gens[g] % 2:
                continue
            rec(j, cur + [g])

    rec(0, [])
    return out


def _shuffle_coproduct(keys: tuple, deg, order=repr) -> Vec:
    """Σ over splittings into two nonempty sub-words, with Koszul signs."""
    n = len(keys)
    degs = [deg(k) for k in keys]
    acc = Accumulator()
    for r in range(1, n):
        for S in combinations(range(n), r):
            R = tuple(j for j in range(n) if j not in S)
            s = koszul_sign(list(S) + list(R), degs)
            a, ca = _sym_sort(tuple(keys[j] for j in S), 1, deg, order)
            b, cb = _sym_sort(tuple(keys[j] for j in R), 1, deg, order)
            if a is None or b is None:
                continue
            acc.add((a, b), s * ca * cb)
    return acc.vec()


def sym_coalgebra(gens: dict, depth: int) -> ConilCoalg:
    """Reduced cofree cocommutative coalgebra on generators (name -> degree),
    cut at word length ``depth``; the keys are sorted words."""
    deg_of = lambda w: sum(gens[g] for g in w)
    words = _sym_monomials(gens, depth)
    space = GradedSpace.of((w, deg_of(w), len(w)) for w in words)
    cop = {}
    for w in words:
        v = _shuffle_coproduct(w, lambda g: gens[g], order=lambda g: g)
        cop[w] = Vec({(a, b): c for (a, b), c in v.items()})
    return ConilCoalg(space, cop, {}, "Sym^c")


def bar_coalgebra(A: SLInfty, weight_cap: int) -> ConilCoalg:
    """Sym^c(A) up to total weight ``weight_cap`` with the codifferential
    extending every ℓ_m.  Needs a tabulated A with weight-additive ops and
    weights ≥ 1; keys are sorted tuples of A-keys."""
    deg, wt = A.deg, A.weight
    ids = [k for k in A.basis if wt(k) <= weight_cap]
    order = {k: i for i, k in enumerate(A.basis)}
    ordf = lambda k: order[k]
    words = []

    def rec(start, cur, w):
        if cur:
            words.append(tuple(cur))
        for j in range(start, len(ids)):
            k = ids[j]
            if w + wt(k) > weight_cap or (cur and cur[-1] == k and deg(k) % 2):
                continue
            rec(j, cur + [k], w + wt(k))

    rec(0, [], 0)
    space = GradedSpace.of((w, sum(deg(k) for k in w), sum(wt(k) for k in w)) for w in words)
    cop = {w: _shuffle_coproduct(w, deg, ordf) for w in words}
    d = {}
    for w in words:
        n = len(w)
        degs = [deg(k) for k in w]
        acc = Accumulator()
        for m in range(1, n + 1):
            f = A.ops.get(m)
            if f is None:
                continue
            for chosen, rest in unshuffles(n, m):
                val = f(*(w[j] for j in chosen))
                if not val:
                    continue
                s = koszul_sign(list(chosen) + list(rest), degs)
                for k, c in val.items():
                    sk, sc = _sym_sort((k,) + tuple(w[j] for j in rest), s * c, deg, ordf)
                    if sk is not None and sc:
                        acc.add(sk, sc)
        d[w] = acc.vec()
    return ConilCoalg(space, cop, d, "Bar")


# ---------------------------------------------------------------- convolution algebras


class ConvAlg:
    """hom(C, A) on the basis of pairs (a, c)."""

    def __init__(self, C: ConilCoalg, A, kind: str = "iota"):
        if kind not in ("iota", "kappa"):
            raise InvalidInput("kind is 'iota' or 'kappa'")
        if kind == "kappa" and not isinstance(A, LieData):
            raise InvalidInput("the kappa instance takes a dg Lie algebra")
        if kind == "iota" and not isinstance(A, SLInfty):
            raise InvalidInput("the iota instance takes an sL∞ algebra")
        self.C, self.A, self.kind = C, A, kind
        if kind == "kappa":
            self.adeg, self.aids, self.aw = A.space.deg, A.space.ids, A.space.weight
            self.arity_cap = 2
        else:
            self.adeg, self.aids, self.aw = A.deg, A.basis, A.weight
            self.arity_cap = A.arity_cap
        self.basis = [(a, c) for a in self.aids for c in C.space.ids]
        # transposes: which c see a given tuple in Δ_n(c), and c in d(c')
        self._dn_t = {}
        depth = C.depth()
        for n in range(2, min(depth, self.arity_cap) + 1):
            for c in C.space.ids:
                for tup, coef in C.delta_n(n, c).items():
                    self._dn_t.setdefault(tup, []).append((c, coef))
        self._d_t = {}
        for c in C.space.ids:
            for c2, coef in C.diff(c).items():
                self._d_t.setdefault(c2, []).append((c, coef))

    def deg(self, key) -> int:
        a, c = key
        return self.adeg(a) - self.C.deg(c)

    def weight(self, key) -> int:
        return self.aw(key[0]) if self.aw else 0

    def _a_op(self, n):
        if self.kind == "kappa":
            return {1: lambda a: self.A.d.get(a, ZERO), 2: self.A.br}.get(n)
        return self.A.ops.get(n)

    def op1(self, key) -> Vec:
        """∂f = d_A f − (−1)^{|f|} f d_C."""
        a, c = key
        acc = Accumulator()
        dA = self._a_op(1)
        if dA is not None:
            for a2, x in dA(a).items():
                acc.add((a2, c), x)
        s = sign(self.deg(key))
        for c2, x in self._d_t.get(c, ()):
            acc.add((a, c2), -s * x)
        return acc.vec()

    def opn(self, *keys) -> Vec:
        n = len(keys)
        f = self._a_op(n)
        cs = tuple(k[1] for k in keys)
        hits = self._dn_t.get(cs)
        if f is None or not hits:
            return ZERO
        fdeg = [self.deg(k) for k in keys]
        cdeg = [self.C.deg(c) for c in cs]
        eps = sign(sum(fdeg[j] * cdeg[i] for i in range(n) for j in range(i + 1, n)))
        val = f(*(k[0] for k in keys))
        if not val:
            return ZERO
        acc = Accumulator()
        for c, coef in hits:
            for a, x in val.items():
                acc.add((a, c), eps * coef * x)
        return acc.vec()

    def as_slinfty(self) -> SLInfty:
        if self.kind == "kappa":
            L = suspend_lie(self.as_lie(), check=False)
            return L
        ops = {1: self.op1}
        for n in range(2, self.arity_cap + 1):
            if n in self.A.ops:
                ops[n] = self.opn
        return SLInfty(self.deg, ops, self.arity_cap, list(self.basis), self.weight,
                       getattr(self.A, "weight_cap", None), "hom")

    def as_lie(self) -> LieData:
        if self.kind != "kappa":
            raise InvalidInput("only the kappa instance is a dg Lie algebra")
        space = GradedSpace.of((k, self.deg(k), self.weight(k)) for k in self.basis)
        return LieData(space, {k: self.op1(k) for k in self.basis}, self.opn)

    def evaluate(self, f: Vec, c) -> Vec:
        return Vec({a: x for (a, c2), x in f.items() if c2 == c})


def conv_bracket(conv: ConvAlg, *fs: Vec) -> Vec:
    """ℓ_n of the convolution structure (for kappa, the Lie bracket of two maps)."""
    from .core import multilinear_extension

    if not fs or len(fs) > conv.arity_cap:
        raise InvalidInput(f"arity {len(fs)} is beyond the cooperation data")
    if len(fs) == 1:
        return linear_extension(conv.op1, fs[0])
    return multilinear_extension(conv.opn, list(fs))


def post_compose(f, phi: Vec) -> Vec:
    """hom(1, f): (a, c) ↦ f(a) ⊗ c for a strict (degree-0) map f on A-keys."""
    acc = Accumulator()
    for (a, c), x in phi.items():
        for a2, y in f(a).items():
            acc.add((a2, c), x * y)
    return acc.vec()


def twisting_residual(conv: ConvAlg, phi: Vec) -> Vec:
    """∂φ + ⋆φ computed point by point on C: at each c,
    d_A φ(c) − φ(d_C c) + Σ_n (1/n!) ℓ_n(φ^{⊗n} Δ_n(c)).  For kappa the value is
    reported on the suspension, i.e. as −(∂φ + ½[φ, φ]), to match the shifted
    MC equation."""
    C = conv.C
    if any(conv.deg(k) != (0 if conv.kind == "iota" else -1) for k in phi):
        raise InvalidInput("φ has the wrong degree")
    by_c = {}
    for (a, c), x in phi.items():
        by_c.setdefault(c, Accumulator()).add(a, x)
    val = {c: acc.vec() for c, acc in by_c.items()}
    at = lambda c: val.get(c, ZERO)
    out = Accumulator()
    top = min(C.depth(), conv.arity_cap)
    for c in C.space.ids:
        acc = Accumulator()
        d1 = conv._a_op(1)
        if d1 is not None:
            acc.add_vec(linear_extension(d1, at(c)))
        acc.add_vec(linear_extension(at, C.diff(c)), -1 if conv.kind == "iota" else 1)
        for n in range(2, top + 1):
            f = conv._a_op(n)
            if f is None:
                continue
            for tup, coef in C.delta_n(n, c).items():
                vecs = [at(t) for t in tup]
                if any(not v for v in vecs):
                    continue
                eps = 1
                if conv.kind == "kappa":  # φ has degree −1 and passes c_1
                    eps = sign(-C.deg(tup[0]))
                from .core import multilinear_extension
                acc.add_vec(multilinear_extension(f, vecs), Fraction(coef * eps, factorial(n)))
        for a, x in acc.vec().items():
            out.add((a, c), x if conv.kind == "iota" else -x)
    return out.vec()


def mc_equals_tw(conv: ConvAlg, phi: Vec):
    """(MC residual in the convolution sL∞ algebra, twisting residual)."""
    L = conv.as_slinfty()
    return mc_residual(L, phi), twisting_residual(conv, phi)


def random_hom(conv: ConvAlg, seed: int, density: float = 0.4, coeffs=(-2, -1, 1, 2)) -> Vec:
    """A random map of MC degree (0 for iota, −1 for kappa)."""
    rng = random.Random(seed)
    want = 0 if conv.kind == "iota" else -1
    return Vec({k: rng.choice(coeffs) for k in conv.basis
                if conv.deg(k) == want and rng.random() < density})


def universal_twisting(A: SLInfty, weight_cap: int):
    """The projection π: Bar A → A, as a degree-0 element of hom(Bar A, A)."""
    C = bar_coalgebra(A, weight_cap)
    conv = ConvAlg(C, A, "iota")
    pi = Vec({(w[0], w): 1 for w in C.space.ids if len(w) == 1})
    return conv, pi


# ---------------------------------------------------------------- the counterexample
#
# V = ⊕_{i ≥ 1} k v_i with |v_i| = i, an As^¡-coalgebra whose arity-2
# decomposition is Σ (−1)^{i_1} v_{i_1} ⊗ v_{i_2} (i_1 + i_2 = n − 1), the
# higher ones iterating it on the left factor.  Φ: V ⇝ V sends v_n to all
# compositions of n, and i_∞: H² ⇝ A² is the transferred morphism.


def _cx_decomp(n: int, k: int) -> list:
    """Arity-k part of the decomposition of v_n: [(coef, (i_1..i_k))]."""
    if k == 1:
        return [(1, (n,))]
    out = []
    for coef, idx in _cx_decomp(n, k - 1):
        i1 = idx[0]
        for j1 in range(1, i1 - 1):
            j2 = i1 - 1 - j1
            out.append((coef * sign(j1), (j1, j2) + idx[1:]))
    return out


def _cx_phi(n: int, identity: bool) -> list:
    if identity:
        return [(1, (n,))]
    return [(1, comp) for comp in compositions(n)]


def _cx_data(nA: int):
    from .htt import An_contraction, from_bar, morphism_from_bar, transfer_ainfty_ns

    C, m_ops, deg, basis = An_contraction(nA)
    small, icomps = transfer_ainfty_ns(C, 4)
    i_un = morphism_from_bar(icomps, C.small_deg)
    h_ops = from_bar(small.ops, small.deg)
    return m_ops, i_un, h_ops


def build_An(n: int, degree_cap: int | None = None):
    """The A^n algebra with its contraction onto H^n, after verifying
    pi = id, ip − 1 = d h + h d (up to the detected orientation) and the side
    conditions on the truncated span.  Returns the tuple of htt.build_An."""
    from .htt import build_An as _build

    data = _build(n, degree_cap)
    m_ops, deg, basis, i, p, h, small = data
    d = m_ops[1]
    cap = degree_cap or 2 * n + 2
    orient = None
    for z in small:
        if linear_extension(p, i[z]) != Vec({z: 1}):
            raise InvalidInput("p i ≠ id")
    for k in basis:
        if k[0] == "y" and k[1] + n > cap:
            continue
        if k[0] == "x" and k[1] + n > cap:
            continue  # dh + hd leaves the truncation
        lhs = linear_extension(lambda z: i[z], p(k)) - Vec({k: 1})
        rhs = linear_extension(h, d(k)) + linear_extension(d, h(k))
        if lhs:
            orient = orient or (1 if lhs == rhs else -1)
        if lhs != rhs * (orient or 1):
            raise InvalidInput(f"homotopy identity fails at {k!r}")
        if linear_extension(h, h(k)) or linear_extension(p, h(k)):
            raise InvalidInput("side conditions fail")
    for z in small:
        if linear_extension(h, i[z]):
            raise InvalidInput("h i ≠ 0")
    return data


def default_cx_maps():
    """f_i(v_1) = z for all i, f_1(v_2) = z, f_2(v_2) = f_3(v_2) = 0."""
    z = Vec({("z", 1): 1})
    return [{1: z, 2: z}, {1: z}, {1: z}]


def _apply_F(tokens: list, F: list, hdeg) -> list:
    """tokens: [('op', degree) | ('v', i)]; replace the r-th v by f_r(v) with
    the Koszul sign of f_r passing everything in front of it."""
    out = [([], 1)]
    r, before = 0, 0
    for t in tokens:
        if t[0] == "v":
            img = F[r].get(t[1], ZERO) if r < len(F) else ZERO
            new = []
            for h, c in img.items():
                fdeg = hdeg(h) - t[1]
                for lst, s in out:
                    new.append((lst + [("h", h)], s * c * sign(fdeg * before)))
            out = new
            r += 1
            before += t[1]
        else:
            out = [(lst + [t], s) for lst, s in out]
            before += t[1]
    return out


def _product(m2, vals: list) -> Vec:
    acc = vals[0]
    for v in vals[1:]:
        acc = Vec(sum_multilinear(m2, acc, v))
    return acc


def sum_multilinear(f, x: Vec, y: Vec) -> Vec:
    from .core import multilinear_extension
    return multilinear_extension(f, [x, y])


def counterexample_run(n: int = 4, F=None, phi: str = "general", psi: str = "i_inf", nA: int = 2):
    """Evaluate both composites of hom_ℓ(Φ, 1) and hom_r(1, Ψ) on F at v_n.

    phi is 'general' (all compositions) or 'identity'; psi is 'i_inf' or
    'strict' (only the linear part i).  Returns (hom_ℓ∘hom_r, hom_r∘hom_ℓ)
    as Vecs in A^nA with keys ('x', a) = x^a and ('y', a) = x^a y."""
    F = F or default_cx_maps()
    N = len(F)
    m_ops, i_un, h_ops = _cx_data(nA)
    hdeg = lambda h: 0
    ident = phi == "identity"

    def psi_block(hs: list) -> Vec:
        m = len(hs)
        if psi == "strict" and m > 1:
            return ZERO
        f = i_un.get(m)
        if f is None:
            return ZERO
        return Vec(f(*hs))

    def h_product(hs: list) -> Vec:
        acc = Vec({hs[0]: 1})
        for h in hs[1:]:
            acc = sum_multilinear(h_ops[2], acc, Vec({h: 1})) if 2 in h_ops else ZERO
        return acc

    def blocks(lst):
        """split [('op', d), h.., ('op', d), h..] into runs of h's."""
        out = []
        for t in lst:
            if t[0] == "op":
                out.append([])
            else:
                out[-1].append(t[1])
        return out

    # composite 1: Φ first, then the decomposition, F, Ψ blockwise, product in A
    first = Accumulator()
    for c0, comp in _cx_phi(n, ident):
        k = len(comp)
        choices = [[]]
        for i in comp:
            choices = [ch + [(m, t)] for ch in choices for m in range(1, N + 1)
                       for t in _cx_decomp(i, m)]
        for ch in choices:
            if sum(m for m, _ in ch) != N:
                continue
            coef = c0
            tokens = [("op", 0)]  # μ_k
            for m, (c, idx) in ch:
                coef *= c
                tokens.append(("op", m - 1))
                tokens += [("v", i) for i in idx]
            for lst, s in _apply_F(tokens, F, hdeg):
                body = [t for t in lst[1:]]
                vals = [psi_block(b) for b in blocks(body)]
                if any(not v for v in vals):
                    continue
                first.add_vec(_product(m_ops[2], vals) if len(vals) > 1 else vals[0], coef * s)

    # composite 2: the decomposition first, then Φ on each factor, F, products in H, Ψ
    second = Accumulator()
    for k in range(1, N + 1):
        for c0, idx in _cx_decomp(n, k):
            choices = [[]]
            for i in idx:
                choices = [ch + [t] for ch in choices for t in _cx_phi(i, ident)]
            for ch in choices:
                if sum(len(t[1]) for t in ch) != N:
                    continue
                coef = c0
                tokens = [("op", k - 1)]  # the arity-k cooperation
                for c, comp in ch:
                    coef *= c
                    tokens.append(("op", 0))
                    tokens += [("v", i) for i in comp]
                for lst, s in _apply_F(tokens, F, hdeg):
                    hs = []
                    for b in blocks(lst[1:]):
                        p = h_product(b)
                        hs.append(p)
                    if any(not v for v in hs):
                        continue
                    from .core import multilinear_extension
                    val = multilinear_extension(lambda *ks: psi_block(list(ks)), hs)
                    second.add_vec(val, coef * s)
    return first.vec(), second.vec()


# ---------------------------------------------------------------- g ⊗ C_1 through U(g) ⊗ C_1


class TensorPipeline:
    """Brackets on s(g ⊗ C_1), g free nilpotent on ``gens``: tensor the
    transferred A∞ structure of C_1 with the truncated tensor algebra that
    contains g, symmetrise, and read off Lie coordinates."""

    def __init__(self, gens: dict, cap: int, arity_cap: int = 3):
        from .dupont import transfer_cn_structure
        from .freelie import FreeAlg, free_nilpotent_lie

        self.gens, self.cap, self.arity_cap = gens, cap, arity_cap
        self.cbar, _, _ = transfer_cn_structure(1, arity_cap)
        self.alg = FreeAlg.of(gens, cap)
        basis, self.elems, self.br, self.coords = free_nilpotent_lie(gens, cap, with_coords=True)
        self.gspace = GradedSpace.of(basis)
        self.basis = [(x, I) for x in self.gspace.ids for I in self.cbar.basis]

    def deg(self, key) -> int:
        x, I = key
        return self.gspace.deg(x) + self.cbar.deg(I)

    def _wdeg(self, w) -> int:
        return self.alg.word_deg(w)

    def bar_op(self, *keys) -> Vec:
        """b_n on U ⊗ sC_1: ±(u_1⋯u_n) ⊗ b_n(sI_1, …, sI_n)."""
        n = len(keys)
        f = self.cbar.ops.get(n)
        if f is None:
            return ZERO
        words = [k[0] for k in keys]
        if sum(len(w) for w in words) > self.cap:
            return ZERO
        Is = [k[1] for k in keys]
        ud = [self._wdeg(w) for w in words]
        idg = [self.cbar.deg(I) for I in Is]
        e = sum(ud) + sum(idg[i] * ud[j] for i in range(n) for j in range(i + 1, n))
        val = f(*Is)
        w = sum(words, ())
        return Vec({(w, J): sign(e) * c for J, c in val.items()})

    def embed(self, key) -> Vec:
        """s(x ⊗ ω) = (−1)^{|x|} x ⊗ sω."""
        x, I = key
        s = sign(self.gspace.deg(x))
        return Vec({(w, I): s * c for w, c in self.elems[x].terms.items()})

    def read(self, v: Vec) -> Vec:
        from .freelie import TensorElt

        parts = {}
        for (w, I), c in v.items():
            parts.setdefault(I, Accumulator()).add(w, c)
        out = Accumulator()
        for I, acc in parts.items():
            t = acc.vec()
            if not t:
                continue
            for x, c in self.coords(TensorElt(self.alg, t)).items():
                out.add((x, I), c * sign(self.gspace.deg(x)))
        return out.vec()

    def ell(self, *keys) -> Vec:
        """ℓ_n = −Σ_σ ε(σ) b_n∘σ: the bar convention has b_1 = +d while the
        shifted Lie convention has ℓ_1 = −d; negating every b_n matches them."""
        from .core import multilinear_extension

        n = len(keys)
        degs = [self.deg(k) for k in keys]
        acc = Accumulator()
        ins = [self.embed(k) for k in keys]
        for perm in permutations(range(n)):
            s = koszul_sign(list(perm), degs)
            acc.add_vec(multilinear_extension(self.bar_op, [ins[j] for j in perm]), -s)
        return self.read(acc.vec())

    def as_slinfty(self) -> SLInfty:
        ops = {n: self.ell for n in range(1, self.arity_cap + 1)}
        w = lambda k: self.gspace.weight(k[0])
        return SLInfty(self.deg, ops, self.arity_cap, list(self.basis), w, self.cap, "U⊗C1")


def compare_pipelines(gens: dict, cap: int = 3, arity_cap: int = 3):
    """Brackets from homotopy transfer on s(g ⊗ Ω_1) against the tensor
    pipeline, on all basis tuples up to ``arity_cap``.  Returns
    (agree, number of tuples, first mismatch or None)."""
    from itertools import combinations_with_replacement
    from .linfty import free_lie_data
    from .mcspace import LevelModel

    M = LevelModel(free_lie_data(gens, cap), 1, arity_cap=arity_cap)
    T = TensorPipeline(gens, cap, arity_cap)
    basis = [k for k in M.small.basis]
    count = 0
    for n in range(1, arity_cap + 1):
        for combo in combinations_with_replacement(basis, n):
            if sum(M.g.space.weight(k[0]) for k in combo) > cap:
                continue
            count += 1
            a = M.small.trunc(Vec(M.small.ops[n](*combo)))
            b = T.ell(*combo)
            if a != b:
                return False, count, (combo, a, b)
    return True, count, None


def check_hom_lie(conv: ConvAlg) -> bool:
    return check_lie(conv.as_lie())
