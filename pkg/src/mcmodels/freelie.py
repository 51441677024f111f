"""Weight-truncated free graded Lie algebras inside the tensor algebra.

Elements are rational combinations of words in named generators; the word
length is the weight and words longer than the cap are dropped.  The Lie
bracket is the graded commutator.  Throughout ad_λ(x) = [x, λ].
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial

from .core import Accumulator, InvalidInput, Vec, scalar, scalar_to_str, sign
from . import linalg


@dataclass(frozen=True)
class FreeAlg:
    """Generators (name -> degree) and the weight cap."""

    gens: tuple  # of (name, degree)
    cap: int

    def __post_init__(self):
        names = [g for g, _ in self.gens]
        if len(set(names)) != len(names):
            raise InvalidInput("generator names must be unique")
        object.__setattr__(self, "_deg", dict(self.gens))

    @classmethod
    def of(cls, gens: dict, cap: int) -> "FreeAlg":
        return cls(tuple(gens.items()), cap)

    def deg(self, name) -> int:
        return self._deg[name]

    def word_deg(self, word) -> int:
        return sum(self._deg[g] for g in word)

    def gen(self, name) -> "TensorElt":
        if name not in self._deg:
            raise InvalidInput(f"unknown generator {name!r}")
        return TensorElt(self, Vec({(name,): 1}))

    def zero(self) -> "TensorElt":
        return TensorElt(self, Vec())

    def one(self) -> "TensorElt":
        return TensorElt(self, Vec({(): 1}))

    def with_cap(self, cap: int) -> "FreeAlg":
        return FreeAlg(self.gens, cap)


class TensorElt:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: FreeAlg, terms):
        self.alg = alg
        if not isinstance(terms, Vec):
            terms = Vec(terms)
        if any(len(w) > alg.cap for w in terms):
            terms = Vec((w, c) for w, c in terms.items() if len(w) <= alg.cap)
        self.terms = terms

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return TensorElt(self.alg, self.terms + other.terms)

    __radd__ = __add__

    def __sub__(self, other):
        return TensorElt(self.alg, self.terms - other.terms)

    def __neg__(self):
        return TensorElt(self.alg, -self.terms)

    def __mul__(self, other):
        if isinstance(other, TensorElt):
            return self.concat(other)
        return TensorElt(self.alg, self.terms * scalar(other))

    def __rmul__(self, c):
        return TensorElt(self.alg, self.terms * scalar(c))

    def __truediv__(self, c):
        return TensorElt(self.alg, self.terms / c)

    def __eq__(self, other):
        if isinstance(other, TensorElt):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{''.join(map(str, w)) or '1'}" for w, c in self.sorted_terms())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def concat(self, other) -> "TensorElt":
        cap = self.alg.cap
        acc = Accumulator()
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                if len(u) + len(v) <= cap:
                    acc.add(u + v, a * b)
        return TensorElt(self.alg, acc.vec())

    def degrees(self) -> set:
        return {self.alg.word_deg(w) for w in self.terms}

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise InvalidInput("element is not homogeneous")
        return ds.pop() if ds else 0

    def weight_part(self, k: int) -> "TensorElt":
        return TensorElt(self.alg, Vec((w, c) for w, c in self.terms.items() if len(w) == k))

    def upto(self, k: int) -> "TensorElt":
        return TensorElt(self.alg, Vec((w, c) for w, c in self.terms.items() if len(w) <= k))

    def min_weight(self):
        return min((len(w) for w in self.terms), default=None)

    def to_json(self):
        return [[list(w), scalar_to_str(c)] for w, c in self.sorted_terms()]


def _homogeneous_parts(a: TensorElt) -> dict:
    parts: dict = {}
    for w, c in a.terms.items():
        parts.setdefault(a.alg.word_deg(w), {})[w] = c
    return {d: TensorElt(a.alg, Vec(v)) for d, v in parts.items()}


def bracket(a: TensorElt, b: TensorElt) -> TensorElt:
    """Graded commutator ab − (−1)^{|a||b|} ba, extended bilinearly over
    homogeneous components."""
    acc = a.alg.zero()
    for da, pa in _homogeneous_parts(a).items():
        for db, pb in _homogeneous_parts(b).items():
            acc = acc + pa.concat(pb) - pb.concat(pa) * sign(da * db)
    return acc


def ad(lam: TensorElt):
    """ad_λ(x) = [x, λ]."""
    return lambda x: bracket(x, lam)


def exp_series(op, x: TensorElt, cap: int, t=1) -> TensorElt:
    """Σ t^n/n! op^n(x) until the terms vanish or n exceeds cap."""
    out, term = x, x
    t = scalar(t)
    for n in range(1, cap + 2):
        term = op(term) * (t / n)
        if not term:
            break
        out = out + term
    return out


class LieDerivation:
    """Derivation of degree ``degree`` given on generators, extended by the
    graded Leibniz rule D(uv) = D(u)v + (−1)^{|D||u|} u D(v)."""

    def __init__(self, alg: FreeAlg, images: dict, degree: int = -1):
        self.alg = alg
        self.degree = degree
        self.images = {}
        for g, v in images.items():
            if g not in alg._deg:
                raise InvalidInput(f"unknown generator {g!r}")
            if v and v.degrees() != {alg.deg(g) + degree}:
                raise InvalidInput(f"image of {g!r} has the wrong degree")
            self.images[g] = v

    def __call__(self, a: TensorElt) -> TensorElt:
        alg = self.alg
        acc = Accumulator()
        for w, c in a.terms.items():
            prefix_deg = 0
            for i, g in enumerate(w):
                img = self.images.get(g)
                if img:
                    s = sign(self.degree * prefix_deg)
                    left, right = w[:i], w[i + 1:]
                    for u, cu in img.terms.items():
                        word = left + u + right
                        if len(word) <= alg.cap:
                            acc.add(word, s * c * cu)
                prefix_deg += alg.deg(g)
        return TensorElt(alg, acc.vec())

    def square_vanishes(self) -> bool:
        return all(not self(self(self.alg.gen(g))) for g, _ in self.alg.gens)


def gauge_closed_form(lam: TensorElt, x0: TensorElt, d: LieDerivation, t=1) -> TensorElt:
    """x(t) = (e^{t ad_λ} − id)/ad_λ (dλ) + e^{t ad_λ}(x_0)."""
    if lam and lam.degree() != 0:
        raise InvalidInput("a gauge has degree 0")
    if x0 and x0.degree() != -1:
        raise InvalidInput("x_0 must have degree -1")
    t = scalar(t)
    cap = lam.alg.cap
    a = ad(lam)
    out = exp_series(a, x0, cap, t)
    term = d(lam) * t
    n = 1
    while term:
        out = out + term
        n += 1
        term = a(term) * (t / n)
        if n > cap + 2:
            break
    return out


def gauge_ode(lam: TensorElt, x0: TensorElt, d: LieDerivation, degree_cap: int):
    """The gauge equation ẋ = dλ + [x, λ] as a formal ODE for the solvers."""
    from .solvers import FODE

    alg = lam.alg
    dlam = d(lam).terms
    wrap = lambda v: TensorElt(alg, v)
    ops = {
        (0, 0): lambda: dlam,
        (1, 0): lambda x: bracket(wrap(x), lam).terms,
    }
    return FODE(ops, x0.terms, degree_cap)


def mc_curvature(x: TensorElt, d: LieDerivation) -> TensorElt:
    """dx + ½[x, x]."""
    return d(x) + bracket(x, x) / 2


# ---------------------------------------------------------------- BCH


def tensor_exp(a: TensorElt) -> TensorElt:
    out, term = a.alg.one(), a.alg.one()
    for n in range(1, a.alg.cap + 1):
        term = term.concat(a) / n
        if not term:
            break
        out = out + term
    return out


def tensor_log(g: TensorElt) -> TensorElt:
    """log(1 + y) for g = 1 + y with y of positive weight."""
    alg = g.alg
    y = g - alg.one()
    if y.terms.get(()):
        raise InvalidInput("log needs constant term 1")
    out, power = alg.zero(), alg.one()
    for n in range(1, alg.cap + 1):
        power = power.concat(y)
        if not power:
            break
        out = out + power * Fraction((-1) ** (n + 1), n)
    return out


def bch(lam: TensorElt, mu: TensorElt, cap: int | None = None) -> TensorElt:
    """log(exp λ · exp μ) in the truncated tensor algebra."""
    for v in (lam, mu):
        if v and v.degree() != 0:
            raise InvalidInput("BCH inputs have degree 0")
    if cap is not None and cap != lam.alg.cap:
        alg = lam.alg.with_cap(cap)
        lam, mu = TensorElt(alg, lam.terms), TensorElt(alg, mu.terms)
    return tensor_log(tensor_exp(lam).concat(tensor_exp(mu)))


def right_normed(word, alg: FreeAlg) -> TensorElt:
    """[g_1, [g_2, [..., g_k]]]."""
    out = alg.gen(word[-1])
    for g in reversed(word[:-1]):
        out = bracket(alg.gen(g), out)
    return out


def is_primitive(a: TensorElt, cap: int | None = None) -> bool:
    """Membership in the free Lie algebra, by rank against right-normed
    brackets of all words with the same letters."""
    alg = a.alg if cap is None else a.alg.with_cap(cap)
    if a.terms.get(()):
        return False
    groups: dict = {}
    for w, c in a.terms.items():
        groups.setdefault(tuple(sorted(Counter(w).items())), {})[w] = c
    for key, target in groups.items():
        letters = [g for g, m in key for _ in range(m)]
        words = sorted(set(permutations(letters)))
        spanning = [right_normed(w, alg).terms for w in words]
        spanning = [v for v in spanning if v]
        if not linalg.in_span(spanning, target, words):
            return False
    return True


# ---------------------------------------------------------------- Lawrence–Sullivan


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n from t/(e^t − 1) = Σ B_n t^n/n!, by inverting (e^t − 1)/t."""
    if n < 0:
        raise InvalidInput("n ≥ 0")
    # (e^t-1)/t = Σ t^k/(k+1)!;  c = its reciprocal, B_n = n! c_n
    a = [Fraction(1, factorial(k + 1)) for k in range(n + 1)]
    c = [Fraction(1)]
    for k in range(1, n + 1):
        c.append(-sum(a[j] * c[k - j] for j in range(1, k + 1)))
    return c[n] * factorial(n)


def lawrence_sullivan(cap: int):
    """Generators x0, x1 (degree −1), lam (degree 0) and the differential
    dx_i = −½[x_i, x_i], dλ = Σ B_n/n! ad_λ^n(x_1 − x_0) − ad_λ(x_0)."""
    if cap < 1:
        raise InvalidInput("cap ≥ 1")
    alg = FreeAlg.of({"x0": -1, "x1": -1, "lam": 0}, cap)
    x0, x1, lam = alg.gen("x0"), alg.gen("x1"), alg.gen("lam")
    a = ad(lam)
    dlam = alg.zero()
    term = x1 - x0
    for n in range(cap):
        if not term:
            break
        dlam = dlam + term * (bernoulli(n) / factorial(n))
        term = a(term)
    dlam = dlam - a(x0)
    d = LieDerivation(alg, {
        "x0": bracket(x0, x0) * Fraction(-1, 2),
        "x1": bracket(x1, x1) * Fraction(-1, 2),
        "lam": dlam,
    })
    return alg, d


def free_nilpotent_lie(gens: dict, cap: int, with_coords: bool = False):
    """A basis of the free graded Lie algebra on ``gens`` modulo weight > cap.

    Returns (basis, elements, bracket) where basis lists (id, degree, weight),
    elements maps ids to TensorElts and bracket(i, j) is a Vec in the basis.
    Basis elements are right-normed brackets picked greedily by rank.
    With ``with_coords`` a fourth entry expresses Lie polynomials in the basis.
    """
    alg = FreeAlg.of(gens, cap)
    names = [g for g, _ in alg.gens]
    basis, elems = [], {}
    by_weight: dict = {}
    for k in range(1, cap + 1):
        chosen = []
        for word in product(names, repeat=k):
            e = right_normed(word, alg) if k > 1 else alg.gen(word[0])
            if not e:
                continue
            cand = [elems[i].terms for i in chosen] + [e.terms]
            keys = sorted({w for v in cand for w in v})
            if linalg.rank(linalg.vec_matrix(cand, keys)) == len(cand):
                bid = word[0] if k == 1 else "[" + ",".join(word) + "]"
                elems[bid] = e
                chosen.append(bid)
                basis.append((bid, e.degree(), k))
        by_weight[k] = chosen

    def coords(t: TensorElt) -> Vec:
        out = Accumulator()
        for k in range(1, cap + 1):
            part = t.weight_part(k)
            if not part:
                continue
            ids = by_weight[k]
            vecs = [elems[i].terms for i in ids]
            keys = sorted({w for v in vecs for w in v} | set(part.terms))
            x = linalg.solve(linalg.vec_matrix(vecs, keys), [part.terms.get(w) for w in keys])
            if x is None:
                raise InvalidInput("element is not in the Lie span")
            for i, c in zip(ids, x):
                out.add(i, c)
        return out.vec()

    table = {}
    for a in elems:
        for b in elems:
            table[(a, b)] = coords(bracket(elems[a], elems[b]))

    def br(i, j):
        return table[(i, j)]

    if with_coords:
        return basis, elems, br, coords
    return basis, elems, br
