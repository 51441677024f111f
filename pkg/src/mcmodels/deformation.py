"""Hochschild and Chevalley–Eilenberg deformation complexes of small algebras.

Everything here lives in degree 0: A is an ungraded finite-dimensional
algebra, cochains are multilinear maps A^{⊗n} → A stored on basis tuples.
The Gerstenhaber degree of an arity-n cochain is n − 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
import random

import sympy

from .core import Accumulator, InvalidInput, PreconditionViolation, Vec, ZERO, permutation_sign, sign


@dataclass
class Cochain:
    """An arity-n multilinear map on the basis ``ids``; missing tuples are 0."""

    ids: tuple
    n: int
    table: dict = field(default_factory=dict)

    def __call__(self, *keys) -> Vec:
        return self.table.get(tuple(keys), ZERO)

    def on(self, *vecs) -> Vec:
        acc = Accumulator()
        for combo in product(*[list(v.items()) for v in vecs]):
            c = 1
            for _, x in combo:
                c *= x
            acc.add_vec(self(*(k for k, _ in combo)), c)
        return acc.vec()

    def __add__(self, other):
        if self.n != other.n:
            raise InvalidInput("arity mismatch")
        keys = set(self.table) | set(other.table)
        return Cochain(self.ids, self.n, _clean({k: self(*k) + other(*k) for k in keys}))

    def scale(self, c) -> "Cochain":
        return Cochain(self.ids, self.n, _clean({k: v * c for k, v in self.table.items()}))

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_zero(self) -> bool:
        return not self.table

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.n == other.n and self.table == other.table

    def vector(self) -> list:
        """Coordinates in the basis of hom(A^{⊗n}, A), tuples in product order."""
        return [self(*t).get(o) for t in product(self.ids, repeat=self.n) for o in self.ids]

    def to_json(self):
        from .core import scalar_to_str

        return [{"inputs": list(k), "output": [[o, scalar_to_str(c)] for o, c in v.sorted_items()]}
                for k, v in sorted(self.table.items())]


def _clean(t: dict) -> dict:
    return {k: v for k, v in t.items() if v}


def cochain(ids, n, fn) -> Cochain:
    """Tabulate fn(*keys) -> Vec on all basis tuples."""
    ids = tuple(ids)
    return Cochain(ids, n, _clean({t: Vec(fn(*t)) for t in product(ids, repeat=n)}))


def from_structure_constants(ids, consts: dict) -> Cochain:
    """consts[(a, b)] = {c: coeff}."""
    return Cochain(tuple(ids), 2, _clean({tuple(k): Vec(v) for k, v in consts.items()}))


# ---------------------------------------------------------------- Gerstenhaber


def circ(f: Cochain, g: Cochain) -> Cochain:
    """f ∘ g = Σ_i (−1)^{i(q−1)} f(a_1..a_i, g(a_{i+1}..a_{i+q}), ..)."""
    p, q = f.n, g.n
    ids = f.ids

    def val(*keys):
        acc = Accumulator()
        for i in range(p):
            inner = g(*keys[i:i + q])
            if not inner:
                continue
            s = sign(i * (q - 1))
            for k, c in inner.items():
                acc.add_vec(f(*keys[:i], k, *keys[i + q:]), s * c)
        return acc.vec()

    return cochain(ids, p + q - 1, val)


def gerstenhaber(f: Cochain, g: Cochain) -> Cochain:
    """[f, g] = f∘g − (−1)^{(p−1)(q−1)} g∘f."""
    return circ(f, g) - circ(g, f).scale(sign((f.n - 1) * (g.n - 1)))


def hoch_differential(m: Cochain, f: Cochain) -> Cochain:
    """(df)(a_1..a_{n+1}) = m(a_1, f(a_2..)) + Σ_i (−1)^i f(.., m(a_i, a_{i+1}), ..)
    + (−1)^{n+1} m(f(a_1..a_n), a_{n+1})."""
    n = f.n

    def val(*a):
        acc = Accumulator()
        for k, c in f(*a[1:]).items():
            acc.add_vec(m(a[0], k), c)
        for i in range(n):
            for k, c in m(a[i], a[i + 1]).items():
                acc.add_vec(f(*a[:i], k, *a[i + 2:]), sign(i + 1) * c)
        for k, c in f(*a[:n]).items():
            acc.add_vec(m(k, a[n]), sign(n + 1) * c)
        return acc.vec()

    return cochain(f.ids, n + 1, val)


def associativity_residual(m: Cochain) -> Cochain:
    """(a, b, c) ↦ m(m(a,b),c) − m(a,m(b,c)), computed directly."""
    return cochain(m.ids, 3, lambda a, b, c: m.on(m(a, b), Vec({c: 1})) - m.on(Vec({a: 1}), m(b, c)))


def is_mc_associative(m: Cochain) -> bool:
    """½[m, m] = 0, cross-checked against the direct associativity residual."""
    half = gerstenhaber(m, m).scale(Fraction(1, 2))
    direct = associativity_residual(m)
    if half.is_zero() != direct.is_zero():
        raise RuntimeError("½[m,m] and the associativity residual disagree")
    return half.is_zero()


def infinitesimal_deformation_check(m: Cochain, f: Cochain) -> bool:
    """Is m + εf associative mod ε², i.e. is f a Hochschild 2-cocycle?"""
    if not associativity_residual(m).is_zero():
        raise PreconditionViolation("m is not associative")
    if f.n != 2:
        raise InvalidInput("an infinitesimal deformation of a product is bilinear")
    return hoch_differential(m, f).is_zero()


def trivial_deformation(m: Cochain, g: Cochain) -> Cochain:
    """f(x, y) = g(m(x,y)) − m(g(x), y) − m(x, g(y)), the deformation induced by
    the change of coordinates 1 + εg."""
    if g.n != 1:
        raise InvalidInput("g is a linear map")
    return cochain(m.ids, 2, lambda x, y: g.on(m(x, y)) - m.on(g(x), Vec({y: 1}))
                   - m.on(Vec({x: 1}), g(y)))


def _matrix_of_d(m: Cochain, n: int):
    """Matrix of d: C^n → C^{n+1} on the elementary cochains."""
    ids = m.ids
    cols = []
    for t in product(ids, repeat=n):
        for o in ids:
            e = Cochain(ids, n, {t: Vec({o: 1})})
            cols.append(hoch_differential(m, e).vector())
    return sympy.Matrix(cols).T if cols else sympy.zeros(0, 0)


def hochschild_dimension(m: Cochain, n: int) -> int:
    """dim ker(d: C^n → C^{n+1}) − rank(d: C^{n−1} → C^n)."""
    dn = _matrix_of_d(m, n)
    z = dn.shape[1] - dn.rank()
    b = _matrix_of_d(m, n - 1).rank() if n >= 1 else 0
    return z - b


# ---------------------------------------------------------------- fixtures


def dual_numbers() -> Cochain:
    """k[x]/(x²) on the basis 1, x."""
    return from_structure_constants(("1", "x"), {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1},
                                                 ("x", "1"): {"x": 1}})


def matrix_algebra_2() -> Cochain:
    """2×2 matrices on the elementary basis."""
    ids = ("e11", "e12", "e21", "e22")
    consts = {}
    for a, b in product(ids, repeat=2):
        if a[2] == b[1]:
            consts[(a, b)] = {"e" + a[1] + b[2]: 1}
    return from_structure_constants(ids, consts)


def _seed_algebras() -> list:
    """Associative algebras of dimension ≤ 3, for base changes."""
    tri = {("e11", "e11"): {"e11": 1}, ("e11", "e12"): {"e12": 1}, ("e12", "e22"): {"e12": 1},
           ("e22", "e22"): {"e22": 1}}
    trunc3 = {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1},
              ("1", "y"): {"y": 1}, ("y", "1"): {"y": 1}, ("x", "x"): {"y": 1}}
    diag = {("p", "p"): {"p": 1}, ("q", "q"): {"q": 1}, ("r", "r"): {"r": 1}}
    return [from_structure_constants(("e11", "e12", "e22"), tri),
            from_structure_constants(("1", "x", "y"), trunc3),
            from_structure_constants(("p", "q", "r"), diag),
            dual_numbers()]


def _base_change(m: Cochain, rng: random.Random) -> Cochain:
    n = len(m.ids)
    while True:
        P = sympy.Matrix(n, n, lambda i, j: rng.randint(-2, 2))
        if P.det() != 0:
            break
    Pi = P.inv()
    new = tuple(f"b{i}" for i in range(n))
    # new basis b_i = Σ_j P[j, i] e_j
    vec = lambda i: Vec({m.ids[j]: P[j, i] for j in range(n)})

    def val(a, b):
        v = m.on(vec(new.index(a)), vec(new.index(b)))
        coords = Pi * sympy.Matrix([v.get(k) for k in m.ids])
        return Vec({new[i]: Fraction(int(coords[i].p), int(coords[i].q)) for i in range(n)})

    return cochain(new, 2, val)


def random_bilinear(seed: int, dim: int | None = None, associative: bool | None = None) -> Cochain:
    """A seeded bilinear product of dimension ≤ 3.  Associative ones are base
    changes of small known algebras; the others have random structure
    constants."""
    rng = random.Random(seed)
    if associative is None:
        associative = rng.random() < 0.5
    if associative:
        return _base_change(rng.choice(_seed_algebras()), rng)
    dim = dim or rng.randint(1, 3)
    ids = tuple(f"b{i}" for i in range(dim))
    consts = {(a, b): {c: rng.randint(-2, 2) for c in ids} for a in ids for b in ids}
    return from_structure_constants(ids, consts)


# ---------------------------------------------------------------- Chevalley–Eilenberg


def _alternate_check(f: Cochain) -> bool:
    for t in product(f.ids, repeat=f.n):
        for i in range(f.n - 1):
            s = t[:i] + (t[i + 1], t[i]) + t[i + 2:]
            if f(*t) != -f(*s):
                return False
    return True


def ce_differential(b: Cochain, f: Cochain) -> Cochain:
    """(df)(x_1..x_{n+1}) = Σ_i (−1)^{i+1} [x_i, f(.., x̂_i, ..)]
    + Σ_{i<j} (−1)^{i+j} f([x_i, x_j], .., x̂_i, .., x̂_j, ..), indices from 1."""
    n = f.n

    def val(*x):
        acc = Accumulator()
        for i in range(n + 1):
            rest = x[:i] + x[i + 1:]
            for k, c in f(*rest).items():
                acc.add_vec(b(x[i], k), sign(i) * c)
        for i, j in combinations(range(n + 1), 2):
            rest = tuple(x[r] for r in range(n + 1) if r not in (i, j))
            for k, c in b(x[i], x[j]).items():
                acc.add_vec(f(k, *rest), sign(i + j) * c)
        return acc.vec()

    return cochain(f.ids, n + 1, val)


def ce_circ(f: Cochain, g: Cochain) -> Cochain:
    """f ∘ g = Σ_{σ ∈ Sh(q, p−1)} sgn(σ) f(g(x_σ(1..q)), x_σ(q+1..))."""
    p, q = f.n, g.n
    N = p + q - 1

    def val(*x):
        acc = Accumulator()
        for S in combinations(range(N), q):
            R = tuple(r for r in range(N) if r not in S)
            s = permutation_sign(list(S) + list(R))
            for k, c in g(*(x[r] for r in S)).items():
                acc.add_vec(f(k, *(x[r] for r in R)), s * c)
        return acc.vec()

    return cochain(f.ids, N, val)


def ce_bracket(f: Cochain, g: Cochain) -> Cochain:
    """[f, g] = f∘g − (−1)^{(p−1)(q−1)} g∘f on alternating cochains."""
    return ce_circ(f, g) - ce_circ(g, f).scale(sign((f.n - 1) * (g.n - 1)))


def jacobi_residual(b: Cochain) -> Cochain:
    """(x, y, z) ↦ [[x,y],z] + [[y,z],x] + [[z,x],y], computed directly."""
    one = lambda k: Vec({k: 1})
    return cochain(b.ids, 3, lambda x, y, z: b.on(b(x, y), one(z)) + b.on(b(y, z), one(x))
                   + b.on(b(z, x), one(y)))


def chevalley_eilenberg(b: Cochain, f: Cochain) -> Cochain:
    """The CE differential of f for the Lie bracket b (Jacobi checked first)."""
    if not _alternate_check(b) or not jacobi_residual(b).is_zero():
        raise InvalidInput("b is not a Lie bracket")
    if not _alternate_check(f):
        raise InvalidInput("CE cochains are alternating")
    return ce_differential(b, f)


def random_alternating(ids, n: int, seed: int) -> Cochain:
    rng = random.Random(seed)
    ids = tuple(ids)
    table = {}
    for S in combinations(ids, n):
        v = Vec({o: rng.randint(-2, 2) for o in ids})
        from itertools import permutations

        for perm in permutations(range(n)):
            table[tuple(S[i] for i in perm)] = v * permutation_sign(list(perm))
    return Cochain(ids, n, _clean(table))


def affine_lie() -> Cochain:
    """The 2-dimensional non-abelian Lie algebra [e, f] = f."""
    return from_structure_constants(("e", "f"), {("e", "f"): {"f": 1}, ("f", "e"): {"f": -1}})


def sl2() -> Cochain:
    consts = {("h", "e"): {"e": 2}, ("e", "h"): {"e": -2}, ("h", "f"): {"f": -2},
              ("f", "h"): {"f": 2}, ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1}}
    return from_structure_constants(("h", "e", "f"), consts)


# ---------------------------------------------------------------- JSON


def algebra_from_json(obj) -> Cochain:
    """{"basis": [...], "product": [{"inputs": [a, b], "output": [[c, "p/q"], ...]}]}."""
    from .core import scalar

    ids = tuple(obj["basis"])
    consts = {}
    for e in obj.get("product", []):
        a, b = e["inputs"]
        if a not in ids or b not in ids:
            raise InvalidInput(f"unknown basis element in {e['inputs']}")
        consts[(a, b)] = {c: scalar(x) for c, x in e["output"]}
    return from_structure_constants(ids, consts)


def cochain_from_json(ids, n: int, entries) -> Cochain:
    from .core import scalar

    table = {tuple(e["inputs"]): Vec({c: scalar(x) for c, x in e["output"]}) for e in entries}
    return Cochain(tuple(ids), n, _clean(table))
