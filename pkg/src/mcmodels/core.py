"""Exact graded linear algebra.

Scalars are ``fractions.Fraction``.  Vectors are sparse maps from hashable
basis keys to non-zero scalars.  Everything uses the chain convention:
differentials have degree -1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Hashable, Iterable, Mapping

Scalar = Fraction


class InvalidInput(ValueError):
    pass


class PreconditionViolation(ValueError):
    pass


class UnsupportedInstance(RuntimeError):
    pass


def scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def scalar_to_str(q) -> str:
    q = scalar(q)
    return f"{q.numerator}/{q.denominator}"


def sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class Vec(Mapping):
    """Immutable sparse vector: basis key -> Fraction, zeros never stored."""

    __slots__ = ("_d", "_hash")

    def __init__(self, data: Mapping | Iterable | None = None):
        d: dict = {}
        if data is not None:
            items = data.items() if isinstance(data, Mapping) else data
            for k, c in items:
                if c:
                    c = scalar(c)
                    nc = d.get(k, 0) + c
                    if nc:
                        d[k] = nc
                    else:
                        d.pop(k, None)
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "Vec":
        v = cls.__new__(cls)
        v._d = d
        v._hash = None
        return v

    @classmethod
    def basis(cls, key, coeff=1) -> "Vec":
        return cls({key: coeff})

    def __getitem__(self, k):
        return self._d[k]

    def get(self, k, default=Fraction(0)):
        return self._d.get(k, default)

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def __eq__(self, other):
        if isinstance(other, Vec):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == Vec(other)._d
        if other == 0:
            return not self._d
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        d = dict(self._d)
        for k, c in other.items():
            nc = d.get(k, 0) + c
            if nc:
                d[k] = nc
            else:
                d.pop(k, None)
        return Vec._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return Vec._raw({k: -c for k, c in self._d.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = scalar(c)
        if not c:
            return Vec()
        return Vec._raw({k: v * c for k, v in self._d.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (Fraction(1) / scalar(c))

    def map_keys(self, fn: Callable[[Any], Any]) -> "Vec":
        return Vec((fn(k), c) for k, c in self._d.items())

    def sorted_items(self):
        return sorted(self._d.items(), key=lambda kv: repr(kv[0]))

    def __repr__(self):
        if not self._d:
            return "Vec(0)"
        return "Vec(" + " + ".join(f"{c}*{k!r}" for k, c in self.sorted_items()) + ")"


ZERO = Vec()


class Accumulator:
    """Mutable helper for building a Vec term by term."""

    __slots__ = ("d",)

    def __init__(self):
        self.d: dict = {}

    def add(self, key, c):
        if not c:
            return
        nc = self.d.get(key, 0) + c
        if nc:
            self.d[key] = nc
        else:
            del self.d[key]

    def add_vec(self, v: Mapping, c=1):
        for k, x in v.items():
            self.add(k, x * c)

    def vec(self) -> Vec:
        return Vec._raw(self.d)


def linear_extension(fn: Callable[[Any], Mapping], v: Mapping) -> Vec:
    acc = Accumulator()
    for k, c in v.items():
        acc.add_vec(fn(k), c)
    return acc.vec()


def multilinear_extension(fn: Callable[..., Mapping], vecs: list) -> Vec:
    """Extend fn(key_1, ..., key_n) -> Vec multilinearly to vectors."""
    acc = Accumulator()

    def rec(i, keys, coeff):
        if i == len(vecs):
            acc.add_vec(fn(*keys), coeff)
            return
        for k, c in vecs[i].items():
            rec(i + 1, keys + (k,), coeff * c)

    rec(0, (), Fraction(1))
    return acc.vec()


# ---------------------------------------------------------------- graded spaces


@dataclass(frozen=True)
class GradedSpace:
    basis: tuple  # of (id, degree, weight)

    def __post_init__(self):
        ids = [b[0] for b in self.basis]
        if len(set(ids)) != len(ids):
            raise InvalidInput("basis ids must be unique")
        object.__setattr__(self, "_deg", {b[0]: b[1] for b in self.basis})
        object.__setattr__(self, "_wt", {b[0]: (b[2] if len(b) > 2 else 0) for b in self.basis})

    @classmethod
    def of(cls, items: Iterable) -> "GradedSpace":
        out = []
        for it in items:
            if len(it) == 2:
                out.append((it[0], int(it[1]), 0))
            else:
                out.append((it[0], int(it[1]), int(it[2])))
        return cls(tuple(out))

    @property
    def ids(self):
        return [b[0] for b in self.basis]

    def deg(self, key) -> int:
        return self._deg[key]

    def weight(self, key) -> int:
        return self._wt[key]

    def __contains__(self, key):
        return key in self._deg

    def __len__(self):
        return len(self.basis)

    def in_degree(self, n: int):
        return [b[0] for b in self.basis if b[1] == n]

    def degree_of(self, v: Mapping) -> int:
        degs = {self._deg[k] for k in v}
        if len(degs) != 1:
            raise InvalidInput("vector is not homogeneous")
        return degs.pop()

    def to_json(self):
        return {"basis": [{"id": b[0], "deg": b[1], "weight": b[2]} for b in self.basis]}

    @classmethod
    def from_json(cls, obj) -> "GradedSpace":
        return cls.of((b["id"], b["deg"], b.get("weight", 0)) for b in obj["basis"])


@dataclass(frozen=True)
class GMap:
    """Degree-homogeneous linear map given on basis symbols."""

    source: GradedSpace
    target: GradedSpace
    degree: int
    images: Mapping = field(default_factory=dict)

    def __post_init__(self):
        imgs = {}
        for k, v in self.images.items():
            if k not in self.source:
                raise InvalidInput(f"{k!r} is not a source basis symbol")
            v = v if isinstance(v, Vec) else Vec(v)
            for t in v:
                if t not in self.target:
                    raise InvalidInput(f"{t!r} is not a target basis symbol")
                if self.target.deg(t) != self.source.deg(k) + self.degree:
                    raise InvalidInput(f"image of {k!r} is not of degree {self.degree}")
            if v:
                imgs[k] = v
        object.__setattr__(self, "images", imgs)

    def on_basis(self, k) -> Vec:
        return self.images.get(k, ZERO)

    def __call__(self, v: Mapping) -> Vec:
        return linear_extension(self.on_basis, v)

    def compose(self, other: "GMap") -> "GMap":
        """self ∘ other."""
        return GMap(other.source, self.target, self.degree + other.degree,
                    {k: self(other.on_basis(k)) for k in other.source.ids})

    def __add__(self, other: "GMap") -> "GMap":
        keys = set(self.images) | set(other.images)
        return GMap(self.source, self.target, self.degree,
                    {k: self.on_basis(k) + other.on_basis(k) for k in keys})

    def scale(self, c) -> "GMap":
        return GMap(self.source, self.target, self.degree,
                    {k: v * c for k, v in self.images.items()})

    def is_zero(self) -> bool:
        return not self.images

    def matrix(self):
        rows = self.target.ids
        cols = self.source.ids
        return [[self.on_basis(c).get(r) for c in cols] for r in rows]


def zero_map(source: GradedSpace, target: GradedSpace, degree: int) -> GMap:
    return GMap(source, target, degree, {})


def identity_map(space: GradedSpace) -> GMap:
    return GMap(space, space, 0, {k: Vec.basis(k) for k in space.ids})


# ---------------------------------------------------------------- signs


def _normalize_perm(permutation) -> list:
    perm = list(permutation)
    n = len(perm)
    if sorted(perm) == list(range(n)):
        return perm
    if sorted(perm) == list(range(1, n + 1)):
        return [p - 1 for p in perm]
    raise InvalidInput("not a permutation")


def koszul_sign(permutation, degrees) -> int:
    """Sign of reordering v_1..v_n into v_{σ(1)}..v_{σ(n)}.

    ``permutation`` lists the new order, either 0- or 1-based.  The sign is
    the product of (-1)^{d_i d_j} over the pairs that change relative order.
    """
    perm = _normalize_perm(permutation)
    if len(perm) != len(degrees):
        raise InvalidInput("permutation and degrees differ in length")
    e = 0
    for a, b in combinations(range(len(perm)), 2):
        i, j = perm[a], perm[b]
        if i > j:
            e += degrees[i] * degrees[j]
    return sign(e)


def permutation_sign(permutation) -> int:
    perm = _normalize_perm(permutation)
    return koszul_sign(perm, [1] * len(perm))


def tensor_apply(f: GMap, g: GMap, v: Mapping, w: Mapping) -> Vec:
    """(f ⊗ g)(v ⊗ w) = (-1)^{|g||v|} f(v) ⊗ g(w); result keyed by pairs."""
    if not v:
        return ZERO
    dv = f.source.degree_of(v)
    s = sign(g.degree * dv)
    fv, gw = f(v), g(w)
    acc = Accumulator()
    for a, ca in fv.items():
        for b, cb in gw.items():
            acc.add((a, b), s * ca * cb)
    return acc.vec()


def op_suspension_sign(n: int, j: int, m: int) -> int:
    """Sign in S_n ∘_j S_m = ± S_{n+m-1} for the operadic suspension."""
    if not 1 <= j <= n:
        raise InvalidInput("slot out of range")
    return sign((j - 1) * (1 - m))


def dual_suspension_sign(n: int) -> int:
    """(s^n)^∨ differs from s^{-n} on the dual by this sign."""
    return sign(n * (n - 1) // 2)


def suspend(obj, k: int = 1):
    """Shift a GradedSpace or GMap by k.

    Basis ids are kept; degrees move by k.  A map f becomes s^k f s^{-k},
    which picks up (-1)^{k|f|}; for a differential and k = 1 this is
    d_{sV}(sv) = -s d_V(v).
    """
    if isinstance(obj, GradedSpace):
        return GradedSpace(tuple((b[0], b[1] + k, b[2]) for b in obj.basis))
    if isinstance(obj, GMap):
        s = sign(k * obj.degree)
        return GMap(suspend(obj.source, k), suspend(obj.target, k), obj.degree,
                    {a: v * s for a, v in obj.images.items()})
    raise InvalidInput("can only suspend spaces and maps")


def desuspend(obj, k: int = 1):
    return suspend(obj, -k)


def check_complex(d: GMap) -> bool:
    if d.source != d.target:
        raise InvalidInput("differential must be an endomorphism")
    if d.degree != -1:
        raise InvalidInput("differential must have degree -1")
    return all(d(d.on_basis(k)).is_zero() for k in d.source.ids)


def hom_differential(f: GMap, dV: GMap, dW: GMap) -> GMap:
    """∂f = d_W f - (-1)^{|f|} f d_V."""
    a = dW.compose(f)
    b = f.compose(dV).scale(-sign(f.degree))
    return a + b


# ---------------------------------------------------------------- set partitions


def set_partitions(items: tuple):
    """Unordered partitions of a tuple, blocks ordered by first element."""
    items = tuple(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield ((first,),) + part
        for i in range(len(part)):
            yield part[:i] + ((first,) + part[i],) + part[i + 1:]


def canonical_partitions(items: tuple):
    """Set partitions with blocks sorted and ordered by their minima."""
    for part in set_partitions(items):
        blocks = tuple(sorted(tuple(sorted(b)) for b in part))
        yield blocks


def unshuffles(n: int, k: int):
    """Pairs (chosen, rest) of index tuples with chosen of size k, both increasing."""
    for chosen in combinations(range(n), k):
        cs = set(chosen)
        yield chosen, tuple(i for i in range(n) if i not in cs)


def compositions(n: int, parts: int | None = None, minimum: int = 1):
    """Ordered compositions of n (into a given number of parts if set)."""
    if parts is None:
        for k in range(1, n + 1):
            yield from compositions(n, k, minimum)
        return
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(minimum, n - minimum * (parts - 1) + 1):
        for rest in compositions(n - first, parts - 1, minimum):
            yield (first,) + rest
