"""Tree combinatorics.

Planar trees (optionally weighted) are ``WTree`` nodes whose children are
either ``None`` (a leaf slot, which is also the empty tree) or further
nodes.  Leaf-labelled rooted trees are nested tuples: a vertex is a tuple
of children sorted by their smallest label, a leaf is its integer label.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import prod

from .core import InvalidInput, set_partitions, compositions

LEAF = None


@dataclass(frozen=True)
class WTree:
    weight: int
    children: tuple

    def __post_init__(self):
        if self.weight < 1:
            raise InvalidInput("vertex weights are at least 1")

    @property
    def arity(self) -> int:
        return sum(1 if c is None else c.arity for c in self.children)

    def to_json(self):
        return to_json(self)

    def __repr__(self):
        return f"T{to_json(self)}"


EMPTY = None


def corolla(n: int, weight: int = 1) -> WTree:
    return WTree(weight, (None,) * n)


def arity(t) -> int:
    return 1 if t is None else t.arity


def n_vertices(t) -> int:
    if t is None:
        return 0
    return 1 + sum(n_vertices(c) for c in t.children)


def vertex_arities(t):
    if t is None:
        return []
    out = [len(t.children)]
    for c in t.children:
        out += vertex_arities(c)
    return out


def to_json(t):
    if t is None:
        return None
    return [t.weight, [to_json(c) for c in t.children]]


def from_json(obj):
    if obj is None:
        return None
    if len(obj) == 2:
        return WTree(int(obj[0]), tuple(from_json(c) for c in obj[1]))
    raise InvalidInput("planar trees serialize as [weight, [children]]")


def _key(t):
    return repr(to_json(t))


def graft(t, slot: int, s):
    """Graft s onto the slot-th leaf (0-based) of t."""
    if t is None:
        if slot != 0:
            raise InvalidInput("slot out of range")
        return s
    out = []
    for c in t.children:
        a = arity(c)
        if 0 <= slot < a:
            out.append(graft(c, slot, s))
        else:
            out.append(c)
        slot -= a
    return WTree(t.weight, tuple(out))


def coeff_W(t) -> int:
    if t is None:
        return 0
    return t.weight + sum(coeff_W(c) for c in t.children)


def coeff_F(t) -> int:
    if t is None:
        return 1
    return coeff_W(t) * prod(coeff_F(c) for c in t.children)


def enumerate_wptrees(weight_cap: int, allowed) -> list:
    """All weighted planar trees of total weight ≤ cap built from allowed
    (arity, weight) corollas, the empty tree included."""
    if weight_cap < 0:
        raise InvalidInput("weight cap must be non-negative")
    allowed = sorted(set((int(a), int(w)) for a, w in allowed))

    @lru_cache(maxsize=None)
    def upto(budget):
        out = [None]
        for n, w in allowed:
            if w > budget:
                continue
            for kids in _children(n, budget - w):
                out.append(WTree(w, kids))
        return tuple(out)

    @lru_cache(maxsize=None)
    def _children(n, budget):
        if n == 0:
            return ((),)
        res = []
        for first in upto(budget):
            rest_budget = budget - coeff_W(first)
            for rest in _children(n - 1, rest_budget):
                res.append((first,) + rest)
        return tuple(res)

    trees = upto(weight_cap)
    return sorted(trees, key=lambda t: (coeff_W(t), _key(t)))


def enumerate_planar(n: int, reduced: bool = True, max_vertices: int | None = None) -> list:
    """Planar trees with n leaves (all vertex weights 1).

    Reduced trees have every vertex of arity ≥ 2.  Without that restriction
    unary vertices can be stacked indefinitely, so a vertex bound is needed.
    """
    if n <= 0:
        raise InvalidInput("arity must be positive")
    if not reduced and max_vertices is None:
        raise InvalidInput("non-reduced enumeration needs max_vertices")
    lo = 2 if reduced else 1
    cap = max_vertices if max_vertices is not None else n  # reduced trees have < n vertices

    @lru_cache(maxsize=None)
    def trees(m, budget):
        # trees of arity m with at least one vertex and ≤ budget vertices
        if budget <= 0:
            return ()
        out = []
        for k in range(lo, m + 1) if m >= lo else ():
            for comp in compositions(m, k):
                for kids in _kids(comp, budget - 1):
                    out.append(WTree(1, kids))
        if not reduced and m >= 1:
            pass
        return tuple(out)

    @lru_cache(maxsize=None)
    def subtrees(m, budget):
        res = []
        if m == 1:
            res.append((None, 0))
        for t in trees(m, budget):
            res.append((t, n_vertices(t)))
        return tuple(res)

    @lru_cache(maxsize=None)
    def _kids(comp, budget):
        if not comp:
            return ((),)
        out = []
        for t, used in subtrees(comp[0], budget):
            for rest in _kids(comp[1:], budget - used):
                out.append((t,) + rest)
        return tuple(out)

    res = [t for t in trees(n, cap)]
    if not reduced:
        # arity-1 vertices on top of a single leaf are included through k = 1
        pass
    return sorted(res, key=lambda t: (n_vertices(t), _key(t)))


# ---------------------------------------------------------------- rooted trees


def _min_label(c):
    return c if isinstance(c, int) else min(_min_label(x) for x in c)


def canonical_rooted(t):
    """Canonical nested-tuple form of a leaf-labelled rooted tree."""
    if isinstance(t, int):
        return t
    kids = [canonical_rooted(c) for c in t]
    return tuple(sorted(kids, key=_min_label))


def rooted_leaves(t) -> list:
    """Leaf labels in the planar order of the canonical form."""
    if isinstance(t, int):
        return [t]
    out = []
    for c in t:
        out += rooted_leaves(c)
    return out


def rooted_vertices(t) -> int:
    if isinstance(t, int):
        return 0
    return 1 + sum(rooted_vertices(c) for c in t)


def rooted_to_planar(t) -> WTree | None:
    if isinstance(t, int):
        return None
    return WTree(1, tuple(rooted_to_planar(c) for c in t))


def enumerate_rooted(n: int, reduced: bool = True, max_vertices: int | None = None) -> list:
    """Isomorphism classes of rooted trees with leaves labelled 1..n.

    Reduced trees have all vertices of arity ≥ 2.  Non-reduced enumeration
    (vertices of arity ≥ 1) needs a vertex bound.
    """
    if n <= 0:
        raise InvalidInput("arity must be positive")
    if not reduced and max_vertices is None:
        raise InvalidInput("non-reduced enumeration needs max_vertices")
    cap = max_vertices if max_vertices is not None else n
    lo = 2 if reduced else 1

    @lru_cache(maxsize=None)
    def on(labels, budget):
        # trees (with ≥ 1 vertex) on the label set, ≤ budget vertices
        if budget <= 0:
            return ()
        out = []
        for part in set_partitions(labels):
            if len(part) < lo:
                continue
            for kids in _kids(tuple(part), budget - 1):
                out.append(canonical_rooted(kids))
        return tuple(out)

    @lru_cache(maxsize=None)
    def sub(labels, budget):
        res = []
        if len(labels) == 1:
            res.append((labels[0], 0))
        for t in on(labels, budget):
            res.append((t, rooted_vertices(t)))
        return tuple(res)

    @lru_cache(maxsize=None)
    def _kids(blocks, budget):
        if not blocks:
            return ((),)
        out = []
        for t, used in sub(tuple(sorted(blocks[0])), budget):
            for rest in _kids(blocks[1:], budget - used):
                out.append((t,) + rest)
        return tuple(out)

    res = sorted(set(on(tuple(range(1, n + 1)), cap)), key=lambda t: (rooted_vertices(t), repr(t)))
    return res


def rooted_as_tuple(t):
    """The (V, E, n, N) description: vertices, parent pairs, arity, leaf map."""
    verts, edges, leafmap = [], [], {}

    def walk(node, parent):
        vid = len(verts)
        verts.append(vid)
        if parent is not None:
            edges.append((parent, vid))
        for c in node:
            if isinstance(c, int):
                leafmap[c] = vid
            else:
                walk(c, vid)

    if not isinstance(t, int):
        walk(t, None)
    return tuple(verts), tuple(edges), len(leafmap), leafmap


# ---------------------------------------------------------------- decorated trees

BLACK = "b"
WHITE = "w"


@dataclass(frozen=True)
class DecTree:
    """Planar tree whose vertices carry planar-tree decorations.

    ``decoration`` has arity len(children); children are DecTree, BLACK or
    WHITE.  Decorations must have all vertices of arity ≥ 1.
    """

    decoration: WTree
    children: tuple

    def __post_init__(self):
        if not isinstance(self.decoration, WTree):
            raise InvalidInput("decoration must be a planar tree with a vertex")
        if self.decoration.arity != len(self.children) or len(self.children) < 1:
            raise InvalidInput("decoration arity must match the vertex arity")
        if min(vertex_arities(self.decoration)) < 1:
            raise InvalidInput("decoration vertices need arity ≥ 1")
        if any(v != 1 for v in _weights(self.decoration)):
            raise InvalidInput("decorations carry weight 1 only")
        for c in self.children:
            if not (isinstance(c, DecTree) or c in (BLACK, WHITE)):
                raise InvalidInput("children are DecTrees or black/white leaves")

    def to_json(self):
        return [to_json(self.decoration),
                [c.to_json() if isinstance(c, DecTree) else c for c in self.children]]

    def __repr__(self):
        return f"D{self.to_json()}"


def _weights(t):
    if t is None:
        return []
    out = [t.weight]
    for c in t.children:
        out += _weights(c)
    return out


def dectree_from_json(obj):
    if obj in (BLACK, WHITE):
        return obj
    return DecTree(from_json(obj[0]), tuple(dectree_from_json(c) for c in obj[1]))


def closed_decoration(T: DecTree) -> WTree:
    """τ̄_v: graft 0-corollas on the leaves fed by inner vertices or black leaves."""
    tau = T.decoration
    # graft from the right so slot indices stay valid
    for slot in reversed(range(len(T.children))):
        c = T.children[slot]
        if isinstance(c, DecTree) or c == BLACK:
            tau = graft(tau, slot, corolla(0))
    return tau


def coeff_G(T: DecTree) -> Fraction:
    if not isinstance(T, DecTree):
        raise InvalidInput("coeff_G needs a decorated tree")
    g = Fraction(-1, coeff_F(closed_decoration(T)))
    for c in T.children:
        if isinstance(c, DecTree):
            g *= coeff_G(c)
    return g


def dectree_weight(T) -> int:
    """Number of leaves plus the number of decoration vertices."""
    if T in (BLACK, WHITE):
        return 1
    return n_vertices(T.decoration) + sum(dectree_weight(c) for c in T.children)


@lru_cache(maxsize=None)
def _decs_sized(size: int):
    """Planar trees with all vertices of arity ≥ 1 and #vertices + #leaves = size."""
    if size < 2:
        return ()
    out = []
    for kids in _kid_seqs(size - 1):
        out.append(WTree(1, kids))
    return tuple(out)


@lru_cache(maxsize=None)
def _kid_seqs(size: int):
    # non-empty sequences of leaves/subtrees of total size exactly size
    out = []
    for first in range(1, size + 1):
        heads = (None,) if first == 1 else _decs_sized(first)
        tails = ((),) if first == size else _kid_seqs(size - first)
        for h in heads:
            for t in tails:
                out.append((h,) + t)
    return tuple(out)


def enumerate_dectrees(weight_cap: int) -> list:
    """All decorated trees of weight ≤ cap (leaves plus decoration vertices)."""

    @lru_cache(maxsize=None)
    def upto(budget):
        out = []
        if budget < 2:
            return ()
        for size in range(2, budget + 1):
            for tau in _decs_sized(size):
                nv, k = n_vertices(tau), tau.arity
                for kids in _kid_lists(k, budget - nv):
                    out.append(DecTree(tau, kids))
        return tuple(out)

    @lru_cache(maxsize=None)
    def _kid_lists(k, budget):
        if k == 0:
            return ((),)
        res = []
        for first in (WHITE, BLACK) + upto(budget - (k - 1)):
            used = dectree_weight(first)
            if used > budget - (k - 1):
                continue
            for rest in _kid_lists(k - 1, budget - used):
                res.append((first,) + rest)
        return tuple(res)

    trees = upto(weight_cap)
    return sorted(trees, key=lambda T: (dectree_weight(T), repr(T.to_json())))
