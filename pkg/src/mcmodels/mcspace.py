"""Maurer-Cartan elements of g ⊗ Ω_n and g ⊗ C_n at a fixed simplicial level.

g is a finite nilpotent dg Lie algebra (``LieData``, unshifted).  The sL∞
algebra g ⊗ Ω_n is the suspension of the dg Lie algebra g ⊗ Ω_n; its keys are
pairs (x, form_key) and the carrier is infinite, so everything is evaluated
lazily.  The small side g ⊗ C_n has keys (x, I) with I a Whitney index tuple.

Presentations of the low levels (mc_0, mc_1 and their sL∞ versions) are at
the end of the module.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial

from . import dupont as dp
from .core import (Accumulator, InvalidInput, PreconditionViolation, UnsupportedInstance, Vec, ZERO,
                   linear_extension, sign)
from .htt import Contraction, detect_orientation, mc_pushforward_p, transfer_slinfty, validate_pushforward
from .linfty import LieData, SLInfty, gauge_flow, mc_pushforward, mc_residual


# ---------------------------------------------------------------- g ⊗ Ω_n and g ⊗ C_n


def _tensor(xv: Vec, fv: Vec, s=1) -> Vec:
    acc = Accumulator()
    for x, c in xv.items():
        for f, c2 in fv.items():
            acc.add((x, f), s * c * c2)
    return acc.vec()


def _split(v: Vec) -> dict:
    """x ⊗ (form) pieces: {x: form Vec}."""
    out: dict = {}
    for (x, f), c in v.items():
        out.setdefault(x, {})[f] = c
    return {x: Vec(f) for x, f in out.items()}


def lie_tensor_forms(g: LieData, n: int, weight_cap: int | None = None) -> SLInfty:
    """s(g ⊗ Ω_n): ℓ_1 = −s d, ℓ_2(s u, s v) = (−1)^{|u|} s[u, v] with
    [x⊗a, y⊗b] = (−1)^{|a||y|} [x,y] ⊗ ab and d(x⊗a) = dx⊗a + (−1)^{|x|} x⊗da."""
    gdeg, gw = g.space.deg, g.space.weight
    cap = weight_cap if weight_cap is not None else max(b[2] for b in g.space.basis)

    def deg(k):
        return gdeg(k[0]) + dp.key_degree(k[1]) + 1

    def l1(k):
        x, a = k
        e = Vec({a: 1})
        out = _tensor(g.d.get(x, ZERO), e) + _tensor(Vec({x: 1}), dp.d_form(e), sign(gdeg(x)))
        return -out

    def l2(p, q):
        (x, a), (y, b) = p, q
        xy = g.br(x, y)
        if not xy:
            return ZERO
        s = sign(gdeg(x) + dp.key_degree(a)) * sign(dp.key_degree(a) * gdeg(y))
        v = _tensor(Vec(xy), dp.wedge(Vec({a: 1}), Vec({b: 1})), s)
        return Vec((k, c) for k, c in v.items() if gw(k[0]) <= cap)

    return SLInfty(deg, {1: l1, 2: l2}, 2, None, lambda k: gw(k[0]), cap, f"s(g⊗Ω_{n})")


def lie_tensor_contraction(g: LieData, n: int, weight_cap: int | None = None) -> Contraction:
    """1 ⊗ (i, p, h) from s(g ⊗ Ω_n) onto s(g ⊗ C_n), with the Koszul sign of
    h passing x."""
    big = lie_tensor_forms(g, n, weight_cap)
    gdeg = g.space.deg
    small_basis = [(x, I) for x in g.space.ids for I in dp.whitney_basis(n)
                   if g.space.weight(x) <= big.weight_cap]

    def i(k):
        x, I = k
        return _tensor(Vec({x: 1}), dp.whitney(I, n))

    def p(k):
        x, a = k
        return _tensor(Vec({x: 1}), dp.p_map(Vec({a: 1}), n))

    def h(k):
        x, a = k
        return _tensor(Vec({x: 1}), dp.h_map(Vec({a: 1}), n), sign(gdeg(x)))

    def small_deg(k):
        return gdeg(k[0]) - (len(k[1]) - 1) + 1

    def small_d(k):
        return linear_extension(p, linear_extension(big.ops[1], i(k)))

    C = Contraction(big, small_basis, small_deg, small_d, i, p, h, lambda k: g.space.weight(k[0]))
    probe = [(x, m) for x in g.space.ids[:2] for m in dp.monomials(n, 2)]
    C.orientation = detect_orientation(big.ops[1], i, p, h, probe)
    C.level = n
    return C


class LevelModel:
    """g ⊗ Ω_n, g ⊗ C_n with the transferred structure and i_∞, all cached."""

    def __init__(self, g: LieData, n: int, arity_cap: int | None = None, weight_cap: int | None = None):
        if n > 2:
            raise InvalidInput("levels n ≤ 2 only")
        self.g, self.n = g, n
        self.C = lie_tensor_contraction(g, n, weight_cap)
        self.big = self.C.big
        self.arity_cap = arity_cap or self.big.weight_cap
        self.small, self.i_inf = transfer_slinfty(self.C, self.arity_cap)
        self._validated = None

    # the maps on MC elements
    def I(self, beta: Vec) -> Vec:
        return mc_pushforward(self.i_inf, beta)

    def P(self, x: Vec) -> Vec:
        return mc_pushforward_p(self.C, x)

    def rect(self, x: Vec) -> Vec:
        return self.I(self.P(x))

    def h(self, x: Vec) -> Vec:
        return self.C.H(x)

    def validate(self, seed: int = 0, samples: int = 3):
        """V1-V4 on sampled MC elements; cached."""
        if self._validated is None:
            cells = [random_mc_cell(self, seed + j) for j in range(samples)]
            paths = [random_mc_path(self, seed + 100 + j) for j in range(samples)]
            self._validated = validate_pushforward(self.C, self.small, self.i_inf, paths, cells)
        return self._validated


# ---------------------------------------------------------------- sampling


def degree0_keys_small(M: LevelModel):
    return [k for k in M.small.basis if M.small.deg(k) == 0]


def random_gauge_cell(M: LevelModel, seed: int) -> Vec:
    rng = random.Random(seed)
    return Vec((k, Fraction(rng.randint(-2, 2))) for k in M.small.basis if M.small.deg(k) == 1)


def random_mc_cell(M: LevelModel, seed: int) -> Vec:
    """An MC element of g ⊗ C_n reached from 0 by a gauge flow."""
    lam = random_gauge_cell(M, seed)
    return gauge_flow(M.small, lam, Vec())


def form_gauge(M: LevelModel, seed: int, poly_cap: int = 1) -> Vec:
    """A random degree-1 element of s(g ⊗ Ω_n) with polynomial coefficients."""
    rng = random.Random(seed)
    gdeg = M.g.space.deg
    acc = Accumulator()
    for x in M.g.space.ids:
        for m in dp.monomials(M.n, poly_cap):
            if gdeg(x) + dp.key_degree(m) + 1 == 1 and rng.random() < 0.5:
                acc.add((x, m), Fraction(rng.randint(-2, 2)))
    return acc.vec()


def random_mc_path(M: LevelModel, seed: int) -> Vec:
    """I of a random cell, moved by the gauge flow of a random polynomial gauge."""
    x0 = M.I(random_mc_cell(M, seed))
    return gauge_flow(M.big, form_gauge(M, seed + 7), x0)


# ---------------------------------------------------------------- MC paths at a fixed level


def mc_membership(M: LevelModel, x: Vec) -> Vec:
    """The MC residual of x in s(g ⊗ Ω_n); zero iff x is an MC path."""
    return mc_residual(M.big, x)


def dt_component(x: Vec) -> Vec:
    return Vec((k, c) for k, c in x.items() if k[1][1])


def function_component(x: Vec) -> Vec:
    return Vec((k, c) for k, c in x.items() if not k[1][1])


def at_vertex(x: Vec, i: int, n: int) -> Vec:
    """Restriction of a path to the vertex i (keys x with the constant form)."""
    acc = Accumulator()
    for xk, f in _split(x).items():
        r = dp.restrict(f, (i,), n)
        for key, c in r.items():
            acc.add(xk, c)
    return acc.vec()


def gamma_membership(M: LevelModel, x: Vec) -> bool:
    if mc_membership(M, x):
        raise PreconditionViolation("not a Maurer-Cartan path")
    return not M.h(x)


def top_integral(M: LevelModel, x: Vec) -> Vec:
    """∫_{Δⁿ} x: the g-coefficient of the top-degree part, integrated."""
    acc = Accumulator()
    for xk, f in _split(x).items():
        top = Vec((k, c) for k, c in f.items() if len(k[1]) == M.n)
        if top:
            acc.add(xk, dp.integrate(top, M.n))
    return acc.vec()


def thin_check(M: LevelModel, x: Vec) -> bool:
    if mc_membership(M, x):
        raise PreconditionViolation("not a Maurer-Cartan path")
    return not top_integral(M, x)


def I_map(M: LevelModel, beta: Vec) -> Vec:
    if mc_residual(M.small, beta):
        raise PreconditionViolation("not a Maurer-Cartan cell")
    return M.I(beta)


def P_map(M: LevelModel, x: Vec, validate: bool = True) -> Vec:
    if validate and not M.validate().ok:
        raise UnsupportedInstance(f"pushforward validation failed: {M.validate().to_json()}")
    if mc_membership(M, x):
        raise PreconditionViolation("not a Maurer-Cartan path")
    return M.P(x)


def rect(M: LevelModel, x: Vec, validate: bool = True) -> Vec:
    return M.I(P_map(M, x, validate))


@dataclass
class RectReport:
    pi_identity: bool
    h_zero: bool
    dt_constant: bool
    endpoints: bool
    idempotent: bool

    @property
    def ok(self):
        return all((self.pi_identity, self.h_zero, self.dt_constant, self.endpoints, self.idempotent))

    def to_json(self):
        return dict(self.__dict__, ok=self.ok)


def rect_report(M: LevelModel, cells: list, paths: list) -> RectReport:
    """The level-1 rectification properties on sample cells and paths."""
    pi = all(M.P(M.I(b)) == b for b in cells)
    hz = dtc = ends = idem = True
    for x in paths:
        r = rect(M, x)
        hz &= not M.h(r)
        dtc &= all(not any(k[1][0]) for k in dt_component(r))
        ends &= all(at_vertex(r, i, M.n) == at_vertex(x, i, M.n) for i in range(M.n + 1))
        idem &= rect(M, r) == r
    return RectReport(pi, hz, dtc, ends, idem)


# ---------------------------------------------------------------- MC(g ⊗ C_1) and gauge triples


def cell_from_images(M: LevelModel, x0: Vec, x1: Vec, lam: Vec, check: bool = True) -> Vec:
    """x0 ⊗ ω_0 + x1 ⊗ ω_1 − λ ⊗ ω_01 (n = 1), or x0 ⊗ ω_0 (n = 0).

    Elements of s g are keyed like g; the check requires x0 and x1 to be MC
    and λ to be a gauge from x0 to x1.  The minus sign on λ is the shifted
    form of the unshifted λ ⊗ ω_01 (a gauge λ_s corresponds to −sλ)."""
    from .linfty import suspend_lie

    sg = suspend_lie(M.g, check=False)
    sg.weight_cap = M.big.weight_cap
    if check:
        if mc_residual(sg, x0) or (M.n == 1 and mc_residual(sg, x1)):
            raise InvalidInput("images of the MC generators are not MC")
        if M.n == 1 and gauge_flow(sg, lam, x0) != sg.trunc(x1):
            raise InvalidInput("the image of λ is not a gauge from x0 to x1")
    acc = Accumulator()
    for k, c in x0.items():
        acc.add((k, (0,)), c)
    if M.n == 1:
        for k, c in x1.items():
            acc.add((k, (1,)), c)
        for k, c in lam.items():
            acc.add((k, (0, 1)), -c)
    return acc.vec()


def images_from_cell(M: LevelModel, beta: Vec):
    parts = {}
    for (k, I), c in beta.items():
        parts.setdefault(I, {})[k] = c
    get = lambda I: Vec(parts.get(I, {}))
    if M.n == 0:
        return (get((0,)),)
    return get((0,)), get((1,)), -get((0, 1))


# ---------------------------------------------------------------- presentations of the low levels


def build_mc0(cap: int):
    """mc_0: the free Lie algebra on one MC element, dα = −½[α, α]."""
    from .freelie import FreeAlg, LieDerivation, bracket

    if cap < 1:
        raise InvalidInput("cap ≥ 1")
    alg = FreeAlg.of({"x": -1}, cap)
    x = alg.gen("x")
    d = LieDerivation(alg, {"x": bracket(x, x) * Fraction(-1, 2)})
    return alg, d


def build_mc1(cap: int):
    """mc_1: the Lawrence-Sullivan algebra."""
    from .freelie import lawrence_sullivan

    return lawrence_sullivan(cap)


def _mc_d(A, name):
    a = A.gen(name)
    acc = Accumulator()
    for n in range(2, A.arity_cap + 1):
        acc.add_vec(A.ell_power(n, a), Fraction(-1, factorial(n)))
    return acc.vec()


def build_mcinf0(cap: int):
    """mc∞_0: the free sL∞ algebra on one degree-0 MC element α."""
    from .linfty import FreeSLInfty

    if cap < 1:
        raise InvalidInput("cap ≥ 1")
    A = FreeSLInfty({"a": (0, 1)}, cap, name="mcinf0")
    A.set_d("a", _mc_d(A, "a"))
    return A


def _mcinf1_skeleton(cap: int, strict: bool):
    from .linfty import FreeSLInfty

    A = FreeSLInfty({"a0": (0, 1), "a1": (0, 1), "lam": (1, 1)}, cap, strict=strict, name="mcinf1")
    for g in ("a0", "a1"):
        A.set_d(g, _mc_d(A, g))
    return A


def _vertex_op(A, lam):
    def f(*ys):
        n = len(ys)
        return A.ell(n + 1, *ys, lam) * Fraction(1, factorial(n))
    return f


def dlam_fixed_point(A, schedule: str = "picard") -> Vec:
    """dλ from x = α_1 − α_0 − Σ_{τ ∈ PT∖{∅, c_0}} τ(α_0)/F(τ), where c_0
    stands for x and a vertex of arity n applies ℓ_{n+1}(−, …, −, λ)/n!.  The
    tree sum is produced by the coefficient recursion of the formal ODE."""
    from .solvers import FODE, FPEq, solve_fixed_point, solve_ode_recursive

    a0, a1, lam = A.gen("a0"), A.gen("a1"), A.gen("lam")
    cap = A.weight_cap
    vop = _vertex_op(A, lam)

    def rest(x):
        ops = {(0, 0): (lambda: x)}
        for n in range(1, cap):
            ops[(n, 0)] = vop
        ode = FODE(ops, a0, cap, A.weight, cap)
        acc = Accumulator()
        for c in solve_ode_recursive(ode):
            acc.add_vec(c)
        return A.trunc(acc.vec() - a0 - x)

    eq = FPEq(a1 - a0, {1: lambda x: -rest(x)}, A.weight, cap)
    return solve_fixed_point(eq, schedule)


def eval_dectree(A, T, x: Vec, y: Vec) -> Vec:
    """T(x, y): white leaves give x, black leaves y, a vertex decorated by τ
    applies τ with the vertex rule ℓ_{n+1}(−, …, λ)/n!."""
    from .trees import BLACK, WHITE

    if T == WHITE:
        return x
    if T == BLACK:
        return y
    args = [eval_dectree(A, c, x, y) for c in T.children]
    if any(not a for a in args):
        return ZERO
    vop = _vertex_op(A, A.gen("lam"))

    def run(tau, inputs):
        vals = []
        for c in tau.children:
            vals.append(inputs.pop(0) if c is None else run(c, inputs))
        if any(not v for v in vals):
            return ZERO
        return vop(*vals)

    return A.trunc(run(T.decoration, list(args)))


def dlam_tree_sum(A) -> Vec:
    """dλ = α_1 − α_0 + Σ_T G(T) T(α_0, α_1 − α_0) over decorated trees."""
    from .trees import coeff_G, enumerate_dectrees

    a0, a1 = A.gen("a0"), A.gen("a1")
    y = a1 - a0
    acc = Accumulator()
    acc.add_vec(y)
    for T in enumerate_dectrees(A.weight_cap):
        v = eval_dectree(A, T, a0, y)
        if v:
            acc.add_vec(v, coeff_G(T))
    return A.trunc(acc.vec())


def desuspend_strict(e_key, A, alg):
    """The strict dictionary α_i = s x_i, λ = −s lam, ℓ_2(su, sv) = (−1)^{|u|} s[u, v],
    sending a formal ℓ_2-expression to the free Lie algebra of freelie."""
    from .freelie import bracket

    if isinstance(e_key, str):
        name, s = {"a0": ("x0", 1), "a1": ("x1", 1), "lam": ("lam", -1)}[e_key]
        return alg.gen(name) * s
    kids = e_key[1]
    if len(kids) != 2:
        raise InvalidInput("only binary brackets have a strict image")
    u, v = desuspend_strict(kids[0], A, alg), desuspend_strict(kids[1], A, alg)
    return bracket(u, v) * sign(A.deg(kids[0]) - 1)


def desuspend_vec(v: Vec, A, alg):
    out = alg.zero()
    for k, c in v.items():
        out = out + desuspend_strict(k, A, alg) * c
    return out


@dataclass
class McInf1Report:
    agree: bool
    d_squared_zero: bool
    strict_matches_ls: bool
    weight1: bool

    @property
    def ok(self):
        return self.agree and self.d_squared_zero and self.strict_matches_ls and self.weight1

    def to_json(self):
        return dict(self.__dict__, ok=self.ok)


def build_mcinf1(cap: int):
    """mc∞_1 with dλ computed twice (fixed point and decorated-tree sum), the
    d² = 0 check, and the strict reduction compared with Lawrence-Sullivan."""
    if cap > 5:
        raise InvalidInput("cap ≤ 5")
    A = _mcinf1_skeleton(cap, strict=False)
    fp = dlam_fixed_point(A)
    ts = dlam_tree_sum(A)
    A.set_d("lam", fp)
    d2 = not A.d_squared(["lam", "a0", "a1"])
    S = _mcinf1_skeleton(cap, strict=True)
    sfp = dlam_fixed_point(S)
    S.set_d("lam", sfp)
    alg, d = build_mc1(cap)
    strict_ok = desuspend_vec(sfp, S, alg) == d(alg.gen("lam")) and sfp == dlam_tree_sum(S)
    w1 = Vec((k, c) for k, c in fp.items() if A.weight(k) == 1) == A.gen("a1") - A.gen("a0")
    if fp != ts:
        raise UnsupportedInstance("fixed-point and tree-sum dλ disagree")
    return A, McInf1Report(fp == ts, d2, strict_ok, w1)
