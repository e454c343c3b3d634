"""Crossed modules, cat1 structures and the internal groupoid they encode."""

from __future__ import annotations

from functools import cached_property

from . import config
from .action import (
    HopfAction,
    SplitEpi,
    action_transport_defect,
    assert_action,
    check_action,
    conjugation_through,
    phi_iso,
    smash,
    smash_inclusion,
    smash_projection,
    smash_section,
)
from .exactla import LinMap, Vec, axpy, kron, nullspace, subspace_intersect
from .hopfcore import FinHopf, tensor_hopf
from .morphism import (
    HopfMorphism,
    SubHopf,
    check_morphism,
    first_noncommuting,
    hker,
    identity_morphism,
    is_isomorphism,
    largest_subcoalgebra_in,
)
from .report import Checker, Report


class CrossedModule:
    def __init__(self, B: FinHopf, X: FinHopf, d: HopfMorphism, act: HopfAction, name: str = ""):
        if d.dom is not X or d.cod is not B:
            raise ValueError("d must go from X to B")
        if act.acting is not B or act.acted is not X:
            raise ValueError("the action must be of B on X")
        self.B, self.X, self.d, self.act = B, X, d, act
        self.name = name or f"xmod({X.name}->{B.name})"

    def __repr__(self) -> str:
        return f"<CrossedModule {self.name}>"


def check_crossed_module(cm: CrossedModule, mode: str | None = None) -> Report:
    B, X, d, a = cm.B, cm.X, cm.d, cm.act
    mode = mode or config.check_mode(max(B.dim, X.dim))
    rep = Report(f"crossed module {cm.name}", mode)
    rep.merge(check_action(a, mode), "act")
    rep.merge(check_morphism(d, mode), "d")
    ck = Checker(rep, mode)

    def cm1(b, x):
        lhs = d(a.act_idx(b, x))
        rhs: dict = {}
        for (b1, b2), c in B.sweedler(b):
            axpy(rhs, B.mul(B.mul(B.e(b1), d.col(x)), B.S_idx(b2)), c)
        return None if lhs == rhs else (B.fmt(lhs), B.fmt(rhs))

    ck.run("CM1", [B.dim, X.dim], cm1, [B.labels, X.labels])

    def cm2(y, x):
        lhs = a.act(d.col(y), X.e(x))
        rhs: dict = {}
        for (y1, y2), c in X.sweedler(y):
            axpy(rhs, X.mul(X.mul(X.e(y1), X.e(x)), X.S_idx(y2)), c)
        return None if lhs == rhs else (X.fmt(lhs), X.fmt(rhs))

    ck.run("CM2", [X.dim, X.dim], cm2, [X.labels, X.labels])
    return rep


def assert_crossed_module(cm: CrossedModule) -> CrossedModule:
    if config.asserting():
        check_crossed_module(cm).require()
    return cm


class ReflexiveGraph:
    def __init__(self, A1: FinHopf, A0: FinHopf, delta: HopfMorphism, gamma: HopfMorphism,
                 iota: HopfMorphism):
        for f, dom, cod in ((delta, A1, A0), (gamma, A1, A0), (iota, A0, A1)):
            if f.dom is not dom or f.cod is not cod:
                raise ValueError(f"{f.name} has the wrong domain or codomain")
        self.A1, self.A0 = A1, A0
        self.delta, self.gamma, self.iota = delta, gamma, iota


class Cat1:
    """A reflexive graph whose source and target kernels commute.

    ``source`` remembers the crossed module when the structure was built from
    one, which fixes the composition used by :func:`groupoid_check`.
    """

    def __init__(self, graph: ReflexiveGraph, source: CrossedModule | None = None, name: str = ""):
        self.graph = graph
        self.source = source
        self.name = name or f"cat1({graph.A1.name})"

    @property
    def A1(self):
        return self.graph.A1

    @property
    def A0(self):
        return self.graph.A0

    @cached_property
    def source_kernel(self) -> SubHopf:
        return hker(self.graph.delta, name="HKer(delta)")

    @cached_property
    def target_kernel(self) -> SubHopf:
        return hker(self.graph.gamma, name="HKer(gamma)")


def check_cat1(c: Cat1) -> Report:
    g = c.graph
    rep = Report(f"cat1 {c.name}")
    for key, f in (("delta", g.delta), ("gamma", g.gamma), ("iota", g.iota)):
        rep.merge(check_morphism(f), key)
    ident = identity_morphism(g.A0).map
    for key, f in (("delta_iota", g.delta), ("gamma_iota", g.gamma)):
        bad = f.after(g.iota).map.first_difference(ident)
        rep.flag(key, bad is None, {"at": [g.A0.labels[bad]]} if bad is not None else None)
    pair = first_noncommuting(c.source_kernel, c.target_kernel)
    rep.flag("kernels_commute", pair is None, {"at": list(pair)} if pair else None)
    return rep


def xmod_to_cat1(cm: CrossedModule) -> Cat1:
    """X # B with delta = p2, gamma = p1 (x (x) b -> d(x) b) and iota = e."""
    H = smash(cm.act)
    nb = cm.B.dim
    B = cm.B

    def p1(idx):
        x, b = divmod(idx, nb)
        return B.mul(cm.d.col(x), B.e(b))

    delta = smash_projection(cm.act, H)
    gamma = HopfMorphism(H, B, LinMap(H.dim, nb, fn=p1), "p1")
    iota = smash_section(cm.act, H)
    c = Cat1(ReflexiveGraph(H, B, delta, gamma, iota), source=cm, name=f"cat1({cm.name})")
    if config.asserting():
        check_cat1(c).require()
    return c


def cat1_to_xmod(c: Cat1) -> CrossedModule:
    """(A0, HKer(delta), gamma restricted, conjugation through iota)."""
    g = c.graph
    K = c.source_kernel
    d = g.gamma.after(K.inclusion)
    d.name = "d"
    act = assert_action(conjugation_through(g.iota, K, name=f"conj({g.A0.name}|>HKer)"))
    return assert_crossed_module(CrossedModule(g.A0, K.algebra, d, act, name=f"xmod({c.name})"))


# -- round trips ---------------------------------------------------------------


def xmod_roundtrip(cm: CrossedModule) -> Report:
    """F after G is the identity once x is identified with x (x) 1."""
    rep = Report(f"roundtrip {cm.name}")
    c = xmod_to_cat1(cm)
    back = cat1_to_xmod(c)
    K = c.source_kernel
    incl = smash_inclusion(cm.act, c.A1)
    tau = LinMap(cm.X.dim, K.dim, fn=lambda x: K.coords(incl.col(x)))
    tau_m = HopfMorphism(cm.X, back.X, tau, "x->x(x)1")
    rep.merge(check_morphism(tau_m), "transport")
    rep.flag("transport_bijective", is_isomorphism(tau_m))
    bad = back.d.after(tau_m).map.first_difference(cm.d.map)
    rep.flag("d_recovered", bad is None, {"at": [cm.X.labels[bad]]} if bad is not None else None)
    ident = identity_morphism(cm.B).map
    bad_act = action_transport_defect(cm.act, back.act, tau, ident)
    rep.flag("action_recovered", bad_act is None, {"at": list(bad_act)} if bad_act else None)
    pair = first_noncommuting(hker(c.graph.gamma), hker(c.graph.delta))
    rep.flag("kernels_commute", pair is None, {"at": list(pair)} if pair else None)
    rep.merge(cat1_roundtrip(c), "cat1")
    return rep


def cat1_roundtrip(c: Cat1) -> Report:
    """G after F is isomorphic to the identity through Phi."""
    g = c.graph
    rep = Report(f"roundtrip {c.name}")
    cm = cat1_to_xmod(c)
    c2 = xmod_to_cat1(cm)
    phi = phi_iso(SplitEpi(g.A1, g.A0, g.delta, g.iota), conj=cm.act, src=c2.A1)
    g2 = c2.graph
    rep.flag("Phi_bijective", is_isomorphism(phi))
    for key, lhs, rhs in (
        ("delta_square", g.delta.after(phi), g2.delta),
        ("gamma_square", g.gamma.after(phi), g2.gamma),
        ("iota_square", phi.after(g2.iota), g.iota),
    ):
        bad = lhs.map.first_difference(rhs.map)
        rep.flag(key, bad is None, {"at": [lhs.dom.labels[bad]]} if bad is not None else None)
    return rep


# -- pullbacks and the groupoid ------------------------------------------------


def _equalizer(f: HopfMorphism, g: HopfMorphism, T: FinHopf) -> list[Vec]:
    A, B, C = f.dom, g.dom, f.cod
    na, nb = A.dim, B.dim
    n = na * nb

    def fn(idx):
        a, b = divmod(idx, nb)
        out: dict = {}
        for (a1, a2), c in A.sweedler(a):
            axpy(out, kron(f.col(a1), {a2 * nb + b: 1}, n), c)
        for (b1, b2), c in B.sweedler(b):
            axpy(out, kron(g.col(b1), {a * nb + b2: 1}, n), -c)
        return out

    return nullspace(LinMap(n, C.dim * n, fn=fn))


def pullback(f: HopfMorphism, g: HopfMorphism) -> SubHopf:
    """Pairs (a, b) with f(a) = g(b), as a sub-Hopf algebra of dom f (x) dom g."""
    if f.cod is not g.cod:
        raise ValueError("pullback needs a common codomain")
    T = tensor_hopf(f.dom, g.dom)
    E = _equalizer(f, g, T)
    return SubHopf(T, largest_subcoalgebra_in(E, T), name=f"{f.dom.name}x_{f.cod.name}{g.dom.name}")


def composition_map(cm: CrossedModule, H: FinHopf) -> LinMap:
    """(x (x) b) (x) (x' (x) b') -> x x' (x) eps(b) b'."""
    X, B = cm.X, cm.B
    nb = B.dim
    n = H.dim

    def fn(idx):
        u, v = divmod(idx, n)
        x, b = divmod(u, nb)
        y, c = divmod(v, nb)
        e = B.eps_idx(b)
        return kron(X.mul_idx(x, y), {c: e}, nb) if e else {}

    return LinMap(n * n, n, fn=fn, name="m")


def inverse_map(cm: CrossedModule, H: FinHopf) -> LinMap:
    """x (x) b -> S(x_1) (x) d(x_2) b."""
    X, B = cm.X, cm.B
    nb = B.dim

    def fn(idx):
        x, b = divmod(idx, nb)
        out: dict = {}
        for (x1, x2), c in X.sweedler(x):
            axpy(out, kron(X.S_idx(x1), B.mul(cm.d.col(x2), B.e(b)), nb), c)
        return out

    return LinMap(H.dim, H.dim, fn=fn, name="i")


def groupoid_check(c: Cat1, m: LinMap | None = None) -> Report:
    """Internal groupoid identities on the pullback of (delta, gamma)."""
    if c.source is None:
        raise ValueError("groupoid_check needs a cat1 built from a crossed module")
    cm = c.source
    g = c.graph
    H = g.A1
    n = H.dim
    m = m or composition_map(cm, H)
    inv = inverse_map(cm, H)
    rep = Report(f"groupoid {c.name}")
    rep.notes.append("pullback computed as the largest subcoalgebra of the vector-space equalizer")
    P = pullback(g.delta, g.gamma)
    rep.data["pullback_dim"] = P.dim
    ck = Checker(rep, "full")
    lab = H.labels
    iota_delta = g.iota.after(g.delta)
    iota_gamma = g.iota.after(g.gamma)

    def pair(f1: LinMap, f2: LinMap, i: int) -> dict:
        out: dict = {}
        for (a, b), c0 in H.sweedler(i):
            axpy(out, kron(f1.coldict(a), f2.coldict(b), n), c0)
        return out

    ident = identity_morphism(H).map

    def identity_law(f1, f2, target):
        def check(i):
            t = pair(f1, f2, i)
            if not P.contains(t):
                return ("pair outside pullback", H.fmt2(t))
            got, want = m.apply(t), target.coldict(i)
            return None if got == want else (H.fmt(got), H.fmt(want))
        return check

    ck.run("RGM_right_unit", [n], identity_law(ident, iota_delta.map, ident), [lab])
    ck.run("RGM_left_unit", [n], identity_law(iota_gamma.map, ident, ident), [lab])
    PL = P.algebra.labels
    eps_left = LinMap(n * n, n, fn=lambda idx: {idx % n: H.eps_idx(idx // n)} if H.eps_idx(idx // n) else {})
    eps_right = LinMap(n * n, n, fn=lambda idx: {idx // n: H.eps_idx(idx % n)} if H.eps_idx(idx % n) else {})

    def leg_law(f, proj):
        def check(k):
            t = P.vec(k)
            lhs, rhs = f(m.apply(t)), f(proj.apply(t))
            return None if lhs == rhs else (g.A0.fmt(lhs), g.A0.fmt(rhs))
        return check

    ck.run("source_of_composite", [P.dim], leg_law(g.delta, eps_left), [PL])
    ck.run("target_of_composite", [P.dim], leg_law(g.gamma, eps_right), [PL])

    triple = triple_pullback(P, H)

    def assoc(k):
        t = triple[k].d
        left: dict = {}
        right: dict = {}
        for idx, c0 in t.items():
            ab, z = divmod(idx, n)
            a, b = divmod(ab, n)
            axpy(left, kron(m.coldict(ab), {z: 1}, n), c0)
            axpy(right, kron({a: 1}, m.coldict(b * n + z), n), c0)
        lhs, rhs = m.apply(left), m.apply(right)
        return None if lhs == rhs else (H.fmt(lhs), H.fmt(rhs))

    ck.run("associativity", [len(triple)], assoc, [[f"t{k}" for k in range(len(triple))]])
    rep.data["triple_dim"] = len(triple)

    def inv_leg(f, h):
        def check(i):
            lhs, rhs = f(inv.coldict(i)), h.col(i)
            return None if lhs == rhs else (g.A0.fmt(lhs), g.A0.fmt(rhs))
        return check

    ck.run("inverse_source", [n], inv_leg(g.delta, g.gamma), [lab])
    ck.run("inverse_target", [n], inv_leg(g.gamma, g.delta), [lab])
    ck.run("inverse_left", [n], identity_law(inv, ident, iota_delta.map), [lab])
    ck.run("inverse_right", [n], identity_law(ident, inv, iota_gamma.map), [lab])
    return rep


def triple_pullback(P: SubHopf, H: FinHopf) -> list[Vec]:
    """Composable triples: (P (x) H) cap (H (x) P), refined to a subcoalgebra."""
    n = H.dim
    left = [Vec.raw(n ** 3, kron(p.d, {a: 1}, n)) for p in P.basis for a in range(n)]
    right = [Vec.raw(n ** 3, kron({a: 1}, p.d, n * n)) for a in range(n) for p in P.basis]
    inter = subspace_intersect(left, right)
    T3 = tensor_hopf(P.ambient, H)
    return largest_subcoalgebra_in(inter, T3)
