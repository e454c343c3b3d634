"""Hopf 2-actions, 2-fold split epimorphisms and the translations between them."""

from __future__ import annotations

from typing import Callable

from . import config
from .action import HopfAction, action_from, assert_action, check_action, conjugation_through, smash
from .exactla import LinMap, NotInSpan, axpy, compose, kron
from .hopfcore import ClosureError, FinHopf
from .morphism import (
    HopfMorphism,
    SubHopf,
    check_morphism,
    hker,
    image,
    intersect,
    is_isomorphism,
)
from .report import Checker, Report

TWO_ACTION_AXIOMS = ("2A1.m", "2A1.n", "2A2", "2A3.m", "2A3.n", "2A4.n", "2A4.m", "2A5")


class Hopf2Action:
    """Four Hopf algebras, five actions and a pairing h: M (x) N -> L.

    P acts on L, M and N; M and N act on L. ``h`` is indexed m * dim N + n.
    """

    def __init__(self, L: FinHopf, M: FinHopf, N: FinHopf, P: FinHopf,
                 actPL: HopfAction, actPM: HopfAction, actPN: HopfAction,
                 actML: HopfAction, actNL: HopfAction, h: LinMap, name: str = ""):
        for a, (b, x) in ((actPL, (P, L)), (actPM, (P, M)), (actPN, (P, N)),
                          (actML, (M, L)), (actNL, (N, L))):
            if a.acting is not b or a.acted is not x:
                raise ValueError(f"action {a.name} does not act {b.name} on {x.name}")
        if (h.dom_dim, h.cod_dim) != (M.dim * N.dim, L.dim):
            raise ValueError("h has the wrong shape")
        self.L, self.M, self.N, self.P = L, M, N, P
        self.actPL, self.actPM, self.actPN = actPL, actPM, actPN
        self.actML, self.actNL = actML, actNL
        self.h = h
        self.name = name or f"2act({L.name},{M.name},{N.name},{P.name})"
        # sub-Hopf algebras of an ambient algebra when built from a 2-fold split epi
        self.corners: dict[str, SubHopf] = {}

    def hv(self, m: dict, n: dict) -> dict:
        return self.h.apply(kron(m, n, self.N.dim))

    def __repr__(self) -> str:
        return f"<Hopf2Action {self.name}>"


def _h_coalgebra(rep: Report, ck: Checker, M: FinHopf, N: FinHopf, L: FinHopf,
                 hv: Callable[[dict, dict], dict]) -> None:
    nl = L.dim

    def comult(m, n):
        lhs = L.delta(hv(M.e(m), N.e(n)))
        rhs: dict = {}
        for (m1, m2), c in M.sweedler(m):
            for (n1, n2), c2 in N.sweedler(n):
                axpy(rhs, kron(hv(M.e(m1), N.e(n1)), hv(M.e(m2), N.e(n2)), nl), c * c2)
        return None if lhs == rhs else (L.fmt2(lhs), L.fmt2(rhs))

    def counit(m, n):
        lhs, rhs = L.eps(hv(M.e(m), N.e(n))), M.eps_idx(m) * N.eps_idx(n)
        return None if lhs == rhs else (L.field.fmt(lhs), L.field.fmt(rhs))

    labels = [M.labels, N.labels]
    ck.run("h_comultiplicative", [M.dim, N.dim], comult, labels)
    ck.run("h_counital", [M.dim, N.dim], counit, labels)


def check_2action(a: Hopf2Action, mode: str | None = None, actions: bool = True) -> Report:
    L, M, N, P = a.L, a.M, a.N, a.P
    mode = mode or config.check_mode(max(L.dim, M.dim, N.dim, P.dim))
    rep = Report(f"2-action {a.name}", mode)
    ck = Checker(rep, mode)
    if actions:
        for key, act in (("PL", a.actPL), ("PM", a.actPM), ("PN", a.actPN),
                         ("ML", a.actML), ("NL", a.actNL)):
            rep.merge(check_action(act, mode), f"act:{key}")
    _h_coalgebra(rep, ck, M, N, L, a.hv)
    hv = a.hv
    nl, nm, nn, np_ = L.dim, M.dim, N.dim, P.dim
    LL, LM, LN, LP = L.labels, M.labels, N.labels, P.labels

    def differ(l, r):
        return None if l == r else (L.fmt(l), L.fmt(r))

    def a1(inner: HopfAction, Q: FinHopf, actPQ: HopfAction):
        def check(p, q, l):
            lhs: dict = {}
            for (p1, p2), c in P.sweedler(p):
                axpy(lhs, inner.act(actPQ.act_idx(p1, q), a.actPL.act_idx(p2, l)), c)
            return differ(lhs, a.actPL.act_on(p, inner.act_idx(q, l)))
        return check

    ck.run("2A1.m", [np_, nm, nl], a1(a.actML, M, a.actPM), [LP, LM, LL])
    ck.run("2A1.n", [np_, nn, nl], a1(a.actNL, N, a.actPN), [LP, LN, LL])

    def a2(p, m, n):
        lhs = a.actPL.act_on(p, hv(M.e(m), N.e(n)))
        rhs: dict = {}
        for (p1, p2), c in P.sweedler(p):
            axpy(rhs, hv(a.actPM.act_idx(p1, m), a.actPN.act_idx(p2, n)), c)
        return differ(lhs, rhs)

    ck.run("2A2", [np_, nm, nn], a2, [LP, LM, LN])
    ck.run("2A3.n", [nn], lambda n: differ(hv(M.one, N.e(n)), _scale(L.one, N.eps_idx(n))), [LN])
    ck.run("2A3.m", [nm], lambda m: differ(hv(M.e(m), N.one), _scale(L.one, M.eps_idx(m))), [LM])

    def a4n(m, n, n2):
        lhs = hv(M.e(m), N.mul_idx(n, n2))
        rhs: dict = {}
        for (m1, m2), c in M.sweedler(m):
            for (x1, x2), c2 in N.sweedler(n):
                axpy(rhs, L.mul(hv(M.e(m1), N.e(x1)), a.actNL.act_on(x2, hv(M.e(m2), N.e(n2)))), c * c2)
        return differ(lhs, rhs)

    def a4m(m, m2, n):
        lhs = hv(M.mul_idx(m, m2), N.e(n))
        rhs: dict = {}
        for (x1, x2), c in M.sweedler(m):
            for (n1, n2), c2 in N.sweedler(n):
                axpy(rhs, L.mul(a.actML.act_on(x1, hv(M.e(m2), N.e(n1))), hv(M.e(x2), N.e(n2))), c * c2)
        return differ(lhs, rhs)

    ck.run("2A4.n", [nm, nn, nn], a4n, [LM, LN, LN])
    ck.run("2A4.m", [nm, nm, nn], a4m, [LM, LM, LN])

    def a5(m, n, l):
        lhs: dict = {}
        rhs: dict = {}
        for (m1, m2), c in M.sweedler(m):
            for (n1, n2), c2 in N.sweedler(n):
                hmn = hv(M.e(m2), N.e(n2))
                axpy(lhs, L.mul(a.actML.act_on(m1, a.actNL.act_idx(n1, l)), hmn), c * c2)
                hmn1 = hv(M.e(m1), N.e(n1))
                axpy(rhs, L.mul(hmn1, a.actNL.act_on(n2, a.actML.act_idx(m2, l))), c * c2)
        return differ(lhs, rhs)

    ck.run("2A5", [nm, nn, nl], a5, [LM, LN, LL])
    return rep


def _scale(d: dict, c) -> dict:
    return {k: v * c for k, v in d.items()} if c else {}


def assert_2action(a: Hopf2Action) -> Hopf2Action:
    if config.asserting():
        check_2action(a).require()
    return a


def swap_2action(a: Hopf2Action) -> Hopf2Action:
    """(L, N, M, P) with pairing S . h . twist."""
    L, M, N = a.L, a.M, a.N
    nm = M.dim

    def fn(idx):
        n, m = divmod(idx, nm)
        return L.S(a.h.coldict(m * N.dim + n))

    return Hopf2Action(L, N, M, a.P, a.actPL, a.actPN, a.actPM, a.actNL, a.actML,
                       LinMap(N.dim * nm, L.dim, fn=fn), name=f"swap({a.name})")


# -- 2-fold split epimorphisms ---------------------------------------------------


class SplitEpi2:
    """(H, N, M, s_N, s_M): two split epimorphisms out of H whose idempotents commute.

    ``iN`` and ``iM`` are injective Hopf morphisms into H, with s_N . i_N = id.
    """

    def __init__(self, H: FinHopf, N: FinHopf, M: FinHopf, iN: HopfMorphism, iM: HopfMorphism,
                 sN: HopfMorphism, sM: HopfMorphism, name: str = ""):
        for f, (d, c) in ((iN, (N, H)), (iM, (M, H)), (sN, (H, N)), (sM, (H, M))):
            if f.dom is not d or f.cod is not c:
                raise ValueError(f"{f.name} has the wrong domain or codomain")
        self.H, self.N, self.M = H, N, M
        self.iN, self.iM, self.sN, self.sM = iN, iM, sN, sM
        self.name = name or f"pt2({H.name})"
        self._cache: dict = {}

    def _sub(self, key: str, build: Callable[[], SubHopf]) -> SubHopf:
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def kerN(self) -> SubHopf:
        return self._sub("kerN", lambda: hker(self.sN, name="HKer(sN)"))

    @property
    def kerM(self) -> SubHopf:
        return self._sub("kerM", lambda: hker(self.sM, name="HKer(sM)"))

    @property
    def imN(self) -> SubHopf:
        return self._sub("imN", lambda: image(self.iN, name="N"))

    @property
    def imM(self) -> SubHopf:
        return self._sub("imM", lambda: image(self.iM, name="M"))

    def idempotent(self, which: str) -> LinMap:
        """i_N s_N or i_M s_M as a map H -> H."""
        if which == "N":
            return compose(self.iN.map, self.sN.map)
        return compose(self.iM.map, self.sM.map)

    def __repr__(self) -> str:
        return f"<SplitEpi2 {self.name}>"


def _first_bad(f: LinMap, g: LinMap, labels) -> dict | None:
    bad = f.first_difference(g)
    return None if bad is None else {"at": [labels[bad]]}


def check_split_epi2(s: SplitEpi2) -> Report:
    rep = Report(f"2-fold split epi {s.name}")
    for key, f in (("iN", s.iN), ("iM", s.iM), ("sN", s.sN), ("sM", s.sM)):
        rep.merge(check_morphism(f), key)
    rep.flag("iN_injective", is_isomorphism(HopfMorphism(s.N, s.imN.algebra, LinMap(
        s.N.dim, s.imN.dim, fn=lambda i: s.imN.coords(s.iN.col(i))))))
    rep.flag("iM_injective", is_isomorphism(HopfMorphism(s.M, s.imM.algebra, LinMap(
        s.M.dim, s.imM.dim, fn=lambda i: s.imM.coords(s.iM.col(i))))))
    for key, sec, ret, B in (("sN_iN", s.iN, s.sN, s.N), ("sM_iM", s.iM, s.sM, s.M)):
        d = _first_bad(compose(ret.map, sec.map), LinMap(B.dim, B.dim, fn=lambda i: {i: B.field.one}),
                       B.labels)
        rep.flag(key, d is None, d)
    eN, eM = s.idempotent("N"), s.idempotent("M")
    d = _first_bad(compose(eN, eM), compose(eM, eN), s.H.labels)
    rep.flag("sN_sM_commute", d is None, d)
    return rep


def assert_split_epi2(s: SplitEpi2) -> SplitEpi2:
    if config.asserting():
        check_split_epi2(s).require()
    return s


# -- Pt2 -> Act2 -----------------------------------------------------------------


def conjugation_between(V: SubHopf, U: SubHopf, name: str = "") -> HopfAction:
    """V acting on U by v_1 u S(v_2) inside their common ambient algebra."""
    return conjugation_through(V.inclusion, U, name or f"conj({V.name}|>{U.name})")


def commutator_pairing(X: SubHopf, Y: SubHopf, Z: SubHopf) -> LinMap:
    """x (x) y -> x_1 y_1 S(x_2) S(y_2), with values required to lie in Z."""
    H = X.ambient
    A, B = X.algebra, Y.algebra
    nb = B.dim

    def fn(idx):
        a, b = divmod(idx, nb)
        acc: dict = {}
        for (a1, a2), c in A.sweedler(a):
            for (b1, b2), c2 in B.sweedler(b):
                axpy(acc, H.prod(X.vec(a1), Y.vec(b1), H.S(X.vec(a2)), H.S(Y.vec(b2))), c * c2)
        try:
            return Z.coords(acc)
        except NotInSpan:
            raise ClosureError(f"commutator of {X.name} and {Y.name} leaves {Z.name}") from None

    return LinMap(A.dim * nb, Z.dim, fn=fn, name="h")


def pt2_to_2action(s: SplitEpi2) -> Hopf2Action:
    """Corners HKer(sN) & HKer(sM), N & HKer(sM), HKer(sN) & M and N & M, all by conjugation.

    The M-slot of the 2-action is N & HKer(sM) and the N-slot is HKer(sN) & M,
    so that h(x (x) y) = x_1 y_1 S(x_2) S(y_2) pairs them in that order.
    """
    L = intersect(s.kerN, s.kerM, name="L")
    Mr = intersect(s.imN, s.kerM, name="M")
    Nr = intersect(s.kerN, s.imM, name="N")
    P = intersect(s.imN, s.imM, name="P")
    h = commutator_pairing(Mr, Nr, L)
    h.materialize()
    acts = [conjugation_between(V, U) for V, U in ((P, L), (P, Mr), (P, Nr), (Mr, L), (Nr, L))]
    a = Hopf2Action(L.algebra, Mr.algebra, Nr.algebra, P.algebra, *acts, h=h,
                    name=f"act2({s.name})")
    a.corners = {"L": L, "M": Mr, "N": Nr, "P": P}
    return assert_2action(a)


# -- Act2 -> Pt2 -----------------------------------------------------------------


class Pt2Build:
    """Everything produced while assembling (L # N) # (M # P) from a 2-action."""

    def __init__(self, a: Hopf2Action, inner: FinHopf, base: FinHopf, NP: FinHopf,
                 outer: HopfAction, H: FinHopf, split: SplitEpi2):
        self.action = a
        self.LN = inner
        self.MP = base
        self.NP = NP
        self.outer = outer
        self.H = H
        self.split = split

    def index(self, l: int, n: int, m: int, p: int) -> int:
        a = self.action
        return ((l * a.N.dim + n) * a.M.dim + m) * a.P.dim + p

    def embed(self, l: dict, n: dict, m: dict, p: dict) -> dict:
        a = self.action
        return kron(kron(kron(l, n, a.N.dim), m, a.M.dim), p, a.P.dim)


def outer_action(a: Hopf2Action, LN: FinHopf, MP: FinHopf) -> HopfAction:
    """(m (x) p) |> (l (x) n) = (m_1 |> (p_1 |> l)) h(m_2 (x) p_2 |> n_1) (x) p_3 |> n_2."""
    L, M, N, P = a.L, a.M, a.N, a.P
    nn, np_ = N.dim, P.dim

    def fn(b, x):
        m, p = divmod(b, np_)
        l, n = divmod(x, nn)
        out: dict = {}
        for (p1, p2, p3), cp in P.sweedler(p, 3):
            pl = a.actPL.act_idx(p1, l)
            for (m1, m2), cm in M.sweedler(m):
                left = a.actML.act_on(m1, pl)
                for (n1, n2), cn in N.sweedler(n):
                    mid = a.hv(M.e(m2), a.actPN.act_idx(p2, n1))
                    axpy(out, kron(L.mul(left, mid), a.actPN.act_idx(p3, n2), nn), cp * cm * cn)
        return out

    return action_from(MP, LN, fn, name=f"{MP.name}|>{LN.name}")


def twoaction_to_pt2(a: Hopf2Action, verify: bool = True) -> Pt2Build:
    """H = (L # N) # (M # P) with s1 onto M # P and s2 onto N # P.

    s1 is the N-slot and s2 the M-slot of the resulting 2-fold split epi, so
    pt2_to_2action recovers M as N-slot & HKer(s2).
    """
    L, M, N, P = a.L, a.M, a.N, a.P
    LN = smash(a.actNL, name=f"{L.name}#{N.name}", verify=verify)
    MP = smash(a.actPM, name=f"{M.name}#{P.name}", verify=verify)
    NP = smash(a.actPN, name=f"{N.name}#{P.name}", verify=verify)
    outer = outer_action(a, LN, MP)
    if verify:
        assert_action(outer)
    H = smash(outer, name=f"({LN.name})#({MP.name})", verify=verify)
    nn, nm, np_ = N.dim, M.dim, P.dim
    one_l, one_n, one_m = L.one, N.one, M.one

    def s1(idx):
        ln, mp = divmod(idx, nm * np_)
        l, n = divmod(ln, nn)
        c = L.eps_idx(l) * N.eps_idx(n)
        return {mp: c} if c else {}

    def s2(idx):
        ln, mp = divmod(idx, nm * np_)
        l, n = divmod(ln, nn)
        m, p = divmod(mp, np_)
        c = L.eps_idx(l) * M.eps_idx(m)
        return {n * np_ + p: c} if c else {}

    def e1(mp):
        return kron(kron(one_l, one_n, nn), {mp: 1}, nm * np_)

    def e2(np_idx):
        n, p = divmod(np_idx, np_)
        return kron(kron(kron(one_l, {n: 1}, nn), one_m, nm), {p: 1}, np_)

    sp = SplitEpi2(
        H, MP, NP,
        HopfMorphism(MP, H, LinMap(MP.dim, H.dim, fn=e1), "e1"),
        HopfMorphism(NP, H, LinMap(NP.dim, H.dim, fn=e2), "e2"),
        HopfMorphism(H, MP, LinMap(H.dim, MP.dim, fn=s1), "s1"),
        HopfMorphism(H, NP, LinMap(H.dim, NP.dim, fn=s2), "s2"),
        name=f"pt2({a.name})",
    )
    if verify:
        assert_split_epi2(sp)
    return Pt2Build(a, LN, MP, NP, outer, H, sp)


# -- comparison maps ---------------------------------------------------------------


def check_2action_morphism(a: Hopf2Action, b: Hopf2Action, alpha: HopfMorphism, beta: HopfMorphism,
                           gamma: HopfMorphism, delta: HopfMorphism, name: str = "") -> Report:
    """Hopf morphisms on the corners that intertwine the five actions and h."""
    rep = Report(name or f"2-action morphism {a.name} -> {b.name}")
    for key, f in (("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)):
        rep.merge(check_morphism(f), key)
        rep.flag(f"{key}_bijective", is_isomorphism(f))
    for key, act1, act2, fx, fb in (
        ("module:PL", a.actPL, b.actPL, alpha, delta),
        ("module:ML", a.actML, b.actML, alpha, beta),
        ("module:NL", a.actNL, b.actNL, alpha, gamma),
        ("module:PM", a.actPM, b.actPM, beta, delta),
        ("module:PN", a.actPN, b.actPN, gamma, delta),
    ):
        bad = _transport_defect(act1, act2, fx.map, fb.map)
        rep.flag(key, bad is None, {"at": list(bad)} if bad else None)
    bad = None
    for m in range(a.M.dim):
        for n in range(a.N.dim):
            if alpha(a.hv(a.M.e(m), a.N.e(n))) != b.hv(beta.col(m), gamma.col(n)):
                bad = (a.M.labels[m], a.N.labels[n])
                break
        if bad:
            break
    rep.flag("h_compatible", bad is None, {"at": list(bad)} if bad else None)
    return rep


def _transport_defect(a: HopfAction, b: HopfAction, fx: LinMap, fb: LinMap):
    for i in range(a.acting.dim):
        bi = fb.coldict(i)
        for x in range(a.acted.dim):
            if fx.apply(a.act_idx(i, x)) != b.act(bi, fx.coldict(x)):
                return a.acting.labels[i], a.acted.labels[x]
    return None


def _into(sub: SubHopf, src: FinHopf, vec: Callable[[int], dict], name: str) -> HopfMorphism:
    def fn(i):
        try:
            return sub.coords(vec(i))
        except NotInSpan:
            raise ClosureError(f"{name} does not land in {sub.name}") from None

    return HopfMorphism(src, sub.algebra, LinMap(src.dim, sub.dim, fn=fn), name)


def canonical_corner_maps(a: Hopf2Action, build: Pt2Build, back: Hopf2Action) -> tuple:
    """l -> l(x)1(x)1(x)1, n -> 1(x)n(x)1(x)1, m -> 1(x)1(x)m(x)1, p -> 1(x)1(x)1(x)p."""
    L, M, N, P = a.L, a.M, a.N, a.P
    emb = build.embed
    c = back.corners
    alpha = _into(c["L"], L, lambda i: emb(L.e(i), N.one, M.one, P.one), "l->l111")
    beta = _into(c["M"], M, lambda i: emb(L.one, N.one, M.e(i), P.one), "m->11m1")
    gamma = _into(c["N"], N, lambda i: emb(L.one, N.e(i), M.one, P.one), "n->1n11")
    delta = _into(c["P"], P, lambda i: emb(L.one, N.one, M.one, P.e(i)), "p->111p")
    return alpha, beta, gamma, delta


def twoaction_roundtrip(a: Hopf2Action) -> Report:
    """pt2_to_2action after twoaction_to_pt2 versus the input, through the canonical maps."""
    rep = Report(f"roundtrip {a.name}")
    build = twoaction_to_pt2(a)
    back = pt2_to_2action(build.split)
    rep.data["total_dim"] = build.H.dim
    maps = canonical_corner_maps(a, build, back)
    rep.merge(check_2action_morphism(a, back, *maps), "canonical")
    return rep


def collapse_map(s: SplitEpi2, a: Hopf2Action, build: Pt2Build) -> HopfMorphism:
    """phi: (L # N) # (M # P) -> H, l (x) n (x) m (x) p -> l n m p, corners taken inside H."""
    c = a.corners
    H = s.H
    Lc, Mc, Nc, Pc = c["L"], c["M"], c["N"], c["P"]
    nn, nm, np_ = Nc.dim, Mc.dim, Pc.dim

    def fn(idx):
        rest, p = divmod(idx, np_)
        rest, m = divmod(rest, nm)
        l, n = divmod(rest, nn)
        return H.prod(Lc.vec(l), Nc.vec(n), Mc.vec(m), Pc.vec(p))

    return HopfMorphism(build.H, H, LinMap(build.H.dim, H.dim, fn=fn), "phi")


def pt2_roundtrip(s: SplitEpi2) -> Report:
    """twoaction_to_pt2 after pt2_to_2action is isomorphic to s through phi."""
    rep = Report(f"roundtrip {s.name}")
    a = pt2_to_2action(s)
    build = twoaction_to_pt2(a)
    phi = collapse_map(s, a, build)
    rep.merge(check_morphism(phi), "phi")
    rep.flag("phi_bijective", is_isomorphism(phi))
    s2 = build.split
    for key, ret, sec, ret2, sec2 in (("sN_square", s.sN, s.iN, s2.sN, s2.iN),
                                       ("sM_square", s.sM, s.iM, s2.sM, s2.iM)):
        lhs = compose(compose(sec.map, ret.map), phi.map)
        rhs = compose(phi.map, compose(sec2.map, ret2.map))
        d = _first_bad(lhs, rhs, build.H.labels)
        rep.flag(key, d is None, d)
    return rep


# -- psi -----------------------------------------------------------------------------


def psi_iso(a: Hopf2Action, build: Pt2Build | None = None,
            swapped: Pt2Build | None = None) -> tuple[HopfMorphism, HopfMorphism]:
    """psi: (L # N) # (M # P) -> (L # M) # (N # P) and its inverse, both verified.

    psi(l, n, m, p) = l S(h(m_1 (x) n_1)) (x) m_2 (x) n_2 (x) p.
    """
    build = build or twoaction_to_pt2(a)
    swapped = swapped or twoaction_to_pt2(assert_2action(swap_2action(a)))
    L, M, N, P = a.L, a.M, a.N, a.P
    nm, nn, np_ = M.dim, N.dim, P.dim

    def fwd(idx):
        rest, p = divmod(idx, np_)
        rest, m = divmod(rest, nm)
        l, n = divmod(rest, nn)
        out: dict = {}
        for (m1, m2), c in M.sweedler(m):
            for (n1, n2), c2 in N.sweedler(n):
                lv = L.mul(L.e(l), L.S(a.hv(M.e(m1), N.e(n1))))
                axpy(out, kron(kron(kron(lv, {m2: 1}, nm), {n2: 1}, nn), {p: 1}, np_), c * c2)
        return out

    def bwd(idx):
        rest, p = divmod(idx, np_)
        rest, n = divmod(rest, nn)
        l, m = divmod(rest, nm)
        out: dict = {}
        for (m1, m2), c in M.sweedler(m):
            for (n1, n2), c2 in N.sweedler(n):
                lv = L.mul(L.e(l), a.hv(M.e(m1), N.e(n1)))
                axpy(out, kron(kron(kron(lv, {n2: 1}, nn), {m2: 1}, nm), {p: 1}, np_), c * c2)
        return out

    H, H2 = build.H, swapped.H
    psi = HopfMorphism(H, H2, LinMap(H.dim, H2.dim, fn=fwd), "psi")
    inv = HopfMorphism(H2, H, LinMap(H2.dim, H.dim, fn=bwd), "psi^-1")
    if config.asserting():
        check_psi(psi, inv).require()
    return psi, inv


def check_psi(psi: HopfMorphism, inv: HopfMorphism) -> Report:
    rep = Report("psi")
    rep.merge(check_morphism(psi), "psi")
    rep.merge(check_morphism(inv), "psi_inverse")
    H, H2 = psi.dom, psi.cod
    one = H.field.one
    d = _first_bad(compose(inv.map, psi.map), LinMap(H.dim, H.dim, fn=lambda i: {i: one}), H.labels)
    rep.flag("inverse_after_psi", d is None, d)
    d = _first_bad(compose(psi.map, inv.map), LinMap(H2.dim, H2.dim, fn=lambda i: {i: one}), H2.labels)
    rep.flag("psi_after_inverse", d is None, d)
    return rep
