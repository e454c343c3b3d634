"""Actions of Hopf algebras, smash products and split epimorphisms."""

from __future__ import annotations

from functools import cached_property
from typing import Callable

from . import config
from .exactla import LinMap, NotInSpan, Vec, axpy, kron
from .hopfcore import ClosureError, FinHopf, assert_hopf
from .morphism import (
    HopfMorphism,
    SubHopf,
    assert_morphism,
    check_morphism,
    hker,
    identity_morphism,
    is_isomorphism,
)
from .report import Checker, Report

ACTION_AXIOMS = ("m_et_act", "1_et_act", "act_et_m", "act_et_1", "act_et_delta", "act_et_epsilon")


class HopfAction:
    """A linear map xi: B (x) X -> X, written b |> x."""

    def __init__(self, acting: FinHopf, acted: FinHopf, xi: LinMap, name: str = ""):
        if (xi.dom_dim, xi.cod_dim) != (acting.dim * acted.dim, acted.dim):
            raise ValueError("action map has the wrong shape")
        self.acting = acting
        self.acted = acted
        self.xi = xi
        self.name = name or f"{acting.name}|>{acted.name}"

    def act_idx(self, b: int, x: int) -> dict:
        return self.xi.coldict(b * self.acted.dim + x)

    def act_on(self, b: int, xd: dict) -> dict:
        out: dict = {}
        nx = self.acted.dim
        col = self.xi.coldict
        for x, c in xd.items():
            axpy(out, col(b * nx + x), c)
        return out

    def act(self, bd: dict, xd: dict) -> dict:
        out: dict = {}
        for b, c in bd.items():
            axpy(out, self.act_on(b, xd), c)
        return out

    def __repr__(self) -> str:
        return f"<HopfAction {self.name}>"


def action_from(acting: FinHopf, acted: FinHopf, fn: Callable[[int, int], dict], name: str = "") -> HopfAction:
    nx = acted.dim
    return HopfAction(acting, acted, LinMap(acting.dim * nx, nx, fn=lambda idx: fn(*divmod(idx, nx))), name)


def trivial_action(B: FinHopf, X: FinHopf) -> HopfAction:
    """b |> x = eps(b) x."""

    def fn(b, x):
        c = B.eps_idx(b)
        return {x: c} if c else {}

    return action_from(B, X, fn, f"triv({B.name}|>{X.name})")


def conjugation_through(iota: HopfMorphism, U: SubHopf, name: str = "") -> HopfAction:
    """b |> u = iota(b_1) u iota(S(b_2)) for u in the sub-Hopf algebra U."""
    B, H = iota.dom, iota.cod
    if U.ambient is not H:
        raise ValueError("conjugation needs U inside the codomain of iota")

    def fn(b, x):
        acc: dict = {}
        u = U.vec(x)
        for (b1, b2), c in B.sweedler(b):
            axpy(acc, H.mul(H.mul(iota.col(b1), u), iota(B.S_idx(b2))), c)
        try:
            return U.coords(acc)
        except NotInSpan:
            raise ClosureError(f"{U.name} is not stable under conjugation by {B.name}") from None

    return action_from(B, U.algebra, fn, name or f"conj({B.name}|>{U.name})")


def check_action(a: HopfAction, mode: str | None = None) -> Report:
    """The six module-Hopf-algebra axioms, each on its own basis tuples."""
    B, X = a.acting, a.acted
    mode = mode or config.check_mode(max(B.dim, X.dim))
    rep = Report(f"action {a.name}", mode)
    ck = Checker(rep, mode)
    nb, nx = B.dim, X.dim
    LB, LX = B.labels, X.labels
    F = X.field

    def differ(l, r, fmt=X.fmt):
        return None if l == r else (fmt(l), fmt(r))

    ck.run("m_et_act", [nb, nb, nx],
           lambda b, c, x: differ(a.act(B.mul_idx(b, c), X.e(x)), a.act_on(b, a.act_idx(c, x))),
           [LB, LB, LX])
    ck.run("1_et_act", [nx], lambda x: differ(a.act(B.one, X.e(x)), X.e(x)), [LX])

    def act_m(b, x, y):
        lhs = a.act_on(b, X.mul_idx(x, y))
        rhs: dict = {}
        for (b1, b2), c in B.sweedler(b):
            axpy(rhs, X.mul(a.act_idx(b1, x), a.act_idx(b2, y)), c)
        return differ(lhs, rhs)

    ck.run("act_et_m", [nb, nx, nx], act_m, [LB, LX, LX])

    def act_1(b):
        e = B.eps_idx(b)
        return differ(a.act_on(b, X.one), {k: v * e for k, v in X.one.items()} if e else {})

    ck.run("act_et_1", [nb], act_1, [LB])

    def act_delta(b, x):
        lhs = X.delta(a.act_idx(b, x))
        rhs: dict = {}
        for (b1, b2), c in B.sweedler(b):
            for (x1, x2), c2 in X.sweedler(x):
                axpy(rhs, kron(a.act_idx(b1, x1), a.act_idx(b2, x2), nx), c * c2)
        return differ(lhs, rhs, X.fmt2)

    ck.run("act_et_delta", [nb, nx], act_delta, [LB, LX])

    def act_eps(b, x):
        lhs, rhs = X.eps(a.act_idx(b, x)), B.eps_idx(b) * X.eps_idx(x)
        return None if lhs == rhs else (F.fmt(lhs), F.fmt(rhs))

    ck.run("act_et_epsilon", [nb, nx], act_eps, [LB, LX])
    return rep


def assert_action(a: HopfAction) -> HopfAction:
    if config.asserting():
        check_action(a).require()
    return a


def smash(a: HopfAction, name: str = "", verify: bool = True) -> FinHopf:
    """X # B on X (x) B, basis index x * dim B + b."""
    X, B = a.acted, a.acting
    nx, nb = X.dim, B.dim
    n = nx * nb

    def mult(idx):
        u, v = divmod(idx, n)
        x, b = divmod(u, nb)
        y, c = divmod(v, nb)
        out: dict = {}
        ex = X.e(x)
        for (b1, b2), cf in B.sweedler(b):
            left = X.mul(ex, a.act_idx(b1, y))
            axpy(out, kron(left, B.mul_idx(b2, c), nb), cf)
        return out

    def comult(idx):
        x, b = divmod(idx, nb)
        out: dict = {}
        for (x1, x2), c in X.sweedler(x):
            for (b1, b2), c2 in B.sweedler(b):
                axpy(out, {(x1 * nb + b1) * n + x2 * nb + b2: 1}, c * c2)
        return out

    def counit(idx):
        x, b = divmod(idx, nb)
        c = X.eps_idx(x) * B.eps_idx(b)
        return {0: c} if c else {}

    def antipode(idx):
        x, b = divmod(idx, nb)
        out: dict = {}
        sx = X.S_idx(x)
        for (b1, b2), c in B.sweedler(b):
            axpy(out, kron(a.act(B.S_idx(b1), sx), B.S_idx(b2), nb), c)
        return out

    labels = [f"({p},{q})" for p in X.labels for q in B.labels]
    flags = None
    if X.grouplike is not None and B.grouplike is not None:
        flags = [x * nb + b for x in X.grouplike for b in B.grouplike]
    H = FinHopf(X.field, labels, LinMap(n * n, n, fn=mult), Vec.raw(n, kron(X.one, B.one, nb)),
                LinMap(n, n * n, fn=comult), LinMap(n, 1, fn=counit), LinMap(n, n, fn=antipode),
                grouplike=flags, name=name or f"{X.name}#{B.name}")
    return assert_hopf(H) if verify else H


def smash_projection(a: HopfAction, H: FinHopf) -> HopfMorphism:
    """x (x) b -> eps(x) b."""
    nb = a.acting.dim
    X = a.acted

    def fn(idx):
        x, b = divmod(idx, nb)
        c = X.eps_idx(x)
        return {b: c} if c else {}

    return HopfMorphism(H, a.acting, LinMap(H.dim, nb, fn=fn), "p2")


def smash_section(a: HopfAction, H: FinHopf) -> HopfMorphism:
    """b -> 1 (x) b."""
    nb = a.acting.dim
    one = a.acted.one
    return HopfMorphism(a.acting, H, LinMap(nb, H.dim, fn=lambda b: kron(one, {b: 1}, nb)), "e")


def smash_inclusion(a: HopfAction, H: FinHopf) -> HopfMorphism:
    """x -> x (x) 1."""
    nb = a.acting.dim
    one = a.acting.one
    return HopfMorphism(a.acted, H, LinMap(a.acted.dim, H.dim, fn=lambda x: kron({x: 1}, one, nb)), "i1")


class SplitEpi:
    """delta: A -> B with section iota, delta . iota = id."""

    def __init__(self, total: FinHopf, base: FinHopf, retraction: HopfMorphism, section: HopfMorphism):
        if retraction.dom is not total or retraction.cod is not base:
            raise ValueError("retraction must go from total to base")
        if section.dom is not base or section.cod is not total:
            raise ValueError("section must go from base to total")
        self.total = total
        self.base = base
        self.retraction = retraction
        self.section = section

    @cached_property
    def kernel(self) -> SubHopf:
        return hker(self.retraction, name=f"HKer({self.retraction.name})")


def check_split_epi(s: SplitEpi) -> Report:
    rep = Report(f"split epi {s.total.name}->{s.base.name}")
    rep.merge(check_morphism(s.retraction), "retraction")
    rep.merge(check_morphism(s.section), "section")
    bad = s.retraction.after(s.section).map.first_difference(identity_morphism(s.base).map)
    rep.flag("retraction_after_section", bad is None,
             {"at": [s.base.labels[bad]]} if bad is not None else None)
    return rep


def action_to_split_epi(a: HopfAction) -> SplitEpi:
    H = smash(a)
    return SplitEpi(H, a.acting, assert_morphism(smash_projection(a, H)),
                    assert_morphism(smash_section(a, H)))


def conjugation_action(s: SplitEpi) -> HopfAction:
    """B acting on HKer(delta) by iota(b_1) k iota(S(b_2))."""
    return assert_action(conjugation_through(s.section, s.kernel))


def phi_iso(s: SplitEpi, conj: HopfAction | None = None, src: FinHopf | None = None) -> HopfMorphism:
    """HKer(delta) # B -> A, k (x) b -> k iota(b); verified bijective Hopf morphism.

    ``src`` may supply an already built smash product of ``conj``.
    """
    conj = conj or conjugation_action(s)
    K = s.kernel
    src = src or smash(conj)
    A = s.total
    nb = s.base.dim

    def fn(idx):
        k, b = divmod(idx, nb)
        return A.mul(K.vec(k), s.section.col(b))

    phi = HopfMorphism(src, A, LinMap(src.dim, A.dim, fn=fn), "Phi")
    if config.asserting():
        check_morphism(phi).require()
    if not is_isomorphism(phi):
        raise ClosureError("Phi is not bijective; the split epimorphism is invalid")
    return phi


def action_transport_defect(a: HopfAction, b: HopfAction, alpha: LinMap, beta: LinMap):
    """First (b, x) where alpha(b |> x) != beta(b) |>' alpha(x), or None."""
    for i in range(a.acting.dim):
        bi = beta.coldict(i)
        for x in range(a.acted.dim):
            if alpha.apply(a.act_idx(i, x)) != b.act(bi, alpha.coldict(x)):
                return a.acting.labels[i], a.acted.labels[x]
    return None
