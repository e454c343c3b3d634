"""Hopf crossed squares, cat2-Hopf algebras and the equivalence between them."""

from __future__ import annotations

from . import config
from .action import HopfAction, action_from
from .exactla import LinMap, axpy, compose, kron
from .hopfcore import FinHopf
from .morphism import (
    HopfMorphism,
    SubHopf,
    check_morphism,
    first_noncommuting,
    hker,
    intersect,
    is_isomorphism,
)
from .report import Checker, Report
from .twoaction import (
    Hopf2Action,
    Pt2Build,
    SplitEpi2,
    _first_bad,
    _h_coalgebra,
    _into,
    _transport_defect,
    canonical_corner_maps,
    check_2action,
    check_split_epi2,
    collapse_map,
    pt2_to_2action,
    psi_iso,
    swap_2action,
    twoaction_to_pt2,
)
from .xmod import CrossedModule, check_crossed_module

SQUARE_AXIOMS = ("commutes", "hom", "h", "CS1", "CS2", "CS3", "CS4", "CS5", "CS6")


class CrossedSquare:
    """lambda: L -> M, lambda': L -> N, mu: M -> P, nu: N -> P, P acting on L, M, N, h: M (x) N -> L."""

    def __init__(self, L: FinHopf, M: FinHopf, N: FinHopf, P: FinHopf,
                 lam: HopfMorphism, lamp: HopfMorphism, mu: HopfMorphism, nu: HopfMorphism,
                 actPL: HopfAction, actPM: HopfAction, actPN: HopfAction, h: LinMap, name: str = ""):
        for f, (d, c) in ((lam, (L, M)), (lamp, (L, N)), (mu, (M, P)), (nu, (N, P))):
            if f.dom is not d or f.cod is not c:
                raise ValueError(f"{f.name} has the wrong domain or codomain")
        for a, x in ((actPL, L), (actPM, M), (actPN, N)):
            if a.acting is not P or a.acted is not x:
                raise ValueError(f"{a.name} is not an action of P on {x.name}")
        if (h.dom_dim, h.cod_dim) != (M.dim * N.dim, L.dim):
            raise ValueError("h has the wrong shape")
        self.L, self.M, self.N, self.P = L, M, N, P
        self.lam, self.lamp, self.mu, self.nu = lam, lamp, mu, nu
        self.actPL, self.actPM, self.actPN = actPL, actPM, actPN
        self.h = h
        self.name = name or f"square({L.name},{M.name},{N.name},{P.name})"
        self.corners: dict[str, SubHopf] = {}
        self.two_action: Hopf2Action | None = None
        self.notes: list[str] = []

    @property
    def kappa(self) -> HopfMorphism:
        return self.mu.after(self.lam)

    def hv(self, m: dict, n: dict) -> dict:
        return self.h.apply(kron(m, n, self.N.dim))

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return self.L.dim, self.M.dim, self.N.dim, self.P.dim

    def __repr__(self) -> str:
        return f"<CrossedSquare {self.name} dims={self.dims}>"


def induced_action(f: HopfMorphism, act: HopfAction, name: str = "") -> HopfAction:
    """a |> x := f(a) |> x for f: A -> P and P acting on X."""
    return action_from(f.dom, act.acted, lambda b, x: act.act(f.col(b), act.acted.e(x)),
                       name or f"{f.name}*{act.name}")


def swap_square(sq: CrossedSquare) -> CrossedSquare:
    """(L, N, M, P) with lambda and lambda', mu and nu exchanged and h replaced by S . h . twist."""
    L, M, N = sq.L, sq.M, sq.N
    nm, nn = M.dim, N.dim

    def fn(idx):
        n, m = divmod(idx, nm)
        return L.S(sq.h.coldict(m * nn + n))

    out = CrossedSquare(L, N, M, sq.P, sq.lamp, sq.lam, sq.nu, sq.mu, sq.actPL, sq.actPN, sq.actPM,
                        LinMap(nn * nm, L.dim, fn=fn), name=f"swap({sq.name})")
    return out


def _xmod_morphism_defect(src: CrossedModule, dst: CrossedModule, fX: LinMap, fB: LinMap):
    """(name, at) of the first failure of (fX, fB) as a morphism of crossed modules."""
    for x in range(src.X.dim):
        if dst.d.map.apply(fX.coldict(x)) != fB.apply(src.d.col(x)):
            return "commutes", [src.X.labels[x]]
    for b in range(src.B.dim):
        for x in range(src.X.dim):
            if fX.apply(src.act.act_idx(b, x)) != dst.act.act(fB.coldict(b), fX.coldict(x)):
                return "equivariant", [src.B.labels[b], src.X.labels[x]]
    return None


def check_crossed_square(sq: CrossedSquare, mode: str | None = None, consequences: bool = True) -> Report:
    """Entries commutes, hom:*, h_*, CS1:* ... CS6' and, with ``consequences``, the derived checks R1-R3."""
    L, M, N, P = sq.L, sq.M, sq.N, sq.P
    mode = mode or config.check_mode(max(sq.dims))
    rep = Report(f"crossed square {sq.name}", mode)
    ck = Checker(rep, mode)
    nl, nm, nn, np_ = sq.dims
    LL, LM, LN, LP = L.labels, M.labels, N.labels, P.labels
    lam, lamp, mu, nu, hv = sq.lam, sq.lamp, sq.mu, sq.nu, sq.hv

    d = _first_bad(compose(mu.map, lam.map), compose(nu.map, lamp.map), LL)
    rep.flag("commutes", d is None, d)
    for key, f in (("lambda", lam), ("lambda'", lamp), ("mu", mu), ("nu", nu)):
        rep.merge(check_morphism(f, mode), f"hom:{key}")
    _h_coalgebra(rep, ck, M, N, L, hv)

    xms = {
        "PM": CrossedModule(P, M, mu, sq.actPM),
        "PN": CrossedModule(P, N, nu, sq.actPN),
        "PL": CrossedModule(P, L, sq.kappa, sq.actPL),
    }
    for key, cm in xms.items():
        rep.merge(check_crossed_module(cm, mode), f"CS1:{key}")

    def linear(f: HopfMorphism, src: HopfAction, dst: HopfAction, fmt):
        def check(p, x):
            lhs = f(src.act_idx(p, x))
            rhs = dst.act_on(p, f.col(x))
            return None if lhs == rhs else (fmt(lhs), fmt(rhs))
        return check

    ck.run("CS2", [np_, nl], linear(lam, sq.actPL, sq.actPM, M.fmt), [LP, LL])
    ck.run("CS2'", [np_, nl], linear(lamp, sq.actPL, sq.actPN, N.fmt), [LP, LL])

    def differ(l, r, fmt=L.fmt):
        return None if l == r else (fmt(l), fmt(r))

    def cs3(p, m, n):
        lhs = sq.actPL.act_on(p, hv(M.e(m), N.e(n)))
        rhs: dict = {}
        for (p1, p2), c in P.sweedler(p):
            axpy(rhs, hv(sq.actPM.act_idx(p1, m), sq.actPN.act_idx(p2, n)), c)
        return differ(lhs, rhs)

    ck.run("CS3", [np_, nm, nn], cs3, [LP, LM, LN])

    def cs4(m, n):
        lhs = lam(hv(M.e(m), N.e(n)))
        rhs: dict = {}
        for (m1, m2), c in M.sweedler(m):
            axpy(rhs, M.mul(M.e(m1), sq.actPM.act(nu.col(n), M.S_idx(m2))), c)
        return differ(lhs, rhs, M.fmt)

    def cs4p(m, n):
        lhs = lamp(hv(M.e(m), N.e(n)))
        rhs: dict = {}
        for (n1, n2), c in N.sweedler(n):
            axpy(rhs, N.mul(sq.actPN.act(mu.col(m), N.e(n1)), N.S_idx(n2)), c)
        return differ(lhs, rhs, N.fmt)

    ck.run("CS4", [nm, nn], cs4, [LM, LN])
    ck.run("CS4'", [nm, nn], cs4p, [LM, LN])

    def cs5(l, n):
        lhs = hv(lam.col(l), N.e(n))
        rhs: dict = {}
        for (l1, l2), c in L.sweedler(l):
            axpy(rhs, L.mul(L.e(l1), sq.actPL.act(nu.col(n), L.S_idx(l2))), c)
        return differ(lhs, rhs)

    def cs5p(m, l):
        lhs = hv(M.e(m), lamp.col(l))
        rhs: dict = {}
        for (l1, l2), c in L.sweedler(l):
            axpy(rhs, L.mul(sq.actPL.act(mu.col(m), L.e(l1)), L.S_idx(l2)), c)
        return differ(lhs, rhs)

    ck.run("CS5", [nl, nn], cs5, [LL, LN])
    ck.run("CS5'", [nm, nl], cs5p, [LM, LL])

    def cs6(m, n, n2):
        lhs = hv(M.e(m), N.mul_idx(n, n2))
        rhs: dict = {}
        for (m1, m2), c in M.sweedler(m):
            for (x1, x2), c2 in N.sweedler(n):
                right = sq.actPL.act(nu.col(x2), hv(M.e(m2), N.e(n2)))
                axpy(rhs, L.mul(hv(M.e(m1), N.e(x1)), right), c * c2)
        return differ(lhs, rhs)

    def cs6p(m, m2, n):
        lhs = hv(M.mul_idx(m, m2), N.e(n))
        rhs: dict = {}
        for (x1, x2), c in M.sweedler(m):
            for (n1, n2), c2 in N.sweedler(n):
                left = sq.actPL.act(mu.col(x1), hv(M.e(m2), N.e(n1)))
                axpy(rhs, L.mul(left, hv(M.e(x2), N.e(n2))), c * c2)
        return differ(lhs, rhs)

    ck.run("CS6", [nm, nn, nn], cs6, [LM, LN, LN])
    ck.run("CS6'", [nm, nm, nn], cs6p, [LM, LM, LN])

    if consequences:
        actML = induced_action(mu, sq.actPL)
        actNL = induced_action(nu, sq.actPL)
        r1 = {"ML": CrossedModule(M, L, lam, actML), "NL": CrossedModule(N, L, lamp, actNL)}
        for key, cm in r1.items():
            rep.merge(check_crossed_module(cm, mode), f"R1:{key}")
        ident_L = LinMap(nl, nl, fn=lambda i: {i: L.field.one})
        ident_P = LinMap(np_, np_, fn=lambda i: {i: P.field.one})
        for key, src, dst, fX, fB in (
            ("lambda,id", xms["PL"], xms["PM"], lam.map, ident_P),
            ("lambda',id", xms["PL"], xms["PN"], lamp.map, ident_P),
            ("id,mu", r1["ML"], xms["PL"], ident_L, mu.map),
            ("id,nu", r1["NL"], xms["PL"], ident_L, nu.map),
        ):
            bad = _xmod_morphism_defect(src, dst, fX, fB)
            rep.flag(f"R2:{key}", bad is None, {"failed": bad[0], "at": bad[1]} if bad else None)
        sw = check_crossed_square(swap_square(sq), mode, consequences=False)
        rep.merge(sw, "R3")
        rep.flag("R3:swap", sw.ok, {"failed": sw.failed()[:3]} if not sw.ok else None)
    return rep


def axiom_verdicts(rep: Report) -> dict[str, bool]:
    """Collapse report entries to one verdict per axiom tag (CS1, CS4, hom, ...)."""
    out: dict[str, bool] = {}
    for e in rep.entries:
        tag = e.name.split(":")[0].rstrip("'")
        if tag.startswith("h_"):
            tag = "h"
        out[tag] = out.get(tag, True) and e.passed
    return out


def assert_square(sq: CrossedSquare) -> CrossedSquare:
    if config.asserting():
        check_crossed_square(sq).require()
    return sq


def square_to_2action(sq: CrossedSquare) -> Hopf2Action:
    """M and N act on L through mu and nu."""
    a = Hopf2Action(sq.L, sq.M, sq.N, sq.P, sq.actPL, sq.actPM, sq.actPN,
                    induced_action(sq.mu, sq.actPL, "M|>L"), induced_action(sq.nu, sq.actPL, "N|>L"),
                    sq.h, name=f"act2({sq.name})")
    if config.asserting():
        check_2action(a).require()
    return a


# -- cat2 ---------------------------------------------------------------------------


class Cat2:
    """A 2-fold split epimorphism with targets t_N, t_M making two cat1 structures."""

    def __init__(self, base: SplitEpi2, tN: HopfMorphism, tM: HopfMorphism, name: str = ""):
        if tN.dom is not base.H or tN.cod is not base.N:
            raise ValueError("tN must go from H to N")
        if tM.dom is not base.H or tM.cod is not base.M:
            raise ValueError("tM must go from H to M")
        self.base = base
        self.tN, self.tM = tN, tM
        self.name = name or f"cat2({base.H.name})"
        # set by square_to_cat2
        self.build: Pt2Build | None = None
        self.extras: dict = {}

    @property
    def H(self) -> FinHopf:
        return self.base.H

    def maps(self) -> dict[str, LinMap]:
        """The four idempotents H -> H: i s and i t for N and M."""
        b = self.base
        return {
            "sN": compose(b.iN.map, b.sN.map),
            "tN": compose(b.iN.map, self.tN.map),
            "sM": compose(b.iM.map, b.sM.map),
            "tM": compose(b.iM.map, self.tM.map),
        }

    def __repr__(self) -> str:
        return f"<Cat2 {self.name} dim={self.H.dim}>"


CAT2_RULES = (("2C1", "sN", "sM"), ("2C2", "tN", "tM"), ("2C3", "sN", "tM"), ("2C4", "tN", "sM"))


def check_cat2(c: Cat2) -> Report:
    b = c.base
    rep = Report(f"cat2 {c.name}")
    rep.merge(check_split_epi2(b), "pt2")
    for key, f in (("tN", c.tN), ("tM", c.tM)):
        rep.merge(check_morphism(f), key)
    for key, t, i, B in (("tN_iN", c.tN, b.iN, b.N), ("tM_iM", c.tM, b.iM, b.M)):
        d = _first_bad(compose(t.map, i.map), LinMap(B.dim, B.dim, fn=lambda k: {k: B.field.one}),
                       B.labels)
        rep.flag(key, d is None, d)
    for key, s, t in (("kernels_N", b.sN, c.tN), ("kernels_M", b.sM, c.tM)):
        pair = first_noncommuting(hker(s), hker(t))
        rep.flag(key, pair is None, {"at": list(pair)} if pair else None)
    mp = c.maps()
    for key, x, y in CAT2_RULES:
        d = _first_bad(compose(mp[x], mp[y]), compose(mp[y], mp[x]), c.H.labels)
        rep.flag(key, d is None, d)
    return rep


def assert_cat2(c: Cat2) -> Cat2:
    if config.asserting():
        check_cat2(c).require()
    return c


def _target_from_d(d: HopfMorphism, H: FinHopf, base: FinHopf) -> LinMap:
    """x (x) b -> d(x) b on a smash product indexed x * dim base + b."""
    nb = base.dim
    return LinMap(H.dim, nb, fn=lambda idx: base.mul(d.col(idx // nb), base.e(idx % nb)))


def square_to_cat2(sq: CrossedSquare) -> Cat2:
    """(L # N) # (M # P) with s1, t1 onto M # P (the N-slot) and s2, t2 onto N # P (the M-slot)."""
    a = square_to_2action(sq)
    build = twoaction_to_pt2(a)
    swapped = twoaction_to_pt2(swap_2action(a))
    M, N, P = sq.M, sq.N, sq.P
    H, MP, NP = build.H, build.MP, build.NP
    nn, nm, np_ = N.dim, M.dim, P.dim
    lam, lamp, mu, nu = sq.lam, sq.lamp, sq.mu, sq.nu

    def t1(idx):
        rest, p = divmod(idx, np_)
        rest, m = divmod(rest, nm)
        l, n = divmod(rest, nn)
        out: dict = {}
        lv = lam.col(l)
        for (n1, n2), c in N.sweedler(n):
            left = M.mul(lv, sq.actPM.act(nu.col(n1), M.e(m)))
            axpy(out, kron(left, P.mul(nu.col(n2), P.e(p)), np_), c)
        return out

    def t2(idx):
        rest, p = divmod(idx, np_)
        rest, m = divmod(rest, nm)
        l, n = divmod(rest, nn)
        return kron(N.mul(lamp.col(l), N.e(n)), P.mul(mu.col(m), P.e(p)), np_)

    tN = HopfMorphism(H, MP, LinMap(H.dim, MP.dim, fn=t1), "t1")
    tM = HopfMorphism(H, NP, LinMap(H.dim, NP.dim, fn=t2), "t2")
    c = Cat2(build.split, tN, tM, name=f"cat2({sq.name})")
    c.build = build

    d = HopfMorphism(build.LN, MP, LinMap(build.LN.dim, MP.dim,
                                          fn=lambda i: kron(lam.col(i // nn), nu.col(i % nn), np_)), "d")
    dp = HopfMorphism(swapped.LN, swapped.MP, LinMap(
        swapped.LN.dim, swapped.MP.dim, fn=lambda i: kron(lamp.col(i // nm), mu.col(i % nm), np_)), "d'")
    xm_d = CrossedModule(MP, build.LN, d, build.outer, name="d")
    xm_dp = CrossedModule(swapped.MP, swapped.LN, dp, swapped.outer, name="d'")
    c.extras.update(two_action=a, swapped=swapped, d=xm_d, dprime=xm_dp, square=sq)
    if config.asserting():
        rep = Report(f"square_to_cat2 {sq.name}")
        rep.merge(check_crossed_module(xm_d), "d")
        rep.merge(check_crossed_module(xm_dp), "d'")
        rep.merge(check_cat2(c), "cat2")
        rep.merge(check_target_routes(c), "routes")
        rep.require()
    return c


def check_target_routes(c: Cat2) -> Report:
    """t1 against the cat1 target of d; s2, t2 against the swapped structure through psi."""
    rep = Report(f"target routes {c.name}")
    ex = c.extras
    build, swapped = c.build, ex["swapped"]
    d1 = _first_bad(c.tN.map, _target_from_d(ex["d"].d, build.H, build.MP), build.H.labels)
    rep.flag("t1_is_d_target", d1 is None, d1)
    psi, _ = ex.get("psi") or psi_iso(ex["two_action"], build, swapped)
    ex["psi"] = (psi, _)
    tp1 = _target_from_d(ex["dprime"].d, swapped.H, swapped.MP)
    d2 = _first_bad(c.tM.map, compose(tp1, psi.map), build.H.labels)
    rep.flag("t2_is_t1'_psi", d2 is None, d2)
    d3 = _first_bad(c.base.sM.map, compose(swapped.split.sN.map, psi.map), build.H.labels)
    rep.flag("s2_is_s1'_psi", d3 is None, d3)
    return rep


def cat2_to_square(c: Cat2) -> CrossedSquare:
    """Corners of the underlying 2-action; lambda = t_N and lambda' = t_M restricted."""
    b = c.base
    a = pt2_to_2action(b)
    Lc, Mc, Nc, Pc = (a.corners[k] for k in "LMNP")
    fN = compose(b.iN.map, c.tN.map)
    fM = compose(b.iM.map, c.tM.map)
    lam = _into(Mc, a.L, lambda i: fN.apply(Lc.vec(i)), "tN|L")
    lamp = _into(Nc, a.L, lambda i: fM.apply(Lc.vec(i)), "tM|L")
    mu = _into(Pc, a.M, lambda i: fM.apply(Mc.vec(i)), "tM|M")
    nu = _into(Pc, a.N, lambda i: fN.apply(Nc.vec(i)), "tN|N")
    for f in (lam, lamp, mu, nu):
        f.map.materialize()
    sq = CrossedSquare(a.L, a.M, a.N, a.P, lam, lamp, mu, nu, a.actPL, a.actPM, a.actPN, a.h,
                       name=f"square({c.name})")
    sq.corners = dict(a.corners)
    sq.two_action = a
    if config.asserting():
        check_crossed_square(sq).require()
        derived_identities(sq).require()
    return sq


def derived_identities(sq: CrossedSquare) -> Report:
    """Conjugation by x in the M- or N-corner equals the P-action of its image."""
    a = sq.two_action
    rep = Report(f"derived identities {sq.name}")
    if a is None:
        rep.notes.append("square carries no ambient 2-action")
        return rep
    for key, f, conj in (("M", sq.mu, a.actML), ("N", sq.nu, a.actNL)):
        bad = None
        for x in range(f.dom.dim):
            for l in range(sq.L.dim):
                if conj.act_idx(x, l) != sq.actPL.act(f.col(x), sq.L.e(l)):
                    bad = [f.dom.labels[x], sq.L.labels[l]]
                    break
            if bad:
                break
        rep.flag(f"conjugation_through_{key}", bad is None, {"at": bad} if bad else None)
    return rep


# -- comparisons --------------------------------------------------------------------


def check_square_morphism(s: CrossedSquare, t: CrossedSquare, alpha: HopfMorphism, beta: HopfMorphism,
                          gamma: HopfMorphism, delta: HopfMorphism) -> Report:
    rep = Report(f"square morphism {s.name} -> {t.name}")
    for key, f in (("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)):
        rep.merge(check_morphism(f), key)
        rep.flag(f"{key}_bijective", is_isomorphism(f))
    for key, top, left, right, bottom in (
        ("face:lambda", t.lam, alpha, beta, s.lam),
        ("face:lambda'", t.lamp, alpha, gamma, s.lamp),
        ("face:mu", t.mu, beta, delta, s.mu),
        ("face:nu", t.nu, gamma, delta, s.nu),
    ):
        d = _first_bad(compose(top.map, left.map), compose(right.map, bottom.map), s.L.labels
                       if key.startswith("face:lambda") else bottom.dom.labels)
        rep.flag(key, d is None, d)
    for key, a1, a2, fx in (("module:PL", s.actPL, t.actPL, alpha), ("module:PM", s.actPM, t.actPM, beta),
                            ("module:PN", s.actPN, t.actPN, gamma)):
        bad = _transport_defect(a1, a2, fx.map, delta.map)
        rep.flag(key, bad is None, {"at": list(bad)} if bad else None)
    bad = None
    for m in range(s.M.dim):
        for n in range(s.N.dim):
            if alpha(s.hv(s.M.e(m), s.N.e(n))) != t.hv(beta.col(m), gamma.col(n)):
                bad = [s.M.labels[m], s.N.labels[n]]
                break
        if bad:
            break
    rep.flag("h_compatible", bad is None, {"at": bad} if bad else None)
    return rep


def square_roundtrip(sq: CrossedSquare) -> Report:
    """cat2_to_square after square_to_cat2, compared through l -> l(x)1(x)1(x)1 and its siblings."""
    rep = Report(f"roundtrip {sq.name}")
    c = square_to_cat2(sq)
    back = cat2_to_square(c)
    rep.data["total_dim"] = c.H.dim
    maps = canonical_corner_maps(c.extras["two_action"], c.build, back.two_action)
    rep.merge(check_square_morphism(sq, back, *maps), "canonical")
    return rep


def phi_collapse(c: Cat2, sq: CrossedSquare, c2: Cat2) -> HopfMorphism:
    """phi: H' -> H, l (x) n (x) m (x) p -> l n m p, for sq = cat2_to_square(c), c2 = square_to_cat2(sq)."""
    phi = collapse_map(c.base, sq.two_action, c2.build)
    if config.asserting():
        check_collapse(c, c2, phi).require()
    return phi


def check_collapse(c: Cat2, c2: Cat2, phi: HopfMorphism) -> Report:
    rep = Report(f"phi {c2.name} -> {c.name}")
    rep.merge(check_morphism(phi), "phi")
    rep.flag("phi_bijective", is_isomorphism(phi))
    m1, m2 = c.maps(), c2.maps()
    for key in ("sN", "tN", "sM", "tM"):
        d = _first_bad(compose(m1[key], phi.map), compose(phi.map, m2[key]), c2.H.labels)
        rep.flag(f"{key}_square", d is None, d)
    return rep


def cat2_roundtrip(c: Cat2) -> Report:
    """square_to_cat2 after cat2_to_square is isomorphic to c through phi."""
    rep = Report(f"roundtrip {c.name}")
    sq = cat2_to_square(c)
    c2 = square_to_cat2(sq)
    phi = collapse_map(c.base, sq.two_action, c2.build)
    rep.merge(check_collapse(c, c2, phi), "collapse")
    return rep


# -- double groupoid ------------------------------------------------------------------


def cat2_to_double_groupoid(c: Cat2) -> Report:
    """Corners H, N, M, N & M with all source, target and inclusion maps, checked."""
    b = c.base
    rep = Report(f"double groupoid {c.name}")
    P = intersect(b.imN, b.imM, name="N&M")
    rep.data["corners"] = {"H": c.H.dim, "N": b.N.dim, "M": b.M.dim, "N&M": P.dim}
    mp = c.maps()
    for key, f, src in (("sN_on_M", mp["sN"], b.imM), ("tN_on_M", mp["tN"], b.imM),
                        ("sM_on_N", mp["sM"], b.imN), ("tM_on_N", mp["tM"], b.imN)):
        bad = next((i for i, v in enumerate(src.basis) if not P.contains(f.apply(v.d))), None)
        rep.flag(f"lands_in_intersection:{key}", bad is None,
                 {"at": [src.algebra.labels[bad]]} if bad is not None else None)
    for key in ("sN", "tN", "sM", "tM"):
        bad = next((i for i, v in enumerate(P.basis) if mp[key].apply(v.d) != v.d), None)
        rep.flag(f"fixes_intersection:{key}", bad is None,
                 {"at": [P.algebra.labels[bad]]} if bad is not None else None)
    for key, x, y in CAT2_RULES:
        d = _first_bad(compose(mp[x], mp[y]), compose(mp[y], mp[x]), c.H.labels)
        rep.flag(f"square_commutes:{key}", d is None, d)
    pairs = (
        ("H:N", b.sN, c.tN),
        ("H:M", b.sM, c.tM),
        ("M:N&M", b.sN.after(b.iM), c.tN.after(b.iM)),
        ("N:N&M", b.sM.after(b.iN), c.tM.after(b.iN)),
    )
    for key, s, t in pairs:
        pair = first_noncommuting(hker(s), hker(t))
        rep.flag(f"kernels_commute:{key}", pair is None, {"at": list(pair)} if pair else None)
    return rep


__all__ = [
    "CAT2_RULES", "Cat2", "CrossedSquare", "SQUARE_AXIOMS", "assert_cat2", "assert_square",
    "axiom_verdicts", "cat2_roundtrip", "cat2_to_double_groupoid", "cat2_to_square", "check_cat2",
    "check_collapse", "check_crossed_square", "check_square_morphism", "check_target_routes",
    "derived_identities", "induced_action", "phi_collapse", "square_roundtrip", "square_to_2action",
    "square_to_cat2", "swap_square",
]
