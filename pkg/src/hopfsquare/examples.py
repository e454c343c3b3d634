"""Example crossed squares and crossed modules, and the passage to and from groups."""

from __future__ import annotations

from typing import Sequence

from . import config, groups
from .action import HopfAction, action_from, conjugation_through, trivial_action
from .exactla import QQ, Field, LinMap, Vec, axpy
from .hopfcore import ClosureError, FinHopf, GrouplikeError, base_field, group_algebra, group_of_grouplikes, primitives
from .morphism import (
    HopfMorphism,
    SubHopf,
    from_images,
    identity_morphism,
    intersect,
    is_normal,
    unit_morphism,
)
from .report import Report
from .square import CrossedSquare, assert_square, check_crossed_square
from .twoaction import _into, commutator_pairing
from .xmod import CrossedModule, assert_crossed_module

# -- named inputs --------------------------------------------------------------------


def named_algebra(name: str, field: Field = QQ) -> FinHopf:
    """k_c3, k_s3, k_v4, ... or a bare group name."""
    key = name.lower()
    if key.startswith("k_") or key.startswith("k["):
        key = key[2:].rstrip("]")
    G = groups.named_group(key)
    return group_algebra(G, field, name=f"K[{key.upper()}]")


def group_xmod(name: str) -> groups.GroupCrossedModule:
    """Group crossed modules of the corpus, by name; ``discrete_<group>`` has the trivial group on top."""
    key = name.lower()
    S3 = groups.symmetric(3)
    everything = list(range(S3.order))
    if key in ("conj_a3_s3", "a3_s3"):
        A3, emb = groups.alternating3()
        return groups.GroupCrossedModule(S3, A3, tuple(emb), groups.conjugation_table(S3, everything, emb))
    if key in ("c3_s3",):
        C3 = groups.cyclic(3)
        emb = [S3.index("()"), S3.index("(123)"), S3.index("(132)")]
        return groups.GroupCrossedModule(S3, C3, tuple(emb), groups.conjugation_table(S3, everything, emb))
    if key in ("conj_s3", "s3_s3"):
        return groups.GroupCrossedModule(S3, S3, tuple(everything),
                                         groups.conjugation_table(S3, everything, everything))
    if key.startswith("discrete_"):
        B = groups.named_group(key[len("discrete_"):])
        one = groups.trivial_group()
        return groups.GroupCrossedModule(B, one, (B.identity,), groups.trivial_action_table(B, one))
    if key in ("c2_c2", "id_c2"):
        C2 = groups.cyclic(2)
        return groups.GroupCrossedModule(C2, C2, (0, 1), groups.trivial_action_table(C2, C2))
    raise ValueError(f"unknown crossed module {name!r}")


def lift_group_xmod(g: groups.GroupCrossedModule, field: Field = QQ, validate: bool = True) -> CrossedModule:
    if validate and not all(groups.check_group_xmod(g).values()):
        raise ValueError("the group data is not a crossed module")
    one = field.one
    B = group_algebra(g.B, field, name="K[B]")
    X = group_algebra(g.X, field, name="K[X]")
    d = from_images(X, B, [{g.d[x]: one} for x in range(g.X.order)], "d")
    act = action_from(B, X, lambda b, x: {g.act[b][x]: one}, "B|>X")
    cm = CrossedModule(B, X, d, act, name=f"xmod(K[{g.X.order}]->K[{g.B.order}])")
    return assert_crossed_module(cm) if validate else cm


def named_xmod(name: str, field: Field = QQ) -> CrossedModule:
    cm = lift_group_xmod(group_xmod(name), field)
    cm.name = name
    return cm


# -- generators ------------------------------------------------------------------------


def adjoint_action(A: FinHopf) -> HopfAction:
    """a |> b = a_1 b S(a_2) on A itself."""
    def fn(a, b):
        acc: dict = {}
        for (a1, a2), c in A.sweedler(a):
            axpy(acc, A.prod(A.e(a1), A.e(b), A.S_idx(a2)), c)
        return acc

    return action_from(A, A, fn, f"ad({A.name})")


def normal_pair_square(P: FinHopf, N: SubHopf, M: SubHopf, name: str = "") -> CrossedSquare:
    """Inclusions N & M -> M, N -> P with conjugation and h(m (x) n) = m_1 n_1 S(m_2) S(n_2)."""
    if N.ambient is not P or M.ambient is not P:
        raise ValueError("N and M must be sub-Hopf algebras of P")
    for U in (N, M):
        if not is_normal(U):
            raise ClosureError(f"{U.name} is not normal in {P.name}")
    L = intersect(N, M, name="N&M")
    ident = identity_morphism(P)
    lam = _into(M, L.algebra, L.vec, "incl")
    lamp = _into(N, L.algebra, L.vec, "incl'")
    acts = [conjugation_through(ident, U) for U in (L, M, N)]
    h = commutator_pairing(M, N, L)
    h.materialize()
    sq = CrossedSquare(L.algebra, M.algebra, N.algebra, P, lam, lamp, M.inclusion, N.inclusion,
                       *acts, h, name=name or f"normal_pair({P.name})")
    sq.corners = {"L": L, "M": M, "N": N}
    return assert_square(sq)


def subgroup_algebra(P: FinHopf, labels: Sequence[str], name: str) -> SubHopf:
    one = P.field.one
    return SubHopf(P, [Vec.basis(P.dim, P.labels.index(x), one) for x in labels], name=name,
                   labels=list(labels))


def self_commutator(A: FinHopf) -> LinMap:
    """a (x) b -> a_1 b_1 S(a_2) S(b_2) inside A."""
    def h(idx):
        a, b = divmod(idx, A.dim)
        acc: dict = {}
        for (a1, a2), c in A.sweedler(a):
            for (b1, b2), c2 in A.sweedler(b):
                axpy(acc, A.prod(A.e(a1), A.e(b1), A.S_idx(a2), A.S_idx(b2)), c * c2)
        return acc

    return LinMap(A.dim * A.dim, A.dim, fn=h, name="commutator")


def unit_square(A: FinHopf) -> CrossedSquare:
    """A in every corner, identities, adjoint actions and h(a (x) a') = a_1 a'_1 S(a_2) S(a'_2)."""
    ad = adjoint_action(A)
    ident = identity_morphism(A)

    sq = CrossedSquare(A, A, A, A, ident, ident, ident, ident, ad, ad, ad,
                       self_commutator(A), name=f"unit({A.name})")
    return assert_square(sq)


def counit_pairing(M: FinHopf, N: FinHopf, L: FinHopf) -> LinMap:
    one = L.one

    def fn(idx):
        m, n = divmod(idx, N.dim)
        c = M.eps_idx(m) * N.eps_idx(n)
        return {k: v * c for k, v in one.items()} if c else {}

    return LinMap(M.dim * N.dim, L.dim, fn=fn, name="eps.eps")


def commutative_square(lam: HopfMorphism, lamp: HopfMorphism, mu: HopfMorphism, nu: HopfMorphism,
                       name: str = "") -> CrossedSquare:
    """A commuting square of commutative algebras with trivial actions and h = eps (x) eps."""
    L, M, N, P = lam.dom, lam.cod, lamp.cod, mu.cod
    for A in (L, M, N, P):
        if not A.is_commutative():
            raise ValueError(f"{A.name} is not commutative")
    sq = CrossedSquare(L, M, N, P, lam, lamp, mu, nu, trivial_action(P, L), trivial_action(P, M),
                       trivial_action(P, N), counit_pairing(M, N, L), name=name or "commutative")
    return assert_square(sq)


def trivial_square(field: Field = QQ) -> CrossedSquare:
    """K in all four corners."""
    Ks = [base_field(field) for _ in range(4)]
    for K, tag in zip(Ks, "LMNP"):
        K.name = f"K_{tag}"
    L, M, N, P = Ks

    def one(a, b):
        return HopfMorphism(a, b, LinMap(1, 1, fn=lambda i: {0: field.one}), f"{a.name}->{b.name}")

    return commutative_square(one(L, M), one(L, N), one(M, P), one(N, P), name="trivial")


def xmod_square(cm: CrossedModule) -> CrossedSquare:
    """X, X, X over B with identities, d twice, and h(x (x) y) = x_1 y_1 S(x_2) S(y_2)."""
    X = cm.X
    ident = identity_morphism(X)

    sq = CrossedSquare(X, X, X, cm.B, ident, ident, cm.d, cm.d, cm.act, cm.act, cm.act,
                       self_commutator(X), name=f"xmod_square({cm.name})")
    return assert_square(sq)


def discrete_square(cm: CrossedModule) -> CrossedSquare:
    """K, K, X, B with the unit maps, d, and h the counit of X."""
    field = cm.X.field
    KL, KM = base_field(field), base_field(field)
    KL.name, KM.name = "K_L", "K_M"
    lam = HopfMorphism(KL, KM, LinMap(1, 1, fn=lambda i: {0: field.one}), "id_K")
    lamp = unit_morphism(cm.X, KL)
    mu = unit_morphism(cm.B, KM)
    sq = CrossedSquare(KL, KM, cm.X, cm.B, lam, lamp, mu, cm.d, trivial_action(cm.B, KL),
                       trivial_action(cm.B, KM), cm.act, counit_pairing(KM, cm.X, KL),
                       name=f"discrete({cm.name})")
    return assert_square(sq)


def lie_shadow_square(cm: CrossedModule) -> CrossedSquare:
    """Finite shadow of the group-like/primitive square: enveloping corners collapse to K."""
    for A in (cm.X, cm.B):
        if not A.is_commutative():
            raise ValueError(f"{A.name} must be commutative for this example")
    sq = discrete_square(cm)
    sq.name = f"lie_shadow({cm.name})"
    sq.notes.append("enveloping-algebra corners have no primitives here and collapse to K; "
                    "h is then forced to be the counit")
    return sq


def _normal_pair_args(group: str, N: Sequence[str] | None, M: Sequence[str] | None, field: Field):
    G = groups.named_group(group)
    P = group_algebra(G, field, name=f"K[{group.upper()}]")
    if N is None or M is None:
        key = group.lower()
        if key in ("v4", "c2xc2", "klein"):
            N, M = ["(e,e)", "(a,e)"], ["(e,e)", "(e,b)"]
        elif key == "s3":
            N, M = ["()", "(123)", "(132)"], list(G.labels)
        else:
            N = M = list(G.labels)
    return P, N, M


def gen_example(kind: str, group: str | None = None, algebra: str | None = None, xmod: str | None = None,
                N: Sequence[str] | None = None, M: Sequence[str] | None = None,
                field: Field = QQ) -> CrossedSquare:
    """Dispatch on kind: normal-pair, unit, commutative, trivial, xmod-square, discrete, lie-shadow."""
    kind = kind.lower()
    if kind == "normal-pair":
        P, N, M = _normal_pair_args(group or "v4", N, M, field)
        return normal_pair_square(P, subgroup_algebra(P, N, "N"), subgroup_algebra(P, M, "M"),
                                  name=f"normal_pair({P.name})")
    if kind == "unit":
        return unit_square(named_algebra(algebra or group or "c2", field))
    if kind == "trivial":
        return trivial_square(field)
    if kind == "commutative":
        A = named_algebra(algebra or group or "c2", field)
        if not A.is_commutative():
            raise ValueError(f"{A.name} is not commutative")
        ident = identity_morphism(A)
        return commutative_square(ident, ident, ident, ident, name=f"commutative({A.name})")
    if kind == "xmod-square":
        return xmod_square(named_xmod(xmod or "c3_s3", field))
    if kind == "discrete":
        return discrete_square(named_xmod(xmod or "conj_a3_s3", field))
    if kind == "lie-shadow":
        return lie_shadow_square(named_xmod(xmod or "c2_c2", field))
    raise ValueError(f"unknown example kind {kind!r}")


EXAMPLE_KINDS = ("normal-pair", "unit", "trivial", "commutative", "xmod-square", "discrete", "lie-shadow")


# -- groups <-> group algebras ------------------------------------------------------------


def lift_group_square(g: groups.GroupCrossedSquare, field: Field = QQ, validate: bool = True) -> CrossedSquare:
    """K[-] applied to every corner, map, action and to h."""
    if validate:
        verdicts = groups.check_group_square(g)
        if not all(verdicts.values()):
            bad = [k for k, v in verdicts.items() if not v]
            raise ValueError(f"group data fails {', '.join(bad)}")
    one = field.one
    L, M, N, P = (group_algebra(G, field, name=f"K[{t}]") for G, t in
                  ((g.L, "L"), (g.M, "M"), (g.N, "N"), (g.P, "P")))

    def hom(A, B, table, name):
        return from_images(A, B, [{table[i]: one} for i in range(A.dim)], name)

    def act(table, X):
        return action_from(P, X, lambda p, x: {table[p][x]: one})

    h = LinMap(M.dim * N.dim, L.dim, fn=lambda idx: {g.h[idx // N.dim][idx % N.dim]: one}, name="h")
    sq = CrossedSquare(L, M, N, P, hom(L, M, g.lam, "lambda"), hom(L, N, g.lamp, "lambda'"),
                       hom(M, P, g.mu, "mu"), hom(N, P, g.nu, "nu"),
                       act(g.actPL, L), act(g.actPM, M), act(g.actPN, N), h, name="K[square]")
    if validate and config.asserting():
        check_crossed_square(sq).require()
    return sq


def _flagged_index(H: FinHopf, d: dict, what: str) -> int:
    flagged = H.grouplike or []
    if len(d) != 1:
        raise GrouplikeError(f"{what} is not a single group-like")
    (k, c), = d.items()
    if c != 1 or k not in flagged:
        raise GrouplikeError(f"{what} is not a flagged group-like")
    return flagged.index(k)


def extract_group_square(sq: CrossedSquare) -> groups.GroupCrossedSquare:
    """Restriction to flagged group-likes; every corner must be spanned by them."""
    corners = {}
    for tag, A in (("L", sq.L), ("M", sq.M), ("N", sq.N), ("P", sq.P)):
        if A.grouplike is None or len(A.grouplike) != A.dim:
            raise GrouplikeError(f"corner {tag} is not fully group-like flagged")
        corners[tag] = group_of_grouplikes(A)
    L, M, N, P = sq.L, sq.M, sq.N, sq.P

    def hom_table(f: HopfMorphism):
        return tuple(_flagged_index(f.cod, f.col(i), f"{f.name}({f.dom.labels[i]})") for i in f.dom.grouplike)

    def act_table(a: HopfAction):
        X = a.acted
        return tuple(tuple(_flagged_index(X, a.act_idx(p, x), f"{P.labels[p]}|>{X.labels[x]}")
                           for x in X.grouplike) for p in P.grouplike)

    h = tuple(tuple(_flagged_index(L, sq.hv(M.e(m), N.e(n)), f"h({M.labels[m]},{N.labels[n]})")
                    for n in N.grouplike) for m in M.grouplike)
    return groups.GroupCrossedSquare(corners["L"], corners["M"], corners["N"], corners["P"],
                                     hom_table(sq.lam), hom_table(sq.lamp), hom_table(sq.mu),
                                     hom_table(sq.nu), act_table(sq.actPL), act_table(sq.actPM),
                                     act_table(sq.actPN), h)


def extract_group_xmod(cm: CrossedModule) -> groups.GroupCrossedModule:
    for A in (cm.B, cm.X):
        if A.grouplike is None or len(A.grouplike) != A.dim:
            raise GrouplikeError(f"{A.name} is not fully group-like flagged")
    B, X = group_of_grouplikes(cm.B), group_of_grouplikes(cm.X)
    d = tuple(_flagged_index(cm.B, cm.d.col(x), "d") for x in cm.X.grouplike)
    act = tuple(tuple(_flagged_index(cm.X, cm.act.act_idx(b, x), "action") for x in cm.X.grouplike)
                for b in cm.B.grouplike)
    return groups.GroupCrossedModule(B, X, d, act)


def primitive_shadow(sq: CrossedSquare) -> Report:
    """Primitive corners, bracket and restricted h; in characteristic zero group algebras give zero."""
    rep = Report(f"primitive shadow {sq.name}")
    dims = {}
    for tag, A in (("L", sq.L), ("M", sq.M), ("N", sq.N), ("P", sq.P)):
        dims[tag] = len(primitives(A))
    rep.data["primitive_dims"] = dims
    zero = not any(dims.values())
    rep.flag("zero_lie_square", zero, {"dims": dims})
    if zero:
        rep.notes.append("all corners have zero primitive part: the Lie crossed square axioms hold vacuously")
    return rep


__all__ = [
    "EXAMPLE_KINDS", "adjoint_action", "commutative_square", "counit_pairing", "discrete_square",
    "extract_group_square", "extract_group_xmod", "gen_example", "group_xmod", "lie_shadow_square",
    "lift_group_square", "lift_group_xmod", "named_algebra", "named_xmod", "normal_pair_square",
    "primitive_shadow", "self_commutator", "subgroup_algebra", "trivial_square", "unit_square", "xmod_square",
]
