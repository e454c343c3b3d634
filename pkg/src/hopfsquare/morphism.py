"""Hopf morphisms, Hopf kernels and sub-Hopf algebras."""

from __future__ import annotations

from typing import Sequence

from . import config
from .exactla import (
    LinMap,
    NotInSpan,
    Subspace,
    Vec,
    axpy,
    compose,
    is_injective,
    kron,
    nullspace,
    rref,
    subspace_intersect,
)
from .hopfcore import ClosureError, FinHopf, base_field, restrict
from .report import Checker, Report


class HopfMorphism:
    def __init__(self, dom: FinHopf, cod: FinHopf, map: LinMap, name: str = ""):
        if (map.dom_dim, map.cod_dim) != (dom.dim, cod.dim):
            raise ValueError(f"map shape {map.dom_dim}->{map.cod_dim} does not fit {dom.name}->{cod.name}")
        if dom.field is not cod.field:
            raise ValueError("morphism between algebras over different fields")
        self.dom = dom
        self.cod = cod
        self.map = map
        self.name = name or f"{dom.name}->{cod.name}"

    def __call__(self, d: dict) -> dict:
        return self.map.apply(d)

    def col(self, i: int) -> dict:
        return self.map.coldict(i)

    def after(self, g: "HopfMorphism") -> "HopfMorphism":
        """self composed after g."""
        if g.cod is not self.dom:
            raise ValueError(f"cannot compose {self.name} after {g.name}")
        return HopfMorphism(g.dom, self.cod, compose(self.map, g.map), f"{self.name}.{g.name}")

    def equals(self, other: "HopfMorphism") -> bool:
        return self.map.equals(other.map)

    def __repr__(self) -> str:
        return f"<HopfMorphism {self.name}>"


def from_images(dom: FinHopf, cod: FinHopf, images: Sequence[dict], name: str = "") -> HopfMorphism:
    return HopfMorphism(dom, cod, LinMap(dom.dim, cod.dim, columns=list(images)), name)


def identity_morphism(H: FinHopf) -> HopfMorphism:
    one = H.field.one
    return HopfMorphism(H, H, LinMap(H.dim, H.dim, fn=lambda i: {i: one}), f"id_{H.name}")


def counit_morphism(H: FinHopf, K: FinHopf | None = None) -> HopfMorphism:
    K = K or base_field(H.field)
    return HopfMorphism(H, K, H.counit, f"eps_{H.name}")


def unit_morphism(H: FinHopf, K: FinHopf | None = None) -> HopfMorphism:
    K = K or base_field(H.field)
    unit = dict(H.one)
    return HopfMorphism(K, H, LinMap(1, H.dim, fn=lambda i: unit), f"eta_{H.name}")


def trivial_morphism(A: FinHopf, B: FinHopf) -> HopfMorphism:
    """a -> eps(a) 1_B."""
    one = B.one
    return HopfMorphism(A, B, LinMap(A.dim, B.dim, fn=lambda i: {k: v * A.eps_idx(i) for k, v in one.items()}
                                     if A.eps_idx(i) else {}), f"triv_{A.name}_{B.name}")


def check_morphism(f: HopfMorphism, mode: str | None = None) -> Report:
    A, B = f.dom, f.cod
    mode = mode or config.check_mode(max(A.dim, B.dim))
    rep = Report(f"morphism {f.name}", mode)
    ck = Checker(rep, mode)
    n, m = A.dim, B.dim

    def mult(i, j):
        lhs = f(A.mul_idx(i, j))
        rhs = B.mul(f.col(i), f.col(j))
        return None if lhs == rhs else (B.fmt(lhs), B.fmt(rhs))

    ck.run("multiplicative", [n, n], mult, [A.labels] * 2)
    rep.flag("unital", f(A.one) == B.one, {"lhs": B.fmt(f(A.one)), "rhs": B.fmt(B.one)})

    def comult(i):
        lhs = B.delta(f.col(i))
        rhs: dict = {}
        for (a, b), c in A.sweedler(i):
            axpy(rhs, kron(f.col(a), f.col(b), m), c)
        return None if lhs == rhs else (B.fmt2(lhs), B.fmt2(rhs))

    ck.run("comultiplicative", [n], comult, [A.labels])

    def counit(i):
        lhs, rhs = B.eps(f.col(i)), A.eps_idx(i)
        return None if lhs == rhs else (A.field.fmt(lhs), A.field.fmt(rhs))

    ck.run("counital", [n], counit, [A.labels])

    def antipode(i):
        lhs, rhs = B.S(f.col(i)), f(A.S_idx(i))
        return None if lhs == rhs else (B.fmt(lhs), B.fmt(rhs))

    ck.run("antipode", [n], antipode, [A.labels])
    return rep


def assert_morphism(f: HopfMorphism) -> HopfMorphism:
    if config.asserting():
        check_morphism(f).require()
    return f


def is_isomorphism(f: HopfMorphism) -> bool:
    return f.dom.dim == f.cod.dim and is_injective(f.map)


class SubHopf:
    """A sub-Hopf algebra stored by its reduced echelon basis.

    ``algebra`` is the sub-Hopf algebra as a FinHopf in that basis and
    ``inclusion`` the corresponding morphism into the ambient algebra.
    """

    def __init__(self, ambient: FinHopf, vectors: Sequence[Vec], name: str = "",
                 labels: Sequence[str] | None = None):
        self.ambient = ambient
        self.basis = rref(vectors, ambient.dim)
        self.name = name or f"sub({ambient.name})"
        W, incl = restrict(ambient, self.basis, name=self.name, labels=labels)
        self.algebra = W
        self.inclusion = HopfMorphism(W, ambient, incl, f"incl_{self.name}")
        self._space = Subspace(ambient.dim, self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, d: dict) -> bool:
        return self._space.contains(d)

    def coords(self, d: dict) -> dict:
        return self._space.coords(d)

    def vec(self, a: int) -> dict:
        return self.basis[a].d

    def same_as(self, other: "SubHopf") -> bool:
        return self.ambient is other.ambient and self.basis == other.basis

    def __repr__(self) -> str:
        return f"<SubHopf {self.name} dim={self.dim} in {self.ambient.name}>"


def whole(H: FinHopf) -> SubHopf:
    return SubHopf(H, [H.basis(i) for i in range(H.dim)], name=H.name, labels=H.labels)


def image(f: HopfMorphism, name: str = "") -> SubHopf:
    return SubHopf(f.cod, [f.map.col(i) for i in range(f.dom.dim)], name=name or f"im({f.name})")


def hker(f: HopfMorphism, name: str = "") -> SubHopf:
    """Hopf kernel {a : f(a_1) (x) a_2 = 1_B (x) a}."""
    A, B = f.dom, f.cod
    n = A.dim

    def fn(i):
        out: dict = {}
        for (a, b), c in A.sweedler(i):
            axpy(out, kron(f.col(a), A.e(b), n), c)
        axpy(out, kron(B.one, A.e(i), n), -1)
        return out

    basis = nullspace(LinMap(n, B.dim * n, fn=fn))
    m = B.dim
    for v in basis:
        lhs: dict = {}
        for legs, c in A.sweedler_vec(v.d):
            axpy(lhs, kron(A.e(legs[0]), f.col(legs[1]), m), c)
        if lhs != kron(v.d, B.one, m):
            raise ClosureError("Hopf kernel fails the mirrored defining condition")
    return SubHopf(A, basis, name=name or f"HKer({f.name})")


def is_normal(U: SubHopf) -> bool:
    """Adjoint stability: a_1 u S(a_2) lies in U for ambient a and u in U."""
    H = U.ambient
    for i in range(H.dim):
        terms = H.sweedler(i)
        for u in U.basis:
            acc: dict = {}
            for (a, b), c in terms:
                axpy(acc, H.mul(H.mul(H.e(a), u.d), H.S_idx(b)), c)
            if not U.contains(acc):
                return False
    return True


def intersect(U: SubHopf, V: SubHopf, name: str = "") -> SubHopf:
    if U.ambient is not V.ambient:
        raise ValueError("intersect needs a common ambient algebra")
    return SubHopf(U.ambient, subspace_intersect(U.basis, V.basis),
                   name=name or f"({U.name}&{V.name})")


def commute_elementwise(U: SubHopf, V: SubHopf) -> bool:
    return first_noncommuting(U, V) is None


def first_noncommuting(U: SubHopf, V: SubHopf):
    if U.ambient is not V.ambient:
        raise ValueError("commutation test needs a common ambient algebra")
    H = U.ambient
    for a, u in enumerate(U.basis):
        for b, v in enumerate(V.basis):
            if H.mul(u.d, v.d) != H.mul(v.d, u.d):
                return U.algebra.labels[a], V.algebra.labels[b]
    return None


def largest_subcoalgebra_in(W: Sequence[Vec], H: FinHopf) -> list[Vec]:
    """Largest W' inside W with Delta(W') in W' (x) W', by fixed-point refinement."""
    n = H.dim
    cur = rref(W, n)
    while cur:
        pivots = [min(w.d) for w in cur]

        def q(d):
            out = dict(d)
            for p, w in zip(pivots, cur):
                c = d.get(p)
                if c:
                    axpy(out, w.d, -c)
            return out

        def fn(a):
            t = H.delta(cur[a].d)
            by_second: dict[int, dict] = {}
            by_first: dict[int, dict] = {}
            for idx, c in t.items():
                i, j = divmod(idx, n)
                by_second.setdefault(j, {})[i] = c
                by_first.setdefault(i, {})[j] = c
            out: dict = {}
            for j, col in by_second.items():
                for i, c in q(col).items():
                    out[i * n + j] = c
            for i, row in by_first.items():
                for j, c in q(row).items():
                    out[n * n + i * n + j] = c
            return out

        ker = nullspace(LinMap(len(cur), 2 * n * n, fn=fn))
        new = []
        for k in ker:
            acc: dict = {}
            for a, c in k.d.items():
                axpy(acc, cur[a].d, c)
            new.append(Vec.raw(n, acc))
        new = rref(new, n)
        if len(new) == len(cur):
            return cur
        cur = new
    return []


def restrict_morphism(f: HopfMorphism, U: SubHopf, V: SubHopf, name: str = "") -> HopfMorphism:
    """f restricted to U with values in V; raises ClosureError if f(U) leaves V."""
    if U.ambient is not f.dom or V.ambient is not f.cod:
        raise ValueError("restriction needs subalgebras of the domain and codomain")
    cols = []
    for u in U.basis:
        try:
            cols.append(V.coords(f(u.d)))
        except NotInSpan:
            raise ClosureError(f"{f.name} does not map {U.name} into {V.name}") from None
    return HopfMorphism(U.algebra, V.algebra, LinMap(U.dim, V.dim, columns=cols), name or f"{f.name}|")
