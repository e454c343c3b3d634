"""Finite-dimensional Hopf algebras given by structure constants.

A :class:`FinHopf` stores its five structure maps as :class:`LinMap` objects
over a fixed basis. Coproducts are read in Sweedler form: ``sweedler(i, k)``
lists the terms of the k-legged iterated coproduct of basis vector ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import config
from .exactla import (
    QQ,
    Field,
    LinMap,
    NotInSpan,
    Subspace,
    Vec,
    axpy,
    format_vec,
    identity,
    kron,
    nullspace,
    rank,
)
from .report import Checker, Entry, Report


class ClosureError(ValueError):
    """A subspace expected to be a sub-Hopf algebra is not closed."""


class InvalidGroup(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int = 0

    def __post_init__(self):
        n = len(self.labels)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise InvalidGroup("table must be order x order")
        full = set(range(n))
        for r in self.table:
            if set(r) != full:
                raise InvalidGroup("table rows must be permutations")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise InvalidGroup("table columns must be permutations")
        e = self.identity
        if not 0 <= e < n or any(self.table[e][g] != g or self.table[g][e] != g for g in range(n)):
            raise InvalidGroup("identity_index is not a two-sided identity")
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise InvalidGroup(
                            f"not associative at ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})"
                        )
        if len(set(self.labels)) != n:
            raise InvalidGroup("element labels must be distinct")

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def index(self, label: str) -> int:
        return self.labels.index(label)


class FinHopf:
    """A Hopf algebra of finite dimension with exact structure maps.

    Maps are LinMaps on the basis: ``mult`` is A(x)A -> A, ``comult`` A -> A(x)A,
    ``counit`` A -> K (codomain dimension 1), ``antipode`` A -> A. ``unit`` is
    the vector of the identity element.
    """

    def __init__(self, field: Field, labels: Sequence[str], mult: LinMap, unit: Vec,
                 comult: LinMap, counit: LinMap, antipode: LinMap,
                 grouplike: Sequence[int] | None = None, name: str = ""):
        n = len(labels)
        self.field = field
        self.dim = n
        self.labels = list(labels)
        self.name = name or f"H{n}"
        shapes = {
            "mult": (mult, n * n, n),
            "comult": (comult, n, n * n),
            "counit": (counit, n, 1),
            "antipode": (antipode, n, n),
        }
        for key, (m, d, c) in shapes.items():
            if (m.dom_dim, m.cod_dim) != (d, c):
                raise ValueError(f"{key} has shape {m.dom_dim}->{m.cod_dim}, expected {d}->{c}")
        if unit.dim != n:
            raise ValueError("unit vector has wrong dimension")
        self.mult = mult
        self.unit = unit
        self.comult = comult
        self.counit = counit
        self.antipode = antipode
        self.grouplike = None if grouplike is None else sorted(set(grouplike))
        if self.grouplike is not None and any(not 0 <= g < n for g in self.grouplike):
            raise ValueError("grouplike flag out of range")
        self._sw: dict = {}

    def __repr__(self) -> str:
        return f"<FinHopf {self.name} dim={self.dim} over {self.field.name}>"

    # element-level operations on sparse dicts

    @property
    def one(self) -> dict:
        return self.unit.d

    def e(self, i: int) -> dict:
        return {i: self.field.one}

    def basis(self, i: int) -> Vec:
        return Vec.basis(self.dim, i, self.field.one)

    def mul_idx(self, i: int, j: int) -> dict:
        return self.mult.coldict(i * self.dim + j)

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        n = self.dim
        col = self.mult.coldict
        for i, a in u.items():
            base = i * n
            for j, b in v.items():
                axpy(out, col(base + j), a * b)
        return out

    def prod(self, *xs: dict) -> dict:
        out = self.one
        for x in xs:
            out = self.mul(out, x)
        return out

    def delta(self, u: dict) -> dict:
        return self.comult.apply(u)

    def eps(self, u: dict):
        c = self.counit.coldict
        total = 0
        for i, a in u.items():
            total = total + a * c(i).get(0, 0)
        return total

    def eps_idx(self, i: int):
        return self.counit.coldict(i).get(0, 0)

    def S(self, u: dict) -> dict:
        return self.antipode.apply(u)

    def S_idx(self, i: int) -> dict:
        return self.antipode.coldict(i)

    def sweedler(self, i: int, k: int = 2) -> list[tuple[tuple[int, ...], object]]:
        """Terms (legs, coefficient) of the k-fold coproduct of basis vector i."""
        key = (i, k)
        got = self._sw.get(key)
        if got is not None:
            return got
        if k == 1:
            res = [((i,), self.field.one)]
        elif k == 2:
            n = self.dim
            res = [divmod(idx, n) + (c,) for idx, c in sorted(self.comult.coldict(i).items())]
            res = [((a, b), c) for a, b, c in res]
        else:
            acc: dict = {}
            for legs, c in self.sweedler(i, k - 1):
                for (a, b), c2 in self.sweedler(legs[-1], 2):
                    t = legs[:-1] + (a, b)
                    v = acc.get(t, 0) + c * c2
                    if v:
                        acc[t] = v
                    else:
                        acc.pop(t, None)
            res = sorted(acc.items())
        self._sw[key] = res
        return res

    def sweedler_vec(self, u: dict, k: int = 2) -> list[tuple[tuple[int, ...], object]]:
        acc: dict = {}
        for i, a in u.items():
            for legs, c in self.sweedler(i, k):
                v = acc.get(legs, 0) + a * c
                if v:
                    acc[legs] = v
                else:
                    acc.pop(legs, None)
        return sorted(acc.items())

    def fmt(self, u: dict) -> str:
        return format_vec(u, self.labels, self.field.fmt)

    def fmt2(self, t: dict) -> str:
        """Format an element of A (x) A."""
        n = self.dim
        labels = [f"{self.labels[i]}(x){self.labels[j]}" for i in range(n) for j in range(n)] if n <= 64 else None
        if labels is None:
            labels = _PairLabels(self.labels)
        return format_vec(t, labels, self.field.fmt)

    def is_commutative(self) -> bool:
        return all(self.mul_idx(i, j) == self.mul_idx(j, i) for i in range(self.dim) for j in range(i))


class _PairLabels:
    def __init__(self, labels):
        self.labels = labels

    def __getitem__(self, idx):
        i, j = divmod(idx, len(self.labels))
        return f"{self.labels[i]}(x){self.labels[j]}"


# -- constructors ------------------------------------------------------------


def group_algebra(G: FiniteGroup, field: Field = QQ, name: str = "") -> FinHopf:
    n = G.order
    one = field.one
    t = G.table
    mult = LinMap(n * n, n, fn=lambda idx: {t[idx // n][idx % n]: one}, name="mult")
    comult = LinMap(n, n * n, fn=lambda i: {i * n + i: one}, name="comult")
    counit = LinMap(n, 1, fn=lambda i: {0: one}, name="counit")
    inv = [G.inv(g) for g in range(n)]
    antipode = LinMap(n, n, fn=lambda i: {inv[i]: one}, name="antipode")
    unit = Vec.basis(n, G.identity, one)
    return FinHopf(field, G.labels, mult, unit, comult, counit, antipode,
                   grouplike=range(n), name=name or f"K[{n}]")


def base_field(field: Field = QQ) -> FinHopf:
    """The ground field as the one-dimensional Hopf algebra."""
    one = field.one
    m = LinMap(1, 1, fn=lambda i: {0: one})
    return FinHopf(field, ["1"], m, Vec.basis(1, 0, one), m, m, identity(1, one),
                   grouplike=[0], name="K")


def tensor_hopf(A: FinHopf, B: FinHopf, name: str = "") -> FinHopf:
    """A (x) B with componentwise structure, index (a, b) = a * dim B + b."""
    if A.field is not B.field:
        raise ValueError("tensor_hopf needs a common field")
    na, nb = A.dim, B.dim
    n = na * nb

    def mult(idx):
        u, v = divmod(idx, n)
        a, b = divmod(u, nb)
        c, d = divmod(v, nb)
        return kron(A.mul_idx(a, c), B.mul_idx(b, d), nb)

    def comult(idx):
        a, b = divmod(idx, nb)
        out: dict = {}
        for (a1, a2), c in A.sweedler(a):
            for (b1, b2), c2 in B.sweedler(b):
                k = (a1 * nb + b1) * n + a2 * nb + b2
                v = out.get(k, 0) + c * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    def counit(idx):
        a, b = divmod(idx, nb)
        c = A.eps_idx(a) * B.eps_idx(b)
        return {0: c} if c else {}

    def antipode(idx):
        a, b = divmod(idx, nb)
        return kron(A.S_idx(a), B.S_idx(b), nb)

    labels = [f"{x}(x){y}" for x in A.labels for y in B.labels]
    flags = None
    if A.grouplike is not None and B.grouplike is not None:
        flags = [a * nb + b for a in A.grouplike for b in B.grouplike]
    return FinHopf(A.field, labels, LinMap(n * n, n, fn=mult), Vec.raw(n, kron(A.one, B.one, nb)),
                   LinMap(n, n * n, fn=comult), LinMap(n, 1, fn=counit), LinMap(n, n, fn=antipode),
                   grouplike=flags, name=name or f"{A.name}(x){B.name}")


def _label_for(v: Vec, H: FinHopf) -> str:
    if len(v.d) == 1:
        (k, c), = v.d.items()
        if c == 1:
            return H.labels[k]
    return "(" + H.fmt(v.d) + ")"


def coords_tensor(sub: Subspace, t: dict, n: int) -> dict:
    """Coordinates of t in W (x) W, where W = sub inside an n-dim space."""
    k = len(sub)
    cols: dict[int, dict] = {}
    for idx, c in t.items():
        i, j = divmod(idx, n)
        cols.setdefault(j, {})[i] = c
    rows: dict[int, dict] = {}
    for j, col in cols.items():
        for a, c in sub.coords(col).items():
            rows.setdefault(a, {})[j] = c
    out: dict = {}
    for a, row in rows.items():
        for b, c in sub.coords(row).items():
            out[a * k + b] = c
    return out


def restrict(H: FinHopf, basis: Sequence[Vec], name: str = "",
             labels: Sequence[str] | None = None) -> tuple[FinHopf, LinMap]:
    """The sub-Hopf algebra spanned by ``basis`` and its inclusion map.

    Raises ClosureError when the span is not closed under the structure maps.
    """
    sub = Subspace(H.dim, basis)
    k = len(sub)
    if k == 0:
        raise ClosureError("the zero subspace is not a sub-Hopf algebra")
    vecs = [b.d for b in sub.basis]

    def coords(d, what):
        try:
            return sub.coords(d)
        except NotInSpan:
            raise ClosureError(f"span not closed under {what}") from None

    mult_cols = {}
    for a in range(k):
        for b in range(k):
            mult_cols[a * k + b] = coords(H.mul(vecs[a], vecs[b]), "multiplication")
    unit = coords(H.one, "unit")
    comult_cols = {}
    for a in range(k):
        try:
            comult_cols[a] = coords_tensor(sub, H.delta(vecs[a]), H.dim)
        except NotInSpan:
            raise ClosureError("span not closed under comultiplication") from None
    counit_cols = {}
    for a in range(k):
        c = H.eps(vecs[a])
        counit_cols[a] = {0: c} if c else {}
    antipode_cols = {a: coords(H.S(vecs[a]), "antipode") for a in range(k)}
    flags = None
    if H.grouplike is not None:
        gl = set(H.grouplike)
        flags = [a for a, v in enumerate(vecs) if len(v) == 1 and next(iter(v.values())) == 1 and next(iter(v)) in gl]
    if labels is None:
        labels = [_label_for(b, H) for b in sub.basis]
    W = FinHopf(H.field, labels, LinMap(k * k, k, columns=mult_cols), Vec.raw(k, unit),
                LinMap(k, k * k, columns=comult_cols), LinMap(k, 1, columns=counit_cols),
                LinMap(k, k, columns=antipode_cols), grouplike=flags, name=name or f"sub{k}({H.name})")
    incl = LinMap(k, H.dim, columns=[dict(v) for v in vecs], name="inclusion")
    return W, incl


# -- verification ------------------------------------------------------------


def _monomial_table(H: FinHopf):
    n = H.dim
    idx = np.empty((n, n), dtype=np.int64)
    coef = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            d = H.mul_idx(i, j)
            if len(d) != 1:
                return None
            (k, c), = d.items()
            idx[i, j] = k
            coef[i, j] = c
    return idx, coef


def _associativity_fast(H: FinHopf, rep: Report) -> bool:
    """Vectorized associativity for monomial structure constants."""
    table = _monomial_table(H)
    if table is None:
        return False
    idx, coef = table
    n = H.dim
    ar = np.arange(n)
    left = idx[idx, :]  # left[i, j, k] = idx[idx[i, j], k]
    right = idx[ar[:, None, None], idx[None, :, :]]  # idx[i, idx[j, k]]
    bad = left != right
    if not all(c == 1 for c in coef.flat):
        lc = coef[:, :, None] * coef[idx, :]
        rc = coef[None, :, :] * coef[ar[:, None, None], idx[None, :, :]]
        bad |= ~np.array(lc == rc, dtype=bool)
    e = Entry("associativity", checked=n ** 3)
    hits = np.argwhere(bad)
    e.failures = len(hits)
    if len(hits):
        i, j, k = (int(x) for x in hits[0])
        e.passed = False
        lhs = H.mul(H.mul_idx(i, j), H.e(k))
        rhs = H.mul(H.e(i), H.mul_idx(j, k))
        e.counterexample = {"at": [H.labels[i], H.labels[j], H.labels[k]],
                            "lhs": H.fmt(lhs), "rhs": H.fmt(rhs)}
    rep.add(e)
    return True


def check_hopf(H: FinHopf, mode: str | None = None) -> Report:
    """Evaluate every Hopf algebra axiom on the required basis tuples."""
    mode = mode or config.check_mode(H.dim)
    rep = Report(f"hopf {H.name}", mode)
    ck = Checker(rep, mode)
    n = H.dim
    lab = H.labels
    one = H.one
    F = H.field

    def differ(a, b, fmt=H.fmt):
        return None if a == b else (fmt(a), fmt(b))

    if not (mode == "full" and _associativity_fast(H, rep)):
        def assoc(i, j, k):
            return differ(H.mul(H.mul_idx(i, j), H.e(k)), H.mul(H.e(i), H.mul_idx(j, k)))

        ck.run("associativity", [n, n, n], assoc, [lab] * 3)

    def unitality(i):
        e = H.e(i)
        return differ(H.mul(one, e), e) or differ(H.mul(e, one), e)

    ck.run("unitality", [n], unitality, [lab])

    def fmt3(t):
        return format_vec(t, _TripleLabels(lab), F.fmt)

    def coassoc(i):
        left: dict = {}
        right: dict = {}
        for (a, b), c in H.sweedler(i):
            for (a1, a2), c2 in H.sweedler(a):
                axpy(left, {(a1 * n + a2) * n + b: 1}, c * c2)
            for (b1, b2), c2 in H.sweedler(b):
                axpy(right, {(a * n + b1) * n + b2: 1}, c * c2)
        return differ(left, right, fmt3)

    ck.run("coassociativity", [n], coassoc, [lab])

    def counitality(i):
        left: dict = {}
        right: dict = {}
        for (a, b), c in H.sweedler(i):
            axpy(left, {b: 1}, c * H.eps_idx(a))
            axpy(right, {a: 1}, c * H.eps_idx(b))
        return differ(left, H.e(i)) or differ(right, H.e(i))

    ck.run("counitality", [n], counitality, [lab])

    def delta_mult(i, j):
        lhs = H.delta(H.mul_idx(i, j))
        rhs: dict = {}
        for (a1, a2), c in H.sweedler(i):
            for (b1, b2), c2 in H.sweedler(j):
                axpy(rhs, kron(H.mul_idx(a1, b1), H.mul_idx(a2, b2), n), c * c2)
        return differ(lhs, rhs, H.fmt2)

    ck.run("comult_multiplicative", [n, n], delta_mult, [lab] * 2)
    rep.flag("comult_unital", H.delta(one) == kron(one, one, n),
             {"lhs": H.fmt2(H.delta(one)), "rhs": H.fmt2(kron(one, one, n))})

    def eps_mult(i, j):
        lhs = H.eps(H.mul_idx(i, j))
        rhs = H.eps_idx(i) * H.eps_idx(j)
        return None if lhs == rhs else (F.fmt(lhs), F.fmt(rhs))

    ck.run("counit_multiplicative", [n, n], eps_mult, [lab] * 2)
    rep.flag("counit_unital", H.eps(one) == 1, {"lhs": F.fmt(H.eps(one)), "rhs": "1"})

    def antipode(i):
        left: dict = {}
        right: dict = {}
        for (a, b), c in H.sweedler(i):
            axpy(left, H.mul(H.e(a), H.S_idx(b)), c)
            axpy(right, H.mul(H.S_idx(a), H.e(b)), c)
        target = {k: v * H.eps_idx(i) for k, v in one.items()} if H.eps_idx(i) else {}
        return differ(left, target) or differ(right, target)

    ck.run("antipode", [n], antipode, [lab])

    def cocomm(i):
        d = H.comult.coldict(i)
        flipped = {(k % n) * n + k // n: c for k, c in d.items()}
        return differ(d, flipped, H.fmt2)

    ck.run("cocommutativity", [n], cocomm, [lab])
    ck.run("antipode_involutive", [n], lambda i: differ(H.S(H.S_idx(i)), H.e(i)), [lab])
    if H.grouplike is not None:
        flagged = H.grouplike

        def gl(t):
            g = flagged[t]
            d = H.comult.coldict(g)
            want = {g * n + g: 1}
            if d != want:
                return (H.fmt2(d), H.fmt2(want))
            if H.eps_idx(g) != 1:
                return (F.fmt(H.eps_idx(g)), "1")
            return None

        ck.run("grouplike_flags", [len(flagged)], gl, [[lab[g] for g in flagged]])
    return rep


class _TripleLabels:
    def __init__(self, labels):
        self.labels = labels

    def __getitem__(self, idx):
        n = len(self.labels)
        ab, c = divmod(idx, n)
        a, b = divmod(ab, n)
        return f"{self.labels[a]}(x){self.labels[b]}(x){self.labels[c]}"


def assert_hopf(H: FinHopf) -> FinHopf:
    """Paranoid-mode verification of a constructed algebra."""
    if config.asserting():
        check_hopf(H).require()
    return H


# -- group-likes and primitives ----------------------------------------------


class GrouplikeError(ValueError):
    pass


def grouplikes(H: FinHopf) -> list[Vec]:
    if H.grouplike is None:
        raise GrouplikeError(f"{H.name} carries no group-like flags")
    n = H.dim
    out = []
    for g in H.grouplike:
        if H.comult.coldict(g) != {g * n + g: 1} or H.eps_idx(g) != 1:
            raise GrouplikeError(f"flagged basis element {H.labels[g]} is not group-like")
        out.append(H.basis(g))
    return out


def primitives(H: FinHopf) -> list[Vec]:
    """Basis of {x : Delta(x) = x(x)1 + 1(x)x}; bracket closure is verified."""
    n = H.dim
    one = H.one

    def fn(i):
        d = dict(H.comult.coldict(i))
        axpy(d, kron(H.e(i), one, n), -1)
        axpy(d, kron(one, H.e(i), n), -1)
        return d

    prims = nullspace(LinMap(n, n * n, fn=fn))
    if prims:
        sub = Subspace(n, prims)
        for x in prims:
            for y in prims:
                br = H.mul(x.d, y.d)
                axpy(br, H.mul(y.d, x.d), -1)
                if not sub.contains(br):
                    raise ClosureError("primitive elements are not closed under the bracket")
    return prims


def group_of_grouplikes(H: FinHopf) -> FiniteGroup:
    """The group formed by the flagged group-likes under multiplication."""
    grouplikes(H)
    flagged = H.grouplike
    pos = {g: t for t, g in enumerate(flagged)}
    unit = H.one
    if len(unit) != 1 or next(iter(unit.values())) != 1 or next(iter(unit)) not in pos:
        raise GrouplikeError("the unit is not a flagged basis element")
    table = []
    for g in flagged:
        row = []
        for h in flagged:
            d = H.mul_idx(g, h)
            if len(d) != 1 or next(iter(d.values())) != 1 or next(iter(d)) not in pos:
                raise GrouplikeError(f"{H.labels[g]}*{H.labels[h]} is not a flagged group-like")
            row.append(pos[next(iter(d))])
        table.append(row)
    return FiniteGroup(tuple(H.labels[g] for g in flagged), tuple(map(tuple, table)),
                       pos[next(iter(unit))])


def cgkmm_degenerate(H: FinHopf) -> Report:
    """With no primitives, K[G(H)] -> H must be an isomorphism of Hopf algebras."""
    rep = Report(f"cgkmm {H.name}")
    prims = primitives(H)
    rep.flag("no_primitives", not prims, {"dim": len(prims)})
    try:
        G = group_of_grouplikes(H)
    except (GrouplikeError, InvalidGroup) as exc:
        rep.flag("grouplikes_form_group", False, {"error": str(exc)})
        return rep
    rep.flag("grouplikes_form_group", True)
    KG = group_algebra(G, H.field)
    images = [H.e(g) for g in H.grouplike]
    ok_alg = all(H.mul(images[a], images[b]) == images[G.mul(a, b)]
                 for a in range(G.order) for b in range(G.order))
    ok_coalg = all(H.delta(images[a]) == kron(images[a], images[a], H.dim) and H.eps(images[a]) == 1
                   for a in range(G.order))
    ok_S = all(H.S(images[a]) == images[G.inv(a)] for a in range(G.order))
    rep.flag("multiplication_map_hopf_morphism", ok_alg and ok_coalg and ok_S and H.one == images[G.identity])
    m = LinMap(KG.dim, H.dim, columns=images)
    rep.flag("multiplication_map_bijective", KG.dim == H.dim and rank(m) == H.dim,
             {"group_order": G.order, "dim": H.dim})
    return rep
