"""Finite groups and brute-force checkers for group crossed modules and squares.

Everything here works on multiplication tables and index tables only. It
never touches the Hopf-level code, so it serves as an independent oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .hopfcore import FiniteGroup

Table = tuple[tuple[int, ...], ...]


def cyclic(n: int, gen: str = "g") -> FiniteGroup:
    labels = ["e"] + [gen if k == 1 else f"{gen}^{k}" for k in range(1, n)]
    return FiniteGroup(tuple(labels), tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0)


def trivial_group() -> FiniteGroup:
    return FiniteGroup(("e",), ((0,),), 0)


def _cycle_label(perm: tuple[int, ...]) -> str:
    seen = set()
    out = []
    for s in range(len(perm)):
        if s in seen or perm[s] == s:
            continue
        cyc = [s]
        seen.add(s)
        t = perm[s]
        while t != s:
            cyc.append(t)
            seen.add(t)
            t = perm[t]
        out.append("(" + "".join(str(c + 1) for c in cyc) + ")")
    return "".join(out) or "()"


def permutation_group(perms: Sequence[tuple[int, ...]]) -> FiniteGroup:
    """Group of the given permutations, composed as (s t)(x) = s(t(x))."""
    perms = [tuple(p) for p in perms]
    pos = {p: i for i, p in enumerate(perms)}
    ident = tuple(range(len(perms[0])))
    table = [[pos[tuple(s[t[x]] for x in range(len(s)))] for t in perms] for s in perms]
    return FiniteGroup(tuple(_cycle_label(p) for p in perms), tuple(map(tuple, table)), pos[ident])


def symmetric(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)),
                   key=lambda p: (sum(p[i] != i for i in range(n)), _cycle_label(p)))
    return permutation_group(perms)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n = H.order
    labels = tuple(f"({a},{b})" for a in G.labels for b in H.labels)
    table = tuple(
        tuple(G.mul(i // n, j // n) * n + H.mul(i % n, j % n) for j in range(G.order * n))
        for i in range(G.order * n)
    )
    return FiniteGroup(labels, table, G.identity * n + H.identity)


def klein() -> FiniteGroup:
    return direct_product(cyclic(2, "a"), cyclic(2, "b"))


def semidirect(X: FiniteGroup, B: FiniteGroup, act: Table) -> FiniteGroup:
    """X by B with (x, b)(y, c) = (x (b.y), bc); index x * |B| + b."""
    nb = B.order
    labels = tuple(f"({x},{b})" for x in X.labels for b in B.labels)
    n = X.order * nb
    table = []
    for i in range(n):
        x, b = divmod(i, nb)
        row = []
        for j in range(n):
            y, c = divmod(j, nb)
            row.append(X.mul(x, act[b][y]) * nb + B.mul(b, c))
        table.append(tuple(row))
    return FiniteGroup(labels, tuple(table), X.identity * nb + B.identity)


def subgroup(G: FiniteGroup, elements: Sequence[int]) -> tuple[FiniteGroup, list[int]]:
    """The subgroup on the given elements (in the given order) and its embedding."""
    elements = list(elements)
    pos = {g: i for i, g in enumerate(elements)}
    try:
        table = tuple(tuple(pos[G.mul(a, b)] for b in elements) for a in elements)
    except KeyError:
        raise ValueError("elements are not closed under multiplication") from None
    return FiniteGroup(tuple(G.labels[g] for g in elements), table, pos[G.identity]), elements


def conjugation_table(G: FiniteGroup, acting: Sequence[int], acted: Sequence[int]) -> Table:
    """act[b][x] = b x b^-1 for b in ``acting``, x in ``acted`` (by position)."""
    pos = {g: i for i, g in enumerate(acted)}
    return tuple(tuple(pos[G.mul(G.mul(b, x), G.inv(b))] for x in acted) for b in acting)


def trivial_action_table(B: FiniteGroup, X: FiniteGroup) -> Table:
    return tuple(tuple(range(X.order)) for _ in range(B.order))


def named_group(name: str) -> FiniteGroup:
    key = name.lower()
    if key in ("v4", "c2xc2", "klein"):
        return klein()
    if key == "s3":
        return symmetric(3)
    if key in ("1", "trivial", "c1"):
        return trivial_group()
    if key.startswith("c") and key[1:].isdigit():
        return cyclic(int(key[1:]))
    raise ValueError(f"unknown group {name!r}")


def alternating3() -> tuple[FiniteGroup, list[int]]:
    """A3 inside the S3 returned by symmetric(3)."""
    S3 = symmetric(3)
    evens = [S3.index("()"), S3.index("(123)"), S3.index("(132)")]
    return subgroup(S3, evens)


# -- group-level checkers ---------------------------------------------------


def is_hom(G: FiniteGroup, H: FiniteGroup, f: Sequence[int]) -> bool:
    return all(f[G.mul(a, b)] == H.mul(f[a], f[b]) for a in range(G.order) for b in range(G.order))


def check_group_action(B: FiniteGroup, X: FiniteGroup, act: Table) -> dict[str, bool]:
    nb, nx = B.order, X.order
    return {
        "compose": all(act[B.mul(b, c)][x] == act[b][act[c][x]]
                       for b in range(nb) for c in range(nb) for x in range(nx)),
        "identity": all(act[B.identity][x] == x for x in range(nx)),
        "automorphism": all(act[b][X.mul(x, y)] == X.mul(act[b][x], act[b][y])
                            for b in range(nb) for x in range(nx) for y in range(nx)),
    }


@dataclass(frozen=True)
class GroupCrossedModule:
    B: FiniteGroup
    X: FiniteGroup
    d: tuple[int, ...]
    act: Table


def check_group_xmod(cm: GroupCrossedModule) -> dict[str, bool]:
    B, X, d, act = cm.B, cm.X, cm.d, cm.act
    out = {f"action:{k}": v for k, v in check_group_action(B, X, act).items()}
    out["d:homomorphism"] = is_hom(X, B, d)
    out["CM1"] = all(d[act[b][x]] == B.mul(B.mul(b, d[x]), B.inv(b))
                     for b in range(B.order) for x in range(X.order))
    out["CM2"] = all(act[d[y]][x] == X.mul(X.mul(y, x), X.inv(y))
                     for y in range(X.order) for x in range(X.order))
    return out


@dataclass(frozen=True)
class GroupCrossedSquare:
    """L -lam-> M, L -lamp-> N, M -mu-> P, N -nu-> P with h: M x N -> L.

    Actions are tables act[p][x]; h is a table h[m][n].
    """

    L: FiniteGroup
    M: FiniteGroup
    N: FiniteGroup
    P: FiniteGroup
    lam: tuple[int, ...]
    lamp: tuple[int, ...]
    mu: tuple[int, ...]
    nu: tuple[int, ...]
    actPL: Table
    actPM: Table
    actPN: Table
    h: Table


def check_group_square(g: GroupCrossedSquare) -> dict[str, bool]:
    """Verdicts for the crossed-square-of-groups axioms, keyed by roman numeral."""
    L, M, N, P = g.L, g.M, g.N, g.P
    lam, lamp, mu, nu, h = g.lam, g.lamp, g.mu, g.nu, g.h
    out: dict[str, bool] = {}
    out["commutes"] = all(mu[lam[l]] == nu[lamp[l]] for l in range(L.order))
    out["homomorphisms"] = (is_hom(L, M, lam) and is_hom(L, N, lamp)
                            and is_hom(M, P, mu) and is_hom(N, P, nu))
    kappa = tuple(mu[lam[l]] for l in range(L.order))
    xm = [GroupCrossedModule(P, M, mu, g.actPM), GroupCrossedModule(P, N, nu, g.actPN),
          GroupCrossedModule(P, L, kappa, g.actPL)]
    out["(i)"] = all(all(check_group_xmod(c).values()) for c in xm)
    out["equivariance"] = (
        all(lam[g.actPL[p][l]] == g.actPM[p][lam[l]] for p in range(P.order) for l in range(L.order))
        and all(lamp[g.actPL[p][l]] == g.actPN[p][lamp[l]] for p in range(P.order) for l in range(L.order))
    )
    aL = g.actPL
    out["(ii)"] = all(
        lam[h[m][n]] == M.mul(m, g.actPM[nu[n]][M.inv(m)])
        and lamp[h[m][n]] == N.mul(g.actPN[mu[m]][n], N.inv(n))
        for m in range(M.order) for n in range(N.order)
    )
    out["(iii)"] = all(
        h[lam[l]][n] == L.mul(l, aL[nu[n]][L.inv(l)])
        for l in range(L.order) for n in range(N.order)
    ) and all(
        h[m][lamp[l]] == L.mul(aL[mu[m]][l], L.inv(l))
        for l in range(L.order) for m in range(M.order)
    )
    out["(iv)"] = all(
        h[m][N.mul(n, n2)] == L.mul(h[m][n], aL[nu[n]][h[m][n2]])
        for m in range(M.order) for n in range(N.order) for n2 in range(N.order)
    ) and all(
        h[M.mul(m, m2)][n] == L.mul(aL[mu[m]][h[m2][n]], h[m][n])
        for m in range(M.order) for m2 in range(M.order) for n in range(N.order)
    )
    out["(v)"] = all(
        aL[p][h[m][n]] == h[g.actPM[p][m]][g.actPN[p][n]]
        for p in range(P.order) for m in range(M.order) for n in range(N.order)
    )
    return out


def normal_pair_square(G: FiniteGroup, N_elems: Sequence[int], M_elems: Sequence[int]) -> GroupCrossedSquare:
    """Square of inclusions L = N cap M, M, N inside P = G with h(m, n) = [m, n]."""
    Nset, Mset = list(N_elems), list(M_elems)
    Lset = [x for x in Mset if x in set(Nset)]
    L, _ = subgroup(G, Lset)
    M, _ = subgroup(G, Mset)
    N, _ = subgroup(G, Nset)
    P, _ = subgroup(G, range(G.order))
    lam = tuple(Mset.index(x) for x in Lset)
    lamp = tuple(Nset.index(x) for x in Lset)
    everything = list(range(G.order))
    h = tuple(
        tuple(Lset.index(G.mul(G.mul(m, n), G.mul(G.inv(m), G.inv(n)))) for n in Nset) for m in Mset
    )
    return GroupCrossedSquare(
        L, M, N, P, lam, lamp, tuple(Mset), tuple(Nset),
        conjugation_table(G, everything, Lset), conjugation_table(G, everything, Mset),
        conjugation_table(G, everything, Nset), h,
    )


def relabel_h(g: GroupCrossedSquare, h: Callable[[int, int], int]) -> GroupCrossedSquare:
    """Same square with a different h (used to build counterexamples)."""
    table = tuple(tuple(h(m, n) for n in range(g.N.order)) for m in range(g.M.order))
    return GroupCrossedSquare(g.L, g.M, g.N, g.P, g.lam, g.lamp, g.mu, g.nu,
                              g.actPL, g.actPM, g.actPN, table)
