import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfsquare import groups
from hopfsquare.examples import subgroup_algebra
from hopfsquare.exactla import LinMap
from hopfsquare.hopfcore import ClosureError, group_algebra
from hopfsquare.morphism import (
    HopfMorphism,
    check_morphism,
    first_noncommuting,
    from_images,
    hker,
    identity_morphism,
    image,
    intersect,
    is_isomorphism,
    is_normal,
    restrict_morphism,
)

S3 = groups.symmetric(3)


def group_hom(G, H, table):
    return from_images(group_algebra(G), group_algebra(H), [{t: 1} for t in table])


def sign_table():
    C2 = groups.cyclic(2)
    A3 = {S3.index(x) for x in ("()", "(123)", "(132)")}
    return C2, [0 if g in A3 else 1 for g in range(S3.order)]


def subgroups(G):
    """All subgroups by brute force over subsets containing the identity."""
    out = []
    others = [g for g in range(G.order) if g != G.identity]
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            s = {G.identity, *extra}
            if all(G.mul(a, b) in s for a in s for b in s):
                out.append(sorted(s))
    return out


def is_normal_subgroup(G, s):
    return all(G.mul(G.mul(g, x), G.inv(g)) in s for g in range(G.order) for x in s)


def test_sign_is_a_morphism_with_kernel_a3():
    C2, table = sign_table()
    f = group_hom(S3, C2, table)
    assert check_morphism(f).ok
    K = hker(f)
    # group-level kernel gives the expected span
    kernel = [g for g in range(S3.order) if table[g] == 0]
    assert K.dim == len(kernel)
    assert all(K.contains({g: 1}) for g in kernel)


def test_non_homomorphism_is_caught():
    C2, table = sign_table()
    table[S3.index("(12)")] = 0
    f = group_hom(S3, C2, table)
    rep = check_morphism(f)
    assert not rep.ok
    assert any(name.startswith("multiplicative") for name in rep.failed())


@pytest.mark.parametrize("G", [groups.symmetric(3), groups.klein(), groups.cyclic(4)], ids=["S3", "V4", "C4"])
def test_normality_agrees_with_group_oracle(G):
    P = group_algebra(G)
    for s in subgroups(G):
        U = subgroup_algebra(P, [G.labels[x] for x in s], "U")
        assert is_normal(U) == is_normal_subgroup(G, set(s)), s


def test_intersection_and_commutation():
    V4 = groups.klein()
    P = group_algebra(V4)
    N = subgroup_algebra(P, ["(e,e)", "(a,e)"], "N")
    M = subgroup_algebra(P, ["(e,e)", "(e,b)"], "M")
    assert intersect(N, M).dim == 1
    assert first_noncommuting(N, M) is None
    A = group_algebra(S3)
    a3 = subgroup_algebra(A, ["()", "(123)", "(132)"], "A3")
    t = subgroup_algebra(A, ["()", "(12)"], "T")
    assert first_noncommuting(a3, t) is not None


def test_image_and_restriction():
    C2, table = sign_table()
    f = group_hom(S3, C2, table)
    assert image(f).dim == 2
    A = f.dom
    a3 = subgroup_algebra(A, ["()", "(123)", "(132)"], "A3")
    triv = subgroup_algebra(f.cod, ["e"], "1")
    r = restrict_morphism(f, a3, triv)
    assert check_morphism(r).ok
    t = subgroup_algebra(A, ["()", "(12)"], "T")
    with pytest.raises(ClosureError):
        restrict_morphism(f, t, triv)


def test_identity_is_an_isomorphism():
    A = group_algebra(S3)
    assert is_isomorphism(identity_morphism(A))
    zero_ish = HopfMorphism(A, A, LinMap(A.dim, A.dim, fn=lambda i: {0: 1}), "collapse")
    assert not is_isomorphism(zero_ish)


@given(st.integers(1, 6), st.integers(1, 6))
def test_hker_of_cyclic_projection(n, k):
    """C_{nk} -> C_n, g -> g mod n: the Hopf kernel is spanned by the group kernel."""
    G, H = groups.cyclic(n * k), groups.cyclic(n)
    f = group_hom(G, H, [g % n for g in range(n * k)])
    K = hker(f)
    assert K.dim == k
    assert all(K.contains({g: 1}) for g in range(0, n * k, n))
