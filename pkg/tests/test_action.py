import pytest

from hopfsquare import examples, groups
from hopfsquare.action import (
    SplitEpi,
    action_from,
    action_to_split_epi,
    action_transport_defect,
    check_action,
    check_split_epi,
    conjugation_action,
    phi_iso,
    smash,
    smash_inclusion,
    trivial_action,
)
from hopfsquare.exactla import LinMap
from hopfsquare.hopfcore import check_hopf, group_algebra
from hopfsquare.morphism import from_images, is_isomorphism

S3 = groups.symmetric(3)


def sign_split_epi():
    A, B = group_algebra(S3), group_algebra(groups.cyclic(2))
    even = {S3.index(x) for x in ("()", "(123)", "(132)")}
    p = from_images(A, B, [{0 if g in even else 1: 1} for g in range(6)], "sign")
    s = from_images(B, A, [{S3.index("()"): 1}, {S3.index("(12)"): 1}], "section")
    return SplitEpi(A, B, p, s)


def corpus_actions():
    out = {}
    for name in ("conj_a3_s3", "conj_s3", "c3_s3"):
        out[name] = examples.named_xmod(name).act
    C2 = group_algebra(groups.cyclic(2))
    out["trivial_c2"] = trivial_action(C2, group_algebra(groups.cyclic(3)))
    C3 = group_algebra(groups.cyclic(3))
    # inversion action of C2 on C3
    out["inversion"] = action_from(C2, C3, lambda b, x: {(-x) % 3 if b else x: 1})
    return out


@pytest.mark.parametrize("name", sorted(corpus_actions()))
def test_corpus_actions_pass_and_smash_is_hopf(name):
    a = corpus_actions()[name]
    assert check_action(a).ok
    H = smash(a)
    assert H.dim == a.acting.dim * a.acted.dim
    assert check_hopf(H).ok


def test_non_action_is_caught():
    C2, C3 = group_algebra(groups.cyclic(2)), group_algebra(groups.cyclic(3))
    bad = action_from(C2, C3, lambda b, x: {(x + b) % 3: 1})
    rep = check_action(bad)
    assert not rep.ok


def test_sign_retraction_phi():
    s = sign_split_epi()
    assert check_split_epi(s).ok
    assert s.kernel.dim == 3
    phi = phi_iso(s)
    assert is_isomorphism(phi)


@pytest.mark.parametrize("name", sorted(corpus_actions()))
def test_action_recovered_from_its_split_epi(name):
    a = corpus_actions()[name]
    s = action_to_split_epi(a)
    assert check_split_epi(s).ok
    conj = conjugation_action(s)
    K = s.kernel
    incl = smash_inclusion(a, s.total)
    alpha = LinMap(a.acted.dim, K.dim, fn=lambda x: K.coords(incl.col(x)))
    ident = LinMap(a.acting.dim, a.acting.dim, fn=lambda b: {b: 1})
    assert action_transport_defect(a, conj, alpha, ident) is None
    assert is_isomorphism(phi_iso(s))
