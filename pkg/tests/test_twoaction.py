import pytest

from hopfsquare import config, examples
from hopfsquare.action import check_action
from hopfsquare.exactla import LinMap
from hopfsquare.square import square_to_2action
from hopfsquare.twoaction import (
    Hopf2Action,
    check_2action,
    check_psi,
    check_split_epi2,
    pt2_roundtrip,
    pt2_to_2action,
    psi_iso,
    swap_2action,
    twoaction_roundtrip,
    twoaction_to_pt2,
)

from conftest import c3_in_s3_square, corpus_square

CORPUS = {
    "trivial": lambda: corpus_square("trivial"),
    "unit_c2": lambda: corpus_square("unit", algebra="k_c2"),
    "normal_pair_v4": lambda: corpus_square("normal-pair", group="v4"),
}


def two_action(name):
    return square_to_2action(CORPUS[name]())


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_outer_action_and_split_epi(name):
    build = twoaction_to_pt2(two_action(name))
    rep = check_action(build.outer, "full")
    assert rep.ok and len(rep.entries) >= 6
    assert check_split_epi2(build.split).ok


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_recovered_two_action_passes_in_full_mode(name):
    back = pt2_to_2action(twoaction_to_pt2(two_action(name)).split)
    rep = check_2action(back, "full")
    assert rep.ok, rep.summary()
    for axiom in ("2A1.m", "2A1.n", "2A2", "2A3.m", "2A3.n", "2A4.m", "2A4.n", "2A5"):
        assert axiom in rep


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_round_trips(name):
    a = two_action(name)
    assert twoaction_roundtrip(a).ok
    assert pt2_roundtrip(twoaction_to_pt2(a).split).ok


def test_unit_square_total_dimension():
    assert twoaction_to_pt2(two_action("unit_c2")).H.dim == 16


def test_corrupted_pairing_is_detected():
    a = two_action("unit_c2")
    L = a.L
    # send everything to the non-identity group-like
    h = LinMap(a.M.dim * a.N.dim, L.dim, fn=lambda i: {1: 1})
    bad = Hopf2Action(a.L, a.M, a.N, a.P, a.actPL, a.actPM, a.actPN, a.actML, a.actNL, h)
    rep = check_2action(bad, "full")
    assert {"2A3.m", "2A3.n"} <= set(rep.failed())


def test_swap_is_an_involution_on_the_pairing():
    a = two_action("normal_pair_v4")
    twice = swap_2action(swap_2action(a))
    assert twice.h.equals(a.h)
    assert check_2action(swap_2action(a)).ok


@pytest.mark.parametrize("name", ["unit_c2", "normal_pair_v4"])
def test_psi_is_an_isomorphism(name):
    with config.configured(paranoid="off"):
        psi, inv = psi_iso(two_action(name))
    assert psi.dom.dim == 16
    assert check_psi(psi, inv).ok


def test_psi_on_the_dimension_162_example():
    psi, inv = psi_iso(square_to_2action(c3_in_s3_square()))
    assert psi.dom.dim == psi.cod.dim == 162
    rep = check_psi(psi, inv)
    assert rep.status("inverse_after_psi") and rep.status("psi_after_inverse")


def test_discrete_two_action():
    a = square_to_2action(examples.discrete_square(examples.named_xmod("conj_a3_s3")))
    assert twoaction_to_pt2(a).H.dim == 18
