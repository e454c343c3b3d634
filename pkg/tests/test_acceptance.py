"""The ten acceptance criteria, each timed against its bound.

Every criterion constructs its own inputs inside the timed block so that
cached corpus objects from other test modules do not hide construction time.
A pass/fail line per criterion is printed in the terminal summary.
"""

import contextlib
import random
import time

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
    smash_inclusion,
    trivial_action,
)
from hopfsquare.exactla import LinMap
from hopfsquare.hopfcore import cgkmm_degenerate, check_hopf, group_algebra
from hopfsquare.morphism import check_morphism, from_images, is_isomorphism
from hopfsquare.square import (
    cat2_roundtrip,
    cat2_to_square,
    check_cat2,
    check_crossed_square,
    check_target_routes,
    derived_identities,
    square_roundtrip,
    square_to_2action,
    square_to_cat2,
    swap_square,
)
from hopfsquare.twoaction import (
    check_2action,
    check_psi,
    pt2_roundtrip,
    pt2_to_2action,
    psi_iso,
    twoaction_roundtrip,
    twoaction_to_pt2,
)
from hopfsquare.xmod import check_cat1, check_crossed_module, groupoid_check, xmod_roundtrip, xmod_to_cat1

from conftest import ACCEPTANCE_LINES
from helpers import (
    S3_SQUARE,
    S3_XMOD,
    TABLE_CODOMAIN,
    V4_SQUARE,
    corrupt,
    semidirect_pullback_size,
    square_verdicts_agree,
    xmod_verdicts,
)

GROUPS = {"C2": lambda: groups.cyclic(2), "C3": lambda: groups.cyclic(3), "C4": lambda: groups.cyclic(4),
          "C2xC2": groups.klein, "S3": lambda: groups.symmetric(3)}


@contextlib.contextmanager
def criterion(number: int, title: str, bound: float):
    start = time.perf_counter()
    finished = False
    try:
        yield
        finished = True
    finally:
        took = time.perf_counter() - start
        verdict = "PASS" if finished and took < bound else "FAIL"
        ACCEPTANCE_LINES.append(f"criterion {number:2d}: {verdict}  {took:7.2f} s (bound {bound:g} s)  {title}")
    assert took < bound, f"criterion {number} took {took:.2f} s, bound {bound} s"


def square_corpus():
    return {
        "unit_c2": examples.gen_example("unit", algebra="k_c2"),
        "discrete_a3_s3": examples.gen_example("discrete", xmod="conj_a3_s3"),
        "c3_in_s3": examples.gen_example("xmod-square", xmod="c3_s3"),
        "normal_pair_v4": examples.gen_example("normal-pair", group="v4"),
    }


def test_criterion_01_hopf_axiom_suite():
    with criterion(1, "Hopf axioms of K[G] for C2, C3, C4, C2xC2, S3", 5.0):
        for name, make in GROUPS.items():
            t0 = time.perf_counter()
            rep = check_hopf(group_algebra(make()), "full")
            assert rep.ok, (name, rep.summary())
            assert rep.status("cocommutativity") and rep.status("antipode_involutive")
            assert time.perf_counter() - t0 < 1.0, name


def sign_split_epi():
    S3 = groups.symmetric(3)
    A, B = group_algebra(S3), group_algebra(groups.cyclic(2))
    even = {S3.index(x) for x in ("()", "(123)", "(132)")}
    p = from_images(A, B, [{0 if g in even else 1: 1} for g in range(6)], "sign")
    s = from_images(B, A, [{S3.index("()"): 1}, {S3.index("(12)"): 1}], "section")
    return SplitEpi(A, B, p, s)


def test_criterion_02_crossed_product_isomorphism():
    with criterion(2, "Phi bijective Hopf morphism; actions recovered from split epis", 5.0):
        s = sign_split_epi()
        assert check_split_epi(s).ok
        phi = phi_iso(s)
        assert check_morphism(phi).ok and is_isomorphism(phi)
        C2, C3 = group_algebra(groups.cyclic(2)), group_algebra(groups.cyclic(3))
        actions = [examples.named_xmod(n).act for n in ("conj_a3_s3", "conj_s3", "c3_s3")]
        actions += [trivial_action(C2, C3), action_from(C2, C3, lambda b, x: {(-x) % 3 if b else x: 1})]
        for a in actions:
            s = action_to_split_epi(a)
            phi = phi_iso(s)
            assert check_morphism(phi).ok and is_isomorphism(phi)
            K = s.kernel
            incl = smash_inclusion(a, s.total)
            transport = LinMap(a.acted.dim, K.dim, fn=lambda x: K.coords(incl.col(x)))
            ident = LinMap(a.acting.dim, a.acting.dim, fn=lambda b: {b: 1})
            assert action_transport_defect(a, conjugation_action(s), transport, ident) is None


def test_criterion_03_crossed_module_equivalence():
    with criterion(3, "crossed module / cat1 equivalence and kernel commutation", 30.0):
        for name in ("discrete_s3", "conj_a3_s3", "conj_s3"):
            rep = xmod_roundtrip(examples.named_xmod(name))
            assert rep.ok, (name, rep.summary())
            for key in ("transport_bijective", "d_recovered", "action_recovered", "kernels_commute",
                        "cat1:Phi_bijective"):
                assert rep.status(key), (name, key)


def test_criterion_04_groupoid_identities():
    with criterion(4, "internal groupoid identities and pullback dimension", 60.0):
        for name in ("discrete_s3", "conj_a3_s3", "conj_s3", "c3_s3", "c2_c2"):
            c = xmod_to_cat1(examples.named_xmod(name))
            assert check_cat1(c).ok
            rep = groupoid_check(c)
            assert rep.ok, (name, rep.summary())
            assert rep.data["pullback_dim"] == semidirect_pullback_size(examples.group_xmod(name))


def test_criterion_05_two_action_equivalence():
    with criterion(5, "2-action / split epi equivalence in full mode", 60.0):
        for sq in (examples.gen_example("trivial"), examples.gen_example("unit", algebra="k_c2"),
                   examples.gen_example("normal-pair", group="v4")):
            a = square_to_2action(sq)
            build = twoaction_to_pt2(a)
            outer = check_action(build.outer, "full")
            assert outer.ok and len(outer.entries) >= 6
            back = check_2action(pt2_to_2action(build.split), "full")
            assert back.ok, back.summary()
            assert twoaction_roundtrip(a).ok
            assert pt2_roundtrip(build.split).ok


def test_criterion_06_psi():
    with criterion(6, "psi and its inverse are mutually inverse Hopf isomorphisms", 120.0):
        seen = set()
        for sq in (examples.gen_example("unit", algebra="k_c2"), examples.gen_example("normal-pair", group="v4"),
                   examples.gen_example("xmod-square", xmod="c3_s3")):
            psi, inv = psi_iso(square_to_2action(sq))
            rep = check_psi(psi, inv)
            assert rep.ok, rep.summary()
            seen.add(psi.dom.dim)
        assert seen == {16, 162}


def test_criterion_07_square_cat2_equivalence():
    with criterion(7, "crossed square / cat2 equivalence", 300.0):
        dims = {}
        for name, sq in square_corpus().items():
            c = square_to_cat2(sq)
            dims[name] = c.H.dim
            assert check_cat2(c).ok, name
            assert check_target_routes(c).ok, name
            assert check_crossed_module(c.extras["d"]).ok
            assert check_crossed_module(c.extras["dprime"]).ok
            back = cat2_to_square(c)
            assert check_crossed_square(back).ok, name
            assert derived_identities(back).ok, name
            assert square_roundtrip(sq).ok, name
            assert cat2_roundtrip(c).ok, name
        assert dims["unit_c2"] == 16 and dims["c3_in_s3"] == 162 and dims["normal_pair_v4"] == 16


def test_criterion_08_group_oracle_differential():
    rng = random.Random(8)
    with criterion(8, "Hopf verdicts agree with group-level brute force", 30.0):
        group, hopf = square_verdicts_agree(V4_SQUARE)
        assert group == hopf and all(group.values())
        group, hopf = xmod_verdicts(S3_XMOD)
        assert group == hopf and all(group.values())
        broken = 0
        for base, count in ((V4_SQUARE, 40), (S3_SQUARE, 15)):
            for _ in range(count):
                name = rng.choice(sorted(TABLE_CODOMAIN))
                value = rng.randrange(getattr(base, TABLE_CODOMAIN[name]).order)
                group, hopf = square_verdicts_agree(corrupt(base, name, rng.randrange(6), rng.randrange(6), value))
                assert group == hopf, name
                broken += not all(group.values())
        for _ in range(20):
            name = rng.choice(["d", "act"])
            value = rng.randrange((S3_XMOD.B if name == "d" else S3_XMOD.X).order)
            group, hopf = xmod_verdicts(corrupt(S3_XMOD, name, rng.randrange(6), rng.randrange(6), value))
            assert group == hopf, name
            broken += not all(group.values())
        assert broken > 0
        assert examples.extract_group_square(examples.lift_group_square(V4_SQUARE)) == V4_SQUARE
        assert examples.extract_group_xmod(examples.lift_group_xmod(S3_XMOD)) == S3_XMOD


def test_criterion_09_swap_symmetry():
    with criterion(9, "swapped corpus squares are crossed squares", 30.0):
        corpus = square_corpus()
        corpus["trivial"] = examples.gen_example("trivial")
        corpus["unit_c3"] = examples.gen_example("unit", algebra="k_c3")
        corpus["commutative_c2"] = examples.gen_example("commutative", algebra="k_c2")
        corpus["lie_shadow"] = examples.gen_example("lie-shadow")
        for name, sq in corpus.items():
            assert check_crossed_square(swap_square(sq)).ok, name


def test_criterion_10_degenerate_cgkmm():
    with criterion(10, "no primitives and K[G(H)] -> H is an isomorphism", 5.0):
        for name, make in GROUPS.items():
            rep = cgkmm_degenerate(group_algebra(make()))
            assert rep.ok, (name, rep.summary())
