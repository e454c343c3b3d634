import pytest

from hopfsquare import config, examples, groups
from hopfsquare.xmod import (
    CrossedModule,
    cat1_roundtrip,
    cat1_to_xmod,
    check_cat1,
    check_crossed_module,
    groupoid_check,
    xmod_roundtrip,
    xmod_to_cat1,
)

from helpers import semidirect_pullback_size

CORPUS = ("discrete_s3", "conj_a3_s3", "conj_s3", "c3_s3", "c2_c2")


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_crossed_modules(name):
    assert check_crossed_module(examples.named_xmod(name)).ok


def test_cm2_failure_names_the_pair():
    S3, C2 = groups.symmetric(3), groups.cyclic(2)
    g = groups.GroupCrossedModule(C2, S3, (0,) * 6, groups.trivial_action_table(C2, S3))
    assert not groups.check_group_xmod(g)["CM2"]
    cm = examples.lift_group_xmod(g, validate=False)
    rep = check_crossed_module(cm)
    assert rep.failed() == ["CM2"]
    assert len(rep.entry("CM2").counterexample["at"]) == 2


@pytest.mark.parametrize("name", CORPUS)
def test_equivalence_round_trips(name):
    cm = examples.named_xmod(name)
    rep = xmod_roundtrip(cm)
    assert rep.ok, rep.summary()
    c = xmod_to_cat1(cm)
    assert check_cat1(c).ok
    assert cat1_roundtrip(c).ok


def test_discrete_crossed_module_gives_the_identity_graph():
    c = xmod_to_cat1(examples.named_xmod("discrete_s3"))
    g = c.graph
    assert g.A1.dim == g.A0.dim == 6
    assert g.delta.map.equals(g.gamma.map)


def test_cat1_of_a3_in_s3_has_dimension_18():
    c = xmod_to_cat1(examples.named_xmod("conj_a3_s3"))
    assert c.graph.A1.dim == 18
    back = cat1_to_xmod(c)
    assert (back.X.dim, back.B.dim) == (3, 6)


@pytest.mark.parametrize("name", ["discrete_s3", "conj_a3_s3", "c2_c2", "c3_s3"])
def test_groupoid_identities_and_pullback_size(name):
    cm = examples.named_xmod(name)
    rep = groupoid_check(xmod_to_cat1(cm))
    assert rep.ok, rep.summary()
    assert rep.data["pullback_dim"] == semidirect_pullback_size(examples.group_xmod(name))


def test_groupoid_needs_a_crossed_module_source():
    c = xmod_to_cat1(examples.named_xmod("c2_c2"))
    c.source = None
    with pytest.raises(ValueError):
        groupoid_check(c)


def test_construction_asserts_can_be_disabled():
    cm = examples.named_xmod("c2_c2")
    with config.configured(paranoid="off"):
        assert isinstance(cat1_to_xmod(xmod_to_cat1(cm)), CrossedModule)
