import pytest

from hopfsquare import examples, groups
from hopfsquare.exactla import GF
from hopfsquare.hopfcore import GrouplikeError
from hopfsquare.square import check_crossed_square

from conftest import corpus_square


@pytest.mark.parametrize("kind", examples.EXAMPLE_KINDS)
def test_every_generator_yields_a_crossed_square(kind):
    assert check_crossed_square(examples.gen_example(kind)).ok


def test_generators_over_a_prime_field():
    sq = examples.gen_example("normal-pair", group="v4", field=GF(3))
    assert sq.P.field is GF(3)
    assert check_crossed_square(sq).ok


def test_unknown_kind():
    with pytest.raises(ValueError):
        examples.gen_example("nonsense")


def test_unit_square_corners():
    sq = corpus_square("unit", algebra="k_c3")
    assert sq.dims == (3, 3, 3, 3)
    assert sq.L is sq.M is sq.N is sq.P


def test_discrete_square_shape():
    sq = corpus_square("discrete", xmod="conj_a3_s3")
    assert sq.dims == (1, 1, 3, 6)


def test_lie_shadow_needs_commutative_input():
    with pytest.raises(ValueError):
        examples.lie_shadow_square(examples.named_xmod("conj_s3"))
    sq = examples.lie_shadow_square(examples.named_xmod("c2_c2"))
    assert sq.notes


def test_primitive_shadow_of_group_algebra_squares_is_zero():
    rep = examples.primitive_shadow(corpus_square("normal-pair", group="v4"))
    assert rep.ok
    assert rep.data["primitive_dims"] == {"L": 0, "M": 0, "N": 0, "P": 0}


def test_extract_needs_group_like_corners():
    sq = corpus_square("normal-pair", group="v4")
    sq_copy = examples.gen_example("normal-pair", group="v4")
    sq_copy.M.grouplike = None
    with pytest.raises(GrouplikeError):
        examples.extract_group_square(sq_copy)
    V4 = groups.klein()
    N = [V4.index(x) for x in ("(e,e)", "(a,e)")]
    M = [V4.index(x) for x in ("(e,e)", "(e,b)")]
    assert examples.extract_group_square(sq) == groups.normal_pair_square(V4, N, M)


def test_named_crossed_modules():
    for name in ("conj_a3_s3", "conj_s3", "c3_s3", "c2_c2", "discrete_s3", "discrete_c2"):
        assert all(groups.check_group_xmod(examples.group_xmod(name)).values())
    with pytest.raises(ValueError):
        examples.group_xmod("nothing")
