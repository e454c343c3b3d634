"""Hopf-level verdicts on K[-] of group data against brute-force group-level verdicts."""

from hypothesis import given, settings
from hypothesis import strategies as st

from hopfsquare import examples, groups

from helpers import S3_SQUARE, S3_XMOD, TABLE_CODOMAIN, V4_SQUARE, corrupt, square_verdicts_agree, xmod_verdicts

def test_valid_square_agrees():
    group, hopf = square_verdicts_agree(V4_SQUARE)
    assert group == hopf and all(group.values())


def test_valid_crossed_module_agrees():
    group, hopf = xmod_verdicts(S3_XMOD)
    assert group == hopf and all(group.values())


@given(st.sampled_from(sorted(TABLE_CODOMAIN)), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_corrupted_square_verdicts_agree(name, i, j, value):
    g = V4_SQUARE
    value %= getattr(g, TABLE_CODOMAIN[name]).order
    group, hopf = square_verdicts_agree(corrupt(g, name, i, j, value))
    assert group == hopf


@given(st.sampled_from(["d", "act"]), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_corrupted_crossed_module_verdicts_agree(name, i, j, value):
    g = S3_XMOD
    value %= (g.B if name == "d" else g.X).order
    group, hopf = xmod_verdicts(corrupt(g, name, i, j, value))
    assert group == hopf


def test_corruptions_are_not_all_harmless():
    g = corrupt(V4_SQUARE, "actPM", 1, 0, 1)
    group, hopf = square_verdicts_agree(g)
    assert not all(group.values()) and group == hopf


def test_lift_then_extract_is_the_identity():
    assert examples.extract_group_square(examples.lift_group_square(V4_SQUARE)) == V4_SQUARE
    assert examples.extract_group_xmod(examples.lift_group_xmod(S3_XMOD)) == S3_XMOD
    g = groups.normal_pair_square(groups.symmetric(3), [0, 4, 5], list(range(6)))
    assert examples.extract_group_square(examples.lift_group_square(g)) == g


def test_lift_refuses_invalid_group_data():
    g = corrupt(V4_SQUARE, "actPM", 1, 0, 1)
    try:
        examples.lift_group_square(g)
    except ValueError as e:
        assert "fails" in str(e)
    else:
        raise AssertionError("invalid group square was lifted")


@settings(max_examples=40)
@given(st.sampled_from(["h", "actPL", "lam", "nu"]), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_corrupted_s3_square_verdicts_agree(name, i, j, value):
    g = S3_SQUARE
    value %= getattr(g, TABLE_CODOMAIN[name]).order
    group, hopf = square_verdicts_agree(corrupt(g, name, i, j, value))
    assert group == hopf
