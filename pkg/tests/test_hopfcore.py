import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfsquare import config, groups
from hopfsquare.exactla import GF, QQ, LinMap, Vec
from hopfsquare.hopfcore import (
    FinHopf,
    GrouplikeError,
    InvalidGroup,
    base_field,
    cgkmm_degenerate,
    check_hopf,
    group_algebra,
    group_of_grouplikes,
    grouplikes,
    primitives,
    tensor_hopf,
)

GROUPS = {"C2": groups.cyclic(2), "C3": groups.cyclic(3), "C4": groups.cyclic(4),
          "V4": groups.klein(), "S3": groups.symmetric(3)}


def with_antipode(H: FinHopf, antipode: LinMap) -> FinHopf:
    return FinHopf(H.field, H.labels, H.mult, H.unit, H.comult, H.counit, antipode, H.grouplike, H.name)


@pytest.mark.parametrize("name", sorted(GROUPS))
@pytest.mark.parametrize("field", [QQ, GF(2), GF(5)], ids=["Q", "F2", "F5"])
def test_group_algebras_are_hopf(name, field):
    rep = check_hopf(group_algebra(GROUPS[name], field))
    assert rep.ok, rep.summary()
    assert "cocommutativity" in rep and "antipode_involutive" in rep


def test_identity_antipode_fails_with_a_counterexample():
    H = group_algebra(GROUPS["S3"])
    bad = with_antipode(H, LinMap(H.dim, H.dim, fn=lambda i: {i: 1}))
    rep = check_hopf(bad)
    assert not rep.status("antipode")
    cx = rep.entry("antipode").counterexample
    assert cx["at"] and "lhs" in cx and "rhs" in cx


def test_sampled_mode_beyond_ceiling():
    H = group_algebra(GROUPS["S3"])
    with config.configured(ceiling=2):
        rep = check_hopf(H)
    assert rep.mode == "sampled" and rep.ok
    with config.configured(ceiling=2, paranoid="on"):
        assert check_hopf(H).mode == "full"


def test_tensor_product_dimension_and_axioms():
    A, B = group_algebra(GROUPS["C2"]), group_algebra(GROUPS["C3"])
    T = tensor_hopf(A, B)
    assert T.dim == 6 and check_hopf(T).ok
    assert T.is_commutative()


def test_grouplikes_and_primitives_of_group_algebras():
    for G in GROUPS.values():
        H = group_algebra(G)
        assert len(grouplikes(H)) == G.order
        assert primitives(H) == []
        assert group_of_grouplikes(H) == G


def test_base_field():
    K = base_field()
    assert K.dim == 1 and check_hopf(K).ok


def test_unflagged_algebra_has_no_group():
    H = group_algebra(GROUPS["C2"])
    H.grouplike = None
    with pytest.raises(GrouplikeError):
        grouplikes(H)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_cgkmm_degenerate(name):
    rep = cgkmm_degenerate(group_algebra(GROUPS[name]))
    assert rep.ok, rep.summary()


def test_invalid_group_table_rejected():
    with pytest.raises(InvalidGroup):
        groups.FiniteGroup(("e", "a"), ((0, 1), (1, 1)))


@given(st.integers(1, 7))
def test_cyclic_group_algebras(n):
    H = group_algebra(groups.cyclic(n))
    assert check_hopf(H).ok
    assert H.is_commutative()


def idempotent_basis_c2(mult_01=None) -> FinHopf:
    """K[C2] in the basis f0 = (e+g)/2, f1 = (e-g)/2, where products are not monomial."""
    mults = {(0, 0): {0: 1}, (1, 1): {1: 1}, (0, 1): mult_01 or {}, (1, 0): {}}
    return FinHopf(QQ, ["f0", "f1"],
                   LinMap(4, 2, fn=lambda idx: dict(mults[divmod(idx, 2)])),
                   Vec(2, {0: 1, 1: 1}),
                   LinMap(2, 4, fn=lambda i: {0: 1, 3: 1} if i == 0 else {1: 1, 2: 1}),
                   LinMap(2, 1, fn=lambda i: {0: 1} if i == 0 else {}),
                   LinMap(2, 2, fn=lambda i: {i: 1}), name="K[C2] idempotents")


def test_non_monomial_algebra_uses_the_generic_checker():
    rep = check_hopf(idempotent_basis_c2(), "full")
    assert rep.ok, rep.summary()
    rep = check_hopf(idempotent_basis_c2(mult_01={0: 1}), "full")
    assert not rep.status("associativity")
    assert rep.entry("associativity").counterexample["at"]


def test_vectorized_associativity_reports_a_counterexample():
    # x * y = -(x + y) mod 3 has monomial products but is not associative
    H = group_algebra(groups.cyclic(3))
    bad = FinHopf(QQ, H.labels, LinMap(9, 3, fn=lambda idx: {(-sum(divmod(idx, 3))) % 3: 1}),
                  H.unit, H.comult, H.counit, H.antipode, H.grouplike, "quasigroup")
    rep = check_hopf(bad, "full")
    assert not rep.status("associativity")
    i, j, k = (H.labels.index(x) for x in rep.entry("associativity").counterexample["at"])
    assert (-((-(i + j)) % 3 + k)) % 3 != (-(i + (-(j + k)) % 3)) % 3
