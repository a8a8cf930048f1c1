"""Structure analysis of finite semigroups from their Cayley tables."""

import pytest
from hypothesis import given, strategies as st

from cliffordlab import catalog as cat
from cliffordlab.core import (
    bonding_maps,
    classify,
    green_j_classes,
    is_trivial_clifford,
    pi_and_subgroups,
    validate_semigroup,
)
from cliffordlab.errors import IndexOutOfRange, NotAssociative
from cliffordlab.semilattice import assemble, decompose


def test_z2_table_is_valid():
    S = validate_semigroup([[0, 1], [1, 0]])
    assert S.n == 2


def test_non_associative_table_reports_witness():
    # aa=b, ab=a, ba=a, bb=a with a=0, b=1: (aa)b = bb = a but a(ab) = aa = b
    with pytest.raises(NotAssociative) as exc:
        validate_semigroup([[1, 0], [0, 0]])
    assert (0, 0, 1) in exc.value.witnesses


def test_out_of_range_entry_rejected():
    with pytest.raises(IndexOutOfRange):
        validate_semigroup([[0, 2], [1, 0]])


def test_min_semilattice_is_valid():
    S = validate_semigroup([[min(i, j) for j in range(3)] for i in range(3)])
    assert classify(S).is_clifford


def test_classify_z3():
    c = classify(cat.cyclic_group(3))
    assert c.is_inverse and c.is_clifford and c.is_group
    assert c.is_left_cancellative and c.is_right_cancellative


def test_classify_chain3():
    c = classify(cat.chain_semilattice(3))
    assert c.is_inverse and c.is_clifford
    assert not c.is_group
    assert not c.is_left_cancellative and not c.is_right_cancellative
    assert len(c.idempotents) == 3


def test_left_zero_not_inverse():
    c = classify(cat.left_zero(2))
    assert not c.is_inverse


def test_brandt_is_inverse_but_not_clifford():
    c = classify(cat.brandt_b2())
    assert c.is_inverse
    assert not c.is_clifford


def test_inverse_antihomomorphism_on_catalog():
    for S in cat.semigroup_catalog().values():
        c = classify(S)
        if not c.is_inverse:
            continue
        inv = c.inverse.inv
        for x in S.elements():
            for y in S.elements():
                assert inv[S.mul(x, y)] == S.mul(inv[y], inv[x])


def test_pi_fibers_of_direct_product():
    S = cat.semigroup_catalog()["chain2-x-z2"]
    pi, groups = pi_and_subgroups(S)
    assert sorted(len(g) for g in groups.values()) == [2, 2]
    for e, members in groups.items():
        for x in members:
            assert pi[x] == e


def test_pi_on_pure_semilattice_is_identity():
    pi, groups = pi_and_subgroups(cat.diamond_semilattice())
    assert list(pi) == list(range(4))
    assert all(len(g) == 1 for g in groups.values())


def test_group_has_single_fiber():
    _, groups = pi_and_subgroups(cat.symmetric_group_3())
    (members,) = groups.values()
    assert len(members) == 6


def test_bonding_recovered_as_mod_reduction():
    # chain with a Z4 top fiber bonded onto Z2 by reduction mod 2: the map
    # extracted from the assembled table must be reduction mod 2 again
    spec = cat.spec_catalog()["chain2-z4-z2-mod"]
    back = decompose(assemble(spec).semigroup)
    assert back.bonding[(1, 0)] == (0, 1, 0, 1)


def test_bonding_identity_on_diagonal():
    S = cat.semigroup_catalog()["assembled-chain3-z4-z4-z2"]
    dec = bonding_maps(S)
    for (f, e), phi in dec.bonding.items():
        if f == e:
            assert all(phi[x] == x for x in phi)


def test_j_classes_of_group_and_left_zero():
    assert len(green_j_classes(cat.cyclic_group(4))) == 1
    assert len(green_j_classes(cat.left_zero(2))) == 1


def test_j_classes_of_clifford_are_the_fibers():
    S = cat.semigroup_catalog()["assembled-diamond-mixed"]
    _, groups = pi_and_subgroups(S)
    assert sorted(green_j_classes(S)) == sorted(
        tuple(g) for g in groups.values()
    )


def test_trivial_clifford_on_direct_product():
    S = cat.semigroup_catalog()["chain2-x-z3"]
    theta = is_trivial_clifford(S)
    assert theta is not None and len(theta) == 2


def test_trivial_clifford_rejects_shrinking_fibers():
    S = cat.semigroup_catalog()["assembled-chain2-z4-z2-mod"]
    assert is_trivial_clifford(S) is None


def test_trivial_clifford_rejects_collapse_bonding():
    # both fibers are Z2 but the bonding is not bijective, while any
    # theta_e^-1 o theta_f necessarily is
    S = cat.semigroup_catalog()["assembled-chain2-z2-z2-collapse"]
    assert is_trivial_clifford(S) is None


@given(st.integers(min_value=1, max_value=12))
def test_cyclic_groups_classify_as_groups(n):
    c = classify(cat.cyclic_group(n))
    assert c.is_group and c.is_clifford
