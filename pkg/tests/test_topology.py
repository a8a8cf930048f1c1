"""Finite topologies on semigroup carriers and the openness equivalences."""

import pytest

from cliffordlab import catalog as cat
from cliffordlab.core import green_j_classes
from cliffordlab.errors import EOutOfU, NotACover
from cliffordlab.semilattice import assemble, direct_product
from cliffordlab.topology import (
    TopologicalSemigroupModel,
    all_topologies,
    basic_set,
    bowman_basic_set,
    continuity_check,
    discrete_topology,
    generate_topology,
    indiscrete_topology,
    mp_check,
    order_graph_closed,
    prop34_equivalences,
    validate_topology,
)


def sierpinski_model():
    S = cat.chain_semilattice(2)
    T = validate_topology(2, [frozenset(), frozenset({1}), frozenset({0, 1})])
    return TopologicalSemigroupModel(S, T)


def test_topology_counts_up_to_four_points():
    for n, expected in ((1, 1), (2, 4), (3, 29), (4, 355)):
        assert sum(1 for _ in all_topologies(n)) == expected


def test_discrete_and_indiscrete_are_always_continuous():
    for S in (cat.cyclic_group(3), cat.brandt_b2(), cat.left_zero(2)):
        for T in (discrete_topology(S.n), indiscrete_topology(S.n)):
            ok, _ = continuity_check(TopologicalSemigroupModel(S, T))
            assert ok


def test_sierpinski_chain_is_continuous():
    ok, _ = continuity_check(sierpinski_model())
    assert ok


def test_mp_holds_on_discrete_fails_on_indiscrete():
    S = cat.semigroup_catalog()["chain2-x-z2"]
    assert mp_check(TopologicalSemigroupModel(S, discrete_topology(S.n)))
    assert not mp_check(TopologicalSemigroupModel(S, indiscrete_topology(S.n)))


def test_mp_trivial_for_a_single_group():
    S = cat.cyclic_group(2)
    assert mp_check(TopologicalSemigroupModel(S, indiscrete_topology(2)))


def test_mp_equals_open_j_classes():
    S = cat.semigroup_catalog()["chain2-x-z2"]
    classes = [frozenset(c) for c in green_j_classes(S)]
    for T in all_topologies(S.n):
        model = TopologicalSemigroupModel(S, T)
        assert mp_check(model) == all(c in T.opens for c in classes)


def test_equivalences_all_true_on_discrete_product():
    S = cat.semigroup_catalog()["chain2-x-z2"]
    rec = prop34_equivalences(
        TopologicalSemigroupModel(S, discrete_topology(S.n))
    )
    assert rec.all_equal() and rec.mp


def test_equivalences_all_false_on_indiscrete_product():
    S = cat.semigroup_catalog()["chain2-x-z2"]
    rec = prop34_equivalences(
        TopologicalSemigroupModel(S, indiscrete_topology(S.n))
    )
    assert rec.all_equal() and not rec.mp


def test_equivalences_all_false_on_sierpinski_chain():
    rec = prop34_equivalences(sierpinski_model())
    assert rec.all_equal() and not rec.mp


def test_order_graph_closed_iff_hausdorff():
    S = cat.chain_semilattice(2)
    cases = [
        (discrete_topology(2), True),
        (indiscrete_topology(2), False),
    ]
    for T, expected in cases:
        closed, hausdorff = order_graph_closed(TopologicalSemigroupModel(S, T))
        assert closed == hausdorff == expected
    closed, hausdorff = order_graph_closed(sierpinski_model())
    assert closed == hausdorff == False  # noqa: E712


def test_basic_set_at_single_idempotent_is_the_fiber():
    A = assemble(cat.spec_catalog()["chain2-z4-z2-mod"])
    fiber = frozenset(A.block(1))
    assert basic_set(A, {1}, 1, set(range(4))) == fiber


def test_basic_set_of_identity_product_is_a_cross_section():
    A = assemble(cat.spec_catalog()["chain2-z2-z2-identity"])
    got = basic_set(A, {0, 1}, 0, {1})
    assert got == frozenset({A.point(0, 1), A.point(1, 1)})


def test_basic_set_collects_the_kernel():
    # Z4 over Z2 by reduction mod 2: the preimage of the identity over the
    # top is the kernel {0, 2} of the mod-2 map
    A = assemble(cat.spec_catalog()["chain2-z4-z2-mod"])
    got = basic_set(A, {0, 1}, 0, {0})
    assert got == frozenset({A.point(0, 0), A.point(1, 0), A.point(1, 2)})


def test_basic_set_requires_anchor_in_u():
    A = assemble(cat.spec_catalog()["chain2-z4-z2-mod"])
    with pytest.raises(EOutOfU):
        basic_set(A, {1}, 0, {0})


def test_bowman_basic_set_of_everything_is_the_carrier():
    A = assemble(cat.spec_catalog()["chain2-z2-z2-identity"])
    got = bowman_basic_set(A, {0, 1}, {0, 1})
    assert got == frozenset(range(A.semigroup.n))


def test_bowman_basic_set_on_singleton_reduces_to_basic_set():
    A = assemble(cat.spec_catalog()["chain2-z4-z2-mod"])
    assert bowman_basic_set(A, {1}, {1}) == basic_set(A, {1}, 1, {1})


def test_generate_topology_from_singletons_is_discrete():
    T = generate_topology(3, [{0}, {1}, {2}])
    assert T.opens == discrete_topology(3).opens


def test_generate_topology_from_carrier_is_indiscrete():
    T = generate_topology(3, [{0, 1, 2}])
    assert T.opens == indiscrete_topology(3).opens


def test_generate_topology_requires_a_cover():
    with pytest.raises(NotACover):
        generate_topology(3, [{0, 1}])


def test_basic_sets_of_identity_product_generate_discrete():
    A = assemble(cat.spec_catalog()["chain2-z2-z2-identity"])
    E = A.spec.E
    sets = []
    for u_mask in range(1, 1 << E.n):
        U = {e for e in E.elements() if u_mask >> e & 1}
        inf_u = min(U)
        for g in A.spec.groups[inf_u].elements():
            sets.append(bowman_basic_set(A, U, {g}))
    sets = [s for s in sets if s]
    T = generate_topology(A.semigroup.n, sets)
    assert T.opens == discrete_topology(A.semigroup.n).opens


def test_prop34_sweep_on_three_element_clifford():
    S = cat.chain_semilattice(3)
    for T in all_topologies(3):
        model = TopologicalSemigroupModel(S, T)
        ok, _ = continuity_check(model)
        if ok:
            assert prop34_equivalences(model).all_equal()
