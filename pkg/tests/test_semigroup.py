import itertools

import pytest

from algebra.errors import BadIdentity, BadTable, EmptyGeneratingSet, NonAssociative, NotIdempotent
from algebra.rees import make_left_group, make_rectangular_band
from algebra.semigroup import (
    adjoin_identity,
    adjoin_zero,
    cyclic_group,
    direct_product,
    full_transformation_monoid,
    generated_subsemigroup,
    green_classes,
    idempotents,
    is_clifford,
    is_completely_simple,
    is_connected_undirected,
    is_group,
    is_regular,
    is_right_unitary,
    klein_four,
    left_zero,
    local_submonoid,
    make_semigroup,
    maximal_subgroup,
    minimal_ideal,
    monoid_completion,
    opposite,
    right_cayley_graph,
    right_unitary_closure,
    right_zero,
    subsemigroup,
    trivial_monoid,
    verify_isomorphism,
    zero_element,
)
from conftest import small_catalog_monoids


def brute_force_closure(S, A):
    """Intersection of every right unitary subsemigroup containing A."""
    out = frozenset(S.elements)
    for size in range(1, S.order + 1):
        for T in itertools.combinations(S.elements, size):
            T = frozenset(T)
            if set(A) <= T and is_right_unitary(S, T):
                out &= T
    return out


# --- Construction ---
def test_non_associative_table_reports_first_triple(non_associative_table):
    with pytest.raises(NonAssociative) as exc:
        make_semigroup(non_associative_table)
    assert exc.value.triple == (0, 0, 0)
    assert exc.value.to_dict()["details"]["triple"] == [0, 0, 0]


@pytest.mark.parametrize("table", [[[0, 1]], [[0, 2], [1, 0]], [], [[0, -1], [0, 0]]])
def test_malformed_tables_are_rejected(table):
    with pytest.raises(BadTable):
        make_semigroup(table)


def test_identity_hint_must_be_an_identity():
    with pytest.raises(BadIdentity):
        make_semigroup([[0, 0], [1, 1]], identity_hint=0)


def test_identity_is_detected():
    assert cyclic_group(3).identity == 0
    assert left_zero(2).identity is None
    assert make_semigroup([[0, 1], [1, 1]], identity_hint=0).is_monoid


def test_default_names():
    assert make_semigroup([[0, 0], [0, 0]]).names == ("x1", "x2")


def test_adjoin_identity_always_adds_a_fresh_element(z2):
    S = adjoin_identity(z2)
    assert S.order == 3
    assert S.identity == 2
    assert S.name(2) == "1'"
    assert monoid_completion(z2) is z2
    assert monoid_completion(left_zero(2)).order == 3


def test_adjoin_zero_and_zero_element(z2):
    S = adjoin_zero(z2)
    assert zero_element(S) == 2
    assert S.identity == 0
    assert S.name(2) == "0"
    assert zero_element(z2) is None


def test_opposite_of_left_zero_is_right_zero():
    assert opposite(left_zero(3)) == right_zero(3)
    assert opposite(opposite(klein_four())) == klein_four()


def test_subsemigroup_and_isomorphism(chain2):
    sub, members = subsemigroup(chain2, [2, 3])
    assert members == (2, 3)
    assert is_group(sub)
    assert verify_isomorphism(sub, cyclic_group(2), [0, 1])
    assert not verify_isomorphism(sub, cyclic_group(2), [1, 0])
    with pytest.raises(BadTable):
        subsemigroup(cyclic_group(3), [1])


def test_full_transformation_monoid():
    T2 = full_transformation_monoid(2)
    assert T2.order == 4
    assert T2.identity == 1
    assert is_regular(T2)
    assert len(minimal_ideal(T2)) == 2
    T3 = full_transformation_monoid(3)
    assert T3.order == 27 and T3.identity == 5
    assert len(minimal_ideal(T3)) == 3
    # constant map then swap is the other constant; swap then constant stays put
    assert T2.mul(0, 2) == 3 and T2.mul(2, 0) == 0
    assert T2.names[2] == "[2 1]"


def test_direct_product_and_local_submonoid(band2x2):
    P = direct_product(cyclic_group(2), cyclic_group(3))
    assert P.order == 6
    assert is_group(P)
    assert local_submonoid(band2x2, 0).order == 1
    with pytest.raises(NotIdempotent):
        local_submonoid(cyclic_group(2), 1)


# --- Structure ---
def test_predicates(band2x2, chain2):
    assert is_group(klein_four()) and not is_group(band2x2)
    assert is_completely_simple(band2x2)
    assert not is_completely_simple(adjoin_zero(cyclic_group(2)))
    assert is_clifford(chain2)
    assert not is_clifford(band2x2)
    assert idempotents(band2x2) == frozenset(range(4))
    assert minimal_ideal(adjoin_zero(cyclic_group(2))) == frozenset({2})


def test_green_classes_of_rectangular_band(band2x2):
    green = green_classes(band2x2)
    assert green.r_classes == ((0, 1), (2, 3))
    assert green.l_classes == ((0, 2), (1, 3))
    assert len(green.h_classes) == 4
    assert green.d_classes == ((0, 1, 2, 3),)
    assert all(green.group_flags)


def test_green_classes_of_left_group(left_group_z2):
    green = green_classes(left_group_z2)
    assert len(green.l_classes) == 1
    assert len(green.r_classes) == 2
    assert sum(green.group_flags) == 2


def test_maximal_subgroup(rees_normal):
    e = min(idempotents(rees_normal))
    group, members = maximal_subgroup(rees_normal, e)
    assert group.order == 2
    assert e in members
    assert is_group(group)


def test_left_zero_green_classes():
    green = green_classes(left_zero(3))
    assert len(green.r_classes) == 3
    assert len(green.l_classes) == 1


# --- Closures and Cayley graphs ---
def test_generated_subsemigroup():
    Z6 = cyclic_group(6)
    assert generated_subsemigroup(Z6, [2]) == frozenset({0, 2, 4})
    with pytest.raises(EmptyGeneratingSet):
        generated_subsemigroup(Z6, [])
    with pytest.raises(EmptyGeneratingSet):
        right_unitary_closure(Z6, [])


@pytest.mark.parametrize("name,M", small_catalog_monoids(5))
def test_right_unitary_closure_matches_brute_force(name, M):
    for size in (1, 2):
        for A in itertools.combinations(M.elements, size):
            assert right_unitary_closure(M, A) == brute_force_closure(M, A), (name, A)


def test_cayley_connectivity():
    Z3 = cyclic_group(3)
    assert is_connected_undirected(right_cayley_graph(Z3, [1]))
    assert not is_connected_undirected(right_cayley_graph(Z3, [0]))
    graph = right_cayley_graph(make_rectangular_band(2, 2), [0]).to_networkx()
    assert graph.number_of_nodes() == 4
    assert graph.number_of_edges() == 4


def test_left_group_is_completely_simple():
    L = make_left_group(cyclic_group(3), 2)
    assert L.order == 6
    assert is_completely_simple(L)
    assert trivial_monoid().order == 1
