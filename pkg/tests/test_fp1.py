from itertools import chain, combinations

import pytest

from algebra.catalog import catalog_semigroup, catalog_spec
from algebra.errors import (
    InputNotAWitness,
    NotALeftIdeal,
    NotAMonoid,
    NotASubgroup,
    NotCompletelySimple,
    SearchCapExceeded,
)
from algebra.formats import semilattice_from_spec
from algebra.fp1 import (
    bi_fp_report,
    cs_fp1_certificate,
    fp1_equivalence_report,
    fp1_report,
    genset_report,
    ideal_witness_lift,
    kobayashi_check,
    minimal_ideal_certificate_transfer,
    minimal_ru_genset,
    relative_rank,
    relative_rank_witness,
    semilattice_fp_report,
)
from algebra.semigroup import cyclic_group, monoid_completion
from conftest import small_catalog_monoids


def cayley_connected(S, A):
    """Union-find over the undirected right Cayley graph."""
    parent = list(S.elements)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in S.elements:
        for a in A:
            parent[find(s)] = find(S.mul(s, a))
    return len({find(s) for s in S.elements}) == 1


def all_subsets(elements):
    elements = list(elements)
    return chain.from_iterable(combinations(elements, k) for k in range(len(elements) + 1))


@pytest.mark.parametrize("name,M", small_catalog_monoids(6))
def test_closure_and_connectivity_agree_on_every_subset(name, M):
    for A in all_subsets(M.elements):
        witness = kobayashi_check(M, A)
        assert witness.connected == cayley_connected(M, A)
        assert witness.passed == witness.closure_is_all


def test_kobayashi_report(z2):
    report = kobayashi_check(z2, [1]).report()
    assert report.passed
    assert report.closure == z2.names_of(z2.elements)


def test_kobayashi_needs_a_monoid(band2x2):
    with pytest.raises(NotAMonoid):
        kobayashi_check(band2x2, [0])
    with pytest.raises(NotAMonoid):
        minimal_ru_genset(band2x2, 2)


# --- Minimal generating sets ---
def test_cyclic_groups_need_one_generator():
    assert minimal_ru_genset(cyclic_group(2), 3) == (1, (1,))
    assert minimal_ru_genset(cyclic_group(6), 3) == (1, (1,))


def test_trivial_monoid_needs_nothing():
    assert minimal_ru_genset(catalog_semigroup("trivial"), 3) == (0, ())


@pytest.mark.parametrize("name", ["band2x2", "band2x3"])
def test_rectangular_bands_need_two(name):
    U = catalog_semigroup(name)
    found = minimal_ru_genset(monoid_completion(U), 4)
    assert found[0] == 2
    assert cs_fp1_certificate(U).witness_size == 2


def test_cap_below_the_minimum(z2):
    report = genset_report(z2, 0)
    assert not report.passed
    assert report.size is None and report.witness is None


def test_search_cap():
    with pytest.raises(SearchCapExceeded):
        minimal_ru_genset(cyclic_group(6), 3, order_cap=3)


# --- Relative rank ---
def test_relative_ranks():
    assert relative_rank(cyclic_group(6), {0}) == 1
    klein = catalog_semigroup("klein4")
    assert relative_rank(klein, {klein.identity}) == 2
    assert relative_rank(cyclic_group(2), {0, 1}) == 0
    assert relative_rank_witness(cyclic_group(6), {0}) == (1,)


def test_relative_rank_needs_a_subgroup(band2x2, z3):
    with pytest.raises(NotASubgroup):
        relative_rank(band2x2, {0})
    with pytest.raises(NotASubgroup):
        relative_rank(z3, {1})


# --- Completely simple certificates ---
def test_certificate_for_a_band(band2x2):
    report = cs_fp1_certificate(band2x2)
    assert report.passed
    assert report.relative_rank == 0
    assert (report.r_class_count, report.l_class_count) == (2, 2)
    assert len(report.F) == 2


def test_certificate_for_a_rees_matrix_semigroup(rees_normal):
    report = cs_fp1_certificate(rees_normal)
    assert report.passed
    assert report.group_order == 2
    assert report.subgroup_order == 2
    assert report.relative_rank == 0
    assert report.witness_size == 2


def test_certificate_for_a_group(z3):
    report = cs_fp1_certificate(z3)
    assert report.passed
    assert report.relative_rank == 1
    assert report.kobayashi.connected


def test_certificate_rejects_non_simple_input(chain2):
    with pytest.raises(NotCompletelySimple):
        cs_fp1_certificate(chain2)


# --- Witness transfers ---
@pytest.mark.parametrize("name,J,A", [
    ("band2x2-one", [0, 1, 2, 3], [0, 2]),
    ("z2-zero", [2], [2]),
    ("chain2", [2, 3], [3]),
])
def test_ideal_witness_lift(name, J, A):
    S = catalog_semigroup(name)
    report = ideal_witness_lift(S, J, A)
    assert report.passed
    assert report.produced == report.given


def test_ideal_witness_lift_through_a_zero():
    M = monoid_completion(catalog_semigroup("band2x2-zero"))
    zero = 4
    assert ideal_witness_lift(M, [zero], [zero]).passed


def test_ideal_witness_lift_errors(chain2):
    with pytest.raises(NotALeftIdeal):
        ideal_witness_lift(chain2, [0], [0])
    with pytest.raises(InputNotAWitness):
        ideal_witness_lift(chain2, [2, 3], [1])
    with pytest.raises(InputNotAWitness):
        ideal_witness_lift(chain2, [2, 3], [2])


@pytest.mark.parametrize("name,A", [("band2x2-one", [0, 2]), ("z2-zero", [2])])
def test_minimal_ideal_certificate_transfer(name, A):
    S = catalog_semigroup(name)
    B, report = minimal_ideal_certificate_transfer(S, A)
    assert report.passed
    assert report.produced == S.names_of(B)
    assert ideal_witness_lift(S, report_ideal(S, report), B).passed


def report_ideal(S, report):
    return [S.names.index(x) for x in report.ideal]


def test_transfer_of_the_whole_monoid(rees_normal):
    M = monoid_completion(rees_normal)
    B, report = minimal_ideal_certificate_transfer(M, M.elements)
    assert report.passed
    assert len(report.ideal) == rees_normal.order


def test_transfer_needs_a_witness(z2):
    with pytest.raises(InputNotAWitness):
        minimal_ideal_certificate_transfer(z2, [0])


# --- Reports ---
def test_fp1_report_of_a_group(z2):
    report = fp1_report(z2, 3)
    assert report.passed
    assert report.minimal_genset.size == 1
    assert report.completely_simple is not None
    assert report.ideal_lift.passed


def test_fp1_report_of_a_clifford_monoid(chain2):
    report = fp1_report(chain2, 3)
    assert report.passed
    assert report.completely_simple is None
    assert report.minimal_ideal_transfer.passed


def test_fp1_report_fails_under_a_zero_cap(z2):
    report = fp1_report(z2, 0)
    assert not report.passed
    assert not report.minimal_genset.passed


def test_equivalence_report(band2x2):
    report = fp1_equivalence_report(band2x2, 3)
    assert report.passed
    assert report.left.size == report.right.size == 2
    assert report.relative_rank.rank == 0
    assert len(report.minimal_ideal) == 4


@pytest.mark.parametrize("name", ["chain2", "diamond"])
def test_semilattice_report(name):
    data = semilattice_from_spec(catalog_spec(name))
    report = semilattice_fp_report(data, 3)
    assert report.passed
    assert report.agrees
    assert report.minimum == "bottom"
    assert report.lift.construction == "ideal"


def test_semilattice_report_sizes():
    report = semilattice_fp_report(semilattice_from_spec(catalog_spec("chain2")), 2)
    assert report.order == 4
    assert report.component_order == 2


def test_bi_report(band2x2, z3):
    report = bi_fp_report(band2x2, 2, 3, name="band")
    assert report.bi_fp and report.passed
    assert not report.commutative
    assert report.right.semigroup == "band^op"
    assert report.left_genset.size == 2
    assert bi_fp_report(z3, 2, 3).commutative
