import pytest

from algebra.catalog import catalog_names, catalog_semigroup
from algebra.errors import DimensionMismatch, LatticeMismatch
from algebra.modules import Label, RingElement
from algebra.resolution import (
    append_degree,
    augmentation,
    extend_resolution,
    initial_resolution,
    kernel_module_generators,
    mutate_boundary,
    mutation_sites,
    render,
    standard_resolution,
    summarize,
    upgrade_to_subring,
    verify_exact,
    zt_generators_from_zs,
)
from algebra.semigroup import cyclic_group, monoid_completion, trivial_monoid
from algebra.transfer import decomposition_context


@pytest.mark.parametrize("n", [2, 3])
def test_cyclic_groups_have_periodic_resolutions(n):
    r = standard_resolution(cyclic_group(n), 3)
    assert r.ranks == [1, 1, 1, 1]
    report = verify_exact(r)
    assert report.exact
    assert report.first_failure is None
    assert [d.degree for d in report.degrees] == [0, 1, 2, 3]


def test_classical_boundaries_for_z2(z2):
    r = standard_resolution(z2, 2)
    one, g = RingElement.one(z2), RingElement.basis(z2, 1)
    d1 = r.maps[1].images[Label.gen(0, 0)].coefficient(Label.one())
    d2 = r.maps[2].images[Label.gen(1, 0)].coefficient(Label.gen(0, 0))
    assert d1 in (one - g, g - one)
    assert d2 in (one + g, -(one + g))


def test_trivial_monoid_resolution_stops():
    r = standard_resolution(trivial_monoid(), 3)
    assert r.ranks == [1, 0, 0, 0]
    assert verify_exact(r).exact


def test_step_by_step_matches_standard(z3):
    r = initial_resolution(z3)
    X = kernel_module_generators(r.maps[0])
    r = extend_resolution(append_degree(r, X), 2)
    assert r.ranks == standard_resolution(z3, 2).ranks
    assert r.kernel_generators[0] == tuple(X)


def test_append_degree_rejects_foreign_generators(z2, z3):
    r = initial_resolution(z2)
    foreign = initial_resolution(z3).modules[0].basis_element(Label.one())
    with pytest.raises(DimensionMismatch):
        append_degree(r, [foreign])


def test_resolution_over_a_submonoid(chain2):
    r = standard_resolution(chain2, 2, scalars=[2, 3])
    assert r.modules[0].scalars == (2, 3)
    assert verify_exact(r).exact
    assert augmentation(chain2, [2, 3]).domain.unit == 2


def test_summary_counts(band2x2):
    report = summarize(standard_resolution(monoid_completion(band2x2), 2), "band")
    assert report.passed
    assert report.ranks[0] == 1
    assert len(report.kernel_generator_counts) == 2
    assert report.model_dump(by_alias=True)["schema"] == 1


def test_render_lists_every_boundary(z2):
    text = render(standard_resolution(z2, 2))
    assert "ranks [1, 1, 1]" in text
    assert "d1:" in text and "d2:" in text
    assert "[x1.0] ->" in text


# --- Change of scalars ---
def test_upgrade_to_subring(band2x2):
    ctx = decomposition_context(band2x2)
    r = standard_resolution(ctx.S, 2)
    upgraded = upgrade_to_subring(r, ctx.T, ctx.F)
    assert upgraded.scalar_subring == ctx.T
    assert len(ctx.F) == 1
    assert len(upgraded.kernel_generators[0]) == 2 * len(r.kernel_generators[0])
    assert verify_exact(upgraded).exact


def test_zt_generators_are_checked(z3):
    X = kernel_module_generators(initial_resolution(z3).maps[0])
    assert len(X) == 1
    assert zt_generators_from_zs([], [0], []) == []
    assert zt_generators_from_zs(X, z3.elements, []) == X
    with pytest.raises(LatticeMismatch):
        zt_generators_from_zs(X, [0], [])


# --- Mutation sensitivity ---
def test_every_single_mutation_is_caught_at_its_degree(z2):
    r = standard_resolution(z2, 3)
    caught = 0
    for k, label, target in mutation_sites(r):
        for s in z2.elements:
            for delta in (1, -1, 2):
                report = verify_exact(mutate_boundary(r, k, label, target, element=s, delta=delta))
                assert report.first_failure == k
                caught += 1
    assert caught >= 10


def test_mutating_the_augmentation_fails_degree_zero(z3):
    r = standard_resolution(z3, 1)
    report = verify_exact(mutate_boundary(r, 0, Label.one(), delta=1))
    assert report.first_failure == 0
    assert not report.degrees[0].exact


def test_mutation_sites_of_one_degree(z2):
    r = standard_resolution(z2, 2)
    assert {k for k, _, _ in mutation_sites(r, 2)} == {2}
    assert mutation_sites(r, 0) == []


@pytest.mark.slow
@pytest.mark.parametrize("name", catalog_names())
def test_catalog_monoids_resolve_exactly_to_length_three(name):
    M = monoid_completion(catalog_semigroup(name))
    assert verify_exact(standard_resolution(M, 3)).exact
