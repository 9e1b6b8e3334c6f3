import pytest

from algebra.catalog import catalog_semigroup
from algebra.errors import (
    HypothesisViolation,
    NoTwoSidedIdentity,
    NotALeftGroup,
    NotAnIdeal,
    NotARightIdeal,
    NotCompletelySimple,
    NotIdempotent,
)
from algebra.modules import RingElement
from algebra.resolution import mutate_boundary, mutation_sites, standard_resolution, verify_exact
from algebra.rees import make_left_group, make_rectangular_band
from algebra.semigroup import cyclic_group, minimal_ideal, monoid_completion, trivial_monoid
from algebra.transfer import (
    ProductDecomposition,
    completely_simple_pipeline,
    cs_descend,
    decompose_ring_element,
    decomposition_context,
    ideal_identity,
    ideal_lift,
    left_group_context,
    left_group_lift,
    maximal_subgroup_restrict,
    phi_restrict,
)


def all_checks_pass(report):
    return all(all(d.lemma_checks.values()) for d in report.degrees) and report.exactness.exact


def least_idempotent_of_minimal_ideal(M):
    return min(x for x in minimal_ideal(M) if M.mul(x, x) == x)


# --- Restriction to a maximal subgroup ---
def test_restriction_of_a_group_keeps_ranks(z3):
    bundle = maximal_subgroup_restrict(standard_resolution(z3, 3), z3, 0)
    assert bundle.report.passed
    assert [d.rank_out for d in bundle.report.degrees] == [d.rank_in for d in bundle.report.degrees]
    assert bundle.report.context["B_order"] == 1


@pytest.mark.slow
def test_restriction_doubles_ranks_over_two_idempotents(rees_normal):
    M = monoid_completion(rees_normal)
    e = least_idempotent_of_minimal_ideal(M)
    bundle = maximal_subgroup_restrict(standard_resolution(M, 2), M, e)
    assert bundle.report.passed
    assert all(d.rank_out == 2 * d.rank_in for d in bundle.report.degrees)
    assert len(bundle.report.context["H"]) == 2


def test_restriction_of_a_band(band2x2):
    M = monoid_completion(band2x2)
    e = least_idempotent_of_minimal_ideal(M)
    bundle = maximal_subgroup_restrict(standard_resolution(M, 2), M, e)
    assert all_checks_pass(bundle.report)
    assert bundle.report.context["minimal_ideal_l_classes"] == 2


def test_restriction_rejects_bad_idempotents(z2, chain2):
    with pytest.raises(NotIdempotent):
        maximal_subgroup_restrict(standard_resolution(z2, 1), z2, 1)
    with pytest.raises(HypothesisViolation):
        maximal_subgroup_restrict(standard_resolution(chain2, 1), chain2, chain2.identity)


def test_product_decomposition_needs_a_right_ideal(chain2):
    d = ProductDecomposition((0,), trivial_monoid(), trivial_monoid(), {0: (0, 0)})
    with pytest.raises(NotARightIdeal):
        phi_restrict(standard_resolution(chain2, 1), chain2, d, 0)


# --- Ideals with identity ---
def test_ideal_identity(chain2):
    assert ideal_identity(chain2, [2, 3]) == 2


def test_ideal_identity_errors(z3):
    with pytest.raises(NotAnIdeal):
        ideal_identity(z3, [0])
    M = monoid_completion(catalog_semigroup("lz2"))
    with pytest.raises(NoTwoSidedIdentity):
        ideal_identity(M, [x for x in M.elements if x != M.identity])


def test_ideal_lift_through_the_bottom_group(chain2):
    T = [2, 3]
    res_T = standard_resolution(chain2, 3, scalars=T)
    bundle = ideal_lift(res_T, chain2, T)
    report = bundle.report
    assert report.passed
    assert report.context["degenerate"] is False
    assert report.context["e"] == chain2.name(2)
    for d in report.degrees:
        assert d.lemma_checks["rank_formula"]
    assert [d.rank_out for d in report.degrees] == [1, 2, 3, 4]


def test_ideal_lift_through_a_zero():
    S = catalog_semigroup("z2-zero")
    zero = S.order - 1
    bundle = ideal_lift(standard_resolution(S, 3, scalars=[zero]), S, [zero])
    assert bundle.report.passed
    assert [d.rank_out for d in bundle.report.degrees] == [1, 1, 1, 1]


def test_degenerate_ideal_lift(z2):
    bundle = ideal_lift(standard_resolution(z2, 3, scalars=z2.elements), z2, z2.elements)
    assert bundle.report.passed
    assert bundle.report.context["degenerate"] is True


def test_ideal_lift_needs_resolution_over_the_ideal(chain2):
    with pytest.raises(HypothesisViolation):
        ideal_lift(standard_resolution(chain2, 1), chain2, [2, 3])


# --- Descent to the L-class ---
def test_descent_on_a_rectangular_band(band2x2):
    ctx = decomposition_context(band2x2)
    bundle = cs_descend(standard_resolution(ctx.S, 2), ctx, samples=100)
    assert bundle.report.passed
    assert all_checks_pass(bundle.report)
    assert bundle.report.context["upgraded"] is True
    assert bundle.report.notes


def test_descent_from_generating_scalars(band2x2):
    ctx = decomposition_context(band2x2)
    bundle = cs_descend(standard_resolution(ctx.S, 2, generator_scalars=ctx.T), ctx, samples=10)
    assert bundle.report.passed
    assert bundle.report.context["upgraded"] is False
    assert bundle.output.modules[0].scalars == ctx.T


def test_phi_undoes_theta(band2x2):
    ctx = decomposition_context(band2x2)
    bundle = cs_descend(standard_resolution(ctx.S, 1, generator_scalars=ctx.T), ctx, samples=5)
    S = ctx.S
    for m, A in enumerate(bundle.input.modules):
        for label in A.labels:
            a = A.basis_element(label, RingElement.basis(S, 1) + RingElement.basis(S, ctx.one, 2))
            assert bundle.phi(m, bundle.theta(m, a)) == a


@pytest.mark.slow
def test_descent_on_a_rees_matrix_semigroup(rees_normal):
    ctx = decomposition_context(rees_normal)
    bundle = cs_descend(standard_resolution(ctx.S, 2, generator_scalars=ctx.T), ctx, samples=100)
    assert all_checks_pass(bundle.report)
    assert len(ctx.H) == 2


def test_ring_element_decomposition(band2x2):
    ctx = decomposition_context(band2x2)
    S = ctx.S
    lam = RingElement(S, {s: s + 1 for s in S.elements})
    on_t, parts = decompose_ring_element(lam, ctx)
    assert set(on_t.support) <= set(ctx.T)
    assert set(parts) == set(ctx.F)
    total = on_t
    for f, part in parts.items():
        assert all(ctx.class_of[s] == f for s in part.support)
        total = total + part
    assert total == lam


def test_context_errors(chain2, band2x2, left_group_z2):
    with pytest.raises(NotCompletelySimple):
        decomposition_context(chain2)
    with pytest.raises(NotALeftGroup):
        left_group_context(band2x2)
    lg = left_group_context(left_group_z2)
    with pytest.raises(HypothesisViolation):
        decompose_ring_element(RingElement.one(lg.S), lg)
    with pytest.raises(HypothesisViolation):
        cs_descend(standard_resolution(lg.S, 1), lg)
    ctx = decomposition_context(band2x2)
    with pytest.raises(NotALeftGroup):
        left_group_lift(standard_resolution(ctx.S, 1, scalars=ctx.H), ctx)


# --- Left groups ---
@pytest.mark.parametrize("name,lz", [("lgroup-z2-lz2", 2), ("lgroup-z3-lz2", 2), ("lgroup-1-lz3", 3)])
def test_left_group_lift(name, lz):
    ctx = left_group_context(catalog_semigroup(name))
    res_H = standard_resolution(ctx.S, 3, scalars=ctx.H)
    bundle = left_group_lift(res_H, ctx)
    assert bundle.report.passed
    assert len(ctx.F) == lz
    X = res_H.kernel_generators
    for d in bundle.report.degrees:
        expected = sum(len(X[i]) for i in range(d.degree)) + lz if d.degree else 1
        assert d.rank_out == expected


def test_left_group_lift_needs_a_group_resolution(left_group_z2):
    ctx = left_group_context(left_group_z2)
    with pytest.raises(HypothesisViolation):
        left_group_lift(standard_resolution(ctx.S, 1), ctx)


# --- End to end ---
def test_pipeline_on_a_rectangular_band(band2x2):
    report = completely_simple_pipeline(band2x2, 2, samples=5, name="band")
    assert report.passed
    assert (report.r_class_count, report.l_class_count) == (2, 2)
    assert report.group_order == 1
    assert report.idempotent_count == 4
    assert report.descent.construction == "cs-descend"


@pytest.mark.slow
def test_pipeline_on_a_rees_matrix_semigroup(rees_normal):
    report = completely_simple_pipeline(rees_normal, 2, samples=5)
    assert report.passed
    assert report.group_order == 2


def test_pipeline_rejects_non_simple_input(chain2):
    with pytest.raises(NotCompletelySimple):
        completely_simple_pipeline(chain2, 1)


# --- Mutation of constructed resolutions ---
def restricted_band():
    M = monoid_completion(make_rectangular_band(2, 2))
    return maximal_subgroup_restrict(standard_resolution(M, 2), M, least_idempotent_of_minimal_ideal(M))


def descended_band():
    ctx = decomposition_context(make_rectangular_band(2, 2))
    return cs_descend(standard_resolution(ctx.S, 2), ctx, samples=5)


def lifted_chain():
    S = catalog_semigroup("chain2")
    return ideal_lift(standard_resolution(S, 3, scalars=[2, 3]), S, [2, 3])


def lifted_left_group():
    ctx = left_group_context(make_left_group(cyclic_group(2), 2))
    return left_group_lift(standard_resolution(ctx.S, 3, scalars=ctx.H), ctx)


@pytest.mark.parametrize("build", [
    pytest.param(restricted_band, id="restriction"),
    pytest.param(descended_band, id="descent", marks=pytest.mark.slow),
    pytest.param(lifted_chain, id="ideal"),
    pytest.param(lifted_left_group, id="left-group"),
])
def test_every_mutation_of_a_constructed_resolution_is_caught(build):
    output = build().output
    assert verify_exact(output).exact
    sites = mutation_sites(output)
    assert len(sites) >= 10
    missed = [(k, label, target) for k, label, target in sites
              if verify_exact(mutate_boundary(output, k, label, target)).first_failure != k]
    assert missed == []
