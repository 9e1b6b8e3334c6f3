"""Explicit transfers of partial free resolutions between a monoid and its
subsemigroups, each checked on the instance it builds.

Constructions:

* ``phi_restrict`` / ``maximal_subgroup_restrict``: restrict a Z[S]
  resolution along e*(-) to a submonoid M of a right ideal R = M x B.
* ``ideal_lift``: lift a resolution of an ideal T with identity e to S.
* ``cs_descend``: pass from S = U^1 (U completely simple) down to T = L^1.
* ``left_group_lift``: pass from a maximal subgroup H of a left group L up
  to T = L^1.

Every construction returns a :class:`TransferBundle`; a bundle whose checks
fail is never returned, :class:`VerificationFailed` is raised instead.
"""
import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from algebra.errors import (
    HypothesisViolation,
    IsoCheckFailed,
    NoTwoSidedIdentity,
    NotALeftGroup,
    NotAMonoid,
    NotAnIdeal,
    NotARightIdeal,
    NotCompletelySimple,
    NotIdempotent,
    NotRightZero,
    VerificationFailed,
)
from algebra.lattice import RowLattice, kernel_basis, lattice_equal
from algebra.modules import (
    FreeModule,
    Label,
    ModuleElement,
    ModuleMap,
    RingElement,
    is_zero_image,
    random_module_element,
    random_ring_element,
    z_matrix_of,
)
from algebra.resolution import (
    Resolution,
    augmentation,
    kernel_module_generators,
    orbit_lattice,
    standard_resolution,
    upgrade_to_subring,
    verify_exact,
)
from algebra.semigroup import (
    FiniteSemigroup,
    adjoin_identity,
    green_classes,
    idempotents,
    is_completely_simple,
    maximal_subgroup,
    minimal_ideal,
    subsemigroup,
)
from models.schema import BundleDegree, BundleReport, ExactnessReport, PipelineReport

logger = logging.getLogger(__name__)


# === Contexts ===

@dataclass(frozen=True)
class DecompositionContext:
    """Distinguished data of a completely simple U inside S.

    ``kind`` is ``"descent"`` (F = idempotents of R_e other than e, used to
    pass from S = U^1 to T) or ``"left_group"`` (U is the left group L itself,
    F = E(L)). ``class_of`` sends every element of U outside L to the f in F
    whose L-class holds it.
    """

    kind: str
    S: FiniteSemigroup
    U: Tuple[int, ...]
    e: int
    L: Tuple[int, ...]
    R: Tuple[int, ...]
    H: Tuple[int, ...]
    T: Tuple[int, ...]
    F: Tuple[int, ...]
    class_of: Mapping[int, int] = field(default_factory=dict)
    r_class_count: int = 1
    l_class_count: int = 1

    @property
    def one(self) -> int:
        return self.S.identity

    def describe(self) -> Dict[str, Any]:
        S = self.S
        return {
            "kind": self.kind,
            "e": S.name(self.e),
            "F": S.names_of(self.F),
            "L": S.names_of(self.L),
            "T": S.names_of(self.T),
            "H": S.names_of(self.H),
            "r_class_count": self.r_class_count,
            "l_class_count": self.l_class_count,
        }


def _cs_context_in(S: FiniteSemigroup, U: Sequence[int], kind: str) -> DecompositionContext:
    U = tuple(sorted(U))
    sub, emb = subsemigroup(S, U)
    if not is_completely_simple(sub):
        raise NotCompletelySimple("the distinguished part is not completely simple")
    green = green_classes(sub)
    e_local = min(idempotents(sub))
    e = emb[e_local]
    L = tuple(emb[x] for x in green.l_class_of(e_local))
    R = tuple(emb[x] for x in green.r_class_of(e_local))
    H = tuple(emb[x] for x in green.h_class_of(e_local))
    T = tuple(sorted(set(L) | {S.identity}))
    class_of: Dict[int, int] = {}
    if kind == "descent":
        F = tuple(sorted(x for x in R if S.mul(x, x) == x and x != e))
        for f in F:
            for x in green.l_class_of(emb.index(f)):
                class_of[emb[x]] = f
        if len(F) != len(green.l_classes) - 1:
            raise HypothesisViolation("F-bijection", "F does not biject with the other L-classes")
    else:
        if len(green.l_classes) != 1:
            raise NotALeftGroup("a left group has a single L-class")
        F = tuple(sorted(x for x in L if S.mul(x, x) == x))
    return DecompositionContext(
        kind, S, U, e, L, R, H, T, F, MappingProxyType(class_of),
        len(green.r_classes), len(green.l_classes),
    )


def decomposition_context(U: FiniteSemigroup) -> DecompositionContext:
    """Context for the descent from S = U^1 to T = L_e^1, e the least idempotent."""
    if not is_completely_simple(U):
        raise NotCompletelySimple("decomposition needs a completely simple semigroup")
    S = adjoin_identity(U)
    return _cs_context_in(S, range(U.order), "descent")


def left_group_context(L: FiniteSemigroup) -> DecompositionContext:
    """Context for lifting from H_e to T = L^1 for a left group L."""
    if not is_completely_simple(L) or len(green_classes(L).l_classes) != 1:
        raise NotALeftGroup("input is not a left group")
    T = adjoin_identity(L)
    return _cs_context_in(T, range(L.order), "left_group")


def left_group_context_in(ctx: DecompositionContext) -> DecompositionContext:
    """The left group L of a descent context, seen inside the same S."""
    return _cs_context_in(ctx.S, ctx.L, "left_group")


def decompose_ring_element(lam: RingElement, ctx: DecompositionContext
                           ) -> Tuple[RingElement, Dict[int, RingElement]]:
    """lam = lam1 + sum of lam_f with lam1 on T and lam_f on L_f."""
    if ctx.kind != "descent":
        raise HypothesisViolation("context", "ring decomposition needs a descent context")
    T = set(ctx.T)
    on_t: Dict[int, int] = {}
    parts: Dict[int, Dict[int, int]] = {f: {} for f in ctx.F}
    for s, c in lam.terms.items():
        if s in T:
            on_t[s] = c
        else:
            parts[ctx.class_of[s]][s] = c
    S = lam.monoid
    return RingElement(S, on_t), {f: RingElement(S, terms) for f, terms in parts.items()}


# === Bundles ===

@dataclass(frozen=True)
class TransferBundle:
    construction: str
    input: Resolution
    output: Resolution
    kernel_generator_sets: Tuple[Tuple[ModuleElement, ...], ...]
    report: BundleReport
    decomposition: Optional[DecompositionContext] = None
    theta: Optional[Callable[[int, ModuleElement], ModuleElement]] = None
    phi: Optional[Callable[[int, ModuleElement], ModuleElement]] = None


def _finish(construction: str, source: Resolution, output: Resolution,
            degrees: List[BundleDegree], Y: Sequence[Sequence[ModuleElement]],
            context: Dict[str, Any], notes: Optional[List[str]] = None,
            **extra) -> TransferBundle:
    exactness = verify_exact(output)
    for d in degrees:
        d.exact = exactness.degrees[d.degree].exact
    passed = exactness.exact and all(all(d.lemma_checks.values()) for d in degrees)
    report = BundleReport(
        construction=construction, context=context, degrees=degrees,
        exactness=exactness, passed=passed, notes=notes or [],
    )
    if not passed:
        logger.warning("%s failed: %s", construction, ", ".join(report.failed_checks))
        raise VerificationFailed(f"{construction} failed verification", report=report)
    logger.info("%s verified to length %d, ranks %s", construction, output.length, output.ranks)
    return TransferBundle(construction, source, output, tuple(tuple(y) for y in Y), report, **extra)


def _kernel_lattice(f: ModuleMap) -> RowLattice:
    return RowLattice.from_matrix(kernel_basis(z_matrix_of(f)))


def _kernel_elements(f: ModuleMap) -> List[ModuleElement]:
    return [f.domain.unflatten(list(row)) for row in kernel_basis(z_matrix_of(f)).entries]


def _y_checks(f: ModuleMap, Y: Sequence[ModuleElement], acting: Iterable[int]) -> Dict[str, bool]:
    in_kernel = all(is_zero_image(f.apply(y)) for y in Y)
    spans = lattice_equal(orbit_lattice(Y, f.domain, acting), _kernel_lattice(f))
    return {"y_in_kernel": in_kernel, "y_spans_kernel": spans}


def _check_standard(r: Resolution, what: str) -> None:
    A0 = r.modules[0]
    if A0.labels != (Label.one(),) or r.maps[0].images[Label.one()] != 1:
        raise HypothesisViolation(what, "degree 0 must be the augmentation of the ring itself")
    for k in range(1, len(r.modules)):
        X = r.kernel_generators[k - 1]
        labels = tuple(Label.gen(k - 1, i) for i in range(len(X)))
        if r.modules[k].labels != labels or any(r.maps[k].images[b] != x for b, x in zip(labels, X)):
            raise HypothesisViolation(what, f"degree {k} is not free on the recorded generators")


def _ring(S: FiniteSemigroup, *terms: Tuple[int, int]) -> RingElement:
    out = RingElement.zero(S)
    for s, c in terms:
        out = out + RingElement.basis(S, s, c)
    return out


def _parity_strata(m: int, i: int) -> str:
    """For a label from X_i in degree m (i < m - 1): which multiplier applies."""
    return "one_minus_e" if (m - 1 - i) % 2 == 1 else "e"


# === Restriction along e*(-) ===

@dataclass(frozen=True)
class ProductDecomposition:
    """A right ideal R of S with coordinates r -> (n, b) in N x B."""

    ideal: Tuple[int, ...]
    factor: FiniteSemigroup
    right_zero: FiniteSemigroup
    coordinates: Mapping[int, Tuple[int, int]]


def _check_product(S: FiniteSemigroup, d: ProductDecomposition) -> Dict[Tuple[int, int], int]:
    R = set(d.ideal)
    if any(S.mul(r, s) not in R for r in R for s in S.elements):
        raise NotARightIdeal("R is not closed under right multiplication by S")
    B = d.right_zero
    if any(B.mul(b, c) != c for b in B.elements for c in B.elements):
        raise NotRightZero("B is not a right zero semigroup")
    N = d.factor
    if N.identity is None:
        raise NotAMonoid("the factor N must be a monoid")
    inverse = {v: r for r, v in d.coordinates.items()}
    if set(d.coordinates) != R or len(inverse) != len(R) or len(R) != N.order * B.order:
        raise IsoCheckFailed("coordinates are not a bijection R -> N x B")
    for r1 in R:
        n1, b1 = d.coordinates[r1]
        for r2 in R:
            n2, b2 = d.coordinates[r2]
            if d.coordinates[S.mul(r1, r2)] != (N.mul(n1, n2), B.mul(b1, b2)):
                raise IsoCheckFailed("coordinates do not preserve products")
    return inverse


def phi_restrict(res_S: Resolution, S: FiniteSemigroup, decomposition: ProductDecomposition,
                 y: int) -> TransferBundle:
    """Restrict res_S to M = {(n, y)} through A -> eA, e = (1, y).

    eA_i is free over Z[M] on f*[b] for f = (1, b') and b a basis label of A_i.
    """
    inverse = _check_product(S, decomposition)
    N, B = decomposition.factor, decomposition.right_zero
    if tuple(res_S.modules[0].scalars) != tuple(S.elements):
        raise HypothesisViolation("scalars", "the input must be a resolution over Z[S]")
    coords = decomposition.coordinates
    e = inverse[(N.identity, y)]
    M = tuple(sorted(inverse[(n, y)] for n in N.elements))
    F = tuple(inverse[(N.identity, b)] for b in B.elements)

    def split(r: int) -> Tuple[int, int]:
        n, b = coords[r]
        return inverse[(n, y)], inverse[(N.identity, b)]

    modules = [
        FreeModule.over(S, [Label.scaled(f, b) for b in A.labels for f in F], M)
        for A in res_S.modules
    ]

    def restrict(k: int, alpha: ModuleElement) -> ModuleElement:
        target = modules[k]
        acc: Dict[Label, Dict[int, int]] = {}
        for b, lam in alpha.coefficients.items():
            for r, c in lam.terms.items():
                if r not in coords:
                    raise HypothesisViolation("restriction", f"{S.name(r)} lies outside R")
                m, f = split(r)
                slot = acc.setdefault(Label.scaled(f, b), {})
                slot[m] = slot.get(m, 0) + c
        return ModuleElement(target, {lab: RingElement(S, t) for lab, t in acc.items()})

    maps: List[ModuleMap] = [ModuleMap(modules[0], FreeModule.integers(), {lab: 1 for lab in modules[0].labels})]
    for k in range(1, len(res_S.modules)):
        images = {}
        for b in res_S.modules[k].labels:
            boundary = res_S.maps[k].images[b]
            for f in F:
                images[Label.scaled(f, b)] = restrict(k - 1, boundary.act(RingElement.basis(S, f)))
        maps.append(ModuleMap(modules[k], modules[k - 1], images))

    kernels = tuple(tuple(kernel_module_generators(maps[k], M)) for k in range(len(maps) - 1))
    output = Resolution(S, tuple(modules), tuple(maps), kernels)
    e_s = {S.mul(e, s) for s in S.elements}
    degrees = []
    for k, A in enumerate(res_S.modules):
        degrees.append(BundleDegree(
            degree=k, rank_in=A.rank, rank_out=modules[k].rank, exact=False,
            y_size=len(kernels[k]) if k < len(kernels) else None,
            lemma_checks={
                "rank_multiplied": modules[k].rank == A.rank * B.order,
                "free_basis": modules[k].dimension == A.rank * len(decomposition.ideal),
            },
        ))
    degrees[0].lemma_checks["e_generates_R"] = e_s == set(decomposition.ideal)
    context = {
        "e": S.name(e), "M": S.names_of(M), "F": S.names_of(F),
        "B_order": B.order, "R": S.names_of(sorted(decomposition.ideal)),
    }
    return _finish("phi", res_S, output, degrees, kernels, context)


def maximal_subgroup_restrict(res_S: Resolution, S: FiniteSemigroup, e: int) -> TransferBundle:
    """Restrict to the maximal subgroup H_e of a completely simple minimal ideal."""
    if S.mul(e, e) != e:
        raise NotIdempotent(f"{S.name(e)} is not idempotent", element=e)
    U = minimal_ideal(S)
    if e not in U:
        raise HypothesisViolation("minimal-ideal", f"{S.name(e)} is not in the minimal ideal")
    sub, _ = subsemigroup(S, U)
    if not is_completely_simple(sub):
        raise NotCompletelySimple("the minimal ideal is not completely simple")
    R = tuple(sorted({S.mul(e, s) for s in S.elements}))
    F = tuple(sorted(x for x in R if S.mul(x, x) == x))
    group, members = maximal_subgroup(S, e)
    h_pos = {x: i for i, x in enumerate(members)}
    f_pos = {f: i for i, f in enumerate(F)}
    coordinates = {}
    for r in R:
        fs = [f for f in F if S.mul(r, f) == r]
        if len(fs) != 1:
            raise IsoCheckFailed(f"{S.name(r)} has {len(fs)} idempotent right identities in R")
        coordinates[r] = (h_pos[S.mul(r, e)], f_pos[fs[0]])
    right, _ = subsemigroup(S, F)
    decomposition = ProductDecomposition(R, group, right, MappingProxyType(coordinates))
    bundle = phi_restrict(res_S, S, decomposition, f_pos[e])
    bundle.report.context.update({
        "H": S.names_of(members),
        "minimal_ideal_l_classes": len(green_classes(sub).l_classes),
    })
    return bundle


# === Ideal with identity ===

def ideal_identity(S: FiniteSemigroup, T: Sequence[int]) -> int:
    members = set(T)
    if any(S.mul(s, t) not in members or S.mul(t, s) not in members for s in S.elements for t in members):
        raise NotAnIdeal("T is not a two-sided ideal of S")
    for e in sorted(members):
        if all(S.mul(e, t) == t == S.mul(t, e) for t in members):
            return e
    raise NoTwoSidedIdentity("the ideal has no two-sided identity")


def ideal_lift(res_T: Resolution, S: FiniteSemigroup, T: Iterable[int]) -> TransferBundle:
    """Resolution of Z over Z[S] from one over Z[T], T an ideal with identity e.

    B_i is free on [x] for x in X_j (j < i) and one extra [e].
    """
    T = tuple(sorted(set(T)))
    e = ideal_identity(S, T)
    if res_T.monoid != S or tuple(res_T.modules[0].scalars) != T:
        raise HypothesisViolation("scalars", "the input must resolve Z over Z[T] inside S")
    _check_standard(res_T, "ideal-input")
    n = res_T.length
    X = res_T.kernel_generators
    one = RingElement.one(S)
    e_ring = RingElement.basis(S, e)
    one_minus_e = one - e_ring
    idem = Label.idem(e)

    modules: List[FreeModule] = [FreeModule.over(S, [Label.one()])]
    for i in range(1, n + 1):
        labels = [Label.gen(j, k) for j in range(i - 1, -1, -1) for k in range(len(X[j]))]
        modules.append(modules[0].with_labels(labels + [idem]))

    maps: List[ModuleMap] = [augmentation(S)]
    for i in range(1, n + 1):
        B, below = modules[i], modules[i - 1]
        images: Dict[Label, ModuleElement] = {}
        for j in range(i - 1, -1, -1):
            for k, x in enumerate(X[j]):
                label = Label.gen(j, k)
                if j == i - 1:
                    images[label] = x.moved_to(below)
                elif _parity_strata(i, j) == "one_minus_e":
                    images[label] = below.basis_element(label, one_minus_e)
                else:
                    images[label] = below.basis_element(label, e_ring)
        if i == 1:
            images[idem] = below.basis_element(Label.one(), one_minus_e)
        elif i % 2 == 0:
            images[idem] = below.basis_element(idem, e_ring)
        else:
            images[idem] = below.basis_element(idem, one_minus_e)
        maps.append(ModuleMap(B, below, images))

    Y: List[List[ModuleElement]] = []
    for k in range(n):
        B = modules[k]
        if k == 0:
            Yk = [x.moved_to(B) for x in X[0]] + [B.basis_element(Label.one(), one_minus_e)]
        else:
            Yk = [x.moved_to(B) for x in X[k]]
            for j in range(k - 1, -1, -1):
                mult = one_minus_e if (k - 1 - j) % 2 == 0 else e_ring
                Yk.extend(B.basis_element(Label.gen(j, idx), mult) for idx in range(len(X[j])))
            Yk.append(B.basis_element(idem, e_ring if k % 2 == 1 else one_minus_e))
        Y.append(Yk)

    output = Resolution(S, tuple(modules), tuple(maps), tuple(tuple(y) for y in Y))
    degrees = []
    for i in range(n + 1):
        checks = {"rank_formula": modules[i].rank == (sum(len(X[j]) for j in range(i)) + 1 if i else 1)}
        if i < n:
            checks.update(_y_checks(maps[i], Y[i], S.elements))
        degrees.append(BundleDegree(
            degree=i, rank_in=res_T.modules[i].rank, rank_out=modules[i].rank, exact=False,
            y_size=len(Y[i]) if i < n else None, lemma_checks=checks,
        ))
    context = {"e": S.name(e), "T": S.names_of(T), "degenerate": len(T) == S.order}
    return _finish("ideal", res_T, output, degrees, Y, context)


# === Descent from S = U^1 to T = L^1 ===

class _Descent:
    """theta: A_m -> B_m and phi: B_m -> A_m for one descent instance."""

    def __init__(self, res: Resolution, ctx: DecompositionContext):
        self.res, self.ctx, self.S = res, ctx, ctx.S
        self.X = res.kernel_generators
        self.n = res.length
        S, e, F = self.S, ctx.e, ctx.F
        base = FreeModule.over(S, [Label.idem(e)] + [Label.idem(f) for f in F], ctx.T)
        self.modules: List[FreeModule] = [base]
        for m in range(1, self.n + 1):
            labels = [Label.gen(m - 1, k) for k in range(len(self.X[m - 1]))]
            labels += [Label.pair(f, i, k) for i in range(m - 1, -1, -1)
                       for k in range(len(self.X[i])) for f in F]
            labels += [Label.idem(f) for f in F]
            self.modules.append(base.with_labels(labels))
        self.e_ring = RingElement.basis(S, e)
        self.one_minus_e = RingElement.one(S) - self.e_ring

    def theta(self, m: int, alpha: ModuleElement) -> ModuleElement:
        ctx, B = self.ctx, self.modules[m]
        coefficients: Dict[Label, RingElement] = {}
        for label, lam in alpha.coefficients.items():
            lam1, parts = decompose_ring_element(lam, ctx)
            if m == 0:
                coefficients[Label.idem(ctx.e)] = lam1
                for f, part in parts.items():
                    coefficients[Label.idem(f)] = part * self.e_ring
            else:
                coefficients[label] = lam1
                for f, part in parts.items():
                    coefficients[Label.pair(f, label.degree, label.index)] = part * self.e_ring
        return ModuleElement(B, coefficients)

    def phi(self, m: int, beta: ModuleElement) -> ModuleElement:
        A, S = self.res.modules[m], self.S
        out = A.zero()
        for label, lam in beta.coefficients.items():
            if m == 0:
                mult = lam if label.element == self.ctx.e else lam * RingElement.basis(S, label.element)
                out = out + A.basis_element(Label.one(), mult)
            elif label.kind == "gen":
                out = out + A.basis_element(label, lam)
            elif label.kind == "pair" and label.degree == m - 1:
                out = out + A.basis_element(label.base, lam * RingElement.basis(S, label.element))
        return out

    def boundary(self) -> List[ModuleMap]:
        S, F = self.S, self.ctx.F
        maps = [ModuleMap(self.modules[0], FreeModule.integers(), {b: 1 for b in self.modules[0].labels})]
        for m in range(1, self.n + 1):
            B, below = self.modules[m], self.modules[m - 1]
            images: Dict[Label, ModuleElement] = {}
            for k, x in enumerate(self.X[m - 1]):
                images[Label.gen(m - 1, k)] = self.theta(m - 1, x)
            for i in range(m - 1, -1, -1):
                for k, x in enumerate(self.X[i]):
                    for f in F:
                        label = Label.pair(f, i, k)
                        if i == m - 1:
                            images[label] = self.theta(m - 1, x.act(RingElement.basis(S, f)))
                        elif _parity_strata(m, i) == "one_minus_e":
                            images[label] = below.basis_element(label, self.one_minus_e)
                        else:
                            images[label] = below.basis_element(label, self.e_ring)
            for f in F:
                mult = self.e_ring if m % 2 == 0 else self.one_minus_e
                images[Label.idem(f)] = below.basis_element(Label.idem(f), mult)
            maps.append(ModuleMap(B, below, images))
        return maps

    def kernel_sets(self) -> List[List[ModuleElement]]:
        F = self.ctx.F
        Y = []
        for m in range(self.n):
            B = self.modules[m]
            Ym = [self.theta(m, x) for x in self.X[m]]
            for i in range(m - 1, -1, -1):
                mult = self.one_minus_e if (m - 1 - i) % 2 == 0 else self.e_ring
                Ym.extend(B.basis_element(Label.pair(f, i, k), mult)
                          for k in range(len(self.X[i])) for f in F)
            q = self.one_minus_e if m % 2 == 0 else self.e_ring
            Ym.extend(B.basis_element(Label.idem(f), q) for f in F)
            Y.append(Ym)
        return Y


def _sampled(samples: int, check: Callable[[], bool]) -> bool:
    return all(check() for _ in range(samples))


def cs_descend(res_S: Resolution, ctx: DecompositionContext, samples: int = 100,
               seed: int = 0) -> TransferBundle:
    """Resolution of Z over Z[T] from a Z[S] resolution whose X_k generate over Z[T]."""
    if ctx.kind != "descent":
        raise HypothesisViolation("context", "cs_descend needs a descent context")
    S, T = ctx.S, ctx.T
    if res_S.monoid != S or tuple(res_S.modules[0].scalars) != tuple(S.elements):
        raise HypothesisViolation("scalars", "the input must be a resolution over Z[S] for S = U^1")
    _check_standard(res_S, "descent-input")
    notes = []
    upgraded = res_S.scalar_subring is None or tuple(res_S.scalar_subring) != T
    if upgraded:
        res_S = upgrade_to_subring(res_S, T, ctx.F)
        notes.append("kernel generators extended by F*X to generate over Z[T]")
    for k, X in enumerate(res_S.kernel_generators):
        if not lattice_equal(orbit_lattice(X, res_S.modules[k], T), _kernel_lattice(res_S.maps[k])):
            raise HypothesisViolation("zt-generation", f"X_{k} does not generate the kernel over Z[T]")

    d = _Descent(res_S, ctx)
    maps = d.boundary()
    Y = d.kernel_sets()
    output = Resolution(S, tuple(d.modules), tuple(maps), tuple(tuple(y) for y in Y))
    rng = np.random.default_rng(seed)
    pool_S, pool_T = list(S.elements), list(T)

    degrees = []
    for m in range(d.n + 1):
        A, B = res_S.modules[m], d.modules[m]

        def theta_additive() -> bool:
            a, b = random_module_element(rng, A, pool_S), random_module_element(rng, A, pool_S)
            return d.theta(m, a + b) == d.theta(m, a) + d.theta(m, b)

        def theta_equivariant() -> bool:
            lam, a = random_ring_element(rng, S, pool_T), random_module_element(rng, A, pool_S)
            return d.theta(m, a.act(lam)) == d.theta(m, a).act(lam)

        def phi_additive() -> bool:
            a, b = random_module_element(rng, B, pool_T), random_module_element(rng, B, pool_T)
            return d.phi(m, a + b) == d.phi(m, a) + d.phi(m, b)

        def phi_equivariant() -> bool:
            lam, b = random_ring_element(rng, S, pool_T), random_module_element(rng, B, pool_T)
            return d.phi(m, b.act(lam)) == d.phi(m, b).act(lam)

        checks = {
            "theta_additive": _sampled(samples, theta_additive),
            "theta_equivariant": _sampled(samples, theta_equivariant),
            "phi_additive": _sampled(samples, phi_additive),
            "phi_equivariant": _sampled(samples, phi_equivariant),
            "phi_theta_identity": all(
                d.phi(m, d.theta(m, A.basis_element(b, RingElement.basis(S, s)))) == A.basis_element(b, RingElement.basis(S, s))
                for b in A.labels for s in S.elements
            ),
            "phi_maps_kernel": all(is_zero_image(res_S.maps[m].apply(d.phi(m, l))) for l in _kernel_elements(maps[m])),
            "theta_maps_kernel": all(is_zero_image(maps[m].apply(d.theta(m, a))) for a in _kernel_elements(res_S.maps[m])),
        }
        if m < d.n:
            checks.update(_y_checks(maps[m], Y[m], T))
            checks["phi_y_spans_kernel"] = lattice_equal(
                orbit_lattice([d.phi(m, y) for y in Y[m]], A, T), _kernel_lattice(res_S.maps[m]),
            )
        degrees.append(BundleDegree(
            degree=m, rank_in=A.rank, rank_out=B.rank, exact=False,
            y_size=len(Y[m]) if m < d.n else None, lemma_checks=checks,
        ))
    context = dict(ctx.describe(), upgraded=upgraded)
    return _finish("cs-descend", res_S, output, degrees, Y, context, notes,
                   decomposition=ctx, theta=d.theta, phi=d.phi)


# === Lift from H to T = L^1 for a left group L ===

def left_group_lift(res_H: Resolution, ctx: DecompositionContext) -> TransferBundle:
    """Resolution of Z over Z[T] from one over Z[H_e].

    B_m is free on [x] for x in X_i (i < m) and on [f] for f in E(L).
    """
    if ctx.kind != "left_group":
        raise NotALeftGroup("left_group_lift needs a left group context")
    S, T, e, F = ctx.S, ctx.T, ctx.e, ctx.F
    if res_H.monoid != S or tuple(res_H.modules[0].scalars) != tuple(sorted(ctx.H)):
        raise HypothesisViolation("scalars", "the input must resolve Z over Z[H] inside T")
    _check_standard(res_H, "left-group-input")
    n = res_H.length
    X = res_H.kernel_generators
    one = RingElement.one(S)
    e_ring = RingElement.basis(S, e)
    one_minus_e = one - e_ring

    modules: List[FreeModule] = [FreeModule.over(S, [Label.one()], T)]
    for m in range(1, n + 1):
        labels = [Label.gen(i, k) for i in range(m - 1, -1, -1) for k in range(len(X[i]))]
        modules.append(modules[0].with_labels(labels + [Label.idem(f) for f in F]))

    maps: List[ModuleMap] = [augmentation(S, T)]
    for m in range(1, n + 1):
        B, below = modules[m], modules[m - 1]
        images: Dict[Label, ModuleElement] = {}
        for i in range(m - 1, -1, -1):
            for k, x in enumerate(X[i]):
                label = Label.gen(i, k)
                if i == m - 1:
                    images[label] = x.moved_to(below)
                elif _parity_strata(m, i) == "one_minus_e":
                    images[label] = below.basis_element(label, one_minus_e)
                else:
                    images[label] = below.basis_element(label, e_ring)
        for f in F:
            f_ring = RingElement.basis(S, f)
            if m == 1:
                images[Label.idem(f)] = below.basis_element(Label.one(), f_ring - one)
            elif m % 2 == 1:
                images[Label.idem(f)] = below.basis_element(Label.idem(f), f_ring - one)
            else:
                images[Label.idem(f)] = below.basis_element(Label.idem(f), f_ring)
        maps.append(ModuleMap(B, below, images))

    Y: List[List[ModuleElement]] = []
    for m in range(n):
        B = modules[m]
        if m == 0:
            Ym = [x.moved_to(B) for x in X[0]]
            Ym.extend(B.basis_element(Label.one(), one - RingElement.basis(S, f)) for f in F)
        else:
            Ym = [x.moved_to(B) for x in X[m]]
            for i in range(m - 1, -1, -1):
                mult = one_minus_e if (m - 1 - i) % 2 == 0 else e_ring
                Ym.extend(B.basis_element(Label.gen(i, k), mult) for k in range(len(X[i])))
            for f in F:
                f_ring = RingElement.basis(S, f)
                Ym.append(B.basis_element(Label.idem(f), one - f_ring if m % 2 == 0 else f_ring))
        Y.append(Ym)

    output = Resolution(S, tuple(modules), tuple(maps), tuple(tuple(y) for y in Y))
    degrees = []
    for m in range(n + 1):
        expected = sum(len(X[i]) for i in range(m)) + len(F) if m else 1
        checks = {"rank_formula": modules[m].rank == expected}
        if m < n:
            checks.update(_y_checks(maps[m], Y[m], T))
        degrees.append(BundleDegree(
            degree=m, rank_in=res_H.modules[m].rank, rank_out=modules[m].rank, exact=False,
            y_size=len(Y[m]) if m < n else None, lemma_checks=checks,
        ))
    return _finish("left-group", res_H, output, degrees, Y, ctx.describe(), decomposition=ctx)


# === End to end ===

def completely_simple_pipeline(U: FiniteSemigroup, n: int, samples: int = 100, seed: int = 0,
                               name: str = "U") -> PipelineReport:
    """Resolve H, lift it to T, descend from S = U^1 to T, and restrict S to H."""
    ctx = decomposition_context(U)
    lg = left_group_context_in(ctx)
    S = ctx.S
    res_H = standard_resolution(S, n, scalars=ctx.H)
    group_report = verify_exact(res_H)
    lift = left_group_lift(res_H, lg)
    res_S = standard_resolution(S, n, generator_scalars=ctx.T)
    descent = cs_descend(res_S, ctx, samples=samples, seed=seed)
    restriction = maximal_subgroup_restrict(standard_resolution(S, n), S, ctx.e)
    passed = group_report.exact and lift.report.passed and descent.report.passed and restriction.report.passed
    return PipelineReport(
        semigroup=name, length=n,
        r_class_count=ctx.r_class_count, l_class_count=ctx.l_class_count,
        group_order=len(ctx.H), idempotent_count=len(idempotents(U)),
        group_resolution=group_report, left_group_lift=lift.report,
        descent=descent.report, subgroup_restriction=restriction.report,
        passed=passed,
    )
