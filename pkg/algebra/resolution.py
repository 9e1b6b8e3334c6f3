"""Partial free resolutions of the trivial module and their exactness check."""
import logging
from dataclasses import dataclass
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from algebra.errors import DimensionMismatch, LatticeMismatch, NotAMonoid
from algebra.lattice import LatticeBuilder, RowLattice, kernel_basis, lattice_equal
from algebra.modules import (
    FreeModule,
    Label,
    ModuleElement,
    ModuleMap,
    RingElement,
    is_zero_image,
    z_matrix_of,
)
from algebra.semigroup import FiniteSemigroup
from models.schema import DegreeVerdict, ExactnessReport, ResolutionReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Resolution:
    """A_0 .. A_n with maps[0] = the augmentation and maps[k]: A_k -> A_{k-1}.

    ``kernel_generators[k]`` generates ker maps[k] over the scalars
    ``scalar_subring`` (the module scalars when unset).
    """

    monoid: FiniteSemigroup
    modules: Tuple[FreeModule, ...]
    maps: Tuple[ModuleMap, ...]
    kernel_generators: Tuple[Tuple[ModuleElement, ...], ...] = ()
    scalar_subring: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if len(self.modules) != len(self.maps) or not self.modules:
            raise DimensionMismatch("one map per module is required")
        if not self.maps[0].targets_integers:
            raise DimensionMismatch("degree 0 map must be an augmentation onto Z")
        for k in range(1, len(self.maps)):
            if self.maps[k].domain != self.modules[k] or self.maps[k].codomain != self.modules[k - 1]:
                raise DimensionMismatch(f"map of degree {k} does not fit the modules")

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    @property
    def ranks(self) -> List[int]:
        return [A.rank for A in self.modules]

    @property
    def generating_scalars(self) -> Tuple[int, ...]:
        return self.scalar_subring if self.scalar_subring is not None else self.modules[-1].scalars

    def truncated(self, n: int) -> "Resolution":
        return Resolution(
            self.monoid, self.modules[: n + 1], self.maps[: n + 1],
            self.kernel_generators[:n], self.scalar_subring,
        )


# === Building ===

def augmentation(S: FiniteSemigroup, scalars: Optional[Iterable[int]] = None) -> ModuleMap:
    """The map Z[T] -> Z sending every monoid element to 1 (T = S by default)."""
    if scalars is None and S.identity is None:
        raise NotAMonoid("the augmentation needs a monoid")
    domain = FreeModule.over(S, [Label.one()], scalars)
    return ModuleMap(domain, FreeModule.integers(), {Label.one(): 1})


def kernel_module_generators(f: ModuleMap, scalars: Optional[Iterable[int]] = None) -> List[ModuleElement]:
    """A finite X whose orbit span {t*x} is the integer kernel of f.

    Greedy over the HNF rows of the kernel basis; the result is re-checked
    against the kernel lattice before it is returned.
    """
    domain = f.domain
    acting = tuple(sorted(set(scalars))) if scalars is not None else domain.scalars
    kernel = kernel_basis(z_matrix_of(f))
    builder = LatticeBuilder(domain.dimension)
    generators: List[ModuleElement] = []
    for row in kernel.entries:
        if builder.contains(row):
            continue
        x = domain.unflatten(list(row))
        generators.append(x)
        for t in acting:
            builder.add(domain.flatten(x, by=t))
    if not lattice_equal(builder.lattice(), RowLattice.from_matrix(kernel)):
        raise LatticeMismatch("orbit span of the chosen generators differs from the kernel")
    logger.debug("kernel of rank %d generated by %d elements over %d scalars",
                 kernel.rows, len(generators), len(acting))
    return generators


def append_degree(r: Resolution, generators: Sequence[ModuleElement]) -> Resolution:
    """Add A_{k+1} free on [x] for x in the given generators of ker maps[k]."""
    k = r.length
    top = r.modules[k]
    for x in generators:
        if x.module != top:
            raise DimensionMismatch(f"generator {x.render()} is not in A_{k}")
    labels = [Label.gen(k, i) for i in range(len(generators))]
    module = top.with_labels(labels)
    boundary = ModuleMap(module, top, dict(zip(labels, generators)))
    logger.debug("degree %d: rank %d", k + 1, len(labels))
    return Resolution(
        r.monoid,
        r.modules + (module,),
        r.maps + (boundary,),
        r.kernel_generators + (tuple(generators),),
        r.scalar_subring,
    )


def initial_resolution(S: FiniteSemigroup, scalars: Optional[Iterable[int]] = None,
                       generator_scalars: Optional[Iterable[int]] = None) -> Resolution:
    eps = augmentation(S, scalars)
    subring = tuple(sorted(set(generator_scalars))) if generator_scalars is not None else None
    return Resolution(S, (eps.domain,), (eps,), (), subring)


def extend_resolution(r: Resolution, target_length: int) -> Resolution:
    while r.length < target_length:
        X = kernel_module_generators(r.maps[r.length], r.generating_scalars)
        r = append_degree(r, X)
    return r


def standard_resolution(S: FiniteSemigroup, n: int, scalars: Optional[Iterable[int]] = None,
                        generator_scalars: Optional[Iterable[int]] = None) -> Resolution:
    """Resolve Z over Z[scalars] (Z[S] by default) up to A_n."""
    r = extend_resolution(initial_resolution(S, scalars, generator_scalars), n)
    logger.info("resolved monoid of order %d to length %d, ranks %s", S.order, n, r.ranks)
    return r


def orbit_lattice(elements: Sequence[ModuleElement], module: FreeModule,
                  acting: Iterable[int]) -> RowLattice:
    acting = tuple(acting)
    return RowLattice.from_generators(
        (module.flatten(x, by=t) for x in elements for t in acting), module.dimension,
    )


def zt_generators_from_zs(X: Sequence[ModuleElement], T: Iterable[int],
                          F: Iterable[int]) -> List[ModuleElement]:
    """X followed by f*x for f in F, x in X, checked to span over Z[T] what X spans over Z[S]."""
    X = list(X)
    if not X:
        return []
    module = X[0].module
    T, F = tuple(sorted(set(T))), tuple(sorted(set(F)))
    upgraded = X + [x.act(RingElement.basis(module.monoid, f)) for f in F for x in X]
    if not lattice_equal(orbit_lattice(upgraded, module, T), orbit_lattice(X, module, module.scalars)):
        raise LatticeMismatch("X together with FX does not generate the same module over the submonoid")
    return upgraded


def upgrade_to_subring(r: Resolution, T: Iterable[int], F: Iterable[int]) -> Resolution:
    """Rebuild r so that every recorded X_k generates its kernel over Z[T]."""
    T, F = tuple(sorted(set(T))), tuple(sorted(set(F)))
    out = Resolution(r.monoid, r.modules[:1], r.maps[:1], (), T)
    for k in range(r.length):
        if k < len(r.kernel_generators) and out.modules[k] == r.modules[k]:
            X = list(r.kernel_generators[k])
        else:
            X = kernel_module_generators(out.maps[k], r.modules[k].scalars)
        out = append_degree(out, zt_generators_from_zs(X, T, F))
    return out


# === Exactness ===

def verify_exact(r: Resolution) -> ExactnessReport:
    """Entry 0 checks that the augmentation is onto Z; entry k >= 1 checks
    maps[k-1] o maps[k] == 0 and im maps[k] == ker maps[k-1] as lattices."""
    degrees: List[DegreeVerdict] = []
    counts = [len(X) for X in r.kernel_generators]

    eps_column = [row[0] for row in z_matrix_of(r.maps[0]).entries]
    content = 0
    for v in eps_column:
        content = gcd(content, v)
    A0 = r.modules[0]
    degrees.append(DegreeVerdict(
        degree=0, rank=A0.rank, dimension=A0.dimension,
        kernel_generators=counts[0] if counts else None,
        composition_zero=True, image_rank=1 if content else 0,
        kernel_rank=None, exact=content == 1,
    ))

    for k in range(1, len(r.maps)):
        f, below = r.maps[k], r.maps[k - 1]
        composition_zero = all(is_zero_image(below.apply(f.images[b])) for b in f.domain.labels)
        image = RowLattice.from_matrix(z_matrix_of(f))
        kernel = RowLattice.from_matrix(kernel_basis(z_matrix_of(below)))
        exact = composition_zero and lattice_equal(image, kernel)
        A = r.modules[k]
        degrees.append(DegreeVerdict(
            degree=k, rank=A.rank, dimension=A.dimension,
            kernel_generators=counts[k] if k < len(counts) else None,
            composition_zero=composition_zero, image_rank=image.rank,
            kernel_rank=kernel.rank, exact=exact,
        ))

    failures = [d.degree for d in degrees if not d.exact]
    if failures:
        logger.warning("resolution fails exactness at degree %d", failures[0])
    return ExactnessReport(
        monoid_order=r.monoid.order,
        scalar_count=len(r.modules[0].scalars),
        length=r.length,
        degrees=degrees,
        exact=not failures,
        first_failure=failures[0] if failures else None,
    )


def summarize(r: Resolution, name: str) -> ResolutionReport:
    exactness = verify_exact(r)
    return ResolutionReport(
        semigroup=name, length=r.length, ranks=r.ranks,
        kernel_generator_counts=[len(X) for X in r.kernel_generators],
        exactness=exactness, passed=exactness.exact,
    )


# === Mutation harness ===

def mutation_sites(r: Resolution, degree: Optional[int] = None) -> List[Tuple[int, Label, Label]]:
    """(k, label, target) triples where adding unit*[target] to maps[k](label)
    breaks maps[k-1] o maps[k] == 0."""
    degrees = [degree] if degree is not None else range(1, len(r.maps))
    sites = []
    for k in degrees:
        if k < 1:
            continue
        below = r.maps[k - 1]
        targets = [t for t in below.domain.labels if not is_zero_image(below.images[t])]
        for label in r.maps[k].domain.labels:
            sites.extend((k, label, t) for t in targets)
    return sites


def mutate_boundary(r: Resolution, degree: int, label: Label, target: Optional[Label] = None,
                    element: Optional[int] = None, delta: int = 1) -> Resolution:
    """Copy of r with delta*element*[target] added to maps[degree](label).

    In degree 0 the integer image of ``label`` is shifted by delta instead.
    """
    f = r.maps[degree]
    if degree == 0:
        mutated = f.replace_image(label, f.images[label] + delta)
    else:
        cod = f.codomain
        s = cod.unit if element is None else element
        bump = cod.basis_element(target, RingElement(cod.monoid, {s: delta}))
        mutated = f.replace_image(label, f.images[label] + bump)
    maps = r.maps[:degree] + (mutated,) + r.maps[degree + 1:]
    return Resolution(r.monoid, r.modules, maps, r.kernel_generators, r.scalar_subring)


# === Rendering ===

def render(r: Resolution) -> str:
    lines = [f"resolution of length {r.length} over {len(r.modules[0].scalars)} scalars, ranks {r.ranks}"]
    monoid = r.monoid
    for k in range(1, len(r.maps)):
        lines.append(f"d{k}:")
        for label in r.maps[k].domain.labels:
            lines.append(f"  {label.render(monoid)} -> {r.maps[k].images[label].render()}")
    return "\n".join(lines)
