"""Integral monoid rings, free left modules over them and module maps.

A free module of rank r over Z[T] (T a submonoid of the ambient table) is
flattened to Z^(r*|T|) with basis {t*[b]}: the coordinate of t*[b] sits at
``label_position[b] * |T| + scalar_position[t]``. Matrices of maps follow
the row convention of :mod:`algebra.lattice`.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from algebra.errors import DimensionMismatch, NotAMonoid, RingMismatch
from algebra.lattice import IntMatrix
from algebra.semigroup import FiniteSemigroup, trivial_monoid

logger = logging.getLogger(__name__)

_MINUS = "−"


# === Ring elements ===

class RingElement:
    """A finitely supported integer combination of monoid elements."""

    __slots__ = ("monoid", "_terms")

    def __init__(self, monoid: FiniteSemigroup, terms: Optional[Mapping[int, int]] = None):
        self.monoid = monoid
        self._terms: Dict[int, int] = {int(s): int(c) for s, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, monoid: FiniteSemigroup, s: int, coefficient: int = 1) -> "RingElement":
        return cls(monoid, {s: coefficient})

    @classmethod
    def one(cls, monoid: FiniteSemigroup) -> "RingElement":
        if monoid.identity is None:
            raise NotAMonoid("the ring of a semigroup without identity has no 1")
        return cls(monoid, {monoid.identity: 1})

    @classmethod
    def zero(cls, monoid: FiniteSemigroup) -> "RingElement":
        return cls(monoid)

    @property
    def terms(self) -> Mapping[int, int]:
        return MappingProxyType(self._terms)

    @property
    def support(self) -> frozenset:
        return frozenset(self._terms)

    def coefficient(self, s: int) -> int:
        return self._terms.get(s, 0)

    def items(self) -> List[Tuple[int, int]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def augment(self) -> int:
        return sum(self._terms.values())

    def restrict(self, elements: Iterable[int]) -> "RingElement":
        keep = set(elements)
        return RingElement(self.monoid, {s: c for s, c in self._terms.items() if s in keep})

    def times_element(self, s: int) -> "RingElement":
        """Right multiplication by a monoid element."""
        rows = self.monoid.rows
        out: Dict[int, int] = defaultdict(int)
        for t, c in self._terms.items():
            out[rows[t][s]] += c
        return RingElement(self.monoid, out)

    def _same_ring(self, other: "RingElement") -> None:
        if self.monoid is not other.monoid and self.monoid != other.monoid:
            raise RingMismatch("ring elements over different monoids")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._same_ring(other)
        out = dict(self._terms)
        for s, c in other._terms.items():
            out[s] = out.get(s, 0) + c
        return RingElement(self.monoid, out)

    def __neg__(self) -> "RingElement":
        return RingElement(self.monoid, {s: -c for s, c in self._terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return ring_multiply(self, other)
        if isinstance(other, int) and not isinstance(other, bool):
            return RingElement(self.monoid, {s: c * other for s, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self._terms == other._terms and (self.monoid is other.monoid or self.monoid == other.monoid)

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for s, c in self.items():
            sign = _MINUS if c < 0 else "+"
            parts.append((sign, f"{abs(c)}·{self.monoid.name(s)}"))
        text = ("" if parts[0][0] == "+" else _MINUS) + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"RingElement({self.render()})"


def ring_multiply(a: RingElement, b: RingElement) -> RingElement:
    """Convolution through the multiplication table."""
    a._same_ring(b)
    rows = a.monoid.rows
    out: Dict[int, int] = defaultdict(int)
    for s, c in a._terms.items():
        row = rows[s]
        for t, d in b._terms.items():
            out[row[t]] += c * d
    return RingElement(a.monoid, out)


# === Basis labels ===

class Label(NamedTuple):
    """Origin-tagged basis label.

    kinds: ``one`` is the generator of a rank-one module, ``gen`` is [x] for
    the ``index``-th generator of X_degree, ``pair`` is [f,x], ``idem`` is the
    distinguished [e] or [f], and ``scaled`` is f*[x] in a restricted basis
    (degree -1 there means the base label was ``one``).
    """

    kind: str
    element: int = -1
    degree: int = -1
    index: int = -1

    @classmethod
    def one(cls) -> "Label":
        return cls("one")

    @classmethod
    def gen(cls, degree: int, index: int) -> "Label":
        return cls("gen", -1, degree, index)

    @classmethod
    def pair(cls, f: int, degree: int, index: int) -> "Label":
        return cls("pair", f, degree, index)

    @classmethod
    def idem(cls, s: int) -> "Label":
        return cls("idem", s)

    @classmethod
    def scaled(cls, f: int, base: "Label") -> "Label":
        return cls("scaled", f, base.degree, base.index)

    @property
    def base(self) -> "Label":
        """For pair and scaled labels: the plain label they were built on."""
        return Label.one() if self.degree < 0 else Label.gen(self.degree, self.index)

    def render(self, monoid: Optional[FiniteSemigroup] = None) -> str:
        name = (lambda s: monoid.name(s)) if monoid is not None else str
        if self.kind == "one":
            return "[1]"
        if self.kind == "gen":
            return f"[x{self.degree}.{self.index}]"
        if self.kind == "pair":
            return f"[{name(self.element)},x{self.degree}.{self.index}]"
        if self.kind == "idem":
            return f"[{name(self.element)}]"
        return f"{name(self.element)}·{self.base.render(monoid)}"


# === Free modules ===

@dataclass(frozen=True)
class FreeModule:
    """Free left module over Z[scalars] with the given basis labels.

    ``scalars`` is a submonoid of ``monoid`` whose identity is ``unit``; a
    basis element is ``unit*[b]``. ``trivial`` marks the module Z with the
    trivial action, the target of every augmentation.
    """

    monoid: FiniteSemigroup
    labels: Tuple[Label, ...]
    scalars: Tuple[int, ...]
    unit: int
    trivial: bool = False

    @classmethod
    def over(cls, monoid: FiniteSemigroup, labels: Sequence[Label],
             scalars: Optional[Iterable[int]] = None) -> "FreeModule":
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise DimensionMismatch("basis labels must be distinct")
        if scalars is None:
            if monoid.identity is None:
                raise NotAMonoid("free modules need a monoid of scalars")
            return cls(monoid, labels, tuple(monoid.elements), monoid.identity)
        members = tuple(sorted(set(int(s) for s in scalars)))
        return cls(monoid, labels, members, submonoid_unit(monoid, members))

    @classmethod
    def integers(cls) -> "FreeModule":
        return _INTEGERS

    @property
    def rank(self) -> int:
        return len(self.labels)

    @cached_property
    def label_position(self) -> Dict[Label, int]:
        return {b: i for i, b in enumerate(self.labels)}

    @cached_property
    def scalar_position(self) -> Dict[int, int]:
        return {s: i for i, s in enumerate(self.scalars)}

    @property
    def dimension(self) -> int:
        return len(self.labels) * len(self.scalars)

    def with_labels(self, labels: Sequence[Label]) -> "FreeModule":
        return FreeModule(self.monoid, tuple(labels), self.scalars, self.unit)

    def zero(self) -> "ModuleElement":
        return ModuleElement(self, {})

    def basis_element(self, label: Label, coefficient: Optional[RingElement] = None) -> "ModuleElement":
        coeff = coefficient if coefficient is not None else RingElement.basis(self.monoid, self.unit)
        return ModuleElement(self, {label: coeff})

    def flatten(self, element: "ModuleElement", by: Optional[int] = None) -> List[int]:
        """Coordinates of ``by*element`` (or of ``element``) in the Z-basis."""
        vec = [0] * self.dimension
        width = len(self.scalars)
        spos = self.scalar_position
        lpos = self.label_position
        rows = self.monoid.rows
        for label, coeff in element.coefficients.items():
            base = lpos[label] * width
            for s, c in coeff.terms.items():
                t = s if by is None else rows[by][s]
                try:
                    vec[base + spos[t]] += c
                except KeyError as exc:
                    raise RingMismatch(
                        f"coefficient {self.monoid.name(t)} lies outside the scalar submonoid"
                    ) from exc
        return vec

    def unflatten(self, vector: Sequence[int]) -> "ModuleElement":
        if len(vector) != self.dimension:
            raise DimensionMismatch(f"vector of length {len(vector)} for a module of dimension {self.dimension}")
        width = len(self.scalars)
        coefficients = {}
        for i, label in enumerate(self.labels):
            chunk = vector[i * width:(i + 1) * width]
            if any(chunk):
                coefficients[label] = RingElement(self.monoid, {s: c for s, c in zip(self.scalars, chunk)})
        return ModuleElement(self, coefficients)


def submonoid_unit(monoid: FiniteSemigroup, members: Sequence[int]) -> int:
    """Identity of a submonoid given by its elements."""
    member_set = set(members)
    if not member_set:
        raise NotAMonoid("empty scalar set")
    if any(monoid.mul(a, b) not in member_set for a in member_set for b in member_set):
        raise NotAMonoid("scalar set is not closed under multiplication")
    for u in sorted(member_set):
        if all(monoid.mul(u, s) == s == monoid.mul(s, u) for s in member_set):
            return u
    raise NotAMonoid("scalar set has no identity")


_INTEGERS = FreeModule(trivial_monoid(), (Label.one(),), (0,), 0, trivial=True)


# === Module elements ===

class ModuleElement:
    """Element of a free module: one ring coefficient per basis label."""

    __slots__ = ("module", "_coefficients")

    def __init__(self, module: FreeModule, coefficients: Optional[Mapping[Label, RingElement]] = None):
        self.module = module
        clean = {}
        positions = module.label_position
        for label, coeff in (coefficients or {}).items():
            if label not in positions:
                raise DimensionMismatch(f"label {label.render()} is not a basis label of the module")
            if not coeff.is_zero():
                clean[label] = coeff
        self._coefficients: Dict[Label, RingElement] = clean

    @property
    def coefficients(self) -> Mapping[Label, RingElement]:
        return MappingProxyType(self._coefficients)

    def coefficient(self, label: Label) -> RingElement:
        return self._coefficients.get(label, RingElement.zero(self.module.monoid))

    def items(self) -> List[Tuple[Label, RingElement]]:
        pos = self.module.label_position
        return sorted(self._coefficients.items(), key=lambda kv: pos[kv[0]])

    def is_zero(self) -> bool:
        return not self._coefficients

    def _same_module(self, other: "ModuleElement") -> None:
        if self.module is not other.module and self.module != other.module:
            raise RingMismatch("module elements of different modules")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._same_module(other)
        out = dict(self._coefficients)
        for label, coeff in other._coefficients.items():
            out[label] = out[label] + coeff if label in out else coeff
        return ModuleElement(self.module, out)

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.module, {b: -c for b, c in self._coefficients.items()})

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def act(self, scalar: RingElement) -> "ModuleElement":
        return scalar_act(scalar, self)

    def scale(self, k: int) -> "ModuleElement":
        return ModuleElement(self.module, {b: c * k for b, c in self._coefficients.items()})

    def moved_to(self, module: FreeModule) -> "ModuleElement":
        """The same coefficients read in another module sharing these labels."""
        return ModuleElement(module, self._coefficients)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self._coefficients == other._coefficients and self.module == other.module

    def __hash__(self) -> int:
        return hash(tuple((b, c) for b, c in self.items()))

    def render(self) -> str:
        if not self._coefficients:
            return "0"
        monoid = self.module.monoid
        return " + ".join(f"({c.render()}){b.render(monoid)}" for b, c in self.items())

    def __repr__(self) -> str:
        return f"ModuleElement({self.render()})"


def scalar_act(scalar: RingElement, element: ModuleElement) -> ModuleElement:
    """Left action of a ring element, distributed over the basis labels."""
    if scalar.monoid is not element.module.monoid and scalar.monoid != element.module.monoid:
        raise RingMismatch("scalar and module element live over different monoids")
    return ModuleElement(
        element.module,
        {b: ring_multiply(scalar, c) for b, c in element.coefficients.items()},
    )


# === Module maps ===

Image = Union[ModuleElement, int]


@dataclass(frozen=True)
class ModuleMap:
    """Homomorphism of free left modules given by the images of basis labels."""

    domain: FreeModule
    codomain: FreeModule
    images: Mapping[Label, Image] = field(default_factory=dict)

    def __post_init__(self):
        if set(self.images) != set(self.domain.labels):
            raise DimensionMismatch("images must be given for exactly the domain labels")
        for label, image in self.images.items():
            if self.codomain.trivial:
                if not isinstance(image, int):
                    raise DimensionMismatch(f"image of {label.render()} in Z must be an integer")
            elif not isinstance(image, ModuleElement) or image.module != self.codomain:
                raise DimensionMismatch(f"image of {label.render()} is not in the codomain")
        object.__setattr__(self, "images", MappingProxyType(dict(self.images)))

    @property
    def targets_integers(self) -> bool:
        return self.codomain.trivial

    def apply(self, element: ModuleElement) -> Image:
        if self.codomain.trivial:
            return sum(c.augment() * self.images[b] for b, c in element.coefficients.items())
        out = self.codomain.zero()
        for b, c in element.coefficients.items():
            out = out + scalar_act(c, self.images[b])
        return out

    def replace_image(self, label: Label, image: Image) -> "ModuleMap":
        images = dict(self.images)
        images[label] = image
        return ModuleMap(self.domain, self.codomain, images)


def identity_map(module: FreeModule) -> ModuleMap:
    return ModuleMap(module, module, {b: module.basis_element(b) for b in module.labels})


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """g after f."""
    if f.codomain != g.domain:
        raise DimensionMismatch("maps do not compose")
    return ModuleMap(f.domain, g.codomain, {b: g.apply(f.images[b]) for b in f.domain.labels})


def is_zero_image(value: Image) -> bool:
    return value == 0 if isinstance(value, int) else value.is_zero()


def z_matrix_of(f: ModuleMap) -> IntMatrix:
    """Integer matrix of f between the flattened Z-bases (row convention)."""
    dom = f.domain
    rows: List[List[int]] = []
    if f.codomain.trivial:
        for label in dom.labels:
            rows.extend([f.images[label]] for _ in dom.scalars)
        return IntMatrix.from_rows(rows, 1)
    cod = f.codomain
    width = len(cod.scalars)
    spos, lpos = cod.scalar_position, cod.label_position
    table = dom.monoid.rows
    for label in dom.labels:
        terms = [
            (lpos[b] * width, s, c)
            for b, coeff in f.images[label].coefficients.items()
            for s, c in coeff.terms.items()
        ]
        for t in dom.scalars:
            row = [0] * cod.dimension
            mult = table[t]
            for base, s, c in terms:
                row[base + spos[mult[s]]] += c
            rows.append(row)
    return IntMatrix.from_rows(rows, cod.dimension)


# === Sampling ===

def random_ring_element(rng: np.random.Generator, monoid: FiniteSemigroup, pool: Sequence[int],
                        max_terms: int = 3, bound: int = 3) -> RingElement:
    count = int(rng.integers(1, max_terms + 1))
    picks = rng.choice(len(pool), size=count)
    terms: Dict[int, int] = defaultdict(int)
    for p in picks:
        terms[pool[int(p)]] += int(rng.integers(-bound, bound + 1))
    return RingElement(monoid, terms)


def random_module_element(rng: np.random.Generator, module: FreeModule,
                          pool: Optional[Sequence[int]] = None) -> ModuleElement:
    pool = list(pool) if pool is not None else list(module.scalars)
    coefficients = {}
    for label in module.labels:
        if rng.random() < 0.7:
            coefficients[label] = random_ring_element(rng, module.monoid, pool)
    return ModuleElement(module, coefficients)
