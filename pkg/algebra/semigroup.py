import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from algebra.errors import (
    BadIdentity,
    BadTable,
    EmptyGeneratingSet,
    NonAssociative,
    NotAGroup,
    NotIdempotent,
)

logger = logging.getLogger(__name__)


class FiniteSemigroup:
    """A finite semigroup stored as its complete multiplication table.

    Elements are the indices ``0..order-1`` and ``table[i, j]`` is the index
    of the product ``i*j``. The table is a read-only ``int64`` array; equality
    and hashing ignore the display names. Use :func:`make_semigroup` to build
    validated instances, the constructor trusts its input.
    """

    __slots__ = ("_table", "_rows", "_identity", "_names", "_hash")

    def __init__(self, table, identity: Optional[int] = None, names: Optional[Sequence[str]] = None):
        arr = np.array(table, dtype=np.int64)
        arr.setflags(write=False)
        self._table = arr
        self._rows: Tuple[Tuple[int, ...], ...] = tuple(tuple(row) for row in arr.tolist())
        self._identity = None if identity is None else int(identity)
        n = arr.shape[0]
        self._names = tuple(names) if names is not None else tuple(f"x{i + 1}" for i in range(n))
        self._hash = hash((n, arr.tobytes(), self._identity))

    @property
    def order(self) -> int:
        return len(self._rows)

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return self._rows

    @property
    def identity(self) -> Optional[int]:
        return self._identity

    @property
    def names(self) -> Tuple[str, ...]:
        return self._names

    @property
    def is_monoid(self) -> bool:
        return self._identity is not None

    @property
    def elements(self) -> range:
        return range(len(self._rows))

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def product(self, elements: Iterable[int]) -> int:
        it = iter(elements)
        acc = next(it)
        for x in it:
            acc = self._rows[acc][x]
        return acc

    def name(self, i: int) -> str:
        return self._names[i]

    def names_of(self, elements: Iterable[int]) -> List[str]:
        return [self._names[i] for i in sorted(elements)]

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteSemigroup):
            return NotImplemented
        return (
            self._hash == other._hash
            and self._identity == other._identity
            and np.array_equal(self._table, other._table)
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        ident = "none" if self._identity is None else self._names[self._identity]
        return f"FiniteSemigroup(order={self.order}, identity={ident})"


def _fresh_name(names: Sequence[str], wanted: str) -> str:
    name = wanted
    while name in names:
        name += "'"
    return name


def _as_elements(S: FiniteSemigroup, A: Iterable[int]) -> FrozenSet[int]:
    out = frozenset(int(a) for a in A)
    bad = [a for a in out if not 0 <= a < S.order]
    if bad:
        raise BadTable(f"elements {sorted(bad)} are not in a semigroup of order {S.order}")
    return out


# === Construction and validation ===

def make_semigroup(table, identity_hint: Optional[int] = None,
                   names: Optional[Sequence[str]] = None) -> FiniteSemigroup:
    """Validate a 0-based multiplication table and wrap it.

    Associativity is checked on every triple; the first failing triple in
    lexicographic order is reported. The identity is detected automatically
    and must agree with ``identity_hint`` when one is given.
    """
    try:
        arr = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise BadTable(f"table is not a rectangular integer array: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise BadTable("table must be a non-empty square array", shape=tuple(arr.shape))
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise BadTable(f"table entries must lie in [0, {n})")
    if names is not None:
        names = [str(x) for x in names]
        if len(names) != n or len(set(names)) != n:
            raise BadTable("names must be distinct and one per element", names=names)

    left = arr[arr]        # left[i, j, k] = (ij)k
    right = arr[:, arr]    # right[i, j, k] = i(jk)
    bad = np.argwhere(left != right)
    if len(bad):
        i, j, k = (int(v) for v in bad[0])
        raise NonAssociative(i, j, k)

    idx = np.arange(n)
    detected = next(
        (e for e in range(n) if np.array_equal(arr[e], idx) and np.array_equal(arr[:, e], idx)),
        None,
    )
    if identity_hint is not None and identity_hint != detected:
        raise BadIdentity(f"element {identity_hint} is not a two-sided identity", hint=identity_hint)
    return FiniteSemigroup(arr, detected, names)


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    """Return S¹ with a fresh identity at the last index, even if S already has one."""
    n = S.order
    table = np.empty((n + 1, n + 1), dtype=np.int64)
    table[:n, :n] = S.table
    table[n, :] = np.arange(n + 1)
    table[:, n] = np.arange(n + 1)
    return FiniteSemigroup(table, n, S.names + (_fresh_name(S.names, "1"),))


def monoid_completion(S: FiniteSemigroup) -> FiniteSemigroup:
    """S itself when it has an identity, otherwise S¹."""
    return S if S.is_monoid else adjoin_identity(S)


def adjoin_zero(S: FiniteSemigroup) -> FiniteSemigroup:
    """Return S with a fresh two-sided zero at the last index."""
    n = S.order
    table = np.full((n + 1, n + 1), n, dtype=np.int64)
    table[:n, :n] = S.table
    return FiniteSemigroup(table, S.identity, S.names + (_fresh_name(S.names, "0"),))


def opposite(S: FiniteSemigroup) -> FiniteSemigroup:
    """The opposite semigroup: same elements, product x*y := y*x."""
    return FiniteSemigroup(S.table.T, S.identity, S.names)


def subsemigroup(S: FiniteSemigroup, elements: Iterable[int]) -> Tuple[FiniteSemigroup, Tuple[int, ...]]:
    """Table of a multiplicatively closed subset, with the embedding into S."""
    members = tuple(sorted(_as_elements(S, elements)))
    if not members:
        raise EmptyGeneratingSet("a subsemigroup needs at least one element")
    pos = {x: i for i, x in enumerate(members)}
    try:
        table = [[pos[S.mul(x, y)] for y in members] for x in members]
    except KeyError as exc:
        raise BadTable("subset is not closed under multiplication", elements=members) from exc
    return make_semigroup(table, names=[S.name(x) for x in members]), members


def verify_isomorphism(S: FiniteSemigroup, T: FiniteSemigroup, mapping: Sequence[int]) -> bool:
    """True iff ``mapping`` (index in S -> index in T) is a bijective homomorphism."""
    if S.order != T.order or len(mapping) != S.order:
        return False
    m = np.asarray(mapping, dtype=np.int64)
    if sorted(m.tolist()) != list(range(T.order)):
        return False
    return bool(np.array_equal(m[S.table], T.table[m[:, None], m[None, :]]))


# === Elementwise structure ===

def idempotents(S: FiniteSemigroup) -> FrozenSet[int]:
    idx = np.arange(S.order)
    return frozenset(int(i) for i in np.flatnonzero(S.table[idx, idx] == idx))


def is_group(S: FiniteSemigroup) -> bool:
    if S.identity is None:
        return False
    idx = np.arange(S.order)
    return bool(
        np.all(np.sort(S.table, axis=1) == idx) and np.all(np.sort(S.table, axis=0) == idx[:, None])
    )


def group_inverses(G: FiniteSemigroup) -> Tuple[int, ...]:
    if not is_group(G):
        raise NotAGroup("inverses requested in a semigroup that is not a group")
    one = G.identity
    return tuple(next(b for b in G.elements if G.mul(a, b) == one) for a in G.elements)


def zero_element(S: FiniteSemigroup) -> Optional[int]:
    n = S.order
    for z in range(n):
        if np.all(S.table[z] == z) and np.all(S.table[:, z] == z):
            return z
    return None


def is_regular(S: FiniteSemigroup) -> bool:
    """Every x has some y with xyx = x."""
    tab = S.table
    return all(bool(np.any(tab[tab[x], x] == x)) for x in S.elements)


def is_clifford(S: FiniteSemigroup) -> bool:
    """Regular with central idempotents."""
    tab = S.table
    central = all(np.array_equal(tab[e], tab[:, e]) for e in idempotents(S))
    return central and is_regular(S)


# === Closures ===

def generated_subsemigroup(S: FiniteSemigroup, A: Iterable[int]) -> FrozenSet[int]:
    gens = _as_elements(S, A)
    if not gens:
        raise EmptyGeneratingSet("cannot generate from the empty set")
    rows = S.rows
    closed = set(gens)
    frontier = list(gens)
    while frontier:
        fresh = []
        for x in frontier:
            for y in list(closed):
                for p in (rows[x][y], rows[y][x]):
                    if p not in closed:
                        closed.add(p)
                        fresh.append(p)
        frontier = fresh
    return frozenset(closed)


def _saturation(S: FiniteSemigroup, T: FrozenSet[int]) -> FrozenSet[int]:
    """Elements s outside T with s*t in T for some t in T."""
    members = np.fromiter(sorted(T), dtype=np.int64)
    hits = np.isin(S.table[:, members], members).any(axis=1)
    return frozenset(int(s) for s in np.flatnonzero(hits)) - T


def right_unitary_closure(S: FiniteSemigroup, A: Iterable[int]) -> FrozenSet[int]:
    """Smallest right unitary subsemigroup containing A.

    Alternates product closure with the saturation step
    ``{s : s*t in T for some t in T}`` until nothing changes.
    """
    T = generated_subsemigroup(S, A)
    while True:
        extra = _saturation(S, T)
        if not extra:
            return T
        T = generated_subsemigroup(S, T | extra)


def is_right_unitary(S: FiniteSemigroup, T: Iterable[int]) -> bool:
    members = _as_elements(S, T)
    if not members:
        return False
    closed = all(S.mul(x, y) in members for x in members for y in members)
    return closed and not _saturation(S, members)


# === Ideals and simplicity ===

def two_sided_ideal(S: FiniteSemigroup, x: int) -> FrozenSet[int]:
    """S¹xS¹ as a set of elements of S."""
    M = monoid_completion(S)
    left = M.table[:, x]
    return frozenset(int(v) for v in np.unique(M.table[left, :]))


def is_simple(S: FiniteSemigroup) -> bool:
    return all(len(two_sided_ideal(S, x)) == S.order for x in S.elements)


def is_completely_simple(S: FiniteSemigroup) -> bool:
    # Finite simple semigroups are completely simple.
    return is_simple(S)


def minimal_ideal(S: FiniteSemigroup) -> FrozenSet[int]:
    """The unique minimal two-sided ideal: the intersection of all principal ideals."""
    out = frozenset(S.elements)
    for x in S.elements:
        out &= two_sided_ideal(S, x)
    return out


# === Green's relations ===

@dataclass(frozen=True)
class GreenStructure:
    """Partitions of S into R-, L-, H- and D-classes.

    Classes are tuples of element indices, sorted internally and ordered by
    their least element. ``group_flags[k]`` marks H-class ``k`` as a group.
    """

    r_classes: Tuple[Tuple[int, ...], ...]
    l_classes: Tuple[Tuple[int, ...], ...]
    h_classes: Tuple[Tuple[int, ...], ...]
    d_classes: Tuple[Tuple[int, ...], ...]
    group_flags: Tuple[bool, ...]

    @staticmethod
    def _index(classes) -> Dict[int, int]:
        return {x: k for k, cls in enumerate(classes) for x in cls}

    @cached_property
    def r_index(self) -> Dict[int, int]:
        return self._index(self.r_classes)

    @cached_property
    def l_index(self) -> Dict[int, int]:
        return self._index(self.l_classes)

    @cached_property
    def h_index(self) -> Dict[int, int]:
        return self._index(self.h_classes)

    @cached_property
    def d_index(self) -> Dict[int, int]:
        return self._index(self.d_classes)

    def r_class_of(self, x: int) -> Tuple[int, ...]:
        return self.r_classes[self.r_index[x]]

    def l_class_of(self, x: int) -> Tuple[int, ...]:
        return self.l_classes[self.l_index[x]]

    def h_class_of(self, x: int) -> Tuple[int, ...]:
        return self.h_classes[self.h_index[x]]

    def d_class_of(self, x: int) -> Tuple[int, ...]:
        return self.d_classes[self.d_index[x]]


def _partition(keys: Sequence) -> Tuple[Tuple[int, ...], ...]:
    groups: Dict = {}
    for x, key in enumerate(keys):
        groups.setdefault(key, []).append(x)
    return tuple(sorted((tuple(g) for g in groups.values()), key=lambda c: c[0]))


def green_classes(S: FiniteSemigroup) -> GreenStructure:
    """Green's relations from principal one-sided ideals over the monoid completion."""
    M = monoid_completion(S)
    tab = M.table
    n = S.order
    right = [frozenset(tab[x, :].tolist()) for x in range(n)]
    left = [frozenset(tab[:, x].tolist()) for x in range(n)]
    r_classes = _partition(right)
    l_classes = _partition(left)
    h_classes = _partition(list(zip(right, left)))

    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for cls in itertools.chain(r_classes, l_classes):
        graph.add_edges_from(zip(cls, cls[1:]))
    d_classes = tuple(sorted((tuple(sorted(c)) for c in nx.connected_components(graph)), key=lambda c: c[0]))

    idem = idempotents(S)
    flags = []
    for cls in h_classes:
        count = sum(1 for x in cls if x in idem)
        assert count <= 1, f"H-class {cls} holds {count} idempotents"
        flags.append(count == 1)
    return GreenStructure(r_classes, l_classes, h_classes, d_classes, tuple(flags))


def maximal_subgroup(S: FiniteSemigroup, e: int) -> Tuple[FiniteSemigroup, Tuple[int, ...]]:
    """The H-class of the idempotent e as a group, with its embedding into S."""
    if S.mul(e, e) != e:
        raise NotIdempotent(f"element {S.name(e)} is not idempotent", element=e)
    members = green_classes(S).h_class_of(e)
    pos = {x: i for i, x in enumerate(members)}
    table = [[pos[S.mul(x, y)] for y in members] for x in members]
    group = make_semigroup(table, identity_hint=pos[e], names=[S.name(x) for x in members])
    if not is_group(group):
        raise NotAGroup(f"H-class of {S.name(e)} failed the group axioms")
    return group, members


# === Cayley graphs ===

@dataclass(frozen=True)
class CayleyGraph:
    """Right Cayley graph: one vertex per element, an arc x -a-> x*a for each a in labels."""

    vertex_count: int
    labels: Tuple[int, ...]
    arcs: Tuple[Tuple[int, int, int], ...]

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from((src, dst, {"label": a}) for src, a, dst in self.arcs)
        return graph


def right_cayley_graph(S: FiniteSemigroup, A: Iterable[int]) -> CayleyGraph:
    labels = tuple(sorted(_as_elements(S, A)))
    arcs = tuple((x, a, S.mul(x, a)) for x in S.elements for a in labels)
    return CayleyGraph(S.order, labels, arcs)


def is_connected_undirected(g: CayleyGraph) -> bool:
    return nx.is_weakly_connected(g.to_networkx())


# === Products and local submonoids ===

def direct_product(S: FiniteSemigroup, T: FiniteSemigroup) -> FiniteSemigroup:
    """Componentwise product; the pair (s, t) has index s*|T| + t."""
    n, m = S.order, T.order
    prod = S.table[:, None, :, None] * m + T.table[None, :, None, :]
    names = [f"({a},{b})" for a in S.names for b in T.names]
    return make_semigroup(prod.reshape(n * m, n * m), names=names)


def local_elements(S: FiniteSemigroup, e: int) -> FrozenSet[int]:
    if S.mul(e, e) != e:
        raise NotIdempotent(f"element {S.name(e)} is not idempotent", element=e)
    return frozenset(S.mul(S.mul(e, s), e) for s in S.elements)


def local_submonoid(S: FiniteSemigroup, e: int) -> FiniteSemigroup:
    """eSe, a monoid with identity e."""
    sub, _ = subsemigroup(S, local_elements(S, e))
    return sub


# === Standard families ===

def trivial_monoid() -> FiniteSemigroup:
    return make_semigroup([[0]], names=["1"])


def cyclic_group(n: int) -> FiniteSemigroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["1", "g"] + [f"g{k}" for k in range(2, n)]
    return make_semigroup(table, names=names[:n])


def klein_four() -> FiniteSemigroup:
    return make_semigroup([[i ^ j for j in range(4)] for i in range(4)], names=["1", "a", "b", "c"])


def left_zero(k: int) -> FiniteSemigroup:
    return make_semigroup([[i] * k for i in range(k)], names=[f"l{i + 1}" for i in range(k)])


def right_zero(k: int) -> FiniteSemigroup:
    return make_semigroup([list(range(k)) for _ in range(k)], names=[f"r{i + 1}" for i in range(k)])


def transformation_maps(n: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(itertools.product(range(n), repeat=n))


def full_transformation_monoid(n: int) -> FiniteSemigroup:
    """All maps {0..n-1} -> itself; the product f*g applies f first."""
    maps = transformation_maps(n)
    pos = {f: i for i, f in enumerate(maps)}
    table = [[pos[tuple(g[f[x]] for x in range(n))] for g in maps] for f in maps]
    names = ["[" + " ".join(str(v + 1) for v in f) + "]" for f in maps]
    return make_semigroup(table, names=names)
