import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from algebra.errors import (
    BadMatrixShape,
    CompositionViolation,
    HomNotMonoidHom,
    IsoCheckFailed,
    NotAGroup,
    NotAMonoid,
    NotASemilattice,
    NotCompletelySimple,
    NotNormalized,
)
from algebra.semigroup import (
    FiniteSemigroup,
    direct_product,
    generated_subsemigroup,
    green_classes,
    group_inverses,
    idempotents,
    is_completely_simple,
    is_group,
    left_zero,
    make_semigroup,
    maximal_subgroup,
    right_zero,
    verify_isomorphism,
)

logger = logging.getLogger(__name__)


# === Rees matrix semigroups ===

@dataclass(frozen=True)
class ReesMatrixData:
    """M[G; I, Omega; P] with I = 0..|I|-1 and Omega = 0..|Omega|-1.

    ``P`` is an Omega x I matrix of group element indices, so ``P[w][i]`` is
    the sandwich entry used when a triple ending in ``w`` meets one starting
    in ``i``. Position 0 of I and Omega plays the distinguished index.
    """

    group: FiniteSemigroup
    index_i: Tuple[int, ...]
    index_omega: Tuple[int, ...]
    P: Tuple[Tuple[int, ...], ...]
    normalized: bool = False

    def __post_init__(self):
        if not is_group(self.group):
            raise NotAGroup("the Rees group factor must be a group")
        if not self.index_i or not self.index_omega:
            raise BadMatrixShape("I and Omega must be non-empty")
        if len(self.P) != len(self.index_omega) or any(len(row) != len(self.index_i) for row in self.P):
            raise BadMatrixShape(
                f"P must be {len(self.index_omega)} x {len(self.index_i)} (Omega x I)",
            )
        if any(not 0 <= p < self.group.order for row in self.P for p in row):
            raise BadMatrixShape("P entries must be group elements")
        if self.normalized and not self.is_normal_form:
            raise NotNormalized("data flagged normalized but P has a non-identity first row or column")

    @classmethod
    def build(cls, group: FiniteSemigroup, i_count: int, omega_count: int,
              P: Sequence[Sequence[int]], normalized: Optional[bool] = None) -> "ReesMatrixData":
        rows = tuple(tuple(int(p) for p in row) for row in P)
        data = cls(group, tuple(range(i_count)), tuple(range(omega_count)), rows)
        flag = data.is_normal_form if normalized is None else normalized
        return cls(group, data.index_i, data.index_omega, rows, flag)

    @property
    def is_normal_form(self) -> bool:
        one = self.group.identity
        return all(p == one for p in self.P[0]) and all(row[0] == one for row in self.P)


class ReesSemigroup(NamedTuple):
    semigroup: FiniteSemigroup
    triples: Tuple[Tuple[int, int, int], ...]
    index_of: Dict[Tuple[int, int, int], int]


def make_rees(data: ReesMatrixData) -> ReesSemigroup:
    """Build the table of (i,g,w)(j,h,m) = (i, g P[w][j] h, m)."""
    G = data.group
    g_order, k = G.order, len(data.index_omega)
    triples = tuple((i, a, w) for i in data.index_i for a in G.elements for w in data.index_omega)
    index_of = {t: n for n, t in enumerate(triples)}

    def idx(i: int, a: int, w: int) -> int:
        return (i * g_order + a) * k + w

    table = [
        [idx(i, G.mul(G.mul(a, data.P[w][j]), b), m) for (j, b, m) in triples]
        for (i, a, w) in triples
    ]
    names = [f"({i + 1},{G.name(a)},{w + 1})" for (i, a, w) in triples]
    return ReesSemigroup(make_semigroup(table, names=names), triples, index_of)


def normalize_rees(data: ReesMatrixData) -> Tuple[ReesMatrixData, Tuple[int, ...]]:
    """Change coordinates so the first row and column of P are the identity.

    With u_w = P[0][0] P[w][0]^-1 and v_i = P[0][i]^-1 the new matrix is
    u_w P[w][i] v_i, and (i,g,w) -> (i, v_i^-1 g u_w^-1, w) is an isomorphism.
    Returns the new data and that isomorphism between the built tables.
    """
    G = data.group
    inv = group_inverses(G)
    P = data.P
    v = [inv[P[0][i]] for i in data.index_i]
    u = [G.mul(P[0][0], inv[P[w][0]]) for w in data.index_omega]
    new_P = [[G.mul(G.mul(u[w], P[w][i]), v[i]) for i in data.index_i] for w in data.index_omega]
    normal = ReesMatrixData.build(G, len(data.index_i), len(data.index_omega), new_P, normalized=True)

    src, dst = make_rees(data), make_rees(normal)
    mapping = tuple(
        dst.index_of[(i, G.mul(G.mul(inv[v[i]], a), inv[u[w]]), w)] for (i, a, w) in src.triples
    )
    if not verify_isomorphism(src.semigroup, dst.semigroup, mapping):
        raise IsoCheckFailed("normalisation map is not an isomorphism")
    return normal, mapping


@dataclass(frozen=True)
class ReesDecomposition:
    data: ReesMatrixData
    rees: ReesSemigroup
    to_rees: Tuple[int, ...]
    from_rees: Tuple[int, ...]
    idempotent: int
    r_order: Tuple[int, ...]
    l_order: Tuple[int, ...]


def rees_decomposition(U: FiniteSemigroup) -> ReesDecomposition:
    """Write a completely simple U as M[G; I, Omega; P] with a verified isomorphism.

    e is the least idempotent and G its H-class. I lists R-classes with R_e
    first, Omega lists L-classes with L_e first. Representatives q_w and r_i
    are the least elements of H_{1w} and H_{i1}; P[w][i] = q_w r_i.
    """
    if not is_completely_simple(U):
        raise NotCompletelySimple("semigroup is not completely simple")
    green = green_classes(U)
    e = min(idempotents(U))
    r_e, l_e = green.r_index[e], green.l_index[e]
    r_order = (r_e,) + tuple(k for k in range(len(green.r_classes)) if k != r_e)
    l_order = (l_e,) + tuple(k for k in range(len(green.l_classes)) if k != l_e)
    G, emb = maximal_subgroup(U, e)
    pos = {x: i for i, x in enumerate(emb)}

    first_r = set(green.r_classes[r_e])
    first_l = set(green.l_classes[l_e])
    q = [min(first_r & set(green.l_classes[k])) for k in l_order]
    r = [min(set(green.r_classes[k]) & first_l) for k in r_order]
    P = [[pos[U.mul(q[w], r[i])] for i in range(len(r))] for w in range(len(q))]
    data = ReesMatrixData.build(G, len(r), len(q), P)
    rees = make_rees(data)

    from_rees = tuple(U.mul(U.mul(r[i], emb[a]), q[w]) for (i, a, w) in rees.triples)
    if not verify_isomorphism(rees.semigroup, U, from_rees):
        raise IsoCheckFailed("Rees coordinates do not give an isomorphism")
    to_rees = [0] * U.order
    for n, x in enumerate(from_rees):
        to_rees[x] = n
    logger.debug("Rees decomposition: |I|=%d |Omega|=%d |G|=%d", len(r), len(q), G.order)
    return ReesDecomposition(data, rees, tuple(to_rees), from_rees, e, r_order, l_order)


def idempotent_entry_subgroup(data: ReesMatrixData) -> FrozenSet[int]:
    """Subgroup of G generated by the entries of a normalised P."""
    if not data.normalized:
        raise NotNormalized("idempotent entry subgroup needs normalised data")
    return generated_subsemigroup(data.group, {p for row in data.P for p in row})


def make_left_group(G: FiniteSemigroup, k: int) -> FiniteSemigroup:
    return direct_product(G, left_zero(k))


def make_right_group(G: FiniteSemigroup, k: int) -> FiniteSemigroup:
    return direct_product(G, right_zero(k))


def make_rectangular_band(m: int, n: int) -> FiniteSemigroup:
    return direct_product(left_zero(m), right_zero(n))


# === Strong semilattices of monoids ===

@dataclass(frozen=True)
class StrongSemilatticeData:
    """Monoids A_a over a finite meet semilattice Y, glued by homomorphisms.

    ``order`` holds pairs (b, a) meaning b <= a; the reflexive-transitive
    closure is taken. ``homs[(a, b)]`` maps A_a into A_b for b < a, as a
    tuple of 0-based images; identity maps on the diagonal may be omitted.
    """

    indices: Tuple[str, ...]
    order: FrozenSet[Tuple[str, str]]
    components: Mapping[str, FiniteSemigroup]
    homs: Mapping[Tuple[str, str], Tuple[int, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class SemilatticeStructure:
    leq: FrozenSet[Tuple[str, str]]
    meet: Dict[Tuple[str, str], str]
    homs: Dict[Tuple[str, str], Tuple[int, ...]]


def _closure(indices: Sequence[str], pairs) -> set:
    leq = {(a, a) for a in indices} | set(pairs)
    for k in indices:
        for i in indices:
            if (i, k) in leq:
                for j in indices:
                    if (k, j) in leq:
                        leq.add((i, j))
    return leq


def check_semilattice(data: StrongSemilatticeData) -> SemilatticeStructure:
    """Validate every invariant of the data and return the completed structure."""
    indices = tuple(data.indices)
    if not indices or len(set(indices)) != len(indices):
        raise NotASemilattice("index set must be non-empty with distinct names")
    known = set(indices)
    for lo, hi in data.order:
        if lo not in known or hi not in known:
            raise NotASemilattice(f"order pair ({lo}, {hi}) uses an unknown index")
    if set(data.components) != known:
        raise NotASemilattice("exactly one component per index is required")
    for a in indices:
        if data.components[a].identity is None:
            raise NotAMonoid(f"component {a} has no identity", index=a)

    leq = _closure(indices, data.order)
    for a in indices:
        for b in indices:
            if a != b and (a, b) in leq and (b, a) in leq:
                raise NotASemilattice(f"{a} and {b} are mutually below each other")

    meet: Dict[Tuple[str, str], str] = {}
    for a in indices:
        for b in indices:
            lower = [c for c in indices if (c, a) in leq and (c, b) in leq]
            best = [g for g in lower if all((c, g) in leq for c in lower)]
            if not best:
                raise NotASemilattice(f"{a} and {b} have no meet")
            meet[(a, b)] = best[0]

    homs: Dict[Tuple[str, str], Tuple[int, ...]] = {}
    for a in indices:
        A = data.components[a]
        for b in indices:
            if (b, a) not in leq:
                continue
            B = data.components[b]
            if a == b:
                given = data.homs.get((a, a))
                if given is not None and tuple(given) != tuple(A.elements):
                    raise HomNotMonoidHom(a, a, "(must be the identity)")
                homs[(a, a)] = tuple(A.elements)
                continue
            if (a, b) not in data.homs:
                raise HomNotMonoidHom(a, b, "(missing)")
            phi = tuple(int(x) for x in data.homs[(a, b)])
            if len(phi) != A.order or any(not 0 <= x < B.order for x in phi):
                raise HomNotMonoidHom(a, b, "(wrong domain or codomain)")
            if phi[A.identity] != B.identity:
                raise HomNotMonoidHom(a, b, "(identity not preserved)")
            if any(phi[A.mul(x, y)] != B.mul(phi[x], phi[y]) for x in A.elements for y in A.elements):
                raise HomNotMonoidHom(a, b, "(products not preserved)")
            homs[(a, b)] = phi

    for a in indices:
        for b in indices:
            for c in indices:
                if (b, a) in leq and (c, b) in leq:
                    ab, bc, ac = homs[(a, b)], homs[(b, c)], homs[(a, c)]
                    if any(bc[ab[x]] != ac[x] for x in data.components[a].elements):
                        raise CompositionViolation(a, b, c)
    return SemilatticeStructure(frozenset(leq), meet, homs)


class StrongSemilattice(NamedTuple):
    semigroup: FiniteSemigroup
    component_of: Tuple[Tuple[str, int], ...]
    offsets: Dict[str, int]

    def component_elements(self, index: str) -> Tuple[int, ...]:
        return tuple(n for n, (a, _) in enumerate(self.component_of) if a == index)

    def local_identity(self, data: StrongSemilatticeData, index: str) -> int:
        return self.offsets[index] + data.components[index].identity


def make_strong_semilattice(data: StrongSemilatticeData) -> StrongSemilattice:
    """Disjoint union with ab = phi_{a,ab}(a) * phi_{b,ab}(b) computed in A_{ab}."""
    structure = check_semilattice(data)
    offsets: Dict[str, int] = {}
    component_of: List[Tuple[str, int]] = []
    for a in data.indices:
        offsets[a] = len(component_of)
        component_of.extend((a, x) for x in data.components[a].elements)

    table = []
    for a, x in component_of:
        row = []
        for b, y in component_of:
            c = structure.meet[(a, b)]
            C = data.components[c]
            row.append(offsets[c] + C.mul(structure.homs[(a, c)][x], structure.homs[(b, c)][y]))
        table.append(row)
    names = [f"{data.components[a].name(x)}_{a}" for a, x in component_of]
    semigroup = make_semigroup(table, names=names)
    return StrongSemilattice(semigroup, tuple(component_of), offsets)


def semilattice_minimum(data: StrongSemilatticeData) -> Optional[str]:
    """Meet of all indices, returned when it lies below every index."""
    structure = check_semilattice(data)
    bottom = data.indices[0]
    for a in data.indices[1:]:
        bottom = structure.meet[(bottom, a)]
    if all((bottom, a) in structure.leq for a in data.indices):
        return bottom
    return None
