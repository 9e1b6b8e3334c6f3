"""Right unitary generation, right Cayley graph connectivity and the FP1
witnesses built from them."""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from algebra.errors import (
    HypothesisViolation,
    InputNotAWitness,
    NotALeftIdeal,
    NotAMonoid,
    NotASubgroup,
    NotCompletelySimple,
    SearchCapExceeded,
    VerificationFailed,
)
from algebra.rees import (
    StrongSemilatticeData,
    check_semilattice,
    idempotent_entry_subgroup,
    make_rees,
    make_strong_semilattice,
    normalize_rees,
    rees_decomposition,
    semilattice_minimum,
)
from algebra.resolution import standard_resolution, summarize, verify_exact
from algebra.semigroup import (
    FiniteSemigroup,
    adjoin_identity,
    generated_subsemigroup,
    green_classes,
    idempotents,
    is_completely_simple,
    is_connected_undirected,
    is_group,
    is_right_unitary,
    minimal_ideal,
    monoid_completion,
    opposite,
    right_cayley_graph,
    right_unitary_closure,
    subsemigroup,
)
from algebra.transfer import ideal_lift
from models.schema import (
    BiReport,
    CsFp1Report,
    Fp1EquivalenceReport,
    Fp1Report,
    GensetReport,
    KobayashiReport,
    RelativeRankReport,
    SemilatticeReport,
    WitnessTransferReport,
)

logger = logging.getLogger(__name__)

DEFAULT_ORDER_CAP = 10


@dataclass(frozen=True)
class FP1Witness:
    monoid: FiniteSemigroup
    subset: Tuple[int, ...]
    connected: bool
    closure_is_all: bool
    closure: FrozenSet[int]

    @property
    def passed(self) -> bool:
        return self.connected and self.closure_is_all

    def report(self) -> KobayashiReport:
        S = self.monoid
        return KobayashiReport(
            subset=S.names_of(self.subset), connected=self.connected,
            closure_is_all=self.closure_is_all, closure=S.names_of(sorted(self.closure)),
            passed=self.passed,
        )


def kobayashi_check(S: FiniteSemigroup, A: Iterable[int]) -> FP1Witness:
    """Right unitary closure of A and connectivity of the right Cayley graph,
    computed independently; they must agree."""
    if S.identity is None:
        raise NotAMonoid("the FP1 criterion is stated for monoids")
    A = tuple(sorted(set(A)))
    # the empty set generates the same right unitary submonoid as {1}
    closure = right_unitary_closure(S, A or (S.identity,))
    connected = is_connected_undirected(right_cayley_graph(S, A))
    witness = FP1Witness(S, A, connected, len(closure) == S.order, closure)
    if witness.connected != witness.closure_is_all:
        raise VerificationFailed(
            "right unitary generation and Cayley connectivity disagree",
            subset=S.names_of(A), connected=connected,
        )
    return witness


def _ensure_searchable(S: FiniteSemigroup, order_cap: int) -> None:
    if S.order > order_cap:
        raise SearchCapExceeded(f"exhaustive search limited to order {order_cap}", order=S.order)


def minimal_ru_genset(S: FiniteSemigroup, size_cap: int,
                      order_cap: int = DEFAULT_ORDER_CAP) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Smallest A with |A| <= size_cap whose right Cayley graph is connected.

    Subsets are tried by size, lexicographically inside a size.
    """
    if S.identity is None:
        raise NotAMonoid("the FP1 criterion is stated for monoids")
    _ensure_searchable(S, order_cap)
    for size in range(min(size_cap, S.order) + 1):
        logger.debug("searching right unitary generating sets of size %d", size)
        for A in combinations(S.elements, size):
            if is_connected_undirected(right_cayley_graph(S, A)):
                witness = kobayashi_check(S, A)
                logger.info("minimal right unitary generating set %s", S.names_of(witness.subset))
                return size, witness.subset
    return None


def _genset(S: FiniteSemigroup, cap: int, order_cap: int) -> Tuple[GensetReport, Optional[Tuple[int, ...]]]:
    found = minimal_ru_genset(S, cap, order_cap)
    if found is None:
        return GensetReport(cap=cap, order=S.order, passed=False), None
    size, A = found
    return GensetReport(cap=cap, order=S.order, size=size, witness=S.names_of(A), passed=True), A


def genset_report(S: FiniteSemigroup, cap: int, order_cap: int = DEFAULT_ORDER_CAP) -> GensetReport:
    return _genset(S, cap, order_cap)[0]


# --- Relative rank ---
def _check_subgroup(G: FiniteSemigroup, K: FrozenSet[int]) -> None:
    if not is_group(G):
        raise NotASubgroup("the ambient semigroup is not a group")
    if not K or any(G.mul(a, b) not in K for a in K for b in K):
        raise NotASubgroup("K is not closed under multiplication", subset=sorted(K))


def relative_rank_witness(G: FiniteSemigroup, K: Iterable[int]) -> Tuple[int, ...]:
    """Lexicographically first smallest A with <K u A> = G."""
    K = frozenset(K)
    _check_subgroup(G, K)
    for size in range(G.order + 1):
        for A in combinations(G.elements, size):
            if len(generated_subsemigroup(G, K | set(A))) == G.order:
                return A
    raise NotASubgroup("G is not generated by itself")


def relative_rank(G: FiniteSemigroup, K: Iterable[int]) -> int:
    return len(relative_rank_witness(G, K))


# --- Completely simple semigroups ---
@dataclass(frozen=True)
class _NormalCoordinates:
    group: FiniteSemigroup
    P: Tuple[Tuple[int, ...], ...]
    K: FrozenSet[int]
    to_u: Tuple[int, ...]  # normalised Rees index -> element of U
    triples: Tuple[Tuple[int, int, int], ...]

    def element(self, i: int, g: int, w: int) -> int:
        return self.to_u[self.triples.index((i, g, w))]


def _normal_coordinates(U: FiniteSemigroup) -> _NormalCoordinates:
    dec = rees_decomposition(U)
    normal, mapping = normalize_rees(dec.data)
    rees = make_rees(normal)
    to_u = [0] * len(mapping)
    for src, dst in enumerate(mapping):
        to_u[dst] = dec.from_rees[src]
    return _NormalCoordinates(normal.group, normal.P, idempotent_entry_subgroup(normal), tuple(to_u), rees.triples)


def _cs_witness(U: FiniteSemigroup) -> Tuple[CsFp1Report, FiniteSemigroup]:
    coords = _normal_coordinates(U)
    G = coords.group
    X_group = relative_rank_witness(G, coords.K)
    X = [coords.element(0, g, 0) for g in X_group]
    green = green_classes(U)
    e = min(idempotents(U))
    F = sorted(x for x in green.l_class_of(e) if U.mul(x, x) == x)

    S = adjoin_identity(U)
    witness = kobayashi_check(S, F + X)
    # <E(U)> meets H_e exactly in K
    H = set(green.h_class_of(e))
    k_in_u = {coords.element(0, g, 0) for g in coords.K}
    k_agrees = (generated_subsemigroup(U, idempotents(U)) & H) == k_in_u
    r_union = set(green.r_class_of(e)) | {S.identity}
    passed = witness.passed and k_agrees and is_right_unitary(S, r_union)
    if not k_agrees:
        logger.warning("idempotent-generated subgroup differs from the P-entry subgroup")
    report = CsFp1Report(
        r_class_count=len(green.r_classes), l_class_count=len(green.l_classes),
        group_order=G.order, normalized_P=[[G.name(p) for p in row] for row in coords.P],
        subgroup_order=len(coords.K), relative_rank=len(X_group),
        relative_rank_witness=G.names_of(X_group), F=U.names_of(F),
        witness=S.names_of(witness.subset), witness_size=len(witness.subset),
        kobayashi=witness.report(), passed=passed,
    )
    return report, S


def cs_fp1_certificate(U: FiniteSemigroup) -> CsFp1Report:
    """F u X right unitarily generates U^1, with F the idempotents of one
    L-class and X completing the P-entry subgroup K to the whole group."""
    if not is_completely_simple(U):
        raise NotCompletelySimple("the certificate needs a completely simple semigroup")
    report, _ = _cs_witness(U)
    logger.info("FP1 certificate: |I|=%d rank=%d witness size %d",
                report.r_class_count, report.relative_rank, report.witness_size)
    return report


# --- Witness transfers ---
def _local(S: FiniteSemigroup, members: Iterable[int]) -> Tuple[FiniteSemigroup, Tuple[int, ...], dict]:
    sub, emb = subsemigroup(S, members)
    return sub, emb, {x: i for i, x in enumerate(emb)}


def ideal_witness_lift(S: FiniteSemigroup, J: Iterable[int], A: Iterable[int]) -> WitnessTransferReport:
    """A witness for J^1 (J a left ideal) is already a witness for S."""
    if S.identity is None:
        raise NotAMonoid("the FP1 criterion is stated for monoids")
    J, A = frozenset(J), tuple(sorted(set(A)))
    if not J or any(S.mul(s, j) not in J for s in S.elements for j in J):
        raise NotALeftIdeal("J is not a left ideal of S")
    T = J | {S.identity}
    if not set(A) <= T or not set(A) & J:
        raise InputNotAWitness("A must lie in J u {1} and meet J")
    sub, _, pos = _local(S, T)
    if not kobayashi_check(sub, [pos[a] for a in A]).passed:
        raise InputNotAWitness("A does not right unitarily generate J u {1}")
    lifted = kobayashi_check(S, A)
    if not lifted.passed:
        raise VerificationFailed("lifted witness does not generate S", subset=S.names_of(A))
    return WitnessTransferReport(
        construction="ideal-witness-lift", ideal=S.names_of(sorted(J)), given=S.names_of(A),
        produced=S.names_of(A), kobayashi=lifted.report(), passed=True,
    )


def minimal_ideal_certificate_transfer(S: FiniteSemigroup, A: Iterable[int]
                                       ) -> Tuple[Tuple[int, ...], WitnessTransferReport]:
    """B = F u AF right unitarily generates J u {1}, J the minimal ideal."""
    A = tuple(sorted(set(A)))
    if not kobayashi_check(S, A).passed:
        raise InputNotAWitness("A does not right unitarily generate S")
    J = minimal_ideal(S)
    sub_j, emb_j = subsemigroup(S, J)
    if not is_completely_simple(sub_j):
        raise NotCompletelySimple("the minimal ideal is not completely simple")
    green = green_classes(sub_j)
    e_local = min(idempotents(sub_j))
    L = {emb_j[x] for x in green.l_class_of(e_local)}
    F = {x for x in L if S.mul(x, x) == x}
    B = tuple(sorted(F | {S.mul(a, f) for a in A for f in F}))
    T, _, pos = _local(S, J | {S.identity})
    witness = kobayashi_check(T, [pos[b] for b in B])
    if not witness.passed:
        raise VerificationFailed("F u AF does not generate the minimal ideal with identity",
                                 subset=S.names_of(B))
    report = WitnessTransferReport(
        construction="minimal-ideal-transfer", ideal=S.names_of(sorted(J)), given=S.names_of(A),
        produced=S.names_of(B), kobayashi=witness.report(), passed=True,
    )
    return B, report


# --- Reports ---
def fp1_report(S: FiniteSemigroup, cap: int, name: str = "S",
               order_cap: int = DEFAULT_ORDER_CAP) -> Fp1Report:
    """Every FP1 witness applicable to S (taken as S^1 when S has no identity)."""
    cs = cs_fp1_certificate(S) if is_completely_simple(S) else None
    M = monoid_completion(S)
    genset, A = None, None
    if M.order <= order_cap:
        genset, A = _genset(M, cap, order_cap)
    if A is None:
        A = tuple(M.elements)

    transfer = lifted = None
    J = minimal_ideal(M)
    sub_j, _ = subsemigroup(M, J)
    if is_completely_simple(sub_j):
        B, transfer = minimal_ideal_certificate_transfer(M, A)
        lifted = ideal_witness_lift(M, J, B)
    parts = [r.passed for r in (genset, cs, transfer, lifted) if r is not None]
    return Fp1Report(
        semigroup=name, order=S.order, minimal_genset=genset, completely_simple=cs,
        ideal_lift=lifted, minimal_ideal_transfer=transfer, passed=all(parts),
    )


def fp1_equivalence_report(S: FiniteSemigroup, cap: int, name: str = "S",
                           order_cap: int = DEFAULT_ORDER_CAP) -> Fp1EquivalenceReport:
    """Left and right witnesses plus the relative rank data of the minimal ideal."""
    M = monoid_completion(S)
    left = genset_report(M, cap, order_cap)
    right = genset_report(opposite(M), cap, order_cap)
    J = minimal_ideal(M)
    sub_j, _ = subsemigroup(M, J)
    rank_report = None
    if is_completely_simple(sub_j):
        coords = _normal_coordinates(sub_j)
        witness = relative_rank_witness(coords.group, coords.K)
        rank_report = RelativeRankReport(
            group_order=coords.group.order, subgroup=coords.group.names_of(sorted(coords.K)),
            rank=len(witness), witness=coords.group.names_of(witness),
        )
    return Fp1EquivalenceReport(
        semigroup=name, left=left, right=right, relative_rank=rank_report,
        minimal_ideal=M.names_of(sorted(J)), passed=left.passed and right.passed,
    )


def semilattice_fp_report(data: StrongSemilatticeData, n: int) -> SemilatticeReport:
    """Resolve the bottom component and lift it to the whole semilattice."""
    check_semilattice(data)
    bottom = semilattice_minimum(data)
    if bottom is None:
        raise HypothesisViolation("minimum", "the semilattice has no least element")
    built = make_strong_semilattice(data)
    S = monoid_completion(built.semigroup)
    T = built.component_elements(bottom)
    res_T = standard_resolution(S, n, scalars=T)
    component = verify_exact(res_T)
    lift = ideal_lift(res_T, S, T)
    direct = verify_exact(standard_resolution(S, n))
    agrees = lift.report.exactness.exact == direct.exact
    return SemilatticeReport(
        indices=list(data.indices), minimum=bottom, order=S.order, component_order=len(T),
        length=n, component_resolution=component, lift=lift.report, direct=direct,
        agrees=agrees, passed=component.exact and lift.report.passed and direct.exact and agrees,
    )


def bi_fp_report(S: FiniteSemigroup, n: int, cap: int, name: str = "S",
                 order_cap: int = DEFAULT_ORDER_CAP) -> BiReport:
    """Left resolution of S and of its opposite; bi-FP_n is their conjunction."""
    M = monoid_completion(S)
    Mop = opposite(M)
    left = summarize(standard_resolution(M, n), name)
    right = summarize(standard_resolution(Mop, n), f"{name}^op")
    searchable = M.order <= order_cap
    return BiReport(
        semigroup=name, length=n, commutative=bool((M.table == M.table.T).all()),
        left=left, right=right,
        left_genset=genset_report(M, cap, order_cap) if searchable else None,
        right_genset=genset_report(Mop, cap, order_cap) if searchable else None,
        bi_fp=left.passed and right.passed, passed=left.passed and right.passed,
    )
