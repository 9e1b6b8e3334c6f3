from typing import Any, Dict, Optional


class AlgebraError(Exception):
    """Base class for every failure raised by the toolkit.

    `code` is a stable identifier used in reports and HTTP error bodies;
    `details` carries the offending data.
    """

    code = "algebra_error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": self.message, "details": _plain(self.details)}


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_plain(v) for v in items]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


# --- Tables ---
class BadTable(AlgebraError):
    code = "bad_table"


class NonAssociative(AlgebraError):
    code = "non_associative"

    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"associativity fails at ({i}, {j}, {k})", triple=(i, j, k))
        self.triple = (i, j, k)


class BadIdentity(AlgebraError):
    code = "bad_identity"


class NotIdempotent(AlgebraError):
    code = "not_idempotent"


class EmptyGeneratingSet(AlgebraError):
    code = "empty_generating_set"


class NotAGroup(AlgebraError):
    code = "not_a_group"


class NotAMonoid(AlgebraError):
    code = "not_a_monoid"


# --- Rees and semilattice structures ---
class BadMatrixShape(AlgebraError):
    code = "bad_matrix_shape"


class NotCompletelySimple(AlgebraError):
    code = "not_completely_simple"


class NotNormalized(AlgebraError):
    code = "not_normalized"


class IsoCheckFailed(AlgebraError):
    code = "iso_check_failed"


class NotASemilattice(AlgebraError):
    code = "not_a_semilattice"


class HomNotMonoidHom(AlgebraError):
    code = "hom_not_monoid_hom"

    def __init__(self, alpha: str, beta: str, reason: str = ""):
        super().__init__(f"map {alpha} -> {beta} is not a monoid homomorphism {reason}".strip(),
                         alpha=alpha, beta=beta)


class CompositionViolation(AlgebraError):
    code = "composition_violation"

    def __init__(self, alpha: str, beta: str, gamma: str):
        super().__init__(f"homs {alpha} -> {beta} -> {gamma} do not compose to {alpha} -> {gamma}",
                         alpha=alpha, beta=beta, gamma=gamma)


# --- Lattices and modules ---
class DimensionMismatch(AlgebraError):
    code = "dimension_mismatch"


class RingMismatch(AlgebraError):
    code = "ring_mismatch"


class LatticeMismatch(AlgebraError):
    code = "lattice_mismatch"


# --- Transfer constructions ---
class NotARightIdeal(AlgebraError):
    code = "not_a_right_ideal"


class NotRightZero(AlgebraError):
    code = "not_right_zero"


class NotAnIdeal(AlgebraError):
    code = "not_an_ideal"


class NoTwoSidedIdentity(AlgebraError):
    code = "no_two_sided_identity"


class HypothesisViolation(AlgebraError):
    code = "hypothesis_violation"

    def __init__(self, which: str, message: Optional[str] = None, **details: Any):
        super().__init__(message or f"hypothesis violated: {which}", which=which, **details)
        self.which = which


class NotALeftGroup(AlgebraError):
    code = "not_a_left_group"


# --- FP1 criteria ---
class NotASubgroup(AlgebraError):
    code = "not_a_subgroup"


class NotALeftIdeal(AlgebraError):
    code = "not_a_left_ideal"


class InputNotAWitness(AlgebraError):
    code = "input_not_a_witness"


class SearchCapExceeded(AlgebraError):
    code = "search_cap_exceeded"


# --- Harness ---
class ParseError(AlgebraError):
    code = "parse_error"

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}", line=line, reason=reason)
        self.line = line
        self.reason = reason


class VerificationFailed(AlgebraError):
    """A construction ran but one of its checks did not hold; `report` is the full report."""

    code = "verification_failed"

    def __init__(self, message: str, report: Any = None, **details: Any):
        super().__init__(message, **details)
        self.report = report


class UnknownCatalogEntry(AlgebraError):
    code = "unknown_catalog_entry"
