"""Exact integer linear algebra.

Vectors are rows and act on the left of matrices: a map with matrix M sends
``v`` to ``v @ M``. Normal forms come from sympy's ``DomainMatrix`` over
``ZZ``, so there is no overflow and no floating point anywhere in this module.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import ZZ
from sympy.core.intfunc import igcdex
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form as _hnf
from sympy.polys.matrices.normalforms import smith_normal_decomp as _snd

from algebra.errors import DimensionMismatch

logger = logging.getLogger(__name__)

Row = List[int]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        entries = tuple(tuple(int(v) for v in row) for row in rows)
        if cols is None:
            if not entries:
                raise DimensionMismatch("column count is required for a matrix without rows")
            cols = len(entries[0])
        return cls(len(entries), cols, entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def to_lists(self) -> List[Row]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(row[j] for row in self.entries) for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries),
        )

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def dump(self) -> str:
        """Text grid for debugging."""
        if not self.rows:
            return f"<empty {self.rows}x{self.cols}>"
        width = max((len(str(v)) for row in self.entries for v in row), default=1)
        return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in self.entries)


def _to_domain(rows: Sequence[Sequence[int]], shape: Tuple[int, int]) -> DomainMatrix:
    return DomainMatrix([[ZZ(int(v)) for v in row] for row in rows], shape, ZZ)


def _to_rows(dM: DomainMatrix) -> List[Row]:
    return [[int(v) for v in row] for row in dM.to_Matrix().tolist()]


# --- Row operations ---

def _axpy(y: Row, x: Row, k: int) -> Row:
    return [a + k * b for a, b in zip(y, x)]


def _mix(r1: Row, r2: Row, a: int, b: int, c: int, d: int) -> Tuple[Row, Row]:
    return [a * u + b * v for u, v in zip(r1, r2)], [c * u + d * v for u, v in zip(r1, r2)]


def _first_nonzero(v: Sequence[int], start: int) -> Optional[int]:
    for c in range(start, len(v)):
        if v[c]:
            return c
    return None


def _row_hnf(rows: Sequence[Sequence[int]], cols: int) -> List[Row]:
    """Canonical row HNF basis of the lattice spanned by ``rows``, zero rows dropped."""
    if not rows or cols == 0:
        return []
    # sympy's HNF works on columns with pivots in the bottom right, so it gets
    # the transpose with coordinates reversed and its columns are read back
    # right to left.
    A = _to_domain([[row[c] for row in rows] for c in reversed(range(cols))], (cols, len(rows)))
    W = _to_rows(_hnf(A))
    rank = len(W[0])
    return [[W[cols - 1 - c][j] for c in range(cols)] for j in reversed(range(rank))]


def hermite_normal_form(M: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style HNF: returns (H, U) with U unimodular and U @ M == H.

    Pivots are positive, entries above a pivot lie in [0, pivot), and zero
    rows sit at the bottom. U is read off the HNF of ``[M | I]``.
    """
    augmented = [list(row) + [int(i == j) for j in range(M.rows)] for i, row in enumerate(M.entries)]
    basis = _row_hnf(augmented, M.cols + M.rows)
    H = IntMatrix.from_rows([row[:M.cols] for row in basis], M.cols)
    U = IntMatrix.from_rows([row[M.cols:] for row in basis], M.rows)
    return H, U


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Rows spanning {x : x @ M == 0}, returned in canonical HNF."""
    D, U, _ = smith_normal_form(M)
    # with U @ M @ V == D, x @ M == 0 iff (x @ U^-1) @ D == 0
    free = [U.entries[i] for i in range(M.rows) if i >= M.cols or D.entries[i][i] == 0]
    kernel = _row_hnf(free, M.rows)
    logger.debug("kernel of %dx%d matrix has rank %d", M.rows, M.cols, len(kernel))
    return IntMatrix.from_rows(kernel, M.rows)


# --- Lattices ---

@dataclass(frozen=True)
class RowLattice:
    """A sublattice of Z^dim stored by its canonical HNF basis."""

    dim: int
    basis: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, rows: Iterable[Sequence[int]], dim: int) -> "RowLattice":
        generators = [[int(x) for x in row] for row in rows]
        for row in generators:
            if len(row) != dim:
                raise DimensionMismatch(f"vector of length {len(row)} in a lattice of dimension {dim}")
        return cls(dim, tuple(tuple(r) for r in _row_hnf(generators, dim)))

    @classmethod
    def from_matrix(cls, M: IntMatrix) -> "RowLattice":
        return cls.from_generators(M.entries, M.cols)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def as_matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(self.basis, self.dim)

    def __contains__(self, vector: Sequence[int]) -> bool:
        return lattice_membership(vector, self)


class LatticeBuilder:
    """Incrementally maintained echelon basis, one pivot row per column."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: Dict[int, Row] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def _check(self, vector: Sequence[int]) -> Row:
        v = [int(x) for x in vector]
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a lattice of dimension {self.dim}")
        return v

    def add(self, vector: Sequence[int]) -> bool:
        """Add a generator; returns False if the lattice did not change."""
        v = self._check(vector)
        changed = False
        c = _first_nonzero(v, 0)
        while c is not None:
            row = self._rows.get(c)
            if row is None:
                self._rows[c] = [-x for x in v] if v[c] < 0 else v
                return True
            a, b = row[c], v[c]
            if b % a == 0:
                v = _axpy(v, row, -(b // a))
            else:
                x, y, g = map(int, igcdex(a, b))
                self._rows[c], v = _mix(row, v, x, y, -(b // g), a // g)
                changed = True
            c = _first_nonzero(v, c + 1)
        return changed

    def contains(self, vector: Sequence[int]) -> bool:
        v = self._check(vector)
        c = _first_nonzero(v, 0)
        while c is not None:
            row = self._rows.get(c)
            if row is None or v[c] % row[c]:
                return False
            v = _axpy(v, row, -(v[c] // row[c]))
            c = _first_nonzero(v, c + 1)
        return True

    def lattice(self) -> RowLattice:
        return RowLattice.from_generators(self._rows.values(), self.dim)


def lattice_membership(vector: Sequence[int], L: RowLattice) -> bool:
    v = [int(x) for x in vector]
    if len(v) != L.dim:
        raise DimensionMismatch(f"vector of length {len(v)} against a lattice of dimension {L.dim}")
    for row in L.basis:
        p = _first_nonzero(row, 0)
        if _first_nonzero(v[:p], 0) is not None:
            return False
        if v[p] % row[p]:
            return False
        v = _axpy(v, row, -(v[p] // row[p]))
    return not any(v)


def lattice_equal(L1: RowLattice, L2: RowLattice) -> bool:
    if L1.dim != L2.dim:
        raise DimensionMismatch(f"lattices of dimensions {L1.dim} and {L2.dim}")
    return L1.basis == L2.basis


def lattice_contains(L1: RowLattice, L2: RowLattice) -> bool:
    """True iff L2 is a sublattice of L1."""
    if L1.dim != L2.dim:
        raise DimensionMismatch(f"lattices of dimensions {L1.dim} and {L2.dim}")
    return all(lattice_membership(b, L1) for b in L2.basis)


# --- Smith normal form ---

def smith_normal_form(M: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Returns (D, U, V) with U @ M @ V == D diagonal, d1 | d2 | ..., U and V unimodular."""
    m, n = M.rows, M.cols
    if m == 0 or n == 0:
        return IntMatrix.zeros(m, n), IntMatrix.identity(m), IntMatrix.identity(n)
    D, U, V = (_to_rows(part) for part in _snd(_to_domain(M.entries, (m, n))))
    for i in range(min(m, n)):
        if D[i][i] < 0:
            D[i] = [-v for v in D[i]]
            U[i] = [-v for v in U[i]]
    return IntMatrix.from_rows(D, n), IntMatrix.from_rows(U, m), IntMatrix.from_rows(V, n)
