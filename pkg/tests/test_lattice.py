import itertools

import pytest
import sympy
import sympy.matrices.normalforms

from algebra.errors import DimensionMismatch
from algebra.lattice import (
    IntMatrix,
    LatticeBuilder,
    RowLattice,
    hermite_normal_form,
    kernel_basis,
    lattice_contains,
    lattice_equal,
    smith_normal_form,
)

MATRICES = [
    [[2, 4, 4], [-6, 6, 12], [10, -4, -16]],
    [[1, 1], [1, 1], [0, 0]],
    [[3, 0, 1], [6, 0, 2], [0, 5, 5], [1, 1, 1]],
    [[0, 0], [0, 0]],
]


def det(M: IntMatrix) -> int:
    return int(sympy.Matrix(M.to_lists()).det())


@pytest.mark.parametrize("rows", MATRICES)
def test_hermite_normal_form(rows):
    M = IntMatrix.from_rows(rows)
    H, U = hermite_normal_form(M)
    assert U @ M == H
    assert abs(det(U)) == 1
    pivots = []
    for row in H.entries:
        nonzero = [j for j, v in enumerate(row) if v]
        if nonzero:
            pivots.append(nonzero[0])
            assert row[nonzero[0]] > 0
    assert pivots == sorted(pivots)


@pytest.mark.parametrize("rows", MATRICES)
def test_kernel_basis_against_small_vectors(rows):
    M = IntMatrix.from_rows(rows)
    K = kernel_basis(M)
    assert K.rows == M.rows - sympy.Matrix(rows).rank()
    for row in K.entries:
        assert IntMatrix.from_rows([row]) @ M == IntMatrix.zeros(1, M.cols)
    kernel = RowLattice.from_matrix(K)
    for v in itertools.product(range(-2, 3), repeat=M.rows):
        if (IntMatrix.from_rows([v]) @ M).is_zero():
            assert v in kernel


def test_smith_normal_form_invariants():
    M = IntMatrix.from_rows(MATRICES[0])
    D, U, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    assert [D.entries[i][i] for i in range(3)] == [2, 6, 12]
    Ds, Us, Vs = sympy.matrices.normalforms.smith_normal_decomp(sympy.Matrix(MATRICES[0]), domain=sympy.ZZ)
    assert Us * sympy.Matrix(MATRICES[0]) * Vs == Ds
    assert [abs(Ds[i, i]) for i in range(3)] == [2, 6, 12]


def test_hermite_normal_form_agrees_with_column_hnf():
    M = IntMatrix.from_rows(MATRICES[0])
    H, _ = hermite_normal_form(M.transpose())
    assert H.entries == ((2, 0, 10), (0, 6, 0), (0, 0, 12))
    columns = sympy.matrices.normalforms.hermite_normal_form(sympy.Matrix(MATRICES[0])).T.tolist()
    assert lattice_equal(RowLattice.from_generators(columns, 3), RowLattice.from_matrix(H))


def test_kernel_basis_is_saturated_and_canonical():
    K = kernel_basis(IntMatrix.from_rows(MATRICES[1]))
    assert K.entries == ((1, -1, 0), (0, 0, 1))
    assert kernel_basis(IntMatrix.zeros(2, 0)) == IntMatrix.identity(2)
    assert kernel_basis(IntMatrix.from_rows([], 3)).rows == 0


def test_smith_normal_form_rectangular():
    M = IntMatrix.from_rows(MATRICES[2])
    D, U, V = smith_normal_form(M)
    assert U @ M @ V == D
    diagonal = [D.entries[i][i] for i in range(3)]
    assert all(D.entries[i][j] == 0 for i in range(4) for j in range(3) if i != j)
    nonzero = [d for d in diagonal if d]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def test_lattice_equality_is_basis_independent():
    a = RowLattice.from_generators([(2, 0), (0, 2)], 2)
    b = RowLattice.from_generators([(2, 2), (0, 2)], 2)
    c = RowLattice.from_generators([(1, 0)], 2)
    assert lattice_equal(a, b)
    assert not lattice_equal(a, c)
    assert lattice_contains(RowLattice.from_generators([(1, 0), (0, 1)], 2), a)
    assert not lattice_contains(a, c)
    assert (2, 4) in a and (1, 1) not in a


def test_builder_tracks_changes():
    builder = LatticeBuilder(3)
    assert builder.add([2, 0, 0])
    assert not builder.add([4, 0, 0])
    assert builder.add([3, 0, 0])
    assert builder.contains([1, 0, 0])
    assert not builder.contains([0, 1, 0])
    assert builder.lattice().basis == ((1, 0, 0),)
    with pytest.raises(DimensionMismatch):
        builder.add([1, 0])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        lattice_equal(RowLattice(2, ()), RowLattice(3, ()))
