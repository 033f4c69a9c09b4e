"""Exact integer linear algebra: matrices, Hermite normal form, kernels.

Everything here works over plain Python integers; no floating point is
ever used.  Lattices are stored with their basis rows in row-style
Hermite normal form, so equal lattices have equal representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class IntMatrix:
    """An immutable integer matrix (tuple of row tuples)."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged rows")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(v) for v in r) for r in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows)) if other.rows else []
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows))
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows))
        )

    def scaled(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * v for v in r) for r in self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)) if self.rows else ())

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)


def row_hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form (positive pivots, entries above a
    pivot reduced into [0, pivot)), zero rows dropped."""
    mat = [list(map(int, r)) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        # eliminate below via the Euclidean algorithm on the column
        while True:
            nonzero = [i for i in range(pivot_row, len(mat)) if mat[i][col] != 0]
            if not nonzero:
                break
            i_min = min(nonzero, key=lambda i: abs(mat[i][col]))
            mat[pivot_row], mat[i_min] = mat[i_min], mat[pivot_row]
            p = mat[pivot_row][col]
            done = True
            for i in range(pivot_row + 1, len(mat)):
                q = mat[i][col] // p
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[pivot_row])]
                if mat[i][col] != 0:
                    done = False
            if done:
                break
        if pivot_row < len(mat) and mat[pivot_row][col] != 0:
            if mat[pivot_row][col] < 0:
                mat[pivot_row] = [-v for v in mat[pivot_row]]
            p = mat[pivot_row][col]
            for i in range(pivot_row):
                q = mat[i][col] // p
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[pivot_row])]
            pivot_row += 1
            if pivot_row == len(mat):
                break
    return [r for r in mat[:pivot_row] if any(r)]


def kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the full integer kernel {v : m @ v = 0} (saturated).

    Row-reduces [m^T | I]; rows whose left block vanishes record, in the
    right block, unimodular combinations lying in the kernel.
    """
    n = m.ncols
    k = m.nrows
    cols = list(zip(*m.rows)) if k else [()] * n
    aug = [list(cols[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    reduced = _echelon_keep_all(aug, k)
    kernel = [tuple(row[k:]) for row in reduced if not any(row[:k])]
    return row_hnf(kernel)


def _echelon_keep_all(mat: list[list[int]], ncols_left: int) -> list[list[int]]:
    """Integer row echelon on the left block, keeping every row."""
    pivot_row = 0
    for col in range(ncols_left):
        while True:
            nonzero = [i for i in range(pivot_row, len(mat)) if mat[i][col] != 0]
            if not nonzero:
                break
            i_min = min(nonzero, key=lambda i: abs(mat[i][col]))
            mat[pivot_row], mat[i_min] = mat[i_min], mat[pivot_row]
            p = mat[pivot_row][col]
            done = True
            for i in range(pivot_row + 1, len(mat)):
                q = mat[i][col] // p
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[pivot_row])]
                if mat[i][col] != 0:
                    done = False
            if done:
                break
        if pivot_row < len(mat) and mat[pivot_row][col] != 0:
            pivot_row += 1
            if pivot_row == len(mat):
                break
    return mat


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^n given by independent basis rows in HNF."""

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(ambient_dim: int, rows: Sequence[Sequence[int]]) -> "Lattice":
        hnf = row_hnf(rows)
        for r in hnf:
            if len(r) != ambient_dim:
                raise ValueError("row length != ambient dimension")
        return Lattice(ambient_dim, tuple(tuple(r) for r in hnf))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def solve(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coordinates of v in the basis, or None if v is not
        in the lattice.  Back-substitution against the HNF pivots."""
        v = list(map(int, v))
        coords = []
        for row in self.basis:
            pivot_col = next(j for j, a in enumerate(row) if a != 0)
            c, rem = divmod(v[pivot_col], row[pivot_col])
            if rem:
                return None
            coords.append(c)
            v = [a - c * b for a, b in zip(v, row)]
        if any(v):
            return None
        return tuple(coords)

    def contains(self, v: Sequence[int]) -> bool:
        return self.solve(v) is not None
