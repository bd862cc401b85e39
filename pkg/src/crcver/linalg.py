"""Small labeled complex matrices on top of mpmath.matrix."""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
from mpmath import mpc

from .errors import SingularMatrixError
from .precision import to_mpc


@dataclass
class BasisMatrix:
    """A square matrix with named row and column bases."""

    row_basis: tuple[str, ...]
    col_basis: tuple[str, ...]
    entries: mpmath.matrix

    def __post_init__(self):
        self.row_basis = tuple(self.row_basis)
        self.col_basis = tuple(self.col_basis)
        if self.entries.rows != len(self.row_basis) or self.entries.cols != len(self.col_basis):
            raise ValueError("entries shape does not match basis labels")
        if self.entries.rows != self.entries.cols:
            raise ValueError("BasisMatrix must be square")

    @classmethod
    def from_rows(cls, row_basis, col_basis, rows) -> "BasisMatrix":
        m = mpmath.matrix([[to_mpc(v) for v in r] for r in rows])
        return cls(tuple(row_basis), tuple(col_basis), m)

    @classmethod
    def diagonal(cls, basis, diag) -> "BasisMatrix":
        n = len(basis)
        m = mpmath.zeros(n, n)
        for i, v in enumerate(diag):
            m[i, i] = to_mpc(v)
        return cls(tuple(basis), tuple(basis), m)

    @property
    def size(self) -> int:
        return self.entries.rows

    def __getitem__(self, key):
        i, j = key
        if isinstance(i, str):
            i = self.row_basis.index(i)
        if isinstance(j, str):
            j = self.col_basis.index(j)
        return self.entries[i, j]

    def row(self, label: str):
        i = self.row_basis.index(label)
        return [self.entries[i, j] for j in range(self.size)]

    def __matmul__(self, other: "BasisMatrix") -> "BasisMatrix":
        if self.col_basis != other.row_basis:
            raise ValueError(f"basis mismatch: {self.col_basis} vs {other.row_basis}")
        return BasisMatrix(self.row_basis, other.col_basis, self.entries * other.entries)

    def inverse(self) -> "BasisMatrix":
        try:
            inv = self.entries**-1
        except ZeroDivisionError as exc:
            raise SingularMatrixError("matrix is numerically singular") from exc
        return BasisMatrix(self.col_basis, self.row_basis, inv)

    def transpose(self) -> "BasisMatrix":
        return BasisMatrix(self.col_basis, self.row_basis, self.entries.T)

    def map_entries(self, fn) -> "BasisMatrix":
        m = self.entries.copy()
        for i in range(self.size):
            for j in range(self.size):
                m[i, j] = fn(self.entries[i, j])
        return BasisMatrix(self.row_basis, self.col_basis, m)

    def max_abs_diff(self, other: "BasisMatrix"):
        if self.size != other.size:
            raise ValueError("size mismatch")
        return max(
            abs(self.entries[i, j] - other.entries[i, j])
            for i in range(self.size)
            for j in range(self.size)
        )

    def max_abs(self):
        return max(abs(self.entries[i, j]) for i in range(self.size) for j in range(self.size))

    def tolist(self) -> list[list[mpc]]:
        return [[self.entries[i, j] for j in range(self.size)] for i in range(self.size)]
