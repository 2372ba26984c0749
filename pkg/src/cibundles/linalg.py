"""Exact Gaussian elimination over Q and F_p.

Over F_p the elimination is vectorised with numpy ``int64`` rows; entries
stay in ``[0, p)`` so products fit as long as ``p < 3e9``.  Larger primes
and the rationals use a pure-Python path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import QQ, Field, PrimeField

_INT64_PRIME_LIMIT = 3_000_000_000


def _use_numpy(field: Field) -> bool:
    return isinstance(field, PrimeField) and field.p < _INT64_PRIME_LIMIT


def _rref_modp(A: np.ndarray, p: int, reduce_up: bool = True) -> tuple[np.ndarray, list[int]]:
    A = np.array(A, dtype=np.int64) % p
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        if not reduce_up:
            col[:r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows] = (A[rows] - np.outer(col[rows], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rref_generic(rows: list[list], field: Field) -> tuple[list[list], list[int]]:
    A = [list(row) for row in rows]
    m = len(A)
    n = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        i = next((i for i in range(r, m) if A[i][c] != 0), None)
        if i is None:
            continue
        A[r], A[i] = A[i], A[r]
        inv = field.inv(A[r][c])
        A[r] = [field.mul(x, inv) for x in A[r]]
        for k in range(m):
            if k != r and A[k][c] != 0:
                f = A[k][c]
                A[k] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable matrix over an exact field, stored row-major as tuples."""

    field: Field
    entries: tuple[tuple, ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ, ncols: int | None = None) -> "ExactMatrix":
        rows = [tuple(field(x) for x in row) for row in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(row) != ncols for row in rows):
            raise ValueError("ragged rows")
        return cls(field, tuple(rows), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "ExactMatrix":
        return cls(field, tuple((field.zero,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ExactMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, n)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def transpose(self) -> "ExactMatrix":
        cols = tuple(tuple(row[j] for row in self.entries) for j in range(self.ncols))
        return ExactMatrix(self.field, cols, self.nrows)

    def rref(self) -> tuple[list[list], list[int]]:
        """Reduced row echelon form (nonzero rows only) and pivot columns."""
        return rref(self.entries, self.field, self.ncols)

    def rank(self) -> int:
        return rank(self.entries, self.field, self.ncols)

    def kernel(self) -> list[tuple]:
        return kernel_basis(self.entries, self.field, self.ncols)

    def apply(self, v: Sequence) -> tuple:
        F = self.field
        out = []
        for row in self.entries:
            acc = F.zero
            for a, b in zip(row, v):
                acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)


def rref(rows, field: Field, ncols: int | None = None) -> tuple[list[list], list[int]]:
    rows = list(rows)
    if not rows:
        return [], []
    if _use_numpy(field):
        A, piv = _rref_modp(np.asarray(rows, dtype=np.int64), field.p)
        return A.tolist(), piv
    return _rref_generic(rows, field)


def rank(rows, field: Field, ncols: int | None = None) -> int:
    """Rank of a matrix given as a sequence of rows (or a 2-d int array over F_p)."""
    if _use_numpy(field):
        A = np.asarray(rows, dtype=np.int64)
        if A.size == 0:
            return 0
        # the pivot loop runs over columns: keep them on the shorter side
        if A.shape[1] > A.shape[0]:
            A = A.T
        return len(_rref_modp(A, field.p, reduce_up=False)[1])
    rows = list(rows)
    if not rows:
        return 0
    return len(_rref_generic(rows, field)[1])


def kernel_basis(rows, field: Field, ncols: int | None = None) -> list[tuple]:
    """Canonical kernel basis: the rows of the kernel's reduced echelon form."""
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for a matrix with no rows")
        ncols = len(rows[0])
    R, pivots = rref(rows, field, ncols) if rows else ([], [])
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(field(R[i][f]))
        basis.append(v)
    if not basis:
        return []
    K, _ = rref(basis, field, ncols)
    return [tuple(field(x) for x in row) for row in K]


def solve_point(rows, field: Field, ncols: int) -> tuple:
    """The unique (projective) kernel vector of a corank-one system."""
    K = kernel_basis(rows, field, ncols)
    if len(K) != 1:
        raise ValueError(f"expected a one-dimensional kernel, got dimension {len(K)}")
    return K[0]
