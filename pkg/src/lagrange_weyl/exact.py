"""Sparse matrices over cyclotomic fields, and exact row reduction."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .cyclotomic import Cyclotomic
from .torus import TorusExponent
from .weyl import ExactUnitary


class ExactMatrix:
    """A ``shape[0] x shape[1]`` matrix stored as {(row, col): Cyclotomic}."""

    __slots__ = ("shape", "entries")

    def __init__(self, shape: tuple[int, int], entries: dict | None = None):
        self.shape = (int(shape[0]), int(shape[1]))
        self.entries: dict[tuple[int, int], Cyclotomic] = {}
        for key, v in (entries or {}).items():
            if not isinstance(v, Cyclotomic):
                v = Cyclotomic.from_torus(v) if isinstance(v, TorusExponent) else Cyclotomic.rational(v)
            if not v.is_zero():
                self.entries[key] = v

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls((n, n), {(i, i): Cyclotomic.rational(1) for i in range(n)})

    @classmethod
    def from_unitary(cls, U: ExactUnitary) -> ExactMatrix:
        return cls((U.dim, U.dim), {
            (int(r), c): Cyclotomic.root(int(p), U.modulus)
            for c, (r, p) in enumerate(zip(U.rows, U.phases))})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> ExactMatrix:
        n, m = len(rows), len(rows[0]) if rows else 0
        return cls((n, m), {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row)
                            if not (isinstance(v, (int, Fraction)) and v == 0)})

    def __getitem__(self, key: tuple[int, int]) -> Cyclotomic:
        return self.entries.get(key, Cyclotomic.zero())

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, list[tuple[int, Cyclotomic]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], Cyclotomic] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                key = (i, j)
                prod = a * b
                acc[key] = acc[key] + prod if key in acc else prod
        return ExactMatrix((self.shape[0], other.shape[1]), acc)

    def adjoint(self) -> ExactMatrix:
        return ExactMatrix((self.shape[1], self.shape[0]),
                           {(j, i): v.conjugate() for (i, j), v in self.entries.items()})

    def scaled(self, s) -> ExactMatrix:
        return ExactMatrix(self.shape, {k: v * s for k, v in self.entries.items()})

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] - v if k in out else -v
        return ExactMatrix(self.shape, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and not (self - other).entries

    __hash__ = None  # type: ignore[assignment]

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.entries)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=complex)
        for (i, j), v in self.entries.items():
            out[i, j] = complex(v)
        return out

    def rows(self) -> list[list[Cyclotomic]]:
        return [[self[i, j] for j in range(self.shape[1])] for i in range(self.shape[0])]


def rref(rows: Iterable[Sequence[Cyclotomic]]) -> tuple[list[list[Cyclotomic]], list[int], list[list[Cyclotomic]]]:
    """Reduced row echelon form of ``rows`` over Q(zeta).

    Returns (reduced rows, pivot columns, transform) where the transform
    expresses each reduced row as a combination of the input rows.
    """
    mat = [list(r) for r in rows]
    n = len(mat)
    width = len(mat[0]) if n else 0
    zero = Cyclotomic.zero()
    one = Cyclotomic.rational(1)
    T = [[one if i == j else zero for j in range(n)] for i in range(n)]
    pivots: list[int] = []
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, n) if not mat[i][col].is_zero()), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        T[r], T[piv] = T[piv], T[r]
        inv = mat[r][col].inverse()
        mat[r] = [v * inv for v in mat[r]]
        T[r] = [v * inv for v in T[r]]
        for i in range(n):
            if i != r and not mat[i][col].is_zero():
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
                T[i] = [a - f * b for a, b in zip(T[i], T[r])]
        pivots.append(col)
        r += 1
        if r == n:
            break
    return mat[:r], pivots, T[:r]
