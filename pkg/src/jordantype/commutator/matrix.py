"""Sparse matrices over GF(p) and over the polynomial ring of edge variables.

Rows and columns are indexed by the global basis of the partition, and
entry ``[v, w]`` is the coefficient of ``w`` in the image of ``v``.  With
this convention ``(A^u)[v, w]`` is the coefficient of ``w`` in ``A^u(v)``.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..poset import Vertex
from . import gf
from .poly import SparsePoly


class SparseMatrix:
    """Immutable matrix over GF(p) storing only nonzero entries."""

    __slots__ = ("n", "p", "_entries", "basis")

    def __init__(self, n: int, p: int, entries: Mapping[tuple[int, int], int] | None = None,
                 basis: Sequence[Vertex] | None = None):
        self.n = int(n)
        self.p = int(p)
        clean = {}
        for (r, c), x in (entries or {}).items():
            if not (0 <= r < n and 0 <= c < n):
                raise IndexError(f"entry ({r}, {c}) outside a {n}x{n} matrix")
            x = int(x) % self.p
            if x:
                clean[(int(r), int(c))] = x
        self._entries = clean
        self.basis = tuple(basis) if basis is not None else None
        if self.basis is not None and len(self.basis) != n:
            raise ValueError("basis length does not match dimension")

    @property
    def entries(self) -> dict[tuple[int, int], int]:
        return dict(self._entries)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._entries.get(key, 0)

    def nnz(self) -> int:
        return len(self._entries)

    @classmethod
    def from_dense(cls, M, p: int, basis=None) -> "SparseMatrix":
        M = np.asarray(M, dtype=np.int64) % p
        n = M.shape[0]
        if M.shape != (n, n):
            raise ValueError("expected a square matrix")
        rows, cols = np.nonzero(M)
        return cls(n, p, {(int(r), int(c)): int(M[r, c]) for r, c in zip(rows, cols)}, basis)

    def to_dense(self) -> np.ndarray:
        M = np.zeros((self.n, self.n), dtype=np.int64)
        for (r, c), x in self._entries.items():
            M[r, c] = x
        return M

    def _check(self, other: "SparseMatrix"):
        if not isinstance(other, SparseMatrix):
            raise TypeError("expected a SparseMatrix")
        if other.n != self.n or other.p != self.p:
            raise ValueError("matrices have different sizes or fields")

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check(other)
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (r, c), x in other._entries.items():
            by_row.setdefault(r, []).append((c, x))
        out: dict[tuple[int, int], int] = {}
        for (r, m), x in self._entries.items():
            for c, y in by_row.get(m, ()):
                out[(r, c)] = (out.get((r, c), 0) + x * y) % self.p
        return SparseMatrix(self.n, self.p, out, self.basis)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check(other)
        out = dict(self._entries)
        for key, x in other._entries.items():
            out[key] = out.get(key, 0) + x
        return SparseMatrix(self.n, self.p, out, self.basis)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check(other)
        return self + SparseMatrix(self.n, self.p, {k: -x for k, x in other._entries.items()})

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.n == other.n and self.p == other.p and self._entries == other._entries

    __hash__ = None

    def is_zero(self) -> bool:
        return not self._entries

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.n, self.p, {(c, r): x for (r, c), x in self._entries.items()},
                            self.basis)

    def power(self, k: int) -> "SparseMatrix":
        if k < 0:
            raise ValueError("negative power")
        result = identity(self.n, self.p, self.basis)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def rank(self) -> int:
        return int(gf.rank_mod(self.to_dense(), self.p))

    def is_nilpotent(self) -> bool:
        """A^n = 0, checked by squaring until the exponent reaches n."""
        X, e = self, 1
        while e < self.n and not X.is_zero():
            X, e = X @ X, 2 * e
        return X.is_zero()

    def commutes_with(self, other: "SparseMatrix") -> bool:
        return self @ other == other @ self

    def to_json(self) -> dict:
        data = {"n": self.n, "p": self.p,
                "entries": [[r, c, x] for (r, c), x in sorted(self._entries.items())]}
        if self.basis is not None:
            data["basis"] = [list(v) for v in self.basis]
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self) -> str:
        return f"SparseMatrix(n={self.n}, p={self.p}, nnz={self.nnz()})"


def identity(n: int, p: int, basis=None) -> SparseMatrix:
    return SparseMatrix(n, p, {(j, j): 1 for j in range(n)}, basis)


class PolyMatrix:
    """Matrix with SparsePoly entries, stored as a dict of nonzero entries."""

    __slots__ = ("nrows", "ncols", "_entries", "row_labels", "col_labels")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], SparsePoly] | None = None,
                 row_labels: Sequence | None = None, col_labels: Sequence | None = None):
        self.nrows, self.ncols = int(nrows), int(ncols)
        self._entries = {k: v for k, v in (entries or {}).items() if not v.is_zero()}
        self.row_labels = tuple(row_labels) if row_labels is not None else None
        self.col_labels = tuple(col_labels) if col_labels is not None else None

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> dict[tuple[int, int], SparsePoly]:
        return dict(self._entries)

    def __getitem__(self, key: tuple[int, int]) -> SparsePoly:
        return self._entries.get(key, SparsePoly())

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, SparsePoly]]] = {}
        for (r, c), x in other._entries.items():
            by_row.setdefault(r, []).append((c, x))
        out: dict[tuple[int, int], SparsePoly] = {}
        for (r, m), x in self._entries.items():
            for c, y in by_row.get(m, ()):
                out[(r, c)] = out.get((r, c), SparsePoly()) + x * y
        return PolyMatrix(self.nrows, other.ncols, out, self.row_labels, other.col_labels)

    def power(self, k: int) -> "PolyMatrix":
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        result = PolyMatrix(self.nrows, self.ncols, {(j, j): SparsePoly.const(1) for j in range(self.nrows)},
                            self.row_labels, self.col_labels)
        for _ in range(k):
            result = result @ self
        return result

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "PolyMatrix":
        rows, cols = list(rows), list(cols)
        out = {}
        for a, r in enumerate(rows):
            for b, c in enumerate(cols):
                x = self._entries.get((r, c))
                if x is not None:
                    out[(a, b)] = x
        rl = [self.row_labels[r] for r in rows] if self.row_labels else None
        cl = [self.col_labels[c] for c in cols] if self.col_labels else None
        return PolyMatrix(len(rows), len(cols), out, rl, cl)

    def evaluate(self, assignment, p: int) -> np.ndarray:
        M = np.zeros(self.shape, dtype=np.int64)
        for (r, c), x in self._entries.items():
            M[r, c] = x.evaluate(assignment, p)
        return M

    def max_degree(self) -> int:
        return max((x.degree() for x in self._entries.values()), default=-1)

    def to_json(self) -> dict:
        return {"shape": [self.nrows, self.ncols],
                "entries": [[r, c, str(x)] for (r, c), x in sorted(self._entries.items())]}

    def __repr__(self) -> str:
        return f"PolyMatrix({self.nrows}x{self.ncols}, nnz={len(self._entries)})"
