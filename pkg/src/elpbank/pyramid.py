"""Laplacian pyramid matrices and their extended versions.

For lowpass filters ``h, g`` with polyphase rows ``H, G`` the Laplacian
pyramid matrix is ``[H; I - G* H]``.  The extended matrix inserts one row
``conj(l_j) H`` per generator ``l_j``.  When ``1 - H G* = sum k_j conj(l_j)``
the two extended matrices built from ``(h, g, L)`` and ``(g, h, K)`` are
left inverses of each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .algebra import LaurentPoly
from .filters import Filter, polyphase_decompose
from .verdict import NonVanishingGenerator, SchemeMismatch, Verdict

__all__ = [
    "PolyMatrix",
    "lp_matrix",
    "extended_lp_matrix",
    "verify_core_identity",
    "maximal_minors",
]


@dataclass(frozen=True)
class PolyMatrix:
    """Dense matrix of Laurent polynomials sharing one dimension."""

    entries: tuple[tuple[LaurentPoly, ...], ...]
    dim: int

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged polynomial matrix")
        if any(p.dim != self.dim for r in rows for p in r):
            raise ValueError("entry dimension mismatch")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPoly]]) -> PolyMatrix:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("use PolyMatrix(entries, dim) for empty matrices")
        return cls(tuple(tuple(r) for r in rows), rows[0][0].dim)

    @classmethod
    def identity(cls, q: int, dim: int) -> PolyMatrix:
        one, zero = LaurentPoly.constant(dim, 1), LaurentPoly.zero(dim)
        return cls(tuple(tuple(one if i == j else zero for j in range(q)) for i in range(q)), dim)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self, idx: Sequence[int]) -> PolyMatrix:
        return PolyMatrix(tuple(self.entries[i] for i in idx), self.dim)

    def stack(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape[1] != other.shape[1] or self.dim != other.dim:
            raise ValueError("cannot stack matrices of different widths")
        return PolyMatrix(self.entries + other.entries, self.dim)

    def conj_transpose(self) -> PolyMatrix:
        r, c = self.shape
        return PolyMatrix(tuple(tuple(self.entries[i][j].conjugate() for i in range(r)) for j in range(c)), self.dim)

    H = property(conj_transpose)

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        zero = LaurentPoly.zero(self.dim)
        out = []
        for row in self.entries:
            new_row = []
            for j in range(other.shape[1]):
                acc = zero
                for a, r in zip(row, other.entries):
                    b = r[j]
                    if a and b:
                        acc = acc + a * b
                new_row.append(acc)
            out.append(tuple(new_row))
        return PolyMatrix(tuple(out), self.dim)

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)), self.dim
        )

    def compare_identity(self) -> Verdict:
        """Exact test against ``I``; reports the first offending entry."""
        r, c = self.shape
        if r != c:
            return Verdict(False, "shape", self.shape, detail="matrix is not square")
        for i in range(r):
            for j in range(c):
                e = self.entries[i][j]
                res = e - 1 if i == j else e
                if res:
                    return Verdict(False, "entry differs from identity", (i, j), res)
        return Verdict.ok()

    def det(self) -> LaurentPoly:
        """Determinant by cofactor expansion along the sparsest row or column."""
        r, c = self.shape
        if r != c:
            raise ValueError("determinant of a non-square matrix")
        return _det([list(row) for row in self.entries], self.dim)


def _det(m: list[list[LaurentPoly]], dim: int) -> LaurentPoly:
    n = len(m)
    if n == 0:
        return LaurentPoly.constant(dim, 1)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    row_zeros = [sum(1 for p in row if not p) for row in m]
    col_zeros = [sum(1 for i in range(n) if not m[i][j]) for j in range(n)]
    best_r = max(range(n), key=lambda i: row_zeros[i])
    best_c = max(range(n), key=lambda j: col_zeros[j])
    total = LaurentPoly.zero(dim)
    if row_zeros[best_r] >= col_zeros[best_c]:
        i = best_r
        for j in range(n):
            if not m[i][j]:
                continue
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            term = m[i][j] * _det(minor, dim)
            total = total + term if (i + j) % 2 == 0 else total - term
    else:
        j = best_c
        for i in range(n):
            if not m[i][j]:
                continue
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            term = m[i][j] * _det(minor, dim)
            total = total + term if (i + j) % 2 == 0 else total - term
    return total


def maximal_minors(m: PolyMatrix) -> dict[tuple[int, ...], LaurentPoly]:
    """All ``q x q`` minors of an ``s x q`` matrix, keyed by sorted row subset.

    Laplace expansion along the leftmost remaining column; sub-minors shared
    between row subsets are computed once and zero entries are skipped.
    """
    s, q = m.shape
    rows = m.entries
    memo: dict[tuple[tuple[int, ...], int], LaurentPoly] = {}

    def minor(subset: tuple[int, ...], col: int) -> LaurentPoly:
        if col == q:
            return LaurentPoly.constant(m.dim, 1)
        key = (subset, col)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = LaurentPoly.zero(m.dim)
        for pos, r in enumerate(subset):
            a = rows[r][col]
            if not a:
                continue
            rest = minor(subset[:pos] + subset[pos + 1:], col + 1)
            if not rest:
                continue
            total = total + a * rest if pos % 2 == 0 else total - a * rest
        memo[key] = total
        return total

    return {sigma: minor(sigma, 0) for sigma in itertools.combinations(range(s), q)}


def _polyphase_row(f: Filter) -> list[LaurentPoly]:
    return list(polyphase_decompose(f).components)


def _check_pair(h: Filter, g: Filter) -> None:
    if h.scheme != g.scheme:
        raise SchemeMismatch("filters are defined on different dilation schemes")


def _bottom_block(hrow, grow) -> list[tuple[LaurentPoly, ...]]:
    q = len(hrow)
    rows = []
    for i in range(q):
        gi = grow[i].conjugate()
        rows.append(tuple(int(i == j) - gi * hrow[j] for j in range(q)))
    return rows


def lp_matrix(h: Filter, g: Filter) -> PolyMatrix:
    """The ``(q+1) x q`` matrix ``[H; I - G* H]``."""
    return extended_lp_matrix(h, g, [])


def extended_lp_matrix(h: Filter, g: Filter, L: Sequence[LaurentPoly]) -> PolyMatrix:
    """The ``(q+J+1) x q`` matrix ``[H; conj(l_1) H; ...; conj(l_J) H; I - G* H]``."""
    _check_pair(h, g)
    dim = h.dim
    for j, l in enumerate(L):
        if l.dim != dim:
            raise SchemeMismatch(f"generator {j + 1} has dimension {l.dim}, expected {dim}")
        if l.eval_one():
            raise NonVanishingGenerator(f"generator {j + 1} does not vanish at z = 1")
    hrow, grow = _polyphase_row(h), _polyphase_row(g)
    rows = [tuple(hrow)]
    for l in L:
        lc = l.conjugate()
        rows.append(tuple(lc * e for e in hrow))
    rows.extend(_bottom_block(hrow, grow))
    return PolyMatrix(tuple(rows), dim)


def verify_core_identity(
    h: Filter, g: Filter, K: Sequence[LaurentPoly], L: Sequence[LaurentPoly]
) -> Verdict:
    """Check ``Phi_{g,h,K}^* Phi_{h,g,L} == I`` exactly."""
    if len(K) != len(L):
        raise ValueError(f"generator lists differ in length: {len(K)} vs {len(L)}")
    primal = extended_lp_matrix(h, g, L)
    dual = extended_lp_matrix(g, h, K)
    return (dual.H @ primal).compare_identity()
