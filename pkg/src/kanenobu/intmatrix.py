"""
Exact integer matrices: fraction-free determinants and Smith normal form.

Entries are Python ints, so nothing ever overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod


@dataclass(frozen=True)
class IntMatrix:
    """A rectangular matrix of arbitrary-precision integers (row-major)."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def from_lists(cls, rows) -> IntMatrix:
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_lists([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(zip(*self.rows)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(tuple(tuple(-x for x in r) for r in self.rows))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        )

    def submatrix(self, rows, cols) -> IntMatrix:
        return IntMatrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def delete(self, row: int, col: int) -> IntMatrix:
        """Matrix with one row and one column removed."""
        h, w = self.shape
        return self.submatrix([i for i in range(h) if i != row], [j for j in range(w) if j != col])

    def is_symmetric(self) -> bool:
        return self.rows == self.transpose().rows

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def to_json(self) -> list[list[str]]:
        # decimal strings so consumers never truncate big entries
        return [[str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> IntMatrix:
        return cls.from_lists([[int(x) for x in r] for r in data])


def determinant(m: IntMatrix) -> int:
    """Signed determinant by Bareiss fraction-free elimination."""
    n, w = m.shape
    if n != w:
        raise ValueError("determinant of a non-square matrix")
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def knot_determinant(m: IntMatrix) -> int:
    """|det m|, the order of the group presented by a square matrix (0 if infinite)."""
    return abs(determinant(m))


@dataclass(frozen=True)
class AbelianStructure:
    """Finitely generated abelian group Z/d1 + ... + Z/dk + Z^free_rank.

    ``invariant_factors`` is the nonzero SNF diagonal, units included,
    so a cyclic group of order 25 on four generators reads (1, 1, 1, 25).
    """

    invariant_factors: tuple[int, ...]
    free_rank: int = 0

    def __post_init__(self):
        fs = self.invariant_factors
        if any(d <= 0 for d in fs):
            raise ValueError("invariant factors must be positive")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"divisibility chain broken: {fs}")

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        return None if self.free_rank else prod(self.invariant_factors)

    @property
    def is_cyclic(self) -> bool:
        return self.free_rank == 0 and len(self.torsion) <= 1

    def to_json(self) -> dict:
        return {
            "invariant_factors": [str(d) for d in self.invariant_factors],
            "free_rank": self.free_rank,
        }


@dataclass(frozen=True)
class SmithForm:
    structure: AbelianStructure
    diagonal: IntMatrix
    U: IntMatrix
    V: IntMatrix


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form with unimodular U, V such that U @ m @ V is diagonal.

    Pivots on the smallest nonzero absolute value in the active block.
    The cokernel of ``m`` (columns as relations) is read off the diagonal:
    ``Z^h / im(m)`` is the returned AbelianStructure.
    """
    h, w = m.shape
    a = m.tolist()
    U = _identity(h)
    V = _identity(w)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):  # row dst += c * row src
        if c:
            a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):  # col dst += c * col src
        if c:
            for r in a:
                r[dst] += c * r[src]
            for r in V:
                r[dst] += c * r[src]

    for t in range(min(h, w)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, h) for j in range(t, w) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = a[t][t]
            clean = True
            for i in range(t + 1, h):
                q = a[i][t] // piv
                add_row(t, i, -q)
                clean &= a[i][t] == 0
            for j in range(t + 1, w):
                q = a[t][j] // piv
                add_col(t, j, -q)
                clean &= a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, h) for j in range(t + 1, w) if a[i][j] % piv), None
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]

    diag = [a[i][i] for i in range(min(h, w))]
    nonzero = [d for d in diag if d]
    free_rank = h - len(nonzero)
    structure = AbelianStructure(tuple(nonzero), free_rank)
    return SmithForm(structure, IntMatrix.from_lists(a), IntMatrix.from_lists(U), IntMatrix.from_lists(V))
