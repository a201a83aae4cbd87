"""Dense exact matrices over the rationals.

Small sizes only (algebra dimensions stay in single digits), so plain
fraction Gaussian elimination is used throughout.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .unipoly import UniPoly

Scalar = Union[Fraction, int]
Vector = tuple[Fraction, ...]


class QMatrix:
    """Immutable rows x cols matrix of rationals."""

    __slots__ = ("m", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable[Scalar]]) -> None:
        m = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if not m:
            raise ValueError("matrix needs at least one row")
        width = len(m[0])
        if width == 0 or any(len(r) != width for r in m):
            raise ValueError("rows must be nonempty and of equal length")
        self.m = m
        self.rows = len(m)
        self.cols = width

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]]) -> "QMatrix":
        if not columns:
            raise ValueError("need at least one column")
        height = len(columns[0])
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(height)])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return all(not x for row in self.m for x in row)

    def entry(self, i: int, j: int) -> Fraction:
        return self.m[i][j]

    def row(self, i: int) -> Vector:
        return self.m[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.m == other.m

    def __hash__(self) -> int:
        return hash(self.m)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_shape(other)
        return QMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.m, other.m)])

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._check_shape(other)
        return QMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.m, other.m)])

    def __neg__(self) -> "QMatrix":
        return QMatrix([[-a for a in row] for row in self.m])

    def __rmul__(self, scalar: Scalar) -> "QMatrix":
        return QMatrix([[a * scalar for a in row] for row in self.m])

    def __mul__(self, other: "QMatrix") -> "QMatrix":
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        cols = [other.column(j) for j in range(other.cols)]
        return QMatrix([
            [sum(a * b for a, b in zip(row, col)) for col in cols]
            for row in self.m
        ])

    def matvec(self, v: Sequence[Scalar]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.m)

    def __pow__(self, k: int) -> "QMatrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def transpose(self) -> "QMatrix":
        return QMatrix([self.column(j) for j in range(self.cols)])

    def _check_shape(self, other: "QMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def rref(self) -> tuple["QMatrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices."""
        m = [list(row) for row in self.m]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pivot_row = next((i for i in range(r, self.rows) if m[i][c]), None)
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return QMatrix(m), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list[Vector]:
        """Basis of the right null space, reduced-echelon normalized.

        One vector per free column, with entry 1 at that column.
        """
        red, pivots = self.rref()
        pivot_set = set(pivots)
        basis: list[Vector] = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = [Fraction(0)] * self.cols
            v[free] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -red.m[r][free]
            basis.append(tuple(v))
        return basis

    def solve(self, b: Sequence[Scalar]) -> Vector | None:
        """One exact solution of self * x = b, or None if inconsistent.

        Free variables are set to zero.
        """
        if len(b) != self.rows:
            raise ValueError("right-hand side length mismatch")
        aug = QMatrix([list(row) + [bv] for row, bv in zip(self.m, b)])
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red.m[r][self.cols]
        return tuple(x)

    def det(self) -> Fraction:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        m = [list(row) for row in self.m]
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            pivot_row = next((i for i in range(c, n) if m[i][c]), None)
            if pivot_row is None:
                return Fraction(0)
            if pivot_row != c:
                m[c], m[pivot_row] = m[pivot_row], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] * inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return det

    def poly_at(self, p: UniPoly) -> "QMatrix":
        """Evaluate a univariate polynomial at this matrix (Horner)."""
        if not self.is_square:
            raise ValueError("polynomial of a non-square matrix")
        n = self.rows
        acc = QMatrix.zeros(n, n)
        for c in reversed(p.coeffs):
            acc = acc * self
            if c:
                acc = acc + c * QMatrix.identity(n)
        return acc

    def minimal_polynomial(self) -> UniPoly:
        """Monic annihilator of least degree."""
        if not self.is_square:
            raise ValueError("minimal polynomial of a non-square matrix")
        n = self.rows
        powers = [QMatrix.identity(n)]
        while True:
            powers.append(powers[-1] * self)
            target = [x for row in powers[-1].m for x in row]
            span = QMatrix.from_columns(
                [[x for row in p.m for x in row] for p in powers[:-1]]
            )
            combo = span.solve(target)
            if combo is not None:
                return UniPoly(list(-c for c in combo) + [1])

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.m)
        return f"QMatrix[{body}]"
