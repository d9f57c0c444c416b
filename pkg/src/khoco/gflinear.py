"""Exact linear algebra over GF(2) and GF(3).

Vectors are bit-packed into Python integers: a GF(2) vector is one bitmask,
a GF(3) vector is a pair of bitmasks (plane of ones, plane of twos).  All
elimination uses deterministic pivoting on the lowest set row index, so
ranks, kernels and solved preimages are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import FieldMismatch


def gf3_add(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    a1, a2 = a
    b1, b2 = b
    ones = (a1 & ~b1 & ~b2) | (b1 & ~a1 & ~a2) | (a2 & b2)
    twos = (a2 & ~b1 & ~b2) | (b2 & ~a1 & ~a2) | (a1 & b1)
    return ones, twos


def gf3_neg(a: tuple[int, int]) -> tuple[int, int]:
    return a[1], a[0]


def gf3_scale(a: tuple[int, int], c: int) -> tuple[int, int]:
    c %= 3
    if c == 0:
        return 0, 0
    if c == 1:
        return a
    return a[1], a[0]


def gf3_get(a: tuple[int, int], i: int) -> int:
    if (a[0] >> i) & 1:
        return 1
    if (a[1] >> i) & 1:
        return 2
    return 0


@dataclass(frozen=True)
class GFVector:
    """Vector over GF(q), q in {2, 3}, packed into integer bit planes."""

    q: int
    length: int
    data: object  # int for q=2, (int, int) for q=3

    @staticmethod
    def zero(q: int, length: int) -> "GFVector":
        return GFVector(q, length, 0 if q == 2 else (0, 0))

    @staticmethod
    def from_support(q: int, length: int, support: Iterable[tuple[int, int]]) -> "GFVector":
        if q == 2:
            m = 0
            for i, v in support:
                if v % 2:
                    m |= 1 << i
            return GFVector(2, length, m)
        p1 = p2 = 0
        for i, v in support:
            v %= 3
            if v == 1:
                p1 |= 1 << i
            elif v == 2:
                p2 |= 1 << i
        return GFVector(3, length, (p1, p2))

    @property
    def support(self) -> list[tuple[int, int]]:
        out = []
        if self.q == 2:
            m = self.data
            while m:
                low = m & -m
                out.append((low.bit_length() - 1, 1))
                m ^= low
        else:
            p1, p2 = self.data
            m = p1 | p2
            while m:
                low = m & -m
                i = low.bit_length() - 1
                out.append((i, 1 if (p1 >> i) & 1 else 2))
                m ^= low
        return out

    @property
    def weight(self) -> int:
        if self.q == 2:
            return self.data.bit_count()
        return (self.data[0] | self.data[1]).bit_count()

    def is_zero(self) -> bool:
        return self.data == 0 if self.q == 2 else self.data == (0, 0)

    def get(self, i: int) -> int:
        if self.q == 2:
            return (self.data >> i) & 1
        return gf3_get(self.data, i)

    def __add__(self, other: "GFVector") -> "GFVector":
        assert self.q == other.q and self.length == other.length
        if self.q == 2:
            return GFVector(2, self.length, self.data ^ other.data)
        return GFVector(3, self.length, gf3_add(self.data, other.data))

    def scale(self, c: int) -> "GFVector":
        if self.q == 2:
            return self if c % 2 else GFVector.zero(2, self.length)
        return GFVector(3, self.length, gf3_scale(self.data, c))


class GFMatrix:
    """Column-major matrix over GF(q); columns are packed bit planes.

    Immutable after construction.  Elimination state (pivot registry and
    column-combination witnesses) is computed lazily once and cached.
    """

    __slots__ = ("q", "rows", "cols", "_cols", "_elim")

    def __init__(self, q: int, rows: int, cols: int, columns=None):
        if q not in (2, 3):
            raise ValueError("only GF(2) and GF(3) are supported")
        self.q = q
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [0 if q == 2 else (0, 0)] * cols
        self._cols = list(columns)
        self._elim = None

    @staticmethod
    def from_entries(q: int, rows: int, cols: int,
                     entries: Iterable[tuple[int, int, int]]) -> "GFMatrix":
        """entries: (row, col, value); duplicate positions are summed mod q."""
        if q == 2:
            data = [0] * cols
            for r, c, v in entries:
                if v % 2:
                    data[c] ^= 1 << r
            return GFMatrix(2, rows, cols, data)
        data = [(0, 0)] * cols
        for r, c, v in entries:
            v %= 3
            if v:
                data[c] = gf3_add(data[c], ((1 << r, 0) if v == 1 else (0, 1 << r)))
        return GFMatrix(3, rows, cols, data)

    def column(self, j: int):
        return self._cols[j]

    def column_vector(self, j: int) -> GFVector:
        return GFVector(self.q, self.rows, self._cols[j])

    def entry(self, i: int, j: int) -> int:
        c = self._cols[j]
        return (c >> i) & 1 if self.q == 2 else gf3_get(c, i)

    def entries(self) -> list[tuple[int, int, int]]:
        out = []
        for j in range(self.cols):
            for i, v in GFVector(self.q, self.rows, self._cols[j]).support:
                out.append((i, j, v))
        return out

    def is_zero(self) -> bool:
        zero = 0 if self.q == 2 else (0, 0)
        return all(c == zero for c in self._cols)

    def transpose(self) -> "GFMatrix":
        return GFMatrix.from_entries(
            self.q, self.cols, self.rows,
            ((j, i, v) for i, j, v in self.entries()))

    def compose(self, inner: "GFMatrix") -> "GFMatrix":
        """Matrix product self @ inner (inner applied first)."""
        if self.q != inner.q:
            raise FieldMismatch("cannot compose matrices over different fields")
        assert self.cols == inner.rows
        out = []
        for j in range(inner.cols):
            if self.q == 2:
                acc = 0
                m = inner._cols[j]
                while m:
                    low = m & -m
                    acc ^= self._cols[low.bit_length() - 1]
                    m ^= low
            else:
                acc = (0, 0)
                for i, v in GFVector(3, inner.rows, inner._cols[j]).support:
                    acc = gf3_add(acc, gf3_scale(self._cols[i], v))
            out.append(acc)
        return GFMatrix(self.q, self.rows, inner.cols, out)

    def apply(self, x: GFVector) -> GFVector:
        """Matrix-vector product."""
        assert x.length == self.cols and x.q == self.q
        if self.q == 2:
            acc = 0
            m = x.data
            while m:
                low = m & -m
                acc ^= self._cols[low.bit_length() - 1]
                m ^= low
            return GFVector(2, self.rows, acc)
        acc = (0, 0)
        for i, v in x.support:
            acc = gf3_add(acc, gf3_scale(self._cols[i], v))
        return GFVector(3, self.rows, acc)

    # -- elimination ------------------------------------------------------

    def _eliminate(self):
        """Column reduction with combo tracking; cached."""
        if self._elim is not None:
            return self._elim
        q = self.q
        pivots = {}  # pivot row -> (reduced column, combo over input columns)
        kernel = []
        for j in range(self.cols):
            if q == 2:
                v = self._cols[j]
                u = 1 << j
                while v:
                    p = (v & -v).bit_length() - 1
                    hit = pivots.get(p)
                    if hit is None:
                        pivots[p] = (v, u)
                        break
                    v ^= hit[0]
                    u ^= hit[1]
                else:
                    kernel.append(u)
            else:
                v = self._cols[j]
                u = (1 << j, 0)
                while v != (0, 0):
                    mask = v[0] | v[1]
                    p = (mask & -mask).bit_length() - 1
                    hit = pivots.get(p)
                    if hit is None:
                        pivots[p] = (v, u)
                        break
                    pv, pu = hit
                    # multiplier m with v - m*pv vanishing at row p
                    m = (gf3_get(v, p) * gf3_get(pv, p)) % 3  # inverse of x is x mod 3
                    v = gf3_add(v, gf3_scale(pv, 3 - m))
                    u = gf3_add(u, gf3_scale(pu, 3 - m))
                else:
                    kernel.append(u)
        self._elim = (pivots, kernel)
        return self._elim

    def rank(self) -> int:
        return len(self._eliminate()[0])

    def kernel_basis(self) -> list[GFVector]:
        return [GFVector(self.q, self.cols, u) for u in self._eliminate()[1]]

    def reduce_against_image(self, b: GFVector):
        """Reduce b modulo the column space.

        Returns (residual, combo): residual is zero iff b is in the image,
        in which case combo is a preimage over the matrix columns.
        """
        assert b.q == self.q and b.length == self.rows
        pivots = self._eliminate()[0]
        if self.q == 2:
            v = b.data
            u = 0
            while v:
                p = (v & -v).bit_length() - 1
                hit = pivots.get(p)
                if hit is None:
                    break
                v ^= hit[0]
                u ^= hit[1]
            return GFVector(2, self.rows, v), GFVector(2, self.cols, u)
        v = b.data
        u = (0, 0)
        while v != (0, 0):
            mask = v[0] | v[1]
            p = (mask & -mask).bit_length() - 1
            hit = pivots.get(p)
            if hit is None:
                break
            pv, pu = hit
            m = (gf3_get(v, p) * gf3_get(pv, p)) % 3
            # v tracks b - M u, so the residual loses m*pv while the
            # preimage combination gains m*pu
            v = gf3_add(v, gf3_scale(pv, 3 - m))
            u = gf3_add(u, gf3_scale(pu, m))
        return GFVector(3, self.rows, v), GFVector(3, self.cols, u)

    def __eq__(self, other):
        return (isinstance(other, GFMatrix) and self.q == other.q
                and self.rows == other.rows and self.cols == other.cols
                and self._cols == other._cols)

    def __repr__(self):
        return f"GFMatrix(q={self.q}, {self.rows}x{self.cols})"


def rank(matrix: GFMatrix) -> int:
    return matrix.rank()


def kernel_basis(matrix: GFMatrix) -> list[GFVector]:
    return matrix.kernel_basis()


def in_image(matrix: GFMatrix, b: GFVector) -> tuple[bool, Optional[GFVector]]:
    """Whether b lies in the column space; returns one preimage when it does."""
    residual, combo = matrix.reduce_against_image(b)
    if residual.is_zero():
        return True, combo
    return False, None
