"""Dense exact matrices over the Gaussian rationals.

Matrices are stored row-major as lists of :class:`~nilpath.scalar.Scalar`
and treated as immutable after construction; all operations return new
values, so concurrent readers are safe.  Rank and determinant use
fraction-free (Bareiss) elimination to bound intermediate growth.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputFormatError, SingularMatrixError
from .scalar import ONE, ZERO, Scalar, format_scalar, parse_scalar


class Matrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence[Scalar]]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        data = [list(r) for r in data]
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("entry grid does not match declared dimensions")
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- constructors ------------------------------------------------

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "Matrix":
        m = Matrix.zeros(n, n)
        for i in range(n):
            m.data[i][i] = ONE
        return m

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Matrix":
        """Build from nested sequences of ints/Fractions/Scalars."""
        conv = [[e if isinstance(e, Scalar) else Scalar(e) for e in r] for r in rows]
        n = len(conv)
        c = len(conv[0]) if conv else 0
        return Matrix(n, c, conv)

    @staticmethod
    def column(entries: Sequence[Scalar]) -> "Matrix":
        return Matrix(len(entries), 1, [[e] for e in entries])

    def column_entries(self, j: int = 0) -> list[Scalar]:
        return [self.data[i][j] for i in range(self.rows)]

    # -- basic queries -------------------------------------------------

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.data for e in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(a == b for ra, rb in zip(self.data, other.data) for a, b in zip(ra, rb))
        )

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(e) for e in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same_shape(self, other)
        return Matrix(
            self.rows,
            self.cols,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        _check_same_shape(self, other)
        return Matrix(
            self.rows,
            self.cols,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [[-a for a in r] for r in self.data])

    def scale(self, c: Scalar) -> "Matrix":
        if not isinstance(c, Scalar):
            c = Scalar(c)
        return Matrix(self.rows, self.cols, [[a * c for a in r] for r in self.data])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return matrix_mul(self, other)
        return NotImplemented

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [list(col) for col in zip(*self.data)] if self.rows and self.cols else [[] for _ in range(self.cols)])


def _check_same_shape(a: Matrix, b: Matrix) -> None:
    if a.rows != b.rows or a.cols != b.cols:
        raise ValueError(f"shape mismatch: {a.rows}x{a.cols} vs {b.rows}x{b.cols}")


def jordan_cell(k: int) -> Matrix:
    """The size-k nilpotent cell with ones on the superdiagonal; k=0 is empty."""
    if k < 0:
        raise ValueError("cell size must be non-negative")
    m = Matrix.zeros(k, k)
    for i in range(k - 1):
        m.data[i][i + 1] = ONE
    return m


def direct_sum(blocks: Iterable[Matrix]) -> Matrix:
    blocks = list(blocks)
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = Matrix.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        for i in range(b.rows):
            out.data[r + i][c : c + b.cols] = list(b.data[i])
        r += b.rows
        c += b.cols
    return out


def matrix_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = [[ZERO] * b.cols for _ in range(a.rows)]
    bdata = b.data
    for i in range(a.rows):
        arow = a.data[i]
        orow = out[i]
        for k in range(a.cols):
            aik = arow[k]
            if not aik.is_zero():
                brow = bdata[k]
                for j in range(b.cols):
                    bkj = brow[j]
                    if not bkj.is_zero():
                        orow[j] = orow[j] + aik * bkj
    return Matrix(a.rows, b.cols, out)


def matrix_pow(m: Matrix, e: int) -> Matrix:
    """Power by repeated multiplication; the empty matrix stays empty."""
    if not m.is_square():
        raise ValueError("power of a non-square matrix")
    if e < 0:
        raise ValueError("negative matrix power")
    out = Matrix.identity(m.rows)
    for _ in range(e):
        out = matrix_mul(out, m)
    return out


# -- elimination -----------------------------------------------------------


def _bareiss(data: list[list[Scalar]], rows: int, cols: int):
    """Fraction-free elimination; returns (rank, sign, last_pivot)."""
    r = 0
    sign = 1
    prev = ONE
    piv_val = ONE
    for c in range(cols):
        if r >= rows:
            break
        p = r
        while p < rows and data[p][c].is_zero():
            p += 1
        if p == rows:
            continue
        if p != r:
            data[p], data[r] = data[r], data[p]
            sign = -sign
        piv = data[r][c]
        for i in range(r + 1, rows):
            lead = data[i][c]
            row_i = data[i]
            row_r = data[r]
            if lead.is_zero():
                for j in range(c + 1, cols):
                    if not row_i[j].is_zero():
                        row_i[j] = (piv * row_i[j]) / prev
            else:
                for j in range(c + 1, cols):
                    row_i[j] = (piv * row_i[j] - lead * row_r[j]) / prev
                row_i[c] = ZERO
        prev = piv
        piv_val = piv
        r += 1
    return r, sign, piv_val


def rank(m: Matrix) -> int:
    data = [list(r) for r in m.data]
    rk, _, _ = _bareiss(data, m.rows, m.cols)
    return rk


def det(m: Matrix) -> Scalar:
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    if m.rows == 0:
        return ONE
    data = [list(r) for r in m.data]
    rk, sign, piv = _bareiss(data, m.rows, m.cols)
    if rk < m.rows:
        return ZERO
    return piv if sign > 0 else -piv


def inverse(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination; raises if singular."""
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = [list(m.data[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    for c in range(n):
        p = c
        while p < n and aug[p][c].is_zero():
            p += 1
        if p == n:
            raise SingularMatrixError("matrix is singular")
        if p != c:
            aug[p], aug[c] = aug[c], aug[p]
        piv = aug[c][c]
        if piv != ONE:
            aug[c] = [e / piv for e in aug[c]]
        prow = aug[c]
        for i in range(n):
            if i == c:
                continue
            f = aug[i][c]
            if f.is_zero():
                continue
            row = aug[i]
            for j in range(c, 2 * n):
                if not prow[j].is_zero():
                    row[j] = row[j] - f * prow[j]
    return Matrix(n, n, [row[n:] for row in aug])


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Solve ``a @ x = b`` for square invertible ``a``; raises if singular."""
    if not a.is_square() or a.rows != b.rows:
        raise ValueError("solve shape mismatch")
    n = a.rows
    w = b.cols
    aug = [list(a.data[i]) + list(b.data[i]) for i in range(n)]
    for c in range(n):
        p = c
        while p < n and aug[p][c].is_zero():
            p += 1
        if p == n:
            raise SingularMatrixError("singular system")
        if p != c:
            aug[p], aug[c] = aug[c], aug[p]
        piv = aug[c][c]
        if piv != ONE:
            aug[c] = [e / piv for e in aug[c]]
        prow = aug[c]
        for i in range(n):
            if i == c:
                continue
            f = aug[i][c]
            if f.is_zero():
                continue
            row = aug[i]
            for j in range(c, n + w):
                if not prow[j].is_zero():
                    row[j] = row[j] - f * prow[j]
    return Matrix(n, w, [row[n:] for row in aug])


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    data = [list(r) for r in m.data]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r >= m.rows:
            break
        p = r
        while p < m.rows and data[p][c].is_zero():
            p += 1
        if p == m.rows:
            continue
        if p != r:
            data[p], data[r] = data[r], data[p]
        piv = data[r][c]
        if piv != ONE:
            data[r] = [e / piv for e in data[r]]
        prow = data[r]
        for i in range(m.rows):
            if i == r:
                continue
            f = data[i][c]
            if f.is_zero():
                continue
            row = data[i]
            for j in range(c, m.cols):
                if not prow[j].is_zero():
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return Matrix(m.rows, m.cols, data), pivots


def kernel_basis(m: Matrix) -> list[Matrix]:
    """Echelon-ordered basis of the null space, as column matrices.

    Basis vectors are parametrized by free columns in ascending order, so
    the result is deterministic.
    """
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [ZERO] * m.cols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            e = red.data[r][fc]
            if not e.is_zero():
                v[pc] = -e
        basis.append(Matrix.column(v))
    return basis


class SpanTracker:
    """Incremental row-reduction structure for independence tests."""

    def __init__(self):
        self._rows: list[list[Scalar]] = []
        self._pivots: list[int] = []

    def contains(self, vec: Matrix) -> bool:
        return self._reduce(vec.column_entries()) is None

    def add(self, vec: Matrix) -> bool:
        """Add the vector; returns True if it enlarged the span."""
        reduced = self._reduce(vec.column_entries())
        if reduced is None:
            return False
        v, piv = reduced
        lead = v[piv]
        if lead != ONE:
            v = [e / lead for e in v]
        self._rows.append(v)
        self._pivots.append(piv)
        return True

    def _reduce(self, v: list[Scalar]):
        v = list(v)
        for row, piv in zip(self._rows, self._pivots):
            f = v[piv]
            if not f.is_zero():
                for j in range(len(v)):
                    if not row[j].is_zero():
                        v[j] = v[j] - f * row[j]
        for j, e in enumerate(v):
            if not e.is_zero():
                return v, j
        return None


# -- matrix-space vectorization (column-major stacking) ---------------------


def vec(m: Matrix) -> Matrix:
    """Stack columns into a single column of length rows*cols."""
    out = []
    for j in range(m.cols):
        for i in range(m.rows):
            out.append(m.data[i][j])
    return Matrix.column(out)


def unvec(v: Matrix, n: int) -> Matrix:
    """Inverse of :func:`vec` for an n-by-n matrix."""
    if v.rows != n * n or v.cols != 1:
        raise ValueError("unvec shape mismatch")
    out = Matrix.zeros(n, n)
    for j in range(n):
        for i in range(n):
            out.data[i][j] = v.data[j * n + i][0]
    return out


# -- JSON format -------------------------------------------------------------


def matrix_to_json_obj(m: Matrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[format_scalar(e) for e in row] for row in m.data],
    }


def matrix_from_json_obj(obj) -> Matrix:
    if not isinstance(obj, dict):
        raise InputFormatError("matrix JSON must be an object")
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"bad matrix JSON: {exc}") from None
    if not isinstance(entries, list) or len(entries) != rows:
        raise InputFormatError("matrix JSON: wrong number of rows")
    data = []
    for row in entries:
        if not isinstance(row, list) or len(row) != cols:
            raise InputFormatError("matrix JSON: wrong row length")
        data.append([parse_scalar(e) for e in row])
    return Matrix(rows, cols, data)


def matrix_to_json(m: Matrix) -> str:
    return json.dumps(matrix_to_json_obj(m))


def matrix_from_json(text: str) -> Matrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc}") from None
    return matrix_from_json_obj(obj)


def random_invertible(n: int, rng, lo: int = -3, hi: int = 3) -> Matrix:
    """Random integer matrix with nonzero determinant (rejection sampling)."""
    while True:
        m = Matrix.from_rows(
            [[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]
        )
        if not det(m).is_zero():
            return m
