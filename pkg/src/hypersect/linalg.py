"""Exact dense matrices over QQ and GF(p).

Over QQ every elimination is fraction-free: rows are scaled to integers and
reduced with Bareiss' rule, so intermediate entries are minors of the input
and stay bounded.  Over GF(p) plain Gaussian elimination is used.  Pivots are
always the first nonzero entry found scanning down the current column.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .fields import QQ, DomainError, Field, PrimeField


class ShapeError(ValueError):
    pass


class Matrix:
    """An immutable exact matrix whose entries all lie in one field."""

    __slots__ = ("rows", "field", "nrows", "ncols")

    def __init__(self, rows, field: Field = QQ, ncols: int | None = None):
        rows = tuple(tuple(field.check(v) for v in row) for row in rows)
        if rows:
            widths = {len(r) for r in rows}
            if len(widths) != 1:
                raise ShapeError("ragged rows")
            width = widths.pop()
            if ncols is not None and ncols != width:
                raise ShapeError(f"expected {ncols} columns, got {width}")
            ncols = width
        elif ncols is None:
            ncols = 0
        self.rows = rows
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def from_values(cls, rows, field: Field = QQ, ncols: int | None = None) -> Matrix:
        """Build a matrix converting each entry into *field* (ints, Fractions, strings)."""
        return cls([[field.convert(v) for v in row] for row in rows], field, ncols)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> Matrix:
        one, zero = field.one, field.zero
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], field)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self):
        return hash((self.field, self.rows, self.ncols))

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in row) for row in self.rows)
        return f"Matrix[{self.field}]({self.nrows}x{self.ncols}: {body})"

    def transpose(self) -> Matrix:
        if not self.nrows:
            return Matrix([[]] * self.ncols, self.field, 0) if self.ncols else Matrix([], self.field, 0)
        return Matrix([list(col) for col in zip(*self.rows)], self.field)

    def column(self, j: int):
        return tuple(r[j] for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            _same_field(self, other)
            if self.ncols != other.nrows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            F = self.field
            cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
            out = [[_dot(F, row, col) for col in cols] for row in self.rows]
            return Matrix(out, F, other.ncols)
        return self.apply(other)

    def apply(self, vec):
        """Matrix-vector product with a plain sequence of field elements."""
        if len(vec) != self.ncols:
            raise ShapeError(f"vector of length {len(vec)} for {self.shape} matrix")
        F = self.field
        vec = [F.check(v) for v in vec]
        return tuple(_dot(F, row, vec) for row in self.rows)

    def stack(self, other: Matrix) -> Matrix:
        _same_field(self, other)
        if self.ncols != other.ncols:
            raise ShapeError("column counts differ")
        return Matrix(self.rows + other.rows, self.field, self.ncols)


def _dot(F, a, b):
    if isinstance(F, PrimeField):
        return sum(x * y for x, y in zip(a, b)) % F.p
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _same_field(*mats):
    fields = {m.field for m in mats}
    if len(fields) != 1:
        raise DomainError(f"mixed domains: {sorted(map(repr, fields))}")


def _integer_rows(m: Matrix):
    """Scale each row of a rational matrix to integers; return rows and scales."""
    out, scales = [], []
    for row in m.rows:
        s = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * s) for v in row])
        scales.append(s)
    return out, scales


def _bareiss_echelon(a: list[list[int]], ncols: int):
    """In-place fraction-free forward elimination.

    Returns ``(pivot_cols, swaps)``; rows ``0..len(pivot_cols)-1`` of *a* hold
    the echelon form, and the last pivot of a full-rank square matrix equals
    its determinant up to the sign given by the swap parity.
    """
    nrows = len(a)
    prev = 1
    r = 0
    pivots = []
    swaps = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            swaps += 1
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, ncols):
                # exact division: every entry is a minor of the input
                row[j] = (pv * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return pivots, swaps


def _modp_rref(m: Matrix, reduce_above: bool = True):
    p = m.field.p
    a = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        pr = a[r] = [v * inv % p for v in a[r]]
        targets = range(nrows) if reduce_above else range(r + 1, nrows)
        for i in targets:
            if i != r and a[i][c]:
                f = a[i][c]
                row = a[i]
                a[i] = [(x - f * y) % p for x, y in zip(row, pr)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rational_rref(m: Matrix):
    a, _ = _integer_rows(m)
    pivots, _ = _bareiss_echelon(a, m.ncols)
    rank = len(pivots)
    rows = [[Fraction(v) for v in a[i]] for i in range(rank)]
    for r in range(rank - 1, -1, -1):
        c = pivots[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        pr = rows[r]
        for i in range(r):
            f = rows[i][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
    return rows, pivots


def rref(m: Matrix):
    """Reduced row echelon form: ``(nonzero_rows, pivot_columns)``."""
    if isinstance(m.field, PrimeField):
        rows, piv = _modp_rref(m)
    else:
        rows, piv = _rational_rref(m)
    return [tuple(r) for r in rows], piv


def mat_rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if isinstance(m.field, PrimeField):
        return len(_modp_rref(m, reduce_above=False)[1])
    a, _ = _integer_rows(m)
    return len(_bareiss_echelon(a, m.ncols)[0])


def mat_kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of the right kernel in canonical (reduced echelon) form.

    Each returned vector has a leading 1 at a position where all other
    basis vectors vanish, so two matrices have the same kernel iff the
    returned lists are equal.
    """
    F = m.field
    rows, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivset]
    raw = []
    for f in free:
        v = [F.zero] * m.ncols
        v[f] = F.one
        for r, c in enumerate(pivots):
            v[c] = F.neg(rows[r][f])
        raw.append(v)
    if not raw:
        return []
    basis, _ = rref(Matrix(raw, F, m.ncols))
    return basis


def mat_det(m: Matrix):
    if m.nrows != m.ncols:
        raise ShapeError(f"determinant of non-square {m.shape} matrix")
    F = m.field
    n = m.nrows
    if n == 0:
        return F.one
    if isinstance(F, PrimeField):
        p = F.p
        a = [list(r) for r in m.rows]
        det = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                return 0
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            pv = a[c][c]
            det = det * pv % p
            inv = pow(pv, -1, p)
            for i in range(c + 1, n):
                f = a[i][c] * inv % p
                if f:
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
        return det % p
    a, scales = _integer_rows(m)
    pivots, swaps = _bareiss_echelon(a, n)
    if len(pivots) < n:
        return Fraction(0)
    det = Fraction(a[n - 1][n - 1])
    for s in scales:
        det /= s
    return -det if swaps % 2 else det


def mat_inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if m.ncols != n:
        raise ShapeError("inverse of non-square matrix")
    F = m.field
    aug = Matrix([list(r) + list(e) for r, e in zip(m.rows, Matrix.identity(n, F).rows)], F)
    rows, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return Matrix([r[n:] for r in rows[:n]], F)


def in_row_span(m: Matrix, vec) -> bool:
    """True iff *vec* is a linear combination of the rows of *m*."""
    r = mat_rank(m)
    return mat_rank(m.stack(Matrix([list(vec)], m.field, m.ncols))) == r
