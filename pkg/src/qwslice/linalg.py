"""Dense exact linear algebra over any field-like scalar type.

Entries may be ``Fraction``, :class:`~qwslice.coeffs.RationalQ`,
:class:`~qwslice.coeffs.Cyclo`, or anything supporting ``+ - * /``,
truthiness for zero-testing, and a multiplicative identity reachable as
``x / x``.  Everything is fraction-free-agnostic plain Gaussian elimination;
exactness of the scalars makes pivoting trivial (any nonzero entry works).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")

Matrix = list[list[T]]


def identity_matrix(n: int, one: T, zero: T) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = None
            for k in range(inner):
                term = a[i][k] * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a: Matrix, v: Sequence[T]) -> list[T]:
    return [_dot(row, v) for row in a]


def _dot(row: Sequence[T], v: Sequence[T]) -> T:
    acc = None
    for x, y in zip(row, v):
        term = x * y
        acc = term if acc is None else acc + term
    return acc


def row_echelon(rows: Matrix, augment: Matrix | None = None) -> tuple[Matrix, list[int], Matrix | None]:
    """Reduce to row echelon form in place on copies.

    Returns (echelon rows, pivot column indices, transformed augment).
    Pivots are normalized to 1 and cleared above and below (RREF).
    """
    a = [list(r) for r in rows]
    aug = [list(r) for r in augment] if augment is not None else None
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if a[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        if aug is not None:
            aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        if aug is not None:
            aug[r] = [x / inv for x in aug[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                if aug is not None:
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots, aug


def rank(rows: Matrix) -> int:
    if not rows or not rows[0]:
        return 0
    _, pivots, _ = row_echelon(rows)
    return len(pivots)


def solve(a: Matrix, b: Sequence[T]):
    """One solution x of a x = b, or None if the system is inconsistent."""
    if not a:
        return [] if not any(b) else None
    ncols = len(a[0])
    ech, pivots, aug = row_echelon(a, [[x] for x in b])
    zero = _zero_like(b[0]) if b else None
    # inconsistency: zero row with nonzero rhs
    for i in range(len(ech)):
        if not any(ech[i]) and aug[i][0]:
            return None
    x = [None] * ncols
    for r, c in enumerate(pivots):
        x[c] = aug[r][0]
    if zero is None:
        zero = _find_zero(a)
    for c in range(ncols):
        if x[c] is None:
            x[c] = zero
    return x


def nullspace(rows: Matrix) -> Matrix:
    """A basis (list of vectors) of the right kernel."""
    if not rows:
        return []
    ncols = len(rows[0])
    ech, pivots, _ = row_echelon(rows)
    zero = _find_zero(rows)
    one = _find_one(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = zero - ech[r][f]
        basis.append(v)
    return basis


def invert(a: Matrix) -> Matrix:
    """Inverse of a square matrix; raises ValueError if singular."""
    n = len(a)
    zero = _find_zero(a)
    one = _find_one(a)
    ech, pivots, aug = row_echelon(a, identity_matrix(n, one, zero))
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return aug


def _zero_like(x):
    return x - x


def _one_like(x):
    return x / x


def _find_zero(rows: Matrix):
    for row in rows:
        for x in row:
            return _zero_like(x)
    return Fraction(0)


def _find_one(rows: Matrix):
    for row in rows:
        for x in row:
            if x:
                return _one_like(x)
    # all entries zero: every scalar type here defines x ** 0 as one
    for row in rows:
        for x in row:
            return x ** 0
    raise ValueError("cannot infer multiplicative identity from an empty matrix")


def column_space_coords(basis_cols: Matrix, target: Sequence[T]):
    """Express target in the span of the given column vectors, or None.

    ``basis_cols`` is a list of vectors (each a list); returns coefficients
    c with sum c_i basis_i = target when solvable.
    """
    if not basis_cols:
        return None if any(target) else []
    rows = [[basis_cols[j][i] for j in range(len(basis_cols))] for i in range(len(target))]
    return solve(rows, list(target))
