"""Exact linear algebra over a field.

All routines are generic over field elements supporting ``+ - * /``,
truthiness (nonzero test) and equality; they are used with both
``GaussianRational`` and ``RationalFunction`` entries.

Determinism contract: row reduction pivots on the leftmost column with a
nonzero entry in the topmost remaining row; kernel basis vectors are ordered
by free-column index.
"""

from __future__ import annotations

from .errors import NotInvertible
from .scalars import GR_ONE, GR_ZERO


def rref(matrix):
    """Reduced row echelon form (in place on a copied matrix).

    Returns (rows, pivot_cols).  Zero rows are kept at the bottom.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivot_cols = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        if not (pv == GR_ONE):
            inv = _one_like(pv) / pv
            rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivot_cols


def _one_like(x):
    return x / x


def rank(matrix):
    return len(rref(matrix)[1])


def kernel_basis(matrix, ncols, zero=GR_ZERO, one=GR_ONE):
    """Basis of the right null space of ``matrix`` (``ncols`` columns).

    The basis comes from the reduced row echelon form: one vector per free
    column, ordered by free-column index, with a 1 in that column.
    """
    if not matrix:
        basis = []
        for j in range(ncols):
            v = [zero] * ncols
            v[j] = one
            basis.append(v)
        return basis
    rows, pivot_cols = rref(matrix)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivot_cols):
            entry = rows[r][fc]
            if entry:
                v[pc] = zero - entry
        basis.append(v)
    return basis


def solve_columns(matrix, rhs_columns, zero=GR_ZERO):
    """Solve ``matrix @ x = b`` for every column b of ``rhs_columns``.

    The coefficient matrix must have full column rank (NotInvertible
    otherwise).  Returns one solution vector per column, with None in place
    of inconsistent columns.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    aug = [list(matrix[i]) + [col[i] for col in rhs_columns] for i in range(nrows)]
    rows, pivot_cols = rref(aug)
    main_pivots = [c for c in pivot_cols if c < ncols]
    if len(main_pivots) < ncols:
        raise NotInvertible("coefficient matrix does not have full column rank")
    if len(main_pivots) == len(pivot_cols):
        # every system is consistent: any row with zero matrix part and a
        # nonzero right-hand entry would have produced a pivot there
        return [[rows[r][ncols + j] for r in range(ncols)] for j in range(len(rhs_columns))]
    # at least one inconsistent column corrupted the joint elimination:
    # redo each column on its own
    solutions = []
    for col in rhs_columns:
        aug = [list(matrix[i]) + [col[i]] for i in range(nrows)]
        rows, pivot_cols = rref(aug)
        if any(c >= ncols for c in pivot_cols):
            solutions.append(None)
        else:
            solutions.append([rows[r][ncols] for r in range(ncols)])
    return solutions


def solve_square(matrix, rhs, zero, one):
    """Solve a square full-rank system over any field; NotInvertible if singular."""
    n = len(matrix)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    rows, pivot_cols = rref(aug)
    if pivot_cols != list(range(n)):
        raise NotInvertible("singular or inconsistent square system")
    return [rows[i][n] for i in range(n)]


def invert_matrix(matrix, zero, one):
    """Inverse of a square matrix over any field; NotInvertible if singular."""
    n = len(matrix)
    aug = []
    for i in range(n):
        row = list(matrix[i]) + [zero] * n
        row[n + i] = one
        aug.append(row)
    rows, pivot_cols = rref(aug)
    if pivot_cols[:n] != list(range(n)):
        raise NotInvertible("singular matrix")
    return [rows[i][n:] for i in range(n)]


def determinant(matrix, zero, one):
    """Exact determinant by fraction-producing Gaussian elimination."""
    n = len(matrix)
    if n == 0:
        return one
    rows = [list(r) for r in matrix]
    det = one
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            return zero
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = zero - det
        pv = rows[c][c]
        det = det * pv
        inv = one / pv
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def mat_mul(a, b, zero):
    """Matrix product with explicit zero element."""
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for t in range(k):
                if a[i][t] and b[t][j]:
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v, zero):
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out
