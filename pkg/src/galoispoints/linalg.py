"""Exact Gaussian elimination over any field of ``fields``."""

from __future__ import annotations

from .fields import Field, FieldElem


def row_reduce(rows: list[list[FieldElem]], field: Field):
    """Reduced row echelon form and pivot columns.

    Pivoting is deterministic: columns left to right, and within a column the
    first row (smallest index) with a nonzero entry.
    """
    M = [[field(x) for x in row] for row in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    if any(len(r) != ncols for r in M):
        raise ValueError("matrix is not rectangular")
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if not M[i][c].is_zero()), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = M[r][c].inv()
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows, field: Field) -> int:
    return len(row_reduce(rows, field)[1])


def kernel(rows: list[list], field: Field, ncols: int | None = None) -> list[list[FieldElem]]:
    """Basis of the right null space {v : M v = 0}, one vector per free column."""
    if not rows:
        n = ncols or 0
        return [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
    R, pivots = row_reduce(rows, field)
    n = len(R[0])
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [field.zero] * n
        v[free] = field.one
        for row, pc in zip(R, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def mat_vec(rows, v):
    out = []
    for row in rows:
        acc = v[0].field.zero
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return out
