"""Exact linear algebra over Q(sqrt(d)): reduced row echelon form and nullspaces."""

from __future__ import annotations

from .qfield import QuadExt


def rref(rows: list[list[QuadExt]]) -> tuple[list[list[QuadExt]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = [row[:] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not m[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def nullspace(rows: list[list[QuadExt]], ncols: int) -> list[list[QuadExt]]:
    """Basis of the right nullspace, one vector per free column, in column order."""
    zero = QuadExt(0)
    one = QuadExt(1)
    if not rows:
        basis = []
        for c in range(ncols):
            v = [zero] * ncols
            v[c] = one
            basis.append(v)
        return basis
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for ri, pc in enumerate(pivots):
            v[pc] = -red[ri][fc]
        basis.append(v)
    return basis


def rank(rows: list[list[QuadExt]]) -> int:
    return len(rref(rows)[0]) if rows else 0


def in_row_span(rows: list[list[QuadExt]], vec: list[QuadExt]) -> bool:
    """True when vec is a linear combination of the given rows."""
    if all(x.is_zero() for x in vec):
        return True
    if not rows:
        return False
    return rank(rows) == rank(rows + [vec])
