"""Small exact dense linear algebra over an arbitrary field.

Matrices are lists of row lists of field elements.  All routines are exact;
there is no pivot-size heuristics because the scalars are exact anyway.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["rref", "rank", "nullspace", "solve_affine", "det", "AffineSolutionSet"]


def rref(field, rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(field, rows) -> int:
    return len(rref(field, rows)[1])


def nullspace(field, rows, ncols=None):
    """Basis of {v : A v = 0} as a list of column vectors."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        rows = [[field.zero] * ncols]
    red, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class AffineSolutionSet:
    """Solutions of A x = b: a particular point plus a homogeneous basis.

    ``particular`` is None when the system is inconsistent.
    """

    particular: tuple | None
    homogeneous: tuple

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def dimension(self) -> int:
        return -1 if self.is_empty else len(self.homogeneous)


def solve_affine(field, rows, rhs) -> AffineSolutionSet:
    """Solve A x = rhs exactly, returning the full affine solution set."""
    if not rows:
        raise ValueError("empty system; pass explicit trivial rows instead")
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(field, aug)
    if ncols in pivots:
        return AffineSolutionSet(None, ())
    part = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        part[pc] = red[r][ncols]
    hom = nullspace(field, [r[:ncols] for r in red], ncols)
    return AffineSolutionSet(tuple(part), tuple(tuple(v) for v in hom))


def det(field, rows):
    """Exact determinant by cofactor expansion (intended for n <= 4)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return field.one
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = field.zero
    sign = field.one
    for c in range(n):
        if rows[0][c]:
            minor = [[row[j] for j in range(n) if j != c] for row in rows[1:]]
            total = total + sign * rows[0][c] * det(field, minor)
        sign = -sign
    return total
