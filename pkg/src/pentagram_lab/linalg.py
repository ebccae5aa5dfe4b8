"""Small exact linear algebra over the rationals.

Everything here works on ``Fraction`` entries, so rank, solvability and
transversality decisions are exact.  Matrices are lists of row lists; the
sizes that occur in this package are tiny (at most eight or so columns), so
plain Gaussian elimination with exact pivots is the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]


def vec(values: Iterable) -> Vec:
    return tuple(Fraction(v) for v in values)


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(u: Sequence[Fraction], c: Fraction) -> Vec:
    return tuple(a * c for a in u)


def vec_dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def is_zero_vec(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None):
    """Reduced row echelon form.  Returns (rows, pivot column indices)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    _, pivots = rref(rows)
    return len(pivots)


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vec]:
    """Basis of {x : rows @ x = 0} in R^ncols."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    m, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[Vec] = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -m[r][f]
        basis.append(tuple(x))
    return basis


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vec | None:
    """One solution of rows @ x = rhs, or None if inconsistent.  Free variables are 0."""
    if not rows:
        return ()
    ncols = len(rows[0])
    aug = [list(row) + [Fraction(b)] for row, b in zip(rows, rhs, strict=True)]
    m, pivots = rref(aug, ncols)
    for row in m:
        if all(x == 0 for x in row[:ncols]) and row[ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = m[r][ncols]
    return tuple(x)


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by exact elimination."""
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        result *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                factor = m[i][c] * inv
                m[i] = [x - factor * y for x, y in zip(m[i], m[c])]
    return result


def independent_subset(vectors: Sequence[Sequence[Fraction]]) -> list[Vec]:
    """Greedy maximal linearly independent subset, kept in input order."""
    chosen: list[Vec] = []
    r = 0
    for v in vectors:
        candidate = chosen + [vec(v)]
        if rank(candidate) > r:
            chosen = candidate
            r += 1
    return chosen


def in_span(vectors: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    base = [list(u) for u in vectors]
    return rank(base + [list(v)]) == rank(base)
