"""Exact projective kernel.

Points and lines carry canonical homogeneous coordinates: denominators are
cleared, the gcd is divided out, and the leading nonzero entry is made
positive.  Two points are equal exactly when their canonical tuples are equal,
so all downstream identity checks (collapse detection, orbit comparisons) are
structural.

Cross ratios on the projective line are computed from 2x2 determinants
``[a, b] = a_x * b_w - a_w * b_x`` so the point at infinity ``(1 : 0)`` needs
no special casing anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    DegenerateJoin,
    DegenerateMeet,
    DimensionMismatch,
    IndeterminateCrossRatio,
    InfiniteVertex,
    NonCoplanarDiagonals,
    UndefinedProjection,
    ZeroDenominator,
)

Rational = Fraction


class Infinity:
    """Cross-ratio value at infinity (the affine value of the point (1 : 0))."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = Infinity()


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _canonical_ints(values: Iterable[int | Fraction]) -> tuple[int, ...]:
    fracs = [Fraction(v) for v in values]
    if all(f == 0 for f in fracs):
        raise ValueError("homogeneous coordinates must not all vanish")
    scale = 1
    for f in fracs:
        scale = scale * f.denominator // gcd(scale, f.denominator)
    ints = [int(f * scale) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-u for u in ints]
            break
    return tuple(ints)


class ProjPoint:
    """A projective point in canonical integer homogeneous coordinates.

    ``coords`` has dim+1 entries; the last one is the homogenizing coordinate,
    so an affine point (x_1, ..., x_d) is stored as (x_1 : ... : x_d : 1) after
    clearing denominators.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[int | Fraction]):
        self.coords = _canonical_ints(coords)

    @classmethod
    def affine(cls, *xs: int | Fraction) -> "ProjPoint":
        return cls(tuple(Fraction(x) for x in xs) + (Fraction(1),))

    @classmethod
    def p1(cls, value) -> "ProjPoint":
        """Point of the projective line from a rational value or INF."""
        if isinstance(value, Infinity):
            return cls((1, 0))
        return cls((Fraction(value), Fraction(1)))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    @property
    def is_finite(self) -> bool:
        return self.coords[-1] != 0

    def affine_coords(self) -> tuple[Fraction, ...]:
        if not self.is_finite:
            raise InfiniteVertex(f"{self} has no affine coordinates")
        w = self.coords[-1]
        return tuple(Fraction(c, w) for c in self.coords[:-1])

    def p1_value(self):
        """Affine value of a point on the projective line, or INF."""
        if self.dim != 1:
            raise DimensionMismatch("p1_value needs a point of the projective line")
        if self.coords[1] == 0:
            return INF
        return Fraction(self.coords[0], self.coords[1])

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(("ProjPoint", self.coords))

    def __repr__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


P1_INFINITY = ProjPoint((1, 0))


def pt2(x, y) -> ProjPoint:
    """Affine point of the projective plane."""
    return ProjPoint.affine(x, y)


def p1(value) -> ProjPoint:
    return ProjPoint.p1(value)


class ProjLine2:
    """A line of the projective plane in canonical coefficients (a : b : c)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int | Fraction]):
        coeffs = tuple(coeffs)
        if len(coeffs) != 3:
            raise DimensionMismatch("a plane line has three coefficients")
        self.coeffs = _canonical_ints(coeffs)

    def incident(self, p: ProjPoint) -> bool:
        if p.dim != 2:
            raise DimensionMismatch("incidence is defined for plane points")
        return sum(a * x for a, x in zip(self.coeffs, p.coords)) == 0

    def __eq__(self, other):
        return isinstance(other, ProjLine2) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("ProjLine2", self.coeffs))

    def __repr__(self):
        return "[" + " : ".join(str(c) for c in self.coeffs) + "]"


def _need_dim(d: int, *points: ProjPoint):
    for p in points:
        if p.dim != d:
            raise DimensionMismatch(f"expected a point of P^{d}, got {p!r}")


def _cross3(u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def join_points(a: ProjPoint, b: ProjPoint) -> ProjLine2:
    """Line through two distinct points of the projective plane."""
    _need_dim(2, a, b)
    if a == b:
        raise DegenerateJoin(f"join of coincident points {a!r}")
    return ProjLine2(_cross3(a.coords, b.coords))


def meet_lines(l1: ProjLine2, l2: ProjLine2) -> ProjPoint:
    """Intersection point of two distinct plane lines."""
    if l1 == l2:
        raise DegenerateMeet(f"meet of identical lines {l1!r}")
    return ProjPoint(_cross3(l1.coeffs, l2.coeffs))


def meet_coplanar_lines(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint) -> ProjPoint:
    """Intersection of lines ab and cd in P^m, for coplanar quadruples.

    Solves lambda*a + mu*b = rho*c + sigma*d exactly.  The four points must
    span a projective plane (rank 3); lines that span all of a 3-space raise
    NonCoplanarDiagonals, identical lines raise DegenerateMeet.
    """
    dim = a.dim
    for p in (b, c, d):
        if p.dim != dim:
            raise DimensionMismatch("all four points must live in the same space")
    if dim < 2:
        raise DimensionMismatch("meet_coplanar_lines needs ambient dimension >= 2")
    if a == b or c == d:
        raise DegenerateJoin("meet_coplanar_lines needs two genuine lines")
    rows = [list(map(Fraction, p.coords)) for p in (a, b, c, d)]
    r = linalg.rank(rows)
    if r == 4:
        raise NonCoplanarDiagonals("the two lines are skew")
    if r < 3:
        raise DegenerateMeet("the two lines coincide")
    # columns a, b, -c, -d; a kernel vector gives the meet as lambda*a + mu*b
    system = [
        [Fraction(a.coords[i]), Fraction(b.coords[i]), Fraction(-c.coords[i]), Fraction(-d.coords[i])]
        for i in range(dim + 1)
    ]
    kernel = linalg.nullspace(system, 4)
    if len(kernel) != 1:
        raise DegenerateMeet("intersection is not a single point")
    lam, mu, _, _ = kernel[0]
    coords = [lam * a.coords[i] + mu * b.coords[i] for i in range(dim + 1)]
    if all(x == 0 for x in coords):
        raise DegenerateMeet("kernel vector does not produce a point")
    return ProjPoint(coords)


def _det2(p: ProjPoint, q: ProjPoint) -> int:
    return p.coords[0] * q.coords[1] - p.coords[1] * q.coords[0]


def cross_ratio4(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint):
    """[a, b, c, d] = (a-b)(c-d) / ((b-c)(d-a)) on the projective line."""
    _need_dim(1, a, b, c, d)
    num = _det2(a, b) * _det2(c, d)
    den = _det2(b, c) * _det2(d, a)
    if den == 0:
        if num == 0:
            raise IndeterminateCrossRatio("cross ratio of the form 0/0")
        return INF
    return Fraction(num, den)


def cross_ratio6(a, b, c, d, e, f):
    """[a, b, c, d, e, f] = (a-b)(c-d)(e-f) / ((b-c)(d-e)(f-a))."""
    _need_dim(1, a, b, c, d, e, f)
    num = _det2(a, b) * _det2(c, d) * _det2(e, f)
    den = _det2(b, c) * _det2(d, e) * _det2(f, a)
    if den == 0:
        if num == 0:
            raise IndeterminateCrossRatio("six-point cross ratio of the form 0/0")
        return INF
    return Fraction(num, den)


def solve_harmonic4(a: ProjPoint, b: ProjPoint, d: ProjPoint) -> ProjPoint:
    """The point c with cross_ratio4(a, b, c, d) == -1.

    The relation (a-b)(c-d) + (b-c)(d-a) = 0 is linear in c's homogeneous
    coordinates; its kernel is the unique non-violating value even where the
    cross ratio itself degenerates to 0/0 (it agrees with the limit of -1
    solutions under perturbation there).  Only an identically-zero system --
    a, b, d all coincident -- leaves c undetermined.
    """
    _need_dim(1, a, b, d)
    ab = _det2(a, b)
    da = _det2(d, a)
    x = ab * d.coords[0] - b.coords[0] * da
    w = ab * d.coords[1] - b.coords[1] * da
    if x == 0 and w == 0:
        raise ZeroDenominator("harmonic conjugate is indeterminate")
    return ProjPoint((x, w))


def solve_harmonic6(a, b, c, e, f) -> ProjPoint:
    """The point d with cross_ratio6(a, b, c, d, e, f) == -1.

    Linear-kernel solve, exactly as in solve_harmonic4: returns the unique
    non-violating d, which is the perturbation limit when the six-point
    ratio degenerates at the solution.
    """
    _need_dim(1, a, b, c, e, f)
    p = _det2(a, b) * _det2(e, f)
    q = _det2(b, c) * _det2(f, a)
    x = p * c.coords[0] - q * e.coords[0]
    w = p * c.coords[1] - q * e.coords[1]
    if x == 0 and w == 0:
        raise ZeroDenominator("six-point harmonic solve is indeterminate")
    return ProjPoint((x, w))


def reflect_r(p: ProjPoint) -> ProjPoint:
    """Reflection across the horizontal axis: (X : Y : W) -> (X : -Y : W)."""
    _need_dim(2, p)
    x, y, w = p.coords
    return ProjPoint((x, -y, w))


def project_vertical(p: ProjPoint) -> ProjPoint:
    """Vertical projection of the plane to the x-axis line: (X : Y : W) -> (X : W)."""
    _need_dim(2, p)
    x, y, w = p.coords
    if x == 0 and w == 0:
        raise UndefinedProjection("the vertical direction has no vertical projection")
    return ProjPoint((x, w))


class ProjMap:
    """An invertible projective map given by a canonical integer matrix."""

    __slots__ = ("matrix",)

    def __init__(self, rows: Sequence[Sequence[int | Fraction]]):
        size = len(rows)
        if size < 2 or any(len(r) != size for r in rows):
            raise DimensionMismatch("projective maps need a square matrix of size >= 2")
        flat = _canonical_ints([x for row in rows for x in row])
        matrix = tuple(tuple(flat[i * size + j] for j in range(size)) for i in range(size))
        if linalg.det([[Fraction(x) for x in row] for row in matrix]) == 0:
            raise ValueError("projective map matrix must be invertible")
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return len(self.matrix) - 1

    def apply(self, p: ProjPoint) -> ProjPoint:
        if p.dim != self.dim:
            raise DimensionMismatch("map and point dimensions differ")
        coords = [sum(m * c for m, c in zip(row, p.coords)) for row in self.matrix]
        return ProjPoint(coords)

    def compose(self, other: "ProjMap") -> "ProjMap":
        if self.dim != other.dim:
            raise DimensionMismatch("cannot compose maps of different dimensions")
        n = len(self.matrix)
        rows = [
            [sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        return ProjMap(rows)

    def inverse(self) -> "ProjMap":
        return ProjMap(_adjugate(self.matrix))

    def __eq__(self, other):
        return isinstance(other, ProjMap) and self.matrix == other.matrix

    def __hash__(self):
        return hash(("ProjMap", self.matrix))

    def __repr__(self):
        return f"ProjMap{self.matrix!r}"


def _adjugate(matrix: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(matrix)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [Fraction(matrix[r][c]) for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            sign = -1 if (i + j) % 2 else 1
            out[j][i] = sign * linalg.det(minor)
    return out


def apply_map(phi: ProjMap, p: ProjPoint) -> ProjPoint:
    return phi.apply(p)


def identity_map(dim: int) -> ProjMap:
    n = dim + 1
    return ProjMap([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def axes_normalization_map(p: ProjPoint, q: ProjPoint) -> ProjMap:
    """A projective map of the plane sending p to (1:0:0) and q to (0:1:0).

    The matrix is completed with the first standard basis vector that keeps it
    invertible, so the choice is deterministic.  Any two admissible maps differ
    by an affine map that fixes the two axis directions, which is why centroid
    computations built on this map do not depend on the completion rule.
    """
    _need_dim(2, p, q)
    if p == q:
        raise DegenerateJoin("the two concurrency points coincide")
    for k in range(3):
        third = [1 if i == k else 0 for i in range(3)]
        cols = [list(p.coords), list(q.coords), third]
        matrix = [[cols[j][i] for j in range(3)] for i in range(3)]
        if linalg.det([[Fraction(x) for x in row] for row in matrix]) != 0:
            return ProjMap(_adjugate(matrix))
    raise DegenerateJoin("could not complete a projective basis")  # pragma: no cover


def mobius_to_infinity(a: ProjPoint) -> ProjMap:
    """A Moebius map of the line sending a to infinity (x -> 1/(x - a))."""
    _need_dim(1, a)
    if a == P1_INFINITY:
        return identity_map(1)
    value = a.p1_value()
    return ProjMap([[0, 1], [1, -value]])


def random_projective_map(dim: int, rng, bound: int = 9) -> ProjMap:
    """A random invertible projective map with small integer entries."""
    n = dim + 1
    while True:
        rows = [[rng.below(2 * bound + 1) - bound for _ in range(n)] for _ in range(n)]
        if linalg.det([[Fraction(x) for x in row] for row in rows]) != 0:
            return ProjMap(rows)
