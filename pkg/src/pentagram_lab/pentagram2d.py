"""The pentagram map on labeled polygons in the projective plane.

A 2n-gon carries one parity class of labels mod 4n: vertices sit at labels
offset, offset+2, ..., and the edge between consecutive vertices carries the
label in between.  One pentagram step intersects the short diagonals

    Q_j = (P_{j-1} P_{j+3}) /\\ (P_{j-3} P_{j+1})

and the output vertices carry the opposite parity class, so iterating the map
alternates label parity.

Axis-aligned polygons (edges alternately parallel to the two axes, starting
with a horizontal edge) collapse: n-1 steps send such a 2n-gon to a single
point, its center of mass, passing through a stage where the two alternating
vertex families are collinear on lines through that center.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateJoin,
    DegenerateMeet,
    InfiniteVertex,
    NotAxisAligned,
)
from .projcore import (
    ProjLine2,
    ProjPoint,
    axes_normalization_map,
    join_points,
    meet_lines,
)
from .rng import SplitMix64


@dataclass(frozen=True)
class LabeledPolygon2:
    """Vertices in label order: vertices[t] carries label label_offset + 2t (mod 4n)."""

    vertices: tuple[ProjPoint, ...]
    label_offset: int = 1

    @classmethod
    def of(cls, vertices, label_offset: int = 1) -> "LabeledPolygon2":
        vertices = tuple(vertices)
        if len(vertices) < 4 or len(vertices) % 2 != 0:
            raise ValueError("a labeled polygon needs an even vertex count >= 4")
        for v in vertices:
            if v.dim != 2:
                raise ValueError("vertices must be points of the projective plane")
        for t, v in enumerate(vertices):
            if v == vertices[(t + 1) % len(vertices)]:
                raise DegenerateJoin(f"consecutive vertices {t} and {t + 1} coincide")
        return cls(vertices, label_offset % (2 * len(vertices)))

    @property
    def n(self) -> int:
        return len(self.vertices) // 2

    @property
    def label_period(self) -> int:
        return 2 * len(self.vertices)

    def labels(self) -> tuple[int, ...]:
        period = self.label_period
        return tuple((self.label_offset + 2 * t) % period for t in range(len(self.vertices)))

    def label_map(self) -> dict[int, ProjPoint]:
        return dict(zip(self.labels(), self.vertices))


def pentagram_step(poly: LabeledPolygon2) -> LabeledPolygon2:
    """One pentagram step; output labels move to the opposite parity class."""
    verts = poly.vertices
    k = len(verts)
    period = 2 * k
    new_offset = (poly.label_offset + 1) % period
    out = []
    for t in range(k):
        label = (new_offset + 2 * t) % period
        try:
            l1 = join_points(verts[t], verts[(t + 2) % k])
            l2 = join_points(verts[(t - 1) % k], verts[(t + 1) % k])
            out.append(meet_lines(l1, l2))
        except DegenerateJoin as exc:
            raise DegenerateJoin(f"output label {label}: {exc}") from exc
        except DegenerateMeet as exc:
            raise DegenerateMeet(f"output label {label}: {exc}") from exc
    return LabeledPolygon2(tuple(out), new_offset)


def _edge_pairs(poly: LabeledPolygon2):
    verts = poly.vertices
    k = len(verts)
    return [(verts[t], verts[(t + 1) % k]) for t in range(k)]


def _all_horizontal(edges) -> bool:
    for p, q in edges:
        if p.affine_coords()[1] != q.affine_coords()[1]:
            return False
    return True


def _all_vertical(edges) -> bool:
    for p, q in edges:
        if p.affine_coords()[0] != q.affine_coords()[0]:
            return False
    return True


def _family_concurrency_point(lines) -> ProjPoint | None:
    first = lines[0]
    other = next((ln for ln in lines[1:] if ln != first), None)
    if other is None:
        return None  # all lines identical: degenerate family
    point = meet_lines(first, other)
    for ln in lines:
        if not ln.incident(point):
            return None
    return point


def is_axis_aligned(poly: LabeledPolygon2, mode: str = "affine") -> bool:
    """Affine mode: alternating horizontal/vertical edges.

    Projective mode: each alternating edge family is concurrent.  Degenerate
    polygons (repeated consecutive vertices, identical family lines) give False.
    """
    if mode not in ("affine", "projective"):
        raise ValueError(f"unknown mode {mode!r}")
    edges = _edge_pairs(poly)
    if any(p == q for p, q in edges):
        return False
    if mode == "affine":
        if any(not v.is_finite for v in poly.vertices):
            return False
        even, odd = edges[0::2], edges[1::2]
        return (_all_horizontal(even) and _all_vertical(odd)) or (
            _all_vertical(even) and _all_horizontal(odd)
        )
    lines = [join_points(p, q) for p, q in edges]
    for family in (lines[0::2], lines[1::2]):
        if _family_concurrency_point(family) is None:
            return False
    return True


def concurrency_points(poly: LabeledPolygon2) -> tuple[ProjPoint, ProjPoint]:
    """Common points of the two alternating edge families, first family first."""
    edges = _edge_pairs(poly)
    if any(p == q for p, q in edges):
        raise NotAxisAligned("degenerate edge")
    lines = [join_points(p, q) for p, q in edges]
    points = []
    for family in (lines[0::2], lines[1::2]):
        point = _family_concurrency_point(family)
        if point is None:
            raise NotAxisAligned("an edge family is not concurrent")
        points.append(point)
    return points[0], points[1]


def center_of_mass_affine(poly: LabeledPolygon2) -> ProjPoint:
    """Vertex centroid of an all-affine polygon."""
    coords = [v.affine_coords() for v in poly.vertices]
    k = len(coords)
    sums = [sum(c[i] for c in coords) for i in range(2)]
    return ProjPoint.affine(Fraction(sums[0], k), Fraction(sums[1], k))


def center_of_mass_projective(poly: LabeledPolygon2) -> ProjPoint:
    """Centroid of a projectively axis-aligned polygon.

    Normalizes the two concurrency points onto the axis directions at
    infinity, averages there, and pulls back.  The result does not depend on
    the choice of admissible normalization.
    """
    p, q = concurrency_points(poly)
    if p == q:
        raise NotAxisAligned("the two edge families share their concurrency point")
    phi = axes_normalization_map(p, q)
    images = [phi.apply(v) for v in poly.vertices]
    for v in images:
        if not v.is_finite:
            raise InfiniteVertex("a vertex lands at infinity under normalization")
    normalized = LabeledPolygon2(tuple(images), poly.label_offset)
    return phi.inverse().apply(center_of_mass_affine(normalized))


@dataclass(frozen=True)
class AxisAligned2:
    """Axis-aligned 2n-gon with its x-levels a and y-levels b.

    Vertex pattern: P_{4j-3} = (a_j, b_j) and P_{4j-1} = (a_{j+1}, b_j) with
    a_{n+1} = a_1, so the first edge P_1 P_3 is horizontal.
    """

    underlying: LabeledPolygon2
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    @classmethod
    def from_levels(cls, a, b) -> "AxisAligned2":
        a = tuple(Fraction(x) for x in a)
        b = tuple(Fraction(y) for y in b)
        n = len(a)
        if n < 2 or len(b) != n:
            raise ValueError("need matching x- and y-level tuples of length n >= 2")
        if len(set(a)) != n or len(set(b)) != n:
            raise NotAxisAligned("levels must be pairwise distinct")
        verts = []
        for j in range(n):
            verts.append(ProjPoint.affine(a[j], b[j]))
            verts.append(ProjPoint.affine(a[(j + 1) % n], b[j]))
        return cls(LabeledPolygon2.of(tuple(verts), 1), a, b)

    @classmethod
    def from_polygon(cls, poly: LabeledPolygon2) -> "AxisAligned2":
        if not is_axis_aligned(poly, "affine"):
            raise NotAxisAligned("polygon is not affinely axis aligned")
        first = poly.vertices[0].affine_coords()
        second = poly.vertices[1].affine_coords()
        if first[1] != second[1]:
            raise NotAxisAligned("first edge must be horizontal in this labeling")
        a = tuple(poly.vertices[2 * j].affine_coords()[0] for j in range(poly.n))
        b = tuple(poly.vertices[2 * j].affine_coords()[1] for j in range(poly.n))
        return cls(poly, a, b)

    @property
    def n(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class TwoLineStage:
    """Certificate for the stage where alternating vertices become collinear."""

    lines: tuple[ProjLine2, ProjLine2] | None
    alternating: bool
    through_centroid: bool


@dataclass(frozen=True)
class CollapseReport2:
    steps_taken: int
    two_line_stage: TwoLineStage
    collapse_point: ProjPoint | None
    centroid: ProjPoint
    all_equal: bool
    matched: bool

    @property
    def ok(self) -> bool:
        return (
            self.all_equal
            and self.matched
            and self.two_line_stage.alternating
            and self.two_line_stage.through_centroid
        )


def _collinear_line(points) -> ProjLine2 | None:
    anchor = points[0]
    other = next((p for p in points[1:] if p != anchor), None)
    if other is None:
        return None
    line = join_points(anchor, other)
    for p in points:
        if not line.incident(p):
            return None
    return line


def _certify_two_lines(poly: LabeledPolygon2, centroid: ProjPoint) -> TwoLineStage:
    evens = poly.vertices[0::2]
    odds = poly.vertices[1::2]
    line_a = _collinear_line(evens)
    line_b = _collinear_line(odds)
    if line_a is None or line_b is None:
        return TwoLineStage(None, False, False)
    through = line_a.incident(centroid) and line_b.incident(centroid)
    return TwoLineStage((line_a, line_b), True, through)


def collapse_orbit(P: AxisAligned2) -> CollapseReport2:
    """Run n-1 pentagram steps and certify the collapse to the center of mass."""
    n = P.n
    centroid = center_of_mass_affine(P.underlying)
    current = P.underlying
    stage = TwoLineStage(None, False, False)
    for step in range(n - 1):
        if step == n - 2:
            stage = _certify_two_lines(current, centroid)
        try:
            current = pentagram_step(current)
        except (DegenerateJoin, DegenerateMeet) as exc:
            raise type(exc)(f"step {step + 1}: {exc}") from exc
    all_equal = len(set(current.vertices)) == 1
    collapse_point = current.vertices[0] if all_equal else None
    matched = all_equal and collapse_point == centroid
    return CollapseReport2(
        steps_taken=n - 1,
        two_line_stage=stage,
        collapse_point=collapse_point,
        centroid=centroid,
        all_equal=all_equal,
        matched=matched,
    )


def random_axis_aligned(n: int, seed: int, bound: int = 10) -> AxisAligned2:
    """Seeded random axis-aligned 2n-gon with distinct rational levels."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if bound < n:
        raise ValueError("coefficient bound must be >= n to fit distinct levels")
    rng = SplitMix64(seed)
    a = rng.distinct_rationals(n, bound)
    b = rng.distinct_rationals(n, bound)
    return AxisAligned2.from_levels(a, b)
