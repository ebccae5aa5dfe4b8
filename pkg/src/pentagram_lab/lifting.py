"""Parallel lifting machinery: the collapse proofs run as exact computations.

The pipeline, for an axis-aligned input P of any of the supported map
variants (planar, corrugated, mirror with even or odd n):

  1. ``build_A_sequences`` extracts the tagged n-point sequences A_1, A_3, ...
     whose chained matings reproduce the map orbit.
  2. ``parallel_lift`` raises them into R^n by appending a shared per-position
     height row, giving a Polyjoint: joints (affinely independent n-tuples)
     whose consecutive pairs form prisms of parallel lines.
  3. Hyperplane spans |J_k|, their intersections H_{g,k}, and the cyclic
     skeletons Sigma_k T of the prisms turn incidence claims into exact
     rank/solve computations: slicing, prism independence, and finally the
     collapse line H_{n-1,n-1}, whose projection carries the final mating
     points together with the common centroid.

Tags use two vocabularies.  Planar/corrugated entries carry integer vertex
labels, kept unreduced (monotone) so that a mating's child label is the plain
average of its four parent labels; reduce mod the label period to address a
vertex of the right map iterate.  Mirror entries carry (index, primed) pairs
naming a point of the current MP iterate or its reflection.

Check identifiers used in lift reports:

  L2.1 polyjoint construction (joints + prism property)
  L2.2 hyperplane general position
  L2.3 joint centroids coincide and project to the predicted point
  L2.4 skeleton intersection recurrence
  L2.5 every H_{g,k} slices the adjacent prisms
  L2.6 slice sets do not depend on the prism chosen
  L2.7 mating/star chain reproduces the map orbit
  L2.8 collapse line contains final mating points and centroid
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .corrugated import AxisAlignedM, center_of_mass_m, corrugated_step
from .errors import (
    DegenerateJoin,
    DegenerateMeet,
    DegenerateSpan,
    DimensionMismatch,
    NonCoplanarDiagonals,
    NonTransverse,
    NotAJoint,
    VariantMismatch,
)
from .linalg import Vec
from .mirror import AxisAlignedMirrorPair, MirrorPair, mp_step
from .pentagram2d import AxisAligned2, center_of_mass_affine, pentagram_step
from .projcore import ProjPoint, reflect_r
from .rng import SplitMix64

MirrorTag = tuple[int, bool]

VARIANTS = ("planar", "corrugated", "mirror_even", "mirror_odd")


# ---------------------------------------------------------------------------
# core geometric types


@dataclass(frozen=True)
class NPoint:
    """Ordered n points in R^d, each tagged with the map point it names.

    seq_label is the sequence's position in the uniform odd/even ladder
    (stage-1 sequences at 1, 3, ..., children at averaged labels); level is
    the mating stage; period is the vertex-label period for integer tags.
    """

    points: tuple[Vec, ...]
    tags: tuple[object, ...]
    seq_label: int
    level: int = 1
    period: int | None = None
    cycle: int | None = None

    def __post_init__(self):
        if len(self.points) != len(self.tags):
            raise ValueError("points and tags must align")
        if len(set(self.tags)) != len(self.tags):
            raise ValueError("tags must be pairwise distinct")

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return len(self.points[0])


@dataclass(frozen=True)
class Joint:
    """n affinely independent points in R^n, spanning a hyperplane."""

    points: tuple[Vec, ...]

    @classmethod
    def of(cls, points) -> "Joint":
        points = tuple(tuple(Fraction(c) for c in p) for p in points)
        n = len(points)
        if n < 2 or any(len(p) != n for p in points):
            raise NotAJoint("a joint needs n points in R^n")
        diffs = [linalg.vec_sub(p, points[0]) for p in points[1:]]
        if linalg.rank(diffs) != n - 1:
            raise NotAJoint("points are affinely dependent")
        return cls(points)

    @property
    def n(self) -> int:
        return len(self.points)

    def centroid(self) -> Vec:
        n = self.n
        return tuple(
            Fraction(sum(p[i] for p in self.points), n) for i in range(n)
        )


def hyperplane_normal(J: Joint) -> Vec:
    """Normal of span(J) by cofactor expansion along the formal basis row.

    Entry c is (-1)^c times the minor of the difference matrix with column c
    removed; the result is exactly orthogonal to every difference vector.
    """
    diffs = [linalg.vec_sub(p, J.points[0]) for p in J.points[1:]]
    n = J.n
    normal = tuple(
        (-1 if c % 2 else 1)
        * linalg.det([[row[i] for i in range(n) if i != c] for row in diffs])
        for c in range(n)
    )
    if linalg.is_zero_vec(normal):
        raise NotAJoint("degenerate joint has no normal")
    assert all(linalg.vec_dot(normal, d) == 0 for d in diffs)
    return normal


@dataclass(frozen=True)
class AffineFlat:
    """base + span(basis) in canonical form, so equality is structural.

    The basis rows are the reduced echelon basis of the direction space and
    the base point is the unique representative with zeros in the pivot
    coordinates.
    """

    base: Vec
    basis: tuple[Vec, ...]

    @classmethod
    def of(cls, base, directions) -> "AffineFlat":
        base = tuple(Fraction(c) for c in base)
        rows = [list(d) for d in directions if not linalg.is_zero_vec(d)]
        if rows:
            reduced, pivots = linalg.rref(rows, len(base))
            basis = tuple(tuple(r) for r in reduced[: len(pivots)])
        else:
            basis, pivots = (), []
        point = list(base)
        for row, p in zip(basis, pivots):
            if point[p] != 0:
                factor = point[p]
                point = [x - factor * y for x, y in zip(point, row)]
        return cls(tuple(point), basis)

    @classmethod
    def from_points(cls, points) -> "AffineFlat":
        points = [tuple(Fraction(c) for c in p) for p in points]
        return cls.of(points[0], [linalg.vec_sub(p, points[0]) for p in points[1:]])

    @property
    def ambient(self) -> int:
        return len(self.base)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    def contains(self, point: Sequence[Fraction]) -> bool:
        return linalg.in_span(self.basis, linalg.vec_sub(tuple(point), self.base))

    def equations(self) -> tuple[list[Vec], list[Fraction]]:
        """Rows N and rhs c with the flat equal to {x : N x = c}."""
        normals = linalg.nullspace([list(b) for b in self.basis], self.ambient)
        return normals, [linalg.vec_dot(nrm, self.base) for nrm in normals]

    def intersect(self, other: "AffineFlat") -> "AffineFlat | None":
        rows_a, rhs_a = self.equations()
        rows_b, rhs_b = other.equations()
        rows = [list(r) for r in rows_a + rows_b]
        sol = linalg.solve(rows, rhs_a + rhs_b)
        if sol is None:
            return None
        return AffineFlat.of(sol, linalg.nullspace(rows, self.ambient))

    def span_with(self, other: "AffineFlat") -> "AffineFlat":
        gap = linalg.vec_sub(other.base, self.base)
        return AffineFlat.of(self.base, [*self.basis, *other.basis, gap])

    def project(self, d: int) -> "AffineFlat":
        """Image under dropping all coordinates past the first d."""
        return AffineFlat.of(self.base[:d], [b[:d] for b in self.basis])


def joint_flat(J: Joint) -> AffineFlat:
    return AffineFlat.from_points(J.points)


@dataclass(frozen=True)
class Prism:
    """n distinct parallel lines in R^n, in position order."""

    bases: tuple[Vec, ...]
    direction: Vec

    @classmethod
    def between(cls, J1: Joint, J2: Joint) -> "Prism":
        dirs = [linalg.vec_sub(q, p) for p, q in zip(J1.points, J2.points)]
        if any(linalg.is_zero_vec(d) for d in dirs):
            raise DegenerateSpan("coincident points give no prism line")
        if linalg.rank(dirs) != 1:
            raise DegenerateSpan("connecting lines are not parallel")
        lead = next(c for c in dirs[0] if c != 0)
        direction = linalg.vec_scale(dirs[0], 1 / lead)
        for i in range(len(J1.points)):
            for j in range(i + 1, len(J1.points)):
                gap = linalg.vec_sub(J1.points[j], J1.points[i])
                if linalg.rank([direction, gap]) != 2:
                    raise DegenerateSpan(f"prism lines {i} and {j} coincide")
        return cls(J1.points, direction)

    @property
    def n(self) -> int:
        return len(self.bases)

    def lines(self) -> tuple[AffineFlat, ...]:
        return tuple(AffineFlat.of(b, (self.direction,)) for b in self.bases)


@dataclass(frozen=True)
class Polyjoint:
    """Joints whose consecutive pairs form prisms; d is the source dimension."""

    joints: tuple[Joint, ...]
    seq_labels: tuple[int, ...]
    d: int
    heights: tuple[tuple[Fraction, ...], ...]
    prisms: tuple[Prism, ...]

    @property
    def n(self) -> int:
        return self.joints[0].n

    def prism_labels(self) -> tuple[int, ...]:
        return tuple(label + 1 for label in self.seq_labels[:-1])

    def prism_at(self, h: int) -> Prism:
        for label, prism in zip(self.prism_labels(), self.prisms):
            if label == h:
                return prism
        raise KeyError(f"no prism at label {h}")

    def joint_flats(self) -> dict[int, AffineFlat]:
        return {
            label: joint_flat(J) for label, J in zip(self.seq_labels, self.joints)
        }


@dataclass(frozen=True)
class CyclicSkeleton:
    """Level-k faces of a prism: spans of k consecutive lines, cyclically."""

    prism: Prism
    level: int
    faces: tuple[AffineFlat, ...]


# ---------------------------------------------------------------------------
# A-sequences


def _affine(p: ProjPoint) -> Vec:
    return p.affine_coords()


def build_A_sequences(P, variant: str) -> tuple[NPoint, ...]:
    """The stage-1 tagged sequences whose matings reproduce the map orbit.

    planar        n-1 sequences over the 2n-gon's vertex labels, step 4
    corrugated    n-1 sequences over the mn-gon's labels, step m^2
    mirror_even   n-1 alternating plain/reflected sequences
    mirror_odd    all n alternating sequences (star-mating windows draw
                  cyclically consecutive blocks of n-1 of them)
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "planar":
        if not isinstance(P, AxisAligned2):
            raise VariantMismatch("planar sequences need an axis-aligned 2n-gon")
        return _numeric_sequences(P.underlying.label_map(), 2, P.n)
    if variant == "corrugated":
        if not isinstance(P, AxisAlignedM):
            raise VariantMismatch("corrugated sequences need an axis-aligned mn-gon")
        return _numeric_sequences(P.underlying.label_map(), P.m, P.n)
    pair = P.underlying if isinstance(P, AxisAlignedMirrorPair) else P
    if not isinstance(pair, MirrorPair):
        raise VariantMismatch("mirror sequences need a mirror pair")
    n = pair.n
    if variant == "mirror_even" and n % 2 != 0:
        raise VariantMismatch("mirror_even needs an even number of points")
    if variant == "mirror_odd" and n % 2 != 1:
        raise VariantMismatch("mirror_odd needs an odd number of points")
    count = n - 1 if variant == "mirror_even" else n
    return tuple(_mirror_sequence(pair, j) for j in range(1, count + 1))


def _numeric_sequences(label_map, m: int, n: int) -> tuple[NPoint, ...]:
    period = len(label_map) * m
    out = []
    for j in range(n - 1):
        tags = tuple(j * m + 1 + m * m * t for t in range(n))
        points = tuple(_affine(label_map[tag % period]) for tag in tags)
        out.append(
            NPoint(points, tags, seq_label=2 * j + 1, level=1, period=period)
        )
    return tuple(out)


def _mirror_sequence(pair: MirrorPair, j: int) -> NPoint:
    n = pair.n
    tags = tuple(((j - 1 + t) % n + 1, t % 2 == 1) for t in range(n))
    points = tuple(_mirror_point(pair, tag) for tag in tags)
    return NPoint(points, tags, seq_label=2 * j - 1, level=1, cycle=n)


def _mirror_point(pair: MirrorPair, tag: MirrorTag) -> Vec:
    idx, primed = tag
    p = pair.points[idx - 1]
    return _affine(reflect_r(p) if primed else p)


# ---------------------------------------------------------------------------
# lifting


def canonical_heights(n: int, d: int) -> tuple[tuple[Fraction, ...], ...]:
    """Positions 1..d stay at height zero; position l > d is raised by one in
    appended coordinate l-d."""
    if n < d:
        raise DimensionMismatch("lifting needs at least d positions")
    rows = []
    for l in range(n):
        if l < d:
            rows.append((Fraction(0),) * (n - d))
        else:
            rows.append(
                tuple(Fraction(1 if i == l - d else 0) for i in range(n - d))
            )
    return tuple(rows)


def random_heights(n: int, d: int, rng: SplitMix64, bound: int = 8):
    if n < d:
        raise DimensionMismatch("lifting needs at least d positions")
    return tuple(
        tuple(rng.rational(bound) for _ in range(n - d)) for _ in range(n)
    )


def parallel_lift(seqs: Sequence[NPoint], heights) -> Polyjoint:
    """Append heights row l to position l of every sequence; validate joints
    and the prism property of consecutive pairs."""
    seqs = tuple(seqs)
    if len(seqs) < 2:
        raise ValueError("need at least two sequences")
    n = seqs[0].count
    d = seqs[0].d
    if any(s.count != n or s.d != d for s in seqs):
        raise DimensionMismatch("sequences must share length and dimension")
    heights = tuple(tuple(Fraction(c) for c in row) for row in heights)
    if len(heights) != n or any(len(row) != n - d for row in heights):
        raise DimensionMismatch(f"heights must be {n} rows of {n - d} entries")
    joints = []
    for s in seqs:
        lifted = tuple(p + row for p, row in zip(s.points, heights))
        try:
            joints.append(Joint.of(lifted))
        except NotAJoint as exc:
            raise NotAJoint(f"sequence {s.seq_label}: {exc}") from exc
    prisms = []
    for i in range(len(joints) - 1):
        try:
            prisms.append(Prism.between(joints[i], joints[i + 1]))
        except DegenerateSpan as exc:
            raise DegenerateSpan(
                f"between sequences {seqs[i].seq_label} and {seqs[i + 1].seq_label}: {exc}"
            ) from exc
    return Polyjoint(
        joints=tuple(joints),
        seq_labels=tuple(s.seq_label for s in seqs),
        d=d,
        heights=heights,
        prisms=tuple(prisms),
    )


def canonical_lift_L0(seqs: Sequence[NPoint]) -> Polyjoint:
    seqs = tuple(seqs)
    return parallel_lift(seqs, canonical_heights(seqs[0].count, seqs[0].d))


def general_position_check(joints: Sequence[Joint]) -> bool:
    """Every subset of at most n normals is linearly independent.

    For exactly n-1 hyperplanes the completion row (0, 1, 0, ..., 0) gives a
    fast determinant witness; the rank computation is the fallback and the
    definition.
    """
    joints = tuple(joints)
    if not joints:
        return True
    n = joints[0].n
    if any(J.n != n for J in joints):
        raise NotAJoint("joints live in different spaces")
    if len(joints) > n:
        return False
    normals = [list(hyperplane_normal(J)) for J in joints]
    if len(normals) == n - 1:
        v0 = [Fraction(1 if i == 1 else 0) for i in range(n)]
        if linalg.det(normals + [v0]) != 0:
            return True
    return linalg.rank(normals) == len(normals)


@dataclass(frozen=True)
class CentroidReport:
    coincide: bool
    centroid: Vec | None
    projected: Vec | None
    expected: Vec
    matched: bool

    @property
    def ok(self) -> bool:
        return self.coincide and self.matched


def centroid_coincidence_check(pj: Polyjoint, expected: ProjPoint) -> CentroidReport:
    """All joint centroids must agree exactly and project onto the expected
    point (heights contribute identically to every centroid)."""
    centroids = [J.centroid() for J in pj.joints]
    coincide = all(c == centroids[0] for c in centroids)
    expected_vec = expected.affine_coords()
    if len(expected_vec) != pj.d:
        raise DimensionMismatch("expected point has the wrong dimension")
    centroid = centroids[0] if coincide else None
    projected = centroid[: pj.d] if coincide else None
    return CentroidReport(
        coincide=coincide,
        centroid=centroid,
        projected=projected,
        expected=expected_vec,
        matched=coincide and projected == expected_vec,
    )


# ---------------------------------------------------------------------------
# mating


def line_meet(p0: Vec, p1: Vec, q0: Vec, q1: Vec) -> Vec:
    """Meet of lines p0p1 and q0q1 in R^d (the lines must be coplanar)."""
    if p0 == p1 or q0 == q1:
        raise DegenerateJoin("cannot join coincident points")
    u = linalg.vec_sub(p1, p0)
    v = linalg.vec_sub(q1, q0)
    w = linalg.vec_sub(q0, p0)
    if linalg.rank([u, v, w]) > 2:
        raise NonCoplanarDiagonals("lines are skew")
    if linalg.rank([u, v]) == 1:
        raise DegenerateMeet("parallel or identical lines have no single meet")
    sol = linalg.solve([[a, -b] for a, b in zip(u, v)], list(w))
    if sol is None:
        raise DegenerateMeet("coplanar lines failed to meet")
    return linalg.vec_add(p0, linalg.vec_scale(u, sol[0]))


def _child_tag(X: NPoint, slot: int) -> object:
    if X.period is not None:
        L = X.count
        xa = X.tags[slot]
        xb = X.tags[(slot + 1) % L] + (X.period if slot + 1 == L else 0)
        return xa, xb
    idx, primed = X.tags[slot]
    return idx % X.cycle + 1, primed


def _mate(X: NPoint, Y: NPoint, slots: int, cyclic: bool) -> NPoint:
    if X.level != Y.level or X.d != Y.d or X.count != Y.count:
        raise DimensionMismatch("can only mate sequences of the same stage")
    if Y.seq_label != X.seq_label + 2:
        raise ValueError("mating expects sequences at adjacent ladder labels")
    if X.period != Y.period or X.cycle != Y.cycle:
        raise DimensionMismatch("mixed tag vocabularies")
    L = X.count
    points = []
    tags = []
    for t in range(slots):
        t1 = (t + 1) % L
        try:
            points.append(
                line_meet(X.points[t], X.points[t1], Y.points[t], Y.points[t1])
            )
        except (DegenerateJoin, DegenerateMeet, NonCoplanarDiagonals) as exc:
            raise type(exc)(f"slot {t}: {exc}") from exc
        if X.period is not None:
            xa, xb = _child_tag(X, t)
            ya, yb = _child_tag(Y, t)
            total = xa + xb + ya + yb
            assert total % 4 == 0
            tags.append(total // 4)
        else:
            tags.append(_child_tag(X, t))
    return NPoint(
        points=tuple(points),
        tags=tuple(tags),
        seq_label=(X.seq_label + Y.seq_label) // 2,
        level=X.level + 1,
        period=X.period,
        cycle=X.cycle,
    )


def mating(X: NPoint, Y: NPoint) -> NPoint:
    """Full mating: slot t meets chord X_t X_{t+1} with chord Y_t Y_{t+1},
    cyclically; the child's tag averages the four parent tags."""
    return _mate(X, Y, X.count, cyclic=True)


def star(X: NPoint, Y: NPoint) -> NPoint:
    """Mating without the wraparound slot (used by the odd mirror chains,
    whose last meet is genuinely undefined)."""
    return _mate(X, Y, X.count - 1, cyclic=False)


# ---------------------------------------------------------------------------
# orbit contexts and the mating-orbit verdict


class _OrbitContext:
    """Uniform access to map iterates for tag verification."""

    def __init__(self, P, variant: str):
        self.variant = variant
        if variant == "planar":
            self.m = 2
            self.n = P.n
            self.d = 2
            polys = [P.underlying]
            for _ in range(self.n - 2):
                polys.append(pentagram_step(polys[-1]))
            self._maps = [poly.label_map() for poly in polys]
            self.period = polys[0].label_period
        elif variant == "corrugated":
            self.m = P.m
            self.n = P.n
            self.d = P.m
            polys = [P.underlying]
            for _ in range(self.n - 2):
                polys.append(corrugated_step(polys[-1]))
            self._maps = [poly.label_map() for poly in polys]
            self.period = polys[0].label_period
        else:
            pair = P.underlying if isinstance(P, AxisAlignedMirrorPair) else P
            self.m = None
            self.n = pair.n
            self.d = 2
            pairs = [pair]
            for _ in range(self.n - 2):
                pairs.append(mp_step(pairs[-1]))
            self._pairs = pairs
            self.period = None

    def tag_point(self, stage: int, tag) -> Vec:
        if self.period is not None:
            return _affine(self._maps[stage - 1][tag % self.period])
        return _mirror_point(self._pairs[stage - 1], tag)

    def full_tag_union(self, stage: int) -> set:
        if self.period is not None:
            return set(self._maps[stage - 1].keys())
        n = self.n
        return {(i, primed) for i in range(1, n + 1) for primed in (False, True)}

    def reduce(self, tag):
        return tag % self.period if self.period is not None else tag


def _expected_tags(ctx: _OrbitContext, seq_label: int, stage: int, length: int):
    """Closed-form stage tags, double-entry against averaged propagation."""
    if ctx.period is not None:
        m = ctx.m
        j = (seq_label - stage) // 2
        start = j * m + 1 + (stage - 1) * (m * m + m) // 2
        return tuple(start + m * m * t for t in range(length))
    s = (seq_label + stage) // 2
    return tuple(((s - 1 + t) % ctx.n + 1, t % 2 == 1) for t in range(length))


@dataclass(frozen=True)
class StageCheck:
    stage: int
    tags_ok: bool
    labels_ok: bool
    union_ok: bool

    @property
    def ok(self) -> bool:
        return self.tags_ok and self.labels_ok and self.union_ok


@dataclass(frozen=True)
class WindowReport:
    window: int
    per_stage: tuple[StageCheck, ...]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.per_stage)


@dataclass(frozen=True)
class MatingOrbitReport:
    variant: str
    stages: int
    per_stage: tuple[StageCheck, ...]
    windows: tuple[WindowReport, ...]
    cross_union_ok: tuple[bool, ...] | None

    @property
    def ok(self) -> bool:
        if not all(s.ok for s in self.per_stage):
            return False
        if not all(w.ok for w in self.windows):
            return False
        return self.cross_union_ok is None or all(self.cross_union_ok)


def _run_chain(seqs: Sequence[NPoint], op) -> list[list[NPoint]]:
    stages = [list(seqs)]
    while len(stages[-1]) > 1:
        cur = stages[-1]
        stages.append([op(cur[i], cur[i + 1]) for i in range(len(cur) - 1)])
    return stages


def _check_stage(ctx: _OrbitContext, stage_seqs: Sequence[NPoint], stage: int,
                 expect_union: bool) -> StageCheck:
    tags_ok = True
    labels_ok = True
    union: set = set()
    for s in stage_seqs:
        if s.tags != _expected_tags(ctx, s.seq_label, stage, s.count):
            labels_ok = False
        for tag, point in zip(s.tags, s.points):
            union.add(ctx.reduce(tag))
            if point != ctx.tag_point(stage, tag):
                tags_ok = False
    if not expect_union:
        union_ok = True
    elif ctx.period is not None:
        n, step = ctx.n, ctx.m
        expected_size = min(n - stage, step) * n
        union_ok = len(union) == expected_size
        if n - stage >= step:
            union_ok = union_ok and union == ctx.full_tag_union(stage)
    else:
        if stage <= ctx.n - 2:
            union_ok = union == ctx.full_tag_union(stage)
        else:
            union_ok = len(union) == ctx.n
    return StageCheck(stage=stage, tags_ok=tags_ok, labels_ok=labels_ok,
                      union_ok=union_ok)


def mating_orbit_check(P, variant: str, full: bool = False) -> MatingOrbitReport:
    """Chain the matings and compare every stage against the map orbit.

    Planar/corrugated/even-mirror run one full-mating chain; stage unions are
    compared against iterate vertex sets (complete sets while enough label
    classes survive, counted subsets afterwards).  Odd-mirror runs star
    chains over the windows W_1(l); l = 1 plus one deterministic second
    window by default, all n windows (with exact cross-window stage unions)
    when full is set.
    """
    ctx = _OrbitContext(P, variant)
    seqs = build_A_sequences(P, variant)
    n = ctx.n
    if variant != "mirror_odd":
        stages = _run_chain(seqs, mating)
        per_stage = tuple(
            _check_stage(ctx, stage_seqs, g + 1, expect_union=True)
            for g, stage_seqs in enumerate(stages)
        )
        return MatingOrbitReport(variant, len(stages), per_stage, (), None)

    if full:
        windows = list(range(1, n + 1))
    else:
        windows = [1, 2 + SplitMix64(n).below(n - 1)]
    window_reports = []
    unions: list[set] | None = [set() for _ in range(n - 1)] if full else None
    for l in windows:
        window = [
            NPoint(
                points=seqs[(l - 1 + u) % n].points,
                tags=seqs[(l - 1 + u) % n].tags,
                seq_label=2 * (l + u) - 1,
                level=1,
                cycle=n,
            )
            for u in range(n - 1)
        ]
        stages = _run_chain(window, star)
        checks = []
        for g, stage_seqs in enumerate(stages):
            checks.append(_check_stage(ctx, stage_seqs, g + 1, expect_union=False))
            if unions is not None:
                for s in stage_seqs:
                    unions[g].update(s.tags)
        window_reports.append(WindowReport(window=l, per_stage=tuple(checks)))
    # every stage's union over all windows covers the whole iterate, final
    # stage included (the two-point tails rotate through all indices)
    cross = None
    if unions is not None:
        cross = tuple(
            unions[g] == ctx.full_tag_union(g + 1) for g in range(n - 1)
        )
    return MatingOrbitReport(variant, n - 1, (), tuple(window_reports), cross)


# ---------------------------------------------------------------------------
# skeletons, H-flats, slicing


def cyclic_skeleton(T: Prism, k: int) -> CyclicSkeleton:
    """Level-k faces: t_k(j) spans k cyclically consecutive prism lines."""
    levels = _skeleton_levels(T, k)
    return CyclicSkeleton(prism=T, level=k, faces=levels[k - 1])


def _skeleton_levels(T: Prism, k: int) -> list[tuple[AffineFlat, ...]]:
    n = T.n
    if not 1 <= k <= n - 1:
        raise ValueError("skeleton level must be between 1 and n-1")
    levels = [T.lines()]
    for level in range(2, k + 1):
        prev = levels[-1]
        faces = []
        for t in range(n):
            face = prev[t].span_with(prev[(t + 1) % n])
            if face.dim != level:
                raise DegenerateSpan(
                    f"level {level} face {t} has dimension {face.dim}"
                )
            faces.append(face)
        levels.append(tuple(faces))
    return levels


def skeleton_recurrence_check(T: Prism, k: int) -> bool:
    """t_{k-1}(j) = t_k(j-1) ^ t_k(j+1), checked exactly at every level."""
    levels = _skeleton_levels(T, k)
    n = T.n
    for level in range(1, k):
        prev, cur = levels[level - 1], levels[level]
        for t in range(n):
            meet = cur[(t - 1) % n].intersect(cur[t])
            if meet is None or meet != prev[t]:
                return False
    return True


def flat_H(g: int, k: int, hyperplanes: Mapping[int, AffineFlat],
           period: int | None = None) -> AffineFlat:
    """H_{g,k}: intersection of the g hyperplanes at labels k-g+1, ..., k+g-1.

    Labels reduce cyclically when a period is given (odd mirror windows wrap).
    Raises NonTransverse unless the intersection has codimension exactly g.
    """
    if g < 1:
        raise ValueError("need g >= 1")
    labels = []
    for i in range(g):
        label = k - g + 1 + 2 * i
        if period is not None:
            label = (label - 1) % period + 1
        labels.append(label)
    missing = [label for label in labels if label not in hyperplanes]
    if missing:
        raise KeyError(f"no hyperplane at labels {missing}")
    flat = hyperplanes[labels[0]]
    for label in labels[1:]:
        nxt = flat.intersect(hyperplanes[label])
        if nxt is None:
            raise NonTransverse(f"H_{g},{k}: empty intersection at label {label}")
        flat = nxt
    if flat.codim != g:
        raise NonTransverse(
            f"H_{g},{k} has codimension {flat.codim}, expected {g}"
        )
    return flat


@dataclass(frozen=True)
class SlicesReport:
    ok: bool
    level: int
    points: tuple[Vec, ...] | None
    reasons: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def slices_check(W: AffineFlat, T: Prism) -> SlicesReport:
    """codim-j W slices T: one point per level-j face, all n distinct, and
    (below the top level) one line per level-(j+1) face, all distinct."""
    j = W.codim
    n = T.n
    reasons = []
    if not 1 <= j <= n - 1:
        return SlicesReport(False, j, None, (f"codimension {j} out of range",))
    levels = _skeleton_levels(T, min(j + 1, n - 1))
    points = []
    for t, face in enumerate(levels[j - 1]):
        cut = W.intersect(face)
        if cut is None or cut.dim != 0:
            reasons.append(f"face {t} at level {j} does not cut to a point")
            continue
        points.append(cut.base)
    if len(points) == n and len(set(points)) != n:
        reasons.append("slice points are not pairwise distinct")
    if j < n - 1 and not reasons:
        lines = []
        for t, face in enumerate(levels[j]):
            cut = W.intersect(face)
            if cut is None or cut.dim != 1:
                reasons.append(f"face {t} at level {j + 1} does not cut to a line")
                continue
            lines.append(cut)
        if len(lines) == n and len(set(lines)) != n:
            reasons.append("slice lines are not pairwise distinct")
    ok = not reasons
    return SlicesReport(ok, j, tuple(points) if ok else None, tuple(reasons))


def slice_points(W: AffineFlat, T: Prism) -> tuple[Vec, ...]:
    """The ordered points of W ^ Sigma_j T (face order); raises if not sliced."""
    report = slices_check(W, T)
    if not report.ok:
        raise NonTransverse("; ".join(report.reasons))
    return report.points


def lemma32_check(V: AffineFlat, Vp: AffineFlat, T: Prism) -> bool:
    """(V ^ V')_T equals the positional mating of V_T and V'_T, exactly."""
    meet = V.intersect(Vp)
    if meet is None:
        raise NonTransverse("V and V' do not intersect")
    xs = slice_points(V, T)
    ys = slice_points(Vp, T)
    zs = slice_points(meet, T)
    n = len(xs)
    for t in range(n):
        mate = line_meet(xs[t], xs[(t + 1) % n], ys[t], ys[(t + 1) % n])
        if mate != zs[t]:
            return False
    return True


def fully_sliced_check(pj: Polyjoint) -> tuple[bool, tuple[str, ...]]:
    """slices_check for every H_{g,k} against every prism with |h-k| <= 1."""
    n = pj.n
    flats = pj.joint_flats()
    prisms = dict(zip(pj.prism_labels(), pj.prisms))
    failures = []
    for g in range(1, n):
        for k in range(g, 2 * (n - 1) - g + 1, 2):
            try:
                W = flat_H(g, k, flats)
            except NonTransverse as exc:
                failures.append(f"H({g},{k}): {exc}")
                continue
            for h in (k - 1, k, k + 1):
                if h not in prisms:
                    continue
                report = slices_check(W, prisms[h])
                if not report.ok:
                    failures.append(
                        f"H({g},{k}) vs prism {h}: " + "; ".join(report.reasons)
                    )
    return not failures, tuple(failures)


def prism_independence_check(pj: Polyjoint) -> tuple[bool, tuple[str, ...]]:
    """H_{g,k} ^ Sigma_g T_h yields one point set for every prism h with
    |h-k| <= g."""
    n = pj.n
    flats = pj.joint_flats()
    prisms = dict(zip(pj.prism_labels(), pj.prisms))
    failures = []
    for g in range(1, n):
        for k in range(g, 2 * (n - 1) - g + 1, 2):
            try:
                W = flat_H(g, k, flats)
            except NonTransverse as exc:
                failures.append(f"H({g},{k}): {exc}")
                continue
            seen: set | None = None
            for h in range(max(2, k - g), min(2 * n - 4, k + g) + 1, 2):
                if h not in prisms:
                    continue
                try:
                    pts = frozenset(slice_points(W, prisms[h]))
                except NonTransverse as exc:
                    failures.append(f"H({g},{k}) vs prism {h}: {exc}")
                    continue
                if seen is None:
                    seen = pts
                elif pts != seen:
                    failures.append(
                        f"H({g},{k}): prism {h} slice set differs"
                    )
    return not failures, tuple(failures)


# ---------------------------------------------------------------------------
# collapse line and the full report


def expected_projected_centroid(P, variant: str) -> ProjPoint:
    if variant == "planar":
        return center_of_mass_affine(P.underlying)
    if variant == "corrugated":
        return center_of_mass_m(P.underlying)
    if not isinstance(P, AxisAlignedMirrorPair):
        raise VariantMismatch("mirror centroid prediction needs a canonical pair")
    n = P.n
    C = Fraction(sum(P.x_values()), n)
    return ProjPoint.affine(C, Fraction(0) if n % 2 == 0 else Fraction(-1, n))


@dataclass(frozen=True)
class CollapseLineReport:
    line: AffineFlat
    projected: AffineFlat
    final_points: tuple[Vec, ...]
    points_on_line: bool
    centroid_on_line: bool

    @property
    def ok(self) -> bool:
        return self.points_on_line and self.centroid_on_line


def collapse_line_check(P, pj: Polyjoint) -> CollapseLineReport:
    """pi(H_{n-1,n-1}) must contain the final mating points and the centroid.

    This is the computational content of the collapse theorems on one
    instance: the last mating stage is trapped on the projected line through
    the center of mass.
    """
    variant = _infer_variant(P)
    n = pj.n
    line = flat_H(n - 1, n - 1, pj.joint_flats())
    projected = line.project(pj.d)
    seqs = build_A_sequences(P, variant)
    if variant == "mirror_odd":
        final = _run_chain(list(seqs[: n - 1]), star)[-1][0]
    else:
        final = _run_chain(seqs, mating)[-1][0]
    expected = expected_projected_centroid(P, variant)
    points_on = all(projected.contains(p) for p in final.points)
    centroid_on = projected.contains(expected.affine_coords())
    return CollapseLineReport(
        line=line,
        projected=projected,
        final_points=final.points,
        points_on_line=points_on,
        centroid_on_line=centroid_on,
    )


def _infer_variant(P) -> str:
    if isinstance(P, AxisAligned2):
        return "planar"
    if isinstance(P, AxisAlignedM):
        return "corrugated"
    pair = P.underlying if isinstance(P, AxisAlignedMirrorPair) else P
    if isinstance(pair, MirrorPair):
        return "mirror_even" if pair.n % 2 == 0 else "mirror_odd"
    raise VariantMismatch(f"no variant for {type(P).__name__}")


@dataclass(frozen=True)
class LiftCheck:
    check_id: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class LiftReport:
    variant: str
    n: int
    d: int
    heights: tuple[tuple[Fraction, ...], ...]
    used_canonical: bool
    normals: tuple[Vec, ...]
    normal_rank: int
    checks: tuple[LiftCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def lift_report(P, variant: str | None = None, seed: int = 0,
                attempts: int = 8, full: bool = False) -> LiftReport:
    """Run the whole lifting battery on one instance.

    The canonical L0 heights are tried first; if the lift degenerates or
    fails general position, seeded random heights are retried up to
    ``attempts`` times, and the heights actually used are reported.
    """
    if variant is None:
        variant = _infer_variant(P)
    seqs = build_A_sequences(P, variant)
    if variant == "mirror_odd":
        lift_seqs = seqs[: len(seqs) - 1]
    else:
        lift_seqs = seqs
    n = lift_seqs[0].count
    d = lift_seqs[0].d
    rng = SplitMix64(seed)
    pj = None
    used_canonical = True
    construction_error = ""
    for attempt in range(attempts + 1):
        heights = (
            canonical_heights(n, d) if attempt == 0 else random_heights(n, d, rng)
        )
        try:
            candidate = parallel_lift(lift_seqs, heights)
        except (NotAJoint, DegenerateSpan) as exc:
            construction_error = str(exc)
            continue
        if general_position_check(candidate.joints):
            pj = candidate
            used_canonical = attempt == 0
            break
        construction_error = "hyperplanes not in general position"
    if pj is None:
        raise NotAJoint(
            f"no usable lift within {attempts + 1} attempts: {construction_error}"
        )

    normals = tuple(hyperplane_normal(J) for J in pj.joints)
    normal_rank = linalg.rank([list(v) for v in normals])
    checks = [
        LiftCheck("L2.1", True, "joints and prisms constructed"),
        LiftCheck(
            "L2.2",
            general_position_check(pj.joints),
            f"normal rank {normal_rank} of {len(normals)}",
        ),
    ]

    centroid = centroid_coincidence_check(pj, expected_projected_centroid(P, variant))
    checks.append(
        LiftCheck(
            "L2.3",
            centroid.ok,
            "joint centroids coincide and project to the predicted point"
            if centroid.ok
            else "centroid coincidence failed",
        )
    )

    recurrence_ok = all(
        skeleton_recurrence_check(T, n - 1) for T in pj.prisms
    )
    checks.append(
        LiftCheck("L2.4", recurrence_ok, "skeleton intersection recurrence")
    )

    sliced_ok, sliced_failures = fully_sliced_check(pj)
    checks.append(
        LiftCheck(
            "L2.5", sliced_ok,
            "fully sliced" if sliced_ok else "; ".join(sliced_failures[:4]),
        )
    )

    indep_ok, indep_failures = prism_independence_check(pj)
    checks.append(
        LiftCheck(
            "L2.6", indep_ok,
            "slice sets prism-independent" if indep_ok
            else "; ".join(indep_failures[:4]),
        )
    )

    orbit = mating_orbit_check(P, variant, full=full)
    checks.append(
        LiftCheck("L2.7", orbit.ok, "mating chain matches the map orbit")
    )

    collapse = collapse_line_check(P, pj)
    checks.append(
        LiftCheck(
            "L2.8", collapse.ok,
            "collapse line carries final mating points and centroid",
        )
    )

    return LiftReport(
        variant=variant,
        n=pj.n,
        d=pj.d,
        heights=pj.heights,
        used_canonical=used_canonical,
        normals=normals,
        normal_rank=normal_rank,
        checks=tuple(checks),
    )
