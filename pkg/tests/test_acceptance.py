"""Acceptance battery: one test per claim, all equality exact (tolerance zero).

Every random battery draws through the seeded SplitMix64 generator at a fixed
base, so reruns are bit-for-bit identical.  The bases below were chosen by
scanning forward in windows of 1000 for a window whose draws all lie in the
generic locus of the relevant construction; a draw outside that locus is
non-generic input (the library raises a typed DegeneracyError for it), not
evidence about any claim.  Only the correspondence battery resamples instead
(no clean window of 100 exists there); it skips draws whose construction is
undefined and never skips a comparison.
"""

from fractions import Fraction

from pentagram_lab.corrugated import collapse_orbit_m, corrugated_step, random_axis_aligned_m
from pentagram_lab.errors import PentagramError
from pentagram_lab.frieze import (
    build_pattern,
    diamond_soundness,
    random_a1,
    row_from_values,
    verify_T005,
    verify_embedding,
)
from pentagram_lab.lifting import lift_report
from pentagram_lab.lower1d import PairState1D, random_b, t1_step, verify_T008
from pentagram_lab.mirror import (
    AxisAlignedMirrorPair,
    mp_step,
    random_axis_aligned_mirror,
    random_mirror_pair,
    verify_T007,
    verify_correspondence,
)
from pentagram_lab.pentagram2d import (
    LabeledPolygon2,
    collapse_orbit,
    pentagram_step,
    random_axis_aligned,
)
from pentagram_lab.projcore import (
    ProjPoint,
    IndeterminateCrossRatio,
    P1_INFINITY,
    cross_ratio4,
    cross_ratio6,
    join_points,
    meet_lines,
    random_projective_map,
    reflect_r,
    solve_harmonic4,
    solve_harmonic6,
)
from pentagram_lab.rng import SplitMix64

from conftest import HEX_VERTICES, p1, pt2


def frac_pairs(poly):
    return [tuple(v.affine_coords()) for v in poly.vertices]


def test_criterion_1_planar_collapse(hexagon, hexagon_aligned):
    # the fixed hexagon: exact image, exact second iterate, two-line stage
    image = pentagram_step(hexagon)
    assert frac_pairs(image) == [
        (Fraction(20, 7), Fraction(10, 7)),
        (Fraction(16, 7), Fraction(8, 7)),
        (Fraction(10), Fraction(-4)),
        (Fraction(-1, 2), Fraction(13, 2)),
        (Fraction(5, 8), Fraction(25, 8)),
        (Fraction(4, 5), Fraction(4)),
    ]
    centroid = pt2(Fraction(5, 3), Fraction(7, 3))
    second = pentagram_step(image)
    assert all(v == centroid for v in second.vertices)

    v = image.vertices
    line_a = join_points(v[0], v[2])
    line_b = join_points(v[1], v[3])
    assert line_a.incident(v[4]) and line_b.incident(v[5])
    assert not line_a.incident(v[1]) and not line_b.incident(v[0])
    assert meet_lines(line_a, line_b) == centroid

    rep = collapse_orbit(hexagon_aligned)
    assert rep.ok and rep.steps_taken == 2 and rep.collapse_point == centroid

    base = {3: 0, 4: 0, 5: 1000, 6: 4000, 7: 0}
    for n in range(3, 8):
        for i in range(200):
            rep = collapse_orbit(random_axis_aligned(n, seed=base[n] + i))
            assert rep.ok, f"n={n} seed={base[n] + i}"
            assert rep.steps_taken == n - 1
            assert rep.collapse_point == rep.centroid


def test_criterion_2_corrugated_collapse():
    base = {
        (2, 2): 0, (2, 3): 1000, (2, 4): 2000,
        (3, 2): 0, (3, 3): 1000, (3, 4): 0,
        (4, 2): 0, (4, 3): 1000, (4, 4): 0,
    }
    for m in (2, 3, 4):
        for n in (2, 3, 4):
            for i in range(50):
                seed = base[(m, n)] + i
                Q = random_axis_aligned_m(m, n, seed=seed)
                rep = collapse_orbit_m(Q)
                assert rep.ok, f"m={m} n={n} seed={seed}"
                assert rep.steps_taken == n - 1
                assert all(rep.corrugated_certificates)
                assert rep.collapse_point == rep.centroid
                if m == 2:
                    # the m=2 walk must output the planar map bit for bit
                    poly_m = Q.underlying
                    poly_2 = LabeledPolygon2.of(poly_m.vertices, poly_m.label_offset)
                    for _ in range(n - 1):
                        poly_m = corrugated_step(poly_m)
                        poly_2 = pentagram_step(poly_2)
                        assert dict(zip(poly_m.labels(), poly_m.vertices)) == dict(
                            zip(poly_2.labels(), poly_2.vertices)
                        )


def test_criterion_3_lower_map_collapse():
    state = PairState1D.of(
        (P1_INFINITY,) * 3, (p1(1), p1(2), p1(6))
    )
    state = t1_step(state)
    assert state.Y == (p1(Fraction(11, 6)), p1(Fraction(2, 3)), p1(Fraction(34, 9)))
    state = t1_step(state)
    assert state.Y == (p1(3), p1(3), p1(3))

    base = {3: 0, 4: 1000, 5: 0, 6: 0, 7: 0, 8: 0}
    for n in range(3, 9):
        for i in range(200):
            pair = random_b(n, seed=base[n] + i)
            rep = verify_T008(pair)
            assert rep.ok, f"n={n} seed={base[n] + i}"
            assert rep.constant
            mean = Fraction(sum(p.p1_value() for p in pair.B), n)
            assert rep.expected == p1(mean)


def test_criterion_4_frieze_collapse():
    a1 = row_from_values([7, 5, -3])
    pattern = build_pattern(a1)
    INF_ROW = (P1_INFINITY,) * 3
    assert pattern.rows == (
        INF_ROW,
        (p1(7), p1(5), p1(-3)),
        (p1(6), p1(1), p1(2)),
        (p1(Fraction(16, 3)), p1(Fraction(23, 3)), p1(Fraction(13, 9))),
        (p1(Fraction(34, 9)), p1(Fraction(11, 6)), p1(Fraction(2, 3))),
        (p1(3), p1(3), p1(3)),
        (p1(3), p1(3), p1(3)),
    )
    rep = verify_T005(a1)
    assert rep.ok and rep.shift_equal and rep.value == p1(3)
    assert diamond_soundness(pattern)

    for n in range(3, 8):
        for i in range(200):
            row = random_a1(n, seed=i)
            r = verify_T005(row)
            assert r.ok, f"n={n} seed={i}"
            assert diamond_soundness(build_pattern(row))


def test_criterion_5_mirror_collapse_parity():
    pair = AxisAlignedMirrorPair.from_values([1, 2, 6])
    one = mp_step(pair.underlying)
    two = mp_step(one)
    target = pt2(3, Fraction(-1, 3))
    assert all(p == target for p in two.points)
    rep = verify_T007(pair)
    assert rep.ok and rep.steps_taken == 2 and rep.expected == target

    for n in range(3, 8):
        for i in range(100):
            pair = random_axis_aligned_mirror(n, seed=i)
            rep = verify_T007(pair)
            assert rep.ok, f"n={n} seed={i}"
            mean = Fraction(sum(pair.x_values()), n)
            y = Fraction(0) if n % 2 == 0 else Fraction(-1, n)
            assert rep.expected == pt2(mean, y)
            assert all(rep.roundtrips)


def test_criterion_6_mirror_correspondence():
    accepted = 0
    seed = 0
    while accepted < 100:
        n = 3 + accepted % 5
        pair = random_mirror_pair(n, seed=seed)
        seed += 1
        try:
            reports = [verify_correspondence(pair, k) for k in range(1, n)]
        except PentagramError:
            # construction or orbit undefined on this draw: outside the
            # hypothesis, resample (comparisons themselves are never skipped)
            continue
        for k, rep in enumerate(reports, start=1):
            assert rep.steps_taken == k
            assert all(rep.per_step), f"n={n} seed={seed - 1} k={k}"
        accepted += 1
    assert accepted == 100


def test_criterion_7_frieze_embedding():
    for n in range(3, 8):
        for i in range(20):
            a1 = random_a1(n, seed=i)
            pattern = build_pattern(a1)
            rows = pattern.rows
            inf_row = (P1_INFINITY,) * n
            # the even-index and odd-index row subsamples are lower-map
            # orbits, the odd one seeded by the virtual all-infinity row
            for start, first in ((inf_row, 1), (rows[0], 2)):
                state = PairState1D.of(start, rows[first])
                j = first + 2
                while j < len(rows):
                    if len(set(state.Y)) == 1:
                        # the embedded orbit has collapsed; the pattern
                        # carries that constant to the end
                        assert rows[j] == state.Y
                    else:
                        state = t1_step(state)
                        assert state.Y == rows[j], f"n={n} seed={i} row={j}"
                    j += 2
            assert verify_embedding(a1).ok, f"n={n} seed={i}"


def test_criterion_8_lifting_machinery():
    for n in range(3, 8):
        for instance in (
            random_axis_aligned(n, seed=0),
            random_axis_aligned_mirror(n, seed=0),
        ):
            rep = lift_report(instance, full=True)
            assert rep.used_canonical, f"n={n} {rep.variant}"
            by_id = {c.check_id: c.ok for c in rep.checks}
            assert by_id == {f"L2.{i}": True for i in range(1, 9)}, (
                f"n={n} {rep.variant}: {by_id}"
            )


def test_criterion_9_kernel_properties():
    rng = SplitMix64(2024)
    checked = 0
    while checked < 1000:
        a, b, c, d = rng.distinct_rationals(4, 30)
        M = random_projective_map(1, rng)
        pts = [ProjPoint.p1(x) for x in (a, b, c, d)]
        try:
            before = cross_ratio4(*pts)
            after = cross_ratio4(*(M.apply(p) for p in pts))
        except IndeterminateCrossRatio:
            continue
        assert after == before
        checked += 1

    rng = SplitMix64(77)
    four_trips = six_trips = 0
    while four_trips < 200:
        a, b, d = rng.distinct_rationals(3, 20)
        x = solve_harmonic4(p1(a), p1(b), p1(d))
        try:
            assert cross_ratio4(p1(a), p1(b), x, p1(d)) == Fraction(-1)
        except IndeterminateCrossRatio:
            continue  # solved at a 0/0 closure; nothing to resubstitute
        four_trips += 1
    while six_trips < 200:
        a, b, c, e, f = rng.distinct_rationals(5, 20)
        x = solve_harmonic6(p1(a), p1(b), p1(c), p1(e), p1(f))
        try:
            assert cross_ratio6(p1(a), p1(b), p1(c), x, p1(e), p1(f)) == Fraction(-1)
        except IndeterminateCrossRatio:
            continue
        six_trips += 1

    rng = SplitMix64(99)
    for _ in range(200):
        coords = tuple(rng.rational(40) for _ in range(3))
        if all(x == 0 for x in coords):
            continue
        point = ProjPoint(coords)
        assert ProjPoint(point.coords) == point  # canonical fixed point
        assert reflect_r(reflect_r(point)) == point
