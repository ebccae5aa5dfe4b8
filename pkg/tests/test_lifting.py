"""Higher-dimensional lifts: joints, prisms, mating chains, collapse line."""

from fractions import Fraction

import pytest

from pentagram_lab.corrugated import random_axis_aligned_m
from pentagram_lab.errors import DimensionMismatch, NotAJoint
from pentagram_lab.lifting import (
    build_A_sequences,
    canonical_heights,
    general_position_check,
    lift_report,
    mating,
    mating_orbit_check,
    parallel_lift,
    star,
)
from pentagram_lab.mirror import AxisAlignedMirrorPair, random_axis_aligned_mirror
from pentagram_lab.pentagram2d import AxisAligned2, random_axis_aligned

ALL_CHECKS = ("L2.1", "L2.2", "L2.3", "L2.4", "L2.5", "L2.6", "L2.7", "L2.8")


def test_hexagon_lift_frozen(hexagon_aligned):
    rep = lift_report(hexagon_aligned)
    assert rep.variant == "planar"
    assert (rep.n, rep.d) == (3, 2)
    assert rep.used_canonical
    assert rep.heights == ((Fraction(0),), (Fraction(0),), (Fraction(1),))
    assert rep.normals == (
        (Fraction(2), Fraction(-4), Fraction(18)),
        (Fraction(2), Fraction(3), Fraction(-7)),
    )
    assert rep.normal_rank == 2
    assert tuple(c.check_id for c in rep.checks) == ALL_CHECKS
    assert rep.ok


def test_hexagon_a_sequences(hexagon_aligned):
    seqs = build_A_sequences(hexagon_aligned, "planar")
    assert [s.seq_label for s in seqs] == [1, 3]
    assert [s.tags for s in seqs] == [(1, 5, 9), (3, 7, 11)]
    assert all(s.count == 3 and s.d == 2 for s in seqs)


def test_hexagon_mating_orbit(hexagon_aligned):
    orb = mating_orbit_check(hexagon_aligned, "planar", full=True)
    assert orb.ok
    assert orb.stages == 2
    assert orb.windows == ()
    assert orb.cross_union_ok is None
    assert [(sc.stage, sc.tags_ok, sc.labels_ok, sc.union_ok) for sc in orb.per_stage] == [
        (1, True, True, True),
        (2, True, True, True),
    ]


def test_mirror_odd_lift_and_windows():
    mp = AxisAlignedMirrorPair.from_values([1, 2, 6])
    rep = lift_report(mp)
    assert rep.variant == "mirror_odd"
    assert rep.ok and rep.used_canonical
    orb = mating_orbit_check(mp, "mirror_odd", full=True)
    assert orb.ok
    # odd mirrors are checked windowwise; there is no single global stage list
    assert orb.per_stage == ()
    assert [w.window for w in orb.windows] == [1, 2, 3]
    assert orb.cross_union_ok == (True, True)
    for w in orb.windows:
        assert all(sc.tags_ok and sc.labels_ok and sc.union_ok for sc in w.per_stage)


def test_mirror_even_lift():
    rep = lift_report(AxisAlignedMirrorPair.from_values([1, 2, 6, 3]))
    assert rep.variant == "mirror_even"
    assert rep.ok


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_planar_lift_battery(n):
    rep = lift_report(random_axis_aligned(n, seed=n))
    assert rep.variant == "planar" and rep.n == n and rep.ok


@pytest.mark.parametrize("m,n,seed", [(3, 3, 0), (3, 4, 2), (2, 4, 2)])
def test_corrugated_lift_battery(m, n, seed):
    rep = lift_report(random_axis_aligned_m(m, n, seed=seed))
    assert rep.variant == "corrugated" and rep.ok


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_mirror_lift_battery(n):
    rep = lift_report(random_axis_aligned_mirror(n, seed=n))
    assert rep.variant == ("mirror_even" if n % 2 == 0 else "mirror_odd")
    assert rep.ok


def test_short_corrugated_sequences_unsupported():
    with pytest.raises(DimensionMismatch) as exc:
        lift_report(random_axis_aligned_m(4, 3, seed=0))
    assert "at least d positions" in str(exc.value)


def test_zero_heights_degenerate():
    # at n=3 the flat lift still assembles but the hyperplanes coincide
    seqs = build_A_sequences(random_axis_aligned(3, seed=1000), "planar")
    pj = parallel_lift(seqs, ((Fraction(0),),) * 3)
    assert not general_position_check(pj.joints)
    # from n=4 on a flat lift cannot even form a joint
    seqs4 = build_A_sequences(random_axis_aligned(4, seed=1000), "planar")
    with pytest.raises(NotAJoint) as exc:
        parallel_lift(seqs4, ((Fraction(0), Fraction(0)),) * 4)
    assert "affinely dependent" in str(exc.value)


def test_canonical_heights_shape():
    assert canonical_heights(3, 2) == ((Fraction(0),), (Fraction(0),), (Fraction(1),))
    h4 = canonical_heights(4, 2)
    assert len(h4) == 4 and all(len(row) == 2 for row in h4)
    with pytest.raises(DimensionMismatch):
        seqs = build_A_sequences(random_axis_aligned(4, seed=1000), "planar")
        parallel_lift(seqs, ((Fraction(0),),) * 4)


def test_mating_and_star_disagree_on_wraparound():
    seqs = build_A_sequences(random_axis_aligned(4, seed=2), "planar")
    full = mating(seqs[0], seqs[1])
    partial = star(seqs[0], seqs[1])
    assert full.count == seqs[0].count
    assert partial.count == seqs[0].count - 1
    assert full.points[: partial.count] == partial.points
