"""Shared fixtures: the worked hexagon and small constructors."""

from fractions import Fraction

import pytest

from pentagram_lab.projcore import ProjPoint
from pentagram_lab.pentagram2d import AxisAligned2, LabeledPolygon2

HEX_VERTICES = [(0, 0), (4, 0), (4, 2), (1, 2), (1, 5), (0, 5)]


def pt2(x, y) -> ProjPoint:
    return ProjPoint.affine(Fraction(x), Fraction(y))


def p1(x) -> ProjPoint:
    return ProjPoint.p1(Fraction(x))


@pytest.fixture
def hexagon() -> LabeledPolygon2:
    return LabeledPolygon2.of([pt2(x, y) for x, y in HEX_VERTICES], 1)


@pytest.fixture
def hexagon_aligned(hexagon) -> AxisAligned2:
    return AxisAligned2.from_polygon(hexagon)
