"""Instance files: exact JSON serialization for every polygon space.

Format tag "pentagram-lab/v1".  The ``space`` field picks the payload shape:

* ``P2``        -- labeled planar polygon: ``label_offset`` + vertex pairs.
* ``Pm``        -- corrugated polygon in P^m: ``m``, ``label_offset``,
                   m-tuples of coordinates.
* ``P1``        -- pair of P^1 rows ``X`` and ``Y`` ("inf" marks the point
                   at infinity).
* ``P2-mirror`` -- point list of a mirror configuration.

Every number is a canonical rational string (``"-3/7"``, ``"5"``), so
``loads(dumps(obj))`` returns an equal object and ``dumps`` is byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .corrugated import PolygonM
from .errors import UsageError
from .lower1d import PairState1D
from .mirror import MirrorPair
from .pentagram2d import LabeledPolygon2
from .projcore import P1_INFINITY, ProjPoint, format_rational
from .projcore import parse_rational as _parse_fraction

FORMAT_TAG = "pentagram-lab/v1"

Instance = LabeledPolygon2 | PolygonM | PairState1D | MirrorPair


def parse_rational(text: str) -> Fraction:
    try:
        return _parse_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def format_p1(point: ProjPoint) -> str:
    if not point.is_finite:
        return "inf"
    return format_rational(point.p1_value())


def parse_p1(text: str) -> ProjPoint:
    if text.strip() == "inf":
        return P1_INFINITY
    return ProjPoint.p1(parse_rational(text))


def _affine_strings(point: ProjPoint) -> list[str]:
    return [format_rational(c) for c in point.affine_coords()]


def instance_to_dict(obj: Instance) -> dict[str, Any]:
    if isinstance(obj, LabeledPolygon2):
        return {
            "format": FORMAT_TAG,
            "space": "P2",
            "label_offset": obj.label_offset,
            "vertices": [_affine_strings(v) for v in obj.vertices],
        }
    if isinstance(obj, PolygonM):
        return {
            "format": FORMAT_TAG,
            "space": "Pm",
            "m": obj.m,
            "label_offset": obj.label_offset,
            "vertices": [_affine_strings(v) for v in obj.vertices],
        }
    if isinstance(obj, PairState1D):
        return {
            "format": FORMAT_TAG,
            "space": "P1",
            "X": [format_p1(x) for x in obj.X],
            "Y": [format_p1(y) for y in obj.Y],
        }
    if isinstance(obj, MirrorPair):
        return {
            "format": FORMAT_TAG,
            "space": "P2-mirror",
            "P": [_affine_strings(p) for p in obj.points],
        }
    raise UsageError(f"cannot serialize {type(obj).__name__}")


def _parse_vertex(coords: Any, dim: int, where: str) -> ProjPoint:
    if not isinstance(coords, list) or len(coords) != dim:
        raise UsageError(f"{where}: expected {dim} coordinates")
    return ProjPoint.affine(*(parse_rational(str(c)) for c in coords))


def instance_from_dict(data: Any) -> Instance:
    if not isinstance(data, dict):
        raise UsageError("instance file must hold a JSON object")
    if data.get("format") != FORMAT_TAG:
        raise UsageError(f'instance file must declare "format": "{FORMAT_TAG}"')
    space = data.get("space")
    if space == "P2":
        verts = data.get("vertices")
        if not isinstance(verts, list):
            raise UsageError("P2 instance needs a vertex list")
        points = tuple(
            _parse_vertex(v, 2, f"vertex {i + 1}") for i, v in enumerate(verts)
        )
        return LabeledPolygon2.of(points, int(data.get("label_offset", 1)))
    if space == "Pm":
        m = data.get("m")
        if not isinstance(m, int):
            raise UsageError("Pm instance needs an integer m")
        verts = data.get("vertices")
        if not isinstance(verts, list):
            raise UsageError("Pm instance needs a vertex list")
        points = tuple(
            _parse_vertex(v, m, f"vertex {i + 1}") for i, v in enumerate(verts)
        )
        return PolygonM.of(m, points, int(data.get("label_offset", 1)))
    if space == "P1":
        xs, ys = data.get("X"), data.get("Y")
        if not isinstance(xs, list) or not isinstance(ys, list):
            raise UsageError("P1 instance needs X and Y value lists")
        return PairState1D.of(
            tuple(parse_p1(str(x)) for x in xs),
            tuple(parse_p1(str(y)) for y in ys),
        )
    if space == "P2-mirror":
        pts = data.get("P")
        if not isinstance(pts, list):
            raise UsageError("P2-mirror instance needs a point list P")
        return MirrorPair.of(
            tuple(_parse_vertex(p, 2, f"point {i + 1}") for i, p in enumerate(pts))
        )
    raise UsageError(f"unknown space {space!r}")


def dumps(obj: Instance) -> str:
    return json.dumps(instance_to_dict(obj), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from exc
    return instance_from_dict(data)


def save_instance(path: str | Path, obj: Instance) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def load_instance(path: str | Path) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return loads(text)
