"""Command line interface.

Exit codes (exhaustive, mutually exclusive):

  0  requested checks passed
  1  a verification failed
  2  degenerate / non-generic input (the message names the failing step)
  3  usage error

All numeric stdout is exact rational strings; SVG output is the only place
decimals appear.  Random trials are seeded per index (``seed + index``) with
the SplitMix64 generator, so every report is reproducible; setting
``PENTAGRAM_LAB_THREADS`` > 1 runs trials in a process pool without changing
the output (results are ordered by trial index).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from .corrugated import (
    AxisAlignedM,
    PolygonM,
    collapse_orbit_m,
    corrugated_step,
    random_axis_aligned_m,
)
from .errors import DegeneracyError, PentagramError, UsageError
from .frieze import (
    build_pattern,
    diamond_soundness,
    random_a1,
    render_staggered,
    row_from_values,
    verify_T005,
)
from .lifting import lift_report
from .lower1d import (
    AxisAlignedPair1,
    PairState1D,
    random_b,
    t1_step,
    verify_T008,
)
from .mirror import (
    AxisAlignedMirrorPair,
    MirrorPair,
    mp_step,
    random_axis_aligned_mirror,
    random_mirror_pair,
    verify_correspondence,
    verify_T007,
)
from .pentagram2d import (
    AxisAligned2,
    LabeledPolygon2,
    collapse_orbit,
    pentagram_step,
    random_axis_aligned,
)
from .projcore import ProjPoint, format_rational
from .rng import trial_seed
from .serde import (
    dumps,
    format_p1,
    load_instance,
    parse_rational,
)
from .svg import orbit_svg

THEOREMS = (
    "T002",
    "T003",
    "T005",
    "T007",
    "T008",
    "L2-mating",
    "L2-lifting",
    "L4-correspondence",
)
GEN_MAPS = ("pent2d", "corrugated", "lower", "mirror")
LIFT_CHECKS = {
    "general-position": "L2.2",
    "centroid": "L2.3",
    "mating": "L2.7",
    "fully-sliced": "L2.5",
    "collapse-line": "L2.8",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse hook
        raise UsageError(message)


def _fmt_point(p: ProjPoint) -> str:
    if p.dim == 1:
        return format_p1(p)
    if p.is_finite:
        return "(" + ", ".join(format_rational(c) for c in p.affine_coords()) + ")"
    return "[" + " : ".join(str(c) for c in p.coords) + "]"


def _print_json(payload: dict[str, Any]) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _parse_value_list(text: str) -> tuple:
    parts = [part for part in text.split(",") if part.strip()]
    if len(parts) < 3:
        raise UsageError("need at least three comma-separated values")
    return tuple(parse_rational(part) for part in parts)


def _thread_cap() -> int:
    raw = os.environ.get("PENTAGRAM_LAB_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError as exc:
        raise UsageError("PENTAGRAM_LAB_THREADS must be an integer") from exc
    return max(1, cap)


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    if args.n is None:
        raise UsageError("gen needs --n")
    bound = args.range
    if args.map == "pent2d":
        obj = random_axis_aligned(args.n, args.seed, bound).underlying
    elif args.map == "corrugated":
        if args.m is None:
            raise UsageError("--map corrugated needs --m")
        obj = random_axis_aligned_m(args.m, args.n, args.seed, bound).underlying
    elif args.map == "lower":
        obj = random_b(args.n, args.seed, bound).initial_state()
    else:  # mirror
        obj = random_axis_aligned_mirror(args.n, args.seed, bound).underlying
    text = dumps(obj)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# iterate


def _iterate_rows(state: PairState1D, steps: int, svg_path: str | None) -> int:
    rows = [state.Y]
    for i in range(steps):
        try:
            state = t1_step(state)
        except DegeneracyError as exc:
            raise type(exc)(f"step {i + 1}: {exc}") from exc
        rows.append(state.Y)
    for row in rows:
        print(" ".join(format_p1(y) for y in row))
    if svg_path:
        from fractions import Fraction

        iterates = []
        for idx, row in enumerate(rows):
            pts = [
                (p.p1_value(), Fraction(-idx))
                for p in row
                if p.is_finite
            ]
            if pts:
                iterates.append(pts)
        collapse = None
        final = rows[-1]
        if len(set(final)) == 1 and final[0].is_finite:
            collapse = (final[0].p1_value(), Fraction(-(len(rows) - 1)))
        Path(svg_path).write_text(
            orbit_svg(iterates, close=False, diagonal_step=None, collapse=collapse),
            encoding="utf-8",
        )
    return 0


def _iterate_points(
    start, step_fn, steps: int, svg_path: str | None, *, diagonal_step, mirror: bool
) -> int:
    iterates = [start]
    for i in range(steps):
        try:
            iterates.append(step_fn(iterates[-1]))
        except DegeneracyError as exc:
            raise type(exc)(f"step {i + 1}: {exc}") from exc
    for idx, it in enumerate(iterates):
        points = it.points if mirror else it.vertices
        print(f"step {idx}:")
        for p in points:
            print(_fmt_point(p))
    final_points = iterates[-1].points if mirror else iterates[-1].vertices
    if len(set(final_points)) == 1:
        print(f"all vertices = {_fmt_point(final_points[0])}")
    if svg_path:
        from fractions import Fraction

        drawn = []
        for it in iterates:
            points = it.points if mirror else it.vertices
            drawn.append([p.affine_coords()[:2] for p in points])
        collapse = None
        if len(set(final_points)) == 1 and final_points[0].is_finite:
            collapse = final_points[0].affine_coords()[:2]
        Path(svg_path).write_text(
            orbit_svg(
                drawn,
                close=not mirror,
                diagonal_step=diagonal_step,
                collapse=collapse,
                axis_y=Fraction(0) if mirror else None,
            ),
            encoding="utf-8",
        )
    return 0


def cmd_iterate(args) -> int:
    if args.steps < 0:
        raise UsageError("--steps must be >= 0")
    inst = load_instance(args.path)
    if isinstance(inst, PairState1D):
        return _iterate_rows(inst, args.steps, args.svg)
    if isinstance(inst, LabeledPolygon2):
        return _iterate_points(
            inst, pentagram_step, args.steps, args.svg, diagonal_step=2, mirror=False
        )
    if isinstance(inst, PolygonM):
        return _iterate_points(
            inst,
            corrugated_step,
            args.steps,
            args.svg,
            diagonal_step=inst.m,
            mirror=False,
        )
    return _iterate_points(
        inst, mp_step, args.steps, args.svg, diagonal_step=None, mirror=True
    )


# ---------------------------------------------------------------------------
# verify


def _check_T002(P: AxisAligned2):
    rep = collapse_orbit(P)
    values = {
        "centroid": _fmt_point(rep.centroid),
        "collapse_point": _fmt_point(rep.collapse_point) if rep.collapse_point else None,
        "steps_taken": rep.steps_taken,
    }
    if rep.ok:
        return True, values, ""
    if not rep.all_equal:
        return False, values, "vertices did not all coincide"
    if not rep.matched:
        return False, values, "collapse point differs from the center of mass"
    return False, values, "two-line stage certificate failed"


def _check_T003(P: AxisAlignedM):
    rep = collapse_orbit_m(P)
    values = {
        "centroid": _fmt_point(rep.centroid),
        "collapse_point": _fmt_point(rep.collapse_point) if rep.collapse_point else None,
        "corrugated_certified": all(rep.corrugated_certificates),
        "steps_taken": rep.steps_taken,
    }
    if rep.ok:
        return True, values, ""
    if not all(rep.corrugated_certificates):
        return False, values, "an intermediate polygon was not corrugated"
    if not rep.all_equal:
        return False, values, "vertices did not all coincide"
    return False, values, "collapse point differs from the center of mass"


def _check_T005(row):
    rep = verify_T005(row)
    diamonds = diamond_soundness(build_pattern(row))
    values = {
        "constant_value": _fmt_point(rep.value) if rep.value is not None else None,
        "diamonds_sound": diamonds,
        "expected": _fmt_point(rep.expected),
    }
    if rep.ok and diamonds:
        return True, values, ""
    if not diamonds:
        return False, values, "a diamond failed to resubstitute to -1"
    if not (rep.penultimate_constant and rep.last_constant):
        return False, values, "final rows are not constant"
    if not rep.shift_equal:
        return False, values, "final rows differ under the column shift"
    return False, values, "constant value differs from the mean of A_1"


def _check_T007(pair: AxisAlignedMirrorPair):
    rep = verify_T007(pair)
    values = {
        "collapse_point": _fmt_point(rep.collapse_points[0]) if rep.all_equal else None,
        "expected": _fmt_point(rep.expected),
        "roundtrips": all(rep.roundtrips),
        "steps_taken": rep.steps_taken,
    }
    if rep.ok:
        return True, values, ""
    if not rep.all_equal:
        return False, values, "points did not all coincide"
    if not rep.matched:
        return False, values, "collapse point differs from the predicted point"
    return False, values, "an inverse round trip failed"


def _check_T008(pair: AxisAlignedPair1):
    rep = verify_T008(pair)
    values = {
        "expected": _fmt_point(rep.expected),
        "final_row": " ".join(format_p1(y) for y in rep.final_component),
        "steps_taken": rep.steps_taken,
    }
    if rep.ok:
        return True, values, ""
    if not rep.constant:
        return False, values, "final second component is not constant"
    return False, values, "final value differs from the mean of B"


def _check_mating(P, variant=None):
    from .lifting import _infer_variant, mating_orbit_check

    if variant is None:
        variant = _infer_variant(P)
    rep = mating_orbit_check(P, variant)
    values = {"stages": rep.stages, "variant": rep.variant}
    if rep.ok:
        return True, values, ""
    return False, values, "a mating stage disagreed with the map orbit"


def _check_lifting(P):
    rep = lift_report(P)
    values = {
        "checks": {c.check_id: c.ok for c in rep.checks},
        "used_canonical": rep.used_canonical,
        "variant": rep.variant,
    }
    if rep.ok:
        return True, values, ""
    bad = ", ".join(c.check_id for c in rep.checks if not c.ok)
    return False, values, f"lift checks failed: {bad}"


def _check_correspondence(pair: MirrorPair, k: int):
    rep = verify_correspondence(pair, k)
    values = {"steps_taken": rep.steps_taken}
    if rep.ok:
        return True, values, ""
    first_bad = rep.per_step.index(False) + 1
    return False, values, f"projected orbits disagree at step {first_bad}"


def _make_random_instance(theorem: str, n: int, m: int | None, seed: int, bound: int):
    if theorem == "T002":
        return random_axis_aligned(n, seed, bound)
    if theorem == "T003":
        return random_axis_aligned_m(m, n, seed, bound)
    if theorem == "T005":
        return random_a1(n, seed, bound)
    if theorem == "T007":
        return random_axis_aligned_mirror(n, seed, bound)
    if theorem == "T008":
        return random_b(n, seed, bound)
    if theorem in ("L2-mating", "L2-lifting"):
        if m is not None:
            return random_axis_aligned_m(m, n, seed, bound)
        return random_axis_aligned(n, seed, bound)
    # L4-correspondence
    return random_mirror_pair(n, seed, bound)


def _run_check(theorem: str, instance, k: int | None):
    if theorem == "T002":
        return _check_T002(instance)
    if theorem == "T003":
        return _check_T003(instance)
    if theorem == "T005":
        return _check_T005(instance)
    if theorem == "T007":
        return _check_T007(instance)
    if theorem == "T008":
        return _check_T008(instance)
    if theorem == "L2-mating":
        return _check_mating(instance)
    if theorem == "L2-lifting":
        return _check_lifting(instance)
    n = instance.n
    return _check_correspondence(instance, k if k is not None else n - 1)


def _trial_worker(payload):
    """One seeded random trial; must stay module-level so it pickles."""
    theorem, index, seed, n, m, k, bound = payload
    try:
        instance = _make_random_instance(theorem, n, m, seed, bound)
        ok, values, reason = _run_check(theorem, instance, k)
    except DegeneracyError as exc:
        return index, False, f"degenerate: {exc}", {}
    return index, ok, reason, values


def _wrap_file_instance(theorem: str, inst):
    if theorem == "T002":
        if not isinstance(inst, LabeledPolygon2):
            raise UsageError("T002 needs a P2 instance")
        return AxisAligned2.from_polygon(inst)
    if theorem == "T003":
        if not isinstance(inst, PolygonM):
            raise UsageError("T003 needs a Pm instance")
        return AxisAlignedM.from_polygon(inst)
    if theorem == "T005":
        raise UsageError("T005 takes --a1, not an instance file")
    if theorem == "T007":
        if not isinstance(inst, MirrorPair):
            raise UsageError("T007 needs a P2-mirror instance")
        return AxisAlignedMirrorPair.canonicalize(inst)
    if theorem == "T008":
        if not isinstance(inst, PairState1D):
            raise UsageError("T008 needs a P1 instance")
        if any(x.is_finite for x in inst.X):
            raise UsageError("T008 starts from the all-infinity first row")
        return AxisAlignedPair1.of(inst.Y)
    if theorem in ("L2-mating", "L2-lifting"):
        if isinstance(inst, LabeledPolygon2):
            return AxisAligned2.from_polygon(inst)
        if isinstance(inst, PolygonM):
            return AxisAlignedM.from_polygon(inst)
        if isinstance(inst, MirrorPair):
            if theorem == "L2-lifting":
                return AxisAlignedMirrorPair.canonicalize(inst)
            return inst
        raise UsageError(f"{theorem} needs a polygon or mirror instance")
    # L4-correspondence
    if not isinstance(inst, MirrorPair):
        raise UsageError("L4-correspondence needs a P2-mirror instance")
    return inst


def cmd_verify(args) -> int:
    theorem = args.theorem
    sources = [s for s in (args.path, "--random" if args.random else None,
                           "--a1" if args.a1 else None) if s]
    if len(sources) != 1:
        raise UsageError(
            "give exactly one input: an instance file, --random, or --a1"
        )
    if args.a1 and theorem != "T005":
        raise UsageError("--a1 only applies to T005")

    if args.random:
        if args.n is None:
            raise UsageError("--random needs --n")
        if theorem == "T003" and args.m is None:
            raise UsageError("T003 --random needs --m")
        trials = args.trials
        if trials < 1:
            raise UsageError("--trials must be >= 1")
        payloads = [
            (theorem, i, trial_seed(args.seed, i), args.n, args.m, args.k, args.range)
            for i in range(trials)
        ]
        cap = _thread_cap()
        if cap > 1 and trials > 1:
            with ProcessPoolExecutor(max_workers=min(cap, trials)) as pool:
                results = list(pool.map(_trial_worker, payloads))
        else:
            results = [_trial_worker(p) for p in payloads]
        failures = [
            {"index": index, "reason": reason, "seed": payloads[index][2]}
            for index, ok, reason, _ in results
            if not ok
        ]
        report: dict[str, Any] = {
            "failures": failures,
            "passes": trials - len(failures),
            "theorem": theorem,
            "trials": trials,
        }
        if trials == 1 and results[0][3]:
            report["values"] = results[0][3]
        _print_json(report)
        if not failures:
            return 0
        # a drawn instance outside the generic locus is non-generic input,
        # not a counterexample; only a genuine violation is a failure
        if all(f["reason"].startswith("degenerate:") for f in failures):
            return 2
        return 1

    if args.a1:
        instance = row_from_values(_parse_value_list(args.a1))
    else:
        instance = _wrap_file_instance(theorem, load_instance(args.path))
    ok, values, reason = _run_check(theorem, instance, args.k)
    failures = [] if ok else [{"index": 0, "reason": reason, "seed": None}]
    report = {
        "failures": failures,
        "passes": 1 if ok else 0,
        "theorem": theorem,
        "trials": 1,
        "values": values,
    }
    _print_json(report)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# frieze


def cmd_frieze(args) -> int:
    row = row_from_values(_parse_value_list(args.a1))
    pattern = build_pattern(row)
    if args.json:
        rows = [[format_p1(p) for p in r] for r in pattern.rows]
        _print_json({"n": pattern.n, "rows": rows})
    else:
        print(render_staggered(pattern))
    return 0


# ---------------------------------------------------------------------------
# lift


def _wrap_for_lift(inst):
    if isinstance(inst, LabeledPolygon2):
        return AxisAligned2.from_polygon(inst)
    if isinstance(inst, PolygonM):
        return AxisAlignedM.from_polygon(inst)
    if isinstance(inst, MirrorPair):
        return AxisAlignedMirrorPair.canonicalize(inst)
    raise UsageError("lift needs a P2, Pm, or P2-mirror instance")


def cmd_lift(args) -> int:
    wrapped = _wrap_for_lift(load_instance(args.path))
    report = lift_report(wrapped, seed=args.seed, full=args.full)
    payload = {
        "check": LIFT_CHECKS[args.check],
        "checks": [
            {"detail": c.detail, "id": c.check_id, "ok": c.ok} for c in report.checks
        ],
        "d": report.d,
        "heights": [[format_rational(h) for h in row] for row in report.heights],
        "n": report.n,
        "normal_rank": report.normal_rank,
        "normals": [[format_rational(c) for c in v] for v in report.normals],
        "used_canonical": report.used_canonical,
        "variant": report.variant,
    }
    _print_json(payload)
    target = LIFT_CHECKS[args.check]
    ok = next(c.ok for c in report.checks if c.check_id == target)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> _Parser:
    parser = _Parser(
        prog="pentagram-lab",
        description="Exact pentagram-map laboratory: generate, iterate, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a seeded random instance file")
    gen.add_argument("--map", choices=GEN_MAPS, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--range", type=int, default=10,
                     help="coefficient bound for sampled rationals")
    gen.add_argument("--out", help="output path (stdout when omitted)")
    gen.set_defaults(func=cmd_gen)

    it = sub.add_parser("iterate", help="print map iterates of an instance")
    it.add_argument("path")
    it.add_argument("--steps", type=int, required=True)
    it.add_argument("--svg", help="also write an SVG of the orbit")
    it.set_defaults(func=cmd_iterate)

    ver = sub.add_parser("verify", help="check a claim on one or many instances")
    ver.add_argument("--theorem", choices=THEOREMS, required=True)
    ver.add_argument("path", nargs="?", help="instance file")
    ver.add_argument("--random", action="store_true")
    ver.add_argument("--trials", type=int, default=1)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--n", type=int)
    ver.add_argument("--m", type=int)
    ver.add_argument("--k", type=int, help="correspondence steps (default n-1)")
    ver.add_argument("--range", type=int, default=10)
    ver.add_argument("--a1", help="comma-separated first row (T005)")
    ver.set_defaults(func=cmd_verify)

    fr = sub.add_parser("frieze", help="build and print a frieze pattern")
    fr.add_argument("--a1", required=True, help="comma-separated first row")
    fr.add_argument("--json", action="store_true", help="machine-readable rows")
    fr.set_defaults(func=cmd_frieze)

    lift = sub.add_parser("lift", help="run lifting checks on an instance")
    lift.add_argument("--check", choices=sorted(LIFT_CHECKS), required=True)
    lift.add_argument("path")
    lift.add_argument("--seed", type=int, default=0)
    lift.add_argument("--full", action="store_true",
                      help="all mating windows instead of the default sample")
    lift.set_defaults(func=cmd_lift)

    return parser


def main(argv: Sequence[str]) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entrypoint(argv: Sequence[str] | None = None) -> int:
    try:
        return main(list(sys.argv[1:]) if argv is None else list(argv))
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 3
    except DegeneracyError as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return 2
    except PentagramError as exc:
        # dimension or variant mismatch: the file parsed but its content
        # cannot feed the requested check
        print(f"inapplicable input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(entrypoint())
