"""diffvis command line.

Exit codes: 0 success, 1 domain failure (invalid polygon, hole not verified,
oracle violation), 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .kernel import Point, Q

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _color(text: str, code: str, stream) -> str:
    if os.environ.get("NO_COLOR") is not None or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[{code}m{text}\033[0m"


def parse_point(text: str) -> Point:
    try:
        xs, ys = text.split(",")
        return Point(Q(xs), Q(ys))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse point {text!r}; expected x,y with rationals like 1/2,3") from exc


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_polygon(path: str, validate_only: bool = False):
    from .polygon import PolygonError, SimplePolygon

    data = _read_json(path)
    if validate_only:
        try:
            return SimplePolygon(tuple(Point(Q(str(x)), Q(str(y))) for x, y in data["vertices"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed polygon JSON in {path}: {exc}") from exc
    try:
        return SimplePolygon.from_json(data)
    except PolygonError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    from .polygon import validate

    rep = validate(_load_polygon(args.polygon, validate_only=True))
    _emit(_dump(rep.to_json()), args.output)
    for p in rep.problems():
        print(p, file=sys.stderr)
    return EXIT_OK if rep.valid else EXIT_FAIL


def cmd_vis(args) -> int:
    from .visibility import SourceOutside, visibility_from_point

    poly = _load_polygon(args.polygon)
    try:
        vp = visibility_from_point(poly, parse_point(args.source))
    except SourceOutside as exc:
        print(exc, file=sys.stderr)
        return EXIT_FAIL
    _emit(_dump(vp.region.to_json()), args.output)
    return EXIT_OK


def _diffuse(args):
    from .diffuse import compute_Vk

    poly = _load_polygon(args.polygon)
    return poly, compute_Vk(poly, parse_point(args.source), args.k)


def cmd_diffuse(args) -> int:
    from .visibility import SourceOutside

    try:
        _, res = _diffuse(args)
    except SourceOutside as exc:
        print(exc, file=sys.stderr)
        return EXIT_FAIL
    _emit(_dump(res.to_json(with_stages=args.stages)), args.output)
    return EXIT_OK


def cmd_holes(args) -> int:
    from .regions import holes_of
    from .visibility import SourceOutside

    try:
        poly, res = _diffuse(args)
    except SourceOutside as exc:
        print(exc, file=sys.stderr)
        return EXIT_FAIL
    hs = holes_of(poly, res.region)
    lines = [f"{len(hs)} hole{'' if len(hs) == 1 else 's'}"]
    if args.json:
        lines.append(json.dumps([h.to_json() for h in hs]))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_verify_hole(args) -> int:
    from .counterexample import VerificationFailed, build_counterexample, similarity, verify_theorem

    c = build_counterexample()
    if args.scale != "1" or args.translate != "0,0":
        t = parse_point(args.translate)
        c = c.transformed(similarity(Q(args.scale), t))
    try:
        cert = verify_theorem(c, blockers=args.blockers)
    except VerificationFailed as exc:
        msg = f"HOLE NOT VERIFIED: {exc}"
        if exc.witness is not None:
            msg += f" (witness {exc.witness!r})"
        print(_color(msg, "31", sys.stdout))
        return EXIT_FAIL
    lines = cert.summary()
    print(_color(lines[0], "32", sys.stdout))
    if args.verbose:
        print("\n".join(lines[1:]))
    if args.svg:
        from .render import render_svg

        svg = render_svg(c.polygon, cert.stages, c.label_points(), [cert.hole])
        _emit(svg, args.svg)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    from .oracle import compare_with_analytic
    from .visibility import SourceOutside

    poly = _load_polygon(args.polygon)
    try:
        rep = compare_with_analytic(poly, parse_point(args.source), args.k, m=args.m,
                                    delta=Q(args.delta) if args.delta else None)
    except SourceOutside as exc:
        print(exc, file=sys.stderr)
        return EXIT_FAIL
    _emit(rep.dumps() + "\n", args.output)
    status = "SOUND" if rep.sound else f"UNSOUND: {len(rep.soundness)} violation(s)"
    print(_color(status, "32" if rep.sound else "31", sys.stderr), file=sys.stderr)
    return EXIT_OK if rep.sound else EXIT_FAIL


def cmd_census(args) -> int:
    from .explorer import census_csv, hole_census, random_instances

    if args.n < 3 or args.count < 1 or args.k < 0:
        raise UsageError("need -n >= 3, --count >= 1 and -k >= 0")
    recs = list(hole_census(random_instances(args.n, args.count, args.seed), args.k, timing=args.timing))
    _emit(census_csv(recs, timing=args.timing), args.output)
    bad = [r for r in recs if r.error]
    for r in bad:
        print(f"seed {r.seed}: {r.error}", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_render(args) -> int:
    from .regions import Region, holes_of
    from .render import RenderSpec, render_svg

    poly = _load_polygon(args.polygon)
    stages, holes, labels = [], [], {}
    if args.region:
        data = _read_json(args.region)
        try:
            if "stages" in data:
                stages = [Region.from_json(s) for s in data["stages"]]
            else:
                stages = [Region.from_json(data)]
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed region JSON in {args.region}: {exc}") from exc
        holes = holes_of(poly, stages[-1])
    if args.labels:
        labels = _labels(poly, _read_json(args.labels))
    spec = RenderSpec(width=args.width, height=args.height)
    _emit(render_svg(poly, stages, labels, holes, spec), args.output)
    return EXIT_OK


def _labels(poly, data) -> dict:
    """Either a construction labels file or a plain {name: [x, y]} map."""
    try:
        if "vertices" in data and "aux" in data:
            from .counterexample import LabeledConstruction

            return LabeledConstruction.from_json(poly.to_json(), data).label_points()
        return {k: Point(Q(str(x)), Q(str(y))) for k, (x, y) in data.items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed labels JSON: {exc}") from exc


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="diffvis", description="Exact diffuse-reflection visibility in simple polygons.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_poly(name, help_, source=False, k=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("polygon", help="polygon JSON file")
        if source:
            p.add_argument("--source", required=True, help="light source as x,y (rationals allowed)")
        if k:
            p.add_argument("-k", type=int, required=True, help="number of diffuse reflections")
        p.add_argument("-o", "--output", help="write here instead of stdout")
        return p

    with_poly("validate", "check simplicity, orientation and general position").set_defaults(fn=cmd_validate)
    with_poly("vis", "visibility polygon V(s) as region JSON", source=True).set_defaults(fn=cmd_vis)
    p = with_poly("diffuse", "V_k(s) as region JSON", source=True, k=True)
    p.add_argument("--stages", action="store_true", help="include V_0 .. V_k")
    p.set_defaults(fn=cmd_diffuse)
    p = with_poly("holes", "count holes of V_k(s)", source=True, k=True)
    p.add_argument("--json", action="store_true", help="also print the hole faces")
    p.set_defaults(fn=cmd_holes)
    p = with_poly("oracle-check", "compare V_k(s) with the sampled oracle", source=True, k=True)
    p.add_argument("-m", type=int, default=64, help="samples per edge")
    p.add_argument("--delta", help="interior grid pitch (rational)")
    p.set_defaults(fn=cmd_oracle_check)
    p = with_poly("render", "draw polygon, regions and labels as SVG")
    p.add_argument("--region", help="region JSON (a region, or diffuse --stages output)")
    p.add_argument("--labels", help="labels JSON")
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=600)
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("verify-paper", help="rebuild the hole construction and verify the hole tqr in V_2(s)")
    p.add_argument("--scale", default="1", help="apply a uniform scaling first (rational)")
    p.add_argument("--translate", default="0,0", help="then translate by x,y")
    p.add_argument("--blockers", action="store_true", help="also run the sampled blocker diagnostics")
    p.add_argument("-v", "--verbose", action="store_true", help="print the full certificate")
    p.add_argument("--svg", help="write the figure to this file")
    p.set_defaults(fn=cmd_verify_hole)

    p = sub.add_parser("census", help="hole counts of V_0..V_k over random polygons, as CSV")
    p.add_argument("-n", type=int, required=True, help="vertices per polygon")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--timing", action="store_true", help="record wall-clock millis (breaks byte-identical output)")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_census)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"diffvis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
