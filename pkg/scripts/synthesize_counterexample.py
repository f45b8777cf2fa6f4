"""Derive the hole construction from a handful of free choices and write the fixtures.

Free choices: the chamber (s, a, b, v, w), the top wall xy, the thorn c, the
lip i, the overhang j, the pocket behind f, and the lines kd and gh.  Every
other labelled point is forced by an intersection or collinearity.

    python scripts/synthesize_counterexample.py [--check]
"""
import argparse
import json
import sys
from pathlib import Path

from diffvis.counterexample import LabeledConstruction, constraint_check, exit_point
from diffvis.kernel import P, Q, format_q, lerp, line_intersection
from diffvis.polygon import SimplePolygon, locate_on_boundary, validate

DATA = Path(__file__).resolve().parents[1] / "src" / "diffvis" / "data"


def synthesize() -> LabeledConstruction:
    s = P(4, -34)
    pts = {
        # chamber below the doorway ab; the spike v hides the floor to its right
        "a": P(0, 0), "A1": P(0, -40), "A2": P(12, -40), "v": P(12, -32), "P2": P(20, -40),
        "P3": P(100, -40), "w": P(100, -10), "e": P(100, 0), "b": P(10, 0),
        # thorn c, the hole room behind it, lip i and overhang j
        "c": P(44, 35), "c2": P(50, 5), "H1": P(130, 5), "H2": P(130, 90), "i": P(60, 46), "j": P(26, 66),
        # top wall lit straight from s (s, a, y and s, b, x collinear)
        "x": P(40, 170), "y": P(-20, 170),
        # pocket behind f, shadowed from xy
        "f": P(-70, 98), "F1": P(-70, 120), "F2": P(-180, 120), "F3": P(-180, 20), "Q1": P(-160, 30),
        # recess under d holding k
        "d": P(-46, 18), "L1": P(-136, 24), "L2": P(-136, -45), "L3": P(-112, -40),
    }
    k = P(-136, 0)
    z = P(-56, -20)
    # the ledge tip h sits 5/8 of the way from x to z, and g on line xf beyond f;
    # the ledge line gh then passes just under i
    pts["h"] = lerp(pts["x"], z, Q(5) / 8)
    pts["g"] = lerp(pts["x"], pts["f"], Q(23) / 15)
    gh0, gh1 = pts["g"], pts["h"]
    t = line_intersection(pts["f"], pts["i"], gh0, gh1)
    q = line_intersection(pts["f"], pts["i"], k, pts["d"])
    r = line_intersection(k, pts["d"], gh0, gh1)

    order = "a A1 A2 v P2 P3 w e b c c2 H1 H2 i j x y f F1 F2 F3 Q1 g h d L1 L2 L3".split()
    poly = SimplePolygon(tuple(pts[n] for n in order))
    rep = validate(poly)
    if not rep.valid:
        raise SystemExit("synthesized polygon is invalid: " + "; ".join(rep.problems()))
    aux_points = {
        "k": k,
        "z": z,
        "y'": exit_point(poly, pts["v"], pts["a"]),
        "c'": exit_point(poly, pts["a"], pts["c"]),
        "f'": exit_point(poly, pts["x"], pts["f"]),
    }
    aux = {name: locate_on_boundary(poly, p) for name, p in aux_points.items()}
    vertices = {n: order.index(n) for n in "abcdefghijvwxy"}
    return LabeledConstruction(poly, s, vertices, aux, (t, q, r))


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare with the committed fixtures instead of writing")
    args = ap.parse_args(argv)
    c = synthesize()
    report = constraint_check(c)
    for line in report.lines():
        print(line)
    poly_txt, labels_txt = dumps(c.polygon.to_json()), dumps(c.labels_json())
    if args.check:
        same = (DATA / "counterexample.json").read_text() == poly_txt and (
            DATA / "counterexample_labels.json").read_text() == labels_txt
        print("fixtures match" if same else "fixtures differ")
        return 0 if same and report.all_pass else 1
    DATA.mkdir(parents=True, exist_ok=True)
    (DATA / "counterexample.json").write_text(poly_txt)
    (DATA / "counterexample_labels.json").write_text(labels_txt)
    print("wrote", DATA, "triangle", [[format_q(v) for v in p] for p in c.triangle])
    return 0 if report.all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
