"""Plot a polygon with its diffuse-visibility stages to PNG (matplotlib, decimal display only).

usage: python scripts/plot_stages.py poly.json SX,SY K out.png [labels.json]
"""
import json
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import PathPatch
from matplotlib.path import Path

from diffvis.diffuse import compute_Vk
from diffvis.kernel import Q
from diffvis.polygon import SimplePolygon
from diffvis.regions import holes_of


def region_patch(region, **kw):
    verts, codes = [], []
    for face in region.faces:
        for ring in face.rings():
            pts = [(float(x), float(y)) for x, y in ring]
            verts += pts + [pts[0]]
            codes += [Path.MOVETO] + [Path.LINETO] * (len(pts) - 1) + [Path.CLOSEPOLY]
    return PathPatch(Path(verts, codes), **kw)


def plot(poly, s, k, out, labels=None, extra_lines=()):
    res = compute_Vk(poly, s, k)
    fig, ax = plt.subplots(figsize=(12, 12))
    colors = ["#f6d55c", "#3caea3", "#20639b", "#ed553b"]
    for i in reversed(range(len(res.stages))):
        ax.add_patch(region_patch(res.stages[i], facecolor=colors[i % 4], alpha=0.35, edgecolor="none"))
    for h in holes_of(poly, res.region):
        ax.add_patch(region_patch(type(res.region)((h,)), facecolor="none", edgecolor="red", hatch="///", lw=1.5))
    xs = [float(v.x) for v in poly.vertices] + [float(poly.vertices[0].x)]
    ys = [float(v.y) for v in poly.vertices] + [float(poly.vertices[0].y)]
    ax.plot(xs, ys, "k-", lw=1)
    for i, v in enumerate(poly.vertices):
        ax.annotate(str(i), (float(v.x), float(v.y)), fontsize=7, color="gray")
    ax.plot([float(s[0])], [float(s[1])], "r*", ms=12)
    if labels:
        for name, p in labels.items():
            ax.plot([float(p[0])], [float(p[1])], "ko", ms=3)
            ax.annotate(name, (float(p[0]), float(p[1])), fontsize=12, color="purple", xytext=(4, 4), textcoords="offset points")
    for p, q in extra_lines:
        ax.plot([float(p[0]), float(q[0])], [float(p[1]), float(q[1])], "m--", lw=0.7)
    ax.set_aspect("equal")
    fig.savefig(out, dpi=80, bbox_inches="tight")
    return res


if __name__ == "__main__":
    poly = SimplePolygon.from_json(json.load(open(sys.argv[1])))
    s = tuple(Q(v) for v in sys.argv[2].split(","))
    plot(poly, s, int(sys.argv[3]), sys.argv[4])
