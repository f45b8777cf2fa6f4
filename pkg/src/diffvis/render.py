"""Deterministic SVG figures: polygon, stage regions, holes and labelled points."""
from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .kernel import Q
from .polygon import SimplePolygon

DEFAULT_FILLS = ("#9ecae1", "#a1d99b", "#fdd0a2", "#dadaeb", "#fcbba1")


@dataclass(frozen=True)
class RenderSpec:
    width: int = 800
    height: int = 600
    margin: int = 20
    polygon_stroke: str = "#000000"
    stroke_width: str = "1"
    stage_fills: tuple = DEFAULT_FILLS
    stage_opacity: str = "0.45"
    hole_stroke: str = "#d62728"
    label_color: str = "#54278f"
    font_size: int = 11
    point_radius: str = "2"


def num(v) -> str:
    """Decimal with 12 significant digits; the only place rationals become floats."""
    s = format(float(v), ".12g")
    return "0" if s == "-0" else s


class _Frame:
    """Fit-to-bbox map from polygon coordinates to pixels (y axis flipped)."""

    def __init__(self, poly: SimplePolygon, spec: RenderSpec):
        x0, y0, x1, y1 = poly.bbox
        w, h = x1 - x0, y1 - y0
        avail_w, avail_h = Q(spec.width - 2 * spec.margin), Q(spec.height - 2 * spec.margin)
        self.k = min(avail_w / w, avail_h / h)
        self.ox = spec.margin + (avail_w - w * self.k) / 2 - x0 * self.k
        self.oy = spec.margin + (avail_h - h * self.k) / 2 + y1 * self.k

    def __call__(self, p) -> str:
        return f"{num(self.ox + Q(p[0]) * self.k)},{num(self.oy - Q(p[1]) * self.k)}"


def _ring_d(frame, ring) -> str:
    return "M" + " L".join(frame(p) for p in ring) + " Z"


def render_svg(poly: SimplePolygon, stages=(), labels=None, holes=(), spec: RenderSpec | None = None) -> str:
    """SVG document as a string.

    ``stages`` is a sequence of Regions drawn bottom-up, ``holes`` a sequence of
    Faces drawn hatched, ``labels`` a mapping name -> point.
    """
    spec = spec or RenderSpec()
    fr = _Frame(poly, spec)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
    ]
    if holes:
        out.append(
            '<defs><pattern id="hatch" width="6" height="6" patternUnits="userSpaceOnUse" '
            f'patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="6" stroke="{spec.hole_stroke}" '
            'stroke-width="1.5"/></pattern></defs>'
        )
    for i, region in enumerate(stages):
        fill = spec.stage_fills[i % len(spec.stage_fills)]
        out.append(f'<g id="stage-{i}" fill="{fill}" fill-opacity="{spec.stage_opacity}" stroke="none">')
        for face in region.faces:
            d = " ".join(_ring_d(fr, ring) for ring in face.rings())
            out.append(f'<path fill-rule="evenodd" d="{d}"/>')
        out.append("</g>")
    if holes:
        out.append(f'<g id="holes" fill="url(#hatch)" stroke="{spec.hole_stroke}" stroke-width="{spec.stroke_width}">')
        for face in holes:
            out.append(f'<path d="{_ring_d(fr, face.outer)}"/>')
        out.append("</g>")
    out.append(
        f'<path id="polygon" fill="none" stroke="{spec.polygon_stroke}" stroke-width="{spec.stroke_width}" '
        f'd="{_ring_d(fr, poly.vertices)}"/>'
    )
    if labels:
        out.append(f'<g id="labels" fill="{spec.label_color}" font-family="sans-serif" font-size="{spec.font_size}">')
        for name in sorted(labels):
            x, y = fr(labels[name]).split(",")
            out.append(f'<circle cx="{x}" cy="{y}" r="{spec.point_radius}"/>')
            out.append(f'<text x="{x}" y="{y}" dx="3" dy="-3">{escape(name)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
