"""Deterministic SVG figures of fans: lattice dots, solid rays from the
origin to the primitive generators, one dashed roof polyline, ray labels.

Rendering is a pure function of the fan and the style constants below, so
identical input yields byte-identical output. Figures are drawn in the input
cone's coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor

from .fans import Fan, minimal_resolution_fan
from .invariants import SingularityReport
from .model import NormalForm

#: all style constants in one place; tests rely on the dot radius and dash
STYLE = {
    "scale": 40,
    "margin": 1,
    "dot_radius": 2,
    "dash": "6,4",
    "ray_width": 1.5,
    "roof_width": 1.2,
    "font_size": 12,
    "dot_fill": "#555555",
    "stroke": "#000000",
}


def _fmt(v) -> str:
    """Exact decimal with at most three places, deterministic."""
    n = round(Fraction(v) * 1000)
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 1000)
    if frac == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}." + f"{frac:03d}".rstrip("0")


def fan_svg(fan: Fan, nf: NormalForm, scale: int | None = None) -> str:
    scale = STYLE["scale"] if scale is None else scale
    margin = STYLE["margin"]

    gens = [nf.to_input_ray(r).xy for r in fan.rays]
    inv = nf.inverse_transform()
    roof_pts: list[tuple[Fraction, Fraction]] = []
    if fan.cones:
        path = [fan.cones[0].roof.left] + [c.roof.right for c in fan.cones]
        for px, py in path:
            roof_pts.append(
                (inv[0][0] * px + inv[0][1] * py, inv[1][0] * px + inv[1][1] * py)
            )

    xs = [Fraction(0)] + [Fraction(x) for x, _ in gens] + [p[0] for p in roof_pts]
    ys = [Fraction(0)] + [Fraction(y) for _, y in gens] + [p[1] for p in roof_pts]
    x0, x1 = floor(min(xs)) - margin, ceil(max(xs)) + margin
    y0, y1 = floor(min(ys)) - margin, ceil(max(ys)) + margin
    width, height = (x1 - x0) * scale, (y1 - y0) * scale

    def sx(x) -> str:
        return _fmt((Fraction(x) - x0) * scale)

    def sy(y) -> str:
        return _fmt((y1 - Fraction(y)) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">'
    ]
    for y in range(y0, y1 + 1):
        for x in range(x0, x1 + 1):
            out.append(
                f'<circle cx="{sx(x)}" cy="{sy(y)}" r="{STYLE["dot_radius"]}" '
                f'fill="{STYLE["dot_fill"]}"/>'
            )
    for gx, gy in gens:
        out.append(
            f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(gx)}" y2="{sy(gy)}" '
            f'stroke="{STYLE["stroke"]}" stroke-width="{STYLE["ray_width"]}"/>'
        )
    if roof_pts:
        pts = " ".join(f"{sx(px)},{sy(py)}" for px, py in roof_pts)
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{STYLE["stroke"]}" '
            f'stroke-width="{STYLE["roof_width"]}" '
            f'stroke-dasharray="{STYLE["dash"]}"/>'
        )
    for i, (gx, gy) in enumerate(gens):
        lx = (Fraction(gx) - x0) * scale + Fraction(scale, 8)
        ly = (y1 - Fraction(gy)) * scale - Fraction(scale, 8)
        out.append(
            f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-family="sans-serif" '
            f'font-size="{STYLE["font_size"]}">v{i}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def chain_filename(chain) -> str:
    return "fan_" + "-".join(str(c) for c in chain.k) + ".svg"


def fan_figures(report: SingularityReport, scale: int | None = None) -> dict[str, str]:
    """One figure per P-resolution plus the minimal resolution."""
    nf = report.nf
    figures = {"fan_minimal.svg": fan_svg(minimal_resolution_fan(nf), nf, scale)}
    for comp in report.components:
        figures[chain_filename(comp.chain)] = fan_svg(comp.fan, nf, scale)
    return figures
