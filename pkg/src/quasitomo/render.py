"""Deterministic SVG plots of point sets.

Exact points are placed in double precision and rounded to 1e-6 units, so
equal inputs give byte-identical files.  Drawing never feeds back into any
computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import CycNum
from .modelset import ModelSetSpec, star

__all__ = ["RenderSpec", "render_svg"]

_MARKERS = ("#d62728", "#1f77b4")


@dataclass
class RenderSpec:
    scale: float = 40.0
    point_radius: float = 0.08
    highlights: Sequence[Iterable[CycNum]] = field(default_factory=tuple)
    window: ModelSetSpec | None = None  # draw star images inside the window

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.point_radius <= 0:
            raise ValueError("point radius must be positive")
        if len(self.highlights) > 2:
            raise ValueError("at most two highlight sets")


def _r(x: float) -> str:
    v = round(x, 6)
    if v == 0:
        v = 0.0  # no negative zero
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return s if s != "-0" else "0"


def _xy(z: CycNum) -> tuple[float, float]:
    c = z.approx()
    return c.real, -c.imag  # SVG y grows downwards


def _key(w: CycNum):
    c = w.approx()
    return (round(c.real, 9), round(c.imag, 9), w.order, tuple(Fraction(x) for x in w.coeffs))


def _panel(points, highlights, r, title):
    out = ["<g>", f"<title>{title}</title>"]
    marked = [set(h) for h in highlights]
    for z in points:
        x, y = _xy(z)
        out.append(f'<circle cx="{_r(x)}" cy="{_r(y)}" r="{_r(r)}" fill="#bbbbbb"/>')
    for k, H in enumerate(marked):
        colour = _MARKERS[k]
        for z in sorted(H, key=_key):
            x, y = _xy(z)
            if k == 0:
                out.append(f'<circle cx="{_r(x)}" cy="{_r(y)}" r="{_r(1.6 * r)}" fill="{colour}"/>')
            else:
                s = 1.5 * r
                out.append(f'<rect x="{_r(x - s)}" y="{_r(y - s)}" width="{_r(2 * s)}" height="{_r(2 * s)}" '
                           f'fill="none" stroke="{colour}" stroke-width="{_r(r / 2)}"/>')
    out.append("</g>")
    return out


def render_svg(points: Iterable[CycNum], spec: RenderSpec | None = None) -> str:
    """SVG text for a point set with up to two highlighted subsets."""
    spec = spec or RenderSpec()
    pts = sorted(set(points), key=_key)
    every = list(pts)
    for h in spec.highlights:
        every.extend(h)
    if not every:
        every = [CycNum.rational(0)]
    xs = [_xy(z)[0] for z in every]
    ys = [_xy(z)[1] for z in every]
    pad = 4 * spec.point_radius
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    body = _panel(pts, spec.highlights, spec.point_radius, "physical space")
    if spec.window is not None and spec.window.window is not None:
        # star images and the window, fitted to the same height right of the patch
        stars = [star(z, spec.window) for z in pts]
        wv = list(spec.window.window.vertices)
        sx = [_xy(w)[0] for w in stars + wv]
        sy = [_xy(w)[1] for w in stars + wv]
        k = 0.9 * (y1 - y0) / max(max(sy) - min(sy), 1e-9)
        tx = x1 + pad - min(sx) * k
        ty = (y0 + y1) / 2 - (min(sy) + max(sy)) / 2 * k

        def place(w):
            x, y = _xy(w)
            return x * k + tx, y * k + ty

        poly = " ".join(f"{_r(x)},{_r(y)}" for x, y in map(place, wv))
        body.append("<g><title>window</title>")
        body.append(f'<polygon points="{poly}" fill="none" stroke="#444444" '
                    f'stroke-width="{_r(spec.point_radius / 3)}"/>')
        for x, y in map(place, stars):
            body.append(f'<circle cx="{_r(x)}" cy="{_r(y)}" r="{_r(spec.point_radius * 0.6)}" fill="#555555"/>')
        body.append("</g>")
        x1 = tx + max(sx) * k + pad
    w, h = (x1 - x0) * spec.scale, (y1 - y0) * spec.scale
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_r(w)}" height="{_r(h)}" '
            f'viewBox="{_r(x0)} {_r(y0)} {_r(x1 - x0)} {_r(y1 - y0)}">')
    return "\n".join([head, *body, "</svg>"]) + "\n"
