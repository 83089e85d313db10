"""SVG pictures of push configurations in the Poincare disk.

Points of the upper half-plane are sent to the disk by z -> (z - i)/(z + i).
Every geodesic (or geodesic segment) becomes one ``path`` element: a circular
arc orthogonal to the unit circle, or a straight chord through the centre.
Coordinates are rounded to fixed decimals so output is byte-stable.
"""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from flint import acb, arb

SIZE = 600
SCALE = 280.0
DIGITS = 4

STYLE = """
.disk{fill:none;stroke:#000;stroke-width:1.2}
.polygon{fill:none;stroke:#999;stroke-width:0.6}
.axis{fill:none;stroke:#c00;stroke-width:1.4}
.level{fill:none;stroke:#06c;stroke-width:1.0}
.crossing{fill:none;stroke:#393;stroke-width:0.8;stroke-dasharray:4 2}
.region{fill:none;stroke:#a60;stroke-width:0.8}
.fixed{fill:#c00}
.witness{fill:#333}
"""


def _num(x) -> complex:
    if isinstance(x, acb):
        return complex(float(x.real.mid()), float(x.imag.mid()))
    if isinstance(x, arb):
        return complex(float(x.mid()), 0.0)
    return complex(x)


def to_disk(z) -> complex:
    """Half-plane point or boundary value (None = infinity) to the disk."""
    if z is None:
        return 1 + 0j
    w = _num(z)
    return (w - 1j) / (w + 1j)


def _xy(w: complex) -> Tuple[float, float]:
    return (round(SIZE / 2 + SCALE * w.real, DIGITS), round(SIZE / 2 - SCALE * w.imag, DIGITS))


def _fmt(v: float) -> str:
    s = f"{v:.{DIGITS}f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _circle_through(p: complex, q: complex, r: complex) -> Optional[Tuple[complex, float]]:
    ax, ay, bx, by, cx, cy = p.real, p.imag, q.real, q.imag, r.real, r.imag
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) < 1e-12:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    c = complex(ux, uy)
    return c, abs(p - c)


def arc_path(p: complex, q: complex) -> str:
    """SVG path data for the hyperbolic geodesic arc from p to q (disk points)."""
    x1, y1 = _xy(p)
    x2, y2 = _xy(q)
    # a third point on the orthogonal circle: inverse of p (or of q) in the unit circle
    anchor = p if abs(p) > 1e-9 else q
    if abs(anchor) < 1e-9 or abs((p.conjugate() * q).imag) < 1e-9:
        return f"M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)}"
    inv = anchor / abs(anchor) ** 2 if abs(abs(anchor) - 1) > 1e-9 else None
    if inv is None:
        # both ends ideal: centre of the orthogonal circle
        c = (p + q) / (1 + (p * q.conjugate()).real)
        rad = abs(p - c)
    else:
        found = _circle_through(p, q, inv)
        if found is None:
            return f"M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)}"
        c, rad = found
    r = round(rad * SCALE, DIGITS)
    # flag chosen so the arc bows away from the disk centre
    cross = ((p - c).conjugate() * (q - c)).imag
    sweep = 0 if cross > 0 else 1
    return f"M {_fmt(x1)} {_fmt(y1)} A {_fmt(r)} {_fmt(r)} 0 0 {sweep} {_fmt(x2)} {_fmt(y2)}"


class Picture:
    def __init__(self, title: str = ""):
        self.title = title
        self.paths: List[Tuple[str, str]] = []
        self.dots: List[Tuple[str, complex, str]] = []

    def geodesic(self, e1, e2, kind: str):
        """Full geodesic between boundary values."""
        self.paths.append((kind, arc_path(to_disk(e1), to_disk(e2))))

    def segment(self, z1, z2, kind: str):
        self.paths.append((kind, arc_path(to_disk(z1), to_disk(z2))))

    def point(self, z, kind: str, label: str = ""):
        self.dots.append((kind, to_disk(z), label))

    def svg(self) -> str:
        out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
               f'viewBox="0 0 {SIZE} {SIZE}">']
        out.append(f"<title>{self.title}</title>")
        out.append(f"<style>{STYLE}</style>")
        c = _fmt(SIZE / 2)
        out.append(f'<circle class="disk" cx="{c}" cy="{c}" r="{_fmt(SCALE)}"/>')
        for kind, d in self.paths:
            out.append(f'<path class="{kind}" d="{d}"/>')
        for kind, w, label in self.dots:
            x, y = _xy(w)
            out.append(f'<circle class="{kind}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="3"/>')
            if label:
                out.append(f'<text x="{_fmt(x + 5)}" y="{_fmt(y - 5)}" font-size="12">{label}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"


def polygon_picture(pic: Picture, verts: Sequence[acb]):
    for j in range(len(verts)):
        pic.segment(verts[j], verts[(j + 1) % len(verts)], "polygon")


def render_push(pm, frame, orbit_regions: Sequence = (), title: str = "") -> str:
    """Disk, fundamental polygon, push axis with A and B, level boundaries,
    crossing lifts and the lifts bounding each orbit region's fingerprint."""
    from .curves import polygon_vertices

    pic = Picture(title)
    polygon_picture(pic, polygon_vertices(pm.grp))
    att, rep = pm.fixed()
    pic.geodesic(rep, att, "axis")
    pic.point(att, "fixed", "A")
    pic.point(rep, "fixed", "B")
    for j in sorted(frame.levels):
        r, a = frame.levels[j].lift.endpoints()
        pic.geodesic(r, a, "level")
    for lf in frame.crossings:
        r, a = lf.endpoints()
        pic.geodesic(r, a, "crossing")
    for reg in orbit_regions:
        for lid in sorted(reg.fp_lifts):
            r, a = reg.fp_lifts[lid].endpoints()
            pic.geodesic(r, a, "region")
        pic.point(reg.point(), "witness")
    return pic.svg()
