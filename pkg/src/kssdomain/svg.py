"""SVG figures for one- and two-parameter domains and chamber complexes.

The renderers read only the JSON documents produced by the CLI, so a figure
can always be regenerated from saved output.  Floating point appears here
and nowhere else: it is used for screen coordinates only.
"""

from __future__ import annotations

import math
from fractions import Fraction
from xml.sax.saxutils import escape

SIZE = 400
PAD = 40
PALETTE = ["#9ecae1", "#fdae6b", "#a1d99b", "#bcbddc", "#fc9272", "#d9d9d9", "#c7e9c0", "#fdd0a2"]


def _f(s) -> float:
    return float(Fraction(s))


def _xy(pt) -> tuple[float, float]:
    x = PAD + _f(pt[0]) * (SIZE - 2 * PAD)
    y = SIZE - PAD - _f(pt[1]) * (SIZE - 2 * PAD)
    return x, y


def _x1(v) -> float:
    return PAD + _f(v) * (SIZE - 2 * PAD)


def _header(height: int = SIZE) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{height}" viewBox="0 0 {SIZE} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]


def _ordered(vertices):
    """Vertices of a convex polygon in counterclockwise order."""
    pts = [(_f(v[0]), _f(v[1]), v) for v in vertices]
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    pts.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    return [p[2] for p in pts]


def _polygon(vertices, fill, stroke="#333", opacity=0.8) -> str:
    pts = " ".join("%.3f,%.3f" % _xy(v) for v in _ordered(vertices))
    return f'<polygon points="{pts}" fill="{fill}" fill-opacity="{opacity}" stroke="{stroke}" stroke-width="1"/>'


def _clip_line(normal, offset):
    """Endpoints of ``{<normal, x> = offset}`` inside the standard triangle."""
    a, b = Fraction(normal[0]), Fraction(normal[1])
    c = Fraction(offset)
    cands = []
    if b != 0:
        cands.append((Fraction(0), c / b))
    if a != 0:
        cands.append((c / a, Fraction(0)))
    if a != b:
        t = (c - b) / (a - b)  # on x1 + x2 = 1: (t, 1 - t)
        cands.append((t, 1 - t))
    inside = sorted({p for p in cands if p[0] >= 0 and p[1] >= 0 and p[0] + p[1] <= 1})
    if len(inside) < 2:
        return None
    return inside[0], inside[-1]


def _triangle() -> str:
    return _polygon([("0", "0"), ("1", "0"), ("0", "1")], "none", stroke="black", opacity=1)


def _walls(hyperplanes) -> list[str]:
    out = []
    for h in hyperplanes:
        seg = _clip_line(h["normal"], h["offset"])
        if seg is None:
            continue
        (x1, y1), (x2, y2) = _xy(seg[0]), _xy(seg[1])
        out.append(
            f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" stroke="#555" stroke-dasharray="4 3"/>'
        )
    return out


def _label(x, y, text, anchor="middle") -> str:
    return f'<text x="{x:.3f}" y="{y:.3f}" font-size="11" font-family="sans-serif" text-anchor="{anchor}">{escape(text)}</text>'


def render_domain(doc: dict) -> str:
    """Figure for a domain document (``domain`` command output)."""
    k = doc["ambient"]
    title = doc.get("model", "")
    if k == 1:
        return _interval(doc, title)
    if k != 2:
        raise ValueError("render_domain draws k = 1 or 2; slice higher k first")
    out = _header()
    out.append(_triangle())
    out += _walls(p["hyperplane"] for p in doc.get("facet_provenance", []))
    verts = doc["vertices"]
    if len(verts) >= 3:
        out.append(_polygon(verts, "#2ca25f", opacity=0.6))
    elif len(verts) == 2:
        (x1, y1), (x2, y2) = _xy(verts[0]), _xy(verts[1])
        out.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" stroke="#2ca25f" stroke-width="4"/>')
    for v in verts:
        x, y = _xy(v)
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3" fill="#006d2c"/>')
        out.append(_label(x + 6, y - 6, "(" + ", ".join(v) + ")", anchor="start"))
    out.append(_label(SIZE / 2, 20, f"{title}  mu = {doc.get('mu')}"))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _interval(doc: dict, title: str) -> str:
    height = 120
    y = 60
    out = _header(height)
    out.append(f'<line x1="{_x1(0):.3f}" y1="{y}" x2="{_x1(1):.3f}" y2="{y}" stroke="black"/>')
    for t in ("0", "1"):
        out.append(_label(_x1(t), y + 25, t))
    verts = [v[0] for v in doc["vertices"]]
    if verts:
        lo, hi = verts[0], verts[-1]
        out.append(f'<line x1="{_x1(lo):.3f}" y1="{y}" x2="{_x1(hi):.3f}" y2="{y}" stroke="#2ca25f" stroke-width="6"/>')
        for t in sorted({lo, hi}, key=Fraction):
            out.append(f'<circle cx="{_x1(t):.3f}" cy="{y}" r="4" fill="#006d2c"/>')
            out.append(_label(_x1(t), y - 12, t))
    out.append(_label(SIZE / 2, 20, f"{title}  Kss = {'[' + ', '.join(doc['interval']) + ']' if doc.get('interval') else 'empty'}"))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_chambers(doc: dict) -> str:
    """Figure for a chamber complex document (``chambers`` command output)."""
    k = doc["k"]
    signatures = sorted({tuple(sorted(c["statuses"].items())) for c in doc["chambers"]})
    color = {s: PALETTE[i % len(PALETTE)] for i, s in enumerate(signatures)}
    if k == 1:
        height = 140
        y = 60
        out = _header(height)
        for c in doc["chambers"]:
            lo, hi = c["vertices"][0][0], c["vertices"][-1][0]
            fill = color[tuple(sorted(c["statuses"].items()))]
            out.append(
                f'<rect x="{_x1(lo):.3f}" y="{y - 10}" width="{_x1(hi) - _x1(lo):.3f}" height="20" fill="{fill}" stroke="#333"/>'
            )
            out.append(_label((_x1(lo) + _x1(hi)) / 2, y + 30, ", ".join(f"{m}:{s}" for m, s in sorted(c["statuses"].items()))))
        for h in doc["walls"]:
            t = Fraction(h["offset"]) / Fraction(h["normal"][0])
            out.append(_label(_x1(t), y - 16, str(t)))
        out.append("</svg>")
        return "\n".join(out) + "\n"
    if k != 2:
        raise ValueError("render_chambers draws k = 1 or 2; slice higher k first")
    out = _header(SIZE + 20 * len(signatures))
    for c in doc["chambers"]:
        out.append(_polygon(c["vertices"], color[tuple(sorted(c["statuses"].items()))], opacity=0.7))
    out += _walls(doc["walls"])
    out.append(_triangle())
    for i, s in enumerate(signatures):
        y = SIZE + 20 * i + 5
        out.append(f'<rect x="{PAD}" y="{y}" width="12" height="12" fill="{color[s]}"/>')
        out.append(_label(PAD + 18, y + 10, ", ".join(f"{m}:{st}" for m, st in s), anchor="start"))
    out.append("</svg>")
    return "\n".join(out) + "\n"
