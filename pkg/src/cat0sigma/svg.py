"""Deterministic SVG pictures of character-sphere subsets, k <= 3.

S^0 is two marked points, S^1 a circle with member arcs drawn thick, S^2
an orthographic projection with the boundary great circle of each
hemisphere.  Output is byte-identical across runs for identical input: no
timestamps, fixed float formatting, sorted iteration everywhere.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional

from .errors import UnsupportedDimension
from .sphere import MODE_FINITE_COMPLEMENT, PolyhedralSet, SpherePoint

SIZE = 400
CENTER = SIZE / 2
RADIUS = 160.0

STYLE = (
    "circle.outline{fill:none;stroke:#444;stroke-width:1.5}"
    "path.member,line.member{stroke:#0a7d33;stroke-width:7;fill:none;stroke-linecap:round}"
    "circle.pt{fill:#b3122e}circle.pt-back{fill:none;stroke:#b3122e;stroke-width:1.5}"
    "circle.in{fill:#0a7d33}circle.out{fill:#bbb}"
    "path.gc{fill:none;stroke:#b3122e;stroke-width:1}"
    "line.axis{stroke:#ccc;stroke-width:1}"
)


def _fmt(x: float) -> str:
    out = f"{x:.6f}"
    return "0.000000" if out == "-0.000000" else out


def _header(lines: list[str]) -> None:
    lines.append('<?xml version="1.0" encoding="UTF-8"?>')
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">'
    )
    lines.append(f"<style>{STYLE}</style>")


def _xy(x: float, y: float) -> tuple[float, float]:
    return CENTER + RADIUS * x, CENTER - RADIUS * y


def _unit(vec) -> list[float]:
    n = math.sqrt(sum(float(c) * float(c) for c in vec))
    return [float(c) / n for c in vec]


def _clause_member(clauses, direction) -> bool:
    # Drawing-only membership on float directions.
    for clause in clauses:
        if all(sum(float(n) * d for n, d in zip(h.normal.primitive, direction)) > 1e-12 for h in clause):
            return True
    return False


def render_sphere_svg(obj, points: Optional[Iterable[SpherePoint]] = None) -> str:
    """Render a PolyhedralSet and/or a list of sphere points to SVG text."""
    if isinstance(obj, PolyhedralSet):
        k = obj.k
        pset = obj
        pts = list(points or [])
        if pset.mode == MODE_FINITE_COMPLEMENT:
            pts = sorted(pset.complement_points, key=lambda p: p.primitive)
    else:
        pts = sorted(obj, key=lambda p: p.primitive)
        if not pts:
            raise UnsupportedDimension("empty point list has no dimension")
        k = pts[0].k
        pset = None
    if k == 1:
        return _render_s0(pset, pts)
    if k == 2:
        return _render_s1(pset, pts)
    if k == 3:
        return _render_s2(pset, pts)
    raise UnsupportedDimension(f"can draw S^0, S^1, S^2 only, not k = {k}")


def _render_s0(pset, pts) -> str:
    lines: list[str] = []
    _header(lines)
    y = CENTER
    lines.append(
        f'<line class="axis" x1="{_fmt(CENTER - RADIUS)}" y1="{_fmt(y)}" '
        f'x2="{_fmt(CENTER + RADIUS)}" y2="{_fmt(y)}"/>'
    )
    marked = {p.primitive[0] > 0 for p in pts}
    for sign in (-1, +1):
        cx = CENTER + sign * RADIUS
        if pset is not None:
            cls = "in" if pset.contains(SpherePoint((sign,))) else "out"
        else:
            cls = "pt" if (sign > 0) in marked else "out"
        lines.append(f'<circle class="{cls}" cx="{_fmt(cx)}" cy="{_fmt(y)}" r="9"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _render_s1(pset, pts) -> str:
    lines: list[str] = []
    _header(lines)
    lines.append(f'<circle class="outline" cx="{_fmt(CENTER)}" cy="{_fmt(CENTER)}" r="{_fmt(RADIUS)}"/>')
    if pset is not None and pset.mode != MODE_FINITE_COMPLEMENT:
        segments = 720
        run: list[tuple[float, float]] = []
        for i in range(segments + 1):
            theta = 2.0 * math.pi * i / segments
            d = (math.cos(theta), math.sin(theta))
            if _clause_member(pset.clauses, d):
                run.append(_xy(*d))
            else:
                _flush_run(lines, run)
                run = []
        _flush_run(lines, run)
    for p in pts:
        x, y = _xy(*_unit(p.primitive))
        lines.append(f'<circle class="pt" cx="{_fmt(x)}" cy="{_fmt(y)}" r="6"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _flush_run(lines: list[str], run: list) -> None:
    if len(run) < 2:
        return
    d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in run)
    lines.append(f'<path class="member" d="{d}"/>')


def _render_s2(pset, pts) -> str:
    lines: list[str] = []
    _header(lines)
    lines.append(f'<circle class="outline" cx="{_fmt(CENTER)}" cy="{_fmt(CENTER)}" r="{_fmt(RADIUS)}"/>')
    if pset is not None and pset.mode != MODE_FINITE_COMPLEMENT:
        normals = sorted(
            {h.normal.primitive for clause in pset.clauses for h in clause}
        )
        for normal in normals:
            lines.append(_great_circle_path(normal))
    for p in pts:
        x, y, z = _unit(p.primitive)
        px, py = _xy(x, y)
        cls = "pt" if z >= 0 else "pt-back"
        lines.append(f'<circle class="{cls}" cx="{_fmt(px)}" cy="{_fmt(py)}" r="6"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _great_circle_path(normal) -> str:
    """Orthographic projection (drop z) of the great circle normal to the
    given vector."""
    n = _unit(normal)
    # Orthonormal pair spanning the plane orthogonal to n.
    pick = (1.0, 0.0, 0.0) if abs(n[0]) < 0.9 else (0.0, 1.0, 0.0)
    u = [pick[i] - n[i] * sum(p * q for p, q in zip(pick, n)) for i in range(3)]
    u = _unit(u)
    v = [
        n[1] * u[2] - n[2] * u[1],
        n[2] * u[0] - n[0] * u[2],
        n[0] * u[1] - n[1] * u[0],
    ]
    coords = []
    segments = 180
    for i in range(segments + 1):
        theta = 2.0 * math.pi * i / segments
        x = math.cos(theta) * u[0] + math.sin(theta) * v[0]
        y = math.cos(theta) * u[1] + math.sin(theta) * v[1]
        coords.append(_xy(x, y))
    d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in coords)
    return f'<path class="gc" d="{d}"/>'


def emit_sphere_svg(obj, path, points: Optional[Iterable[SpherePoint]] = None) -> None:
    text = render_sphere_svg(obj, points)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
