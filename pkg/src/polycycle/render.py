"""SVG scenes of instances and embedding results.

Stroke conventions follow the paper-style figures this tool mirrors:
polygon boundary black, essential partition diagonals red, connection
edges blue, cycle edges green, input points as dots. Element order is
deterministic (boundary, diagonals, connections, cycle, points).
"""

from __future__ import annotations

from fractions import Fraction

from .instance import Instance
from .pipeline import EmbeddingResult

_STYLE = {
    "boundary": ("#000000", 1.0),
    "diagonal": ("#cc2222", 0.6),
    "connection": ("#2244cc", 0.6),
    "cycle": ("#22aa44", 0.8),
}


def _bbox(inst: Instance):
    xs = [p.x for p in inst.polygon.vertices] + [p.x for p in inst.points]
    ys = [p.y for p in inst.polygon.vertices] + [p.y for p in inst.points]
    return min(xs), min(ys), max(xs), max(ys)


def render_svg(
    inst: Instance,
    result: EmbeddingResult | None = None,
    cycle: tuple[int, ...] | None = None,
    size: int = 640,
) -> str:
    """Compose the SVG document; y is flipped so the scene reads y-up."""
    lo_x, lo_y, hi_x, hi_y = _bbox(inst)
    span = max(hi_x - lo_x, hi_y - lo_y, Fraction(1))
    margin = span / 20
    lo_x, lo_y = lo_x - margin, lo_y - margin
    hi_x, hi_y = hi_x + margin, hi_y + margin
    width = float(hi_x - lo_x)
    height = float(hi_y - lo_y)
    scale = size / max(width, height)

    def sx(x) -> float:
        return round(float(x - lo_x) * scale, 3)

    def sy(y) -> float:
        return round((height - float(y - lo_y)) * scale, 3)

    stroke_w = max(size / 320.0, 1.0)
    dot_r = max(size / 160.0, 2.0)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{round(width * scale)}" height="{round(height * scale)}" '
        f'viewBox="0 0 {round(width * scale)} {round(height * scale)}">'
    ]

    def line(cls: str, a, b) -> None:
        color, w = _STYLE[cls]
        parts.append(
            f'<line class="{cls}" x1="{sx(a.x)}" y1="{sy(a.y)}" '
            f'x2="{sx(b.x)}" y2="{sy(b.y)}" stroke="{color}" '
            f'stroke-width="{round(stroke_w * w, 3)}"/>'
        )

    ring = inst.polygon.vertices
    pts_attr = " ".join(f"{sx(p.x)},{sy(p.y)}" for p in ring)
    parts.append(
        f'<polygon class="boundary" points="{pts_attr}" fill="none" '
        f'stroke="{_STYLE["boundary"][0]}" stroke-width="{round(stroke_w, 3)}"/>'
    )
    if result is not None:
        if result.decomposition is not None:
            for d in result.decomposition.diagonals:
                line("diagonal", d.a, d.b)
        for e in result.connection_edges:
            line("connection", e.segment.a, e.segment.b)
        if cycle is None and result.success:
            cycle = result.cycle
        if cycle is None and not result.success:
            # failure view: whatever piece structure exists, minus nothing
            for u, v in result.merged_edges:
                if (u, v) not in {
                    tuple(sorted(e.point_ids)) for e in result.connection_edges
                }:
                    line("cycle", inst.points[u], inst.points[v])
    if cycle is not None:
        n = len(cycle)
        for i in range(n):
            a = inst.points[cycle[i]]
            b = inst.points[cycle[(i + 1) % n]]
            line("cycle", a, b)
    for i, p in enumerate(inst.points):
        parts.append(
            f'<circle class="point" cx="{sx(p.x)}" cy="{sy(p.y)}" '
            f'r="{round(dot_r, 3)}" fill="#222222"><title>{i + 1}</title></circle>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
