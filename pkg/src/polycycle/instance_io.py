"""Line-oriented instance text format.

    # optional comments; "# name: ..." and "# seed: ..." round-trip metadata
    polygon <m>
    <x> <y>          (m lines, CCW)
    points <n>
    <x> <y>          (n lines)

Coordinates are exact: integers, finite decimals, or a/b fractions. The
fraction form is what keeps parse -> serialize -> parse the identity on
dithered rational coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .geometry import Point, validate_simple_polygon
from .instance import Instance, InstanceError, make_instance


class ParseError(InstanceError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _fmt(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def serialize_instance(inst: Instance) -> str:
    lines = []
    if inst.name:
        lines.append(f"# name: {inst.name}")
    if inst.seed is not None:
        lines.append(f"# seed: {inst.seed}")
    lines.append(f"polygon {len(inst.polygon.vertices)}")
    for p in inst.polygon.vertices:
        lines.append(f"{_fmt(p.x)} {_fmt(p.y)}")
    lines.append(f"points {inst.n}")
    for p in inst.points:
        lines.append(f"{_fmt(p.x)} {_fmt(p.y)}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> Instance:
    name = ""
    seed: int | None = None
    rows: list[tuple[int, str]] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("name:"):
                name = body[5:].strip()
            elif body.startswith("seed:"):
                try:
                    seed = int(body[5:].strip())
                except ValueError:
                    pass
            continue
        if line:
            rows.append((no, line))
    cursor = 0

    def take(expect: str) -> tuple[int, list[str]]:
        nonlocal cursor
        if cursor >= len(rows):
            raise ParseError(rows[-1][0] if rows else 0, f"expected '{expect}'")
        no, line = rows[cursor]
        cursor += 1
        return no, line.split()

    def coord(token: str, no: int) -> Fraction:
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise ParseError(no, f"bad coordinate {token!r}") from None

    no, head = take("polygon <m>")
    if len(head) != 2 or head[0] != "polygon":
        raise ParseError(no, "expected 'polygon <m>'")
    try:
        m = int(head[1])
    except ValueError:
        raise ParseError(no, f"bad vertex count {head[1]!r}") from None
    ring = []
    for _ in range(m):
        no, toks = take("vertex coordinates")
        if len(toks) != 2:
            raise ParseError(no, "expected 'x y'")
        ring.append(Point(coord(toks[0], no), coord(toks[1], no)))
    no, head = take("points <n>")
    if len(head) != 2 or head[0] != "points":
        raise ParseError(no, "expected 'points <n>'")
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(no, f"bad point count {head[1]!r}") from None
    pts = []
    for _ in range(n):
        no, toks = take("point coordinates")
        if len(toks) != 2:
            raise ParseError(no, "expected 'x y'")
        pts.append(Point(coord(toks[0], no), coord(toks[1], no)))
    if cursor != len(rows):
        raise ParseError(rows[cursor][0], "trailing content")
    polygon = validate_simple_polygon(ring)
    return make_instance(polygon, pts, name=name, seed=seed)


def load_instance(path: str | Path) -> Instance:
    return parse_instance(Path(path).read_text())


def save_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(serialize_instance(inst))


def serialize_result(cycle: tuple[int, ...] | None, failure: str | None) -> str:
    """Result file: 1-based ids on one line, or FAIL <reason>."""
    if cycle is not None:
        return " ".join(str(i + 1) for i in cycle) + "\n"
    return f"FAIL {failure}\n"


def parse_cycle(text: str) -> tuple[int, ...]:
    """Read a cycle result file back into 0-based point ids."""
    line = text.strip()
    if not line or line.startswith("FAIL"):
        raise InstanceError(f"no cycle in result: {line!r}")
    return tuple(int(tok) - 1 for tok in line.split())
