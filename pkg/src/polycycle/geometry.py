"""Exact 2-D primitives: points, segments, simple polygons and their predicates.

Every coordinate is a rational number (`fractions.Fraction`) and every
predicate is decided from exact integer/rational signs. Floats are rejected
at construction so that near-degenerate contact cases (segments grazing a
reflex corner, points on a diagonal) are classified identically on every
platform and every run.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

Coord = Union[int, str, Fraction]


class PolygonError(ValueError):
    """A vertex ring cannot form a simple polygon."""


class DuplicateVertexError(PolygonError):
    pass


class CollinearVerticesError(PolygonError):
    """Three consecutive ring vertices are collinear."""


class SelfIntersectionError(PolygonError):
    pass


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError(
            "float coordinates are not exact; pass int, str or Fraction"
        )
    return Fraction(value)


@dataclass(frozen=True)
class Point:
    """Immutable exact rational point. Hashable, usable as dict key."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _coerce(self.x))
        object.__setattr__(self, "y", _coerce(self.y))

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"degenerate segment at {self.a}")

    def __repr__(self):
        return f"Segment({self.a}, {self.b})"


class Orientation(enum.Enum):
    LEFT_TURN = 1
    COLLINEAR = 0
    RIGHT_TURN = -1


class PointLocation(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def cross(p: Point, q: Point, r: Point) -> Fraction:
    """Exact signed cross product (q - p) x (r - p)."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def orient(p: Point, q: Point, r: Point) -> Orientation:
    c = cross(p, q, r)
    if c > 0:
        return Orientation.LEFT_TURN
    if c < 0:
        return Orientation.RIGHT_TURN
    return Orientation.COLLINEAR


def sq_dist(p: Point, q: Point) -> Fraction:
    """Squared Euclidean distance; exact, and order-equivalent to distance."""
    return (p.x - q.x) ** 2 + (p.y - q.y) ** 2


def point_on_segment(p: Point, s: Segment) -> bool:
    """True iff p lies on the closed segment s (endpoints included)."""
    if orient(s.a, s.b, p) is not Orientation.COLLINEAR:
        return False
    return (
        min(s.a.x, s.b.x) <= p.x <= max(s.a.x, s.b.x)
        and min(s.a.y, s.b.y) <= p.y <= max(s.a.y, s.b.y)
    )


def segments_conflict(
    s1: Segment, s2: Segment, shared_endpoints_allowed: bool = False
) -> bool:
    """Decide whether two closed segments share a forbidden point.

    Any shared point is a conflict, with one exception: when
    ``shared_endpoints_allowed`` is set, contact at a single point that is an
    endpoint of *both* segments is tolerated. Collinear overlap of positive
    length is always a conflict, shared endpoints or not.
    """
    d1 = cross(s1.a, s1.b, s2.a)
    d2 = cross(s1.a, s1.b, s2.b)
    d3 = cross(s2.a, s2.b, s1.a)
    d4 = cross(s2.a, s2.b, s1.b)
    if ((d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0) and (
        (d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0
    ):
        return True  # proper crossing at an interior point of both

    contacts = set()
    for p in (s2.a, s2.b):
        if point_on_segment(p, s1):
            contacts.add(p)
    for p in (s1.a, s1.b):
        if point_on_segment(p, s2):
            contacts.add(p)
    if not contacts:
        return False
    if len(contacts) > 1:
        return True  # collinear overlap of positive length
    (touch,) = contacts
    if (
        shared_endpoints_allowed
        and touch in (s1.a, s1.b)
        and touch in (s2.a, s2.b)
    ):
        return False
    return True


@dataclass(frozen=True)
class SimplePolygon:
    """CCW vertex ring of a simple polygon.

    Construct through :func:`validate_simple_polygon`; the raw constructor
    performs no checks and is meant for internal use on rings already known
    to be valid.
    """

    vertices: tuple[Point, ...]

    def __len__(self):
        return len(self.vertices)

    def sides(self) -> list[Segment]:
        k = len(self.vertices)
        return [
            Segment(self.vertices[i], self.vertices[(i + 1) % k])
            for i in range(k)
        ]

    def signed_area2(self) -> Fraction:
        """Twice the signed area (positive for CCW rings)."""
        total = Fraction(0)
        v = self.vertices
        for i in range(len(v)):
            j = (i + 1) % len(v)
            total += v[i].x * v[j].y - v[j].x * v[i].y
        return total

    def area(self) -> Fraction:
        return abs(self.signed_area2()) / 2

    def is_convex(self) -> bool:
        """Strict convexity: every interior turn is a left turn."""
        v = self.vertices
        k = len(v)
        return all(
            orient(v[i - 1], v[i], v[(i + 1) % k]) is Orientation.LEFT_TURN
            for i in range(k)
        )

    def reflex_vertex_indices(self) -> list[int]:
        v = self.vertices
        k = len(v)
        return [
            i
            for i in range(k)
            if orient(v[i - 1], v[i], v[(i + 1) % k]) is Orientation.RIGHT_TURN
        ]


def segment_conflicts_polygon(
    s: Segment, polygon: SimplePolygon, incident_vertices: Iterable[int] = ()
) -> bool:
    """True iff s meets the polygon boundary anywhere but an incident vertex.

    ``incident_vertices`` lists indices of polygon vertices that are endpoints
    of s; contact exactly at those vertices is tolerated. Grazing any other
    vertex, touching a side interior, or crossing a side is a conflict.
    """
    allowed = {polygon.vertices[i] for i in incident_vertices}
    for side in polygon.sides():
        d1 = cross(s.a, s.b, side.a)
        d2 = cross(s.a, s.b, side.b)
        d3 = cross(side.a, side.b, s.a)
        d4 = cross(side.a, side.b, s.b)
        if ((d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0) and (
            (d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0
        ):
            return True
        for p in (side.a, side.b):
            if point_on_segment(p, s) and p not in allowed:
                return True
        for p in (s.a, s.b):
            if point_on_segment(p, side) and p not in allowed:
                return True
    return False


def point_in_polygon(p: Point, polygon: SimplePolygon) -> PointLocation:
    """Exact inside/boundary/outside classification by ray crossing."""
    for side in polygon.sides():
        if point_on_segment(p, side):
            return PointLocation.BOUNDARY
    inside = False
    v = polygon.vertices
    k = len(v)
    for i in range(k):
        a, b = v[i], v[(i + 1) % k]
        if (a.y > p.y) != (b.y > p.y):
            # exact x of the side at height p.y; p is not on the side here
            x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x_at > p.x:
                inside = not inside
    return PointLocation.INSIDE if inside else PointLocation.OUTSIDE


def validate_simple_polygon(ring: Sequence[Point]) -> SimplePolygon:
    """Canonicalise a vertex ring into a CCW SimplePolygon.

    Clockwise rings are reversed, not rejected. Raises DuplicateVertexError,
    CollinearVerticesError or SelfIntersectionError otherwise.
    """
    pts = tuple(ring)
    k = len(pts)
    if k < 3:
        raise PolygonError(f"need at least 3 vertices, got {k}")
    seen: dict[Point, int] = {}
    for i, p in enumerate(pts):
        if p in seen:
            raise DuplicateVertexError(
                f"vertices {seen[p]} and {i} coincide at {p}"
            )
        seen[p] = i
    for i in range(k):
        if (
            orient(pts[i - 1], pts[i], pts[(i + 1) % k])
            is Orientation.COLLINEAR
        ):
            raise CollinearVerticesError(
                f"vertices {(i - 1) % k}, {i}, {(i + 1) % k} are collinear"
            )
    sides = [Segment(pts[i], pts[(i + 1) % k]) for i in range(k)]
    for i, j in combinations(range(k), 2):
        adjacent = (j - i == 1) or (i == 0 and j == k - 1)
        if segments_conflict(sides[i], sides[j], shared_endpoints_allowed=adjacent):
            raise SelfIntersectionError(f"sides {i} and {j} intersect")
    poly = SimplePolygon(pts)
    if poly.signed_area2() < 0:
        poly = SimplePolygon(tuple(reversed(pts)))
    return poly


@dataclass
class GeneralPositionReport:
    """Degeneracies that break the embedding heuristic's assumptions."""

    collinear_triples: list[tuple[int, int, int]] = field(default_factory=list)
    on_boundary: list[int] = field(default_factory=list)
    duplicates: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.collinear_triples or self.on_boundary or self.duplicates)

    def messages(self) -> list[str]:
        out = [f"duplicate points {i} and {j}" for i, j in self.duplicates]
        out += [f"point {i} on polygon boundary" for i in self.on_boundary]
        out += [
            f"collinear points {i}, {j}, {k}"
            for i, j, k in self.collinear_triples
        ]
        return out


def check_general_position(
    points: Sequence[Point], polygon: SimplePolygon | None = None
) -> GeneralPositionReport:
    """Report duplicate points, points on the polygon boundary and collinear
    point triples. An empty report means general position holds."""
    report = GeneralPositionReport()
    for i, j in combinations(range(len(points)), 2):
        if points[i] == points[j]:
            report.duplicates.append((i, j))
    if polygon is not None:
        sides = polygon.sides()
        for i, p in enumerate(points):
            if any(point_on_segment(p, s) for s in sides):
                report.on_boundary.append(i)
    for i, j, k in combinations(range(len(points)), 3):
        if orient(points[i], points[j], points[k]) is Orientation.COLLINEAR:
            report.collinear_triples.append((i, j, k))
    return report
