"""Assign points to convex pieces and build one straight-line structure
(cycle, edge, or single point) per nonempty piece."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .geometry import (
    Orientation,
    Point,
    PointLocation,
    Segment,
    orient,
    point_in_polygon,
)
from .partition import Decomposition, PartitionError


class PointOutsideAllPiecesError(PartitionError):
    """A point inside Q fell in no piece: the decomposition does not tile Q."""


class PieceKind(enum.Enum):
    EMPTY = "empty"
    SINGLE = "single"
    EDGE = "edge"
    CYCLE = "cycle"


@dataclass
class PieceAssignment:
    by_piece: dict[int, list[int]]  # piece id -> point ids, ascending
    piece_of: list[int]  # point id -> piece id
    warnings: list[str] = field(default_factory=list)

    def count(self, piece: int) -> int:
        return len(self.by_piece.get(piece, ()))

    def nonempty_pieces(self) -> list[int]:
        return sorted(p for p, ids in self.by_piece.items() if ids)


def assign_points(
    decomposition: Decomposition, points: Sequence[Point]
) -> PieceAssignment:
    """Partition points over pieces; each point lands in exactly one.

    A point sitting exactly on a shared diagonal (a general-position
    violation) goes to the flanking piece with the smaller id, with a
    warning recorded.
    """
    by_piece: dict[int, list[int]] = {
        i: [] for i in range(len(decomposition.pieces))
    }
    piece_of: list[int] = []
    warnings: list[str] = []
    for idx, p in enumerate(points):
        interior = None
        boundary: list[int] = []
        for pid, piece in enumerate(decomposition.pieces):
            loc = point_in_polygon(p, piece)
            if loc is PointLocation.INSIDE:
                interior = pid
                break
            if loc is PointLocation.BOUNDARY:
                boundary.append(pid)
        if interior is not None:
            chosen = interior
        elif boundary:
            chosen = min(boundary)
            warnings.append(
                f"point {idx} lies on a diagonal; assigned to piece {chosen}"
            )
        else:
            raise PointOutsideAllPiecesError(
                f"point {idx} at {p} is in no piece"
            )
        by_piece[chosen].append(idx)
        piece_of.append(chosen)
    return PieceAssignment(by_piece=by_piece, piece_of=piece_of, warnings=warnings)


@dataclass
class PieceCycle:
    """Embedded structure on one piece's points, in ring/path order."""

    piece: int
    order: tuple[int, ...]  # global point ids
    points: tuple[Point, ...]  # geometry, aligned with order
    kind: PieceKind
    warnings: tuple[str, ...] = ()

    def point_of(self, point_id: int) -> Point:
        return self.points[self.order.index(point_id)]

    def ring_segments(self) -> list[Segment]:
        if self.kind is PieceKind.CYCLE:
            k = len(self.points)
            return [
                Segment(self.points[i], self.points[(i + 1) % k])
                for i in range(k)
            ]
        if self.kind is PieceKind.EDGE:
            return [Segment(self.points[0], self.points[1])]
        return []

    def ring_edges(self) -> list[tuple[int, int]]:
        """Point-id pairs of the structure's edges."""
        if self.kind is PieceKind.CYCLE:
            k = len(self.order)
            return [(self.order[i], self.order[(i + 1) % k]) for i in range(k)]
        if self.kind is PieceKind.EDGE:
            return [(self.order[0], self.order[1])]
        return []

    def neighbors(self, point_id: int) -> tuple[int, ...]:
        """Adjacent vertices in the structure; a single point is its own
        neighbor (the connection search treats it as such)."""
        if self.kind is PieceKind.SINGLE:
            return (point_id,)
        idx = self.order.index(point_id)
        if self.kind is PieceKind.EDGE:
            return (self.order[1 - idx],)
        k = len(self.order)
        return (self.order[(idx + 1) % k], self.order[(idx - 1) % k])


def simple_polygon_generation(
    points: Sequence[Point],
    ids: Sequence[int] | None = None,
    piece: int = 0,
) -> PieceCycle:
    """Build a simple closed polyline through all the given points.

    For three or more points: take the leftmost and rightmost points, split
    the rest by the left-turn test against that line (strictly above goes to
    the upper chain, collinear counts as below), sort the lower chain by
    ascending x and the upper chain by descending x, and concatenate. Under
    general position the result never self-intersects.

    Ties on extreme x break toward smaller y and are reported as warnings,
    since they violate the general-position assumption.
    """
    pts = list(points)
    if ids is None:
        ids = list(range(len(pts)))
    ids = list(ids)
    n = len(pts)
    if n == 0:
        return PieceCycle(piece, (), (), PieceKind.EMPTY)
    if n == 1:
        return PieceCycle(piece, (ids[0],), (pts[0],), PieceKind.SINGLE)
    if n == 2:
        return PieceCycle(piece, tuple(ids), tuple(pts), PieceKind.EDGE)

    warnings: list[str] = []
    order = sorted(range(n), key=lambda i: (pts[i].x, pts[i].y))
    left = order[0]
    right = max(range(n), key=lambda i: (pts[i].x, -pts[i].y))
    if any(pts[i].x == pts[left].x for i in range(n) if i != left):
        warnings.append("leftmost x is tied; broke toward smaller y")
    if any(pts[i].x == pts[right].x for i in range(n) if i != right):
        warnings.append("rightmost x is tied; broke toward smaller y")

    lo = pts[left]
    hi = pts[right]
    below: list[int] = []
    above: list[int] = []
    for i in range(n):
        if i in (left, right):
            continue
        if orient(lo, hi, pts[i]) is Orientation.LEFT_TURN:
            above.append(i)
        else:
            below.append(i)
    below.sort(key=lambda i: (pts[i].x, pts[i].y))
    above.sort(key=lambda i: (-pts[i].x, -pts[i].y))
    ring = [left] + below + [right] + above
    return PieceCycle(
        piece,
        tuple(ids[i] for i in ring),
        tuple(pts[i] for i in ring),
        PieceKind.CYCLE,
        tuple(warnings),
    )
