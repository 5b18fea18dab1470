"""Problem instances: a simple polygon plus the interior point set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geometry import (
    Point,
    PointLocation,
    SimplePolygon,
    check_general_position,
    point_in_polygon,
)


class InstanceError(ValueError):
    pass


class DegenerateInstanceError(InstanceError):
    """Fewer than three points: no cycle exists to embed."""


class PointPlacementError(InstanceError):
    """A point is not strictly inside the polygon, or duplicates another."""


@dataclass(frozen=True)
class Instance:
    polygon: SimplePolygon
    points: tuple[Point, ...]
    name: str = ""
    seed: int | None = None
    warnings: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.polygon.vertices)


def make_instance(
    polygon: SimplePolygon,
    points: Sequence[Point],
    name: str = "",
    seed: int | None = None,
) -> Instance:
    """Validated constructor; general-position issues other than duplicates
    become warnings, not errors."""
    pts = tuple(points)
    if len(pts) < 3:
        raise DegenerateInstanceError(
            f"need at least 3 points for a cycle, got {len(pts)}"
        )
    for i, p in enumerate(pts):
        if point_in_polygon(p, polygon) is not PointLocation.INSIDE:
            raise PointPlacementError(
                f"point {i} at {p} is not strictly inside the polygon"
            )
    report = check_general_position(pts, polygon)
    if report.duplicates:
        i, j = report.duplicates[0]
        raise PointPlacementError(f"points {i} and {j} coincide")
    return Instance(
        polygon=polygon,
        points=pts,
        name=name,
        seed=seed,
        warnings=tuple(report.messages()),
    )
