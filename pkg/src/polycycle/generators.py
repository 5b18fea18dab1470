"""Random simple polygons and interior point sets for the benchmark matrix.

All randomness flows through the pinned SplitMix64 generator, so a config
reproduces identical instances on any platform. Polygons are integer-lattice
vertex rings untangled by 2-opt uncrossing; vertex sets with collinear
triples are resampled up front, which makes every untangling step a proper
crossing removal and guarantees termination (total length strictly drops).
Interior points are lattice points dithered to pairwise-distinct x by small
rational nudges, kept in general position by exact incremental checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .geometry import (
    Orientation,
    Point,
    PointLocation,
    Segment,
    SimplePolygon,
    orient,
    point_in_polygon,
    segments_conflict,
    validate_simple_polygon,
)
from .instance import Instance, make_instance
from .rng import SplitMix64, derive_seed

X_DITHER_DENOMINATOR = 97  # nudges are k/97 with k < 97, so x stays unique


class GenerationExhaustedError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenConfig:
    m: int  # polygon side count
    n: int  # interior point count
    seed: int
    box: int | None = None  # bounding box extent; defaults to 10*m
    attempts: int = 100

    def extent(self) -> int:
        return self.box if self.box is not None else 10 * self.m


def _sample_vertex_set(rng: SplitMix64, m: int, extent: int, attempts: int):
    """Distinct lattice points with no collinear triple, or None."""
    for _ in range(attempts):
        pts: list[tuple[int, int]] = []
        tries = 0
        while len(pts) < m and tries < attempts * (m + 1):
            tries += 1
            cand = (rng.randint(0, extent), rng.randint(0, extent))
            if cand in pts:
                continue
            if any(
                (b[0] - a[0]) * (cand[1] - a[1])
                == (b[1] - a[1]) * (cand[0] - a[0])
                for a, b in combinations(pts, 2)
            ):
                continue
            pts.append(cand)
        if len(pts) == m:
            return pts
    return None


def _uncross(ring: list[Point], max_sweeps: int) -> bool:
    """2-opt untangling: reverse the span between the first crossing pair
    until no two sides conflict. True when simple."""
    k = len(ring)
    for _ in range(max_sweeps):
        crossing = None
        for i in range(k):
            si = Segment(ring[i], ring[(i + 1) % k])
            for j in range(i + 1, k):
                adjacent = (j - i == 1) or (i == 0 and j == k - 1)
                sj = Segment(ring[j], ring[(j + 1) % k])
                if segments_conflict(si, sj, shared_endpoints_allowed=adjacent):
                    crossing = (i, j)
                    break
            if crossing:
                break
        if crossing is None:
            return True
        i, j = crossing
        ring[i + 1 : j + 1] = reversed(ring[i + 1 : j + 1])
    return False


def random_simple_polygon(cfg: GenConfig) -> SimplePolygon:
    """Random simple polygon with cfg.m integer-lattice vertices."""
    if cfg.m < 3:
        raise ValueError("polygon needs at least 3 sides")
    rng = SplitMix64(cfg.seed)
    extent = cfg.extent()
    for _ in range(cfg.attempts):
        raw = _sample_vertex_set(rng, cfg.m, extent, cfg.attempts)
        if raw is None:
            continue
        ring = [Point(x, y) for x, y in raw]
        if not _uncross(ring, max_sweeps=50 * cfg.m * cfg.m):
            continue
        try:
            return validate_simple_polygon(ring)
        except ValueError:
            continue
    raise GenerationExhaustedError(
        f"no simple {cfg.m}-gon after {cfg.attempts} attempts (seed {cfg.seed})"
    )


def random_convex_polygon(cfg: GenConfig) -> SimplePolygon:
    """Convex polygon as the strict hull of random lattice points; the
    vertex count is the hull size, at most cfg.m."""
    rng = SplitMix64(cfg.seed)
    extent = cfg.extent()
    for _ in range(cfg.attempts):
        sample = max(cfg.m, 3) + 5
        raw = _sample_vertex_set(rng, sample, extent, cfg.attempts)
        if raw is None:
            continue
        hull = _convex_hull([Point(x, y) for x, y in raw])
        if len(hull) < 3:
            continue
        poly = validate_simple_polygon(hull)
        if len(poly.vertices) > cfg.m:
            # drop hull vertices until the requested bound holds
            verts = list(poly.vertices)
            while len(verts) > cfg.m:
                verts.pop(rng.below(len(verts)))
            try:
                poly = validate_simple_polygon(verts)
            except ValueError:
                continue
        if poly.is_convex():
            return poly
    raise GenerationExhaustedError(
        f"no convex polygon after {cfg.attempts} attempts (seed {cfg.seed})"
    )


def _convex_hull(points: list[Point]) -> list[Point]:
    """Monotone chain, strict turns only (collinear hull points dropped)."""
    pts = sorted(set(points), key=lambda p: (p.x, p.y))
    if len(pts) < 3:
        return pts

    def build(seq):
        chain: list[Point] = []
        for p in seq:
            while (
                len(chain) >= 2
                and orient(chain[-2], chain[-1], p) is not Orientation.LEFT_TURN
            ):
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(reversed(pts))
    return lower[:-1] + upper[:-1]


def random_interior_points(polygon: SimplePolygon, cfg: GenConfig) -> list[Point]:
    """cfg.n points strictly inside the polygon, in general position.

    Lattice candidates are dithered to x + k/97 (k = 1, 2, ...) so all x
    coordinates are distinct; candidates collinear with any accepted pair,
    or not strictly interior after dithering, are rejected.
    """
    rng = SplitMix64(derive_seed(cfg.seed, 0xA11CE))
    xs = [p.x for p in polygon.vertices]
    ys = [p.y for p in polygon.vertices]
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    span_x = int(hi_x - lo_x) + 1
    span_y = int(hi_y - lo_y) + 1
    accepted: list[Point] = []
    budget = cfg.attempts * (cfg.n + 1) * 10
    while len(accepted) < cfg.n and budget > 0:
        budget -= 1
        x = lo_x + rng.below(span_x)
        y = lo_y + rng.below(span_y)
        nudge = Fraction(len(accepted) + 1, X_DITHER_DENOMINATOR)
        cand = Point(Fraction(x) + nudge, Fraction(y))
        if point_in_polygon(cand, polygon) is not PointLocation.INSIDE:
            continue
        if any(
            orient(a, b, cand) is Orientation.COLLINEAR
            for a, b in combinations(accepted, 2)
        ):
            continue
        accepted.append(cand)
    if len(accepted) < cfg.n:
        raise GenerationExhaustedError(
            f"placed {len(accepted)}/{cfg.n} points (seed {cfg.seed})"
        )
    return accepted


def random_instance(cfg: GenConfig, name: str = "") -> Instance:
    polygon = random_simple_polygon(cfg)
    points = random_interior_points(polygon, cfg)
    return make_instance(polygon, points, name=name, seed=cfg.seed)
