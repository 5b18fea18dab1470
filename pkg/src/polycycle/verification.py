"""Independent validity checking and a brute-force existence oracle.

Deliberately shares only the exact geometry layer with the embedding
pipeline: no decomposition or connection machinery is reused, so a passing
report is evidence about the output rather than about the pipeline's own
bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .geometry import Segment, segment_conflicts_polygon, segments_conflict
from .instance import Instance


class InstanceTooLargeError(ValueError):
    pass


@dataclass
class ValidityReport:
    is_hamiltonian: bool
    is_simple: bool
    inside_polygon: bool
    violations: list[tuple[str, object]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return (
            self.is_hamiltonian
            and self.is_simple
            and self.inside_polygon
            and not self.violations
        )


def validate_cycle(inst: Instance, cycle: Sequence[int]) -> ValidityReport:
    """Exact check that `cycle` is a straight-line simple Hamiltonian cycle
    on the instance's points that avoids the polygon boundary."""
    n = inst.n
    violations: list[tuple[str, object]] = []
    is_hamiltonian = sorted(cycle) == list(range(n))
    if not is_hamiltonian:
        violations.append(("not_a_permutation", tuple(cycle)))
        return ValidityReport(False, False, False, violations)

    edges = [
        Segment(inst.points[cycle[i]], inst.points[cycle[(i + 1) % n]])
        for i in range(n)
    ]
    is_simple = True
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = (j - i == 1) or (i == 0 and j == n - 1)
            if segments_conflict(
                edges[i], edges[j], shared_endpoints_allowed=adjacent
            ):
                is_simple = False
                violations.append(("edge_crossing", (i, j)))
    inside = True
    for i, e in enumerate(edges):
        if segment_conflicts_polygon(e, inst.polygon):
            inside = False
            violations.append(("boundary_contact", i))
    return ValidityReport(is_hamiltonian, is_simple, inside, violations)


def brute_force_exists(
    inst: Instance, cap: int = 9
) -> tuple[bool, tuple[int, ...] | None]:
    """Exhaustively search for any valid cycle; witness is the
    lexicographically smallest one in canonical orientation.

    Enumeration fixes point 0 first and halves by reflection (the second
    entry is kept smaller than the last); partial orders are pruned the
    moment an edge conflicts. Only feasible for small n, hence the cap.
    """
    n = inst.n
    if n > cap:
        raise InstanceTooLargeError(f"n = {n} exceeds oracle cap {cap}")
    pts = inst.points
    polygon = inst.polygon

    blocked = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bad = segment_conflicts_polygon(Segment(pts[i], pts[j]), polygon)
            blocked[i][j] = blocked[j][i] = bad

    order = [0]
    used = [False] * n
    used[0] = True
    edges: list[Segment] = []

    def edge_ok(seg: Segment, closing: bool) -> bool:
        m = len(edges)
        for k, prev in enumerate(edges):
            adjacent = k == m - 1 or (closing and k == 0)
            if segments_conflict(seg, prev, shared_endpoints_allowed=adjacent):
                return False
        return True

    def search() -> tuple[int, ...] | None:
        if len(order) == n:
            if n > 2 and order[1] > order[-1]:
                return None  # reflection canon
            if blocked[order[-1]][0]:
                return None
            closing = Segment(pts[order[-1]], pts[0])
            if not edge_ok(closing, closing=True):
                return None
            return tuple(order)
        for nxt in range(1, n):
            if used[nxt] or blocked[order[-1]][nxt]:
                continue
            seg = Segment(pts[order[-1]], pts[nxt])
            if not edge_ok(seg, closing=False):
                continue
            order.append(nxt)
            used[nxt] = True
            edges.append(seg)
            found = search()
            edges.pop()
            used[nxt] = False
            order.pop()
            if found is not None:
                return found
        return None

    witness = search()
    if witness is None:
        return False, None
    report = validate_cycle(inst, witness)
    if not report.valid:
        raise AssertionError(
            f"oracle produced an invalid witness: {report.violations}"
        )
    return True, witness
