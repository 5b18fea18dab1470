"""Top-level embedding pipeline.

Decompose the polygon into convex pieces, walk the dual tree's Euler tour
connecting the per-piece structures, then merge: between every piece pair
carrying two adjacent connection edges, drop the ring edge joining the
connection endpoints in each piece with more than two points. The merged
edge set is accepted only if the independent validator confirms a single
simple Hamiltonian cycle; the pipeline never trusts its own bookkeeping.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .connection import (
    ConnectionContext,
    ConnectionEdge,
    ConnectionState,
    connect_with_skip,
)
from .instance import Instance
from .partition import Decomposition, DualTree, EulerTour, decompose, dual_tree, euler_tour
from .pieces import (
    PieceAssignment,
    PieceCycle,
    PieceKind,
    assign_points,
    simple_polygon_generation,
)
from .verification import validate_cycle


class FailureReason(enum.Enum):
    NO_CONNECTION_EDGE = "NoConnectionEdge"
    NO_SECOND_EDGE = "NoSecondEdge"
    SATURATION_DEAD_END = "SaturationDeadEnd"
    DISCONNECTED_OUTPUT = "DisconnectedOutput"


@dataclass
class EmbeddingResult:
    success: bool
    cycle: tuple[int, ...] | None = None
    reason: FailureReason | None = None
    reason_pair: tuple[int, int] | None = None
    decomposition: Decomposition | None = None
    tree: DualTree | None = None
    tour: EulerTour | None = None
    assignment: PieceAssignment | None = None
    piece_cycles: dict[int, PieceCycle] = field(default_factory=dict)
    connection_edges: list[ConnectionEdge] = field(default_factory=list)
    merged_edges: list[tuple[int, int]] = field(default_factory=list)
    warnings: tuple[str, ...] = ()

    def describe(self) -> str:
        if self.success:
            return " ".join(str(i + 1) for i in self.cycle)
        tag = self.reason.value
        if self.reason_pair is not None:
            tag += f"(pieces {self.reason_pair[0]},{self.reason_pair[1]})"
        return f"FAIL {tag}"


def merge(
    piece_cycles: dict[int, PieceCycle], state: ConnectionState
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Union the ring edges and connection edges into one graph.

    For each pair memoized with two edges, each flanking piece with more
    than two points loses the ring edge between its two connection
    endpoints, provided those endpoints are ring-adjacent (they are
    whenever the second edge came from the neighbor search; a reroute can
    leave non-adjacent endpoints, and then nothing is removed).
    Returns (edge list, removed ring edges).
    """
    ring_edges: set[frozenset[int]] = set()
    for cyc in piece_cycles.values():
        for u, v in cyc.ring_edges():
            ring_edges.add(frozenset((u, v)))
    removed: list[tuple[int, int]] = []
    for key, entry in state.memo.items():
        if not entry or len(entry) != 2:
            continue
        e1, e2 = entry
        for pid in key:
            cyc = piece_cycles[pid]
            if cyc.kind is not PieceKind.CYCLE:
                continue
            a = e1.endpoint_in(pid)
            b = e2.endpoint_in(pid)
            side = frozenset((a, b))
            if side in ring_edges:
                ring_edges.remove(side)
                removed.append((a, b))
    edges = [tuple(sorted(e)) for e in ring_edges]
    edges += [tuple(sorted(e.point_ids)) for e in state.accepted]
    return sorted(edges), removed


def _extract_cycle(n: int, edges: list[tuple[int, int]]) -> tuple[int, ...] | None:
    """Walk the merged graph; None unless it is a single n-cycle."""
    if len(edges) != n or len(set(edges)) != n:
        return None
    adjacency: dict[int, list[int]] = {i: [] for i in range(n)}
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    if any(len(nbrs) != 2 for nbrs in adjacency.values()):
        return None
    for nbrs in adjacency.values():
        nbrs.sort()
    order = [0, adjacency[0][0]]
    while len(order) < n:
        prev, cur = order[-2], order[-1]
        nxt = [w for w in adjacency[cur] if w != prev]
        if len(nxt) != 1:
            return None
        order.append(nxt[0])
        if order[-1] == 0:
            return None  # closed early: more than one component
    prev, cur = order[-2], order[-1]
    if 0 not in [w for w in adjacency[cur] if w != prev]:
        return None
    return tuple(order)


def _diagnose(state: ConnectionState) -> tuple[FailureReason, tuple[int, int] | None]:
    if state.reroute_dead_end:
        return FailureReason.SATURATION_DEAD_END, None
    failed = sorted(k for k, v in state.memo.items() if v is None)
    if failed:
        return FailureReason.NO_CONNECTION_EDGE, failed[0]
    partial = sorted(k for k, v in state.memo.items() if v is not None and len(v) == 1)
    if partial:
        return FailureReason.NO_SECOND_EDGE, partial[0]
    return FailureReason.DISCONNECTED_OUTPUT, None


def embed_cycle(inst: Instance) -> EmbeddingResult:
    """Run the full heuristic on a validated instance."""
    decomposition = decompose(inst.polygon)
    tree = dual_tree(decomposition)
    assignment = assign_points(decomposition, inst.points)
    warnings = inst.warnings + tuple(assignment.warnings)

    if tree.node_count == 1:
        cycle_structure = simple_polygon_generation(
            list(inst.points), list(range(inst.n)), piece=0
        )
        warnings += cycle_structure.warnings
        result = EmbeddingResult(
            success=False,
            decomposition=decomposition,
            tree=tree,
            assignment=assignment,
            piece_cycles={0: cycle_structure},
            merged_edges=[tuple(sorted(e)) for e in cycle_structure.ring_edges()],
            warnings=warnings,
        )
        report = validate_cycle(inst, cycle_structure.order)
        if report.valid:
            result.success = True
            result.cycle = _canonical_rotation(cycle_structure.order)
        else:
            result.reason = FailureReason.DISCONNECTED_OUTPUT
        return result

    piece_cycles: dict[int, PieceCycle] = {}
    for pid in assignment.nonempty_pieces():
        ids = assignment.by_piece[pid]
        cyc = simple_polygon_generation(
            [inst.points[i] for i in ids], ids, piece=pid
        )
        warnings += cyc.warnings
        piece_cycles[pid] = cyc

    lowest = min(range(inst.n), key=lambda i: (inst.points[i].x, inst.points[i].y))
    root = assignment.piece_of[lowest]
    tour = euler_tour(tree, root)

    ctx = ConnectionContext(polygon=inst.polygon, cycles=piece_cycles)
    state = ConnectionState()
    for j in range(len(tour.sequence) - 1):
        connect_with_skip(tour.sequence, j, state, ctx)

    merged, _removed = merge(piece_cycles, state)
    result = EmbeddingResult(
        success=False,
        decomposition=decomposition,
        tree=tree,
        tour=tour,
        assignment=assignment,
        piece_cycles=piece_cycles,
        connection_edges=list(state.accepted),
        merged_edges=merged,
        warnings=warnings,
    )
    order = _extract_cycle(inst.n, merged)
    if order is not None and validate_cycle(inst, order).valid:
        result.success = True
        result.cycle = _canonical_rotation(order)
        return result
    result.reason, result.reason_pair = _diagnose(state)
    return result


def _canonical_rotation(order: Sequence[int]) -> tuple[int, ...]:
    """Rotate to start at point 0 and orient toward its smaller neighbor."""
    order = list(order)
    i = order.index(0)
    order = order[i:] + order[:i]
    if len(order) > 2 and order[1] > order[-1]:
        order = [order[0]] + list(reversed(order[1:]))
    return tuple(order)
