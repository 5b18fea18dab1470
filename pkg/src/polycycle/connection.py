"""Connection-edge search between the embedded structures of two pieces.

The search is stateful: results are memoized per unordered piece pair, a
failed pair is never retried, and accepted edges become obstacles for every
later candidate. A candidate segment is admissible when it conflicts with
nothing already placed: not the enclosing polygon, not either piece's
embedded structure, and not any accepted connection edge. Endpoint sharing
is only legal at a one-point piece, whose lone point must eventually carry
both of its connection edges; elsewhere each point carries at most one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .geometry import (
    Segment,
    SimplePolygon,
    segment_conflicts_polygon,
    segments_conflict,
    sq_dist,
)
from .pieces import PieceCycle, PieceKind


@dataclass(frozen=True)
class ConnectionEdge:
    piece_a: int
    point_a: int
    piece_b: int
    point_b: int
    segment: Segment

    def endpoint_in(self, piece: int) -> int:
        if piece == self.piece_a:
            return self.point_a
        if piece == self.piece_b:
            return self.point_b
        raise KeyError(f"edge does not touch piece {piece}")

    @property
    def point_ids(self) -> tuple[int, int]:
        return (self.point_a, self.point_b)


def pair_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


@dataclass
class ConnectionContext:
    """Immutable obstacles: the polygon and the per-piece structures."""

    polygon: SimplePolygon
    cycles: dict[int, PieceCycle]

    def kind(self, piece: int) -> PieceKind:
        return self.cycles[piece].kind

    def point(self, piece: int, point_id: int):
        return self.cycles[piece].point_of(point_id)


@dataclass
class ConnectionState:
    """Memo of per-pair outcomes plus the live accepted edges.

    memo values: absent = not tried, None = failed (the search's -1, never
    retried), else the list of one or two accepted edges for the pair.
    """

    memo: dict[tuple[int, int], list[ConnectionEdge] | None] = field(
        default_factory=dict
    )
    accepted: list[ConnectionEdge] = field(default_factory=list)
    incidence: dict[int, int] = field(default_factory=dict)
    reroute_dead_end: bool = False
    events: list[str] = field(default_factory=list)

    def count(self, point_id: int) -> int:
        return self.incidence.get(point_id, 0)

    def _cap(self, piece: int, ctx: ConnectionContext) -> int:
        return 2 if ctx.kind(piece) is PieceKind.SINGLE else 1

    def has_capacity(
        self, piece: int, point_id: int, ctx: ConnectionContext, slack: int = 0
    ) -> bool:
        return self.count(point_id) - slack < self._cap(piece, ctx)

    def add(self, key: tuple[int, int], edge: ConnectionEdge) -> None:
        entry = self.memo.setdefault(key, [])
        assert entry is not None and len(entry) < 2
        entry.append(edge)
        self.accepted.append(edge)
        for pid in edge.point_ids:
            self.incidence[pid] = self.incidence.get(pid, 0) + 1

    def remove(self, key: tuple[int, int], edge: ConnectionEdge) -> None:
        self.memo[key].remove(edge)
        self.accepted.remove(edge)
        for pid in edge.point_ids:
            self.incidence[pid] -= 1


def _shared_points(
    u: int, v: int, edge: ConnectionEdge
) -> tuple[int, ...]:
    return tuple(p for p in (u, v) if p in edge.point_ids)


def segment_admissible(
    seg: Segment,
    u: int,
    v: int,
    piece_u: int,
    piece_v: int,
    state: ConnectionState,
    ctx: ConnectionContext,
    ignore: Iterable[ConnectionEdge] = (),
    extra: Sequence[ConnectionEdge] = (),
) -> bool:
    """Full conflict test of a candidate connection segment u-v.

    ``ignore`` drops accepted edges from the obstacle set (the swap fallback
    tests candidates with the old edge removed); ``extra`` adds tentative
    new edges not yet accepted.
    """
    skip = set(id(e) for e in ignore)
    single_pieces = {
        p: (ctx.kind(p) is PieceKind.SINGLE) for p in (piece_u, piece_v)
    }
    obstacles = [e for e in state.accepted if id(e) not in skip]
    obstacles.extend(extra)
    for e in obstacles:
        shared = _shared_points(u, v, e)
        if shared:
            for p in shared:
                piece = piece_u if p == u else piece_v
                if not single_pieces[piece]:
                    return False
            if segments_conflict(seg, e.segment, shared_endpoints_allowed=True):
                return False
        else:
            if segments_conflict(seg, e.segment, shared_endpoints_allowed=False):
                return False
    for piece in (piece_u, piece_v):
        for ring_seg in ctx.cycles[piece].ring_segments():
            if segments_conflict(seg, ring_seg, shared_endpoints_allowed=True):
                return False
    if segment_conflicts_polygon(seg, ctx.polygon):
        return False
    return True


def _sorted_candidates(
    p1: PieceCycle, p2: PieceCycle
) -> list[tuple[int, int]]:
    """All vertex pairs between two pieces, nearest first; distance ties
    break on the (p1 point id, p2 point id) pair."""
    ranked = []
    for i, u in enumerate(p1.order):
        for j, v in enumerate(p2.order):
            ranked.append((sq_dist(p1.points[i], p2.points[j]), u, v))
    ranked.sort()
    return [(u, v) for _, u, v in ranked]


def first_connection(
    p1: PieceCycle,
    p2: PieceCycle,
    state: ConnectionState,
    ctx: ConnectionContext,
) -> ConnectionEdge | None:
    """Initial search for a pair: scan all vertex pairs in increasing
    distance order, accept the first admissible segment, memoize failure
    otherwise."""
    key = pair_key(p1.piece, p2.piece)
    assert key not in state.memo
    for u, v in _sorted_candidates(p1, p2):
        if not state.has_capacity(p1.piece, u, ctx):
            continue
        if not state.has_capacity(p2.piece, v, ctx):
            continue
        seg = Segment(p1.point_of(u), p2.point_of(v))
        if segment_admissible(seg, u, v, p1.piece, p2.piece, state, ctx):
            edge = ConnectionEdge(p1.piece, u, p2.piece, v, seg)
            state.add(key, edge)
            return edge
    state.memo[key] = None
    return None


def second_connection(
    p1: PieceCycle,
    p2: PieceCycle,
    state: ConnectionState,
    ctx: ConnectionContext,
) -> list[ConnectionEdge] | None:
    """Try to add the pair's second edge next to the stored one.

    Candidates join structure-neighbors of the stored edge's endpoints (a
    one-point piece contributes its point itself), at most four segments.
    If none is admissible, the swap fallback re-pairs each candidate's
    endpoints with the stored edge's; when both swapped segments are clear
    the old edge is replaced by the pair. Returns the accepted new edges,
    or None when the memo is left unchanged.
    """
    key = pair_key(p1.piece, p2.piece)
    entry = state.memo.get(key)
    assert entry is not None and len(entry) == 1
    old = entry[0]
    u = old.endpoint_in(p1.piece)
    v = old.endpoint_in(p2.piece)
    candidates = [
        (a, b)
        for a in ctx.cycles[p1.piece].neighbors(u)
        for b in ctx.cycles[p2.piece].neighbors(v)
    ]
    for a, b in candidates:
        if not state.has_capacity(p1.piece, a, ctx):
            continue
        if not state.has_capacity(p2.piece, b, ctx):
            continue
        seg = Segment(p1.point_of(a), p2.point_of(b))
        if segment_admissible(seg, a, b, p1.piece, p2.piece, state, ctx):
            edge = ConnectionEdge(p1.piece, a, p2.piece, b, seg)
            state.add(key, edge)
            return [edge]
    # swap fallback: re-pair (a, b) and (u, v) into (u, b) and (a, v)
    for a, b in candidates:
        # net incidence once the old edge leaves and both new ones land
        delta: dict[int, int] = {}
        for pid in (u, v):
            delta[pid] = delta.get(pid, 0) - 1
        for pid in (u, b, a, v):
            delta[pid] = delta.get(pid, 0) + 1
        fits = True
        for pid, d in delta.items():
            piece = p1.piece if pid in (u, a) else p2.piece
            if state.count(pid) + d > state._cap(piece, ctx):
                fits = False
                break
        if not fits:
            continue
        first = Segment(p1.point_of(u), p2.point_of(b))
        if not segment_admissible(
            first, u, b, p1.piece, p2.piece, state, ctx, ignore=(old,)
        ):
            continue
        edge1 = ConnectionEdge(p1.piece, u, p2.piece, b, first)
        second = Segment(p1.point_of(a), p2.point_of(v))
        if not segment_admissible(
            second,
            a,
            v,
            p1.piece,
            p2.piece,
            state,
            ctx,
            ignore=(old,),
            extra=(edge1,),
        ):
            continue
        edge2 = ConnectionEdge(p1.piece, a, p2.piece, v, second)
        state.remove(key, old)
        state.add(key, edge1)
        state.add(key, edge2)
        state.events.append(f"swap on pair {key}")
        return [edge1, edge2]
    return None


def saturation_reroute(
    p1: PieceCycle,
    saturated: PieceCycle,
    tour: Sequence[int],
    position: int,
    state: ConnectionState,
    ctx: ConnectionContext,
) -> ConnectionEdge | None:
    """The pair's far side is a one-point piece already carrying two edges:
    walk the remaining tour for the first piece that is not a saturated
    single, then run the distance-ordered search between p1 and that piece,
    skipping vertices that already carry connection edges (a one-point
    piece's lone point stays eligible). Sets the dead-end flag when the
    tour runs out."""
    target: PieceCycle | None = None
    for pos in range(position + 2, len(tour)):
        pid = tour[pos]
        if pid in (p1.piece, saturated.piece) or pid not in ctx.cycles:
            continue
        cand = ctx.cycles[pid]
        if cand.kind is PieceKind.SINGLE and state.count(cand.order[0]) > 1:
            continue
        key = pair_key(p1.piece, pid)
        entry = state.memo.get(key, [])
        if entry is None or len(entry) >= 2:
            continue
        target = cand
        break
    if target is None:
        state.reroute_dead_end = True
        state.events.append(
            f"reroute from pair ({p1.piece}, {saturated.piece}) found no piece"
        )
        return None
    key = pair_key(p1.piece, target.piece)
    for u, v in _sorted_candidates(p1, target):
        if not state.has_capacity(p1.piece, u, ctx):
            continue
        if not state.has_capacity(target.piece, v, ctx):
            continue
        seg = Segment(p1.point_of(u), target.point_of(v))
        if segment_admissible(seg, u, v, p1.piece, target.piece, state, ctx):
            edge = ConnectionEdge(p1.piece, u, target.piece, v, seg)
            state.memo.setdefault(key, [])
            state.add(key, edge)
            state.events.append(
                f"reroute ({p1.piece}, {saturated.piece}) -> {key}"
            )
            return edge
    state.events.append(
        f"reroute ({p1.piece}, {saturated.piece}) -> {key} found no edge"
    )
    return None


def _pair_for_position(
    tour: Sequence[int],
    j: int,
    state: ConnectionState,
    ctx: ConnectionContext,
) -> tuple[int, int] | None:
    """Resolve which pieces position j should connect, skipping empties.

    Pairs already memoized as failed are skipped during the forward search
    for a nonempty piece (a failed pair is never retried)."""

    def nonempty(pid: int) -> bool:
        return pid in ctx.cycles

    def next_partner(from_pos: int, anchor: int) -> int | None:
        for pos in range(from_pos, len(tour)):
            pid = tour[pos]
            if not nonempty(pid) or pid == anchor:
                continue
            if state.memo.get(pair_key(anchor, pid), ()) is None:
                continue  # failed pair: keep looking further along the tour
            return pid
        return None

    if j + 1 >= len(tour):
        return None
    a, b = tour[j], tour[j + 1]
    if nonempty(a) and nonempty(b):
        return (a, b)
    if not nonempty(a):
        anchor = None
        for pos in range(j + 1, len(tour)):
            if nonempty(tour[pos]):
                anchor = tour[pos]
                anchor_pos = pos
                break
        if anchor is None:
            return None
        partner = next_partner(anchor_pos + 1, anchor)
        return None if partner is None else (anchor, partner)
    partner = next_partner(j + 2, a)
    return None if partner is None else (a, partner)


_NOT_TRIED = object()


def connect_with_skip(
    tour: Sequence[int],
    j: int,
    state: ConnectionState,
    ctx: ConnectionContext,
) -> None:
    """Process one tour position: pick the pair via the skip rules and
    dispatch on the pair's memo state."""
    pair = _pair_for_position(tour, j, state, ctx)
    if pair is None:
        return
    a, b = pair
    key = pair_key(a, b)
    entry = state.memo.get(key, _NOT_TRIED)
    if entry is _NOT_TRIED:
        first_connection(ctx.cycles[a], ctx.cycles[b], state, ctx)
        return
    if entry is None or len(entry) >= 2:
        return
    far = ctx.cycles[b]
    if far.kind is PieceKind.SINGLE and state.count(far.order[0]) >= 2:
        saturation_reroute(ctx.cycles[a], far, tour, j, state, ctx)
        return
    second_connection(ctx.cycles[a], ctx.cycles[b], state, ctx)
