"""Convex partition of a simple polygon and its dual tree.

Pipeline: ear-clipping triangulation (exact in-triangle tests) into a DCEL,
then Hertel-Mehlhorn diagonal removal to merge triangles into convex pieces,
then the dual tree over the surviving (essential) diagonals and its Euler
tour. Piece rings stay strictly convex: a diagonal whose removal would make
three boundary vertices collinear is kept, so every piece is a valid
SimplePolygon with exact left turns only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import (
    Orientation,
    Point,
    Segment,
    SimplePolygon,
    cross,
    orient,
    validate_simple_polygon,
)


class PartitionError(RuntimeError):
    """Internal consistency failure while decomposing a polygon."""


class RootNotFoundError(ValueError):
    pass


OUTER_FACE = 0


@dataclass
class HalfEdge:
    origin: int
    twin: int = -1
    nxt: int = -1
    prev: int = -1
    face: int = -1
    alive: bool = True


class Dcel:
    """Half-edge structure over a triangulated simple polygon.

    Face 0 is the unbounded outer face; bounded faces are CCW rings.
    """

    def __init__(self, points: list[Point]):
        self.points = list(points)
        self.half_edges: list[HalfEdge] = []
        # face id -> anchor half-edge id (-1 once a face is merged away)
        self.face_anchor: list[int] = [-1]
        self.vertex_edge: list[int] = [-1] * len(points)

    def add_face(self) -> int:
        self.face_anchor.append(-1)
        return len(self.face_anchor) - 1

    def add_half_edge(self, origin: int, face: int) -> int:
        self.half_edges.append(HalfEdge(origin=origin, face=face))
        if self.vertex_edge[origin] == -1:
            self.vertex_edge[origin] = len(self.half_edges) - 1
        return len(self.half_edges) - 1

    def dest(self, he: int) -> int:
        return self.half_edges[self.half_edges[he].twin].origin

    def face_ring(self, face: int) -> list[int]:
        """Half-edge ids around a face, starting at its anchor."""
        start = self.face_anchor[face]
        ring = [start]
        cur = self.half_edges[start].nxt
        while cur != start:
            ring.append(cur)
            cur = self.half_edges[cur].nxt
            if len(ring) > len(self.half_edges):
                raise PartitionError("corrupt face ring")
        return ring

    def bounded_faces(self) -> list[int]:
        return [
            f
            for f in range(1, len(self.face_anchor))
            if self.face_anchor[f] != -1
        ]

    def diagonal_half_edges(self) -> list[int]:
        """One half-edge per interior diagonal, in creation order."""
        out = []
        for i, he in enumerate(self.half_edges):
            if not he.alive or he.twin < i:
                continue
            twin = self.half_edges[he.twin]
            if he.face != OUTER_FACE and twin.face != OUTER_FACE:
                out.append(i)
        return out

    def check_invariants(self) -> None:
        alive = [i for i, h in enumerate(self.half_edges) if h.alive]
        for i in alive:
            h = self.half_edges[i]
            if self.half_edges[h.twin].twin != i:
                raise PartitionError("twin(twin(e)) != e")
            if self.half_edges[h.nxt].prev != i or self.half_edges[h.prev].nxt != i:
                raise PartitionError("next/prev are not inverse")
        n_v = len(self.points)
        n_e = len(alive) // 2
        n_f = len(self.bounded_faces()) + 1
        if n_v - n_e + n_f != 2:
            raise PartitionError(
                f"Euler formula violated: V={n_v} E={n_e} F={n_f}"
            )


def _ear_clip(polygon: SimplePolygon) -> list[tuple[int, int, int]]:
    """CCW triangle fan list from iterative ear clipping, exact tests only."""
    pts = polygon.vertices
    ring = list(range(len(pts)))
    triangles: list[tuple[int, int, int]] = []
    while len(ring) > 3:
        clipped = False
        for idx in range(len(ring)):
            a = ring[idx - 1]
            b = ring[idx]
            c = ring[(idx + 1) % len(ring)]
            if orient(pts[a], pts[b], pts[c]) is not Orientation.LEFT_TURN:
                continue
            blocked = False
            for other in ring:
                if other in (a, b, c):
                    continue
                p = pts[other]
                # inside or on the candidate triangle blocks the ear
                if (
                    cross(pts[a], pts[b], p) >= 0
                    and cross(pts[b], pts[c], p) >= 0
                    and cross(pts[c], pts[a], p) >= 0
                ):
                    blocked = True
                    break
            if not blocked:
                triangles.append((a, b, c))
                del ring[idx]
                clipped = True
                break
        if not clipped:
            raise PartitionError("no ear found; input ring is not simple")
    triangles.append((ring[0], ring[1], ring[2]))
    return triangles


def triangulate(polygon: SimplePolygon) -> Dcel:
    """DCEL of an ear-clipping triangulation: m - 2 bounded triangular faces."""
    pts = list(polygon.vertices)
    dcel = Dcel(pts)
    edge_map: dict[tuple[int, int], int] = {}
    for tri in _ear_clip(polygon):
        f = dcel.add_face()
        ids = []
        for i in range(3):
            u, v = tri[i], tri[(i + 1) % 3]
            he = dcel.add_half_edge(u, f)
            edge_map[(u, v)] = he
            ids.append(he)
        for i in range(3):
            dcel.half_edges[ids[i]].nxt = ids[(i + 1) % 3]
            dcel.half_edges[ids[i]].prev = ids[(i - 1) % 3]
        dcel.face_anchor[f] = ids[0]
    for (u, v), he in edge_map.items():
        t = edge_map.get((v, u))
        if t is not None:
            dcel.half_edges[he].twin = t
    # unpaired half-edges run along the polygon boundary; give them outer twins
    outer_from: dict[int, int] = {}
    for (u, v), he in list(edge_map.items()):
        if dcel.half_edges[he].twin == -1:
            g = dcel.add_half_edge(v, OUTER_FACE)
            dcel.half_edges[he].twin = g
            dcel.half_edges[g].twin = he
            outer_from[v] = g
    for g_origin, g in outer_from.items():
        u = dcel.half_edges[dcel.half_edges[g].twin].origin  # dest of g
        dcel.half_edges[g].nxt = outer_from[u]
        dcel.half_edges[outer_from[u]].prev = g
    dcel.face_anchor[OUTER_FACE] = next(iter(outer_from.values()))
    dcel.check_invariants()
    return dcel


@dataclass
class Decomposition:
    """Convex pieces of Q plus the essential diagonals between them."""

    polygon: SimplePolygon
    pieces: list[SimplePolygon]
    piece_vertex_ids: list[tuple[int, ...]]
    diagonals: list[Segment]
    diagonal_pieces: list[tuple[int, int]]
    reflex_count: int


def _merge_keeps_strictly_convex(dcel: Dcel, he: int) -> bool:
    h = dcel.half_edges[he]
    t = dcel.half_edges[h.twin]
    pts = dcel.points
    u = h.origin
    v = t.origin
    # turn at u after removal: prev(h) runs into u, next(twin) leaves it
    before_u = dcel.half_edges[h.prev].origin
    after_u = dcel.dest(t.nxt)
    if orient(pts[before_u], pts[u], pts[after_u]) is not Orientation.LEFT_TURN:
        return False
    before_v = dcel.half_edges[t.prev].origin
    after_v = dcel.dest(h.nxt)
    return orient(pts[before_v], pts[v], pts[after_v]) is Orientation.LEFT_TURN


def _remove_diagonal(dcel: Dcel, he: int) -> None:
    h = dcel.half_edges[he]
    t = dcel.half_edges[h.twin]
    keep_face, dead_face = h.face, t.face
    pe, ne, pt, nt = h.prev, h.nxt, t.prev, t.nxt
    dcel.half_edges[pe].nxt = nt
    dcel.half_edges[nt].prev = pe
    dcel.half_edges[pt].nxt = ne
    dcel.half_edges[ne].prev = pt
    h.alive = False
    t.alive = False
    cur = ne
    while True:
        dcel.half_edges[cur].face = keep_face
        cur = dcel.half_edges[cur].nxt
        if cur == ne:
            break
    dcel.face_anchor[keep_face] = ne
    dcel.face_anchor[dead_face] = -1
    for vid, anchor in ((h.origin, nt), (t.origin, ne)):
        if not dcel.half_edges[dcel.vertex_edge[vid]].alive:
            dcel.vertex_edge[vid] = anchor


def hertel_mehlhorn(dcel: Dcel) -> Decomposition:
    """Greedy diagonal removal over a triangulation.

    A diagonal is dropped when both merged corners stay strict left turns,
    so pieces never acquire collinear boundary triples. Diagonals are
    scanned once, in DCEL creation order.
    """
    for he in dcel.diagonal_half_edges():
        if _merge_keeps_strictly_convex(dcel, he):
            _remove_diagonal(dcel, he)
    polygon = validate_simple_polygon(dcel.points)

    face_to_piece: dict[int, int] = {}
    pieces: list[SimplePolygon] = []
    piece_vertex_ids: list[tuple[int, ...]] = []
    for f in dcel.bounded_faces():
        ring = [dcel.half_edges[he].origin for he in dcel.face_ring(f)]
        face_to_piece[f] = len(pieces)
        pieces.append(validate_simple_polygon([dcel.points[i] for i in ring]))
        piece_vertex_ids.append(tuple(ring))

    diagonals: list[Segment] = []
    diagonal_pieces: list[tuple[int, int]] = []
    for he in dcel.diagonal_half_edges():
        h = dcel.half_edges[he]
        t = dcel.half_edges[h.twin]
        diagonals.append(Segment(dcel.points[h.origin], dcel.points[t.origin]))
        diagonal_pieces.append((face_to_piece[h.face], face_to_piece[t.face]))

    r = len(polygon.reflex_vertex_indices())
    if len(pieces) != len(diagonals) + 1:
        raise PartitionError("piece count does not match diagonal count + 1")
    if len(diagonals) > 2 * r:
        raise PartitionError(
            f"{len(diagonals)} essential diagonals exceed 2r = {2 * r}"
        )
    if not all(p.is_convex() for p in pieces):
        raise PartitionError("non-convex piece after merging")
    return Decomposition(
        polygon=polygon,
        pieces=pieces,
        piece_vertex_ids=piece_vertex_ids,
        diagonals=diagonals,
        diagonal_pieces=diagonal_pieces,
        reflex_count=r,
    )


def decompose(polygon: SimplePolygon) -> Decomposition:
    return hertel_mehlhorn(triangulate(polygon))


@dataclass
class DualTree:
    """One node per convex piece, one edge per essential diagonal."""

    node_count: int
    edges: list[tuple[int, int, int]]  # (piece, piece, diagonal id)
    adjacency: dict[int, list[tuple[int, int]]] = field(default_factory=dict)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def dual_tree(decomposition: Decomposition) -> DualTree:
    n = len(decomposition.pieces)
    edges = [
        (a, b, d)
        for d, (a, b) in enumerate(decomposition.diagonal_pieces)
    ]
    adjacency: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, d in edges:
        adjacency[a].append((b, d))
        adjacency[b].append((a, d))
        ra, rb = find(a), find(b)
        if ra == rb:
            raise PartitionError("dual graph contains a cycle")
        parent[ra] = rb
    if n > 0 and len({find(i) for i in range(n)}) != 1:
        raise PartitionError("dual graph is disconnected")
    for neighbors in adjacency.values():
        neighbors.sort()
    return DualTree(node_count=n, edges=edges, adjacency=adjacency)


@dataclass
class EulerTour:
    sequence: tuple[int, ...]
    root: int


def euler_tour(tree: DualTree, root: int) -> EulerTour:
    """DFS entry/return sequence; children in ascending piece id.

    Length is 2 * edge_count + 1.
    """
    if not (0 <= root < tree.node_count):
        raise RootNotFoundError(f"root {root} not in dual tree")
    seq = [root]

    def visit(u: int, parent: int) -> None:
        for v, _diag in tree.adjacency[u]:
            if v == parent:
                continue
            seq.append(v)
            visit(v, u)
            seq.append(u)

    visit(root, -1)
    if len(seq) != 2 * tree.edge_count + 1:
        raise PartitionError("Euler tour length mismatch")
    return EulerTour(sequence=tuple(seq), root=root)
