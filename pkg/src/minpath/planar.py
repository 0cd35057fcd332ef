"""Face traversal of rotation systems, dual graph coloring, crossing bookkeeping.

The dual is built on the sphere: the outer face is not special-cased.  A dual
edge "crosses" a reference path exactly when its primal edge lies on that
path, because in the embedding each dual edge crosses its own primal edge and
nothing else.  Duals of bridges are kept as self-loops and duals of faces
sharing several primal edges stay as parallel edges; each carries its own
colors and crossing flag.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import DisconnectedError, EulerViolationError, InvalidInstanceError, NotPlanarError
from .instance import ColoredPlanarGraph, ValidationReport, Violation

# A directed edge is (edge id, direction); direction 0 runs u -> v as stored.
DirectedEdge = tuple[int, int]


@dataclass(frozen=True, eq=False)
class FaceList:
    """Faces as cyclic sequences of directed edges, plus the inverse mapping."""

    faces: tuple[tuple[DirectedEdge, ...], ...]

    @cached_property
    def face_of(self) -> dict[DirectedEdge, int]:
        out: dict[DirectedEdge, int] = {}
        for fid, cycle in enumerate(self.faces):
            for de in cycle:
                out[de] = fid
        return out

    def __len__(self) -> int:
        return len(self.faces)


@dataclass(frozen=True, eq=False)
class DualEdge:
    u: int
    v: int
    colors: frozenset[int]
    primal_edge: int
    crossing: bool


@dataclass(frozen=True, eq=False)
class DualColoredGraph:
    num_colors: int
    vertex_colors: tuple[frozenset[int], ...]
    edges: tuple[DualEdge, ...]

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_colors)


@dataclass(frozen=True)
class ReferencePath:
    vertices: tuple[int, ...]
    edges: frozenset[int]


def _tail_head(graph: ColoredPlanarGraph, de: DirectedEdge) -> tuple[int, int]:
    u, v = graph.edges[de[0]]
    return (u, v) if de[1] == 0 else (v, u)


def faces(graph: ColoredPlanarGraph) -> FaceList:
    """Trace the face orbits of the rotation system.

    Raises ``EulerViolationError`` when the orbit count breaks Euler's formula,
    which is the operational signature of a broken or non-planar rotation.
    """
    if graph.rotation is None:
        raise NotPlanarError("graph has no embedding; face traversal needs a rotation system")
    n = graph.num_vertices
    for u, v in graph.edges:
        if u == v:
            raise InvalidInstanceError("face traversal requires a simple graph (self-loop found)")

    pos: dict[tuple[int, int], int] = {}
    for v in range(n):
        for i, eid in enumerate(graph.rotation[v]):
            if (v, eid) in pos:
                raise InvalidInstanceError(f"rotation at vertex {v} repeats edge {eid}")
            pos[(v, eid)] = i

    def next_directed(de: DirectedEdge) -> DirectedEdge:
        _, head = _tail_head(graph, de)
        order = graph.rotation[head]
        i = pos.get((head, de[0]))
        if i is None:
            raise InvalidInstanceError(f"rotation at vertex {head} is missing edge {de[0]}")
        nxt = order[(i + 1) % len(order)]
        direction = 0 if graph.edges[nxt][0] == head else 1
        return (nxt, direction)

    visited: set[DirectedEdge] = set()
    cycles: list[tuple[DirectedEdge, ...]] = []
    for eid in range(graph.num_edges):
        for direction in (0, 1):
            start = (eid, direction)
            if start in visited:
                continue
            cycle = []
            de = start
            while True:
                cycle.append(de)
                visited.add(de)
                de = next_directed(de)
                if de == start:
                    break
                if de in visited:
                    raise InvalidInstanceError("rotation system is not a valid embedding")
            cycles.append(tuple(cycle))

    face_list = FaceList(tuple(cycles))
    if graph.num_edges > 0 and n - graph.num_edges + len(cycles) != 2:
        raise EulerViolationError(
            f"rotation system is not planar/spherical: V-E+F = {n}-{graph.num_edges}+{len(cycles)} != 2"
        )
    return face_list


def boundary_vertices(graph: ColoredPlanarGraph, cycle: Sequence[DirectedEdge]) -> tuple[int, ...]:
    """Vertices on a face boundary, in traversal order (tails of the cycle)."""
    return tuple(_tail_head(graph, de)[0] for de in cycle)


def reference_path(graph: ColoredPlanarGraph, s: int, t: int) -> ReferencePath:
    """A fewest-edges s-t path; ties broken by exploring lowest vertex ids first."""
    n = graph.num_vertices
    if not (0 <= s < n and 0 <= t < n):
        raise DisconnectedError(f"terminals ({s},{t}) out of range")
    parent: dict[int, tuple[int, int]] = {}
    seen = [False] * n
    seen[s] = True
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            break
        for v, eid in graph.neighbors[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = (u, eid)
                queue.append(v)
    if not seen[t]:
        raise DisconnectedError(f"no path between {s} and {t}")
    verts = [t]
    eids = []
    cur = t
    while cur != s:
        cur, eid = parent[cur]
        verts.append(cur)
        eids.append(eid)
    verts.reverse()
    return ReferencePath(tuple(verts), frozenset(eids))


def build_dual(
    graph: ColoredPlanarGraph,
    face_list: FaceList,
    ref_path: ReferencePath | None = None,
) -> DualColoredGraph:
    """Dual graph with inherited colors and crossing flags against ``ref_path``.

    A dual edge inherits the union of its primal endpoints' colors; a dual
    vertex inherits the union over its face boundary.
    """
    path_edges = ref_path.edges if ref_path is not None else frozenset()
    dual_vertex_colors = []
    for cycle in face_list.faces:
        cols: set[int] = set()
        for v in boundary_vertices(graph, cycle):
            cols |= graph.vertex_colors[v]
        dual_vertex_colors.append(frozenset(cols))

    dual_edges = []
    for eid, (u, v) in enumerate(graph.edges):
        fu = face_list.face_of[(eid, 0)]
        fv = face_list.face_of[(eid, 1)]
        colors = graph.vertex_colors[u] | graph.vertex_colors[v]
        dual_edges.append(DualEdge(fu, fv, colors, eid, eid in path_edges))

    return DualColoredGraph(graph.num_colors, tuple(dual_vertex_colors), tuple(dual_edges))


def dual_color_connectivity_check(dual: DualColoredGraph) -> ValidationReport:
    """Check that every color's host faces induce a connected dual subgraph.

    Empty on every dual built from a valid color-connected instance; used as a
    construction oracle in the test suite.
    """
    out: list[Violation] = []
    for c in range(dual.num_colors):
        hosts = [i for i in range(dual.num_vertices) if c in dual.vertex_colors[i]]
        if len(hosts) <= 1:
            continue
        host_set = set(hosts)
        adj: dict[int, list[int]] = {h: [] for h in hosts}
        for e in dual.edges:
            if e.u in host_set and e.v in host_set:
                adj[e.u].append(e.v)
                adj[e.v].append(e.u)
        seen = {hosts[0]}
        stack = [hosts[0]]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if seen != host_set:
            out.append(Violation("DUAL_COLOR_DISCONNECTED", f"color {c} host faces are not connected in the dual"))
    return ValidationReport(tuple(out))


def embedding_from_points(
    edges: Sequence[tuple[int, int]],
    points: Sequence[tuple[float, float]],
) -> tuple[tuple[int, ...], ...]:
    """Clockwise rotation system induced by straight-line vertex coordinates.

    Convenience for building valid instances by hand or in generators; raises
    if two incident edges leave a vertex at the same angle.
    """
    n = len(points)
    incident: list[list[int]] = [[] for _ in range(n)]
    for eid, (u, v) in enumerate(edges):
        incident[u].append(eid)
        incident[v].append(eid)
    rotation = []
    for v in range(n):
        angles = []
        for eid in incident[v]:
            a, b = edges[eid]
            other = b if a == v else a
            dx = points[other][0] - points[v][0]
            dy = points[other][1] - points[v][1]
            angles.append((-math.atan2(dy, dx), eid))
        angles.sort()
        for (ang1, e1), (ang2, e2) in zip(angles, angles[1:]):
            if ang1 == ang2:
                raise InvalidInstanceError(f"edges {e1} and {e2} leave vertex {v} at the same angle")
        rotation.append(tuple(eid for _, eid in angles))
    return tuple(rotation)
