"""Domain types for colored planar graph instances, validation, JSON round-trip.

An instance is an undirected simple graph whose vertices each carry a set of
color ids below ``num_colors``, an optional combinatorial embedding (a
clockwise rotation system), optional per-color weights, and one or more
terminal pairs.  Vertices with an empty color set are called white.

Instances with ``rotation=None`` represent graphs without an embedding
(typically non-planar ones produced by :func:`minpath.gen.add_color_connector`);
embedding-dependent operations refuse them.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable

from .errors import ParseError

INFINITE_PRIZE = math.inf


@dataclass(frozen=True)
class TerminalPair:
    """A source/destination request; ``prize`` is the cost of not connecting it.

    ``prize=inf`` means the pair must be connected.
    """

    s: int
    t: int
    prize: float = INFINITE_PRIZE

    @property
    def must_connect(self) -> bool:
        return math.isinf(self.prize)


@dataclass(frozen=True)
class ColoredPlanarGraph:
    num_colors: int
    vertex_colors: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...] | None
    color_weights: tuple[float, ...]

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_colors)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def has_embedding(self) -> bool:
        return self.rotation is not None

    @cached_property
    def neighbors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex: (neighbor, edge id) pairs sorted by neighbor then edge id."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_vertices)]
        for eid, (u, v) in enumerate(self.edges):
            if 0 <= u < self.num_vertices and 0 <= v < self.num_vertices and u != v:
                adj[u].append((v, eid))
                adj[v].append((u, eid))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Per vertex: neighbors as a bitmask; used by bitset reachability."""
        masks = [0] * self.num_vertices
        for u, v in self.edges:
            if 0 <= u < self.num_vertices and 0 <= v < self.num_vertices and u != v:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def host_masks(self) -> tuple[int, ...]:
        """Per color: host vertices as a bitmask."""
        masks = [0] * self.num_colors
        for v, cols in enumerate(self.vertex_colors):
            for c in cols:
                if 0 <= c < self.num_colors:
                    masks[c] |= 1 << v
        return tuple(masks)


def make_graph(
    num_colors: int,
    vertex_colors: Iterable[Iterable[int]],
    edges: Iterable[tuple[int, int]],
    rotation: Iterable[Iterable[int]] | None,
    color_weights: Iterable[float] | None = None,
) -> ColoredPlanarGraph:
    """Normalize plain containers into a graph value; no validation happens here."""
    vc = tuple(frozenset(c) for c in vertex_colors)
    es = tuple((int(u), int(v)) for u, v in edges)
    rot = None if rotation is None else tuple(tuple(int(e) for e in r) for r in rotation)
    if color_weights is None:
        cw = (1.0,) * num_colors
    else:
        cw = tuple(float(w) for w in color_weights)
    return ColoredPlanarGraph(int(num_colors), vc, es, rot, cw)


@dataclass(frozen=True)
class Instance:
    graph: ColoredPlanarGraph
    terminals: tuple[TerminalPair, ...]

    @property
    def num_colors(self) -> int:
        return self.graph.num_colors


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> tuple[str, ...]:
        return tuple(v.code for v in self.violations)


def reach_mask(adjacency_masks: Iterable[int], start: int, alive_mask: int) -> int:
    """Bitmask of vertices reachable from ``start`` inside ``alive_mask``."""
    adjacency_masks = tuple(adjacency_masks)
    start_bit = 1 << start
    if not start_bit & alive_mask:
        return 0
    reach = start_bit
    frontier = start_bit
    while frontier:
        nxt = 0
        m = frontier
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            nxt |= adjacency_masks[v]
        frontier = nxt & alive_mask & ~reach
        reach |= frontier
    return reach


def host_vertices(graph: ColoredPlanarGraph, colors: Iterable[int]) -> frozenset[int]:
    """Vertices whose color set intersects ``colors``."""
    cs = frozenset(colors)
    if not cs:
        return frozenset()
    return frozenset(v for v, own in enumerate(graph.vertex_colors) if own & cs)


def host_mask(graph: ColoredPlanarGraph, colors: Iterable[int]) -> int:
    mask = 0
    hosts = graph.host_masks
    for c in colors:
        if 0 <= c < graph.num_colors:
            mask |= hosts[c]
    return mask


def _connected(graph: ColoredPlanarGraph, vertices: frozenset[int]) -> bool:
    if len(vertices) <= 1:
        return True
    alive = 0
    for v in vertices:
        alive |= 1 << v
    start = min(vertices)
    return reach_mask(graph.adjacency_masks, start, alive) == alive


def validate(instance: Instance) -> ValidationReport:
    """Report every violated instance invariant; empty report means valid.

    Total and deterministic: the report never raises and lists violations in a
    fixed order (colors, edges, connectivity, color-connectivity, rotation,
    weights, terminals).
    """
    g = instance.graph
    n = g.num_vertices
    out: list[Violation] = []

    for v, cols in enumerate(g.vertex_colors):
        bad = sorted(c for c in cols if not 0 <= c < g.num_colors)
        if bad:
            out.append(Violation("COLOR_RANGE", f"vertex {v} carries out-of-range colors {bad}"))

    seen: dict[tuple[int, int], int] = {}
    for eid, (u, v) in enumerate(g.edges):
        if not (0 <= u < n and 0 <= v < n):
            out.append(Violation("EDGE_RANGE", f"edge {eid} endpoints ({u},{v}) out of range"))
            continue
        if u == v:
            out.append(Violation("SELF_LOOP", f"edge {eid} is a self-loop at vertex {u}"))
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            out.append(Violation("PARALLEL_EDGE", f"edge {eid} duplicates edge {seen[key]}"))
        else:
            seen[key] = eid

    if n > 0 and not _connected(g, frozenset(range(n))):
        out.append(Violation("GRAPH_DISCONNECTED", "graph is not connected"))

    for c in range(g.num_colors):
        hosts = frozenset(v for v in range(n) if c in g.vertex_colors[v])
        if hosts and not _connected(g, hosts):
            out.append(Violation("COLOR_DISCONNECTED", f"color {c} hosts are not connected"))

    if g.rotation is not None:
        rotation_ok = len(g.rotation) == n
        if not rotation_ok:
            out.append(Violation("ROTATION_MISMATCH", "rotation does not cover every vertex"))
        else:
            incident: list[list[int]] = [[] for _ in range(n)]
            for eid, (u, v) in enumerate(g.edges):
                if 0 <= u < n and 0 <= v < n and u != v:
                    incident[u].append(eid)
                    incident[v].append(eid)
            for v in range(n):
                if sorted(g.rotation[v]) != sorted(incident[v]):
                    out.append(Violation("ROTATION_MISMATCH", f"rotation at vertex {v} does not list its incident edges exactly once"))
                    rotation_ok = False
        if rotation_ok and not any(o.code in ("SELF_LOOP", "EDGE_RANGE", "GRAPH_DISCONNECTED") for o in out):
            from .planar import faces as _faces
            from .errors import EulerViolationError

            try:
                _faces(g)
            except EulerViolationError as exc:
                out.append(Violation("EULER_VIOLATION", exc.message))

    if len(g.color_weights) != g.num_colors:
        out.append(Violation("WEIGHTS_LENGTH", f"expected {g.num_colors} color weights, got {len(g.color_weights)}"))
    for c, w in enumerate(g.color_weights):
        if not w >= 0.0:
            out.append(Violation("WEIGHT_NEGATIVE", f"color {c} has negative weight {w}"))

    if not instance.terminals:
        out.append(Violation("NO_TERMINALS", "instance has no terminal pairs"))
    for k, pair in enumerate(instance.terminals):
        if not (0 <= pair.s < n and 0 <= pair.t < n):
            out.append(Violation("TERMINAL_INVALID", f"pair {k} endpoints ({pair.s},{pair.t}) out of range"))
        elif pair.s == pair.t:
            out.append(Violation("TERMINAL_INVALID", f"pair {k} has identical endpoints {pair.s}"))
        if not (pair.prize >= 0.0):
            out.append(Violation("PRIZE_NEGATIVE", f"pair {k} has negative prize {pair.prize}"))

    return ValidationReport(tuple(out))


def normalize_terminals(instance: Instance) -> tuple[Instance, frozenset[int]]:
    """Whiten every terminal by deleting all terminal colors from the whole graph.

    Returns the whitened instance and the set of removed colors.  Removal is
    global per color, so color-connectivity of the remaining colors is
    untouched, and the removed colors are charged back by the solvers.
    """
    base: set[int] = set()
    for pair in instance.terminals:
        base |= instance.graph.vertex_colors[pair.s]
        base |= instance.graph.vertex_colors[pair.t]
    if not base:
        return instance, frozenset()
    fro = frozenset(base)
    new_colors = tuple(c - fro for c in instance.graph.vertex_colors)
    return replace(instance, graph=replace(instance.graph, vertex_colors=new_colors)), fro


def _as_int(value: object, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    return value


def parse(text: str) -> Instance:
    """Parse the canonical JSON instance format.

    Structural problems (bad JSON, missing fields, indices that cannot be
    resolved, self-loops) raise :class:`ParseError`; semantic problems such as
    out-of-range color ids parse fine and are left to :func:`validate`.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    for key in ("num_colors", "vertices", "edges", "terminals"):
        if key not in doc:
            raise ParseError(f"missing required field '{key}'")

    num_colors = _as_int(doc["num_colors"], "num_colors")
    if num_colors < 0:
        raise ParseError("num_colors must be nonnegative")

    raw_vertices = doc["vertices"]
    if not isinstance(raw_vertices, list):
        raise ParseError("'vertices' must be a list")
    n = len(raw_vertices)
    colors_by_id: dict[int, frozenset[int]] = {}
    for item in raw_vertices:
        if not isinstance(item, dict) or "id" not in item or "colors" not in item:
            raise ParseError("each vertex must be an object with 'id' and 'colors'")
        vid = _as_int(item["id"], "vertex id")
        if vid in colors_by_id:
            raise ParseError(f"duplicate vertex id {vid}")
        if not isinstance(item["colors"], list):
            raise ParseError(f"vertex {vid} 'colors' must be a list")
        colors_by_id[vid] = frozenset(_as_int(c, "color id") for c in item["colors"])
    if sorted(colors_by_id) != list(range(n)):
        raise ParseError("vertex ids must be exactly 0..n-1")
    vertex_colors = tuple(colors_by_id[v] for v in range(n))

    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise ParseError("'edges' must be a list")
    edges: list[tuple[int, int]] = []
    for i, pair in enumerate(raw_edges):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"edge {i} must be a pair of vertex ids")
        u, v = _as_int(pair[0], "edge endpoint"), _as_int(pair[1], "edge endpoint")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge {i} endpoints ({u},{v}) out of range")
        if u == v:
            raise ParseError(f"edge {i} is a self-loop at vertex {u}")
        edges.append((u, v))

    rotation: tuple[tuple[int, ...], ...] | None = None
    raw_rotation = doc.get("rotation")
    if raw_rotation is not None:
        if not isinstance(raw_rotation, dict):
            raise ParseError("'rotation' must be an object or null")
        rot: list[tuple[int, ...]] = []
        for v in range(n):
            key = str(v)
            if key not in raw_rotation:
                raise ParseError(f"rotation missing vertex {v}")
            order = raw_rotation[key]
            if not isinstance(order, list):
                raise ParseError(f"rotation at vertex {v} must be a list of edge indices")
            ids = tuple(_as_int(e, "edge index") for e in order)
            for e in ids:
                if not 0 <= e < len(edges):
                    raise ParseError(f"rotation at vertex {v} references unknown edge {e}")
            rot.append(ids)
        rotation = tuple(rot)

    raw_weights = doc.get("color_weights")
    if raw_weights is None:
        color_weights = (1.0,) * num_colors
    else:
        if not isinstance(raw_weights, list) or len(raw_weights) != num_colors:
            raise ParseError("'color_weights' must list one weight per color")
        color_weights = tuple(float(w) for w in raw_weights)

    raw_terms = doc["terminals"]
    if not isinstance(raw_terms, list):
        raise ParseError("'terminals' must be a list")
    terminals: list[TerminalPair] = []
    for i, item in enumerate(raw_terms):
        if not isinstance(item, dict) or "s" not in item or "t" not in item:
            raise ParseError(f"terminal {i} must be an object with 's' and 't'")
        s, t = _as_int(item["s"], "terminal"), _as_int(item["t"], "terminal")
        prize = item.get("prize", None)
        if prize is None:
            pz = INFINITE_PRIZE
        else:
            if not isinstance(prize, (int, float)) or isinstance(prize, bool):
                raise ParseError(f"terminal {i} prize must be a number or null")
            pz = float(prize)
        terminals.append(TerminalPair(s, t, pz))

    graph = ColoredPlanarGraph(num_colors, vertex_colors, tuple(edges), rotation, color_weights)
    return Instance(graph, tuple(terminals))


def to_document(instance: Instance) -> dict:
    """Instance as a JSON-ready dict in canonical field order."""
    g = instance.graph
    doc: dict = {
        "num_colors": g.num_colors,
        "vertices": [{"id": v, "colors": sorted(g.vertex_colors[v])} for v in range(g.num_vertices)],
        "edges": [[u, v] for u, v in g.edges],
        "rotation": None if g.rotation is None else {str(v): list(g.rotation[v]) for v in range(g.num_vertices)},
        "color_weights": list(g.color_weights),
        "terminals": [
            {"s": p.s, "t": p.t, "prize": None if p.must_connect else p.prize}
            for p in instance.terminals
        ],
    }
    return doc


def serialize(instance: Instance) -> str:
    """Canonical JSON text; ``parse(serialize(i))`` equals ``i`` structurally."""
    return json.dumps(to_document(instance), indent=1)


def load(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def dump(instance: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(instance))
        fh.write("\n")
