"""Instance generators: grid obstacle worlds and diamond-path hardness inputs.

Grid worlds are color-connected planar by construction: each obstacle is a
connected set of cells grown by seeded random BFS and gets one color, so the
instances always validate.  The hardness construction turns an r-uniform
hypergraph into a diamond path: spine vertices v_1..v_{l+1}, every hyperedge
becomes a degree-2 vertex between a uniformly random consecutive spine pair,
colored by the hyperedge's vertex set.  Those instances are planar but in
general not color-connected; ``add_color_connector`` restores
color-connectivity at the price of planarity, and the missing embedding flags
them for exact-only pipelines.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations

from .errors import EmptyGroupError, SizeLimitError
from .instance import INFINITE_PRIZE, Instance, TerminalPair, make_graph
from .planar import embedding_from_points

MAX_HYPERGRAPH_VERTICES = 30
MAX_HYPEREDGE_CANDIDATES = 1_000_000


@dataclass(frozen=True)
class Hypergraph:
    n: int
    r: int
    hyperedges: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class HardnessParams:
    """Construction knobs; q, l and p are derived."""

    n: int
    r: int
    alpha: float
    beta: float
    k: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("hardness construction needs n >= 2")
        if not (0.0 < self.alpha < self.r - 1 and 0.0 < self.beta < self.r - 1):
            raise ValueError("alpha and beta must lie strictly between 0 and r-1")
        if self.num_groups < 1:
            raise ValueError("parameters give no spine groups; increase k or beta")

    @property
    def q(self) -> float:
        return self.k ** (1.0 + self.beta)

    @property
    def num_groups(self) -> int:
        return max(1, round(self.q / ((self.r + 1) * math.log(self.n))))

    @property
    def edge_probability(self) -> float:
        return self.n ** (self.alpha - (self.r - 1))


def gen_grid(
    width: int,
    height: int,
    num_obstacles: int,
    obstacle_size: int,
    seed: int,
) -> Instance:
    """Grid world with seeded random connected obstacles, one color each."""
    if width < 2 or height < 2:
        raise ValueError("grid dimensions must be at least 2x2")
    if num_obstacles < 0 or obstacle_size < 1:
        raise ValueError("need num_obstacles >= 0 and obstacle_size >= 1")
    rng = random.Random(seed)
    n = width * height

    def vid(r: int, c: int) -> int:
        return r * width + c

    edges: list[tuple[int, int]] = []
    for r in range(height):
        for c in range(width):
            if c + 1 < width:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < height:
                edges.append((vid(r, c), vid(r + 1, c)))
    points = [(float(v % width), -float(v // width)) for v in range(n)]
    rotation = embedding_from_points(edges, points)

    cell_neighbors: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        cell_neighbors[u].append(v)
        cell_neighbors[v].append(u)

    vertex_colors: list[set[int]] = [set() for _ in range(n)]
    for color in range(num_obstacles):
        start = rng.randrange(n)
        cells = {start}
        while len(cells) < obstacle_size:
            frontier = sorted({w for cell in cells for w in cell_neighbors[cell]} - cells)
            if not frontier:
                break
            cells.add(rng.choice(frontier))
        for cell in cells:
            vertex_colors[cell].add(color)

    graph = make_graph(num_obstacles, vertex_colors, edges, rotation)
    return Instance(graph, (TerminalPair(0, n - 1, INFINITE_PRIZE),))


def gen_random_hypergraph(n: int, p: float, r: int, seed: int) -> Hypergraph:
    """Every r-subset of [n] becomes a hyperedge independently with probability p."""
    if not 1 <= r <= n or n > MAX_HYPERGRAPH_VERTICES:
        raise SizeLimitError(f"need r <= n <= {MAX_HYPERGRAPH_VERTICES}, got n={n} r={r}")
    if math.comb(n, r) > MAX_HYPEREDGE_CANDIDATES:
        raise SizeLimitError(f"C({n},{r}) exceeds the enumeration budget")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must be in [0,1], got {p}")
    rng = random.Random(seed)
    hyperedges = tuple(e for e in combinations(range(n), r) if rng.random() < p)
    return Hypergraph(n, r, hyperedges)


def gen_diamond_hardness(hg: Hypergraph, params: HardnessParams, seed: int) -> Instance:
    """Diamond-path instance of the hardness construction; planar, embedded.

    Raises ``EmptyGroupError`` when some spine group receives no hyperedge
    (the instance would disconnect s from t); callers may retry with a new
    seed.
    """
    if params.n != hg.n or params.r != hg.r:
        raise ValueError("hypergraph and params disagree on n or r")
    ell = params.num_groups
    rng = random.Random(seed)
    groups: list[list[int]] = [[] for _ in range(ell)]
    for e_idx in range(len(hg.hyperedges)):
        groups[rng.randrange(ell)].append(e_idx)
    empty = [i for i, g in enumerate(groups) if not g]
    if empty:
        raise EmptyGroupError(f"groups {empty} received no hyperedge; retry with a new seed")

    num_vertices = (ell + 1) + len(hg.hyperedges)
    points: list[tuple[float, float]] = [(2.0 * i, 0.0) for i in range(ell + 1)]
    vertex_colors: list[set[int]] = [set() for _ in range(num_vertices)]
    edges: list[tuple[int, int]] = []
    next_id = ell + 1
    for i in range(ell):
        for stack, e_idx in enumerate(groups[i]):
            v = next_id
            next_id += 1
            vertex_colors[v] = set(hg.hyperedges[e_idx])
            points.append((2.0 * i + 1.0, float(stack + 1)))
            edges.append((i, v))
            edges.append((v, i + 1))

    rotation = embedding_from_points(edges, points)
    graph = make_graph(hg.n, vertex_colors, edges, rotation)
    return Instance(graph, (TerminalPair(0, ell, INFINITE_PRIZE),))


def add_color_connector(instance: Instance) -> Instance:
    """Join a fresh vertex carrying every color to all vertices.

    The result is color-connected but in general non-planar, so it ships
    without an embedding; only exact and generic-graph code paths accept it.
    """
    g = instance.graph
    hub = g.num_vertices
    vertex_colors = [set(c) for c in g.vertex_colors] + [set(range(g.num_colors))]
    edges = list(g.edges) + [(v, hub) for v in range(g.num_vertices)]
    graph = make_graph(g.num_colors, vertex_colors, edges, None, g.color_weights)
    return Instance(graph, instance.terminals)
