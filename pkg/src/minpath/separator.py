"""Minimum-weight color separator via shortest paths in a two-layer search graph.

For a colored dual graph and a reference s-t path, the search graph holds two
copies (layers ``a`` and ``b``) of one node per (dual vertex, color) pair.
Directed "clique" arcs switch colors at a dual vertex and cost the weight of
the color being entered; zero-cost "free" arcs follow dual edges, staying in
the layer on non-crossing edges and switching layers on crossing ones.  Every
dual vertex also gets a source (paying the first color) and a sink.  Because a
source-sink path must switch layers an odd number of times, its projection to
the dual is a cycle crossing the reference path an odd number of times, i.e. a
separating cycle; the cheapest such path over all dual vertices has exactly
the weight of a minimum color separator, paying each color once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernel
from .errors import InvariantViolationError
from .instance import ColoredPlanarGraph, Instance, host_mask, reach_mask
from .planar import DualColoredGraph, FaceList, build_dual, faces, reference_path

KIND_CLIQUE = 0
KIND_FREE = 1
KIND_SOURCE = 2
KIND_SINK = 3

LAYER_A = 0
LAYER_B = 1
LAYER_SOURCE = 2
LAYER_SINK = 3


@dataclass(frozen=True, eq=False)
class AuxiliaryGraph:
    """Two-layer search graph in CSR form plus node/arc metadata."""

    num_nodes: int
    node_dual: np.ndarray
    node_color: np.ndarray
    node_layer: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    arc_pay: np.ndarray
    arc_kind: np.ndarray
    weights: np.ndarray
    source_of: np.ndarray
    sink_of: np.ndarray


@dataclass(frozen=True)
class SeparatorResult:
    colors: frozenset[int]
    weight: float
    witness_cycle: tuple[int, ...]


def arc_weights(arc_pay: np.ndarray, color_weights: Sequence[float]) -> np.ndarray:
    """Arc weight = weight of the color paid on entering, 0 for free/sink arcs."""
    padded = np.concatenate([np.asarray(color_weights, dtype=np.float64), [0.0]])
    return padded[arc_pay]


def build_aux(dual: DualColoredGraph, weights: Sequence[float]) -> AuxiliaryGraph:
    """Materialize the search graph for one colored dual and weight vector."""
    node_dual: list[int] = []
    node_color: list[int] = []
    node_layer: list[int] = []
    a_node: dict[tuple[int, int], int] = {}
    b_node: dict[tuple[int, int], int] = {}
    nv = dual.num_vertices
    source_of = np.empty(nv, dtype=np.int64)
    sink_of = np.empty(nv, dtype=np.int64)

    for i in range(nv):
        source_of[i] = len(node_dual)
        node_dual.append(i)
        node_color.append(-1)
        node_layer.append(LAYER_SOURCE)
        cols = sorted(dual.vertex_colors[i])
        for j in cols:
            a_node[(i, j)] = len(node_dual)
            node_dual.append(i)
            node_color.append(j)
            node_layer.append(LAYER_A)
        for j in cols:
            b_node[(i, j)] = len(node_dual)
            node_dual.append(i)
            node_color.append(j)
            node_layer.append(LAYER_B)
        sink_of[i] = len(node_dual)
        node_dual.append(i)
        node_color.append(-1)
        node_layer.append(LAYER_SINK)

    src: list[int] = []
    dst: list[int] = []
    pay: list[int] = []
    kind: list[int] = []

    def arc(u: int, v: int, p: int, k: int) -> None:
        src.append(u)
        dst.append(v)
        pay.append(p)
        kind.append(k)

    for i in range(nv):
        cols = sorted(dual.vertex_colors[i])
        for k in cols:
            arc(int(source_of[i]), a_node[(i, k)], k, KIND_SOURCE)
        for layer in (a_node, b_node):
            for j in cols:
                for k in cols:
                    if j != k:
                        arc(layer[(i, j)], layer[(i, k)], k, KIND_CLIQUE)
        for k in cols:
            arc(b_node[(i, k)], int(sink_of[i]), -1, KIND_SINK)

    for e in dual.edges:
        x, y = e.u, e.v
        for j in sorted(e.colors):
            if e.crossing:
                arc(a_node[(x, j)], b_node[(y, j)], -1, KIND_FREE)
                arc(b_node[(y, j)], a_node[(x, j)], -1, KIND_FREE)
                if x != y:
                    arc(a_node[(y, j)], b_node[(x, j)], -1, KIND_FREE)
                    arc(b_node[(x, j)], a_node[(y, j)], -1, KIND_FREE)
            elif x != y:
                arc(a_node[(x, j)], a_node[(y, j)], -1, KIND_FREE)
                arc(a_node[(y, j)], a_node[(x, j)], -1, KIND_FREE)
                arc(b_node[(x, j)], b_node[(y, j)], -1, KIND_FREE)
                arc(b_node[(y, j)], b_node[(x, j)], -1, KIND_FREE)

    n = len(node_dual)
    src_arr = np.asarray(src, dtype=np.int64)
    order = np.argsort(src_arr, kind="stable")
    indices = np.asarray(dst, dtype=np.int64)[order]
    arc_pay = np.asarray(pay, dtype=np.int64)[order]
    arc_kind = np.asarray(kind, dtype=np.int64)[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src_arr + 1, 1)
    indptr = np.cumsum(indptr)

    return AuxiliaryGraph(
        num_nodes=n,
        node_dual=np.asarray(node_dual, dtype=np.int64),
        node_color=np.asarray(node_color, dtype=np.int64),
        node_layer=np.asarray(node_layer, dtype=np.int64),
        indptr=indptr,
        indices=indices,
        arc_pay=arc_pay,
        arc_kind=arc_kind,
        weights=arc_weights(arc_pay, weights),
        source_of=source_of,
        sink_of=sink_of,
    )


def verify_separator(graph: ColoredPlanarGraph, colors: Iterable[int], s: int, t: int) -> bool:
    """True iff deleting the host vertices of ``colors`` disconnects s from t.

    Deleting s or t itself counts as disconnecting.
    """
    removed = host_mask(graph, colors)
    alive = ((1 << graph.num_vertices) - 1) & ~removed
    if not (alive >> s) & 1 or not (alive >> t) & 1:
        return True
    reach = reach_mask(graph.adjacency_masks, s, alive)
    return not (reach >> t) & 1


class SeparatorOracle:
    """Repeated min-weight separator queries for one instance and terminal pair.

    The topology (faces, dual, search graph) is built once; each query only
    rebuilds arc weights.  Terminals must be white: run
    :func:`minpath.instance.normalize_terminals` first.
    """

    def __init__(self, instance: Instance, s: int, t: int, face_list: FaceList | None = None):
        graph = instance.graph
        if graph.vertex_colors[s] or graph.vertex_colors[t]:
            raise ValueError("separator oracle requires white terminals; normalize the instance first")
        self.graph = graph
        self.s = s
        self.t = t
        self.ref_path = reference_path(graph, s, t)  # raises DISCONNECTED if needed

        white_alive = 0
        for v, cols in enumerate(graph.vertex_colors):
            if not cols:
                white_alive |= 1 << v
        reach = reach_mask(graph.adjacency_masks, s, white_alive)
        self.white_path_exists = bool((reach >> t) & 1)
        if self.white_path_exists:
            self.aux = None
            self.sources = []
            return

        if face_list is None:
            face_list = faces(graph)
        self.dual = build_dual(graph, face_list, self.ref_path)
        self.aux = build_aux(self.dual, graph.color_weights)
        self._graph = _kernel.Graph(self.aux.num_nodes, self.aux.indptr, self.aux.indices)
        # Sweep every colored dual vertex.  The cheapest start sits at a color-run
        # boundary of the optimal cycle, which need not touch a crossing edge,
        # so no smaller source set is sound; white vertices have no exits.
        self.sources = [i for i in range(self.dual.num_vertices) if self.dual.vertex_colors[i]]
        if not self.sources:
            raise InvariantViolationError("no colored dual vertex although no white path exists")

    def query(self, weights: Sequence[float] | None = None) -> SeparatorResult | None:
        """Minimum-weight color separator, or None when no separator exists."""
        if weights is None:
            weights = self.graph.color_weights
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (self.graph.num_colors,):
            raise ValueError(f"expected {self.graph.num_colors} weights, got shape {w.shape}")
        if np.isnan(w).any() or (w < -1e-9).any():
            raise ValueError("color weights must be nonnegative")
        w = np.maximum(w, 0.0)

        if self.white_path_exists:
            return None

        aux = self.aux
        arc_w = arc_weights(aux.arc_pay, w)
        best = math.inf
        candidates: list[tuple[float, tuple[int, ...], list[int]]] = []
        for i in self.sources:
            d, pred = self._graph.shortest_to(arc_w, int(aux.source_of[i]), int(aux.sink_of[i]), bound=best)
            if d <= best:
                path = _kernel.path_from_predecessors(pred, int(aux.source_of[i]), int(aux.sink_of[i]))
                if path is None:
                    continue
                colors = sorted({int(aux.node_color[v]) for v in path if aux.node_color[v] >= 0})
                candidates.append((d, tuple(colors), path))
                best = d
        if not candidates or math.isinf(best):
            raise InvariantViolationError("search graph has no source-sink path although a separator must exist")

        weight, colors, path = min(
            (c for c in candidates if c[0] == best), key=lambda c: (c[0], c[1])
        )
        rederived = float(sum(w[c] for c in colors))
        if not math.isclose(rederived, weight, rel_tol=1e-9, abs_tol=1e-9):
            raise InvariantViolationError(
                f"witness path weight {weight} disagrees with color weights {rederived}"
            )
        if not verify_separator(self.graph, colors, self.s, self.t):
            raise InvariantViolationError(f"oracle produced a non-separating color set {sorted(colors)}")

        witness: list[int] = []
        for v in path:
            dv = int(self.aux.node_dual[v])
            if not witness or witness[-1] != dv:
                witness.append(dv)
        if len(witness) > 1 and witness[0] == witness[-1]:
            witness.pop()
        return SeparatorResult(frozenset(colors), float(weight), tuple(witness))

    def interlayer_arcs_on_witness(self, weights: Sequence[float] | None = None) -> int | None:
        """Number of layer switches on the winning path (odd by construction)."""
        if weights is None:
            weights = self.graph.color_weights
        w = np.maximum(np.asarray(weights, dtype=np.float64), 0.0)
        if self.white_path_exists:
            return None
        aux = self.aux
        arc_w = arc_weights(aux.arc_pay, w)
        best = math.inf
        best_path: list[int] | None = None
        for i in self.sources:
            d, pred = self._graph.shortest_to(arc_w, int(aux.source_of[i]), int(aux.sink_of[i]), bound=best)
            if d <= best:
                path = _kernel.path_from_predecessors(pred, int(aux.source_of[i]), int(aux.sink_of[i]))
                if path is not None:
                    best, best_path = d, path
        if best_path is None:
            return None
        switches = 0
        for u, v in zip(best_path, best_path[1:]):
            lu, lv = int(aux.node_layer[u]), int(aux.node_layer[v])
            if {lu, lv} == {LAYER_A, LAYER_B}:
                switches += 1
        return switches


def min_color_separator(
    instance: Instance, weights: Sequence[float] | None, s: int, t: int
) -> SeparatorResult | None:
    """Minimum-weight color separator for one pair, or None if none exists.

    Terminals need not be white here: a color sitting on s or t separates the
    pair by itself, so the minimum over the whitened graph is compared against
    the cheapest terminal color.  See :class:`SeparatorOracle` for repeated
    queries on an already-normalized instance.
    """
    graph = instance.graph
    w = list(graph.color_weights) if weights is None else [float(x) for x in weights]
    if len(w) != graph.num_colors:
        raise ValueError(f"expected {graph.num_colors} weights")

    terminal_colors = graph.vertex_colors[s] | graph.vertex_colors[t]
    candidates: list[tuple[float, tuple[int, ...], SeparatorResult]] = []
    for c in sorted(terminal_colors):
        res = SeparatorResult(frozenset([c]), max(w[c], 0.0), ())
        candidates.append((res.weight, (c,), res))

    work = instance
    if terminal_colors:
        from dataclasses import replace

        stripped = tuple(cols - terminal_colors for cols in graph.vertex_colors)
        work = replace(instance, graph=replace(graph, vertex_colors=stripped))
    res = SeparatorOracle(work, s, t).query(w)
    if res is not None:
        candidates.append((res.weight, tuple(sorted(res.colors)), res))

    if not candidates:
        return None
    return min(candidates, key=lambda c: (c[0], c[1]))[2]
