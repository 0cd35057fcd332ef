"""Pure-Python shortest-path kernel; semantics mirror the compiled extension.

Determinism contract shared by both backends: the heap is keyed by
(distance, node id), relaxations only happen on strict improvement, and
neighbors are scanned in CSR order.  Given identical inputs the two backends
produce bit-identical distance and predecessor arrays.
"""
from __future__ import annotations

import math
from heapq import heappop, heappush

import numpy as np

INF = math.inf


class Graph:
    """Static CSR digraph; edge weights are supplied per call."""

    def __init__(self, num_nodes: int, indptr, indices):
        self.num_nodes = int(num_nodes)
        self.indptr = [int(x) for x in indptr]
        self.indices = [int(x) for x in indices]

    def sssp(self, weights, source: int, bound: float = INF):
        w = list(weights)
        n = self.num_nodes
        indptr, indices = self.indptr, self.indices
        dist = [INF] * n
        pred = [-1] * n
        dist[source] = 0.0
        heap = [(0.0, source)]
        while heap:
            d, u = heappop(heap)
            if d > dist[u]:
                continue
            for i in range(indptr[u], indptr[u + 1]):
                v = indices[i]
                nd = d + w[i]
                if nd < dist[v] and nd <= bound:
                    dist[v] = nd
                    pred[v] = u
                    heappush(heap, (nd, v))
        return np.asarray(dist, dtype=np.float64), np.asarray(pred, dtype=np.int64)

    def shortest_to(self, weights, source: int, target: int, bound: float = INF):
        """Distance and predecessor array for one target, stopping early.

        Entries for nodes settled after the target pops are not meaningful.
        Returns ``(inf, pred)`` when the target is unreachable within bound.
        """
        w = list(weights)
        n = self.num_nodes
        indptr, indices = self.indptr, self.indices
        dist = [INF] * n
        pred = [-1] * n
        dist[source] = 0.0
        heap = [(0.0, source)]
        while heap:
            d, u = heappop(heap)
            if d > dist[u]:
                continue
            if u == target:
                return d, np.asarray(pred, dtype=np.int64)
            for i in range(indptr[u], indptr[u + 1]):
                v = indices[i]
                nd = d + w[i]
                if nd < dist[v] and nd <= bound:
                    dist[v] = nd
                    pred[v] = u
                    heappush(heap, (nd, v))
        return INF, np.asarray(pred, dtype=np.int64)
