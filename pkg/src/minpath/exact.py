"""Exact brute-force baselines for small instances.

These oracles favor simplest-correct over fastest: subset enumeration with
bitset reachability, and a best-first search over (vertex, color-set) states
with dominance pruning.  Hard limits keep them honest about their range.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Sequence

from .errors import DisconnectedError, LimitExceededError
from .instance import Instance, reach_mask


@dataclass(frozen=True)
class ExactResult:
    value: float
    colors: frozenset[int]
    paths: tuple[tuple[int, ...], ...]
    forfeited: tuple[int, ...] = ()


def _color_masks(instance: Instance) -> list[int]:
    g = instance.graph
    out = []
    for cols in g.vertex_colors:
        mask = 0
        for c in cols:
            if 0 <= c < g.num_colors:
                mask |= 1 << c
        out.append(mask)
    return out


def _allowed_path(instance: Instance, allowed_mask: int, s: int, t: int) -> tuple[int, ...] | None:
    """Fewest-edges s-t path through vertices whose colors all lie in the mask."""
    g = instance.graph
    cmask = _color_masks(instance)
    alive = 0
    for v in range(g.num_vertices):
        if cmask[v] & ~allowed_mask == 0:
            alive |= 1 << v
    if not (alive >> s) & 1 or not (alive >> t) & 1:
        return None
    from collections import deque

    parent = {s: -1}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            break
        for v, _eid in g.neighbors[u]:
            if (alive >> v) & 1 and v not in parent:
                parent[v] = u
                queue.append(v)
    if t not in parent:
        return None
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    path.reverse()
    return tuple(path)


def exact_min_color_path(instance: Instance, limit_m: int = 15) -> ExactResult:
    """Optimal color count of an s-t path, via best-first search with dominance.

    States are (vertex, set of colors seen); a state is pruned whenever some
    recorded state at the same vertex uses a subset of its colors.
    """
    if len(instance.terminals) != 1:
        raise ValueError("exact_min_color_path expects a single terminal pair")
    g = instance.graph
    if g.num_colors > limit_m:
        raise LimitExceededError(f"m={g.num_colors} exceeds limit {limit_m}")
    s, t = instance.terminals[0].s, instance.terminals[0].t
    cmask = _color_masks(instance)

    minimal: list[list[int]] = [[] for _ in range(g.num_vertices)]
    parent: dict[tuple[int, int], tuple[int, int] | None] = {}

    def try_push(heap, v: int, mask: int, prev: tuple[int, int] | None) -> None:
        for m0 in minimal[v]:
            if m0 & mask == m0:
                return
        minimal[v] = [m0 for m0 in minimal[v] if mask & m0 != mask] + [mask]
        parent[(v, mask)] = prev
        heappush(heap, (bin(mask).count("1"), mask, v))

    heap: list[tuple[int, int, int]] = []
    try_push(heap, s, cmask[s], None)
    while heap:
        cnt, mask, v = heappop(heap)
        if mask not in minimal[v]:
            continue
        if v == t:
            verts = []
            state: tuple[int, int] | None = (v, mask)
            while state is not None:
                verts.append(state[0])
                state = parent[state]
            verts.reverse()
            colors = frozenset(c for c in range(g.num_colors) if (mask >> c) & 1)
            return ExactResult(float(cnt), colors, (tuple(verts),))
        for u, _eid in g.neighbors[v]:
            try_push(heap, u, mask | cmask[u], (v, mask))
    raise DisconnectedError(f"no path between {s} and {t}")


def exact_min_separator(
    instance: Instance, weights: Sequence[float] | None = None, limit_m: int = 15
) -> ExactResult | None:
    """Minimum-weight separating color set by enumerating all 2^m subsets.

    Returns None when no color set separates the pair (a white path exists).
    """
    if len(instance.terminals) != 1:
        raise ValueError("exact_min_separator expects a single terminal pair")
    g = instance.graph
    m = g.num_colors
    if m > limit_m:
        raise LimitExceededError(f"m={m} exceeds limit {limit_m}")
    s, t = instance.terminals[0].s, instance.terminals[0].t
    w = list(g.color_weights) if weights is None else [float(x) for x in weights]
    if len(w) != m:
        raise ValueError(f"expected {m} weights")

    hosts = g.host_masks
    adjacency = g.adjacency_masks
    full = (1 << g.num_vertices) - 1

    def separates(removed: int) -> bool:
        alive = full & ~removed
        if not (alive >> s) & 1 or not (alive >> t) & 1:
            return True
        return not (reach_mask(adjacency, s, alive) >> t) & 1

    best: tuple[float, tuple[int, ...]] | None = None
    removed_of = [0] * (1 << m)
    weight_of = [0.0] * (1 << m)
    for sub in range(1 << m):
        if sub:
            low = (sub & -sub).bit_length() - 1
            rest = sub & (sub - 1)
            removed_of[sub] = removed_of[rest] | hosts[low]
            weight_of[sub] = weight_of[rest] + w[low]
        if best is not None and weight_of[sub] > best[0]:
            continue
        if separates(removed_of[sub]):
            cols = tuple(c for c in range(m) if (sub >> c) & 1)
            cand = (weight_of[sub], cols)
            if best is None or cand < best:
                best = cand
    if best is None:
        return None
    return ExactResult(best[0], frozenset(best[1]), ())


def exact_prize(instance: Instance, limit: int = 1 << 22) -> ExactResult:
    """Exact optimum over color subsets crossed with forfeit subsets.

    For a fixed color set the optimal forfeits are exactly the pairs it fails
    to connect (prizes are nonnegative), so the scan is over color subsets
    with the forfeit choice forced; the limit still budgets the nominal
    2^m * 2^k search space.
    """
    g = instance.graph
    m, k = g.num_colors, len(instance.terminals)
    if (1 << m) * (1 << k) > limit:
        raise LimitExceededError(f"2^{m} * 2^{k} exceeds limit {limit}")
    cmask = _color_masks(instance)
    adjacency = g.adjacency_masks

    best: tuple[float, tuple[int, ...], tuple[int, ...]] | None = None
    for sub in range(1 << m):
        n_colors = bin(sub).count("1")
        if best is not None and n_colors > best[0]:
            continue
        alive = 0
        for v in range(g.num_vertices):
            if cmask[v] & ~sub == 0:
                alive |= 1 << v
        cost = float(n_colors)
        forfeited = []
        feasible = True
        for idx, pair in enumerate(instance.terminals):
            connected = False
            if (alive >> pair.s) & 1 and (alive >> pair.t) & 1:
                connected = bool((reach_mask(adjacency, pair.s, alive) >> pair.t) & 1)
            if not connected:
                if pair.must_connect:
                    feasible = False
                    break
                forfeited.append(idx)
                cost += pair.prize
        if not feasible:
            continue
        cols = tuple(c for c in range(m) if (sub >> c) & 1)
        cand = (cost, cols, tuple(forfeited))
        if best is None or cand < best:
            best = cand
    if best is None:
        raise DisconnectedError("no color set connects all must-connect pairs")

    value, cols, forfeited = best
    allowed_mask = 0
    for c in cols:
        allowed_mask |= 1 << c
    paths = []
    for idx, pair in enumerate(instance.terminals):
        if idx in forfeited:
            paths.append(())
        else:
            path = _allowed_path(instance, allowed_mask, pair.s, pair.t)
            assert path is not None
            paths.append(path)
    return ExactResult(value, frozenset(cols), tuple(paths), forfeited)


def exact_steiner(instance: Instance, limit: int = 1 << 22) -> ExactResult:
    """Exact optimum when every pair must be connected (prizes ignored)."""
    forced = Instance(
        instance.graph,
        tuple(type(p)(p.s, p.t, math.inf) for p in instance.terminals),
    )
    return exact_prize(forced, limit)
