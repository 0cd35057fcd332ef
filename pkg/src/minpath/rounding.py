"""Rounding the LP solution to a color set, path extraction, and the solvers.

Rounding: keep every color whose LP value reaches epsilon, build the
color-intersection graph over the rest weighted by the LP values, decompose it
with diameter bound 1/2 - epsilon, and add the decomposition cut.  The
resulting set hits every color separator of every covered pair, so a path
confined to those colors always exists; in strict mode a failed extraction is
reported as an invariant violation rather than patched over.

Prize-collecting: pairs whose forfeit variable reaches 1/2 are dropped, the
remaining x values are doubled (still feasible for the dropped-pair-free LP),
and the usual rounding runs on the doubled vector.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

from .config import Config
from .decomp import build_color_graph, decompose
from .errors import DisconnectedError, InvalidInstanceError, InvariantViolationError, NotPlanarError
from .instance import ColoredPlanarGraph, Instance, normalize_terminals, validate
from .lp import LpState, solve_hitting_lp
from .planar import build_dual, faces


@dataclass(frozen=True)
class Solution:
    colors: frozenset[int]
    paths: tuple[tuple[int, ...] | None, ...]  # None = forfeited
    objective: float
    lower_bound: float
    ratio: float
    forfeited: tuple[int, ...] = ()
    repaired: bool = False
    mode: str = "path"


def extract_path(graph: ColoredPlanarGraph, allowed, s: int, t: int) -> tuple[int, ...] | None:
    """Fewest-edges s-t path over vertices colored only from ``allowed``.

    Returns None when no such path exists, i.e. ``allowed`` misses some
    separator; callers use that as the operational refutation of hitting.
    """
    allowed = frozenset(allowed)
    if graph.vertex_colors[s] - allowed or graph.vertex_colors[t] - allowed:
        return None
    parent: dict[int, int] = {s: -1}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            break
        for v, _eid in graph.neighbors[u]:
            if v not in parent and not graph.vertex_colors[v] - allowed:
                parent[v] = u
                queue.append(v)
    if t not in parent:
        return None
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    path.reverse()
    return tuple(path)


def round_hitting(
    instance: Instance,
    lp: LpState,
    epsilon: float = 0.1,
    strategy: str = "ball_carving",
) -> frozenset[int]:
    """Round an LP point to a hitting color set (pre-round + decomposition cut)."""
    if not 0.0 < epsilon < 0.5:
        raise ValueError(f"epsilon must be in (0, 0.5), got {epsilon}")
    ninst, _base = normalize_terminals(instance)
    x = lp.x
    pre = {c for c in range(instance.num_colors) if x[c] >= epsilon - 1e-9}
    survivors = [c for c in range(instance.num_colors) if c not in pre]
    if not survivors:
        return frozenset(pre)
    dual = build_dual(ninst.graph, faces(ninst.graph))
    g = build_color_graph(dual, survivors, {c: x[c] for c in survivors})
    dec = decompose(g, 0.5 - epsilon, strategy)
    return frozenset(pre) | dec.cut


def _greedy_repair(
    graph: ColoredPlanarGraph, allowed: set[int], s: int, t: int
) -> tuple[tuple[int, ...], set[int]]:
    """Add lowest-id frontier colors until extraction succeeds (repair mode)."""
    while True:
        path = extract_path(graph, allowed, s, t)
        if path is not None:
            return path, allowed
        reach = {s} if not graph.vertex_colors[s] - allowed else set()
        queue = deque(reach)
        while queue:
            u = queue.popleft()
            for v, _eid in graph.neighbors[u]:
                if v not in reach and not graph.vertex_colors[v] - allowed:
                    reach.add(v)
                    queue.append(v)
        frontier: set[int] = set()
        seeds = reach if reach else {s}
        for u in seeds:
            for v, _eid in graph.neighbors[u]:
                if v not in reach:
                    frontier |= graph.vertex_colors[v] - allowed
        frontier |= graph.vertex_colors[s] - allowed
        if not frontier:
            raise DisconnectedError(f"no path between {s} and {t} even with all colors")
        allowed.add(min(frontier))


def _check_instance(instance: Instance) -> None:
    report = validate(instance)
    if not report.ok:
        raise InvalidInstanceError(
            "instance is invalid: " + "; ".join(v.detail for v in report.violations[:5])
        )
    if not instance.graph.has_embedding:
        raise NotPlanarError("solver requires an embedded (planar) instance")


def _run(instance: Instance, config: Config, mode: str) -> Solution:
    _check_instance(instance)
    with_prizes = mode == "prize"
    if mode == "path":
        if len(instance.terminals) != 1:
            raise ValueError("solve expects exactly one terminal pair; use solve_steiner")
        if not instance.terminals[0].must_connect:
            raise ValueError("solve expects an infinite prize; use solve_prize")
    if mode == "steiner" and not all(p.must_connect for p in instance.terminals):
        raise ValueError("solve_steiner expects infinite prizes; use solve_prize")

    lp = solve_hitting_lp(
        instance,
        tolerance=config.tolerance,
        max_cuts=config.max_cuts,
        with_prizes=with_prizes,
    )

    forfeited = tuple(
        k
        for k, p in enumerate(instance.terminals)
        if not p.must_connect and lp.y[k] >= 0.5 - 1e-9
    )
    forfeit_set = set(forfeited)

    if with_prizes:
        doubled = tuple(min(1.0, 2.0 * v) for v in lp.x)
        rounding_lp = replace(lp, x=doubled)
    else:
        rounding_lp = lp
    colors = set(round_hitting(instance, rounding_lp, config.epsilon, config.strategy))

    ninst, base = normalize_terminals(instance)
    paths: list[tuple[int, ...] | None] = []
    repaired = False
    for k, pair in enumerate(instance.terminals):
        if k in forfeit_set:
            paths.append(None)
            continue
        path = extract_path(ninst.graph, colors, pair.s, pair.t)
        if path is None:
            if config.mode == "strict":
                raise InvariantViolationError(
                    f"rounded color set misses a separator of pair {k}; this falsifies the rounding guarantee"
                )
            path, colors_set = _greedy_repair(ninst.graph, set(colors), pair.s, pair.t)
            colors = set(colors_set)
            repaired = True
        paths.append(path)

    # charge the original colors of every vertex the chosen paths touch
    reported = set(colors)
    for path in paths:
        if path is None:
            continue
        for v in path:
            reported |= instance.graph.vertex_colors[v]
    if not with_prizes:
        # terminal colors carry x=1 rows, so they are always pre-rounded
        assert base <= reported

    prize_cost = sum(instance.terminals[k].prize for k in forfeited)
    objective = float(len(reported)) + float(prize_cost)
    lower = lp.objective_value
    if objective < lower - 1e-6:
        raise InvariantViolationError(
            f"objective {objective} fell below the LP lower bound {lower}"
        )
    ratio = objective / max(lower, 1.0)
    return Solution(
        colors=frozenset(reported),
        paths=tuple(paths),
        objective=objective,
        lower_bound=lower,
        ratio=ratio,
        forfeited=forfeited,
        repaired=repaired,
        mode=mode,
    )


def solve(instance: Instance, config: Config | None = None) -> Solution:
    """Constant-factor approximation for the single-pair minimum-color path."""
    return _run(instance, config or Config(), "path")


def solve_steiner(instance: Instance, config: Config | None = None) -> Solution:
    """One color set connecting every terminal pair (shared LP, one rounding)."""
    return _run(instance, config or Config(), "steiner")


def solve_prize(instance: Instance, config: Config | None = None) -> Solution:
    """Prize-collecting variant: forfeit pairs whose LP prefers paying the prize."""
    return _run(instance, config or Config(), "prize")
