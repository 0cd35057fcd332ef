"""Cutting-plane solution of the separator-hitting LP and its extensions.

Variables: one x in [0,1] per color (cost 1), and for finite-prize pairs one
y in [0,1] (cost = the prize).  Constraints are generated lazily: each round
solves the restricted LP, then asks the min-weight separator oracle of every
pair whether some color separator S has  sum_{j in S} x_j < 1 - y_k; violated
separators join the constraint pool until a full sweep is clean.

Colors sitting on a pair's terminals separate that pair on their own, so the
rows "x_c + y_k >= 1" for those colors are seeded upfront; the oracle then
works on the whitened graph.  This keeps the final objective a genuine lower
bound for the original instance in all modes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np

from .errors import IterationLimitError
from .instance import Instance, normalize_terminals
from .planar import faces
from .separator import SeparatorOracle, verify_separator
from .simplex import SimplexProblem, simplex_solve

DEFAULT_TOLERANCE = 1e-7


@dataclass(frozen=True)
class LpState:
    """Terminating state of the cutting-plane loop."""

    x: tuple[float, ...]
    y: tuple[float, ...]  # per pair; fixed 0.0 for must-connect pairs
    constraints: tuple[tuple[int, frozenset[int]], ...]
    cut_weights: tuple[float, ...]  # separator weight when each cut was generated
    objective_value: float
    cuts_added: int
    lp_solves: int

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)


def lp_lower_bound(state: LpState) -> float:
    """The LP optimum: a valid lower bound on integral OPT plus forfeited prizes."""
    return state.objective_value


def default_max_cuts(num_colors: int, num_pairs: int) -> int:
    return 10 * num_colors * max(1, num_pairs) + 1000


def _minimalize(graph, colors: frozenset[int], s: int, t: int) -> frozenset[int]:
    """Drop colors whose removal keeps the set separating (strengthens the cut)."""
    current = set(colors)
    for c in sorted(colors):
        if len(current) <= 1:
            break
        if c in current:
            trial = current - {c}
            if verify_separator(graph, trial, s, t):
                current = trial
    return frozenset(current)


def solve_hitting_lp(
    instance: Instance,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    max_cuts: int | None = None,
    with_prizes: bool = False,
    strengthen_cuts: bool = True,
) -> LpState:
    """Run the cutting-plane loop to optimality of the full hitting LP.

    The instance is whitened internally; pass ``with_prizes=True`` to add the
    forfeit variables for finite-prize pairs.  Raises ``IterationLimitError``
    after ``max_cuts`` generated cuts (default ``10*m*pairs + 1000``).
    """
    if not 0 < tolerance <= 1e-3:
        raise ValueError(f"tolerance must be in (0, 1e-3], got {tolerance}")
    m = instance.num_colors
    pairs = instance.terminals
    if max_cuts is None:
        max_cuts = default_max_cuts(m, len(pairs))

    ninst, _base = normalize_terminals(instance)
    face_list = faces(ninst.graph) if ninst.graph.has_embedding else None
    oracles = [SeparatorOracle(ninst, p.s, p.t, face_list) for p in pairs]

    # y columns only for finite prizes (infinite-prize pairs have y fixed at 0)
    y_col: dict[int, int] = {}
    y_cost: list[float] = []
    if with_prizes:
        for k, p in enumerate(pairs):
            if not p.must_connect:
                y_col[k] = m + len(y_cost)
                y_cost.append(p.prize)
    ncols = m + len(y_cost)
    objective = np.concatenate([np.ones(m), np.asarray(y_cost, dtype=np.float64)])

    constraints: list[tuple[int, frozenset[int]]] = []
    cut_weights: list[float] = []
    seen: set[tuple[int, frozenset[int]]] = set()

    def add(k: int, colors: frozenset[int], weight_at_cut: float) -> bool:
        key = (k, colors)
        if key in seen:
            return False
        seen.add(key)
        constraints.append(key)
        cut_weights.append(weight_at_cut)
        return True

    # terminal colors of a pair separate it on their own: seed those rows
    for k, p in enumerate(pairs):
        for c in sorted(instance.graph.vertex_colors[p.s] | instance.graph.vertex_colors[p.t]):
            add(k, frozenset([c]), 0.0)

    def solve_restricted() -> tuple[np.ndarray, np.ndarray, float]:
        rows = np.zeros((len(constraints), ncols))
        for r, (k, colors) in enumerate(constraints):
            for c in colors:
                rows[r, c] = 1.0
            if k in y_col:
                rows[r, y_col[k]] = 1.0
        problem = SimplexProblem.box(rows, np.ones(len(constraints)), objective)
        result = simplex_solve(problem)
        if result.status != "optimal":
            raise RuntimeError(f"restricted hitting LP reported {result.status}; the all-ones point is always feasible")
        z = result.x
        y = np.zeros(len(pairs))
        for k, col in y_col.items():
            y[k] = z[col]
        return z[:m], y, float(result.value)

    x = np.zeros(m)
    y = np.zeros(len(pairs))
    value = 0.0
    cuts = 0
    lp_solves = 0
    prev_value = -math.inf
    while True:
        x, y, value = solve_restricted()
        lp_solves += 1
        if value < prev_value - 1e-9:
            raise RuntimeError(f"LP objective decreased from {prev_value} to {value}")
        prev_value = value

        new_cuts = 0
        for k, _p in enumerate(pairs):
            res = oracles[k].query(x)
            if res is None:
                continue
            if res.weight < 1.0 - y[k] - tolerance:
                colors = res.colors
                if strengthen_cuts:
                    # only zero-weight colors can drop from a minimum separator
                    colors = _minimalize(oracles[k].graph, colors, pairs[k].s, pairs[k].t)
                if not add(k, colors, res.weight):
                    raise RuntimeError("oracle reported an already-enforced constraint as violated")
                new_cuts += 1
                cuts += 1
                if cuts > max_cuts:
                    raise IterationLimitError(f"cutting-plane loop exceeded {max_cuts} cuts")
        if new_cuts == 0:
            break

    return LpState(
        x=tuple(float(v) for v in x),
        y=tuple(float(v) for v in y),
        constraints=tuple(constraints),
        cut_weights=tuple(cut_weights),
        objective_value=value,
        cuts_added=cuts,
        lp_solves=lp_solves,
    )


def oracle_sweep(instance: Instance, state: LpState, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Re-check the terminating state against fresh oracles (test hook)."""
    ninst, _ = normalize_terminals(instance)
    face_list = faces(ninst.graph) if ninst.graph.has_embedding else None
    x = np.asarray(state.x)
    for k, p in enumerate(instance.terminals):
        res = SeparatorOracle(ninst, p.s, p.t, face_list).query(x)
        if res is not None and res.weight < 1.0 - state.y[k] - tolerance:
            return False
    return True
