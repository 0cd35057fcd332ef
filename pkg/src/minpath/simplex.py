"""Dense bounded-variable primal simplex for the restricted hitting LPs.

Solves  min c.x  s.t.  A x >= b,  lower <= x <= upper  (upper may be +inf).
Internally the rows become equalities with surplus columns; the solver prefers
a surplus-only starting basis (always feasible for hitting LPs, where the
all-upper point satisfies every row) and falls back to a phase-1 with
artificials otherwise.  Dantzig pricing switches to Bland's rule after
2*(rows+cols) degenerate pivots, which guarantees termination.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-9


@dataclass
class SimplexProblem:
    """Dense rows of A x >= rhs with box bounds on x."""

    rows: np.ndarray
    rhs: np.ndarray
    objective: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    @staticmethod
    def box(rows, rhs, objective, lower=None, upper=None) -> "SimplexProblem":
        rows = np.atleast_2d(np.asarray(rows, dtype=np.float64))
        if rows.size == 0:
            rows = rows.reshape(0, len(objective))
        objective = np.asarray(objective, dtype=np.float64)
        n = objective.shape[0]
        rhs = np.asarray(rhs, dtype=np.float64)
        lo = np.zeros(n) if lower is None else np.asarray(lower, dtype=np.float64)
        up = np.ones(n) if upper is None else np.asarray(upper, dtype=np.float64)
        return SimplexProblem(rows, rhs, objective, lo, up)


@dataclass
class SimplexResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    value: float | None


@dataclass
class _Tableau:
    M: np.ndarray
    b: np.ndarray
    cost: np.ndarray
    lo: np.ndarray
    up: np.ndarray
    basis: list[int]
    at_upper: np.ndarray  # per-column flag for nonbasic position
    B_inv: np.ndarray = field(init=False)
    degenerate_run: int = field(default=0, init=False)
    pivots: int = field(default=0, init=False)

    def __post_init__(self):
        self.refactor()

    def refactor(self) -> None:
        B = self.M[:, self.basis]
        self.B_inv = np.linalg.inv(B)

    def nonbasic_values(self) -> np.ndarray:
        x = np.where(self.at_upper, self.up, self.lo)
        x[self.basis] = 0.0
        return x

    def basic_values(self) -> np.ndarray:
        x_n = self.nonbasic_values()
        return self.B_inv @ (self.b - self.M @ x_n)

    def solution(self) -> np.ndarray:
        x = self.nonbasic_values()
        x[self.basis] = self.basic_values()
        return x

    def optimize(self, max_pivots: int = 200000) -> str:
        m, ncols = self.M.shape
        bland_after = 2 * (m + ncols)
        is_basic = np.zeros(ncols, dtype=bool)
        is_basic[self.basis] = True
        x_b = self.basic_values()

        while True:
            self.pivots += 1
            if self.pivots > max_pivots:
                raise RuntimeError("simplex exceeded pivot budget; numerical trouble")
            if self.pivots % 128 == 0:
                self.refactor()
                x_b = self.basic_values()

            y = self.cost[self.basis] @ self.B_inv
            reduced = self.cost - y @ self.M
            use_bland = self.degenerate_run > bland_after

            entering = -1
            ent_sign = 0.0
            best_score = PIVOT_TOL
            for j in range(ncols):
                if is_basic[j]:
                    continue
                if self.up[j] - self.lo[j] <= PIVOT_TOL:
                    continue  # fixed column
                d = reduced[j]
                if not self.at_upper[j] and d < -PIVOT_TOL:
                    score = -d
                elif self.at_upper[j] and d > PIVOT_TOL:
                    score = d
                else:
                    continue
                if use_bland:
                    entering, ent_sign = j, (1.0 if not self.at_upper[j] else -1.0)
                    break
                if score > best_score:
                    best_score = score
                    entering, ent_sign = j, (1.0 if not self.at_upper[j] else -1.0)
            if entering < 0:
                return "optimal"

            delta = self.B_inv @ self.M[:, entering]
            step = ent_sign * delta  # x_B changes by -step * theta

            theta = self.up[entering] - self.lo[entering]  # bound-flip budget
            leaving = -1
            leave_to_upper = False
            for i in range(m):
                bi = self.basis[i]
                if step[i] > PIVOT_TOL:
                    room = (x_b[i] - self.lo[bi]) / step[i]
                    hit_upper = False
                elif step[i] < -PIVOT_TOL:
                    if math.isinf(self.up[bi]):
                        continue
                    room = (x_b[i] - self.up[bi]) / step[i]
                    hit_upper = True
                else:
                    continue
                if room < 0.0:
                    room = 0.0
                if room < theta - 1e-12:
                    theta = room
                    leaving = i
                    leave_to_upper = hit_upper
                elif leaving >= 0 and abs(room - theta) <= 1e-12 and bi < self.basis[leaving]:
                    leaving = i  # smallest-index tie-break keeps Bland's rule honest
                    leave_to_upper = hit_upper

            if math.isinf(theta):
                return "unbounded"
            self.degenerate_run = self.degenerate_run + 1 if theta <= PIVOT_TOL else 0

            if leaving < 0:
                # bound flip: entering slides to its other bound
                x_b = x_b - step * theta
                self.at_upper[entering] = not self.at_upper[entering]
                continue

            leaving_var = self.basis[leaving]
            x_b = x_b - step * theta
            entering_value = (self.up[entering] if self.at_upper[entering] else self.lo[entering]) + ent_sign * theta
            self.basis[leaving] = entering
            is_basic[entering] = True
            is_basic[leaving_var] = False
            self.at_upper[leaving_var] = leave_to_upper
            x_b[leaving] = entering_value

            # eta update of the basis inverse
            piv = delta[leaving]
            if abs(piv) < PIVOT_TOL:
                self.refactor()
                x_b = self.basic_values()
                continue
            row = self.B_inv[leaving] / piv
            self.B_inv -= np.outer(delta, row)
            self.B_inv[leaving] = row


def simplex_solve(problem: SimplexProblem) -> SimplexResult:
    """Optimal basic solution of the boxed >=-form LP, or INFEASIBLE/UNBOUNDED."""
    A = np.asarray(problem.rows, dtype=np.float64)
    if A.ndim != 2:
        A = np.atleast_2d(A)
    b = np.asarray(problem.rhs, dtype=np.float64)
    c = np.asarray(problem.objective, dtype=np.float64)
    lo_s = np.asarray(problem.lower, dtype=np.float64)
    up_s = np.asarray(problem.upper, dtype=np.float64)
    m, n = A.shape if A.size else (0, c.shape[0])

    if m == 0:
        x = np.where(c >= 0, lo_s, up_s)
        if np.isinf(x).any():
            return SimplexResult("unbounded", None, None)
        return SimplexResult("optimal", x, float(c @ x))

    # columns: structural | surplus
    M = np.hstack([A, -np.eye(m)])
    cost = np.concatenate([c, np.zeros(m)])
    lo = np.concatenate([lo_s, np.zeros(m)])
    up = np.concatenate([up_s, np.full(m, math.inf)])
    ncols = n + m

    at_upper = np.zeros(ncols, dtype=bool)
    at_upper[:n] = np.isfinite(up_s)  # prefer the all-upper corner
    for j in range(n):
        if not np.isfinite(up_s[j]) and not np.isfinite(lo_s[j]):
            raise ValueError("free variables are not supported")

    x_n = np.where(at_upper, up, lo)
    surplus_values = A @ x_n[:n] - b
    if (surplus_values >= -FEAS_TOL).all():
        basis = list(range(n, n + m))
        tab = _Tableau(M, b, cost, lo, up, basis, at_upper)
    else:
        # phase 1 with artificials covering the violated rows
        resid = b - A @ x_n[:n]  # surplus at lower (0)
        signs = np.where(resid >= 0, 1.0, -1.0)
        M1 = np.hstack([M, np.diag(signs)])
        lo1 = np.concatenate([lo, np.zeros(m)])
        up1 = np.concatenate([up, np.full(m, math.inf)])
        cost1 = np.concatenate([np.zeros(ncols), np.ones(m)])
        at_upper1 = np.concatenate([at_upper, np.zeros(m, dtype=bool)])
        basis = list(range(ncols, ncols + m))
        tab = _Tableau(M1, b, cost1, lo1, up1, basis, at_upper1)
        status = tab.optimize()
        if status != "optimal":
            raise RuntimeError("phase 1 cannot be unbounded")
        if float(cost1[tab.basis] @ tab.basic_values()) > 1e-7:
            return SimplexResult("infeasible", None, None)
        # freeze artificials at zero and swap in the real objective
        tab.up[ncols:] = 0.0
        tab.cost = np.concatenate([cost, np.zeros(m)])
        tab.degenerate_run = 0

    status = tab.optimize()
    if status != "optimal":
        return SimplexResult(status, None, None)
    x_full = tab.solution()
    x = x_full[:n].copy()
    np.clip(x, lo_s, np.where(np.isfinite(up_s), up_s, np.inf), out=x)
    residual = A @ x - b
    if residual.min(initial=0.0) < -1e-7:
        raise RuntimeError(f"simplex returned an infeasible point (residual {residual.min():.3g})")
    return SimplexResult("optimal", x, float(c @ x))
