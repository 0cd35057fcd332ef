"""Run configuration shared by the solvers and the CLI."""
from __future__ import annotations

import os
from dataclasses import dataclass, field


def _threads_from_env() -> int:
    raw = os.environ.get("MINPATH_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"MINPATH_THREADS must be an integer, got {raw!r}") from None
    return max(1, value)


@dataclass(frozen=True)
class Config:
    """Pipeline knobs; the diameter bound is tied to epsilon as delta = 1/2 - epsilon."""

    epsilon: float = 0.1
    tolerance: float = 1e-7
    strategy: str = "ball_carving"
    mode: str = "strict"
    seed: int = 0
    max_cuts: int | None = None
    exact_limit_m: int = 15
    threads: int = field(default_factory=_threads_from_env)

    def __post_init__(self):
        if not 0.0 < self.epsilon < 0.5:
            raise ValueError(f"epsilon must be in (0, 0.5), got {self.epsilon}")
        if not 0.0 < self.tolerance <= 1e-3:
            raise ValueError(f"tolerance must be in (0, 1e-3], got {self.tolerance}")
        if self.strategy not in ("ball_carving", "kpr_chop"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.mode not in ("strict", "repair"):
            raise ValueError(f"mode must be 'strict' or 'repair', got {self.mode!r}")

    @property
    def delta(self) -> float:
        return 0.5 - self.epsilon
