from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class EngineConfig:
    """Knobs for :func:`disect.engine.optimal_bisect`.

    ``trials=None`` selects ``max(200, ceil(8 ln(1/delta) / epsilon^2))``,
    capped at ``max_auto_trials``. ``polish`` runs a swap hill climb over
    ``Y`` on the sampled bisection (skipped above ``polish_max_n`` vertices).
    """

    epsilon: float = 0.02
    trials: int | None = None
    seed: int = 0
    threshold: int | None = None
    dense_constant: float = 256
    gap_budget: int = 10**7
    mitm_max: int = 40
    delta: float = 1e-3
    max_auto_trials: int = 2000
    refine_restarts: int = 20
    threads: int = 1
    polish: bool = True
    polish_max_n: int = 4000

    def __post_init__(self):
        if not 0 < self.epsilon < 0.25:
            raise ValueError(f"epsilon must lie in (0, 1/4), got {self.epsilon}")
        if self.trials is not None and self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @property
    def resolved_trials(self) -> int:
        if self.trials is not None:
            return self.trials
        auto = max(200, math.ceil(8 * math.log(1 / self.delta) / self.epsilon**2))
        return min(auto, self.max_auto_trials)
