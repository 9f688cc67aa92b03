"""Seeded instance families used by the test suite and the sweep scripts."""

from __future__ import annotations

import numpy as np

from .constructions import random_hub_digraph, random_min_semidegree
from .digraph import Digraph


def small_digraph(seed: int, max_n: int = 12) -> Digraph:
    """Random digraph with ``n <= max_n`` and minimum semidegree at least 1."""
    rng = np.random.default_rng([seed, 7])
    n = int(rng.integers(3, max_n + 1))
    d = int(rng.integers(1, (n - 1) // 2 + 1))
    d = min(d, 2)
    p = float(rng.choice([0.0, 0.1, 0.25]))
    return random_min_semidegree(n, d, p, seed)


def claims_digraph(seed: int, max_n: int = 200) -> Digraph:
    """Mixed-size digraph with ``d in {1,2,3}`` and lopsided high-degree hubs.

    About one in sixteen of these has an ordered gap above ``m/(2d+1)``.
    """
    rng = np.random.default_rng(seed)
    d = int(rng.integers(1, 4))
    n = int(rng.integers(2 * d + 3, max_n + 1))
    return random_hub_digraph(
        n,
        d,
        hubs=int(rng.choice([0, 1, 1, 2, 3])),
        p=float(rng.choice([0.0, 0.0, 0.01])),
        skew=float(rng.uniform(0.8, 1.0)),
        reach=float(rng.uniform(0.5, 1.0)),
        seed=seed,
    )


def pipeline_digraph(seed: int) -> Digraph:
    """Moderate instance that exercises stars, ``U`` and a non-empty ``X``."""
    rng = np.random.default_rng([seed, 3])
    d = int(rng.integers(1, 4))
    n = int(rng.integers(30, 121))
    return random_hub_digraph(n, d, hubs=int(rng.integers(0, 3)), p=0.02, seed=seed)
