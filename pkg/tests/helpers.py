"""Shared test utilities: random generators and an independent centroid oracle."""
from __future__ import annotations

import numpy as np

from fuzzynet import (
    InterpretationLevel,
    LevelProfile,
    SystemVariable,
    TrapezoidMF,
    UserVariable,
)

LEVELS = list(InterpretationLevel)


def random_mf(rng: np.random.Generator, min_area2: float = 0.0) -> TrapezoidMF:
    """Random valid trapezoid; optionally enforce 2*area >= min_area2."""
    while True:
        a, b, c, d = np.sort(rng.uniform(0.0, 1.0, 4))
        if (c + d) - (a + b) >= min_area2:
            return TrapezoidMF(float(a), float(b), float(c), float(d))


def random_profile(rng: np.random.Generator, max_levels: int = 5) -> LevelProfile:
    count = int(rng.integers(1, max_levels + 1))
    chosen = rng.choice(len(LEVELS), size=count, replace=False)
    return LevelProfile(tuple((LEVELS[i], random_mf(rng)) for i in sorted(chosen)))


def random_user_var(rng: np.random.Generator, procs: list[str]) -> UserVariable:
    count = int(rng.integers(1, len(procs) + 1))
    chosen = rng.choice(len(procs), size=count, replace=False)
    return UserVariable.of({procs[i]: random_profile(rng) for i in chosen})


def random_system_var(
    rng: np.random.Generator, procs: list[str], ensure_positive: bool = True
) -> SystemVariable:
    count = int(rng.integers(1, len(procs) + 1))
    chosen = rng.choice(len(procs), size=count, replace=False)
    degrees = {procs[i]: float(rng.uniform(0.0, 1.0)) for i in chosen}
    if ensure_positive and all(v == 0.0 for v in degrees.values()):
        degrees[procs[chosen[0]]] = 0.5
    return SystemVariable.of(degrees)


def numeric_centroid(mf: TrapezoidMF, step: float = 1e-4) -> float:
    """Trapezoid-rule integration oracle, independent of the closed form."""
    a, b, c, d = mf.corners
    xs = np.arange(0.0, 1.0 + step / 2.0, step)
    mu = np.zeros_like(xs)
    rise = (xs >= a) & (xs < b)
    if b > a:
        mu[rise] = (xs[rise] - a) / (b - a)
    mu[(xs >= b) & (xs <= c)] = 1.0
    fall = (xs > c) & (xs <= d)
    if d > c:
        mu[fall] = (d - xs[fall]) / (d - c)
    denominator = np.trapezoid(mu, xs)
    if denominator == 0.0:
        return a
    return float(np.trapezoid(mu * xs, xs) / denominator)
