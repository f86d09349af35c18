"""Analytics-independent validators of the early-window branch probabilities.

Two routes that never touch the closed-form amplitude expressions:

* a fourth-order Runge-Kutta integration of the classical rate equations
  for the ladder populations, and
* a quantum-jump Monte Carlo sampler of the full two-pulse protocol that
  draws exponential waiting times for both emissions, applies the g<->B
  swap at the pulse, and bins each trajectory by its four-bit emission
  pattern (early-B, early-X, late-B, late-X).

Both are deterministic: the sampler is keyed by a 64-bit seed through a
counter-based generator (Philox), with per-block streams derived by a
splitmix-style scramble so totals do not depend on how many workers run.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cascade import DecayParams

POPULATION_SUM_ATOL = 1e-9
TRIALS_PER_BLOCK = 1 << 16

PATTERN_SURVIVED = 0b0000   # swapped B -> g at the pulse, no photons at all
PATTERN_SPLIT = 0b1001      # early B photon, late X photon
PATTERN_FULL_EARLY = 0b1111 # full early cascade, re-excited, full late cascade
IDEAL_PATTERNS = (PATTERN_SURVIVED, PATTERN_SPLIT, PATTERN_FULL_EARLY)


@dataclass(frozen=True)
class Populations:
    """Ladder level occupations (biexciton, exciton, ground)."""

    p_b: float
    p_x: float
    p_g: float

    def __post_init__(self):
        for name, value in (("p_b", self.p_b), ("p_x", self.p_x), ("p_g", self.p_g)):
            if value < -POPULATION_SUM_ATOL or value > 1.0 + POPULATION_SUM_ATOL:
                raise ValueError(f"{name} outside [0, 1]: {value}")
        total = self.p_b + self.p_x + self.p_g
        if abs(total - 1.0) > POPULATION_SUM_ATOL:
            raise ValueError(f"populations must sum to 1, got {total:.12g}")


@dataclass(frozen=True)
class PatternCounts:
    """Trajectory tallies per four-bit emission pattern."""

    counts: tuple[int, ...]
    trials: int

    def __post_init__(self):
        if len(self.counts) != 16:
            raise ValueError("need one counter per four-bit pattern")
        if sum(self.counts) != self.trials:
            raise ValueError("pattern counts do not sum to the number of trials")

    def frequency(self, pattern: int) -> float:
        return self.counts[pattern] / self.trials

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.counts) if c > 0)


def rate_equation_populations(p: DecayParams, step: float) -> Populations:
    """Integrate dP_B/dt = -gamma_b P_B, dP_X/dt = gamma_b P_B - gamma_x P_X
    from (1, 0, 0) to t = delta_t with classical RK4."""
    if step <= 0.0:
        raise ValueError(f"step must be positive, got {step}")
    if p.delta_t == 0.0:
        return Populations(1.0, 0.0, 0.0)
    if step > p.delta_t / 10.0:
        raise ValueError(f"step {step} too coarse for delta_t {p.delta_t}; need step <= delta_t/10")

    gb, gx = p.gamma_b, p.gamma_x

    def deriv(pb, px):
        return -gb * pb, gb * pb - gx * px, gx * px

    n_steps = math.ceil(p.delta_t / step)
    h = p.delta_t / n_steps
    pb, px, pg = 1.0, 0.0, 0.0
    for _ in range(n_steps):
        b1, x1, g1 = deriv(pb, px)
        b2, x2, g2 = deriv(pb + 0.5 * h * b1, px + 0.5 * h * x1)
        b3, x3, g3 = deriv(pb + 0.5 * h * b2, px + 0.5 * h * x2)
        b4, x4, g4 = deriv(pb + h * b3, px + h * x3)
        pb += (h / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        px += (h / 6.0) * (x1 + 2.0 * x2 + 2.0 * x3 + x4)
        pg += (h / 6.0) * (g1 + 2.0 * g2 + 2.0 * g3 + g4)
    return Populations(pb, px, pg)


_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    z = (x + _SPLITMIX_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def _block_rng(seed: int, block_index: int) -> np.random.Generator:
    key = _splitmix64((seed & _MASK64) ^ block_index)
    return np.random.Generator(np.random.Philox(key=key))


def _sample_block(p: DecayParams, size: int, seed: int, block_index: int) -> np.ndarray:
    rng = _block_rng(seed, block_index)
    # inverse CDF on (0, 1]: u in [0, 1) gives -log(1 - u) without log(0)
    t_b = -np.log1p(-rng.random(size)) / p.gamma_b
    t_x = -np.log1p(-rng.random(size)) / p.gamma_x
    # pulse at delta_t swaps whichever of {g, B} the trajectory occupies:
    #   still in B  -> dumped to g, nothing else emitted
    #   in X        -> unaffected, X photon lands late
    #   already in g -> re-excited, full late cascade
    patterns = np.where(
        t_b >= p.delta_t,
        PATTERN_SURVIVED,
        np.where(t_b + t_x >= p.delta_t, PATTERN_SPLIT, PATTERN_FULL_EARLY),
    )
    return np.bincount(patterns, minlength=16)


def _worker_count(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("CASCADE_THREADS", "1") or "1")
    return max(1, workers)


def monte_carlo_patterns(
    p: DecayParams, trials: int, seed: int, workers: int | None = None
) -> PatternCounts:
    """Sample the two-pulse protocol ``trials`` times and tally emission patterns.

    The trials are split into fixed-size blocks, each with its own derived
    stream, so the result is a function of (params, trials, seed) only --
    bit-identical for any worker count.
    """
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    n_blocks = math.ceil(trials / TRIALS_PER_BLOCK)
    sizes = [
        min(TRIALS_PER_BLOCK, trials - k * TRIALS_PER_BLOCK) for k in range(n_blocks)
    ]
    workers = _worker_count(workers)
    if workers == 1 or n_blocks == 1:
        blocks = [_sample_block(p, size, seed, k) for k, size in enumerate(sizes)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(
                pool.map(lambda ks: _sample_block(p, ks[1], seed, ks[0]), enumerate(sizes))
            )
    totals = np.sum(blocks, axis=0)
    return PatternCounts(counts=tuple(int(c) for c in totals), trials=trials)
