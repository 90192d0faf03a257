"""
Monte Carlo check of the sample-size estimate.

Every (grid point, trial) pair draws from its own substream, keyed by the
master seed and the pair's indices, so results do not depend on how trials
are scheduled across workers.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dkw import Mode, empirical_cdf_deviation, estimate_samples
from .entropy import SymbolSequence, plugin_entropy, shannon_entropy
from .errors import DomainError
from .zipf_model import RankDistribution, zipf_distribution

DEFAULT_ENSEMBLE = 200
DEFAULT_GRID_POINTS = 30


def substream(seed, *keys) -> np.random.SeedSequence:
    """Independent child stream of ``seed`` identified by integer ``keys``."""
    return np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))


def sample_sequence(dist: RankDistribution, n: int, stream_seed) -> SymbolSequence:
    """``n`` iid symbols by inverse-CDF lookup; symbol ``k`` has rank ``k + 1``.

    ``stream_seed`` is an int or a :class:`numpy.random.SeedSequence`.
    """
    if n < 1:
        raise DomainError(f"sample size {n} must be at least 1")
    rng = np.random.default_rng(stream_seed)
    u = rng.random(int(n))
    idx = np.searchsorted(dist.cdf, u, side="right")
    # cdf[-1] may round to just below 1
    np.minimum(idx, dist.M - 1, out=idx)
    return SymbolSequence(idx, dist.M)


def log_grid(lo: int, hi: int, points: int) -> list[int]:
    """Integer grid, log-spaced between ``lo`` and ``hi`` with duplicates dropped."""
    return _grid(lo, hi, points, "log")


def lin_grid(lo: int, hi: int, points: int) -> list[int]:
    return _grid(lo, hi, points, "lin")


def _grid(lo, hi, points, spacing):
    if lo < 1 or hi < lo or points < 1:
        raise DomainError(f"invalid grid {lo}..{hi} with {points} points")
    if points == 1:
        return [int(lo)]
    if spacing == "log":
        raw = np.geomspace(lo, hi, points)
    elif spacing == "lin":
        raw = np.linspace(lo, hi, points)
    else:
        raise DomainError(f"grid spacing must be 'log' or 'lin', got {spacing!r}")
    return sorted(set(int(round(x)) for x in raw))


@dataclass(frozen=True)
class SimConfig:
    M: int
    confidence: float
    mode: Mode = field(default_factory=Mode.full)
    ngram_order: int = 1
    base: object = 2
    n_grid: tuple = ()
    ensemble: int = DEFAULT_ENSEMBLE
    seed: int = 0

    def __post_init__(self):
        grid = tuple(int(n) for n in self.n_grid)
        object.__setattr__(self, "n_grid", grid)
        if self.ngram_order < 1:
            raise DomainError("N-gram order must be at least 1")
        if self.ensemble < 1:
            raise DomainError("ensemble must be at least 1")
        if grid and grid[0] < self.ngram_order:
            raise DomainError("every grid point must be at least the N-gram order")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise DomainError("grid must be strictly increasing")
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class MsePoint:
    n: int
    mse: float
    mean_estimate: float


@dataclass(frozen=True)
class MseCurve:
    config: SimConfig
    true_entropy: float
    points: tuple
    n0_marker: int


def default_grid(n0: int, points: int = DEFAULT_GRID_POINTS) -> list[int]:
    return log_grid(10, 10 * n0, points)


def _run(fn, tasks, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


def mse_curve(config: SimConfig, workers: int = 1) -> MseCurve:
    """Ensemble MSE of the plug-in entropy against the model entropy.

    For iid draws the conditional N-gram entropy equals the single-symbol
    entropy, so that is the reference for every order. An empty
    ``config.n_grid`` is replaced by :func:`default_grid`.
    """
    dist = zipf_distribution(config.M)
    estimate = estimate_samples(config.M, config.confidence, config.mode)
    if not config.n_grid:
        config = SimConfig(**{**config.__dict__, "n_grid": tuple(default_grid(estimate.N0))})
    h_true = shannon_entropy(dist.probs, config.base)

    def trial(task):
        g, t = task
        seq = sample_sequence(dist, config.n_grid[g], substream(config.seed, g, t))
        return plugin_entropy(seq, config.ngram_order, config.base)

    tasks = [(g, t) for g in range(len(config.n_grid)) for t in range(config.ensemble)]
    estimates = np.array(_run(trial, tasks, workers)).reshape(len(config.n_grid), config.ensemble)
    points = []
    for n, row in zip(config.n_grid, estimates):
        points.append(MsePoint(n=n, mse=float(np.mean((row - h_true) ** 2)),
                               mean_estimate=float(np.mean(row))))
    return MseCurve(config=config, true_entropy=h_true, points=tuple(points),
                    n0_marker=estimate.N0)


def dkw_violation_rate(dist: RankDistribution, n: int, epsilon: float, trials: int,
                       seed: int = 0, workers: int = 1) -> float:
    """Fraction of trials whose empirical CDF strays more than ``epsilon`` from the model."""
    if not epsilon > 0:
        raise DomainError(f"epsilon {epsilon} must be positive")
    if trials < 1:
        raise DomainError("trials must be at least 1")

    def trial(t):
        seq = sample_sequence(dist, n, substream(seed, t))
        return empirical_cdf_deviation(seq, dist) > epsilon

    return sum(_run(trial, range(trials), workers)) / trials
