"""
Normalized Zipf-Mandelbrot-Li rank model.

For an alphabet of M symbols the rank law is

    p(r) = gamma' / (r + beta) ** alpha,    r = 1..M

with alpha, beta, gamma derived from M by Li's random-typing argument and
gamma' = gamma / kappa chosen so that the M probabilities sum to one.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ZipfParams:
    M: int
    alpha: float
    beta: float
    gamma: float
    kappa: float
    gamma_prime: float


@dataclass(frozen=True)
class RankDistribution:
    """Monotone rank-probability vector.

    ``probs[i]`` holds the probability of rank ``i + 1``; use :meth:`p` for
    1-based access. ``params`` is ``None`` for vectors built directly rather
    than from the model.
    """

    probs: np.ndarray
    params: ZipfParams | None = None
    cdf: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        probs = np.array(self.probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size == 0:
            raise DomainError("probabilities must be a nonempty 1-D vector")
        if np.any(probs <= 0):
            raise DomainError("rank probabilities must be positive")
        if abs(probs.sum() - 1.0) > 1e-9:
            raise DomainError("rank probabilities must sum to 1")
        if np.any(np.diff(probs) >= 0):
            raise DomainError("rank probabilities must be strictly decreasing")
        probs.setflags(write=False)
        cdf = np.cumsum(probs)
        cdf.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "cdf", cdf)

    @property
    def M(self) -> int:
        return int(self.probs.size)

    def p(self, r: int) -> float:
        if not 1 <= r <= self.M:
            raise DomainError(f"rank {r} outside [1, {self.M}]")
        return float(self.probs[r - 1])


@dataclass(frozen=True)
class GapResult:
    delta0: float
    rank_lo: int
    p0: float


def _check_alphabet(M):
    if isinstance(M, bool) or int(M) != M:
        raise DomainError(f"alphabet size must be an integer, got {M!r}")
    if M < 2:
        raise DomainError("alphabet size must be at least 2")
    return int(M)


def _rank_terms(M, alpha, beta):
    r = np.arange(1, M + 1, dtype=np.float64)
    return (r + beta) ** -alpha


def derive_params(M: int) -> ZipfParams:
    """Model constants for an alphabet of ``M`` symbols.

    kappa is the finite sum over ranks 1..M, so the M probabilities are
    normalized exactly.
    """
    M = _check_alphabet(M)
    alpha = math.log2(M + 1) / math.log2(M)
    beta = M / (M + 1)
    gamma = M ** (alpha - 1) / (M - 1) ** alpha
    kappa = float(gamma * _rank_terms(M, alpha, beta).sum())
    return ZipfParams(M=M, alpha=alpha, beta=beta, gamma=gamma, kappa=kappa,
                      gamma_prime=gamma / kappa)


def rank_probability(params: ZipfParams, r: int) -> float:
    if not 1 <= r <= params.M:
        raise DomainError(f"rank {r} outside [1, {params.M}]")
    return params.gamma_prime / (r + params.beta) ** params.alpha


def build_distribution(params: ZipfParams) -> RankDistribution:
    probs = params.gamma_prime * _rank_terms(params.M, params.alpha, params.beta)
    return RankDistribution(probs=probs, params=params)


def zipf_distribution(M: int) -> RankDistribution:
    """Shorthand for ``build_distribution(derive_params(M))``."""
    return build_distribution(derive_params(M))


def li_lambda(M: int) -> float:
    """Normalizing constant of the word-length law, (M+1)^2 / M."""
    if M < 1:
        raise DomainError("alphabet size must be at least 1")
    return (M + 1) ** 2 / M


def word_length_probability(M: int, L: int) -> float:
    """Probability of one particular random word of length ``L``."""
    if M < 1 or L < 1:
        raise DomainError("alphabet size and word length must be positive")
    return float(M + 1) ** -L / M


def _gap_at(dist, r):
    return GapResult(delta0=float(dist.probs[r - 2] - dist.probs[r - 1]),
                     rank_lo=r, p0=float(dist.probs[r - 1]))


def min_gap(dist: RankDistribution) -> GapResult:
    """Smallest consecutive probability gap.

    For the rank law this is always the gap between ranks M-1 and M, so no
    scan is performed.
    """
    if dist.M < 2:
        raise DomainError("alphabet size must be at least 2")
    return _gap_at(dist, dist.M)


def coarse_gap(dist: RankDistribution, Mc: int) -> GapResult:
    """Gap between ranks ``Mc - 1`` and ``Mc`` of the full distribution.

    Probabilities are not renormalized over the truncated alphabet.
    """
    if not 2 <= Mc <= dist.M:
        raise DomainError(f"effective alphabet size Mc={Mc} outside [2, {dist.M}]")
    return _gap_at(dist, int(Mc))


def top_quantile_rank(M: int, q: float) -> int:
    """Rank bounding the top fraction ``q`` of the alphabet, ceil(q*M) in [2, M]."""
    M = _check_alphabet(M)
    if not 0 < q <= 1:
        raise DomainError(f"quantile q={q} must lie in (0, 1]")
    # round first so e.g. 0.07 * 100 does not ceil to 8
    return min(M, max(2, math.ceil(round(q * M, 9))))
