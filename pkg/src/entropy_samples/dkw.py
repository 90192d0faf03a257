"""
Sample-size estimation from the Dvoretzky-Kiefer-Wolfowitz inequality.

With Massart's constant, P{sup|F_n - F| > eps} <= 2 exp(-2 n eps^2). Setting
the right side to 1 - confidence gives the number of iid events needed to
pin the empirical CDF within ``eps``. Choosing eps as a quarter of the
smallest tracked probability gap makes adjacent ranks distinguishable, and
dividing by the probability of the rarest tracked rank turns an event count
into a total observation count.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, DomainError
from .zipf_model import (
    RankDistribution,
    ZipfParams,
    build_distribution,
    coarse_gap,
    derive_params,
    min_gap,
    top_quantile_rank,
)

# ln(2/(1-zeta)) diverges as zeta -> 1; refuse instead of producing huge counts
MAX_CONFIDENCE = 1.0 - 1e-12


@dataclass(frozen=True)
class Mode:
    """How the probability gap is chosen.

    ``full`` uses the last two ranks, ``coarse`` the ranks ``mc - 1`` and
    ``mc``, and ``top_quantile`` behaves like ``coarse`` at ``ceil(q * M)``.
    """

    kind: str = "full"
    mc: int | None = None
    q: float | None = None

    def __post_init__(self):
        if self.kind == "full":
            if self.mc is not None or self.q is not None:
                raise DomainError("full mode takes neither mc nor q")
        elif self.kind == "coarse":
            if self.mc is None or self.q is not None:
                raise DomainError("coarse mode requires mc and no q")
        elif self.kind == "top_quantile":
            if self.q is None or self.mc is not None:
                raise DomainError("top_quantile mode requires q and no mc")
        else:
            raise DomainError(f"unknown mode {self.kind!r}")

    @classmethod
    def full(cls):
        return cls("full")

    @classmethod
    def coarse(cls, mc):
        return cls("coarse", mc=int(mc))

    @classmethod
    def top_quantile(cls, q):
        return cls("top_quantile", q=float(q))

    def __str__(self):
        if self.kind == "coarse":
            return f"coarse({self.mc})"
        if self.kind == "top_quantile":
            return f"top_quantile({self.q!r})"
        return "full"


@dataclass(frozen=True)
class SampleEstimate:
    M: int
    confidence: float
    mode: Mode
    params: ZipfParams
    rank_lo: int
    delta0: float
    epsilon: float
    n_real: float
    n0: int
    p0: float
    N0_real: float
    N0: int


def _check_confidence(confidence):
    if not 0 < confidence < 1:
        raise DomainError(f"confidence {confidence} must lie in (0, 1)")
    if confidence > MAX_CONFIDENCE:
        raise DomainError(f"confidence {confidence} too close to 1")


def dkw_sample_size(epsilon: float, confidence: float) -> float:
    """Real-valued n with 2 exp(-2 n eps^2) = 1 - confidence."""
    if not epsilon > 0:
        raise DomainError(f"deviation bound {epsilon} must be positive")
    _check_confidence(confidence)
    return math.log(2.0 / (1.0 - confidence)) / (2.0 * epsilon * epsilon)


def dkw_sample_count(epsilon: float, confidence: float) -> int:
    return math.ceil(dkw_sample_size(epsilon, confidence))


def epsilon_from_gap(delta0: float) -> float:
    if not delta0 > 0:
        raise DomainError(f"probability gap {delta0} must be positive")
    return delta0 / 4.0


def event_count_size(delta0: float, confidence: float) -> float:
    """(8 / delta0^2) ln(2 / (1 - confidence)), before rounding."""
    if not 0 < delta0 < 1:
        raise DomainError(f"probability gap {delta0} must lie in (0, 1)")
    return dkw_sample_size(epsilon_from_gap(delta0), confidence)


def event_count_bound(delta0: float, confidence: float) -> int:
    return math.ceil(event_count_size(delta0, confidence))


def observation_count(n0: int, p0: float) -> int:
    """Total draws needed to see ``n0`` events of probability ``p0``."""
    if n0 < 1:
        raise DomainError(f"event count {n0} must be at least 1")
    if not 0 < p0 < 1:
        raise DomainError(f"reference probability {p0} must lie in (0, 1)")
    return math.ceil(n0 / p0)


def estimate_samples(M: int, confidence: float, mode: Mode | None = None) -> SampleEstimate:
    """Minimum number of observations to estimate entropy over ``M`` ranked symbols.

    Examples
    --------
    >>> est = estimate_samples(3, 0.75, Mode.coarse(2))
    >>> est.n0, est.N0
    (334, 1151)
    """
    mode = mode or Mode.full()
    _check_confidence(confidence)
    params = derive_params(M)
    dist = build_distribution(params)
    if mode.kind == "full":
        gap = min_gap(dist)
    elif mode.kind == "coarse":
        gap = coarse_gap(dist, mode.mc)
    else:
        gap = coarse_gap(dist, top_quantile_rank(params.M, mode.q))

    n_real = event_count_size(gap.delta0, confidence)
    n0 = math.ceil(n_real)
    N0 = observation_count(n0, gap.p0)
    return SampleEstimate(
        M=params.M, confidence=confidence, mode=mode, params=params,
        rank_lo=gap.rank_lo, delta0=gap.delta0,
        epsilon=epsilon_from_gap(gap.delta0), n_real=n_real, n0=n0,
        p0=gap.p0, N0_real=n0 / gap.p0, N0=N0,
    )


def empirical_cdf_deviation(sample, dist: RankDistribution) -> float:
    """Kolmogorov distance between a sample's empirical CDF and the model CDF.

    ``sample`` holds symbol ids 0..M-1, id ``k`` standing for rank ``k + 1``.
    The supremum is taken over the M rank atoms, where it is attained for a
    discrete distribution.
    """
    symbols = np.asarray(getattr(sample, "symbols", sample))
    if symbols.size == 0:
        raise DomainError("sample must be nonempty")
    bad = (symbols < 0) | (symbols >= dist.M)
    if bad.any():
        offending = symbols[np.argmax(bad)]
        raise DataError(f"symbol {offending} outside alphabet of size {dist.M}")
    counts = np.bincount(symbols.astype(np.int64), minlength=dist.M)
    ecdf = np.cumsum(counts) / symbols.size
    return float(np.max(np.abs(ecdf - dist.cdf)))
