"""Sample sizes for estimating the entropy of ranked symbolic sequences."""

__version__ = "0.1.0"

from .dkw import (
    Mode,
    SampleEstimate,
    dkw_sample_count,
    dkw_sample_size,
    empirical_cdf_deviation,
    epsilon_from_gap,
    estimate_samples,
    event_count_bound,
    event_count_size,
    observation_count,
)
from .entropy import (
    NgramTable,
    SymbolSequence,
    build_ngram_table,
    empirical_distribution,
    ngram_entropy,
    plugin_entropy,
    shannon_entropy,
)
from .errors import DataError, DomainError
from .simulator import (
    MseCurve,
    SimConfig,
    dkw_violation_rate,
    log_grid,
    mse_curve,
    sample_sequence,
)
from .zipf_model import (
    GapResult,
    RankDistribution,
    ZipfParams,
    build_distribution,
    coarse_gap,
    derive_params,
    li_lambda,
    min_gap,
    rank_probability,
    top_quantile_rank,
    word_length_probability,
    zipf_distribution,
)
