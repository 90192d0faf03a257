import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from entropy_samples import (
    DataError,
    DomainError,
    Mode,
    RankDistribution,
    SymbolSequence,
    dkw_sample_count,
    dkw_sample_size,
    empirical_cdf_deviation,
    epsilon_from_gap,
    estimate_samples,
    event_count_bound,
    event_count_size,
    observation_count,
    sample_sequence,
    zipf_distribution,
)
from entropy_samples.simulator import substream

from oracles import observation_count as oracle_counts


def test_dkw_sample_count_worked_example():
    n = dkw_sample_size(4.88e-4 / 4, 0.95)
    assert n == pytest.approx(1.24e8, rel=1e-2)
    assert dkw_sample_count(4.88e-4 / 4, 0.95) == math.ceil(n)


def test_dkw_sample_count_exact():
    assert dkw_sample_count(0.5, 1 - 2 / math.e) == 2


@given(st.floats(1e-4, 10), st.floats(0.01, 0.999))
def test_halving_epsilon_quadruples(eps, zeta):
    assert dkw_sample_size(eps / 2, zeta) == pytest.approx(4 * dkw_sample_size(eps, zeta), rel=1e-12)


@pytest.mark.parametrize("eps, zeta", [(0, 0.5), (-1, 0.5), (0.1, 0), (0.1, 1), (0.1, 1.2),
                                       (0.1, 1 - 1e-13)])
def test_dkw_sample_count_domain(eps, zeta):
    with pytest.raises(DomainError):
        dkw_sample_count(eps, zeta)


def test_epsilon_from_gap():
    assert epsilon_from_gap(0.223) == pytest.approx(0.05575, rel=1e-14)
    assert epsilon_from_gap(4) == 1
    assert epsilon_from_gap(4.88e-4) == pytest.approx(1.22e-4, rel=1e-14)
    for bad in (0, -0.1):
        with pytest.raises(DomainError):
            epsilon_from_gap(bad)


def test_event_count_bound_worked_examples():
    # the printed gap 0.223 is rounded; the unrounded gap gives 333.97
    assert event_count_size(0.2231847335137277, 0.75) == pytest.approx(334, abs=0.5)
    assert event_count_bound(0.2231847335137277, 0.75) == 334
    assert event_count_bound(0.223, 0.75) == 335
    assert event_count_size(4.88e-4, 0.95) == pytest.approx(1.24e8, rel=1e-2)


@given(st.floats(1e-4, 0.999), st.floats(0.01, 0.999))
def test_event_count_composition(delta, zeta):
    assert event_count_bound(delta, zeta) == dkw_sample_count(epsilon_from_gap(delta), zeta)
    assert event_count_size(delta, zeta) == pytest.approx(
        8 / delta ** 2 * math.log(2 / (1 - zeta)), rel=1e-12)


@given(st.floats(1e-3, 0.49), st.floats(0.01, 0.999))
def test_quartering_law(delta, zeta):
    big, small = event_count_bound(2 * delta, zeta), event_count_bound(delta, zeta)
    assert abs(big - small / 4) <= 1


def test_event_count_bound_domain():
    for delta in (0, 1, 1.5):
        with pytest.raises(DomainError):
            event_count_bound(delta, 0.9)


def test_observation_count():
    assert observation_count(334, 0.29027575833156427) == 1151
    assert observation_count(100, 1 - 1e-12) in (100, 101)
    n_real, N0 = oracle_counts(26, 0.95, 26)
    assert observation_count(math.ceil(float(n_real)), 0.01251623039791839) == N0
    for p0 in (0, 1, -0.5):
        with pytest.raises(DomainError):
            observation_count(10, p0)
    with pytest.raises(DomainError):
        observation_count(0, 0.5)


def test_estimate_samples_worked_example_2():
    est = estimate_samples(3, 0.75, Mode.coarse(2))
    assert est.delta0 == pytest.approx(0.223, abs=1e-3)
    assert est.n0 == 334
    assert est.N0 == 1151
    assert est.rank_lo == 2


def test_estimate_samples_worked_example_1():
    est = estimate_samples(26, 0.95)
    n_real, N0 = oracle_counts(26, 0.95, 26)
    assert est.delta0 == pytest.approx(4.88e-4, rel=1e-2)
    assert est.n_real == pytest.approx(1.24e8, rel=1e-2)
    assert est.n_real == pytest.approx(float(n_real), rel=1e-9)
    assert est.N0 == N0


def test_estimate_samples_smallest_alphabet():
    est = estimate_samples(2, 0.5)
    assert est.N0 >= est.n0 >= 1
    assert est.epsilon == est.delta0 / 4
    assert 0 < est.p0 < 1


def test_estimate_samples_top_quantile():
    est = estimate_samples(26, 0.9, Mode.top_quantile(0.25))
    assert est.rank_lo == 7
    assert est == estimate_samples(26, 0.9, Mode.top_quantile(0.25))
    assert est.N0 < estimate_samples(26, 0.9).N0


def test_estimate_samples_errors():
    with pytest.raises(DomainError):
        estimate_samples(1, 0.9)
    with pytest.raises(DomainError):
        estimate_samples(5, 0.9, Mode.coarse(6))
    with pytest.raises(DomainError):
        estimate_samples(5, 0.9, Mode.top_quantile(0))
    with pytest.raises(DomainError):
        estimate_samples(5, 1.0)


def test_mode_validation():
    with pytest.raises(DomainError):
        Mode("coarse")
    with pytest.raises(DomainError):
        Mode("full", mc=3)
    with pytest.raises(DomainError):
        Mode("bogus")


@given(st.integers(2, 300), st.floats(0.01, 0.99), st.floats(0.01, 0.99))
def test_monotone_in_confidence(M, z1, z2):
    lo, hi = sorted((z1, z2))
    assert estimate_samples(M, lo).N0 <= estimate_samples(M, hi).N0


@pytest.mark.parametrize("zeta", [0.5, 0.95])
def test_monotone_in_alphabet(zeta):
    counts = [estimate_samples(M, zeta).N0 for M in range(2, 501)]
    assert all(b >= a for a, b in zip(counts, counts[1:]))


@given(st.integers(2, 500), st.floats(0.01, 0.999))
def test_coarse_at_full_alphabet_equals_full(M, zeta):
    full = estimate_samples(M, zeta)
    coarse = estimate_samples(M, zeta, Mode.coarse(M))
    assert full.__dict__ | {"mode": None} == coarse.__dict__ | {"mode": None}


@given(st.integers(2, 200), st.floats(0.01, 0.999))
def test_estimate_invariants(M, zeta):
    est = estimate_samples(M, zeta)
    assert est.N0 >= est.n0 >= 1
    assert est.n0 == math.ceil(8 / est.delta0 ** 2 * math.log(2 / (1 - zeta)))
    assert est.N0 == math.ceil(est.n0 / est.p0)


def test_cdf_deviation_matched_frequencies():
    dist = RankDistribution([0.5, 0.3, 0.2])
    seq = SymbolSequence([0] * 5 + [1] * 3 + [2] * 2, 3)
    assert empirical_cdf_deviation(seq, dist) <= 1 / 10


def test_cdf_deviation_single_symbol():
    dist = zipf_distribution(2)
    assert empirical_cdf_deviation([0], dist) == pytest.approx(1 - dist.probs[0], abs=1e-15)


def test_cdf_deviation_out_of_alphabet():
    with pytest.raises(DataError, match="symbol 3"):
        empirical_cdf_deviation(np.array([0, 1, 3]), zipf_distribution(3))
    with pytest.raises(DomainError):
        empirical_cdf_deviation([], zipf_distribution(3))


def test_cdf_deviation_large_samples():
    dist = zipf_distribution(3)
    ok = sum(empirical_cdf_deviation(sample_sequence(dist, 10 ** 5, substream(7, t)), dist) < 0.01
             for t in range(100))
    assert ok >= 95
