import math

import numpy as np
import pytest

from bosonsim import (
    ConfidenceTrace,
    Distinguishable,
    Hypothesis,
    Input,
    bayesian_confidence,
    estimate_distinguishability,
    first_modes,
    fock_hypothesis,
    full_distribution,
    rand_haar,
    run_validation_trials,
)
from bosonsim.validation import (
    first_passage_time,
    table_sampler,
    write_density_csv,
    write_traces_csv,
)


def test_equal_laws_keep_prior():
    h = Hypothesis("flat", lambda s: 0.5)
    trace = bayesian_confidence([0, 1, 0, 1], h, h, prior=0.3)
    assert np.allclose(trace.xi, 0.3)


def test_zero_alternative_snaps_to_one():
    h0 = Hypothesis("h0", lambda s: 0.5)
    ha = Hypothesis("ha", lambda s: 0.5 if s == 0 else 0.0)
    trace = bayesian_confidence([0, 1, 0], h0, ha, prior=0.5)
    assert trace.xi[1] == 0.5
    assert trace.xi[2] == 1.0
    assert trace.xi[3] == 1.0  # stays pinned


def test_zero_null_snaps_to_zero():
    h0 = Hypothesis("h0", lambda s: 0.5 if s == 0 else 0.0)
    ha = Hypothesis("ha", lambda s: 0.5)
    trace = bayesian_confidence([1, 0], h0, ha, prior=0.5)
    assert trace.xi[1] == 0.0
    assert trace.xi[2] == 0.0


def test_both_zero_is_invalid_data():
    h0 = Hypothesis("h0", lambda s: 0.0)
    ha = Hypothesis("ha", lambda s: 0.0)
    with pytest.raises(ValueError, match="both hypotheses"):
        bayesian_confidence([0], h0, ha)


def test_recursive_equals_closed_form():
    rng = np.random.default_rng(0)
    p0 = {0: 0.2, 1: 0.5, 2: 0.3}
    pa = {0: 0.4, 1: 0.1, 2: 0.5}
    samples = [int(rng.integers(0, 3)) for _ in range(200)]
    prior = 0.37
    trace = bayesian_confidence(
        samples, Hypothesis("h0", p0.get), Hypothesis("ha", pa.get), prior)
    log0 = 0.0
    loga = 0.0
    for t, s in enumerate(samples, start=1):
        log0 += math.log(p0[s])
        loga += math.log(pa[s])
        closed = prior * math.exp(log0) / (
            prior * math.exp(log0) + (1 - prior) * math.exp(loga))
        assert abs(trace.xi[t] - closed) <= 1e-12


def test_trace_bounded_and_long_runs_stable():
    # strong likelihood ratios for thousands of samples underflow any direct
    # product; the trace must stay finite and pinned near 1
    h0 = Hypothesis("h0", lambda s: 0.9)
    ha = Hypothesis("ha", lambda s: 0.1)
    trace = bayesian_confidence([0] * 5000, h0, ha)
    assert np.all(trace.xi >= 0.0) and np.all(trace.xi <= 1.0)
    assert trace.xi[-1] == 1.0


def test_hypothesis_swap_symmetry():
    rng = np.random.default_rng(1)
    p0 = {0: 0.7, 1: 0.3}
    pa = {0: 0.2, 1: 0.8}
    samples = [int(rng.integers(0, 2)) for _ in range(50)]
    h0 = Hypothesis("h0", p0.get)
    ha = Hypothesis("ha", pa.get)
    fwd = bayesian_confidence(samples, h0, ha, prior=0.6)
    rev = bayesian_confidence(samples, ha, h0, prior=0.4)
    assert np.allclose(fwd.xi, 1.0 - rev.xi, atol=1e-12)


def test_confidence_trace_validation():
    with pytest.raises(ValueError):
        ConfidenceTrace(np.array([0.5, 1.2]))
    with pytest.raises(ValueError):
        bayesian_confidence([], Hypothesis("a", lambda s: 1), Hypothesis("b", lambda s: 1), prior=0.0)


def test_first_passage_uses_greater_equal():
    trace = ConfidenceTrace(np.array([0.5, 0.94, 0.95, 0.99]))
    assert first_passage_time(trace, 0.95) == 2
    assert first_passage_time(trace, 0.999) is None


def test_run_validation_trials_deterministic_and_shaped():
    interf = rand_haar(4, seed=50)
    occ = first_modes(2, 4)
    h0 = fock_hypothesis("bosonic", Input(occ), interf)
    ha = fock_hypothesis("distinguishable", Input(occ, Distinguishable()), interf)
    truth = table_sampler(full_distribution(Input(occ), interf))
    r1 = run_validation_trials(5, 40, truth, h0, ha, seed=7)
    r2 = run_validation_trials(5, 40, truth, h0, ha, seed=7)
    for t1, t2 in zip(r1.traces, r2.traces):
        assert np.array_equal(t1.xi, t2.xi)
    assert len(r1.traces) == 5
    assert r1.mean_xi.shape == (41,)
    assert r1.density.shape == (50, 50)
    assert r1.density.sum() == 5 * 41


def test_null_true_data_drifts_up():
    interf = rand_haar(4, seed=51)
    occ = first_modes(2, 4)
    h0 = fock_hypothesis("bosonic", Input(occ), interf)
    ha = fock_hypothesis("distinguishable", Input(occ, Distinguishable()), interf)
    truth = table_sampler(full_distribution(Input(occ), interf))
    result = run_validation_trials(100, 60, truth, h0, ha, seed=11)
    assert result.mean_xi[-1] > result.mean_xi[0]


def test_alternative_true_data_drifts_down():
    interf = rand_haar(4, seed=52)
    occ = first_modes(2, 4)
    h0 = fock_hypothesis("bosonic", Input(occ), interf)
    ha = fock_hypothesis("distinguishable", Input(occ, Distinguishable()), interf)
    truth = table_sampler(full_distribution(Input(occ, Distinguishable()), interf))
    result = run_validation_trials(100, 100, truth, h0, ha, seed=12)
    assert result.mean_xi[-1] < result.mean_xi[0]


def test_estimate_distinguishability_endpoints():
    interf = rand_haar(5, seed=53)
    occ = first_modes(3, 5)
    x_grid = np.linspace(0.0, 1.0, 11)

    bos = table_sampler(full_distribution(Input(occ), interf))
    x_hat, profile = estimate_distinguishability(
        bos(np.random.default_rng(3), 1000), interf, occ, x_grid)
    assert x_hat == 1.0
    assert profile[-1] - profile.max(initial=-np.inf, where=np.arange(11) < 10) > 10

    # the law is flat to first order in x at the distinguishable end, so this
    # endpoint needs more data to resolve
    dis = table_sampler(full_distribution(Input(occ, Distinguishable()), interf))
    x_hat0, _ = estimate_distinguishability(
        dis(np.random.default_rng(3), 20_000), interf, occ, x_grid)
    assert x_hat0 == 0.0


def test_estimate_distinguishability_single_sample_and_empty_grid():
    interf = rand_haar(4, seed=54)
    occ = first_modes(2, 4)
    rng = np.random.default_rng(4)
    sample = table_sampler(full_distribution(Input(occ), interf))(rng, 1)
    x_hat, profile = estimate_distinguishability(sample, interf, occ,
                                                 np.linspace(0.1, 0.9, 5))
    assert np.all(np.isfinite(profile))
    with pytest.raises(ValueError, match="empty"):
        estimate_distinguishability(sample, interf, occ, [])


def test_trace_and_density_csv(tmp_path):
    interf = rand_haar(4, seed=55)
    occ = first_modes(2, 4)
    h0 = fock_hypothesis("bosonic", Input(occ), interf)
    ha = fock_hypothesis("distinguishable", Input(occ, Distinguishable()), interf)
    truth = table_sampler(full_distribution(Input(occ), interf))
    result = run_validation_trials(3, 10, truth, h0, ha, seed=9)
    write_traces_csv(tmp_path / "traces.csv", result.traces)
    write_density_csv(tmp_path / "density.csv", result)
    lines = (tmp_path / "traces.csv").read_text().splitlines()
    assert lines[0] == "trial,t,xi"
    assert len(lines) == 1 + 3 * 11
    dlines = (tmp_path / "density.csv").read_text().splitlines()
    assert dlines[0] == "t_bin,xi_bin,count"
    assert len(dlines) == 1 + 50 * 50
