import math

import numpy as np
import pytest
from scipy import stats

from bosonsim import (
    DarkCountFockSample,
    Distinguishable,
    Event,
    Input,
    OneParameterInterpolation,
    SamplerConfig,
    first_modes,
    full_distribution,
    noisy_distribution,
    rand_haar,
    sample_bosonic,
    sample_dark_counts,
    sample_distinguishable,
    sample_mis,
    sample_noisy,
    tvd,
)
from bosonsim.samplers import (
    empirical_table,
    lossy_output_distribution,
    lossy_pointwise_probability,
    read_samples_csv,
    sample_batch,
    truncation_order,
    write_samples_csv,
)


def test_sampler_config_validation():
    SamplerConfig()
    with pytest.raises(ValueError):
        SamplerConfig(burn_in=-1)
    with pytest.raises(ValueError):
        SamplerConfig(thinning=0)
    with pytest.raises(ValueError):
        SamplerConfig(error=0.0)
    with pytest.raises(ValueError):
        SamplerConfig(failure_probability=1.0)


def test_bosonic_sampler_deterministic():
    inp = Input(first_modes(3, 5))
    interf = rand_haar(5, seed=1)
    a = [sample_bosonic(inp, interf, np.random.default_rng(42)) for _ in range(5)]
    b_rng = np.random.default_rng(42)
    b = [sample_bosonic(inp, interf, b_rng) for _ in range(5)]
    # same master seed, same stream
    a_rng = np.random.default_rng(42)
    a2 = [sample_bosonic(inp, interf, a_rng) for _ in range(5)]
    assert [s.counts for s in a2] == [s.counts for s in b]


def test_bosonic_single_photon_chi_square():
    interf = rand_haar(4, seed=13)
    inp = Input(first_modes(1, 4))
    rng = np.random.default_rng(100)
    draws = 100_000
    counts = np.zeros(4)
    for _ in range(draws):
        counts[sample_bosonic(inp, interf, rng).mode_list()[0]] += 1
    expected = np.abs(interf.U[:, 0]) ** 2 * draws
    _, pvalue = stats.chisquare(counts, expected)
    assert pvalue > 0.01


def test_bosonic_law_tvd():
    inp = Input(first_modes(3, 5))
    interf = rand_haar(5, seed=42)
    table = full_distribution(inp, interf)
    rng = np.random.default_rng(7)
    samples = [sample_bosonic(inp, interf, rng) for _ in range(20_000)]
    assert tvd(empirical_table(samples), table) < 0.03


def test_bosonic_large_scale_draw_completes():
    inp = Input(first_modes(20, 400))
    interf = rand_haar(400, seed=5)
    out = sample_bosonic(inp, interf, np.random.default_rng(0))
    assert out.n == 20 and out.m == 400


def test_bosonic_rejects_non_bosonic_input():
    with pytest.raises(ValueError, match="Bosonic"):
        sample_bosonic(Input(first_modes(2, 3), Distinguishable()),
                       rand_haar(3, seed=0), np.random.default_rng(0))


def test_distinguishable_single_photon_matches_bosonic_law():
    interf = rand_haar(4, seed=3)
    rng = np.random.default_rng(11)
    inp_d = Input(first_modes(1, 4), Distinguishable())
    inp_b = Input(first_modes(1, 4))
    da = empirical_table([sample_distinguishable(inp_d, interf, rng) for _ in range(20_000)])
    law = full_distribution(inp_b, interf)
    assert tvd(da, law) < 0.03


def test_distinguishable_hom_coincidence_rate():
    from bosonsim import beam_splitter, compose

    splitter = compose([beam_splitter(1 / math.sqrt(2))], 2)
    inp = Input(first_modes(2, 2), Distinguishable())
    rng = np.random.default_rng(21)
    draws = 100_000
    hits = sum(
        1 for _ in range(draws)
        if sample_distinguishable(inp, splitter, rng).counts == (1, 1))
    sigma = math.sqrt(draws * 0.5 * 0.5)
    assert abs(hits - 0.5 * draws) < 3 * sigma


def test_distinguishable_law_tvd():
    inp = Input(first_modes(3, 5), Distinguishable())
    interf = rand_haar(5, seed=9)
    table = full_distribution(inp, interf)
    rng = np.random.default_rng(3)
    samples = [sample_distinguishable(inp, interf, rng) for _ in range(20_000)]
    assert tvd(empirical_table(samples), table) < 0.03


def test_noisy_eta_zero_gives_vacuum():
    inp = Input(first_modes(3, 5), OneParameterInterpolation(0.5))
    interf = rand_haar(5, seed=2)
    out = sample_noisy(inp, interf, 0.0, np.random.default_rng(0))
    assert out.counts == (0, 0, 0, 0, 0)


def test_noisy_limits_match_named_samplers():
    interf = rand_haar(5, seed=11)
    rng = np.random.default_rng(5)
    draws = 20_000

    inp_x1 = Input(first_modes(3, 5), OneParameterInterpolation(1.0))
    emp = empirical_table([sample_noisy(inp_x1, interf, 1.0, rng) for _ in range(draws)])
    law = full_distribution(Input(first_modes(3, 5)), interf)
    assert tvd(emp, law) < 0.03

    inp_x0 = Input(first_modes(3, 5), OneParameterInterpolation(0.0))
    emp0 = empirical_table([sample_noisy(inp_x0, interf, 1.0, rng) for _ in range(draws)])
    law0 = full_distribution(Input(first_modes(3, 5), Distinguishable()), interf)
    assert tvd(emp0, law0) < 0.03


def test_noisy_law_with_loss_matches_enumeration():
    inp = Input(first_modes(3, 5), OneParameterInterpolation(0.74))
    interf = rand_haar(5, seed=42)
    exact = lossy_output_distribution(inp, 0.63, interf)
    rng = np.random.default_rng(8)
    samples = [sample_noisy(inp, interf, 0.63, rng) for _ in range(20_000)]
    assert tvd(empirical_table(samples), exact) < 0.03


def test_loss_thinning_rate():
    inp = Input(first_modes(4, 6), OneParameterInterpolation(0.5))
    interf = rand_haar(6, seed=4)
    rng = np.random.default_rng(14)
    eta, draws = 0.63, 10_000
    totals = [sample_noisy(inp, interf, eta, rng).n for _ in range(draws)]
    mean = np.mean(totals)
    sigma = math.sqrt(4 * eta * (1 - eta) / draws)
    assert abs(mean - eta * 4) < 3 * sigma


def test_dark_counts_p_zero_stream_identical():
    inp = Input(first_modes(3, 6))
    interf = rand_haar(6, seed=6)
    plain = sample_batch(inp, interf, 50, seed=33)
    dark0 = sample_batch(inp, interf, 50, seed=33, dark_p=0.0)
    assert [s.counts for s in plain] == [s.counts for s in dark0]


def test_dark_counts_mean_totals():
    inp = Input(first_modes(10, 10))
    interf = rand_haar(10, seed=10)
    draws = 2_000
    batch = sample_batch(inp, interf, draws, seed=1, dark_p=0.1)
    totals = [s.n for s in batch]
    sigma = math.sqrt(10 * 0.1 * 0.9 / draws)
    assert abs(np.mean(totals) - 11.0) < 3 * sigma


def test_dark_counts_p_one_clicks_everywhere():
    inp = Input(first_modes(2, 4))
    interf = rand_haar(4, seed=3)
    ev = Event(inp, DarkCountFockSample(1.0), interf)
    out = sample_dark_counts(ev, np.random.default_rng(0))
    assert all(c >= 1 for c in out.counts)
    assert ev.result == out


def test_mis_identity_target_accepts_everything():
    cfg = SamplerConfig(seed=0, burn_in=0, thinning=1)
    outcomes = [0, 1, 2]
    probs = np.array([0.2, 0.3, 0.5])
    cdf = np.cumsum(probs)

    def draw(rng):
        return int(np.searchsorted(cdf, rng.random()))

    law = lambda s: float(probs[s])
    kept = sample_mis(law, draw, law, cfg, 20_000)
    emp = np.bincount(kept, minlength=3) / len(kept)
    # acceptance ratio is identically 1, so this is i.i.d. sampling
    assert np.max(np.abs(emp - probs)) < 3 * math.sqrt(0.5 * 0.5 / len(kept))


def test_mis_two_outcome_toy_target():
    cfg = SamplerConfig(seed=5)
    target = {0: 0.3, 1: 0.7}

    def draw(rng):
        return int(rng.random() < 0.5)

    kept = sample_mis(lambda s: target[s], draw, lambda s: 0.5, cfg, 10_000)
    frac1 = np.mean(kept)
    # thinned chain, so allow a few sigma of an i.i.d. binomial
    assert abs(frac1 - 0.7) < 5 * math.sqrt(0.7 * 0.3 / len(kept))


def test_mis_zero_probability_proposal_raises():
    cfg = SamplerConfig(seed=0)
    with pytest.raises(ValueError, match="zero probability"):
        sample_mis(lambda s: 1.0, lambda rng: 0, lambda s: 0.0, cfg, 10)


def test_mis_deterministic():
    cfg = SamplerConfig(seed=123)

    def draw(rng):
        return int(rng.random() < 0.4)

    kept1 = sample_mis(lambda s: 0.5, draw, lambda s: 0.5, cfg, 100)
    kept2 = sample_mis(lambda s: 0.5, draw, lambda s: 0.5, cfg, 100)
    assert kept1 == kept2


def test_lossy_routes_cross_check():
    # dilation enumeration vs binomial survivor mixture
    inp = Input(first_modes(3, 4), OneParameterInterpolation(0.74))
    interf = rand_haar(4, seed=19)
    table = lossy_output_distribution(inp, 0.63, interf)
    for occ, p in zip(table.outcomes, table.probs):
        alt = lossy_pointwise_probability(inp, 0.63, interf, occ)
        assert abs(p - alt) < 1e-10
    assert abs(table.probs.sum() - 1.0) <= 1e-8


def test_lossy_eta_one_matches_full_distribution():
    inp = Input(first_modes(3, 5), OneParameterInterpolation(0.74))
    interf = rand_haar(5, seed=23)
    lossy = lossy_output_distribution(inp, 1.0, interf)
    ideal = full_distribution(inp, interf).as_dict()
    for occ, p in zip(lossy.outcomes, lossy.probs):
        assert abs(p - ideal.get(occ.counts, 0.0)) <= 1e-10


def test_truncation_order_selection():
    # x = 0.74, n = 3, default error: every order contributes, so k = n
    k, tail = truncation_order(3, 0.74, 1e-4)
    assert k == 3 and tail == 0.0
    # huge error budget allows dropping everything beyond the baseline
    k0, tail0 = truncation_order(3, 0.74, 10.0)
    assert k0 == 0 and tail0 <= 10.0
    # x = 0 has no higher orders at all
    kz, tailz = truncation_order(3, 0.0, 1e-12)
    assert kz == 0 and tailz == 0.0


def test_noisy_distribution_triple():
    inp = Input(first_modes(3, 5), OneParameterInterpolation(0.74))
    interf = rand_haar(5, seed=42)
    cfg = SamplerConfig(seed=2)
    exact, truncated, sampled = noisy_distribution(inp, 0.63, interf, cfg,
                                                   samples=20_000)
    assert abs(exact.probs.sum() - 1.0) <= 1e-8
    # default error keeps every order here, so truncated == exact
    assert np.max(np.abs(exact.probs - truncated.probs)) <= 1e-12
    assert tvd(exact, sampled) < 0.05
    # deterministic rerun
    exact2, truncated2, sampled2 = noisy_distribution(inp, 0.63, interf,
                                                      SamplerConfig(seed=2),
                                                      samples=20_000)
    assert np.array_equal(sampled.probs, sampled2.probs)


def test_noisy_distribution_truncation_bound():
    inp = Input(first_modes(3, 5), OneParameterInterpolation(0.74))
    interf = rand_haar(5, seed=42)
    cfg = SamplerConfig(seed=2, error=0.9)  # forces a genuinely truncated order
    k, tail = truncation_order(3, 0.74, 0.9)
    assert 0 < k < 3 and tail > 0.0
    exact, truncated, _ = noisy_distribution(inp, 0.63, interf, cfg, samples=500)
    gap = np.max(np.abs(exact.probs - truncated.probs))
    assert gap <= tail


def test_noisy_distribution_eta_one_exact_matches_ideal():
    inp = Input(first_modes(2, 4), OneParameterInterpolation(1.0))
    interf = rand_haar(4, seed=31)
    exact, _, _ = noisy_distribution(inp, 1.0, interf, SamplerConfig(seed=1),
                                     samples=500)
    ideal = full_distribution(Input(first_modes(2, 4)), interf).as_dict()
    for occ, p in zip(exact.outcomes, exact.probs):
        assert abs(p - ideal.get(occ.counts, 0.0)) <= 1e-10


def test_samples_csv_round_trip(tmp_path):
    inp = Input(first_modes(2, 4))
    interf = rand_haar(4, seed=8)
    samples = sample_batch(inp, interf, 25, seed=3)
    path = tmp_path / "samples.csv"
    meta = {"seed": 3, "n": 2, "m": 4, "model": {"name": "bosonic"}, "eta": 1.0}
    write_samples_csv(path, samples, meta=meta)
    back = read_samples_csv(path)
    assert [s.counts for s in back] == [s.counts for s in samples]
    assert (tmp_path / "samples.csv.meta.json").exists()
