"""Bayesian hypothesis testing on interferometry samples.

Each observed outcome multiplies the posterior odds of the null hypothesis
by its likelihood ratio; likelihoods accumulate in log space so traces stay
stable far beyond a few hundred samples.
"""

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    DistributionTable,
    Input,
    OneParameterInterpolation,
    full_distribution,
)

__all__ = [
    "Hypothesis",
    "ConfidenceTrace",
    "bayesian_confidence",
    "run_validation_trials",
    "ValidationResult",
    "estimate_distinguishability",
    "fock_hypothesis",
    "table_hypothesis",
    "table_sampler",
    "first_passage_time",
    "write_traces_csv",
    "write_density_csv",
]


@dataclass(frozen=True)
class Hypothesis:
    """A named, pointwise-evaluable outcome law."""

    label: str
    law: object  # callable outcome -> probability


def table_hypothesis(label, table):
    """Hypothesis backed by an enumerated distribution table."""
    index = table.as_dict()

    def law(outcome):
        return index.get(DistributionTable._key(outcome), 0.0)

    return Hypothesis(label, law)


def fock_hypothesis(label, inp, interf):
    """Hypothesis whose law is the exact output-pattern distribution."""
    return table_hypothesis(label, full_distribution(inp, interf))


def table_sampler(table):
    """Callable (rng, count) -> outcome tuples drawn i.i.d. from a table."""
    keys = [DistributionTable._key(o) for o in table.outcomes]
    cdf = np.cumsum(table.probs)

    def draw(rng, count):
        idx = np.searchsorted(cdf, rng.random(count) * cdf[-1])
        return [keys[int(i)] for i in idx]

    return draw


@dataclass
class ConfidenceTrace:
    """Posterior probabilities of the null hypothesis, xi_0 = prior."""

    xi: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.xi, dtype=float)
        if x.ndim != 1 or x.size < 1:
            raise ValueError("a confidence trace needs at least the prior entry")
        if x.min() < 0.0 or x.max() > 1.0:
            raise ValueError("confidence values must lie in [0, 1]")
        self.xi = x

    @property
    def prior(self):
        return float(self.xi[0])


def _posterior(log_null, log_alt, prior):
    d = (log_alt + math.log1p(-prior)) - (log_null + math.log(prior))
    if d != d:  # both cumulative likelihoods vanished
        raise ValueError(
            "observed data has zero probability under both hypotheses")
    if d > 700.0:
        return 0.0
    if d < -700.0:
        return 1.0
    return 1.0 / (1.0 + math.exp(d))


def bayesian_confidence(samples, h0, ha, prior=0.5):
    """Sequential posterior trace for h0 against ha over observed outcomes.

    xi_t follows the recursive update
    xi_t = xi_{t-1} p0(x_t) / (xi_{t-1} p0(x_t) + (1 - xi_{t-1}) pa(x_t)),
    computed from log-accumulated likelihoods. An outcome with zero
    probability under exactly one hypothesis pins the trace at 0 or 1; zero
    under both is invalid data.
    """
    if not 0.0 < prior < 1.0:
        raise ValueError(f"prior must be in (0, 1), got {prior}")
    xi = np.empty(len(samples) + 1)
    xi[0] = prior
    log_null = 0.0
    log_alt = 0.0
    for t, outcome in enumerate(samples, start=1):
        p0 = h0.law(outcome)
        pa = ha.law(outcome)
        if p0 < 0.0 or pa < 0.0:
            raise ValueError("hypothesis law returned a negative probability")
        if p0 == 0.0 and pa == 0.0:
            raise ValueError(
                f"outcome {outcome!r} has zero probability under both hypotheses")
        log_null += math.log(p0) if p0 > 0.0 else -math.inf
        log_alt += math.log(pa) if pa > 0.0 else -math.inf
        xi[t] = _posterior(log_null, log_alt, prior)
    return ConfidenceTrace(xi)


def first_passage_time(trace, level=0.95):
    """First t with xi_t >= level (ties included); None if never reached."""
    hits = np.nonzero(trace.xi >= level)[0]
    return int(hits[0]) if hits.size else None


@dataclass
class ValidationResult:
    traces: list
    mean_xi: np.ndarray
    density: np.ndarray
    t_edges: np.ndarray
    xi_edges: np.ndarray


def run_validation_trials(n_trials, n_samples, sampler, h0, ha, prior=0.5,
                          seed=None, bins=50):
    """Repeated validation runs with per-trial seeds derived from one seed.

    ``sampler`` is a callable (rng, count) -> outcomes. Returns the traces,
    their mean, and a (t, xi) density grid of all trace points (default
    50 x 50 bins).
    """
    if n_trials < 1 or n_samples < 1:
        raise ValueError("need n_trials >= 1 and n_samples >= 1")
    children = np.random.SeedSequence(seed).spawn(n_trials)
    traces = []
    for child in children:
        rng = np.random.default_rng(child)
        outcomes = sampler(rng, n_samples)
        traces.append(bayesian_confidence(outcomes, h0, ha, prior))
    mean_xi = np.mean([t.xi for t in traces], axis=0)
    ts = np.tile(np.arange(n_samples + 1), n_trials)
    xis = np.concatenate([t.xi for t in traces])
    density, t_edges, xi_edges = np.histogram2d(
        ts, xis, bins=bins, range=[[0, n_samples], [0.0, 1.0]])
    return ValidationResult(traces, mean_xi, density, t_edges, xi_edges)


def estimate_distinguishability(samples, interf, occupation, x_grid):
    """Maximum-likelihood interpolation parameter over a grid.

    Returns (x_hat, log-likelihood profile) using the interpolation-model
    output law at each grid point.
    """
    x_grid = np.asarray(x_grid, dtype=float)
    if x_grid.size == 0:
        raise ValueError("x_grid must not be empty")
    keys = [DistributionTable._key(s) for s in samples]
    profile = np.empty(x_grid.size)
    for i, x in enumerate(x_grid):
        law = full_distribution(
            Input(occupation, OneParameterInterpolation(float(x))), interf).as_dict()
        ll = 0.0
        for k in keys:
            p = law.get(k, 0.0)
            ll += math.log(p) if p > 0.0 else -math.inf
        profile[i] = ll
    return float(x_grid[int(np.argmax(profile))]), profile


def write_traces_csv(path, traces):
    """CSV rows (trial, t, xi)."""
    lines = ["trial,t,xi"]
    for trial, trace in enumerate(traces):
        for t, value in enumerate(trace.xi):
            lines.append(f"{trial},{t},{float(value)!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_density_csv(path, result):
    """CSV rows (t_bin, xi_bin, count) for the trace-density heatmap."""
    lines = ["t_bin,xi_bin,count"]
    for i in range(result.density.shape[0]):
        for j in range(result.density.shape[1]):
            lines.append(f"{i},{j},{int(result.density[i, j])}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
