"""Random-sample generation for photonic experiments.

Exact bosonic sampling uses a sequential photon chain whose conditional
weights are squared permanents, expanded one photon at a time (expected
O(n 2^n + poly(m, n)) per draw). Noisy sampling composes three exact
reductions: binomial loss pre-thinning (uniform loss commutes with the
interferometer), a Bernoulli split of survivors into one interfering and
several mutually-orthogonal internal states (exact for the Gram
(1-x) I + x J), and the bosonic chain on the interfering set. A Metropolis
independence sampler and the exact/truncated/sampled distribution triple
round out the noisy toolkit.
"""

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import _chain_sample, _ryser_gray
from .interferometers import to_lossy
from .model import (
    ENUMERATION_GUARD,
    Bosonic,
    DarkCountFockSample,
    Distinguishable,
    DistributionTable,
    Event,
    FockDetection,
    FockSample,
    GuardError,
    Input,
    ModeOccupation,
    UserGram,
    all_mode_occupations,
    compute_probability_fock,
    interpolation_x,
    scattering_submatrix,
)

__all__ = [
    "SamplerConfig",
    "sample_bosonic",
    "sample_distinguishable",
    "sample_noisy",
    "sample_dark_counts",
    "sample_event",
    "sample_batch",
    "sample_mis",
    "noisy_distribution",
    "lossy_output_distribution",
    "lossy_pointwise_probability",
    "empirical_table",
    "write_samples_csv",
    "read_samples_csv",
]


@dataclass
class SamplerConfig:
    """Chain hygiene and accuracy knobs for the approximate samplers."""

    seed: int = 0
    burn_in: int = 100
    thinning: int = 10
    error: float = 1e-4
    failure_probability: float = 1e-4

    def __post_init__(self):
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")
        if self.thinning < 1:
            raise ValueError("thinning must be >= 1")
        for name in ("error", "failure_probability"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must lie in (0, 1)")


# --- elementary samplers ---------------------------------------------------


def sample_bosonic(inp, interf, rng):
    """One exact draw for fully indistinguishable photons."""
    if not isinstance(inp.model, Bosonic):
        raise ValueError("the exact bosonic sampler needs a Bosonic input")
    return _bosonic_draw(interf.U, inp.occupation.mode_list(), interf.m, rng)


def _bosonic_draw(u, in_modes, m, rng):
    n = len(in_modes)
    if n == 0:
        return ModeOccupation((0,) * m)
    a = u[:, in_modes]
    order = rng.permutation(n)
    a = np.ascontiguousarray(a[:, order])
    rows = _chain_sample(a, rng.random(n))
    counts = np.bincount(rows, minlength=m)
    return ModeOccupation(tuple(int(c) for c in counts))


def sample_distinguishable(inp, interf, rng):
    """Each photon lands independently with probability |U[q, j]|^2."""
    m = interf.m
    counts = np.zeros(m, dtype=int)
    for j in inp.occupation.mode_list():
        counts[_single_photon_draw(interf.U, j, rng)] += 1
    return ModeOccupation(tuple(int(c) for c in counts))


def _single_photon_draw(u, j, rng):
    cdf = np.cumsum(np.abs(u[:, j]) ** 2)
    return int(np.searchsorted(cdf, rng.random() * cdf[-1]))


def sample_noisy(inp, interf, eta, rng):
    """One draw with uniform loss eta and interpolation parameter x.

    Photons survive independently with probability eta; each survivor joins
    the mutually interfering set with probability x (the overlap-with-common
    weight of the Gram (1-x) I + x J) or propagates as a distinguishable
    single photon otherwise.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmission probability must be in [0, 1], got {eta}")
    x = interpolation_x(inp.model)
    modes = inp.occupation.mode_list()
    n = len(modes)
    m = interf.m
    if n == 0:
        return ModeOccupation((0,) * m)
    survive = rng.random(n) < eta
    interfering = rng.random(n) < x
    bose_modes = [j for j, s, b in zip(modes, survive, interfering) if s and b]
    single_modes = [j for j, s, b in zip(modes, survive, interfering) if s and not b]
    counts = np.array(_bosonic_draw(interf.U, bose_modes, m, rng).counts)
    for j in single_modes:
        counts[_single_photon_draw(interf.U, j, rng)] += 1
    return ModeOccupation(tuple(int(c) for c in counts))


def sample_dark_counts(ev, rng, dark_rng=None, eta=1.0):
    """Underlying FockSample draw plus an independent Bernoulli(p) click per mode.

    Passing a separate ``dark_rng`` keeps the base sample stream identical to
    a dark-count-free run with the same seed.
    """
    meas = ev.measurement
    if not isinstance(meas, DarkCountFockSample):
        raise TypeError("event measurement must be a DarkCountFockSample")
    base_ev = Event(ev.input, FockSample(), ev.interferometer)
    base = sample_event(base_ev, rng, eta=eta)
    dr = rng if dark_rng is None else dark_rng
    clicks = dr.random(ev.interferometer.m) < meas.p
    result = ModeOccupation(
        tuple(int(c) + int(d) for c, d in zip(base.counts, clicks)))
    ev.result = result
    return result


def sample_event(ev, rng, eta=1.0, dark_rng=None):
    """Draw one sample according to the event's measurement and input model."""
    meas = ev.measurement
    if isinstance(meas, DarkCountFockSample):
        return sample_dark_counts(ev, rng, dark_rng=dark_rng, eta=eta)
    if not isinstance(meas, FockSample):
        raise TypeError(f"cannot sample measurement {meas!r}")
    inp = ev.input
    if eta == 1.0 and isinstance(inp.model, Bosonic):
        result = sample_bosonic(inp, ev.interferometer, rng)
    elif eta == 1.0 and isinstance(inp.model, Distinguishable):
        result = sample_distinguishable(inp, ev.interferometer, rng)
    else:
        result = sample_noisy(inp, ev.interferometer, eta, rng)
    ev.result = result
    return result


def sample_batch(inp, interf, count, seed, eta=1.0, dark_p=None):
    """Deterministic sample batch.

    The base-sampler and dark-count randomness come from separate streams
    spawned off one seed, so the base stream does not depend on ``dark_p``.
    """
    base_ss, dark_ss = np.random.SeedSequence(seed).spawn(2)
    rng = np.random.default_rng(base_ss)
    dark_rng = np.random.default_rng(dark_ss)
    out = []
    for _ in range(count):
        if dark_p is None:
            ev = Event(inp, FockSample(), interf)
            out.append(sample_event(ev, rng, eta=eta))
        else:
            ev = Event(inp, DarkCountFockSample(dark_p), interf)
            out.append(sample_dark_counts(ev, rng, dark_rng=dark_rng, eta=eta))
    return out


def empirical_table(samples, outcomes=None):
    """Empirical distribution of a sample batch.

    With ``outcomes`` given, the table is aligned to that outcome list
    (missing outcomes get probability zero).
    """
    counts = {}
    for s in samples:
        key = DistributionTable._key(s)
        counts[key] = counts.get(key, 0) + 1
    total = len(samples)
    if outcomes is None:
        outcomes = sorted(counts)
    probs = np.array([counts.get(DistributionTable._key(o), 0) / total
                      for o in outcomes], dtype=float)
    return DistributionTable(list(outcomes), probs)


# --- Metropolis independence sampler ---------------------------------------


def sample_mis(target, proposal_sampler, proposal_law, cfg, count, rng=None):
    """Metropolis independence chain.

    Proposes y ~ proposal independently of the current state x and accepts
    with min(1, target(y) proposal(x) / (target(x) proposal(y))). Discards
    ``burn_in`` states, then keeps every ``thinning``-th state until
    ``count`` outcomes are collected.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    x = proposal_sampler(rng)
    tx, qx = target(x), proposal_law(x)
    if qx <= 0.0:
        raise ValueError(f"proposal assigns zero probability to visited state {x!r}")
    kept = []
    total = cfg.burn_in + count * cfg.thinning
    for step in range(total):
        y = proposal_sampler(rng)
        ty, qy = target(y), proposal_law(y)
        if qy <= 0.0:
            raise ValueError(f"proposal assigns zero probability to visited state {y!r}")
        # accept with min(1, ty*qx / (tx*qy)); a zero-probability current
        # state is always left immediately
        if tx <= 0.0 or rng.random() * (tx * qy) <= ty * qx:
            x, tx, qx = y, ty, qy
        if step >= cfg.burn_in and (step - cfg.burn_in + 1) % cfg.thinning == 0:
            kept.append(x)
    return kept


# --- lossy distributions ----------------------------------------------------


def _out_factorial(occ):
    prod = 1
    for c in occ.counts:
        prod *= math.factorial(c)
    return prod


def _lossy_outcomes(n, m):
    """Canonical outcome order for lossy tables: by photon count, then lex."""
    out = []
    for k in range(n + 1):
        out.extend(all_mode_occupations(k, m))
    return out


def _check_dilation_guard(n, m):
    count = math.comb(n + 2 * m - 1, n)
    if count > ENUMERATION_GUARD:
        raise GuardError(
            f"{count} dilated output patterns exceed the enumeration guard "
            f"({ENUMERATION_GUARD})")


def lossy_output_distribution(inp, eta, interf):
    """Exact lossy distribution by marginalizing the 2m-mode dilation.

    Environment modes are summed out, so outcomes are physical patterns with
    0..n photons.
    """
    n, m = inp.n, inp.m
    _check_dilation_guard(n, m)
    big = to_lossy(interf, eta)
    ext = Input(ModeOccupation(inp.occupation.counts + (0,) * m), inp.model)
    acc = {}
    for out in all_mode_occupations(n, 2 * m):
        p = compute_probability_fock(Event(ext, FockDetection(out), big))
        key = out.counts[:m]
        acc[key] = acc.get(key, 0.0) + p
    outcomes = _lossy_outcomes(n, m)
    probs = np.array([acc.get(o.counts, 0.0) for o in outcomes])
    return DistributionTable(outcomes, probs)


def lossy_pointwise_probability(inp, eta, interf, out_occ):
    """Marginal lossy probability of one physical pattern.

    Independent route to the dilation: sums over survivor subsets weighted
    binomially (valid because uniform loss commutes with the interferometer).
    """
    n = inp.n
    out_occ = out_occ if isinstance(out_occ, ModeOccupation) else ModeOccupation(tuple(out_occ))
    k = out_occ.n
    if k > n:
        return 0.0
    modes = inp.occupation.mode_list()
    total = 0.0
    weight = eta ** k * (1.0 - eta) ** (n - k)
    if weight == 0.0:
        return 0.0
    for subset in itertools.combinations(range(n), k):
        if k == 0:
            total += weight
            continue
        counts = [0] * inp.m
        for t in subset:
            counts[modes[t]] = 1
        sub_model = inp.model
        if isinstance(sub_model, UserGram):
            sub_model = UserGram(sub_model.S[np.ix_(subset, subset)])
        sub_inp = Input(ModeOccupation(tuple(counts)), sub_model)
        total += weight * compute_probability_fock(
            Event(sub_inp, FockDetection(out_occ), interf))
    return total


# --- interference-order truncation ------------------------------------------


def _derangement_counts(n):
    d = [1, 0]
    for j in range(2, n + 1):
        d.append((j - 1) * (d[j - 1] + d[j - 2]))
    return d[: n + 1]


def truncation_order(n, x, error):
    """Smallest order k whose dropped tail bound is <= error.

    Order j groups permutation terms with j non-fixed points, each carrying
    weight x^j. The tail bound sum_{j>k} C(n,j) D_j x^j uses the unit bound
    on each permanent term, valid for submatrices of a unitary; the bound is
    deterministic, so it holds with certainty (failure probability 0).
    """
    d = _derangement_counts(n)
    for k in range(n + 1):
        tail = sum(math.comb(n, j) * d[j] * x ** j for j in range(k + 1, n + 1))
        if tail <= error:
            return k, tail
    return n, 0.0


def _truncated_gram_value(mat, x, order):
    """Interference-order expansion of the Gram-weighted permanent.

    Sums x^{moved(tau)} perm(F_tau) with F_tau[k, l] = mat[k, l] conj(mat[tau(k), l])
    over permutations tau with at most ``order`` non-fixed points; the
    complete sum (order = n) equals gram_permanent with the interpolation
    Gram, and order 0 is the distinguishable baseline perm(|mat|^2).
    """
    n = mat.shape[0]
    conj = mat.conj()
    total = 0.0
    for tau in itertools.permutations(range(n)):
        moved = sum(1 for i in range(n) if tau[i] != i)
        if moved > order:
            continue
        f = np.ascontiguousarray(mat * conj[list(tau), :])
        total += (x ** moved) * _ryser_gray(f).real
    return total


def _lossy_truncated_distribution(inp, eta, interf, order, tail):
    n, m = inp.n, inp.m
    _check_dilation_guard(n, m)
    x = interpolation_x(inp.model)
    big = to_lossy(interf, eta)
    ext_occ = ModeOccupation(inp.occupation.counts + (0,) * m)
    acc = {}
    for out in all_mode_occupations(n, 2 * m):
        if n == 0:
            p = 1.0
        else:
            mat = scattering_submatrix(big.U, ext_occ, out)
            p = _truncated_gram_value(mat, x, order) / _out_factorial(out)
        key = out.counts[:m]
        acc[key] = acc.get(key, 0.0) + p
    outcomes = _lossy_outcomes(n, m)
    probs = np.array([acc.get(o.counts, 0.0) for o in outcomes])
    return DistributionTable(outcomes, probs, truncation_error=tail)


def noisy_distribution(inp, eta, interf, cfg=None, samples=100_000):
    """Exact, truncated, and chain-sampled lossy distributions.

    The exact table marginalizes the 2m-mode dilation; the truncated table
    drops interference orders whose tail bound is below cfg.error; the
    sampled table runs a Metropolis independence chain with the
    distinguishable lossy law as proposal.
    """
    if cfg is None:
        cfg = SamplerConfig()
    exact = lossy_output_distribution(inp, eta, interf)
    order, tail = truncation_order(inp.n, interpolation_x(inp.model), cfg.error)
    truncated = _lossy_truncated_distribution(inp, eta, interf, order, tail)

    proposal = lossy_output_distribution(
        Input(inp.occupation, Distinguishable()), eta, interf)
    outcomes = exact.outcomes
    keys = [o.counts for o in outcomes]
    target_dict = exact.as_dict()
    prop_dict = proposal.as_dict()
    cdf = np.cumsum(proposal.probs)

    def draw(rng):
        return keys[int(np.searchsorted(cdf, rng.random() * cdf[-1]))]

    kept = sample_mis(
        lambda s: target_dict.get(s, 0.0),
        draw,
        lambda s: prop_dict.get(s, 0.0),
        cfg,
        samples,
    )
    sampled = empirical_table(kept, outcomes=outcomes)
    return exact, truncated, sampled


# --- sample files -------------------------------------------------------------


def write_samples_csv(path, samples, meta=None, meta_path=None):
    """One row per sample, columns mode_1..mode_m; optional JSON sidecar."""
    m = samples[0].m
    lines = [",".join(f"mode_{q + 1}" for q in range(m))]
    for s in samples:
        lines.append(",".join(str(c) for c in s.counts))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    if meta is not None:
        if meta_path is None:
            meta_path = str(path) + ".meta.json"
        with open(meta_path, "w") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
            fh.write("\n")


def read_samples_csv(path):
    with open(path) as fh:
        header = fh.readline()
        if not header.startswith("mode_1"):
            raise ValueError(f"{path} is not a sample CSV (missing mode_1 header)")
        samples = []
        for line in fh:
            line = line.strip()
            if line:
                samples.append(ModeOccupation(tuple(int(v) for v in line.split(","))))
    return samples
