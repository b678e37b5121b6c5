"""Photon counting in binned output modes via characteristic functions.

Counting probabilities over a partition of the output modes are obtained
without enumerating output patterns: the characteristic function of the
joint count vector is a single n x n permanent per phase-grid point, and an
exact inverse DFT on an (n+1)-point grid per bin recovers the distribution
(counts are integers in 0..n, so that grid is Nyquist-sufficient).
"""

from dataclasses import dataclass

import numpy as np

from .model import (
    ENUMERATION_GUARD,
    DistributionTable,
    GuardError,
    NumericError,
    full_distribution,
    gram_of,
)
from .permanents import permanent_ryser

__all__ = [
    "Subset",
    "Partition",
    "characteristic_function",
    "partition_counts_all",
    "full_bunching_probability",
    "marginal_partition_table",
]


@dataclass(frozen=True)
class Subset:
    """A nonempty set of output modes out of m."""

    m: int
    modes: tuple

    def __post_init__(self):
        modes = tuple(sorted(int(q) for q in set(self.modes)))
        if not modes:
            raise ValueError("a subset must select at least one mode")
        if modes[0] < 0 or modes[-1] >= self.m:
            raise ValueError(f"subset modes out of range for m = {self.m}")
        object.__setattr__(self, "modes", modes)

    @classmethod
    def from_occupation(cls, occ):
        """Subset of the modes flagged by a 0/1 occupation."""
        return cls(occ.m, tuple(q for q, c in enumerate(occ.counts) if c))


@dataclass(frozen=True)
class Partition:
    """Pairwise-disjoint subsets; modes left out form an untracked remainder."""

    subsets: tuple

    def __post_init__(self):
        subs = tuple(self.subsets)
        if not subs:
            raise ValueError("a partition needs at least one subset")
        m = subs[0].m
        seen = set()
        for s in subs:
            if s.m != m:
                raise ValueError("all subsets must share the same mode count")
            if seen & set(s.modes):
                raise ValueError("partition subsets must be pairwise disjoint")
            seen |= set(s.modes)
        object.__setattr__(self, "subsets", subs)

    @property
    def m(self):
        return self.subsets[0].m

    @property
    def r(self):
        return len(self.subsets)


def _unitary_of(interf):
    return getattr(interf, "U", interf)


def characteristic_function(inp, interf, partition, phases):
    """E[exp(i sum_r phases_r N_r)] over the joint bin-count law.

    Builds the diagonal phase matrix D with e^{i phases_r} on the modes of
    subset r and 1 elsewhere, restricts G = U^dag D U to the occupied input
    modes, and returns perm(S o G) with S the input Gram matrix and o the
    entrywise product. At phases = 0 this is exactly 1.
    """
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (partition.r,):
        raise ValueError(
            f"phase vector has length {phases.shape}, partition has {partition.r} subsets")
    u = _unitary_of(interf)
    if partition.m != u.shape[0]:
        raise ValueError("partition and interferometer disagree on mode count")
    n = inp.occupation.n
    if n == 0:
        return 1.0 + 0.0j
    theta = np.zeros(u.shape[0])
    for r, sub in enumerate(partition.subsets):
        theta[list(sub.modes)] = phases[r]
    d = np.exp(1j * theta)
    g = u.conj().T @ (d[:, None] * u)
    occ = inp.occupation.mode_list()
    gsub = g[np.ix_(occ, occ)]
    s = gram_of(inp.model, n)
    return complex(permanent_ryser(np.ascontiguousarray(s * gsub)))


def partition_counts_all(inp, interf, partition):
    """Joint distribution of photon counts in every subset of the partition.

    Inverts the characteristic function on the (n+1)^R phase grid with a
    discrete Fourier transform; imaginary residues above 1e-10 signal a
    formula violation and raise.
    """
    n = inp.occupation.n
    r = partition.r
    grid = n + 1
    if grid ** r > ENUMERATION_GUARD:
        raise GuardError(
            f"{grid ** r} characteristic evaluations exceed the guard "
            f"({ENUMERATION_GUARD})")
    shape = (grid,) * r
    g = np.empty(shape, dtype=np.complex128)
    for q in np.ndindex(*shape):
        g[q] = characteristic_function(
            inp, interf, partition, 2.0 * np.pi * np.asarray(q) / grid)
    p = np.fft.fftn(g) / grid ** r
    residue = np.max(np.abs(p.imag))
    if residue > 1e-10:
        raise NumericError(f"imaginary residue {residue:.3e} in count probabilities")
    probs = p.real.reshape(-1)
    probs = np.clip(probs, 0.0, 1.0)
    outcomes = [tuple(int(x) for x in k) for k in np.ndindex(*shape)]
    return DistributionTable(outcomes, probs)


def full_bunching_probability(inp, interf, subset):
    """Probability that all n photons exit inside the given subset."""
    table = partition_counts_all(inp, interf, Partition((subset,)))
    return table.prob_of((inp.occupation.n,))


def marginal_partition_table(inp, interf, partition):
    """Oracle: bin counts by marginalizing the fully enumerated distribution.

    Exponentially slower than partition_counts_all; kept as the independent
    cross-check at desk scale.
    """
    full = full_distribution(inp, interf)
    n = inp.occupation.n
    grid = n + 1
    shape = (grid,) * partition.r
    acc = np.zeros(shape)
    for occ, p in zip(full.outcomes, full.probs):
        k = tuple(
            sum(occ.counts[q] for q in sub.modes) for sub in partition.subsets)
        acc[k] += p
    outcomes = [tuple(int(x) for x in k) for k in np.ndindex(*shape)]
    return DistributionTable(outcomes, acc.reshape(-1))


def write_partition_csv(path, partition, table):
    """CSV rows (k_1..k_R, probability)."""
    r = partition.r
    header = ",".join(f"k_{i + 1}" for i in range(r)) + ",probability"
    lines = [header]
    for outcome, p in zip(table.outcomes, table.probs):
        lines.append(",".join(str(k) for k in outcome) + f",{float(p)!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
