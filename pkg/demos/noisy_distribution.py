"""Output statistics with partial distinguishability and photon loss.

Three routes to the same noisy distribution: exact marginalization of a
doubled-up lossy network, an interference-order truncation whose dropped
tail is bounded, and a Metropolis independence chain reconstruction. With
x = 0.74 and transmission 0.63 over 3 photons in 5 modes, all three agree.
"""

import numpy as np

from bosonsim import (
    Input,
    OneParameterInterpolation,
    SamplerConfig,
    first_modes,
    noisy_distribution,
    rand_haar,
    tvd,
)

x = 0.74          # pairwise internal-state overlap
transmission = 0.63
n, m = 3, 5

inp = Input(first_modes(n, m), OneParameterInterpolation(x))
interf = rand_haar(m, seed=42)
cfg = SamplerConfig(seed=7)

exact, truncated, sampled = noisy_distribution(inp, transmission, interf,
                                               cfg, samples=100_000)

print(f"exact table: {len(exact.outcomes)} outcomes over 0..{n} photons, "
      f"sum = {exact.probs.sum():.10f}")
print(f"TVD(exact, truncated) = {tvd(exact, truncated):.2e}")
print(f"TVD(exact, sampled)   = {tvd(exact, sampled):.4f}  (10^5 kept chain samples)")

print("\npattern        exact      truncated  sampled")
order = np.argsort(exact.probs)[::-1][:10]
for i in order:
    occ = exact.outcomes[i]
    print(f"{str(occ.counts):14s} {exact.probs[i]:.6f}   "
          f"{truncated.probs[i]:.6f}   {sampled.probs[i]:.6f}")

# loss shifts weight into patterns with fewer than n photons
per_sector = {}
for occ, p in zip(exact.outcomes, exact.probs):
    per_sector[occ.n] = per_sector.get(occ.n, 0.0) + p
print("\nphotons detected -> probability (binomial thinning at eta = 0.63):")
for k in sorted(per_sector):
    print(f"  {k}: {per_sector[k]:.4f}")
