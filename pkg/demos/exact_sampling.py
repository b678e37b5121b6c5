"""Exact sampling of indistinguishable photons through a random network.

Draws output patterns one photon at a time; the conditional weight of each
candidate mode is a squared permanent assembled from the previous step's
minors, so a single draw costs O(n 2^n + poly(m, n)) instead of enumerating
the full distribution. A 20-photon, 400-mode draw takes about a second.
"""

import time

import numpy as np

from bosonsim import Input, first_modes, full_distribution, rand_haar, sample_bosonic, tvd
from bosonsim.samplers import empirical_table

# --- large scale: one draw at a time -------------------------------------
n, m = 20, 400
interf = rand_haar(m, seed=5)
inp = Input(first_modes(n, m))
rng = np.random.default_rng(0)

for shot in range(3):
    t0 = time.perf_counter()
    occupied = sample_bosonic(inp, interf, rng).mode_list()
    dt = time.perf_counter() - t0
    print(f"shot {shot}: photons landed in modes {occupied} ({dt:.2f}s)")

# --- small scale: check the sampler against exact enumeration ------------
n, m, draws = 3, 5, 50_000
interf = rand_haar(m, seed=42)
inp = Input(first_modes(n, m))
law = full_distribution(inp, interf)

rng = np.random.default_rng(1)
t0 = time.perf_counter()
samples = [sample_bosonic(inp, interf, rng) for _ in range(draws)]
dt = time.perf_counter() - t0
dist = tvd(empirical_table(samples), law)
print(f"\n{draws} draws at n={n}, m={m} in {dt:.1f}s; "
      f"TVD to the enumerated distribution: {dist:.4f}")

print("\nmost likely patterns:")
order = np.argsort(law.probs)[::-1][:5]
emp = empirical_table(samples).as_dict()
for i in order:
    occ = law.outcomes[i]
    print(f"  {occ.counts}  exact {law.probs[i]:.4f}  empirical {emp.get(occ.counts, 0.0):.4f}")
