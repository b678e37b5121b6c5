"""Detectors that click without a photon.

A threshold detector fires spuriously with probability p per shot. The
dark-count measurement draws a regular sample first and then adds an
independent Bernoulli(p) click on every mode, so the expected total count
is n + m*p. Dark-count randomness lives on its own stream: setting p = 0
reproduces the plain sample stream bit for bit.
"""

import numpy as np

from bosonsim import DarkCountFockSample, Event, Input, first_modes, rand_haar
from bosonsim.samplers import sample_batch, sample_dark_counts

n, m, p_dark = 10, 10, 0.1
interf = rand_haar(m, seed=10)
inp = Input(first_modes(n, m))

# single shots through the event container
rng = np.random.default_rng(0)
for shot in range(3):
    ev = Event(inp, DarkCountFockSample(p_dark), interf)
    out = sample_dark_counts(ev, rng)
    print(f"shot {shot}: state = {list(out.counts)}   total = {out.n}")

# statistics over a batch
draws = 10_000
batch = sample_batch(inp, interf, draws, seed=81, dark_p=p_dark)
totals = np.array([s.n for s in batch])
print(f"\nmean total over {draws} draws: {totals.mean():.4f} "
      f"(expected n + m*p = {n + m * p_dark})")
print("total-count histogram:")
for k in range(n, totals.max() + 1):
    frac = np.mean(totals == k)
    print(f"  {k:2d}: {frac:.4f} " + "#" * int(round(200 * frac)))

# p = 0 reproduces the dark-count-free stream exactly
plain = sample_batch(inp, interf, 5, seed=33)
dark0 = sample_batch(inp, interf, 5, seed=33, dark_p=0.0)
print(f"\np=0 stream identical to plain stream: "
      f"{[s.counts for s in plain] == [s.counts for s in dark0]}")
