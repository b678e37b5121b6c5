"""Two-photon interference on a balanced coupler.

Two photons enter a 50:50 beam splitter on separate modes. When their
internal states overlap perfectly they never leave in different modes; as a
time delay makes them distinguishable, the coincidence rate climbs back to
the classical 1/2. The overlap enters through the one-parameter Gram model
with x = exp(-(delta_omega * delta_tau)^2).
"""

import math

import numpy as np

from bosonsim import (
    Event,
    FockDetection,
    Input,
    ModeOccupation,
    OneParameterInterpolation,
    beam_splitter,
    compose,
    compute_probability_fock,
    first_modes,
)

delta_omega = 1.0
splitter = compose([beam_splitter(1.0 / math.sqrt(2.0))], 2)
coincidence = FockDetection(ModeOccupation((1, 1)))

print("delay    overlap x   coincidence   (1-x^2)/2")
for tau in np.arange(-4.0, 4.01, 0.5):
    x = math.exp(-((delta_omega * tau) ** 2))
    ev = Event(Input(first_modes(2, 2), OneParameterInterpolation(x)),
               coincidence, splitter)
    p = compute_probability_fock(ev)
    print(f"{tau:+5.2f}   {x:9.6f}   {p:11.8f}   {(1 - x * x) / 2:9.6f}")

# a crude terminal rendering of the dip
print("\ncoincidence vs delay:")
for tau in np.arange(-3.0, 3.01, 0.25):
    x = math.exp(-((delta_omega * tau) ** 2))
    ev = Event(Input(first_modes(2, 2), OneParameterInterpolation(x)),
               coincidence, splitter)
    p = compute_probability_fock(ev)
    print(f"{tau:+5.2f} | " + "#" * int(round(60 * p)))
