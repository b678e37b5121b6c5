"""Timing the permanent kernel.

The Gray-code evaluation touches one column per subset step, giving
O(2^n n) work; the wall time should therefore double with every added
photon. The first call pays the JIT compilation cost and is excluded.
"""

import time

from bosonsim import permanent_ryser, rand_haar

reps = 3
permanent_ryser(rand_haar(2, seed=0).U)  # compile before timing

print(" n   mean seconds   ratio to previous")
previous = None
for n in range(10, 21):
    u = rand_haar(n, seed=n).U
    permanent_ryser(u)  # warm pass
    t0 = time.perf_counter()
    for _ in range(reps):
        permanent_ryser(u)
    mean = (time.perf_counter() - t0) / reps
    ratio = "" if previous is None else f"{mean / previous:14.2f}"
    print(f"{n:2d}   {mean:12.6f} {ratio}")
    previous = mean

print("\na 20x20 permanent of a Haar unitary:")
t0 = time.perf_counter()
value = permanent_ryser(rand_haar(20, seed=1).U)
print(f"  {value:.6e}  in {time.perf_counter() - t0:.3f}s")
