"""JIT-compiled inner loops with pure-Python fallbacks.

The Gray-code permanent and the sequential photon-chain sampler are the two
hot spots of the whole package; both are tight scalar loops that gain two
orders of magnitude from numba. The pure-Python bodies below are the
reference implementations and are used unchanged when numba is unavailable.
"""

import numpy as np

try:
    import numba
except ModuleNotFoundError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _ryser_gray(a):
    """Permanent of a square complex matrix, O(2^n n).

    Inclusion-exclusion over column subsets; subsets are visited in
    reflected-Gray-code order so each step updates the running row sums
    with a single column add or subtract.
    """
    n = a.shape[0]
    row_sums = np.zeros(n, np.complex128)
    total = 0.0 + 0.0j
    sign = 1.0
    for k in range(1, 1 << n):
        low = k & (-k)
        j = 0
        while not ((low >> j) & 1):
            j += 1
        if (k ^ (k >> 1)) & low:
            for i in range(n):
                row_sums[i] += a[i, j]
        else:
            for i in range(n):
                row_sums[i] -= a[i, j]
        sign = -sign  # subset size parity alternates: one bit flips per step
        prod = 1.0 + 0.0j
        for i in range(n):
            prod *= row_sums[i]
        total += sign * prod
    if n & 1:
        total = -total
    return total


def _chain_sample(a, us):
    """Draw one output-mode row per column of `a`, photon by photon.

    `a` holds the (already column-permuted) input-mode columns of the
    interferometer; `us` holds one uniform variate per photon. At step k the
    conditional weight of candidate row q is the squared modulus of the
    k x k permanent over rows (chosen so far + q), expanded by Laplace over
    the new row so only k permanents of size k-1 are evaluated.
    """
    m, n = a.shape
    rows = np.zeros(n, np.int64)
    weights = np.zeros(m, np.float64)
    minors = np.zeros(n, np.complex128)
    for k in range(1, n + 1):
        if k == 1:
            minors[0] = 1.0 + 0.0j
        else:
            b = np.zeros((k - 1, k - 1), np.complex128)
            for c in range(k):
                for i in range(k - 1):
                    jj = 0
                    for j in range(k):
                        if j != c:
                            b[i, jj] = a[rows[i], j]
                            jj += 1
                minors[c] = _ryser_gray(b)
        total = 0.0
        for q in range(m):
            amp = 0.0 + 0.0j
            for c in range(k):
                amp += a[q, c] * minors[c]
            w = amp.real * amp.real + amp.imag * amp.imag
            weights[q] = w
            total += w
        target = us[k - 1] * total
        acc = 0.0
        choice = m - 1
        for q in range(m):
            acc += weights[q]
            if acc >= target:
                choice = q
                break
        rows[k - 1] = choice
    return rows


if numba is not None:
    _c16_2d = numba.types.Array(numba.types.complex128, 2, "C", readonly=True)
    _f8_1d = numba.types.Array(numba.types.float64, 1, "C", readonly=True)
    _i8_1d = numba.types.Array(numba.types.int64, 1, "C")
    _ryser_gray = numba.njit(
        numba.types.complex128(_c16_2d), cache=True, nogil=True)(_ryser_gray)
    _chain_sample = numba.njit(
        _i8_1d(_c16_2d, _f8_1d), cache=True, nogil=True)(_chain_sample)
