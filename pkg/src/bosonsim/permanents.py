"""Matrix permanents and distinguishability-weighted permanents.

Every transition probability downstream reduces to one of these kernels, so
they carry the numerical load of the whole package. ``permanent_naive`` is a
brute-force oracle, ``permanent_ryser`` the production kernel, and
``gram_permanent`` the partially-distinguishable generalization weighted by a
Gram matrix of internal-state overlaps.
"""

import itertools

import numpy as np

from ._kernels import _ryser_gray

__all__ = [
    "permanent_naive",
    "permanent_ryser",
    "gram_permanent",
    "validate_gram",
]

NAIVE_MAX_DIM = 10
_PERM_BLOCK = 40_320  # vectorize the naive sum in blocks of 8! permutations


def _as_square(mat, name="matrix"):
    a = np.ascontiguousarray(mat, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValueError(f"{name} must have dimension >= 1")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError(f"{name} entries must be finite")
    return a


def permanent_naive(mat):
    """Permanent by direct summation over all n! permutations.

    Exponentially slow on purpose; serves as the independent oracle for
    ``permanent_ryser``. Guarded at n <= 10.
    """
    a = _as_square(mat)
    n = a.shape[0]
    if n > NAIVE_MAX_DIM:
        raise ValueError(
            f"permanent_naive is limited to n <= {NAIVE_MAX_DIM}, got n = {n}")
    rows = np.arange(n)
    total = 0.0 + 0.0j
    perms = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(perms, _PERM_BLOCK))
        if not block:
            break
        cols = np.array(block, dtype=np.intp)
        total += np.prod(a[rows, cols], axis=1).sum()
    return complex(total)


def permanent_ryser(mat):
    """Permanent via Ryser's formula with Gray-code subset updates, O(2^n n)."""
    a = _as_square(mat)
    return complex(_ryser_gray(a))


def validate_gram(gram):
    """Check Gram-matrix invariants; returns the validated complex array.

    A valid Gram matrix of internal-state overlaps is Hermitian (1e-12),
    has unit diagonal (1e-12) and is positive semidefinite (min eigenvalue
    >= -1e-10).
    """
    s = _as_square(gram, name="gram matrix")
    if np.max(np.abs(s - s.conj().T)) > 1e-12:
        raise ValueError("gram matrix must be Hermitian within 1e-12")
    if np.max(np.abs(np.diagonal(s) - 1.0)) > 1e-12:
        raise ValueError("gram matrix must have unit diagonal within 1e-12")
    if np.linalg.eigvalsh(s)[0] < -1e-10:
        raise ValueError("gram matrix must be positive semidefinite")
    return s


def gram_permanent(mat, gram):
    """Overlap-weighted double-permutation sum; real for Hermitian Gram.

    Computes the double sum over permutation pairs (sigma, rho) of
    prod_k gram[k, (sigma^-1 rho)(k)] * mat[k, sigma(k)] * conj(mat[k, rho(k)]),
    i.e. the Gram couples the photons whose output slots the two permutations
    disagree on. The index convention is frozen against a first-quantization
    oracle (see tests); the slot-indexed transpose variant agrees on every
    constant-diagonal Gram but differs for general complex ones.

    Evaluated as an outer sum over tau = sigma^-1 rho with one Ryser
    permanent per term: sum_tau (prod_k gram[tau(k), k]) * perm(F_tau) with
    F_tau[k, l] = mat[k, l] * conj(mat[tau(k), l]) - n! 2^n n cost instead
    of the raw (n!)^2 double sum.

    The all-ones Gram collapses to |perm(mat)|^2 and the identity Gram to
    the permanent of the entrywise |mat|^2.
    """
    a = _as_square(mat)
    s = _as_square(gram, name="gram matrix")
    if s.shape != a.shape:
        raise ValueError(
            f"matrix and gram dimensions differ: {a.shape[0]} vs {s.shape[0]}")
    n = a.shape[0]
    rows = np.arange(n)
    conj_a = a.conj()
    total = 0.0 + 0.0j
    for tau in itertools.permutations(range(n)):
        idx = np.array(tau, dtype=np.intp)
        weight = s[idx, rows].prod()
        total += weight * _ryser_gray(np.ascontiguousarray(a * conj_a[idx, :]))
    value = complex(total)
    if abs(value.imag) > 1e-10 * (1.0 + abs(value)):
        raise ValueError(
            "imaginary residue above tolerance; gram matrix is not Hermitian")
    return value.real

