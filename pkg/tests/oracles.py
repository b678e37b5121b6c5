"""Independent oracles used across the test suite.

Everything here is deliberately brute force and shares no code with the
production kernels: a raw double-permutation sum, a first-quantization
expansion over (mode, internal-state) composite patterns, and a dense
symmetrized-tensor simulation that involves no permanents at all.
"""

import itertools
import math

import numpy as np


def random_gram(n, rng):
    """Random valid Gram matrix: Hermitian, PSD, unit diagonal, complex."""
    b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    s0 = b @ b.conj().T
    d = np.sqrt(np.diagonal(s0).real)
    return s0 / np.outer(d, d)


def permanent_definition(a):
    """Sum over permutations, straight from the definition."""
    n = a.shape[0]
    total = 0.0 + 0.0j
    for sigma in itertools.permutations(range(n)):
        term = 1.0 + 0.0j
        for i in range(n):
            term *= a[i, sigma[i]]
        total += term
    return total


def gram_permanent_double_sum(mat, s):
    """Raw O((n!)^2) double sum with photon-indexed Gram coupling.

    sum over (sigma, rho) of
    prod_k s[k, (sigma^-1 rho)(k)] mat[k, sigma(k)] conj(mat[k, rho(k)]).
    """
    n = mat.shape[0]
    total = 0.0 + 0.0j
    for sigma in itertools.permutations(range(n)):
        inv = [0] * n
        for i, v in enumerate(sigma):
            inv[v] = i
        for rho in itertools.permutations(range(n)):
            term = 1.0 + 0.0j
            for k in range(n):
                term *= s[k, inv[rho[k]]] * mat[k, sigma[k]] * np.conj(mat[k, rho[k]])
            total += term
    return total


def internal_vectors(s):
    """Vectors v_a with <v_a | v_b> = s[a, b]."""
    lam, e = np.linalg.eigh(s)
    lam = np.clip(lam, 0.0, None)
    r = np.diag(np.sqrt(lam)) @ e.conj().T
    return [r[:, a] for a in range(s.shape[0])]


def first_quantization_probability(u, in_modes, out_counts, s):
    """Output-pattern probability by expanding over composite (mode, internal) slots."""
    n = len(in_modes)
    vs = internal_vectors(s)
    m = u.shape[0]
    total = 0.0
    per_mode = [list(itertools.combinations_with_replacement(range(n), c))
                for c in out_counts]
    for combo in itertools.product(*per_mode):
        slots = []
        for q, alphas in enumerate(combo):
            slots.extend((q, a) for a in alphas)
        mult = {}
        for slot in slots:
            mult[slot] = mult.get(slot, 0) + 1
        tfact = 1
        for v in mult.values():
            tfact *= math.factorial(v)
        w = np.empty((n, n), dtype=complex)
        for k in range(n):
            for l, (q, a) in enumerate(slots):
                w[k, l] = u[q, in_modes[k]] * vs[k][a]
        total += abs(permanent_definition(w)) ** 2 / tfact
    return total


def dense_distribution(u, in_modes, s):
    """Mode-count law from an explicit symmetrized tensor state; no permanents."""
    n = len(in_modes)
    m = u.shape[0]
    r = n
    vs = internal_vectors(s)
    chis = [np.kron(u[:, j], v) for j, v in zip(in_modes, vs)]
    dim = m * r
    psi = np.zeros((dim,) * n, dtype=complex)
    for pi in itertools.permutations(range(n)):
        term = chis[pi[0]]
        for k in range(1, n):
            term = np.tensordot(term, chis[pi[k]], axes=0)
        psi += term
    psi /= math.sqrt(math.factorial(n))
    probs = {}
    for idx in np.ndindex(*(dim,) * n):
        w = abs(psi[idx]) ** 2
        if w == 0.0:
            continue
        counts = [0] * m
        for mu in idx:
            counts[mu // r] += 1
        key = tuple(counts)
        probs[key] = probs.get(key, 0.0) + w
    return probs
