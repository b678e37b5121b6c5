"""Maximization of smooth real cost functions over the unitary group.

Geodesic gradient ascent: the Euclidean gradient G (derivatives with respect
to conj(U)) is projected to the skew-Hermitian direction A = G U^dag - U G^dag
and the iterate moves along the exact geodesic U <- expm(mu A) U, so every
iterate stays unitary to machine precision.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .interferometers import rand_haar
from .model import Input, NumericError, first_modes

__all__ = [
    "UnitaryObjective",
    "finite_difference_gradient",
    "riemannian_ascent",
    "OptimizeResult",
    "trace_overlap_objective",
    "entry_modulus_objective",
    "bunching_objective",
    "write_trace_csv",
]


@dataclass
class UnitaryObjective:
    """A real cost f(U) plus optionally its gradient with respect to conj(U).

    Convention: for real f, df = 2 Re tr(G^dag dU) with G[j, k] =
    df/d(conj U[j, k]); e.g. f(U) = Re tr(V^dag U) has G = V / 2. Without an
    analytic gradient, central finite differences are used.
    """

    f: object
    euclidean_gradient: object = None


def finite_difference_gradient(f, u, h=1e-5):
    """Central differences on the real and imaginary part of every entry.

    Returns the matrix of df/d(conj U) entries, second-order accurate in h.
    """
    if h <= 0:
        raise ValueError("finite-difference step must be positive")
    u = np.asarray(u, dtype=np.complex128)
    g = np.zeros_like(u)
    for j in range(u.shape[0]):
        for k in range(u.shape[1]):
            e = np.zeros_like(u)
            e[j, k] = h
            d_re = (f(u + e) - f(u - e)) / (2.0 * h)
            d_im = (f(u + 1j * e) - f(u - 1j * e)) / (2.0 * h)
            g[j, k] = 0.5 * (d_re + 1j * d_im)
    if not np.all(np.isfinite(g.real)) or not np.all(np.isfinite(g.imag)):
        raise NumericError("objective produced a non-finite finite-difference gradient")
    return g


@dataclass
class OptimizeResult:
    U: np.ndarray
    f: float
    trace: list  # rows (iteration, f, grad_norm)


def riemannian_ascent(obj, m, step=0.1, max_iter=500, tol=1e-8, seed=None,
                      start=None, fd_step=1e-5):
    """Maximize obj.f over m x m unitaries by geodesic gradient ascent.

    Backtracking halves the step until the objective does not decrease; the
    step resets each iteration. Stops when max|A| < tol or after max_iter
    iterations. The accepted objective sequence is non-decreasing.
    """
    if step <= 0.0 or tol <= 0.0:
        raise ValueError("step and tol must be positive")
    u = np.array(start, dtype=np.complex128) if start is not None \
        else np.array(rand_haar(m, seed).U)
    f = float(obj.f(u))
    if not math.isfinite(f):
        raise NumericError("objective is not finite at the starting point")
    rows = []
    it = 0
    while it < max_iter:
        g = (obj.euclidean_gradient(u) if obj.euclidean_gradient is not None
             else finite_difference_gradient(obj.f, u, fd_step))
        g = np.asarray(g, dtype=np.complex128)
        if not np.all(np.isfinite(g.real)) or not np.all(np.isfinite(g.imag)):
            raise NumericError("gradient is not finite")
        a = g @ u.conj().T - u @ g.conj().T
        grad_norm = float(np.max(np.abs(a)))
        rows.append((it, f, grad_norm))
        if grad_norm < tol:
            break
        mu = step
        accepted = False
        for _ in range(60):
            u_new = scipy.linalg.expm(mu * a) @ u
            f_new = float(obj.f(u_new))
            if not math.isfinite(f_new):
                raise NumericError("objective is not finite during line search")
            if f_new >= f:
                accepted = True
                break
            mu *= 0.5
        if not accepted:
            break  # no ascent direction at floating-point resolution
        u, f = u_new, f_new
        it += 1
    else:
        g = (obj.euclidean_gradient(u) if obj.euclidean_gradient is not None
             else finite_difference_gradient(obj.f, u, fd_step))
        a = np.asarray(g, np.complex128) @ u.conj().T - u @ np.asarray(g, np.complex128).conj().T
        rows.append((it, f, float(np.max(np.abs(a)))))
    return OptimizeResult(U=u, f=f, trace=rows)


# --- objective catalogue ------------------------------------------------------


def trace_overlap_objective(v):
    """f(U) = Re tr(V^dag U); the unique maximum over U(m) is U = V with f = m."""
    v = np.asarray(v, dtype=np.complex128)

    def f(u):
        return float(np.real(np.trace(v.conj().T @ u)))

    def grad(u):
        return v / 2.0

    return UnitaryObjective(f, grad)


def entry_modulus_objective(j=0, k=0):
    """f(U) = |U[j, k]|^2, maximized at 1 by column normalization."""

    def f(u):
        return float(abs(u[j, k]) ** 2)

    def grad(u):
        g = np.zeros_like(np.asarray(u, np.complex128))
        g[j, k] = u[j, k]
        return g

    return UnitaryObjective(f, grad)


def bunching_objective(n, subset_modes, m):
    """Probability that all n indistinguishable photons exit in a mode subset.

    Evaluated through the characteristic function so that finite-difference
    probes slightly off the unitary manifold stay well-defined.
    """
    from .partitions import Partition, Subset, characteristic_function

    inp = Input(first_modes(n, m))
    part = Partition((Subset(m, tuple(subset_modes)),))
    grid = n + 1

    def f(u):
        total = 0.0 + 0.0j
        for q in range(grid):
            g = characteristic_function(inp, u, part, [2.0 * np.pi * q / grid])
            total += g * np.exp(-2j * np.pi * q * n / grid)
        return float((total / grid).real)

    return UnitaryObjective(f, None)


def write_trace_csv(path, result):
    """CSV rows (iter, f, grad_norm)."""
    lines = ["iter,f,grad_norm"]
    for it, f, gn in result.trace:
        lines.append(f"{it},{f!r},{gn!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
