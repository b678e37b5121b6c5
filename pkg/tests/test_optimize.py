import numpy as np
import pytest

from bosonsim import (
    UnitaryObjective,
    finite_difference_gradient,
    rand_haar,
    riemannian_ascent,
)
from bosonsim.model import NumericError
from bosonsim.optimize import (
    bunching_objective,
    entry_modulus_objective,
    trace_overlap_objective,
)


def unitarity_defect(u):
    return np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))


def test_finite_difference_matches_analytic_trace_overlap():
    v = rand_haar(4, seed=1).U
    obj = trace_overlap_objective(v)
    u = rand_haar(4, seed=2).U
    fd = finite_difference_gradient(obj.f, u, h=1e-5)
    assert np.max(np.abs(fd - v / 2.0)) < 1e-9


def test_finite_difference_constant_function_is_zero():
    h = 1e-5
    fd = finite_difference_gradient(lambda u: 3.25, rand_haar(3, seed=3).U, h=h)
    assert np.max(np.abs(fd)) <= 10 * h * h


def test_finite_difference_second_order():
    # quartic objective so the FD error term is nonzero and scales as h^2
    def f(u):
        return float(np.sum(np.abs(u) ** 4))

    u = rand_haar(3, seed=4).U

    def err(h):
        fd = finite_difference_gradient(f, u, h=h)
        exact = 2 * np.abs(u) ** 2 * u  # d/d(conj u) of sum |u|^4
        return np.max(np.abs(fd - exact))

    e1, e2 = err(2e-3), err(1e-3)
    assert 3.0 < e1 / e2 < 5.0


def test_finite_difference_rejects_bad_step():
    with pytest.raises(ValueError):
        finite_difference_gradient(lambda u: 0.0, np.eye(2), h=0.0)


def test_trace_overlap_ascent_converges():
    m = 4
    v = rand_haar(m, seed=10).U
    obj = trace_overlap_objective(v)
    result = riemannian_ascent(obj, m, step=0.2, max_iter=2000, tol=1e-9, seed=0)
    assert result.f >= m - 1e-6
    assert np.max(np.abs(result.U - v)) < 1e-3


def test_entry_modulus_ascent_reaches_one():
    obj = entry_modulus_objective(0, 0)
    result = riemannian_ascent(obj, 3, step=0.3, max_iter=1000, tol=1e-9, seed=1)
    assert result.f >= 1.0 - 1e-6


def test_iterates_stay_unitary_and_ascent_is_monotone():
    m = 4
    v = rand_haar(m, seed=20).U
    seen = []
    base = trace_overlap_objective(v)

    def recording_f(u):
        seen.append(np.array(u))
        return base.f(u)

    obj = UnitaryObjective(recording_f, base.euclidean_gradient)
    result = riemannian_ascent(obj, m, step=0.1, max_iter=300, tol=1e-8, seed=2)
    assert all(unitarity_defect(u) <= 1e-10 for u in seen)
    fs = [row[1] for row in result.trace]
    assert all(b >= a - 1e-12 for a, b in zip(fs, fs[1:]))
    assert result.trace[0][0] == 0


def test_constant_objective_returns_start():
    obj = UnitaryObjective(lambda u: 1.0, lambda u: np.zeros((3, 3), complex))
    start = rand_haar(3, seed=30).U
    result = riemannian_ascent(obj, 3, start=start, tol=1e-10)
    assert np.array_equal(result.U, start)
    assert len(result.trace) == 1
    assert result.trace[0][2] == 0.0


def test_scaling_objective_keeps_stationary_points():
    m = 3
    v = rand_haar(m, seed=40).U
    result = riemannian_ascent(trace_overlap_objective(v), m, step=0.2,
                               max_iter=2000, tol=1e-9, seed=3)
    u_star = result.U

    def residual(scale):
        g = scale * v / 2.0
        a = g @ u_star.conj().T - u_star @ g.conj().T
        return np.max(np.abs(a))

    # scaling f by a positive constant scales the gradient field linearly,
    # leaving the stationary set unchanged
    assert residual(2.0) == pytest.approx(2.0 * residual(1.0), rel=1e-9)
    assert residual(2.0) < 2e-8


def test_non_finite_objective_raises():
    obj = UnitaryObjective(lambda u: float("nan"), lambda u: np.zeros((2, 2)))
    with pytest.raises(NumericError):
        riemannian_ascent(obj, 2, seed=0)


def test_bunching_objective_two_photons():
    # two photons, subset = one of two modes: the balanced coupler is optimal
    # with bunching probability 1/2
    obj = bunching_objective(2, (0,), 2)
    result = riemannian_ascent(obj, 2, step=0.3, max_iter=400, tol=1e-7, seed=5)
    assert result.f == pytest.approx(0.5, abs=1e-4)


def test_trace_csv(tmp_path):
    from bosonsim.optimize import write_trace_csv

    v = rand_haar(3, seed=60).U
    result = riemannian_ascent(trace_overlap_objective(v), 3, max_iter=20, seed=6)
    write_trace_csv(tmp_path / "trace.csv", result)
    lines = (tmp_path / "trace.csv").read_text().splitlines()
    assert lines[0] == "iter,f,grad_norm"
    assert len(lines) == 1 + len(result.trace)
