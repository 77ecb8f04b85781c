import numpy as np
import pytest
from pytest import approx

from adaptlab.optimizer import OptimizationError, minimize
from adaptlab.statesim import Ansatz, energy, prepare_state, ansatz_gradient


def quadratic_bowl(center):
    def objective(theta):
        d = theta - center
        return float(d @ d), 2.0 * d

    return objective


def test_quadratic_bowl_exact(rng):
    center = rng.normal(size=6)
    res = minimize(quadratic_bowl(center), rng.normal(size=6), gtol=1e-10)
    assert res.converged
    assert np.max(np.abs(res.theta_opt - center)) < 1e-8
    assert res.energy == approx(0.0, abs=1e-15)


def test_h2_single_parameter_reaches_fci(h2):
    def objective(t):
        a = Ansatz([2], t)
        return (
            energy(h2.H, prepare_state(a, h2.pool, h2.ref)),
            ansatz_gradient(h2.H, a, h2.pool, h2.ref),
        )

    res = minimize(objective, np.zeros(1), gtol=1e-9)
    assert res.converged
    assert res.energy == approx(h2.info.fci_energy, abs=1e-9)


def test_stationary_start_returns_immediately(rng):
    center = rng.normal(size=4)
    res = minimize(quadratic_bowl(center), center.copy(), gtol=1e-9)
    assert res.converged
    assert res.n_iterations <= 1
    assert np.max(np.abs(res.theta_opt - center)) < 1e-8


def test_monotone_improvement_from_start(h4, rng):
    ops = list(rng.integers(0, len(h4.pool), size=5))
    theta0 = rng.uniform(0, 2 * np.pi, size=5)

    def objective(t):
        a = Ansatz(ops, t)
        return (
            energy(h4.H, prepare_state(a, h4.pool, h4.ref)),
            ansatz_gradient(h4.H, a, h4.pool, h4.ref),
        )

    e0 = objective(theta0)[0]
    res = minimize(objective, theta0)
    assert res.energy <= e0 + 1e-12
    assert res.grad_inf_norm <= 1e-9 or not res.converged


def test_converged_implies_gradient_below_gtol(h2):
    def objective(t):
        a = Ansatz([2], t)
        return (
            energy(h2.H, prepare_state(a, h2.pool, h2.ref)),
            ansatz_gradient(h2.H, a, h2.pool, h2.ref),
        )

    for gtol in (1e-6, 1e-9):
        res = minimize(objective, np.array([0.3]), gtol=gtol)
        if res.converged:
            assert res.grad_inf_norm <= gtol


def test_deterministic_iterates(h4, rng):
    ops = [1, 8, 20]
    theta0 = rng.uniform(0, 2 * np.pi, size=3)

    def make_logged():
        log = []

        def objective(t):
            log.append(t.copy())
            a = Ansatz(ops, t)
            return (
                energy(h4.H, prepare_state(a, h4.pool, h4.ref)),
                ansatz_gradient(h4.H, a, h4.pool, h4.ref),
            )

        return objective, log

    obj1, log1 = make_logged()
    obj2, log2 = make_logged()
    r1 = minimize(obj1, theta0)
    r2 = minimize(obj2, theta0)
    assert len(log1) == len(log2)
    for a, b in zip(log1, log2):
        assert np.array_equal(a, b)
    assert np.array_equal(r1.theta_opt, r2.theta_opt)
    assert r1.energy == r2.energy


def test_energy_eval_count():
    calls = 0

    def objective(t):
        nonlocal calls
        calls += 1
        return float(t @ t), 2.0 * t

    res = minimize(objective, np.ones(3))
    assert res.n_energy_evals == calls


def test_non_finite_raises():
    def objective(t):
        return float("nan"), np.zeros(2)

    with pytest.raises(OptimizationError, match="non-finite"):
        minimize(objective, np.zeros(2))


def test_line_search_failure_returns_best_so_far():
    # |x| has no descent curvature information at the kink
    def objective(t):
        return float(np.abs(t[0])), np.array([np.sign(t[0]) or 1.0])

    res = minimize(objective, np.array([1.0]), gtol=1e-12)
    assert not res.converged
    assert res.energy <= 1.0


def test_empty_parameter_vector():
    res = minimize(lambda t: (3.5, np.zeros(0)), np.zeros(0))
    assert res.converged
    assert res.energy == 3.5


def test_max_iter_respected():
    def rosenbrock(t):
        x, y = t
        f = (1 - x) ** 2 + 100 * (y - x * x) ** 2
        g = np.array([-2 * (1 - x) - 400 * x * (y - x * x), 200 * (y - x * x)])
        return float(f), g

    res = minimize(rosenbrock, np.array([-1.2, 1.0]), gtol=1e-12, max_iter=3)
    assert res.n_iterations <= 3
    assert not res.converged
