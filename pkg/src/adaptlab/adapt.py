"""Adaptive ansatz growth driver.

Each iteration screens the pool gradients at the current optimized state,
appends the largest-magnitude operator to the front of the ansatz with its
new parameter at zero, recycles the previous optimal parameters, and hands
the enlarged ansatz to BFGS.  With ``repetition`` N > 1 the chosen operator
is added to all N collated blocks at once, each with a fresh zero parameter.
Growth stops when the pool-gradient criterion drops below ``eps`` or the
ansatz reaches ``max_ops`` operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .fermion import PauliOperator
from .optimizer import OptimizationError, OptimizationResult, minimize
from .pool import PoolOperator
from .statesim import Ansatz, StateVector, ansatz_gradient, energy, pool_gradients, prepare_state


@dataclass
class AdaptConfig:
    eps: float = 1e-6  # Hartree/radian, pool-gradient threshold
    max_ops: int = 200
    criterion: str = "max"  # "max" or "l2" of the pool-gradient vector
    repetition: int = 1
    recycle: bool = True
    gtol: float = 1e-9
    # overparametrized (N > 1) landscapes converge slowly; give BFGS room
    max_opt_iter: int | None = 10000

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.repetition < 1:
            raise ValueError("repetition must be >= 1")
        if self.criterion not in ("max", "l2"):
            raise ValueError(f"unknown criterion {self.criterion!r}")


@dataclass
class AdaptIteration:
    chosen_op_index: int
    max_pool_gradient: float  # signed value of the largest-|.| pool gradient
    pool_gradient_l2: float
    energy: float
    fci_error: float
    theta: np.ndarray = field(repr=False)
    opt: OptimizationResult | None = field(repr=False, default=None)


@dataclass
class AdaptTrace:
    iterations: list[AdaptIteration]
    ansatz: Ansatz
    hf_energy: float
    fci_energy: float | None
    config: AdaptConfig
    converged: bool = False

    def energies(self) -> np.ndarray:
        return np.array([it.energy for it in self.iterations])

    def max_gradients(self) -> np.ndarray:
        return np.array([abs(it.max_pool_gradient) for it in self.iterations])


def tie_break(g: np.ndarray, tol: float = 1e-12) -> int:
    """Index of the largest gradient magnitude; ties go to the lowest index."""
    g = np.abs(np.asarray(g))
    if g.size == 0:
        raise ValueError("empty pool")
    top = g.max()
    return int(np.nonzero(top - g <= tol)[0][0])


def _grow_theta(theta: np.ndarray, n_ops_new: int, repetition: int) -> np.ndarray:
    """Insert a zero for the new operator at the end of every collated block."""
    m_old = n_ops_new - 1
    out = np.zeros(n_ops_new * repetition)
    for block in range(repetition):
        out[block * n_ops_new : block * n_ops_new + m_old] = theta[
            block * m_old : (block + 1) * m_old
        ]
    return out


def run_adapt(
    H: PauliOperator,
    pool: list[PoolOperator],
    ref: StateVector,
    cfg: AdaptConfig,
    fci_energy: float | None = None,
    on_iteration: Callable[[int, AdaptIteration], None] | None = None,
) -> AdaptTrace:
    """Run the adaptive growth loop and return a full per-iteration trace."""
    hf_energy = energy(H, ref)
    iterations: list[AdaptIteration] = []
    ops: list[int] = []
    theta = np.zeros(0)
    state = ref
    converged = False

    def make_trace() -> AdaptTrace:
        return AdaptTrace(
            iterations=iterations,
            ansatz=Ansatz(ops.copy(), theta.copy(), cfg.repetition),
            hf_energy=hf_energy,
            fci_energy=fci_energy,
            config=cfg,
            converged=converged,
        )

    while True:
        g = pool_gradients(H, state, pool)
        crit = float(np.max(np.abs(g))) if cfg.criterion == "max" else float(
            np.linalg.norm(g)
        )
        if crit < cfg.eps:
            converged = True
            break
        if len(ops) >= cfg.max_ops:
            break

        choice = tie_break(np.abs(g))
        ops.append(choice)
        if cfg.recycle:
            theta = _grow_theta(theta, len(ops), cfg.repetition)
        else:
            theta = np.zeros(len(ops) * cfg.repetition)

        indices = ops.copy()

        def objective(t: np.ndarray) -> tuple[float, np.ndarray]:
            a = Ansatz(indices, t, cfg.repetition)
            s = prepare_state(a, pool, ref)
            return energy(H, s), ansatz_gradient(H, a, pool, ref)

        try:
            res = minimize(objective, theta, gtol=cfg.gtol, max_iter=cfg.max_opt_iter)
        except OptimizationError as err:
            err.trace = make_trace()
            raise
        theta = res.theta_opt
        state = prepare_state(Ansatz(indices, theta, cfg.repetition), pool, ref)

        record = AdaptIteration(
            chosen_op_index=choice,
            max_pool_gradient=float(g[choice]),
            pool_gradient_l2=float(np.linalg.norm(g)),
            energy=res.energy,
            fci_error=res.energy - fci_energy if fci_energy is not None else float("nan"),
            theta=theta.copy(),
            opt=res,
        )
        iterations.append(record)
        if on_iteration is not None:
            on_iteration(len(iterations), record)

    return make_trace()


def shuffle_ansatz(a: Ansatz, seed: int, theta: np.ndarray | None = None) -> Ansatz:
    """Permute the operator order with a seeded RNG; parameters are reset.

    Only defined for unrepeated ansaetze (N = 1).
    """
    if a.repetition != 1:
        raise ValueError("shuffle is only defined for repetition N = 1")
    perm = np.random.default_rng(seed).permutation(len(a.op_indices))
    new_ops = [a.op_indices[p] for p in perm]
    if theta is None:
        theta = np.zeros(len(new_ops))
    return Ansatz(new_ops, np.asarray(theta, dtype=float), 1)


def detect_gradient_trough(trace: AdaptTrace) -> list[tuple[int, int]]:
    """Iteration spans where the max pool gradient later recovers above itself.

    Returns inclusive (start, end) index pairs; empty when the series is
    non-increasing after its global maximum.
    """
    g = trace.max_gradients()
    if len(g) < 3:
        return []
    flagged = []
    suffix_max = -np.inf
    later_max = np.empty(len(g))
    for k in range(len(g) - 1, -1, -1):
        later_max[k] = suffix_max
        suffix_max = max(suffix_max, g[k])
    for k in range(len(g)):
        if g[k] < later_max[k]:
            flagged.append(k)
    spans: list[tuple[int, int]] = []
    for k in flagged:
        if spans and k == spans[-1][1] + 1:
            spans[-1] = (spans[-1][0], k)
        else:
            spans.append((k, k))
    return spans
