"""Trap enumeration by random restarts and hypercube gradient-variance scans.

For each ansatz length the scan optimizes ``n_random`` uniform random
initializations on [0, 2pi) per parameter, plus the recycled initialization
(previous length's optimum with the new parameter at zero) and the all-zero
initialization.  Per-restart seeds derive from (master_seed, length, index)
so the records are identical no matter how the work is scheduled.
"""

from __future__ import annotations

import multiprocessing as mp
from dataclasses import dataclass, field

import numpy as np

from .adapt import AdaptTrace, _grow_theta
from .fermion import PauliOperator
from .optimizer import minimize
from .pool import PoolOperator
from .statesim import Ansatz, StateVector, ansatz_gradient, energy, prepare_state

TWO_PI = 2.0 * np.pi


@dataclass
class RestartRecord:
    init_kind: str  # "random" | "recycled" | "zero"
    seed: int | None
    theta_init: np.ndarray = field(repr=False)
    energy_opt: float = 0.0
    fci_error: float = float("nan")
    converged: bool = False


@dataclass
class TrapCluster:
    energy: float  # representative (lowest member) energy
    size: int
    spread: float


@dataclass
class VarianceScan:
    widths: np.ndarray
    variances: np.ndarray
    samples_per_width: int
    center: np.ndarray = field(repr=False)


def derive_restart_seed(master_seed: int, length: int, index: int) -> int:
    """Scheduling-independent 64-bit seed for one restart."""
    words = np.random.SeedSequence((master_seed, length, index)).generate_state(2)
    return int(words[0]) | (int(words[1]) << 32)


# Context shared with forked workers; read-only after _scan_jobs sets it.
_CTX: dict | None = None


def _optimize_restart(job: tuple[int, str, int | None, np.ndarray]) -> tuple:
    length, kind, seed, theta0 = job
    ctx = _CTX
    ops = ctx["op_sequence"][:length]
    repetition = ctx["repetition"]
    H, pool, ref = ctx["H"], ctx["pool"], ctx["ref"]

    def objective(t: np.ndarray) -> tuple[float, np.ndarray]:
        a = Ansatz(ops, t, repetition)
        return energy(H, prepare_state(a, pool, ref)), ansatz_gradient(H, a, pool, ref)

    res = minimize(objective, theta0, gtol=ctx["gtol"], max_iter=ctx["max_opt_iter"])
    return length, kind, seed, theta0, res.energy, res.converged, res.theta_opt


def scan_sequence(
    H: PauliOperator,
    pool: list[PoolOperator],
    ref: StateVector,
    op_sequence: list[int],
    prefix_lengths: list[int],
    n_random: int,
    master_seed: int,
    repetition: int = 1,
    recycled_thetas: dict[int, np.ndarray] | None = None,
    fci_energy: float | None = None,
    gtol: float = 1e-9,
    max_opt_iter: int | None = 10000,
    threads: int = 1,
) -> dict[int, list[RestartRecord]]:
    """Restart scan over prefixes of a fixed operator sequence.

    ``recycled_thetas`` maps length L to the optimum used to warm-start
    length L+1; when absent the recycled chain is computed within the scan
    (the incremental re-optimization used for shuffled ansaetze).
    """
    global _CTX
    lengths = sorted(set(prefix_lengths))
    if any(L < 1 or L > len(op_sequence) for L in lengths):
        raise ValueError("prefix length outside the operator sequence")

    _CTX = {
        "H": H,
        "pool": pool,
        "ref": ref,
        "op_sequence": list(op_sequence),
        "repetition": repetition,
        "gtol": gtol,
        "max_opt_iter": max_opt_iter,
    }
    try:
        # Phase 1: recycled chain, sequentially (each length warm-starts the next).
        recycled_jobs: list[tuple[int, str, int | None, np.ndarray]] = []
        if recycled_thetas is None:
            chain: dict[int, tuple] = {}
            prev = np.zeros(0)
            prev_len = 0
            for L in range(1, max(lengths) + 1):
                theta0 = prev
                for grow in range(prev_len + 1, L + 1):
                    theta0 = _grow_theta(theta0, grow, repetition)
                _, _, _, _, e, conv, theta_opt = _optimize_restart(
                    (L, "recycled", None, theta0)
                )
                chain[L] = (theta0, e, conv, theta_opt)
                prev, prev_len = theta_opt, L
            recycled_results = {
                L: (chain[L][0], chain[L][1], chain[L][2]) for L in lengths
            }
        else:
            for L in lengths:
                prev = recycled_thetas.get(L - 1, np.zeros(0))
                if len(prev) != (L - 1) * repetition:
                    raise ValueError(f"recycled theta for length {L - 1} has wrong size")
                recycled_jobs.append((L, "recycled", None, _grow_theta(prev, L, repetition)))

        # Phase 2: zero and random restarts, order-independent.
        jobs: list[tuple[int, str, int | None, np.ndarray]] = list(recycled_jobs)
        for L in lengths:
            d = L * repetition
            jobs.append((L, "zero", None, np.zeros(d)))
            for idx in range(n_random):
                seed = derive_restart_seed(master_seed, L, idx)
                rng = np.random.default_rng(seed)
                jobs.append((L, "random", seed, rng.uniform(0.0, TWO_PI, size=d)))

        if threads > 1 and len(jobs) > 1:
            with mp.get_context("fork").Pool(processes=threads) as workers:
                results = workers.map(_optimize_restart, jobs)
        else:
            results = [_optimize_restart(job) for job in jobs]
    finally:
        _CTX = None

    by_length: dict[int, list[RestartRecord]] = {L: [] for L in lengths}
    if recycled_thetas is None:
        for L in lengths:
            theta0, e, conv = recycled_results[L]
            by_length[L].append(_record("recycled", None, theta0, e, conv, fci_energy))
    for length, kind, seed, theta0, e, conv, _ in results:
        by_length[length].append(_record(kind, seed, theta0, e, conv, fci_energy))
    for L in lengths:
        by_length[L].sort(key=_record_order)
    return by_length


def _record(kind, seed, theta0, e, conv, fci_energy) -> RestartRecord:
    return RestartRecord(
        init_kind=kind,
        seed=seed,
        theta_init=np.asarray(theta0, dtype=float),
        energy_opt=float(e),
        fci_error=e - fci_energy if fci_energy is not None else float("nan"),
        converged=bool(conv),
    )


_KIND_ORDER = {"recycled": 0, "zero": 1, "random": 2}


def _record_order(r: RestartRecord) -> tuple:
    return (_KIND_ORDER[r.init_kind], r.seed if r.seed is not None else -1)


def scan_ansatz(
    H: PauliOperator,
    pool: list[PoolOperator],
    ref: StateVector,
    ansatz_prefix_lengths: list[int],
    trace: AdaptTrace,
    n_random: int = 300,
    master_seed: int = 0,
    gtol: float = 1e-9,
    max_opt_iter: int | None = 10000,
    threads: int = 1,
) -> dict[int, list[RestartRecord]]:
    """Restart scan over prefixes of an adaptive-growth trace.

    Recycled initializations take the trace's optimum at length L-1 with the
    new parameters at zero, exactly as the growth loop itself did.
    """
    recycled = {0: np.zeros(0)}
    for k, it in enumerate(trace.iterations):
        recycled[k + 1] = it.theta
    return scan_sequence(
        H,
        pool,
        ref,
        trace.ansatz.op_indices,
        ansatz_prefix_lengths,
        n_random,
        master_seed,
        repetition=trace.ansatz.repetition,
        recycled_thetas=recycled,
        fci_energy=trace.fci_energy,
        gtol=gtol,
        max_opt_iter=max_opt_iter,
        threads=threads,
    )


def cluster_traps(records: list[RestartRecord], tol: float = 1e-8) -> list[TrapCluster]:
    """Single-linkage clustering of optimized energies with gap threshold tol."""
    if not records:
        return []
    energies = np.sort([r.energy_opt for r in records])
    clusters: list[TrapCluster] = []
    start = 0
    for i in range(1, len(energies) + 1):
        if i == len(energies) or energies[i] - energies[i - 1] > tol:
            members = energies[start:i]
            clusters.append(
                TrapCluster(
                    energy=float(members[0]),
                    size=len(members),
                    spread=float(members[-1] - members[0]),
                )
            )
            start = i
    return clusters


def variance_scan(
    H: PauliOperator,
    pool: list[PoolOperator],
    ansatz: Ansatz,
    ref: StateVector,
    theta_star: np.ndarray,
    widths: list[float],
    samples_per_width: int,
    master_seed: int = 0,
) -> VarianceScan:
    """Pooled gradient-component variance over hypercubes [theta*-w, theta*+w)^d."""
    theta_star = np.asarray(theta_star, dtype=float)
    if len(theta_star) != len(ansatz.theta):
        raise ValueError("theta_star length does not match the ansatz")
    d = len(theta_star)
    variances = []
    for w_index, w in enumerate(widths):
        rng = np.random.default_rng(
            np.random.SeedSequence((master_seed, w_index))
        )
        components = np.empty((samples_per_width, d))
        for s in range(samples_per_width):
            theta = theta_star + rng.uniform(-w, w, size=d)
            a = Ansatz(ansatz.op_indices, theta, ansatz.repetition)
            components[s] = ansatz_gradient(H, a, pool, ref)
        variances.append(float(np.var(components)))
    return VarianceScan(
        widths=np.asarray(widths, dtype=float),
        variances=np.asarray(variances),
        samples_per_width=samples_per_width,
        center=theta_star.copy(),
    )
