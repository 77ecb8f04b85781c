"""Shared fixtures: parsed systems, pools, references, and cached runs.

The heavyweight session fixtures (adaptive traces, restart scans) are shared
between the unit tests and the acceptance suite so each expensive experiment
runs once per session.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

import adaptlab as al
from adaptlab.fixtures import load_fixture, load_manifest


class System:
    """Everything the tests need for one fixture."""

    def __init__(self, name: str):
        self.name = name
        self.molecular = load_fixture(name)
        self.info = load_manifest()[name]
        self.spin_orbital = al.to_spin_orbitals(self.molecular)
        self.H = al.hamiltonian_to_qubits(self.spin_orbital)
        self.n_so = 2 * self.molecular.n_spatial
        self.n_electrons = self.molecular.n_electrons
        self.ms2 = self.molecular.ms2
        self.pool = al.build_uccsd_pool(self.n_so, self.n_electrons, self.ms2)
        self.ref = al.hf_reference(self.n_so, self.n_electrons, self.ms2)


@pytest.fixture(scope="session")
def h2():
    return System("h2")


@pytest.fixture(scope="session")
def h4():
    return System("h4_1a")


@pytest.fixture(scope="session")
def h4_3a():
    return System("h4_3a")


@pytest.fixture(scope="session")
def h6():
    return System("h6_1a")


@pytest.fixture(scope="session")
def h4_trace(h4):
    """Standard recycled growth on H4 at 1 A (the criterion-5 run)."""
    cfg = al.AdaptConfig(eps=1e-6, max_ops=60)
    start = time.perf_counter()
    trace = al.run_adapt(h4.H, h4.pool, h4.ref, cfg, fci_energy=h4.info.fci_energy)
    trace.elapsed = time.perf_counter() - start
    return trace


@pytest.fixture(scope="session")
def h4_3a_trace(h4_3a):
    cfg = al.AdaptConfig(eps=1e-6, max_ops=80)
    return al.run_adapt(
        h4_3a.H, h4_3a.pool, h4_3a.ref, cfg, fci_energy=h4_3a.info.fci_energy
    )


@pytest.fixture(scope="session")
def h4_scan(h4, h4_trace):
    """50 random restarts per length over the whole H4 trace (criterion 6)."""
    lengths = list(range(1, len(h4_trace.iterations) + 1))
    start = time.perf_counter()
    records = al.scan_ansatz(
        h4.H, h4.pool, h4.ref, lengths, h4_trace,
        n_random=50, master_seed=2024, threads=2,
    )
    return records, time.perf_counter() - start


@pytest.fixture(scope="session")
def h4_n4_trace(h4):
    cfg = al.AdaptConfig(eps=1e-6, max_ops=40, repetition=4)
    start = time.perf_counter()
    trace = al.run_adapt(h4.H, h4.pool, h4.ref, cfg, fci_energy=h4.info.fci_energy)
    trace.elapsed = time.perf_counter() - start
    return trace


@pytest.fixture(scope="session")
def h4_n4_scan(h4, h4_n4_trace):
    lengths = list(range(1, len(h4_n4_trace.iterations) + 1))
    start = time.perf_counter()
    records = al.scan_ansatz(
        h4.H, h4.pool, h4.ref, lengths, h4_n4_trace,
        n_random=50, master_seed=2024, threads=2,
    )
    return records, time.perf_counter() - start


@pytest.fixture(scope="session")
def h6_trace30(h6):
    """H6 at 1 A truncated to 30 operators (criterion 11 center)."""
    cfg = al.AdaptConfig(eps=1e-6, max_ops=30)
    return al.run_adapt(h6.H, h6.pool, h6.ref, cfg, fci_energy=h6.info.fci_energy)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def random_state(n_qubits: int, rng: np.random.Generator) -> al.StateVector:
    amp = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    amp /= np.linalg.norm(amp)
    return al.StateVector(n_qubits, amp)
