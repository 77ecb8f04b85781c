"""Paper-scale reproductions, excluded from the default run (pytest -m slow)."""

import numpy as np
import pytest

import adaptlab as al

pytestmark = pytest.mark.slow


def test_h6_3a_median_trap_energy_rises_with_depth():
    from conftest import System

    sys_ = System("h6_3a")
    cfg = al.AdaptConfig(eps=1e-6, max_ops=45)
    trace = al.run_adapt(sys_.H, sys_.pool, sys_.ref, cfg,
                         fci_energy=sys_.info.fci_energy)
    assert len(trace.iterations) >= 45
    records = al.scan_ansatz(sys_.H, sys_.pool, sys_.ref, [30, 45], trace,
                             n_random=50, master_seed=2024, threads=2)

    def median_cluster_energy(recs):
        clusters = al.cluster_traps([r for r in recs if r.converged], tol=1e-8)
        return float(np.median([c.energy for c in clusters]))

    # deeper ansatz: traps proliferate and their median energy rises
    assert median_cluster_energy(records[45]) > median_cluster_energy(records[30])


def test_h6_1a_full_71_parameter_variance_scan():
    from conftest import System

    sys_ = System("h6_1a")
    cfg = al.AdaptConfig(eps=1e-6, max_ops=71)
    trace = al.run_adapt(sys_.H, sys_.pool, sys_.ref, cfg,
                         fci_energy=sys_.info.fci_energy)
    widths = [np.pi / 8, np.pi / 4, np.pi / 2, np.pi, 2 * np.pi]
    scan = al.variance_scan(sys_.H, sys_.pool, trace.ansatz, sys_.ref,
                            trace.ansatz.theta, widths, samples_per_width=100,
                            master_seed=5)
    assert np.all(scan.variances >= 0.0)
    assert np.all(np.isfinite(scan.variances))
    # stationary-point limit
    probe = al.variance_scan(sys_.H, sys_.pool, trace.ansatz, sys_.ref,
                             trace.ansatz.theta, [1e-3], samples_per_width=50,
                             master_seed=5)
    assert probe.variances[0] < scan.variances[2]
