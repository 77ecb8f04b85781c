"""Adaptive-ansatz VQE landscape laboratory on exactly simulated molecular systems."""

from .adapt import (
    AdaptConfig,
    AdaptIteration,
    AdaptTrace,
    detect_gradient_trough,
    run_adapt,
    shuffle_ansatz,
    tie_break,
)
from .fermion import (
    FermionTerm,
    PauliOperator,
    commutator,
    fermion_terms_equal,
    hamiltonian_to_qubits,
    jordan_wigner,
    normal_order,
    number_operator,
    sz_operator,
)
from .hamio import (
    FcidumpError,
    MolecularHamiltonian,
    SpinOrbitalHamiltonian,
    determinant_energy,
    dump_fcidump,
    parse_fcidump,
    to_spin_orbitals,
)
from .landscape import (
    RestartRecord,
    TrapCluster,
    VarianceScan,
    cluster_traps,
    scan_ansatz,
    scan_sequence,
    variance_scan,
)
from .optimizer import OptimizationError, OptimizationResult, minimize
from .oracle import (
    FciSpectrum,
    dense_matrix,
    dimer_hamiltonian,
    fci_spectrum,
    ground_energy_dense,
    hf_occupation,
    ladder_matrix,
)
from .pool import PoolOperator, build_uccsd_pool, generator_cubes_to_minus_self, pool_manifest
from .statesim import (
    Ansatz,
    StateVector,
    ansatz_gradient,
    apply_generator_exp,
    apply_pauli_sum,
    basis_state,
    energy,
    hf_reference,
    pool_gradients,
    prepare_state,
    product_state,
)

__version__ = "0.1.0"
