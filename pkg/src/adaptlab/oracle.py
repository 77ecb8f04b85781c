"""Exact ground truth: dense operator matrices, sector-restricted FCI spectra,
and the non-interacting dimer construction.

Everything here is built independently of the statevector engine so it can
serve as an oracle for it: dense matrices come from explicit Kronecker
products of 2x2 Paulis, ladder matrices from fermionic sign rules applied
directly to occupation bitstrings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fermion import PauliOperator
from .hamio import MolecularHamiltonian

_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)

PAULI_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

DENSE_QUBIT_GUARD = 12


def dense_matrix(op: PauliOperator, max_qubits: int = DENSE_QUBIT_GUARD) -> np.ndarray:
    """Explicit 2^n x 2^n matrix of a PauliOperator via Kronecker products.

    Qubit q is bit q of the basis index, i.e. the q-th factor counted from
    the right of the Kronecker chain.
    """
    n = op.n_qubits
    if n > max_qubits:
        raise ValueError(f"dense matrix guard: {n} qubits > {max_qubits}")
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    for letters, coeff in _iter_strings(op):
        mat = np.array([[1.0 + 0.0j]])
        for q in range(n - 1, -1, -1):
            mat = np.kron(mat, PAULI_MATS[letters[q]])
        out += coeff * mat
    return out


def _iter_strings(op: PauliOperator):
    for key in sorted(op.terms):
        yield op.string_of(key), op.terms[key]


def ladder_matrix(p: int, n_qubits: int, create: bool) -> np.ndarray:
    """Dense matrix of a_p or a†_p from fermionic sign rules on bitstrings."""
    dim = 1 << n_qubits
    below = (1 << p) - 1
    out = np.zeros((dim, dim), dtype=complex)
    for b in range(dim):
        occupied = (b >> p) & 1
        if create == bool(occupied):
            continue
        sign = -1.0 if ((b & below).bit_count() & 1) else 1.0
        out[b ^ (1 << p), b] = sign
    return out


def _sector_basis(n_qubits: int, n_alpha: int, n_beta: int) -> np.ndarray:
    alpha_mask = sum(1 << q for q in range(0, n_qubits, 2))
    beta_mask = sum(1 << q for q in range(1, n_qubits, 2))
    b = np.arange(1 << n_qubits, dtype=np.uint64)
    na = np.bitwise_count(b & np.uint64(alpha_mask))
    nb = np.bitwise_count(b & np.uint64(beta_mask))
    return b[(na == n_alpha) & (nb == n_beta)]


def sector_matrix(op: PauliOperator, basis: np.ndarray) -> np.ndarray:
    """Matrix of ``op`` restricted (projected) onto the given basis states."""
    dim = len(basis)
    out = np.zeros((dim, dim), dtype=complex)
    cols = np.arange(dim)
    for (x, z), coeff in op.terms.items():
        xs, zs = np.uint64(x), np.uint64(z)
        pref = coeff * _I_POW[(x & z).bit_count() & 3]
        target = basis ^ xs
        rows = np.searchsorted(basis, target)
        rows = np.clip(rows, 0, dim - 1)
        valid = basis[rows] == target
        sign = 1.0 - 2.0 * (np.bitwise_count(basis & zs) & np.uint64(1)).astype(float)
        out[rows[valid], cols[valid]] += pref * sign[valid]
    return out


@dataclass
class FciSpectrum:
    """Lowest eigenvalues of a qubit Hamiltonian within one (N_alpha, N_beta) sector."""

    eigenvalues: np.ndarray
    ground_energy: float
    hf_energy: float
    excited_below_hf: np.ndarray
    n_alpha: int
    n_beta: int
    basis: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)  # (sector_dim, k), sector coords

    def ground_state_full(self) -> np.ndarray:
        """Ground eigenvector embedded in the full 2^n space."""
        return self.embed(self.eigenvectors[:, 0])

    def embed(self, vec: np.ndarray) -> np.ndarray:
        full = np.zeros(self._full_dim, dtype=complex)
        full[self.basis.astype(np.int64)] = vec
        return full

    _full_dim: int = 0


def hf_occupation(n_qubits: int, n_electrons: int, ms2: int = 0) -> list[int]:
    """Lowest spin orbitals consistent with ms2, interleaved ordering."""
    if (n_electrons + ms2) % 2 != 0:
        raise ValueError("n_electrons and ms2 have incompatible parity")
    n_alpha = (n_electrons + ms2) // 2
    n_beta = n_electrons - n_alpha
    if n_alpha < 0 or n_beta < 0:
        raise ValueError("negative spin-channel occupation")
    occ = [2 * p for p in range(n_alpha)] + [2 * p + 1 for p in range(n_beta)]
    if any(p >= n_qubits for p in occ):
        raise ValueError("occupation exceeds qubit count")
    return sorted(occ)


def diagonal_element(op: PauliOperator, basis_index: int) -> float:
    """<b|op|b> for a computational basis state, from the Z-diagonal terms."""
    val = 0.0
    for (x, z), coeff in op.terms.items():
        if x:
            continue
        sign = -1.0 if ((basis_index & z).bit_count() & 1) else 1.0
        val += (coeff * sign).real
    return val


def fci_spectrum(
    H: PauliOperator, n_electrons: int, ms2: int, k: int = 1
) -> FciSpectrum:
    """Lowest k eigenvalues of H in the (N_alpha, N_beta) sector of the HF state.

    The HF energy used for the below-HF classification is the diagonal element
    of the lowest-orbital determinant consistent with ms2.
    """
    if H.n_qubits > 16:
        raise ValueError("sector diagonalization limited to 16 qubits")
    n_alpha = (n_electrons + ms2) // 2
    n_beta = n_electrons - n_alpha
    basis = _sector_basis(H.n_qubits, n_alpha, n_beta)
    if len(basis) == 0:
        raise ValueError(f"empty ({n_alpha},{n_beta}) sector")
    mat = sector_matrix(H, basis)
    herm_err = float(np.max(np.abs(mat - mat.conj().T)))
    if herm_err > 1e-10:
        raise ValueError(f"sector matrix not Hermitian ({herm_err:.3e})")
    evals, evecs = np.linalg.eigh(mat)
    k = min(k, len(evals))

    hf_bits = sum(1 << q for q in hf_occupation(H.n_qubits, n_electrons, ms2))
    e_hf = diagonal_element(H, hf_bits)
    spectrum = FciSpectrum(
        eigenvalues=evals[:k].copy(),
        ground_energy=float(evals[0]),
        hf_energy=e_hf,
        excited_below_hf=evals[1:][evals[1:] < e_hf].copy(),
        n_alpha=n_alpha,
        n_beta=n_beta,
        basis=basis,
        eigenvectors=evecs[:, :k].copy(),
    )
    spectrum._full_dim = 1 << H.n_qubits
    return spectrum


def ground_energy_dense(H: PauliOperator, max_qubits: int = DENSE_QUBIT_GUARD) -> float:
    """Minimum eigenvalue over the FULL space, via the dense Kronecker matrix."""
    return float(np.linalg.eigvalsh(dense_matrix(H, max_qubits))[0])


def dimer_hamiltonian(monomer: MolecularHamiltonian) -> MolecularHamiltonian:
    """Two non-interacting copies of a molecule, by integral surgery.

    Block-diagonal doubling of h and g with all cross-system integrals exactly
    zero; spatial orbitals 0..n-1 are system A and n..2n-1 system B.
    """
    n = monomer.n_spatial
    h = np.zeros((2 * n, 2 * n))
    h[:n, :n] = monomer.h
    h[n:, n:] = monomer.h
    g = np.zeros((2 * n,) * 4)
    g[:n, :n, :n, :n] = monomer.g
    g[n:, n:, n:, n:] = monomer.g
    return MolecularHamiltonian(
        n_spatial=2 * n,
        n_electrons=2 * monomer.n_electrons,
        ms2=2 * monomer.ms2,
        e_nuc=2 * monomer.e_nuc,
        h=h,
        g=g,
    )
