"""Restricted Hartree-Fock with DIIS, and the AO -> MO transformation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ScfError(RuntimeError):
    """SCF failed to converge; message records the settings used."""


@dataclass
class RhfResult:
    energy: float  # total, including nuclear repulsion
    e_nuc: float
    mo_coeff: np.ndarray  # (n_ao, n_mo), canonical orbitals, ascending energy
    mo_energy: np.ndarray
    n_electrons: int


def run_rhf(
    S: np.ndarray,
    hcore: np.ndarray,
    eri: np.ndarray,
    e_nuc: float,
    n_electrons: int,
    max_cycles: int = 400,
    conv_tol: float = 1e-10,
    diis_size: int = 8,
) -> RhfResult:
    """RHF with DIIS; stretched systems retry with damping and level shifts."""
    last_err: ScfError | None = None
    for damping, level_shift in ((0.0, 0.0), (0.5, 0.2), (0.7, 0.5), (0.8, 1.0)):
        try:
            return _run_rhf_once(
                S, hcore, eri, e_nuc, n_electrons,
                max_cycles, conv_tol, diis_size, damping, level_shift,
            )
        except ScfError as err:
            last_err = err
    raise last_err


def _run_rhf_once(
    S: np.ndarray,
    hcore: np.ndarray,
    eri: np.ndarray,
    e_nuc: float,
    n_electrons: int,
    max_cycles: int,
    conv_tol: float,
    diis_size: int,
    damping: float,
    level_shift: float,
) -> RhfResult:
    if n_electrons % 2 != 0:
        raise ScfError("restricted HF requires an even electron count")
    n_occ = n_electrons // 2

    s_vals, s_vecs = np.linalg.eigh(S)
    if s_vals.min() < 1e-8:
        raise ScfError(f"near-singular overlap (min eigenvalue {s_vals.min():.3e})")
    X = s_vecs @ np.diag(s_vals**-0.5) @ s_vecs.T

    def density(fock: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        f_prime = X.T @ fock @ X
        eps, c_prime = np.linalg.eigh(f_prime)
        C = X @ c_prime
        occ = C[:, :n_occ]
        return 2.0 * occ @ occ.T, C, eps

    def fock_of(D: np.ndarray) -> np.ndarray:
        J = np.einsum("ls,uvls->uv", D, eri, optimize=True)
        K = np.einsum("ls,ulvs->uv", D, eri, optimize=True)
        return hcore + J - 0.5 * K

    D, _, _ = density(hcore)
    energy = 0.0
    err_norm = float("inf")
    fock_list: list[np.ndarray] = []
    err_list: list[np.ndarray] = []
    n_damped = 10 if (damping > 0.0 or level_shift > 0.0) else 0

    for cycle in range(max_cycles):
        F = fock_of(D)
        err = X.T @ (F @ D @ S - S @ D @ F) @ X
        err_norm = float(np.max(np.abs(err)))

        if cycle < n_damped:
            # damped plain iterations stabilize the early oscillatory phase
            if level_shift > 0.0:
                F = F + level_shift * (S - S @ (0.5 * D) @ S)
        else:
            fock_list.append(F)
            err_list.append(err)
            if len(fock_list) > diis_size:
                fock_list.pop(0)
                err_list.pop(0)
            if len(fock_list) > 1:
                m = len(fock_list)
                B = -np.ones((m + 1, m + 1))
                B[-1, -1] = 0.0
                for i in range(m):
                    for j in range(m):
                        B[i, j] = np.sum(err_list[i] * err_list[j])
                rhs = np.zeros(m + 1)
                rhs[-1] = -1.0
                try:
                    coeffs = np.linalg.solve(B, rhs)[:m]
                    F = sum(c * f for c, f in zip(coeffs, fock_list))
                except np.linalg.LinAlgError:
                    pass  # fall back to the plain Fock matrix this cycle

        D_new, C, eps = density(F)
        if cycle < n_damped and damping > 0.0:
            D_new = (1.0 - damping) * D_new + damping * D
        e_elec = 0.5 * np.sum(D_new * (hcore + fock_of(D_new)))
        delta_e = abs(e_elec + e_nuc - energy)
        energy = e_elec + e_nuc
        if err_norm < conv_tol and delta_e < conv_tol and cycle > 1:
            # canonical orbitals from the Fock matrix of the converged density
            _, C, eps = density(fock_of(D_new))
            C = _fix_phases(C)
            return RhfResult(
                energy=float(energy),
                e_nuc=float(e_nuc),
                mo_coeff=C,
                mo_energy=eps,
                n_electrons=n_electrons,
            )
        D = D_new

    raise ScfError(
        f"SCF not converged in {max_cycles} cycles (conv_tol={conv_tol}, "
        f"diis_size={diis_size}, damping={damping}, level_shift={level_shift}, "
        f"last error {err_norm:.3e})"
    )


def _fix_phases(C: np.ndarray) -> np.ndarray:
    """Flip orbital signs so the largest-magnitude coefficient is positive."""
    C = C.copy()
    for k in range(C.shape[1]):
        pivot = np.argmax(np.abs(C[:, k]))
        if C[pivot, k] < 0:
            C[:, k] = -C[:, k]
    return C


def mo_integrals(
    hcore: np.ndarray, eri: np.ndarray, C: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """One- and two-electron integrals in the MO basis, chemists' notation."""
    h_mo = C.T @ hcore @ C
    tmp = np.einsum("up,uvls->pvls", C, eri, optimize=True)
    tmp = np.einsum("vq,pvls->pqls", C, tmp, optimize=True)
    tmp = np.einsum("lr,pqls->pqrs", C, tmp, optimize=True)
    g_mo = np.einsum("st,pqrs->pqrt", C, tmp, optimize=True)
    return h_mo, g_mo
