"""Particle-hole UCCSD operator pool.

Singles t = a†_a a_i − a†_i a_a over equal-spin occupied/virtual pairs and
doubles t = a†_a a†_b a_j a_i − a†_i a†_j a_b a_a over (N_alpha, N_beta)
preserving pairs, Jordan-Wigner mapped to anti-Hermitian generators.
Every generator satisfies t³ = −t, which the statevector engine relies on
for its closed-form exponential; this identity is verified algebraically at
build time.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .fermion import FermionTerm, PauliOperator, jordan_wigner_sum
from .oracle import dense_matrix, hf_occupation


@dataclass
class PoolOperator:
    label: str
    generator: PauliOperator  # anti-Hermitian
    fermionic_def: tuple[FermionTerm, ...]


def _spin(p: int) -> int:
    return p % 2


def _make_operator(
    ladder: tuple[tuple[int, bool], ...], label: str, n_so: int
) -> PoolOperator:
    plus = FermionTerm(1.0, ladder)
    minus = -1.0 * plus.dagger()
    gen = jordan_wigner_sum((plus, minus), n_so)
    if not gen.is_anti_hermitian(1e-12):
        raise AssertionError(f"pool generator {label} is not anti-Hermitian")
    cube_defect = (gen * gen * gen + gen).norm()
    if cube_defect > 1e-10:
        raise AssertionError(f"pool generator {label}: t^3 != -t ({cube_defect:.3e})")
    return PoolOperator(label=label, generator=gen, fermionic_def=(plus, minus))


def build_uccsd_pool(n_so: int, n_electrons: int, ms2: int = 0) -> list[PoolOperator]:
    """Build the pool: singles first, then doubles, each lexicographically ordered."""
    if n_electrons > n_so:
        raise ValueError("n_electrons exceeds spin-orbital count")
    occ = hf_occupation(n_so, n_electrons, ms2)
    virt = [p for p in range(n_so) if p not in occ]

    ops: list[PoolOperator] = []
    for i in occ:
        for a in virt:
            if _spin(i) != _spin(a):
                continue
            ops.append(_make_operator(((a, True), (i, False)), f"{i} -> {a}", n_so))

    for i, j in combinations(occ, 2):
        for a, b in combinations(virt, 2):
            if sorted((_spin(i), _spin(j))) != sorted((_spin(a), _spin(b))):
                continue
            ladder = ((a, True), (b, True), (j, False), (i, False))
            ops.append(_make_operator(ladder, f"{i},{j} -> {a},{b}", n_so))
    return ops


def generator_cubes_to_minus_self(p: PoolOperator, tol: float = 1e-10) -> bool:
    """Dense-matrix check that the generator satisfies t³ = −t."""
    t = dense_matrix(p.generator)
    return bool(np.max(np.abs(t @ t @ t + t)) <= tol)


def pool_manifest(pool: list[PoolOperator]) -> str:
    """Text manifest: index, label, Pauli term count per generator."""
    lines = [
        f"{idx:4d}  {op.label:<20s}  {len(op.generator.terms):3d}"
        for idx, op in enumerate(pool)
    ]
    return "\n".join(lines) + ("\n" if lines else "")
