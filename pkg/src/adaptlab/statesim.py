"""Dense statevector engine.

Pauli sums act on amplitude arrays through their packed (x, z) masks: a
string contributes out[b^x] += i^{|x&z|} (−1)^{|b&z|} psi[b].  Operators are
compiled once per instance, either to a dense matrix (small systems) or to
mask/coefficient arrays grouped by flip pattern.

Generator exponentials use the closed form valid for pool generators with
t³ = −t:  exp(θt) = 1 + sin(θ) t + (1−cos(θ)) t².
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fermion import PauliOperator
from .oracle import hf_occupation
from .pool import PoolOperator

_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)

# dense compiled form up to 2^10 amplitudes; grouped masked form beyond
DENSE_COMPILE_QUBITS = 10

_IDX_CACHE: dict[int, np.ndarray] = {}


def _indices(n_qubits: int) -> np.ndarray:
    idx = _IDX_CACHE.get(n_qubits)
    if idx is None:
        idx = np.arange(1 << n_qubits, dtype=np.uint64)
        _IDX_CACHE[n_qubits] = idx
    return idx


class _Compiled:
    """Fast application form of one PauliOperator."""

    __slots__ = ("n_qubits", "dense", "groups")

    def __init__(self, op: PauliOperator):
        self.n_qubits = op.n_qubits
        idx = _indices(op.n_qubits)
        if op.n_qubits <= DENSE_COMPILE_QUBITS:
            dim = 1 << op.n_qubits
            mat = np.zeros((dim, dim), dtype=complex)
            cols = idx.astype(np.int64)
            for (x, z), coeff in op.terms.items():
                pref = coeff * _I_POW[(x & z).bit_count() & 3]
                sign = 1.0 - 2.0 * (
                    np.bitwise_count(idx & np.uint64(z)) & np.uint64(1)
                ).astype(np.float64)
                rows = (idx ^ np.uint64(x)).astype(np.int64)
                mat[rows, cols] += pref * sign
            self.dense = mat
            self.groups = None
        else:
            by_x: dict[int, list[tuple[int, complex]]] = {}
            for (x, z), coeff in op.terms.items():
                pref = coeff * _I_POW[(x & z).bit_count() & 3]
                by_x.setdefault(x, []).append((z, pref))
            self.dense = None
            # one phase vector per flip mask: terms sharing x collapse to it
            self.groups = []
            for x, zs in sorted(by_x.items()):
                phase = np.zeros(len(idx), dtype=complex)
                for z, pref in zs:
                    par = np.bitwise_count(idx & np.uint64(z)) & np.uint64(1)
                    phase += pref * (1.0 - 2.0 * par.astype(np.float64))
                self.groups.append(((idx ^ np.uint64(x)).astype(np.int64), phase))

    def apply(self, psi: np.ndarray) -> np.ndarray:
        if self.dense is not None:
            return self.dense @ psi
        out = np.zeros_like(psi)
        for perm, phase in self.groups:
            out[perm] += phase * psi
        return out


def compiled(op: PauliOperator) -> _Compiled:
    comp = op._compiled
    if comp is None:
        comp = _Compiled(op)
        op._compiled = comp
    return comp


@dataclass
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())


@dataclass
class Ansatz:
    """Ordered pool-operator indices with a parameter per applied exponential.

    ``op_indices`` is in addition order: the first entry is applied to the
    reference first, the latest addition acts last.  For ``repetition`` N > 1
    the ansatz consists of N collated blocks of the same operator sequence;
    ``theta`` is laid out block-major with block 0 the front (last-applied)
    block, so theta[b*M + j] parameterizes operator j within block b.
    """

    op_indices: list[int]
    theta: np.ndarray
    repetition: int = 1

    def __post_init__(self):
        self.theta = np.asarray(self.theta, dtype=float)
        if self.repetition < 1:
            raise ValueError("repetition must be >= 1")
        if len(self.theta) != len(self.op_indices) * self.repetition:
            raise ValueError(
                f"theta length {len(self.theta)} != "
                f"{len(self.op_indices)} ops * N={self.repetition}"
            )

    def applications(self) -> list[tuple[int, int]]:
        """(theta position, op position) pairs in application order."""
        m = len(self.op_indices)
        apps = []
        for block in range(self.repetition - 1, -1, -1):
            for j in range(m):
                apps.append((block * m + j, j))
        return apps


def basis_state(n_qubits: int, occupied) -> StateVector:
    amp = np.zeros(1 << n_qubits, dtype=complex)
    amp[sum(1 << q for q in occupied)] = 1.0
    return StateVector(n_qubits, amp)


def hf_reference(n_qubits: int, n_electrons: int, ms2: int = 0) -> StateVector:
    """Computational basis state with the lowest spin orbitals occupied."""
    return basis_state(n_qubits, hf_occupation(n_qubits, n_electrons, ms2))


def product_state(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product with ``a`` on the low qubits.

    For states of definite fermion number this is the Jordan-Wigner image of
    the fermionic product state when b's orbitals all lie above a's.
    """
    return StateVector(
        a.n_qubits + b.n_qubits, np.kron(b.amplitudes, a.amplitudes)
    )


def _check_dims(op: PauliOperator, s: StateVector) -> None:
    if op.n_qubits != s.n_qubits:
        raise ValueError(
            f"dimension mismatch: operator on {op.n_qubits} qubits, "
            f"state on {s.n_qubits}"
        )


def apply_pauli_sum(op: PauliOperator, s: StateVector) -> StateVector:
    """op @ s, term by term."""
    _check_dims(op, s)
    return StateVector(s.n_qubits, compiled(op).apply(s.amplitudes))


def _exp_apply(gen: _Compiled, theta: float, psi: np.ndarray) -> np.ndarray:
    if theta == 0.0:
        return psi.copy()
    t_psi = gen.apply(psi)
    tt_psi = gen.apply(t_psi)
    return psi + np.sin(theta) * t_psi + (1.0 - np.cos(theta)) * tt_psi


def apply_generator_exp(p: PoolOperator, theta: float, s: StateVector) -> StateVector:
    """exp(θ t) s in closed form; requires t³ = −t (holds for pool generators)."""
    _check_dims(p.generator, s)
    return StateVector(s.n_qubits, _exp_apply(compiled(p.generator), theta, s.amplitudes))


def prepare_state(
    ansatz: Ansatz, pool: list[PoolOperator], ref: StateVector
) -> StateVector:
    """Apply the ansatz exponentials to the reference in ansatz order."""
    gens = [compiled(pool[k].generator) for k in ansatz.op_indices]
    psi = ref.amplitudes
    for pos, j in ansatz.applications():
        psi = _exp_apply(gens[j], ansatz.theta[pos], psi)
    if psi is ref.amplitudes:
        psi = psi.copy()
    return StateVector(ref.n_qubits, psi)


def energy(H: PauliOperator, s: StateVector) -> float:
    """Re <s|H|s>; raises if the imaginary residual exceeds 1e-10."""
    _check_dims(H, s)
    val = np.vdot(s.amplitudes, compiled(H).apply(s.amplitudes))
    if abs(val.imag) > 1e-10:
        raise ValueError(f"energy has imaginary residual {val.imag:.3e}")
    return float(val.real)


def pool_gradients(
    H: PauliOperator, s: StateVector, pool: list[PoolOperator]
) -> np.ndarray:
    """Signed pool gradients g_i = <s|[H, A_i]|s> = 2 Re <Hs|A_i s>.

    One H application is shared across the whole pool.
    """
    _check_dims(H, s)
    hs = compiled(H).apply(s.amplitudes)
    out = np.empty(len(pool))
    for i, op in enumerate(pool):
        out[i] = 2.0 * np.vdot(hs, compiled(op.generator).apply(s.amplitudes)).real
    return out


def ansatz_gradient(
    H: PauliOperator,
    ansatz: Ansatz,
    pool: list[PoolOperator],
    ref: StateVector,
) -> np.ndarray:
    """Exact dE/dθ for every parameter by one forward and one adjoint sweep."""
    gens = [compiled(pool[k].generator) for k in ansatz.op_indices]
    apps = ansatz.applications()
    phi = ref.amplitudes
    for pos, j in apps:
        phi = _exp_apply(gens[j], ansatz.theta[pos], phi)
    mu = compiled(H).apply(phi)
    grads = np.empty(len(ansatz.theta))
    for pos, j in reversed(apps):
        grads[pos] = 2.0 * np.vdot(mu, gens[j].apply(phi)).real
        phi = _exp_apply(gens[j], -ansatz.theta[pos], phi)
        mu = _exp_apply(gens[j], -ansatz.theta[pos], mu)
    return grads
