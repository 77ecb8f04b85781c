import numpy as np
import pytest
from pytest import approx

import adaptlab as al
from adaptlab import oracle
from adaptlab.fermion import (
    FermionTerm,
    PauliOperator,
    jordan_wigner,
    jw_ladder_product,
    normal_order,
    number_operator,
    pauli_iter,
    sz_operator,
)


def test_creation_on_one_qubit():
    op = jordan_wigner(FermionTerm(1.0, ((0, True),)), 1)
    assert op.terms[(1, 0)] == approx(0.5)  # X
    assert op.terms[(1, 1)] == approx(-0.5j)  # Y


def test_number_operator_identity():
    op = jordan_wigner(FermionTerm(1.0, ((0, True), (0, False))), 1)
    assert op.terms[(0, 0)] == approx(0.5)
    assert op.terms[(0, 1)] == approx(-0.5)
    assert len(op.terms) == 2


def test_single_excitation_matches_ladder_matrix_oracle():
    gen = al.jordan_wigner(FermionTerm(1.0, ((2, True), (0, False))), 4) + \
        al.jordan_wigner(FermionTerm(-1.0, ((0, True), (2, False))), 4)
    dense = oracle.dense_matrix(gen)
    direct = (
        oracle.ladder_matrix(2, 4, True) @ oracle.ladder_matrix(0, 4, False)
        - oracle.ladder_matrix(0, 4, True) @ oracle.ladder_matrix(2, 4, False)
    )
    assert np.max(np.abs(dense - direct)) < 1e-12
    assert gen.is_anti_hermitian()


def test_index_out_of_range():
    with pytest.raises(ValueError, match="outside"):
        jordan_wigner(FermionTerm(1.0, ((3, True),)), 2)


def test_pauli_product_phases():
    x = PauliOperator.from_string("X")
    y = PauliOperator.from_string("Y")
    z = PauliOperator.from_string("Z")
    assert (x * y).terms[(0, 1)] == approx(1j)  # XY = iZ
    assert (y * x).terms[(0, 1)] == approx(-1j)
    assert (x * x).terms[(0, 0)] == approx(1.0)
    assert (y * z).terms[(1, 0)] == approx(1j)  # YZ = iX


def test_commutator_examples(h2):
    xy = al.commutator(PauliOperator.from_string("X"), PauliOperator.from_string("Y"))
    assert xy.terms == {(0, 1): approx(2j)}
    self_comm = al.commutator(h2.H, h2.H)
    assert len(self_comm.terms) == 0


def test_commutator_against_dense_oracle(h4, rng):
    a = h4.pool[11].generator
    comm = al.commutator(h4.H, a)
    dense = oracle.dense_matrix(h4.H) @ oracle.dense_matrix(a) - \
        oracle.dense_matrix(a) @ oracle.dense_matrix(h4.H)
    assert np.max(np.abs(oracle.dense_matrix(comm) - dense)) < 1e-10


def test_commutator_qubit_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        al.commutator(PauliOperator.from_string("X"), PauliOperator.from_string("XX"))


def test_canonical_anticommutation_relations():
    # {a_p, a†_q} = delta_pq on 4 qubits, via dense matrices
    n = 4
    for p in range(n):
        for q in range(n):
            ap = oracle.dense_matrix(jordan_wigner(FermionTerm(1.0, ((p, False),)), n))
            aq_dag = oracle.dense_matrix(jordan_wigner(FermionTerm(1.0, ((q, True),)), n))
            anti = ap @ aq_dag + aq_dag @ ap
            expected = np.eye(16) if p == q else np.zeros((16, 16))
            assert np.max(np.abs(anti - expected)) < 1e-12


def test_jw_matches_direct_fermionic_matrices():
    for p in range(4):
        for create in (True, False):
            jw = oracle.dense_matrix(jordan_wigner(FermionTerm(1.0, ((p, create),)), 4))
            direct = oracle.ladder_matrix(p, 4, create)
            assert np.max(np.abs(jw - direct)) < 1e-14


def test_hamiltonian_zero_integrals_gives_scaled_identity():
    import adaptlab.hamio as hamio

    n = 2
    m = hamio.MolecularHamiltonian(
        n_spatial=n, n_electrons=2, ms2=0, e_nuc=1.3,
        h=np.zeros((n, n)), g=np.zeros((n, n, n, n)),
    )
    H = al.hamiltonian_to_qubits(al.to_spin_orbitals(m))
    assert H.terms == {(0, 0): approx(1.3)}


def test_h2_hamiltonian_ground_state_is_fci(h2):
    lowest = oracle.ground_energy_dense(h2.H)
    assert lowest == approx(h2.info.fci_energy, abs=1e-9)


def test_h4_hf_expectation_is_rhf(h4):
    assert al.energy(h4.H, h4.ref) == approx(h4.info.rhf_energy, abs=1e-8)


def test_hamiltonian_commutes_with_number_and_sz(h4, h6):
    for sys_ in (h4, h6):
        n_op = number_operator(sys_.n_so)
        sz = sz_operator(sys_.n_so)
        assert len(al.commutator(sys_.H, n_op).terms) == 0
        assert len(al.commutator(sys_.H, sz).terms) == 0


def test_hermiticity(h2, h4):
    assert h2.H.is_hermitian()
    assert h4.H.is_hermitian()
    dense = oracle.dense_matrix(h4.H)
    assert np.max(np.abs(dense - dense.conj().T)) < 1e-14


def test_text_round_trip(h2):
    text = h2.H.to_text()
    back = PauliOperator.from_text(text)
    assert back == h2.H
    # spot-check the format: "coeff LETTERS"
    first = text.splitlines()[0].split()
    assert len(first) == 2 and set(first[1]) <= set("IXYZ")


def test_simplification_threshold():
    tiny = PauliOperator(1, {(1, 0): 1e-15})
    assert len(tiny.terms) == 0


def test_normal_order_and_equality():
    # a_0 a†_0 = 1 - a†_0 a_0
    lhs = [FermionTerm(1.0, ((0, False), (0, True)))]
    rhs = [FermionTerm(1.0, ()), FermionTerm(-1.0, ((0, True), (0, False)))]
    assert al.fermion_terms_equal(lhs, rhs)
    # anticommutation sign under reordering
    swapped = normal_order([FermionTerm(1.0, ((1, True), (3, True)))])
    assert swapped[0].ladder_ops == ((3, True), (1, True))
    assert swapped[0].coefficient == approx(-1.0)
    # nilpotency
    assert normal_order([FermionTerm(1.0, ((2, True), (2, True)))]) == []


def test_pauli_iter_deterministic(h2):
    strings = [s for s, _ in pauli_iter(h2.H)]
    assert strings == sorted(strings) or len(strings) == len(set(strings))
    assert all(len(s) == h2.n_so for s in strings)


def test_jw_product_helper_matches_term_chain():
    prod = jw_ladder_product(((1, True), (0, False)), 3, 2.0)
    explicit = jordan_wigner(FermionTerm(2.0, ((1, True), (0, False))), 3)
    assert PauliOperator(3, prod) == explicit
