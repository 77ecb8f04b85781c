import numpy as np
from pytest import approx

from molgen.basis import build_basis
from molgen.integrals import (
    boys,
    eri_tensor,
    kinetic_matrix,
    nuclear_matrix,
    nuclear_repulsion,
    overlap_matrix,
)
from molgen.scf import run_rhf


def h2_integrals(r_bohr=1.4):
    atoms = [("H", np.zeros(3)), ("H", np.array([0.0, 0.0, r_bohr]))]
    charges = [(1.0, xyz) for _, xyz in atoms]
    basis = build_basis(atoms)
    return basis, charges


def test_szabo_ostlund_h2_anchors():
    # textbook values for H2/STO-3G at 1.4 bohr
    basis, charges = h2_integrals()
    S = overlap_matrix(basis)
    T = kinetic_matrix(basis)
    eri = eri_tensor(basis)
    assert S[0, 1] == approx(0.6593, abs=5e-5)
    assert S[0, 0] == approx(1.0, abs=1e-12)
    assert T[0, 0] == approx(0.7600, abs=5e-5)
    assert eri[0, 0, 0, 0] == approx(0.7746, abs=5e-5)


def test_h2_rhf_total_energy():
    basis, charges = h2_integrals()
    S = overlap_matrix(basis)
    hcore = kinetic_matrix(basis) + nuclear_matrix(basis, charges)
    res = run_rhf(S, hcore, eri_tensor(basis), nuclear_repulsion(charges), 2)
    assert res.energy == approx(-1.116714, abs=5e-6)


def test_eri_matches_closed_form_for_s_functions():
    from math import exp, pi, sqrt

    def eri_ssss(a, A, b, B, c, C, d, D):
        p, q = a + b, c + d
        P = (a * A + b * B) / p
        Q = (c * C + d * D) / q
        ab2 = float((A - B) @ (A - B))
        cd2 = float((C - D) @ (C - D))
        pq2 = float((P - Q) @ (P - Q))
        pref = 2 * pi**2.5 / (p * q * sqrt(p + q))
        return pref * exp(-a * b / p * ab2 - c * d / q * cd2) * boys(
            0, p * q / (p + q) * pq2
        )

    basis, _ = h2_integrals()
    eri = eri_tensor(basis)
    ref = np.zeros_like(eri)
    n = len(basis)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    v = 0.0
                    gi, gj, gk, gl = basis[i], basis[j], basis[k], basis[l]
                    for a, ca in zip(gi.exponents, gi.coefficients):
                        for b, cb in zip(gj.exponents, gj.coefficients):
                            for c, cc in zip(gk.exponents, gk.coefficients):
                                for d, cd in zip(gl.exponents, gl.coefficients):
                                    v += ca * cb * cc * cd * eri_ssss(
                                        a, gi.center, b, gj.center,
                                        c, gk.center, d, gl.center,
                                    )
                    ref[i, j, k, l] = v
    assert np.max(np.abs(eri - ref)) < 1e-14


def test_basis_function_counts():
    h4 = build_basis([("H", np.array([0.0, 0.0, float(k)])) for k in range(4)])
    assert len(h4) == 4
    beh2 = build_basis(
        [("H", np.array([0.0, 0.0, -2.5])), ("Be", np.zeros(3)),
         ("H", np.array([0.0, 0.0, 2.5]))]
    )
    assert len(beh2) == 7  # 1s on each H; 1s, 2s, 2px, 2py, 2pz on Be
    lih = build_basis([("Li", np.zeros(3)), ("H", np.array([0.0, 0.0, 3.0]))])
    assert len(lih) == 6


def test_p_function_integrals_are_symmetric():
    basis = build_basis(
        [("Li", np.zeros(3)), ("H", np.array([0.0, 0.0, 3.06]))]
    )
    S = overlap_matrix(basis)
    T = kinetic_matrix(basis)
    assert np.max(np.abs(S - S.T)) < 1e-14
    assert np.max(np.abs(T - T.T)) < 1e-14
    # px/py are degenerate by symmetry for a linear molecule on z
    assert S[2, 2] == approx(S[3, 3], abs=1e-12)
    assert T[2, 2] == approx(T[3, 3], abs=1e-12)
