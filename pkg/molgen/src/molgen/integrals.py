"""Molecular integrals over contracted Cartesian Gaussians.

McMurchie-Davidson scheme: Hermite expansion coefficients E, Hermite Coulomb
integrals R driven by the Boys function.  Handles arbitrary angular momentum;
only s and p occur in the shipped basis.
"""

from __future__ import annotations

from math import exp, pi, sqrt

import numpy as np
from scipy.special import gamma, gammainc

from .basis import ContractedGaussian


def boys(m: int, x: float) -> float:
    if x < 1e-12:
        return 1.0 / (2 * m + 1)
    return gammainc(m + 0.5, x) * gamma(m + 0.5) / (2.0 * x ** (m + 0.5))


def _hermite_e(i: int, j: int, t: int, qx: float, a: float, b: float) -> float:
    """Hermite expansion coefficient E_t^{ij} for one Cartesian direction."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return exp(-q * qx * qx)
    if j == 0:
        return (
            _hermite_e(i - 1, j, t - 1, qx, a, b) / (2 * p)
            - (q * qx / a) * _hermite_e(i - 1, j, t, qx, a, b)
            + (t + 1) * _hermite_e(i - 1, j, t + 1, qx, a, b)
        )
    return (
        _hermite_e(i, j - 1, t - 1, qx, a, b) / (2 * p)
        + (q * qx / b) * _hermite_e(i, j - 1, t, qx, a, b)
        + (t + 1) * _hermite_e(i, j - 1, t + 1, qx, a, b)
    )


def overlap_prim(a, lmn1, A, b, lmn2, B) -> float:
    s = 1.0
    for d in range(3):
        s *= _hermite_e(lmn1[d], lmn2[d], 0, A[d] - B[d], a, b)
    return s * (pi / (a + b)) ** 1.5


def kinetic_prim(a, lmn1, A, b, lmn2, B) -> float:
    l2, m2, n2 = lmn2

    def s(dl, dm, dn):
        lmn = (l2 + dl, m2 + dm, n2 + dn)
        if min(lmn) < 0:
            return 0.0
        return overlap_prim(a, lmn1, A, b, lmn, B)

    term0 = b * (2 * (l2 + m2 + n2) + 3) * s(0, 0, 0)
    term1 = -2.0 * b * b * (s(2, 0, 0) + s(0, 2, 0) + s(0, 0, 2))
    term2 = -0.5 * (
        l2 * (l2 - 1) * s(-2, 0, 0)
        + m2 * (m2 - 1) * s(0, -2, 0)
        + n2 * (n2 - 1) * s(0, 0, -2)
    )
    return term0 + term1 + term2


def _hermite_coulomb(t, u, v, n, p, pc, boys_table) -> float:
    if t < 0 or u < 0 or v < 0:
        return 0.0
    if t == u == v == 0:
        return (-2.0 * p) ** n * boys_table[n]
    if t > 0:
        return (t - 1) * _hermite_coulomb(
            t - 2, u, v, n + 1, p, pc, boys_table
        ) + pc[0] * _hermite_coulomb(t - 1, u, v, n + 1, p, pc, boys_table)
    if u > 0:
        return (u - 1) * _hermite_coulomb(
            t, u - 2, v, n + 1, p, pc, boys_table
        ) + pc[1] * _hermite_coulomb(t, u - 1, v, n + 1, p, pc, boys_table)
    return (v - 1) * _hermite_coulomb(
        t, u, v - 2, n + 1, p, pc, boys_table
    ) + pc[2] * _hermite_coulomb(t, u, v - 1, n + 1, p, pc, boys_table)


def nuclear_prim(a, lmn1, A, b, lmn2, B, C) -> float:
    """Attraction integral for a unit charge at C (caller applies -Z)."""
    p = a + b
    P = (a * np.asarray(A) + b * np.asarray(B)) / p
    pc = P - np.asarray(C)
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    n_max = l1 + l2 + m1 + m2 + n1 + n2
    x = p * float(pc @ pc)
    boys_table = [boys(n, x) for n in range(n_max + 1)]
    total = 0.0
    for t in range(l1 + l2 + 1):
        et = _hermite_e(l1, l2, t, A[0] - B[0], a, b)
        if et == 0.0:
            continue
        for u in range(m1 + m2 + 1):
            eu = _hermite_e(m1, m2, u, A[1] - B[1], a, b)
            if eu == 0.0:
                continue
            for v in range(n1 + n2 + 1):
                ev = _hermite_e(n1, n2, v, A[2] - B[2], a, b)
                if ev == 0.0:
                    continue
                total += et * eu * ev * _hermite_coulomb(
                    t, u, v, 0, p, pc, boys_table
                )
    return 2.0 * pi / p * total


def eri_prim(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D) -> float:
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * np.asarray(A) + b * np.asarray(B)) / p
    Q = (c * np.asarray(C) + d * np.asarray(D)) / q
    pq = P - Q
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    l3, m3, n3 = lmn3
    l4, m4, n4 = lmn4
    n_max = l1 + l2 + l3 + l4 + m1 + m2 + m3 + m4 + n1 + n2 + n3 + n4
    x = alpha * float(pq @ pq)
    boys_table = [boys(n, x) for n in range(n_max + 1)]

    e1x = [_hermite_e(l1, l2, t, A[0] - B[0], a, b) for t in range(l1 + l2 + 1)]
    e1y = [_hermite_e(m1, m2, u, A[1] - B[1], a, b) for u in range(m1 + m2 + 1)]
    e1z = [_hermite_e(n1, n2, v, A[2] - B[2], a, b) for v in range(n1 + n2 + 1)]
    e2x = [_hermite_e(l3, l4, t, C[0] - D[0], c, d) for t in range(l3 + l4 + 1)]
    e2y = [_hermite_e(m3, m4, u, C[1] - D[1], c, d) for u in range(m3 + m4 + 1)]
    e2z = [_hermite_e(n3, n4, v, C[2] - D[2], c, d) for v in range(n3 + n4 + 1)]

    total = 0.0
    for t, et in enumerate(e1x):
        for u, eu in enumerate(e1y):
            for v, ev in enumerate(e1z):
                w1 = et * eu * ev
                if w1 == 0.0:
                    continue
                for tau, e2t in enumerate(e2x):
                    for nu, e2u in enumerate(e2y):
                        for phi, e2v in enumerate(e2z):
                            w2 = e2t * e2u * e2v
                            if w2 == 0.0:
                                continue
                            sign = -1.0 if (tau + nu + phi) % 2 else 1.0
                            total += w1 * w2 * sign * _hermite_coulomb(
                                t + tau, u + nu, v + phi, 0, alpha, pq, boys_table
                            )
    return 2.0 * pi**2.5 / (p * q * sqrt(p + q)) * total


def _contract2(fn, bra: ContractedGaussian, ket: ContractedGaussian) -> float:
    out = 0.0
    for a, ca in zip(bra.exponents, bra.coefficients):
        for b, cb in zip(ket.exponents, ket.coefficients):
            out += ca * cb * fn(a, bra.lmn, bra.center, b, ket.lmn, ket.center)
    return out


def overlap_matrix(basis: list[ContractedGaussian]) -> np.ndarray:
    n = len(basis)
    S = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = _contract2(overlap_prim, basis[i], basis[j])
    return S


def kinetic_matrix(basis: list[ContractedGaussian]) -> np.ndarray:
    n = len(basis)
    T = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            T[i, j] = T[j, i] = _contract2(kinetic_prim, basis[i], basis[j])
    return T


def nuclear_matrix(
    basis: list[ContractedGaussian], charges: list[tuple[float, np.ndarray]]
) -> np.ndarray:
    n = len(basis)
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            val = 0.0
            for z, center in charges:
                val -= z * _contract2(
                    lambda a, l1, A, b, l2, B: nuclear_prim(a, l1, A, b, l2, B, center),
                    basis[i],
                    basis[j],
                )
            V[i, j] = V[j, i] = val
    return V


def eri_tensor(basis: list[ContractedGaussian]) -> np.ndarray:
    """Full (ij|kl) tensor in chemists' notation, 8-fold symmetry exploited."""
    n = len(basis)
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i + 1):
            for k in range(i + 1):
                l_top = j if k == i else k
                for l in range(l_top + 1):
                    val = 0.0
                    gi, gj, gk, gl = basis[i], basis[j], basis[k], basis[l]
                    for a, ca in zip(gi.exponents, gi.coefficients):
                        for b, cb in zip(gj.exponents, gj.coefficients):
                            for c, cc in zip(gk.exponents, gk.coefficients):
                                for d, cd in zip(gl.exponents, gl.coefficients):
                                    val += ca * cb * cc * cd * eri_prim(
                                        a, gi.lmn, gi.center,
                                        b, gj.lmn, gj.center,
                                        c, gk.lmn, gk.center,
                                        d, gl.lmn, gl.center,
                                    )
                    for p, q in ((i, j), (j, i)):
                        for r, s in ((k, l), (l, k)):
                            eri[p, q, r, s] = val
                            eri[r, s, p, q] = val
    return eri


def nuclear_repulsion(charges: list[tuple[float, np.ndarray]]) -> float:
    e = 0.0
    for i in range(len(charges)):
        zi, ri = charges[i]
        for j in range(i):
            zj, rj = charges[j]
            e += zi * zj / float(np.linalg.norm(ri - rj))
    return e
