"""Minimal STO-3G basis: s and sp shells for H, Li and Be.

Exponents and contraction coefficients are the published STO-3G values.
Primitives are normalized individually and each contracted function is
renormalized to unit self-overlap.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt

import numpy as np

# universal STO-3G contraction coefficients
_C_1S = (0.1543289673, 0.5353281423, 0.4446345422)
_C_2S = (-0.09996722919, 0.3995128261, 0.7001154689)
_C_2P = (0.1559162750, 0.6076837186, 0.3919573931)

# per-element shells: (shell_type, exponents, coefficients)
STO3G = {
    "H": [
        ("s", (3.425250914, 0.6239137298, 0.1688554040), _C_1S),
    ],
    "Li": [
        ("s", (16.11957475, 2.936200663, 0.7946504870), _C_1S),
        ("s", (0.6362897469, 0.1478600533, 0.0480886784), _C_2S),
        ("p", (0.6362897469, 0.1478600533, 0.0480886784), _C_2P),
    ],
    "Be": [
        ("s", (30.16787069, 5.495115306, 1.487192653), _C_1S),
        ("s", (1.314833110, 0.3055389383, 0.09937074560), _C_2S),
        ("p", (1.314833110, 0.3055389383, 0.09937074560), _C_2P),
    ],
}

ATOMIC_NUMBER = {"H": 1, "Li": 3, "Be": 4}


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _primitive_norm(alpha: float, lmn: tuple[int, int, int]) -> float:
    l, m, n = lmn
    L = l + m + n
    num = (2.0 * alpha / pi) ** 0.75 * (4.0 * alpha) ** (L / 2.0)
    den = sqrt(
        _double_factorial(2 * l - 1)
        * _double_factorial(2 * m - 1)
        * _double_factorial(2 * n - 1)
    )
    return num / den


@dataclass
class ContractedGaussian:
    """One basis function: fixed angular momentum, contracted primitives."""

    center: np.ndarray  # bohr
    lmn: tuple[int, int, int]
    exponents: np.ndarray
    coefficients: np.ndarray  # includes primitive norms and overall norm

    @property
    def n_prims(self) -> int:
        return len(self.exponents)


def _self_overlap(exps, coefs, lmn) -> float:
    from .integrals import overlap_prim

    zero = np.zeros(3)
    s = 0.0
    for a, ca in zip(exps, coefs):
        for b, cb in zip(exps, coefs):
            s += ca * cb * overlap_prim(a, lmn, zero, b, lmn, zero)
    return s


def make_contracted(center, lmn, exponents, coefficients) -> ContractedGaussian:
    exps = np.asarray(exponents, dtype=float)
    coefs = np.array(
        [c * _primitive_norm(a, lmn) for a, c in zip(exps, coefficients)]
    )
    coefs /= sqrt(_self_overlap(exps, coefs, lmn))
    return ContractedGaussian(
        center=np.asarray(center, dtype=float),
        lmn=lmn,
        exponents=exps,
        coefficients=coefs,
    )


def build_basis(atoms: list[tuple[str, np.ndarray]]) -> list[ContractedGaussian]:
    """Basis functions for a molecule; atoms carry bohr coordinates.

    Function order follows atoms, shells within an atom, and x,y,z within a
    p shell.
    """
    funcs: list[ContractedGaussian] = []
    for element, center in atoms:
        if element not in STO3G:
            raise ValueError(f"no STO-3G data for element {element!r}")
        for shell, exps, coefs in STO3G[element]:
            if shell == "s":
                funcs.append(make_contracted(center, (0, 0, 0), exps, coefs))
            elif shell == "p":
                for lmn in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                    funcs.append(make_contracted(center, lmn, exps, coefs))
            else:
                raise ValueError(f"unsupported shell type {shell!r}")
    return funcs
