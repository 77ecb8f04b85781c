"""FCIDUMP parsing and spin-orbital expansion of molecular Hamiltonians.

Two-electron integrals are stored in chemists' notation (pq|rs) over real
spatial orbitals.  Spin orbitals interleave spins: 2p is the alpha and 2p+1
the beta function of spatial orbital p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np


class FcidumpError(ValueError):
    """Raised on malformed FCIDUMP input; carries the offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


@dataclass
class MolecularHamiltonian:
    """Spatial-orbital integrals plus system counts, all in Hartree."""

    n_spatial: int
    n_electrons: int
    ms2: int
    e_nuc: float
    h: np.ndarray = field(repr=False)  # (n, n), one-electron
    g: np.ndarray = field(repr=False)  # (n, n, n, n), chemists' (pq|rs)

    def __post_init__(self):
        n = self.n_spatial
        if self.h.shape != (n, n) or self.g.shape != (n, n, n, n):
            raise ValueError("integral tensor shapes inconsistent with n_spatial")
        if self.n_electrons > 2 * n:
            raise ValueError("n_electrons exceeds 2 * n_spatial")


@dataclass
class SpinOrbitalHamiltonian:
    """One-body coefficients and antisymmetrized two-body tensor over spin orbitals."""

    n_so: int
    e_nuc: float
    h: np.ndarray = field(repr=False)  # (2n, 2n)
    g: np.ndarray = field(repr=False)  # (2n,)*4, <PQ||RS>


_HEADER_KEY = re.compile(r"([A-Za-z0-9]+)\s*=\s*(-?\d+)")


def parse_fcidump(text: str) -> MolecularHamiltonian:
    """Parse FCIDUMP text into a MolecularHamiltonian.

    Requires NORB, NELEC and MS2 in the header; other header keys (ORBSYM,
    ISYM, ...) are ignored.  Indices are 1-based; the (0,0,0,0) entry carries
    the nuclear repulsion, (i,j,0,0) one-electron integrals and (i,j,k,l)
    two-electron integrals, each expanded to all 8 symmetric images.
    """
    lines = text.splitlines()
    if not lines or "&FCI" not in lines[0].upper() and "NORB" not in lines[0].upper():
        raise FcidumpError("missing &FCI header", 1)

    header_parts: list[str] = []
    data_start = None
    for i, line in enumerate(lines):
        header_parts.append(line)
        if "&END" in line.upper() or line.strip() in ("/", "$END"):
            data_start = i + 1
            break
    if data_start is None:
        raise FcidumpError("header not terminated by &END or /", len(lines))

    header = " ".join(header_parts)
    keys = {m.group(1).upper(): int(m.group(2)) for m in _HEADER_KEY.finditer(header)}
    for required in ("NORB", "NELEC", "MS2"):
        if required not in keys:
            raise FcidumpError(f"header missing {required}", 1)
    norb = keys["NORB"]
    if norb <= 0:
        raise FcidumpError("NORB must be positive", 1)

    h = np.zeros((norb, norb))
    g = np.zeros((norb, norb, norb, norb))
    e_nuc = 0.0

    for offset, line in enumerate(lines[data_start:]):
        line_no = data_start + offset + 1
        stripped = line.strip()
        if not stripped:
            continue
        parts = stripped.split()
        if len(parts) != 5:
            raise FcidumpError(f"expected 'value i j k l', got {stripped!r}", line_no)
        try:
            value = float(parts[0].replace("D", "E").replace("d", "e"))
            i, j, k, l = (int(p) for p in parts[1:])
        except ValueError:
            raise FcidumpError(f"non-numeric token in {stripped!r}", line_no) from None
        for idx in (i, j, k, l):
            if idx < 0 or idx > norb:
                raise FcidumpError(f"index {idx} out of range [0, {norb}]", line_no)
        if i == 0 and j == 0 and k == 0 and l == 0:
            e_nuc = value
        elif k == 0 and l == 0 and i > 0 and j > 0:
            h[i - 1, j - 1] = value
            h[j - 1, i - 1] = value
        elif i > 0 and j > 0 and k > 0 and l > 0:
            p, q, r, s = i - 1, j - 1, k - 1, l - 1
            for a, b in ((p, q), (q, p)):
                for c, d in ((r, s), (s, r)):
                    g[a, b, c, d] = value
                    g[c, d, a, b] = value
        else:
            raise FcidumpError(f"unsupported index pattern {parts[1:]}", line_no)

    return MolecularHamiltonian(
        n_spatial=norb,
        n_electrons=keys["NELEC"],
        ms2=keys["MS2"],
        e_nuc=e_nuc,
        h=h,
        g=g,
    )


def dump_fcidump(m: MolecularHamiltonian) -> str:
    """Serialize back to FCIDUMP text (unique canonical entries only)."""
    n = m.n_spatial
    out = [
        f"&FCI NORB={n},NELEC={m.n_electrons},MS2={m.ms2},",
        "  ORBSYM=" + "1," * n,
        "  ISYM=1,",
        "&END",
    ]

    def line(value: float, i: int, j: int, k: int, l: int) -> str:
        return f"{value: .16E} {i:4d} {j:4d} {k:4d} {l:4d}"

    for p in range(n):
        for q in range(p + 1):
            for r in range(p + 1):
                s_max = q if r == p else r
                for s in range(s_max + 1):
                    v = m.g[p, q, r, s]
                    if v != 0.0:
                        out.append(line(v, p + 1, q + 1, r + 1, s + 1))
    for p in range(n):
        for q in range(p + 1):
            if m.h[p, q] != 0.0:
                out.append(line(m.h[p, q], p + 1, q + 1, 0, 0))
    out.append(line(m.e_nuc, 0, 0, 0, 0))
    return "\n".join(out) + "\n"


def to_spin_orbitals(m: MolecularHamiltonian) -> SpinOrbitalHamiltonian:
    """Expand spatial integrals to an antisymmetrized spin-orbital Hamiltonian.

    The result parameterizes H = e_nuc + Σ h_PQ a†_P a_Q
    + ¼ Σ <PQ||RS> a†_P a†_Q a_S a_R.
    """
    n = m.n_spatial
    n_so = 2 * n
    spat = np.arange(n_so) // 2
    same_spin = (np.arange(n_so) % 2)[:, None] == (np.arange(n_so) % 2)[None, :]

    h_so = m.h[np.ix_(spat, spat)] * same_spin

    # chemists' (PQ|RS) over spin orbitals, then physicists' antisymmetrized
    g_chem = m.g[np.ix_(spat, spat, spat, spat)]
    g_chem = g_chem * same_spin[:, :, None, None] * same_spin[None, None, :, :]
    g_phys = g_chem.transpose(0, 2, 1, 3)  # <PQ|RS> = (PR|QS)
    g_anti = g_phys - g_phys.swapaxes(2, 3)

    return SpinOrbitalHamiltonian(n_so=n_so, e_nuc=m.e_nuc, h=h_so, g=g_anti)


def determinant_energy(soh: SpinOrbitalHamiltonian, occupied: list[int]) -> float:
    """Energy of a single determinant with the given occupied spin orbitals."""
    occ = list(occupied)
    e = soh.e_nuc + sum(soh.h[p, p] for p in occ)
    e += 0.5 * sum(soh.g[p, q, p, q] for p in occ for q in occ)
    return float(e)
