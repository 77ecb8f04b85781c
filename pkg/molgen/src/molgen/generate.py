"""One-shot generation of FCIDUMP fixtures and reference RHF energies.

Systems: linear hydrogen chains at uniform spacing, LiH and linear symmetric
BeH2, all in STO-3G with integrals transformed to the canonical RHF orbital
basis so the all-zero parameter vector of downstream ansaetze is the HF state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .basis import ATOMIC_NUMBER, build_basis
from .integrals import (
    eri_tensor,
    kinetic_matrix,
    nuclear_matrix,
    nuclear_repulsion,
    overlap_matrix,
)
from .scf import RhfResult, mo_integrals, run_rhf

BOHR_PER_ANGSTROM = 1.0 / 0.52917721092


@dataclass
class SystemSpec:
    name: str
    atoms: list[tuple[str, tuple[float, float, float]]]  # element, Angstrom coords
    basis: str = "sto-3g"
    charge: int = 0
    multiplicity: int = 1

    @property
    def n_electrons(self) -> int:
        return sum(ATOMIC_NUMBER[el] for el, _ in self.atoms) - self.charge

    @property
    def ms2(self) -> int:
        return self.multiplicity - 1


def _hydrogen_chain(name: str, n: int, spacing: float) -> SystemSpec:
    return SystemSpec(
        name=name, atoms=[("H", (0.0, 0.0, spacing * k)) for k in range(n)]
    )


def paper_systems() -> dict[str, SystemSpec]:
    return {
        spec.name: spec
        for spec in [
            SystemSpec("h2", [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.75))]),
            _hydrogen_chain("h4_1a", 4, 1.0),
            _hydrogen_chain("h4_3a", 4, 3.0),
            _hydrogen_chain("h6_1a", 6, 1.0),
            _hydrogen_chain("h6_3a", 6, 3.0),
            SystemSpec("lih_1.62", [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.62))]),
            SystemSpec(
                "beh2_1.33",
                [
                    ("H", (0.0, 0.0, -1.33)),
                    ("Be", (0.0, 0.0, 0.0)),
                    ("H", (0.0, 0.0, 1.33)),
                ],
            ),
        ]
    }


def write_fcidump(
    path: Path,
    h_mo: np.ndarray,
    g_mo: np.ndarray,
    e_nuc: float,
    n_electrons: int,
    ms2: int,
    threshold: float = 1e-16,
) -> None:
    n = h_mo.shape[0]
    lines = [
        f"&FCI NORB={n},NELEC={n_electrons},MS2={ms2},",
        "  ORBSYM=" + "1," * n,
        "  ISYM=1,",
        "&END",
    ]
    for p in range(n):
        for q in range(p + 1):
            for r in range(p + 1):
                s_top = q if r == p else r
                for s in range(s_top + 1):
                    v = g_mo[p, q, r, s]
                    if abs(v) > threshold:
                        lines.append(f"{v: .16E} {p+1:4d} {q+1:4d} {r+1:4d} {s+1:4d}")
    for p in range(n):
        for q in range(p + 1):
            if abs(h_mo[p, q]) > threshold:
                lines.append(f"{h_mo[p, q]: .16E} {p+1:4d} {q+1:4d} {0:4d} {0:4d}")
    lines.append(f"{e_nuc: .16E} {0:4d} {0:4d} {0:4d} {0:4d}")
    path.write_text("\n".join(lines) + "\n")


def generate(spec: SystemSpec, out_dir: Path) -> dict:
    """Run RHF, transform integrals, write <name>.fcidump; returns its manifest entry."""
    if spec.basis.lower() != "sto-3g":
        raise ValueError(f"unsupported basis {spec.basis!r}")
    if spec.multiplicity != 1:
        raise ValueError("only closed-shell singlets are generated")

    atoms_bohr = [
        (el, np.asarray(xyz, dtype=float) * BOHR_PER_ANGSTROM)
        for el, xyz in spec.atoms
    ]
    charges = [(float(ATOMIC_NUMBER[el]), xyz) for el, xyz in atoms_bohr]
    basis = build_basis(atoms_bohr)

    S = overlap_matrix(basis)
    T = kinetic_matrix(basis)
    V = nuclear_matrix(basis, charges)
    eri = eri_tensor(basis)
    e_nuc = nuclear_repulsion(charges)

    rhf: RhfResult = run_rhf(S, T + V, eri, e_nuc, spec.n_electrons)
    h_mo, g_mo = mo_integrals(T + V, eri, rhf.mo_coeff)

    out_dir.mkdir(parents=True, exist_ok=True)
    write_fcidump(
        out_dir / f"{spec.name}.fcidump",
        h_mo,
        g_mo,
        e_nuc,
        spec.n_electrons,
        spec.ms2,
    )
    return {
        "name": spec.name,
        "norb": len(basis),
        "nelec": spec.n_electrons,
        "ms2": spec.ms2,
        "e_nuc": e_nuc,
        "rhf_energy": rhf.energy,
    }


def generate_all(out_dir: Path, only: str | None = None) -> list[dict]:
    systems = paper_systems()
    if only is not None:
        if only not in systems:
            raise ValueError(f"unknown system {only!r}; know {sorted(systems)}")
        systems = {only: systems[only]}
    entries = [generate(spec, out_dir) for spec in systems.values()]
    manifest_path = out_dir / "manifest.json"
    existing: list[dict] = []
    if manifest_path.exists():
        existing = [
            e for e in json.loads(manifest_path.read_text())["systems"]
            if e["name"] not in {x["name"] for x in entries}
        ]
    manifest = {"systems": sorted(existing + entries, key=lambda e: e["name"])}
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    return entries
