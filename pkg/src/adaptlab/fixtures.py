"""Checked-in FCIDUMP fixtures and their reference-energy manifest."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .hamio import MolecularHamiltonian, parse_fcidump

FIXTURE_DIR = Path(__file__).parent / "fixtures"


@dataclass
class FixtureInfo:
    name: str
    norb: int
    nelec: int
    ms2: int
    e_nuc: float
    rhf_energy: float
    fci_energy: float


def fixture_dir() -> Path:
    return FIXTURE_DIR


def list_fixtures(directory: Path | None = None) -> list[str]:
    d = directory or FIXTURE_DIR
    return sorted(p.stem for p in d.glob("*.fcidump"))


def load_manifest(directory: Path | None = None) -> dict[str, FixtureInfo]:
    d = directory or FIXTURE_DIR
    path = d / "manifest.json"
    if not path.exists():
        raise FileNotFoundError(f"no manifest.json in {d}")
    raw = json.loads(path.read_text())
    return {e["name"]: FixtureInfo(**e) for e in raw["systems"]}


def fixture_path(system: str, directory: Path | None = None) -> Path:
    """Resolve a fixture name or an explicit .fcidump path."""
    direct = Path(system)
    if direct.suffix == ".fcidump" and direct.exists():
        return direct
    d = directory or FIXTURE_DIR
    path = d / f"{system}.fcidump"
    if not path.exists():
        known = ", ".join(list_fixtures(d)) or "(none)"
        raise FileNotFoundError(f"unknown fixture {system!r}; available: {known}")
    return path


def load_fixture(system: str, directory: Path | None = None) -> MolecularHamiltonian:
    return parse_fcidump(fixture_path(system, directory).read_text())
