"""FCIDUMP fixture generator: STO-3G integrals, RHF, and MO transformation."""

from .generate import SystemSpec, generate, generate_all, paper_systems
from .scf import RhfResult, ScfError, run_rhf

__version__ = "0.1.0"
