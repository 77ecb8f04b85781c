"""generate-fixtures command line entry point."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .generate import generate_all
from .scf import ScfError


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="generate-fixtures",
        description="Generate FCIDUMP fixtures and reference RHF energies.",
    )
    parser.add_argument("--out", type=Path, required=True, help="output directory")
    parser.add_argument("--system", default=None, help="generate a single system")
    args = parser.parse_args(argv)

    try:
        entries = generate_all(args.out, only=args.system)
    except (ScfError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    for e in entries:
        print(
            f"{e['name']:<12s} NORB={e['norb']:<3d} NELEC={e['nelec']:<3d} "
            f"E(RHF)={e['rhf_energy']:.10f}  E_nuc={e['e_nuc']:.10f}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
