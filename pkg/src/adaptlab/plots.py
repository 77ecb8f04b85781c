"""Figure rendering for the experiment CSV outputs."""

from __future__ import annotations

import os
from pathlib import Path

os.environ.setdefault("MPLCONFIGDIR", "/tmp/matplotlib")

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

_FLOOR = 1e-16  # log-scale floor for zero/negative errors


def _clip(values, floor=_FLOOR):
    return np.maximum(np.asarray(values, dtype=float), floor)


def trace_figure(
    iterations: list[int],
    energies: list[float],
    max_grads: list[float],
    fci_energy: float | None,
    levels_below_hf: list[float],
    hf_energy: float,
    path: Path,
) -> None:
    """Energy and pool-gradient trace with the low FCI spectrum overlaid."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(iterations, energies, "o-", color="tab:red", ms=3, label="energy")
    for i, level in enumerate(levels_below_hf):
        ax.axhline(
            level, color="tab:blue", lw=0.6, alpha=0.6,
            label="FCI levels below HF" if i == 0 else None,
        )
    ax.axhline(hf_energy, color="gray", lw=0.8, ls="--", label="HF")
    if fci_energy is not None:
        ax.axhline(fci_energy, color="black", lw=0.8, label="FCI")
    ax.set_xlabel("iteration")
    ax.set_ylabel("energy (Ha)")
    ax2 = ax.twinx()
    ax2.semilogy(iterations, _clip(max_grads), "s-", color="tab:green", ms=3)
    ax2.set_ylabel("max pool gradient (Ha/rad)", color="tab:green")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def landscape_figure(
    rows: list[dict],
    fci_energy: float | None,
    path: Path,
) -> None:
    """Restart energies per ansatz length, rainbow-ranked within each length."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    by_length: dict[int, list[dict]] = {}
    for r in rows:
        by_length.setdefault(r["ansatz_length"], []).append(r)
    cmap = plt.get_cmap("rainbow")
    for length, recs in sorted(by_length.items()):
        rand = sorted(
            (r for r in recs if r["init_kind"] == "random"),
            key=lambda r: r["fci_error"],
            reverse=True,
        )
        n = max(len(rand) - 1, 1)
        for rank, r in enumerate(rand):
            ax.plot(
                length, max(r["fci_error"], _FLOOR), ".",
                color=cmap(rank / n), ms=4, alpha=0.8,
            )
    for kind, color, label in (("zero", "red", "HF (zero) init"),
                               ("recycled", "green", "recycled init")):
        xs = sorted(by_length)
        ys = [
            next(r["fci_error"] for r in by_length[x] if r["init_kind"] == kind)
            for x in xs
        ]
        ax.plot(xs, _clip(ys), "-", color=color, lw=1.4, label=label)
    ax.set_yscale("log")
    ax.set_xlabel("ansatz length (operators)")
    ax.set_ylabel("energy error vs FCI (Ha)")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def variance_figure(widths, variances, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(5.4, 3.8))
    ax.loglog(widths, _clip(variances), "o-")
    ax.set_xlabel("hypercube half-width (rad)")
    ax.set_ylabel("gradient-component variance")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
