"""Experiment runner: reproduce each figure's data as CSV plus rendered plots.

Configs are flat ``key = value`` text files.  Every run writes its CSV
artifacts, a rendered PNG (unless --no-plots) and a JSON metadata sidecar
recording the full configuration and master seed.  Outputs are byte-identical
across reruns with the same config and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import plots
from .adapt import AdaptConfig, AdaptTrace, run_adapt, shuffle_ansatz
from .fermion import hamiltonian_to_qubits
from .fixtures import fixture_path, load_manifest, parse_fcidump
from .hamio import FcidumpError, to_spin_orbitals
from .landscape import scan_ansatz, scan_sequence, variance_scan
from .oracle import fci_spectrum
from .pool import build_uccsd_pool
from .statesim import energy, hf_reference

MODES = ("adapt", "adaptn", "landscape", "variance", "reorder", "fci")

DEFAULT_WIDTHS = (math.pi / 8, math.pi / 4, math.pi / 2, math.pi, 2 * math.pi)


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    system: str
    mode: str
    eps: float = 1e-6
    max_ops: int = 200
    criterion: str = "max"
    n: int = 1  # ansatz repetition for adaptn
    gtol: float = 1e-9
    max_opt_iter: int = 10000
    n_random: int = 300
    lengths: list[int] | None = None  # landscape/reorder prefix lengths
    widths: list[float] = field(default_factory=lambda: list(DEFAULT_WIDTHS))
    samples_per_width: int = 100
    max_scan_ops: int = 30  # variance-scan ansatz truncation
    n_states: int = 1  # fci mode spectrum length
    seeds: list[int] = field(default_factory=lambda: [1])  # reorder shuffle seeds
    seed: int = 0  # master seed
    out: Path = Path("runs")
    threads: int = 1
    fixtures_dir: Path | None = None

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.mode == "adaptn" and self.n < 2:
            raise ConfigError("adaptn mode requires n >= 2")
        if self.mode == "variance" and not self.widths:
            raise ConfigError("variance mode requires widths")
        if self.mode == "reorder" and not self.seeds:
            raise ConfigError("reorder mode requires seeds")
        fixture_path(self.system, self.fixtures_dir)  # raises if missing


_LIST_KEYS = {"widths", "seeds", "lengths"}
_INT_KEYS = {"max_ops", "n", "n_random", "samples_per_width", "max_scan_ops",
             "n_states", "seed", "threads", "max_opt_iter"}
_FLOAT_KEYS = {"eps", "gtol"}
_STR_KEYS = {"system", "mode", "criterion"}
_PATH_KEYS = {"out", "fixtures_dir"}


def _parse_width(token: str) -> float:
    t = token.strip().lower().replace(" ", "").replace("*", "")
    if "pi" in t:
        head, _, tail = t.partition("pi")
        value = math.pi * (float(head) if head else 1.0)
        if tail.startswith("/"):
            value /= float(tail[1:])
        elif tail:
            raise ConfigError(f"cannot parse width {token!r}")
        return value
    return float(t)


def parse_config_text(text: str) -> dict:
    out: dict = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {line_no}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in _LIST_KEYS:
            items = [v for v in value.split(",") if v.strip()]
            if key == "widths":
                out[key] = [_parse_width(v) for v in items]
            else:
                out[key] = [int(v) for v in items]
        elif key in _INT_KEYS:
            out[key] = int(value)
        elif key in _FLOAT_KEYS:
            out[key] = float(value)
        elif key in _STR_KEYS:
            out[key] = value
        elif key in _PATH_KEYS:
            out[key] = Path(value)
        else:
            raise ConfigError(f"config line {line_no}: unknown key {key!r}")
    return out


def load_config(path: Path, mode: str, overrides: dict) -> ExperimentConfig:
    raw = parse_config_text(path.read_text())
    if "mode" in raw and raw["mode"] != mode:
        raise ConfigError(
            f"config sets mode={raw['mode']!r} but the {mode!r} subcommand was invoked"
        )
    raw["mode"] = mode
    raw.update({k: v for k, v in overrides.items() if v is not None})
    if "system" not in raw:
        raise ConfigError("config missing required key 'system'")
    cfg = ExperimentConfig(**raw)
    cfg.validate()
    return cfg


# -- CSV helpers -------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return f"{v:.15g}"
    if v is None:
        return ""
    return str(v)


def write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def _write_meta(path: Path, cfg: ExperimentConfig, extra: dict) -> None:
    payload = {
        "config": {
            k: (str(v) if isinstance(v, Path) else v)
            for k, v in vars(cfg).items()
        },
        "master_seed": cfg.seed,
        **extra,
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")


# -- experiment context ------------------------------------------------------


@dataclass
class _System:
    H: object
    pool: list
    ref: object
    n_so: int
    n_electrons: int
    ms2: int
    hf_energy: float
    fci: object  # full-sector FciSpectrum


def _load_system(cfg: ExperimentConfig) -> _System:
    path = fixture_path(cfg.system, cfg.fixtures_dir)
    m = parse_fcidump(path.read_text())
    H = hamiltonian_to_qubits(to_spin_orbitals(m))
    n_so = 2 * m.n_spatial
    pool = build_uccsd_pool(n_so, m.n_electrons, m.ms2)
    ref = hf_reference(n_so, m.n_electrons, m.ms2)
    fci = fci_spectrum(H, m.n_electrons, m.ms2, k=1 << n_so)
    return _System(
        H=H, pool=pool, ref=ref, n_so=n_so, n_electrons=m.n_electrons,
        ms2=m.ms2, hf_energy=energy(H, ref), fci=fci,
    )


def _label(cfg: ExperimentConfig) -> str:
    """File-name prefix: fixture name, or the stem of an explicit path."""
    return Path(cfg.system).stem if cfg.system.endswith(".fcidump") else cfg.system


TRACE_HEADER = ["iteration", "chosen_op", "op_label", "max_pool_grad",
                "grad_l2", "energy", "fci_error"]
LANDSCAPE_HEADER = ["ansatz_length", "init_kind", "seed", "energy_opt",
                    "fci_error", "converged"]
VARIANCE_HEADER = ["width", "variance", "n_samples"]
SPECTRUM_HEADER = ["index", "energy", "below_hf"]


def _trace_rows(trace: AdaptTrace, pool) -> list[list]:
    return [
        [k + 1, it.chosen_op_index, pool[it.chosen_op_index].label,
         it.max_pool_gradient, it.pool_gradient_l2, it.energy, it.fci_error]
        for k, it in enumerate(trace.iterations)
    ]


def _spectrum_rows(sys_: _System, k: int | None = None) -> list[list]:
    evals = sys_.fci.eigenvalues
    if k is None:
        # all levels below HF plus the first one above, for overlay context
        keep = int(np.sum(evals < sys_.hf_energy)) + 1
        k = min(keep, len(evals))
    k = min(k, len(evals))
    return [
        [i, float(evals[i]), bool(evals[i] < sys_.hf_energy)] for i in range(k)
    ]


def _run_adapt_mode(cfg: ExperimentConfig, out: Path, render: bool) -> None:
    sys_ = _load_system(cfg)
    repetition = cfg.n if cfg.mode == "adaptn" else 1
    adapt_cfg = AdaptConfig(
        eps=cfg.eps, max_ops=cfg.max_ops, criterion=cfg.criterion,
        repetition=repetition, gtol=cfg.gtol, max_opt_iter=cfg.max_opt_iter,
    )
    prefix = f"{_label(cfg)}_{cfg.mode}"
    trace_path = out / f"{prefix}_trace.csv"

    rows: list[list] = []

    def persist(k: int, it) -> None:
        # rewrite the trace CSV after every iteration so partial runs survive
        rows.append([k, it.chosen_op_index, sys_.pool[it.chosen_op_index].label,
                     it.max_pool_gradient, it.pool_gradient_l2, it.energy,
                     it.fci_error])
        write_csv(trace_path, TRACE_HEADER, rows)

    trace = run_adapt(
        sys_.H, sys_.pool, sys_.ref, adapt_cfg,
        fci_energy=sys_.fci.ground_energy, on_iteration=persist,
    )
    write_csv(trace_path, TRACE_HEADER, _trace_rows(trace, sys_.pool))

    spec_rows = _spectrum_rows(sys_)
    write_csv(out / f"{prefix}_spectrum.csv", SPECTRUM_HEADER, spec_rows)

    levels = [r[1] for r in spec_rows if r[2] and r[0] > 0]
    overlay_header = TRACE_HEADER[:2] + ["max_pool_grad", "energy", "fci_error"] + [
        f"level_{i}" for i in range(len(levels))
    ]
    overlay_rows = [
        [k + 1, it.chosen_op_index, it.max_pool_gradient, it.energy, it.fci_error]
        + levels
        for k, it in enumerate(trace.iterations)
    ]
    write_csv(out / f"{prefix}_overlay.csv", overlay_header, overlay_rows)

    _write_meta(out / f"{prefix}_meta.json", cfg, {
        "fixture": str(fixture_path(cfg.system, cfg.fixtures_dir)),
        "fci_energy": sys_.fci.ground_energy,
        "hf_energy": sys_.hf_energy,
        "converged": trace.converged,
        "n_iterations": len(trace.iterations),
    })
    if render:
        plots.trace_figure(
            [k + 1 for k in range(len(trace.iterations))],
            [it.energy for it in trace.iterations],
            [abs(it.max_pool_gradient) for it in trace.iterations],
            sys_.fci.ground_energy, levels, sys_.hf_energy,
            out / f"{prefix}_trace.png",
        )


def _landscape_rows(records_by_length) -> list[list]:
    rows = []
    for length in sorted(records_by_length):
        for r in records_by_length[length]:
            rows.append([length, r.init_kind, r.seed, r.energy_opt,
                         r.fci_error, r.converged])
    return rows


def _run_landscape_mode(cfg: ExperimentConfig, out: Path, render: bool) -> None:
    sys_ = _load_system(cfg)
    repetition = cfg.n
    adapt_cfg = AdaptConfig(
        eps=cfg.eps, max_ops=cfg.max_ops, criterion=cfg.criterion,
        repetition=repetition, gtol=cfg.gtol, max_opt_iter=cfg.max_opt_iter,
    )
    trace = run_adapt(
        sys_.H, sys_.pool, sys_.ref, adapt_cfg, fci_energy=sys_.fci.ground_energy
    )
    lengths = cfg.lengths or list(range(1, len(trace.iterations) + 1))
    records = scan_ansatz(
        sys_.H, sys_.pool, sys_.ref, lengths, trace,
        n_random=cfg.n_random, master_seed=cfg.seed, gtol=cfg.gtol,
        max_opt_iter=cfg.max_opt_iter, threads=cfg.threads,
    )
    prefix = f"{_label(cfg)}_landscape"
    write_csv(out / f"{prefix}.csv", LANDSCAPE_HEADER, _landscape_rows(records))
    write_csv(out / f"{_label(cfg)}_adapt_trace.csv", TRACE_HEADER,
              _trace_rows(trace, sys_.pool))
    _write_meta(out / f"{prefix}_meta.json", cfg, {
        "fixture": str(fixture_path(cfg.system, cfg.fixtures_dir)),
        "fci_energy": sys_.fci.ground_energy,
        "hf_energy": sys_.hf_energy,
        "trace_length": len(trace.iterations),
    })
    if render:
        rows = [
            dict(zip(["ansatz_length", "init_kind", "seed", "energy_opt",
                      "fci_error", "converged"], row))
            for row in _landscape_rows(records)
        ]
        plots.landscape_figure(rows, sys_.fci.ground_energy, out / f"{prefix}.png")


def _run_variance_mode(cfg: ExperimentConfig, out: Path, render: bool) -> None:
    sys_ = _load_system(cfg)
    adapt_cfg = AdaptConfig(
        eps=cfg.eps, max_ops=cfg.max_scan_ops, criterion=cfg.criterion,
        gtol=cfg.gtol, max_opt_iter=cfg.max_opt_iter,
    )
    trace = run_adapt(
        sys_.H, sys_.pool, sys_.ref, adapt_cfg, fci_energy=sys_.fci.ground_energy
    )
    scan = variance_scan(
        sys_.H, sys_.pool, trace.ansatz, sys_.ref, trace.ansatz.theta,
        cfg.widths, cfg.samples_per_width, master_seed=cfg.seed,
    )
    prefix = f"{_label(cfg)}_variance"
    write_csv(
        out / f"{prefix}.csv", VARIANCE_HEADER,
        [[w, v, cfg.samples_per_width] for w, v in zip(scan.widths, scan.variances)],
    )
    _write_meta(out / f"{prefix}_meta.json", cfg, {
        "fixture": str(fixture_path(cfg.system, cfg.fixtures_dir)),
        "ansatz_length": len(trace.ansatz.op_indices),
        "center_energy": trace.iterations[-1].energy if trace.iterations else sys_.hf_energy,
    })
    if render:
        plots.variance_figure(scan.widths, scan.variances, out / f"{prefix}.png")


def _run_reorder_mode(cfg: ExperimentConfig, out: Path, render: bool) -> None:
    sys_ = _load_system(cfg)
    adapt_cfg = AdaptConfig(
        eps=cfg.eps, max_ops=cfg.max_ops, criterion=cfg.criterion,
        gtol=cfg.gtol, max_opt_iter=cfg.max_opt_iter,
    )
    trace = run_adapt(
        sys_.H, sys_.pool, sys_.ref, adapt_cfg, fci_energy=sys_.fci.ground_energy
    )
    for shuffle_seed in cfg.seeds:
        shuffled = shuffle_ansatz(trace.ansatz, shuffle_seed)
        lengths = cfg.lengths or list(range(1, len(shuffled.op_indices) + 1))
        records = scan_sequence(
            sys_.H, sys_.pool, sys_.ref, shuffled.op_indices, lengths,
            n_random=cfg.n_random, master_seed=cfg.seed,
            fci_energy=sys_.fci.ground_energy, gtol=cfg.gtol,
            max_opt_iter=cfg.max_opt_iter, threads=cfg.threads,
        )
        prefix = f"{_label(cfg)}_reorder_seed{shuffle_seed}"
        write_csv(out / f"{prefix}.csv", LANDSCAPE_HEADER, _landscape_rows(records))
        if render:
            rows = [
                dict(zip(["ansatz_length", "init_kind", "seed", "energy_opt",
                          "fci_error", "converged"], row))
                for row in _landscape_rows(records)
            ]
            plots.landscape_figure(rows, sys_.fci.ground_energy, out / f"{prefix}.png")
    _write_meta(out / f"{_label(cfg)}_reorder_meta.json", cfg, {
        "fixture": str(fixture_path(cfg.system, cfg.fixtures_dir)),
        "fci_energy": sys_.fci.ground_energy,
        "base_ops": trace.ansatz.op_indices,
    })


def _run_fci_mode(cfg: ExperimentConfig, out: Path, render: bool) -> None:
    sys_ = _load_system(cfg)
    prefix = f"{_label(cfg)}_fci"
    write_csv(out / f"{prefix}_spectrum.csv", SPECTRUM_HEADER,
              _spectrum_rows(sys_, k=cfg.n_states))
    _write_meta(out / f"{prefix}_meta.json", cfg, {
        "fixture": str(fixture_path(cfg.system, cfg.fixtures_dir)),
        "ground_energy": sys_.fci.ground_energy,
        "hf_energy": sys_.hf_energy,
        "n_below_hf": int(len(sys_.fci.excited_below_hf)),
    })


def run(cfg: ExperimentConfig, render_plots: bool = True) -> int:
    """Execute one experiment; returns a process exit code."""
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    dispatch = {
        "adapt": _run_adapt_mode,
        "adaptn": _run_adapt_mode,
        "landscape": _run_landscape_mode,
        "variance": _run_variance_mode,
        "reorder": _run_reorder_mode,
        "fci": _run_fci_mode,
    }
    dispatch[cfg.mode](cfg, out, render_plots)
    return 0


def verify_fixtures(directory: Path | None = None) -> tuple[bool, str]:
    """Recompute HF and FCI energies for every checked-in fixture.

    Compares against the manifest reference values at 1e-8; returns
    (all_ok, report text).
    """
    from .fixtures import fixture_dir, list_fixtures

    d = directory or fixture_dir()
    names = list_fixtures(d)
    if not names:
        return False, f"no fixtures found in {d}"
    try:
        manifest = load_manifest(d)
    except FileNotFoundError as err:
        return False, str(err)
    lines = []
    ok = True
    for name in names:
        if name not in manifest:
            lines.append(f"{name}: FAIL (missing from manifest)")
            ok = False
            continue
        info = manifest[name]
        try:
            m = parse_fcidump((d / f"{name}.fcidump").read_text())
            H = hamiltonian_to_qubits(to_spin_orbitals(m))
            e_hf = energy(H, hf_reference(2 * m.n_spatial, m.n_electrons, m.ms2))
            e_fci = fci_spectrum(H, m.n_electrons, m.ms2, k=1).ground_energy
        except (FcidumpError, ValueError) as err:
            lines.append(f"{name}: FAIL ({err})")
            ok = False
            continue
        d_hf = abs(e_hf - info.rhf_energy)
        d_fci = abs(e_fci - info.fci_energy)
        good = d_hf < 1e-8 and d_fci < 1e-8
        ok = ok and good
        status = "ok" if good else "FAIL"
        lines.append(f"{name}: {status} (dHF={d_hf:.2e}, dFCI={d_fci:.2e})")
    lines.append("all fixtures verified" if ok else "fixture verification FAILED")
    return ok, "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="adaptlab",
        description="Adaptive-ansatz VQE landscape experiments on exact "
        "molecular simulators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for mode in MODES:
        p = sub.add_parser(mode, help=f"run the {mode} experiment")
        p.add_argument("--config", type=Path, required=True)
        p.add_argument("--seed", type=int, default=None, help="master seed override")
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--out", type=Path, default=None)
        p.add_argument("--no-plots", action="store_true")
    pv = sub.add_parser("verify-fixtures", help="recheck fixture reference energies")
    pv.add_argument("--fixtures", type=Path, default=None)

    args = parser.parse_args(argv)
    if args.command == "verify-fixtures":
        ok, report = verify_fixtures(args.fixtures)
        print(report)
        return 0 if ok else 1

    try:
        cfg = load_config(
            args.config, args.command,
            {"seed": args.seed, "threads": args.threads, "out": args.out},
        )
        return run(cfg, render_plots=not args.no_plots)
    except (ConfigError, FcidumpError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
