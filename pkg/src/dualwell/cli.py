"""Command-line front end: ``dualwell <subcommand> [flags]``.

Exit codes: 0 success, 1 runtime or numerical failure, 2 configuration error.
Flags override a ``--config`` file (plain ``key = value`` lines), which
overrides the defaults. ``DUALWELL_OUT`` sets the default output directory.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import condensate as cs
from . import fock, gpe
from .modes import DomainError, mode_basis
from .output import dumps, write_csv, write_json, write_table, write_text
from .plotspec import figure_specs
from .report import (REF_ETA, REF_N_CURVES, REF_N_STATES, REFERENCE_VALUES,
                     acceptance_values, analyze, energy_curve_rows, eta_grid, gpe_sweep, public)
from .transform import DEFAULT_PEAK_SEP, DEFAULT_PEAK_WEIGHT, build_transform, detect_cat

STATES = ("even", "odd", "psi1", "psi2", "xi-plus", "xi-minus")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    gamma: float = 10.0
    n_particles: int = 100
    eta_n: float = REF_ETA
    eta_start: float = 0.0
    eta_stop: float = -6.0
    eta_step: float = -0.01
    out: str = ""
    format: str = "csv"
    cat_peak_weight: float = DEFAULT_PEAK_WEIGHT
    cat_peak_sep: float = DEFAULT_PEAK_SEP
    jobs: int = 1
    state: str = "even"

    def validate(self) -> "RunConfig":
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise ConfigError("gamma must be positive")
        if self.n_particles < 2:
            raise ConfigError("n-particles must be at least 2")
        if self.eta_step == 0:
            raise ConfigError("eta-step must be nonzero")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        if self.state not in STATES:
            raise ConfigError(f"state must be one of {', '.join(STATES)}")
        return self

    @property
    def out_dir(self) -> Path:
        return Path(self.out or os.environ.get("DUALWELL_OUT") or "dualwell_out")

    def grid(self) -> np.ndarray:
        try:
            return eta_grid(self.eta_start, self.eta_stop, self.eta_step)
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc


_TYPES = {f.name: f.type for f in fields(RunConfig)}
_CASTS = {"float": float, "int": int, "str": str}


def read_config_file(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "N":
            key = "n_particles"
        if key not in _TYPES:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CASTS[_TYPES[key]](value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}") from exc
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        cfg = replace(cfg, **read_config_file(args.config))
    flags = {name: getattr(args, name) for name in _TYPES if getattr(args, name, None) is not None}
    return replace(cfg, **flags).validate()


# ------------------------------------------------------------------ commands

def _emit(obj) -> None:
    sys.stdout.write(dumps(obj))


def cmd_modes(cfg: RunConfig) -> dict:
    info = mode_basis(cfg.gamma).as_dict()
    write_json(cfg.out_dir / "modes.json", info)
    _emit(info)
    return info


def _columns(rows):
    return {k: [r[k] for r in rows] for k in rows[0]}


def cmd_gpe_sweep(cfg: RunConfig) -> dict:
    rows, footer = gpe_sweep(mode_basis(cfg.gamma), cfg.grid(), cfg.jobs)
    write_table(cfg.out_dir, "gpe_sweep", _columns(rows), cfg.format, footer)
    _emit(footer)
    return footer


def _fock_dump(cfg, basis, N, eta):
    res = fock.diagonalize(basis, N, eta)
    even, odd = res.groundPair
    n = np.arange(N + 1)
    write_csv(cfg.out_dir / "fock_ground_even.csv", {"n": n, "C_n": even.coeffs})
    write_csv(cfg.out_dir / "fock_ground_odd.csv", {"n": n, "C_n": odd.coeffs})
    write_csv(cfg.out_dir / "fock_states.csv", {"n": n, "C_even": even.coeffs, "C_odd": odd.coeffs})
    return res


def cmd_fock_diag(cfg: RunConfig) -> dict:
    basis = mode_basis(cfg.gamma)
    res = _fock_dump(cfg, basis, cfg.n_particles, cfg.eta_n)
    even, odd = res.groundPair
    summary = {
        "gamma": cfg.gamma, "N": cfg.n_particles, "etaN": cfg.eta_n,
        "E_even": even.energyPerParticle, "E_odd": odd.energyPerParticle,
        "gap_even_odd": res.gap, "degenerate": res.degenerate,
        "spectrum": res.spectrum,
    }
    write_json(cfg.out_dir / "fock_diag.json", summary)
    _emit({k: v for k, v in summary.items() if k != "spectrum"})
    return summary


def cmd_energy_curves(cfg: RunConfig) -> dict:
    basis = mode_basis(cfg.gamma)
    N = cfg.n_particles
    rows = energy_curve_rows(basis, N, cfg.grid(), cfg.jobs)
    meta = {
        "N": N,
        "diagonal_crossover": fock.diagonal_crossover(basis, N),
        "exact_crossover": fock.exact_crossover(basis, N),
        "gpe_bifurcation": gpe.bifurcation_point(basis),
    }
    write_table(cfg.out_dir, "energy_curves", _columns(rows), cfg.format, meta)
    _emit(meta)
    return meta


def _rotated(basis, N, eta):
    res = fock.diagonalize(basis, N, eta)
    return res, cs.optimize_rotation(*res.groundPair)


def cmd_obdm(cfg: RunConfig) -> dict:
    basis = mode_basis(cfg.gamma)
    res, rot = _rotated(basis, cfg.n_particles, cfg.eta_n)
    out = {"N": cfg.n_particles, "etaN": cfg.eta_n, "theta": rot.theta}
    for name, state in (("even", res.groundPair[0]), ("odd", res.groundPair[1]),
                        ("psi1", rot.psi1), ("psi2", rot.psi2)):
        o = cs.obdm(state)
        out[name] = {"matrix": o.matrix, "eigenvalues": o.eigenvalues,
                     "naturalOrbitalAngle": o.naturalOrbitalAngle}
    n = np.arange(cfg.n_particles + 1)
    write_csv(cfg.out_dir / "psi1.csv", {"n": n, "C_n": rot.psi1.coeffs})
    write_csv(cfg.out_dir / "psi2.csv", {"n": n, "C_n": rot.psi2.coeffs})
    write_json(cfg.out_dir / "obdm.json", out)
    _emit(out)
    return out


def cmd_fit_phase(cfg: RunConfig) -> dict:
    basis = mode_basis(cfg.gamma)
    N, eta = cfg.n_particles, cfg.eta_n
    res, rot = _rotated(basis, N, eta)
    fit = cs.fit_phase_state(rot.psi1)
    energies = cs.reference_energies(basis, N, eta, fit.u)
    out = {"N": N, "etaN": eta, "theta": rot.theta, "u_fit": fit.u, "u_obdm": fit.u_obdm,
           "residual": fit.residual, "flagged": fit.flagged,
           "E_exact": res.ground.energyPerParticle, **energies}
    n = np.arange(N + 1)
    write_csv(cfg.out_dir / "overlay.csv", {
        "n": n, "psi1": rot.psi1.coeffs, "psi2": rot.psi2.coeffs,
        "D_plus": cs.phase_state(fit.u, +1, N).coeffs,
        "D_minus": cs.phase_state(fit.u, -1, N).coeffs})
    write_json(cfg.out_dir / "fit_phase.json", out)
    _emit(out)
    return out


def _select_state(cfg, basis):
    N, eta = cfg.n_particles, cfg.eta_n
    if cfg.state in ("even", "odd"):
        return fock.diagonalize(basis, N, eta).groundPair[0 if cfg.state == "even" else 1].coeffs
    if cfg.state in ("psi1", "psi2"):
        rot = _rotated(basis, N, eta)[1]
        return (rot.psi1 if cfg.state == "psi1" else rot.psi2).coeffs
    res, rot = _rotated(basis, N, eta)
    u = cs.fit_phase_state(rot.psi1).u
    return cs.phase_state(u, +1 if cfg.state == "xi-plus" else -1, N).coeffs


def cmd_cat_transform(cfg: RunConfig) -> dict:
    basis = mode_basis(cfg.gamma)
    c = _select_state(cfg, basis)
    B = build_transform(cfg.n_particles).entries @ c
    report = detect_cat(B, cfg.cat_peak_weight, cfg.cat_peak_sep).as_dict()
    stem = f"cat_{cfg.state.replace('-', '_')}"
    write_csv(cfg.out_dir / f"{stem}.csv", {"m": np.arange(len(B)), "B_m": B, "prob": B * B})
    write_json(cfg.out_dir / f"{stem}.json", report)
    _emit(report)
    return report


def _write_analysis(out_dir: Path, report: dict) -> None:
    write_json(out_dir / "analysis.json", public(report))
    arrays = report.get("_arrays")
    if arrays:
        write_csv(out_dir / "fock_states.csv", arrays["states"])
        write_csv(out_dir / "overlay.csv", arrays["overlay"])
        write_csv(out_dir / "cat_profiles.csv", arrays["cat"])


def cmd_analyze(cfg: RunConfig) -> dict:
    report = analyze(mode_basis(cfg.gamma), cfg.n_particles, cfg.eta_n,
                     cfg.cat_peak_weight, cfg.cat_peak_sep)
    _write_analysis(cfg.out_dir, report)
    _emit(public(report))
    return report


def cmd_report_all(cfg: RunConfig) -> dict:
    """Every table and figure spec at the reference parameters, plus the acceptance summary."""
    basis = mode_basis(cfg.gamma)
    out = cfg.out_dir
    write_json(out / "modes.json", basis.as_dict())
    rows, footer = gpe_sweep(basis, eta_grid(0.0, -6.0, -0.01), cfg.jobs)
    write_csv(out / "gpe_sweep.csv", _columns(rows), footer)
    curves = energy_curve_rows(basis, REF_N_CURVES, eta_grid(0.0, -6.0, -0.02), cfg.jobs)
    write_csv(out / "energy_curves.csv", _columns(curves))
    report = analyze(basis, REF_N_STATES, REF_ETA, cfg.cat_peak_weight, cfg.cat_peak_sep)
    _write_analysis(out, report)
    _fock_dump(cfg, basis, REF_N_STATES, REF_ETA)
    for name, spec in figure_specs().items():
        write_json(out / "plots" / name, spec)
    summary = {"gamma": cfg.gamma, "values": acceptance_values(basis), "reference": REFERENCE_VALUES}
    write_json(out / "acceptance_summary.json", summary)
    _emit(summary)
    return summary


COMMANDS = {
    "modes": (cmd_modes, "single-particle constants k, A, e0, e1, chi"),
    "gpe-sweep": (cmd_gpe_sweep, "variational GPE sweep over etaN with bifurcation footer"),
    "fock-diag": (cmd_fock_diag, "exact diagonalisation at one etaN; ground-pair dumps"),
    "energy-curves": (cmd_energy_curves, "symmetric / diagonal / exact / GPE energy curves"),
    "obdm": (cmd_obdm, "one-body density matrices of the ground pair and rotated states"),
    "fit-phase": (cmd_fit_phase, "phase-state fit of the rotated ground state"),
    "cat-transform": (cmd_cat_transform, "transform a state to the localised basis; cat report"),
    "analyze": (cmd_analyze, "full analysis report at one etaN"),
    "report-all": (cmd_report_all, "every table at the reference parameters"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--gamma", type=float)
    common.add_argument("--n-particles", "-N", dest="n_particles", type=int)
    common.add_argument("--eta-n", dest="eta_n", type=float)
    common.add_argument("--eta-start", dest="eta_start", type=float)
    common.add_argument("--eta-stop", dest="eta_stop", type=float)
    common.add_argument("--eta-step", dest="eta_step", type=float)
    common.add_argument("--out", help="output directory (default $DUALWELL_OUT or ./dualwell_out)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--cat-peak-weight", dest="cat_peak_weight", type=float)
    common.add_argument("--cat-peak-sep", dest="cat_peak_sep", type=float,
                        help="minimum peak separation as a fraction of N")
    common.add_argument("--jobs", type=int, help="worker threads for sweeps")
    common.add_argument("--state", choices=STATES, help="state for cat-transform")

    parser = argparse.ArgumentParser(prog="dualwell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        COMMANDS[args.command][0](cfg)
    except (ConfigError, DomainError) as exc:
        print(f"dualwell: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, ArithmeticError, np.linalg.LinAlgError, OSError) as exc:
        print(f"dualwell: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
