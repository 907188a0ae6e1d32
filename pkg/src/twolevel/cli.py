"""Command-line front end: scenario runs, figure presets, CSV/JSON emission.

Two subcommands:

* ``run`` evolves one scenario (or a numbered figure preset) and writes CSV
  files plus a small JSON manifest into the output directory.
* ``validate`` reports which solution paths apply to a parameter set without
  writing anything.

Scenario configuration comes from a JSON document (``--config``), flat flags
(``--g0t``, ``--at``, ...), or both, with flags taking precedence.  All
output is deterministic: fixed 17-significant-digit formatting, '\\n' line
endings, no timestamps, so reruns are byte-identical.

Exit codes: 0 success, 2 configuration error, 3 domain/branch error,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .closed_form import (
    ALPHA_TOL,
    KAPPA_TOL,
    LAMBDA4_TOL,
    ah_aux,
    ah_solution,
    ah_steady,
    lindblad_aux,
    lindblad_solution,
    lindblad_steady,
    oscillation_period,
    _oscillatory_states,
)
from .errors import DomainError, NumericsError
from .model import ReducedParams
from .observables import coherence_interaction, upper_population
from .pauli import reconstruct
from .propagate import (
    EvolveConfig,
    evolve_linear,
    evolve_rk4,
    propagator_sampler,
    steady_state,
)
from .spectra import (
    fourier_coefficients_periodic,
    phase_series,
    regular_ft_decaying,
)

__all__ = [
    "ScenarioConfig",
    "SpectrumGrid",
    "FIGURE_PRESETS",
    "run_scenario",
    "run_preset",
    "validate_report",
    "build_parser",
    "main",
]

_OUTPUT_KINDS = ("trajectory", "steady", "spectrum-decay", "spectrum-periodic")
_TRAJECTORY_HEADER = "tau,s1,s2,s3,trace,x,y,z,pe,re_coh,im_coh"
_DECAY_HEADER = "omega,re,im,modulus,phase"
_PERIODIC_HEADER = "n,re,im,modulus,phase"


@dataclass(frozen=True)
class SpectrumGrid:
    """Frequency/wavenumber grids for the spectrum outputs."""

    omega_max: float = 50.0
    omega_step: float = 0.25
    tail_eps: float = 1e-4
    n_max: int = 30

    def omegas(self) -> np.ndarray:
        if not (self.omega_step > 0 and self.omega_max >= 0):
            raise ValueError("spectrum grid requires omega_step > 0 and omega_max >= 0")
        count = int(math.floor(self.omega_max / self.omega_step + 1e-9)) + 1
        return np.arange(count) * self.omega_step


@dataclass(frozen=True)
class ScenarioConfig:
    """One resolved run: parameters, initial state, method, and outputs."""

    params: ReducedParams
    init: tuple[float, float, float] = (0.0, 0.0, -1.0)
    method: str = "expm"
    evolve: EvolveConfig = EvolveConfig(tau_max=20.0, dt=0.01)
    outputs: tuple[str, ...] = ("trajectory",)
    spectrum: SpectrumGrid = SpectrumGrid()

    def __post_init__(self) -> None:
        if self.method not in ("analytic", "expm", "rk4"):
            raise ValueError("method must be one of analytic, expm, rk4")
        init = tuple(float(v) for v in self.init)
        if len(init) != 3 or not all(math.isfinite(v) for v in init):
            raise ValueError("init must be three finite numbers x,y,z")
        object.__setattr__(self, "init", init)
        bad = [k for k in self.outputs if k not in _OUTPUT_KINDS]
        if bad or not self.outputs:
            raise ValueError(
                "outputs must be a nonempty subset of " + ", ".join(_OUTPUT_KINDS)
            )


#: Parameter grids lifted verbatim from the figure captions.  Presets 1-6 are
#: trajectory families (odd ids are read through the pe column, even ids
#: through im_coh); 7-8 are decay-spectrum families; 9 is the periodic
#: harmonic analysis.
FIGURE_PRESETS: dict[int, dict] = {
    1: {"kind": "trajectory", "param": "g0t", "values": (1.0, 0.25, 0.125, 0.025)},
    2: {"kind": "trajectory", "param": "g0t", "values": (1.0, 0.25, 0.125, 0.025)},
    3: {"kind": "trajectory", "param": "at", "values": (4.0, 1.0, 0.5, 0.05)},
    4: {"kind": "trajectory", "param": "at", "values": (4.0, 1.0, 0.5, 0.05)},
    5: {"kind": "trajectory", "param": "gt", "values": (2.0, 1.0, 0.9, 0.5)},
    6: {"kind": "trajectory", "param": "gt", "values": (2.0, 1.0, 0.9, 0.5)},
    7: {"kind": "spectrum-decay", "param": "g0t", "values": (0.5, 0.25, 0.125, 0.01)},
    8: {"kind": "spectrum-decay", "param": "at", "values": (2.0, 1.0, 0.5, 0.2)},
    9: {"kind": "spectrum-periodic", "param": "gt", "values": (0.999, 0.9, 0.5)},
}

_GROUND = (0.0, 0.0, -1.0)


def _fmt(value: float) -> str:
    return format(float(value) + 0.0, ".17g")


def _label(value: float) -> str:
    return format(value, "g").replace(".", "p").replace("-", "m")


def _write_rows(path: Path, header: str, rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _write_manifest(path: Path, payload: dict) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(json.dumps(payload, sort_keys=True, indent=2))
        fh.write("\n")


# ---------------------------------------------------------------------------
# Trajectory assembly
# ---------------------------------------------------------------------------


def _analytic_states(rp: ReducedParams, b0: np.ndarray, taus: np.ndarray) -> np.ndarray:
    """Raw 4-vector trajectory from the closed-form branch covering rp.

    A nonzero gauge rate only rescales the raw vector by exp(-tt tau), so it
    is factored out of the branch solutions rather than blocking them.
    """
    if rp.n_thermal != 0:
        raise DomainError("analytic matrix valid only at N=0")
    if rp.at == 0 and rp.gt == 0 and rp.g0t > 0:
        states = lindblad_solution(rp.g0t, b0, taus)
    elif rp.g0t == 0:
        if abs(rp.at) < ALPHA_TOL and abs(rp.gt) < 1:
            states = _oscillatory_states(rp.gt, b0, taus)
        else:
            states = ah_solution(rp.at, rp.gt, b0, taus)
    else:
        raise DomainError(
            "no closed-form branch for hybrid parameters; use expm or rk4"
        )
    if rp.tt != 0:
        states = states * np.exp(-rp.tt * taus)[:, np.newaxis]
    return states


def _trajectory(cfg: ScenarioConfig):
    """(taus, raw states (n,4), normalized (n,3)) for the configured method."""
    rp = cfg.params
    taus = cfg.evolve.taus
    b0 = np.array([*cfg.init, 1.0])
    if cfg.method == "expm":
        traj = evolve_linear(rp, b0, cfg.evolve)
        return traj.taus, traj.states, traj.normalized
    if cfg.method == "rk4":
        traj = evolve_rk4(rp, reconstruct(b0), cfg.evolve)
        return traj.taus, traj.states, traj.normalized
    states = _analytic_states(rp, b0, taus)
    trace = states[:, 3]
    if np.any(trace <= 1e-300):
        raise NumericsError("trace collapse")
    return taus, states, states[:, :3] / trace[:, np.newaxis]


def _trajectory_rows(taus, states, normalized):
    coh = coherence_interaction(normalized)
    pe = upper_population(normalized)
    for k in range(taus.size):
        yield [
            _fmt(taus[k]),
            _fmt(states[k, 0]),
            _fmt(states[k, 1]),
            _fmt(states[k, 2]),
            _fmt(states[k, 3]),
            _fmt(normalized[k, 0]),
            _fmt(normalized[k, 1]),
            _fmt(normalized[k, 2]),
            _fmt(pe[k]),
            _fmt(coh[k].real),
            _fmt(coh[k].imag),
        ]


# ---------------------------------------------------------------------------
# Spectrum assembly
# ---------------------------------------------------------------------------


def _pe_sampler(rp: ReducedParams, init: tuple[float, float, float]):
    sample = propagator_sampler(rp, np.array([*init, 1.0]))

    def pe_of(taus: np.ndarray) -> np.ndarray:
        states = sample(np.asarray(taus, dtype=float))
        return 0.5 * (1.0 + states[:, 2] / states[:, 3])

    return pe_of


def _decay_spectrum_rows(rp, init, grid: SpectrumGrid, f_inf: float | None = None):
    if f_inf is None:
        f_inf = float(upper_population(steady_state(rp)))
    spec = regular_ft_decaying(_pe_sampler(rp, init), f_inf, grid.omegas(), grid.tail_eps)
    phases = phase_series(spec)
    for k in range(spec.omegas.size):
        value = spec.values[k]
        yield [
            _fmt(spec.omegas[k]),
            _fmt(value.real),
            _fmt(value.imag),
            _fmt(abs(value)),
            _fmt(phases[k]),
        ]


def _periodic_spectrum_rows(rp: ReducedParams, init, grid: SpectrumGrid):
    if not (rp.g0t == 0 and abs(rp.at) < ALPHA_TOL and abs(rp.gt) < 1):
        raise DomainError("periodic spectrum requires the oscillatory branch")
    if rp.n_thermal != 0:
        raise DomainError("analytic matrix valid only at N=0")
    period = oscillation_period(rp.gt)
    b0 = np.array([*init, 1.0])

    def pe_of(taus: np.ndarray) -> np.ndarray:
        states = _oscillatory_states(rp.gt, b0, np.asarray(taus, dtype=float))
        return 0.5 * (1.0 + states[:, 2] / states[:, 3])

    spec = fourier_coefficients_periodic(pe_of, period, grid.n_max)
    for k in range(spec.wavenumbers.size):
        value = spec.coefficients[k]
        yield [
            str(int(spec.wavenumbers[k])),
            _fmt(value.real),
            _fmt(value.imag),
            _fmt(abs(value)),
            _fmt(np.angle(value)),
        ]


# ---------------------------------------------------------------------------
# Scenario and preset runners
# ---------------------------------------------------------------------------


def run_scenario(cfg: ScenarioConfig, out_dir: Path) -> list[Path]:
    """Write the configured outputs into out_dir; returns the written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    for kind in cfg.outputs:
        if kind == "trajectory":
            path = out_dir / "trajectory.csv"
            _write_rows(path, _TRAJECTORY_HEADER, _trajectory_rows(*_trajectory(cfg)))
        elif kind == "steady":
            path = out_dir / "steady.csv"
            nb = steady_state(cfg.params)
            row = [_fmt(nb[0]), _fmt(nb[1]), _fmt(nb[2]), _fmt(upper_population(nb))]
            _write_rows(path, "x,y,z,pe", [row])
        elif kind == "spectrum-decay":
            path = out_dir / "spectrum_decay.csv"
            _write_rows(
                path,
                _DECAY_HEADER,
                _decay_spectrum_rows(cfg.params, cfg.init, cfg.spectrum),
            )
        else:
            path = out_dir / "spectrum_periodic.csv"
            _write_rows(
                path,
                _PERIODIC_HEADER,
                _periodic_spectrum_rows(cfg.params, cfg.init, cfg.spectrum),
            )
        written.append(path)

    _write_manifest(
        out_dir / "manifest.json",
        {
            "files": sorted(p.name for p in written),
            "params": dataclasses.asdict(cfg.params),
            "init": list(cfg.init),
            "method": cfg.method,
            "outputs": list(cfg.outputs),
        },
    )
    written.append(out_dir / "manifest.json")
    return written


def run_preset(figure: int, out_dir: Path) -> list[Path]:
    """Run one figure preset; one CSV per caption curve plus a manifest."""
    if figure not in FIGURE_PRESETS:
        raise ValueError("--figure must be in 1..9")
    preset = FIGURE_PRESETS[figure]
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    param = preset["param"]
    grid = SpectrumGrid()
    written: list[Path] = []

    for value in preset["values"]:
        rp = ReducedParams(**{param: value})
        path = out_dir / f"fig{figure}_{param}_{_label(value)}.csv"
        if preset["kind"] == "trajectory":
            cfg = ScenarioConfig(params=rp, init=_GROUND, method="expm")
            _write_rows(path, _TRAJECTORY_HEADER, _trajectory_rows(*_trajectory(cfg)))
        elif preset["kind"] == "spectrum-decay":
            steady = lindblad_steady(value) if param == "g0t" else ah_steady(value, 0.0)
            f_inf = float(upper_population(steady))
            _write_rows(
                path, _DECAY_HEADER, _decay_spectrum_rows(rp, _GROUND, grid, f_inf)
            )
        else:
            _write_rows(
                path, _PERIODIC_HEADER, _periodic_spectrum_rows(rp, _GROUND, grid)
            )
        written.append(path)

    _write_manifest(
        out_dir / f"fig{figure}_manifest.json",
        {
            "figure": figure,
            "kind": preset["kind"],
            "param": param,
            "values": list(preset["values"]),
            "files": sorted(p.name for p in written),
        },
    )
    written.append(out_dir / f"fig{figure}_manifest.json")
    return written


# ---------------------------------------------------------------------------
# Validation report
# ---------------------------------------------------------------------------


def validate_report(rp: ReducedParams) -> list[str]:
    """Which solution paths apply to rp, one finding per line."""
    lines: list[str] = []
    if rp.n_thermal != 0:
        lines.append("finite thermal occupation; rk4 path only")
        return lines

    if rp.at == 0 and rp.gt == 0 and rp.g0t > 0:
        kappa = lindblad_aux(rp.g0t).kappa
        if abs(kappa) < KAPPA_TOL:
            lines.append("kappa degenerate; analytic Lindblad path unavailable")
        elif rp.g0t < 1:
            lines.append(f"damped Lindblad branch applicable; kappa = {kappa.real:.4f}")
        else:
            lines.append(
                f"overdamped Lindblad branch applicable; |kappa| = {abs(kappa):.4f}"
            )
    elif rp.g0t == 0:
        aux = ah_aux(rp.at, rp.gt)
        lam4 = abs(aux.lambdas[3])
        if abs(rp.at) < ALPHA_TOL and abs(rp.gt) < 1:
            lines.append(
                f"oscillatory AH branch; period {oscillation_period(rp.gt):.4f}"
            )
        elif lam4 < LAMBDA4_TOL:
            lines.append("degenerate AH point; analytic path unavailable")
        elif abs(rp.at) < ALPHA_TOL:
            lines.append("AH entries singular at alpha=0; expm4 path required")
        else:
            lines.append(f"damped AH branch applicable; lambda_4 = {lam4:.4f}")
    else:
        lines.append("no closed-form branch for hybrid parameters; use expm or rk4")

    if rp.g0t > 0:
        alpha_bar = rp.at / (4.0 * rp.g0t)
        gamma_bar = rp.gt / (4.0 * rp.g0t)
        smalls = (rp.g0t, rp.at, rp.gt, alpha_bar, gamma_bar)
        if all(abs(v) <= 0.3 for v in smalls):
            lines.append("strong-driving expansion applicable")
        else:
            lines.append(
                "strong-driving expansion not applicable (a parameter exceeds 0.3)"
            )

    if rp.tt != 0:
        lines.append(
            "gauge rate active; raw trace carries exp(-tt tau), "
            "normalized observables unaffected"
        )
    return lines


# ---------------------------------------------------------------------------
# Argument parsing and entry point
# ---------------------------------------------------------------------------


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="JSON scenario document")
    parser.add_argument("--g0t", type=float, help="emission rate over 4 Omega")
    parser.add_argument("--at", type=float, help="level-shift asymmetry over Omega")
    parser.add_argument("--gt", type=float, help="decay-rate imbalance over Omega")
    parser.add_argument("--tt", type=float, help="gauge rate over Omega")
    parser.add_argument("--n-thermal", type=float, help="thermal occupation N")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twolevel",
        description="Two-level dissipative dynamics: trajectories, steady "
        "states, and spectra as deterministic CSV files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evolve a scenario or figure preset")
    _add_param_flags(run)
    run.add_argument("--init", help="initial Bloch vector x,y,z (default 0,0,-1)")
    run.add_argument("--tau-max", type=float, help="evolution horizon")
    run.add_argument("--dt", type=float, help="output time step")
    run.add_argument("--method", choices=("analytic", "expm", "rk4"))
    run.add_argument("--figure", type=int, help="figure preset 1..9")
    run.add_argument(
        "--outputs", help="comma-separated subset of " + ",".join(_OUTPUT_KINDS)
    )
    run.add_argument("--out", type=Path, default=Path("."), help="output directory")

    val = sub.add_parser("validate", help="report applicable solution paths")
    _add_param_flags(val)
    return parser


def _load_json(path: Path) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config document must be a JSON object")
    known = {"params", "init", "method", "evolve", "outputs", "spectrum"}
    unknown = set(data) - known
    if unknown:
        raise ValueError("unknown config keys: " + ", ".join(sorted(unknown)))
    return data


def _section(data: dict, key: str, allowed: set[str]) -> dict:
    section = data.get(key, {})
    if not isinstance(section, dict):
        raise ValueError(f"config section '{key}' must be an object")
    unknown = set(section) - allowed
    if unknown:
        raise ValueError(f"unknown keys in '{key}': " + ", ".join(sorted(unknown)))
    return dict(section)


def _parse_init(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("--init expects three comma-separated numbers x,y,z")
    return tuple(float(p) for p in parts)


def _resolve_config(args: argparse.Namespace) -> ScenarioConfig:
    data = _load_json(args.config) if args.config else {}

    params = _section(data, "params", {"g0t", "at", "gt", "tt", "n_thermal"})
    for flag, key in (
        (args.g0t, "g0t"),
        (args.at, "at"),
        (args.gt, "gt"),
        (args.tt, "tt"),
        (args.n_thermal, "n_thermal"),
    ):
        if flag is not None:
            params[key] = flag
    rp = ReducedParams(**{k: float(v) for k, v in params.items()})

    init = data.get("init", _GROUND)
    if getattr(args, "init", None) is not None:
        init = _parse_init(args.init)
    if not isinstance(init, (list, tuple)) or len(init) != 3:
        raise ValueError("init must be three numbers x,y,z")

    evolve = _section(data, "evolve", {"tau_max", "dt", "rk_substeps"})
    if getattr(args, "tau_max", None) is not None:
        evolve["tau_max"] = args.tau_max
    if getattr(args, "dt", None) is not None:
        evolve["dt"] = args.dt
    evolve.setdefault("tau_max", 20.0)
    evolve.setdefault("dt", 0.01)
    evolve_cfg = EvolveConfig(**evolve)

    method = data.get("method", "expm")
    if getattr(args, "method", None) is not None:
        method = args.method

    outputs = data.get("outputs", ["trajectory"])
    if getattr(args, "outputs", None) is not None:
        outputs = [part for part in args.outputs.split(",") if part]
    if not isinstance(outputs, (list, tuple)):
        raise ValueError("outputs must be a list")

    spectrum = _section(
        data, "spectrum", {"omega_max", "omega_step", "tail_eps", "n_max"}
    )
    return ScenarioConfig(
        params=rp,
        init=tuple(float(v) for v in init),
        method=str(method),
        evolve=evolve_cfg,
        outputs=tuple(str(k) for k in outputs),
        spectrum=SpectrumGrid(**spectrum),
    )


def _cmd_run(args: argparse.Namespace) -> int:
    if args.figure is not None:
        overriding = [
            name
            for name, value in (
                ("--config", args.config),
                ("--g0t", args.g0t),
                ("--at", args.at),
                ("--gt", args.gt),
                ("--tt", args.tt),
                ("--n-thermal", args.n_thermal),
                ("--init", args.init),
                ("--tau-max", args.tau_max),
                ("--dt", args.dt),
                ("--method", args.method),
                ("--outputs", args.outputs),
            )
            if value is not None
        ]
        if overriding:
            raise ValueError(
                "--figure presets are fixed by the captions; drop "
                + ", ".join(overriding)
            )
        written = run_preset(args.figure, args.out)
    else:
        written = run_scenario(_resolve_config(args), args.out)
    for path in written:
        print(path)
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    data = _load_json(args.config) if args.config else {}
    params = _section(data, "params", {"g0t", "at", "gt", "tt", "n_thermal"})
    for flag, key in (
        (args.g0t, "g0t"),
        (args.at, "at"),
        (args.gt, "gt"),
        (args.tt, "tt"),
        (args.n_thermal, "n_thermal"),
    ):
        if flag is not None:
            params[key] = flag
    rp = ReducedParams(**{k: float(v) for k, v in params.items()})
    for line in validate_report(rp):
        print(line)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_validate(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, TypeError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
