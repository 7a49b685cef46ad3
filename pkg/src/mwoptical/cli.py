"""Command-line front end: flat key=value config ingestion, CSV emission for
the depletion curve and scenario time series, parameter sweeps with a grid
argmax, and plain-text summaries.

Both microwave channels drive the same metastable reservoir and emit on the
same 2p-1s line to within fine-structure corrections (~1e-5 relative), so the
pipeline evaluates one shared optical transition and the channel choice only
selects the microwave-frequency metadata; conversion figures are identical
across channels by construction.
"""

import argparse
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from .coupling import MicrowaveDrive, damping_decrement, detuning_lineshape
from .ensemble import (
    BetaPoint,
    EnsembleConfig,
    beta_of,
    depletion_time,
    f_beta,
    f_beta_approx_large,
    f_beta_approx_small,
    sigma_max,
    total_intensity,
)
from .hydrogen import (
    FINE_STRUCTURE_MHZ,
    LAMB_SHIFT_MHZ,
    OPTICAL_ANCHOR_CM,
    RATIO_UNITY,
    dipole_matrix_element,
    hydrogenic_dipole_ratio,
    make_transition_pair,
    mode,
)
from .units import (
    CGS,
    CM_PER_NM,
    field_from_flux,
    flux_si_to_cgs,
    freq_mhz_to_angular,
)

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "SweepSpec",
    "parse_config",
    "fig1_rows",
    "run_scenario",
    "run_sweep",
    "format_csv",
    "main",
    "run",
]


class ConfigError(ValueError):
    """Configuration parse or validation failure (CLI exit code 2)."""


# channel -> (microwave resonance in MHz, (upper, lower) microwave pair labels)
CHANNELS = {
    "fine_structure": (FINE_STRUCTURE_MHZ, ("2p3/2", "2s1/2")),
    "lamb_shift": (LAMB_SHIFT_MHZ, ("2s1/2", "2p1/2")),
}

RATIO_MODES = ("unity", "hydrogenic", "custom")

SWEEP_PARAMETERS = {
    "flux_w_cm2": "W/cm^2",
    "rho22_initial": "-",
    "vessel_length_cm": "cm",
    "gas_density_g_cm3": "g/cm^3",
    "detuning_mhz": "MHz",
}

OBJECTIVES = {
    "eta_max_peak": "-",
    "pulse_energy": "erg",
    "tau": "s",
}

NO_DEPLETION = "no_depletion"


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario parameters; every field except ``channel`` has a default."""

    channel: str
    flux_w_cm2: float = 1.0
    detuning_mhz: float = 0.0
    vessel_length_cm: float = 10.0
    vessel_area_cm2: float = 1.0
    gas_density_g_cm3: float = 0.9e-4
    rho22_initial: float = 1.0e-4
    ratio_mode: str = "unity"
    ratio_value: float | None = None
    time_start_s: float = 0.0
    time_stop_s: float = 1.0e-6
    time_steps: int = 101
    output: str | None = None

    def __post_init__(self):
        if self.channel not in CHANNELS:
            raise ConfigError(
                f"channel: must be one of {', '.join(CHANNELS)}; got {self.channel!r}")
        if self.flux_w_cm2 < 0:
            raise ConfigError(f"flux_w_cm2: must be nonnegative, got {self.flux_w_cm2}")
        for name in ("vessel_length_cm", "vessel_area_cm2", "gas_density_g_cm3"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name}: must be positive, got {getattr(self, name)}")
        if not 0.0 <= self.rho22_initial <= 1.0:
            raise ConfigError(f"rho22_initial: must lie in [0, 1], got {self.rho22_initial}")
        if self.ratio_mode not in RATIO_MODES:
            raise ConfigError(
                f"ratio_mode: must be one of {', '.join(RATIO_MODES)}; got {self.ratio_mode!r}")
        if self.ratio_mode == "custom":
            if self.ratio_value is None:
                raise ConfigError("ratio_value: required when ratio_mode = custom")
            if self.ratio_value < 0:
                raise ConfigError(f"ratio_value: must be nonnegative, got {self.ratio_value}")
        elif self.ratio_value is not None:
            raise ConfigError("ratio_value: only valid when ratio_mode = custom")
        if self.time_start_s < 0:
            raise ConfigError(f"time_start_s: must be nonnegative, got {self.time_start_s}")
        if not self.time_stop_s > self.time_start_s:
            raise ConfigError(
                f"time grid must be monotone: time_stop_s={self.time_stop_s} must exceed "
                f"time_start_s={self.time_start_s}")
        if self.time_steps < 2:
            raise ConfigError(f"time_steps: must be at least 2, got {self.time_steps}")
        if self.drive_frequency_mhz <= 0:
            raise ConfigError(
                f"detuning_mhz: drive frequency {self.drive_frequency_mhz} MHz must be positive")

    @property
    def microwave_resonance_mhz(self) -> float:
        return CHANNELS[self.channel][0]

    @property
    def drive_frequency_mhz(self) -> float:
        return self.microwave_resonance_mhz + self.detuning_mhz

    @property
    def ratio(self) -> float:
        """Squared dipole ratio selected by ratio_mode."""
        if self.ratio_mode == "unity":
            return RATIO_UNITY
        if self.ratio_mode == "hydrogenic":
            return hydrogenic_dipole_ratio()
        return self.ratio_value


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional grid sweep over a scenario parameter."""

    parameter: str
    minimum: float
    maximum: float
    steps: int
    log: bool = False
    objective: str = "eta_max_peak"

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ConfigError(
                f"sweep parameter {self.parameter!r} unknown; "
                f"valid: {', '.join(SWEEP_PARAMETERS)}")
        if not self.minimum < self.maximum:
            raise ConfigError(
                f"sweep range: min {self.minimum} must be below max {self.maximum}")
        if self.steps < 2:
            raise ConfigError(f"sweep steps: must be at least 2, got {self.steps}")
        if self.log and self.minimum <= 0:
            raise ConfigError("log spacing requires a positive minimum")
        if self.objective not in OBJECTIVES:
            raise ConfigError(
                f"objective {self.objective!r} unknown; valid: {', '.join(OBJECTIVES)}")

    def grid(self) -> np.ndarray:
        if self.log:
            return np.logspace(math.log10(self.minimum), math.log10(self.maximum), self.steps)
        return np.linspace(self.minimum, self.maximum, self.steps)


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------

def _parse_float(value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"not a number: {value!r}") from None


def _parse_int(value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"not an integer: {value!r}") from None


_CONFIG_PARSERS = {
    "channel": str,
    "flux_w_cm2": _parse_float,
    "detuning_mhz": _parse_float,
    "vessel_length_cm": _parse_float,
    "vessel_area_cm2": _parse_float,
    "gas_density_g_cm3": _parse_float,
    "rho22_initial": _parse_float,
    "ratio_mode": str,
    "ratio_value": _parse_float,
    "time_start_s": _parse_float,
    "time_stop_s": _parse_float,
    "time_steps": _parse_int,
    "output": str,
}


def parse_config(text: str) -> ScenarioConfig:
    """Parse a flat ``key = value`` document ('#' starts a comment).

    Unknown keys are rejected by name; only ``channel`` is required.
    """
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = (value, lineno)

    unknown = sorted(k for k in entries if k not in _CONFIG_PARSERS)
    if unknown:
        raise ConfigError("unknown configuration keys: " + ", ".join(unknown))
    if "channel" not in entries:
        raise ConfigError("missing required key: channel")

    kwargs = {}
    for key, (value, lineno) in entries.items():
        try:
            kwargs[key] = _CONFIG_PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {key}: {exc}") from None
    return ScenarioConfig(**kwargs)


# ---------------------------------------------------------------------------
# computations
# ---------------------------------------------------------------------------

def _scenario_physics(cfg: ScenarioConfig):
    """Shared setup: optical line, drive, detuning decrement, ensemble config."""
    optical = make_transition_pair(mode("2p3/2"), mode("1s1/2"))
    drive = MicrowaveDrive(
        e0=field_from_flux(flux_si_to_cgs(cfg.flux_w_cm2)),
        omega=freq_mhz_to_angular(cfg.drive_frequency_mhz),
    )
    decrement = detuning_lineshape(
        2.0 * math.pi * 1.0e6 * cfg.detuning_mhz, optical.gamma_nk)
    ens = EnsembleConfig(
        length=cfg.vessel_length_cm,
        area=cfg.vessel_area_cm2,
        gas_density=cfg.gas_density_g_cm3,
        rho22_0=cfg.rho22_initial,
        ratio=cfg.ratio,
        wavelength_31=OPTICAL_ANCHOR_CM,
    )
    return optical, drive, decrement, ens


def _eta(ens: EnsembleConfig, drive: MicrowaveDrive, area: float,
         decrement: float, t: float) -> float:
    """Conversion efficiency I_total/(area*S_mw); zero by convention at zero drive."""
    s_mw = drive.s_mw
    if s_mw == 0:
        return 0.0
    return total_intensity(ens, drive, decrement, t) / (area * s_mw)


def fig1_rows(beta_max: float, steps: int):
    """Depletion-curve table: beta, exact f, and both approximations."""
    if beta_max <= 0:
        raise ConfigError(f"beta-max: must be positive, got {beta_max}")
    if steps < 2:
        raise ConfigError(f"steps: must be at least 2, got {steps}")
    header = ["beta[-]", "f_exact[-]", "f_small_approx[-]", "f_large_approx[-]"]
    rows = []
    for b in np.linspace(0.0, beta_max, steps):
        point = BetaPoint(float(b), f_beta(float(b)))   # revalidates 0 < f <= 1/3
        rows.append((point.beta, point.f_value,
                     f_beta_approx_small(point.beta), f_beta_approx_large(point.beta)))
    return header, rows


def run_scenario(cfg: ScenarioConfig):
    """Time series plus summary for one scenario.

    Returns (header, rows, summary) where rows are per-time tuples and summary
    is an ordered mapping of labeled scalars.  Output is deterministic: the
    same config yields byte-identical CSV.
    """
    optical, drive, decrement, ens = _scenario_physics(cfg)
    s_mw = drive.s_mw

    header = ["t[s]", "f_mw[MHz]", "beta[-]", "f_beta[-]", "I_total[erg/s]", "eta[-]"]
    rows = []
    for t in np.linspace(cfg.time_start_s, cfg.time_stop_s, cfg.time_steps):
        t = float(t)
        beta = beta_of(drive, ens.ratio, ens.wavelength_31, decrement, t)
        intensity = total_intensity(ens, drive, decrement, t)
        eta = intensity / (cfg.vessel_area_cm2 * s_mw) if s_mw > 0 else 0.0
        rows.append((t, cfg.drive_frequency_mhz, beta, f_beta(beta), intensity, eta))

    tau = depletion_time(drive, ens.ratio, ens.wavelength_31, decrement)
    summary = {
        "channel": cfg.channel,
        "microwave_resonance_mhz": cfg.microwave_resonance_mhz,
        "microwave_drive_mhz": cfg.drive_frequency_mhz,
        "detuning_mhz": cfg.detuning_mhz,
        "flux_w_cm2": cfg.flux_w_cm2,
        "field_e0_statv_cm": drive.e0,
        "decrement": decrement,
        "ratio": ens.ratio,
        "rho22_initial": ens.rho22_0,
        "n_atoms": ens.n_atoms,
        "n31": ens.n31,
        "gamma31_per_s": optical.gamma_nk,
        "eta_peak": _eta(ens, drive, cfg.vessel_area_cm2, decrement, 0.0),
        "tau_s": tau,
        "sigma_max_cm2": sigma_max(ens, 0.0),
    }
    return header, rows, summary


def _objective_value(cfg: ScenarioConfig, objective: str):
    optical, drive, decrement, ens = _scenario_physics(cfg)
    if objective == "eta_max_peak":
        return _eta(ens, drive, cfg.vessel_area_cm2, decrement, 0.0)
    if objective == "pulse_energy":
        times = np.linspace(cfg.time_start_s, cfg.time_stop_s, cfg.time_steps)
        intensities = [total_intensity(ens, drive, decrement, float(t)) for t in times]
        return float(np.trapezoid(intensities, times))
    # tau
    return depletion_time(drive, ens.ratio, ens.wavelength_31, decrement)


def run_sweep(cfg: ScenarioConfig, spec: SweepSpec):
    """Grid sweep of one parameter; returns (header, rows, argmax record).

    Objectives are cheap closed forms, so the maximizer is an exhaustive grid
    scan; 'no depletion' points are excluded from the argmax.
    """
    header = [
        f"{spec.parameter}[{SWEEP_PARAMETERS[spec.parameter]}]",
        f"{spec.objective}[{OBJECTIVES[spec.objective]}]",
    ]
    rows = []
    best = None
    for value in spec.grid():
        value = float(value)
        sub = replace(cfg, **{spec.parameter: value})
        obj = _objective_value(sub, spec.objective)
        rows.append((value, obj))
        if obj is not None and (best is None or obj > best[1]):
            best = (value, obj)

    record = {"parameter": spec.parameter, "objective": spec.objective}
    if best is None:
        record["argmax"] = NO_DEPLETION
        record["objective_max"] = NO_DEPLETION
    else:
        record["argmax"] = best[0]
        record["objective_max"] = best[1]
    return header, rows, record


# ---------------------------------------------------------------------------
# formatting and I/O
# ---------------------------------------------------------------------------

def _format_value(value) -> str:
    """Scientific notation with 9 significant digits for floats; markers/text as-is."""
    if value is None:
        return NO_DEPLETION
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return f"{value:.8e}"


def format_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def format_summary(record) -> str:
    return "".join(f"{key} = {_format_value(value)}\n" for key, value in record.items())


def _write_text(text: str, path: str | None, default_stream):
    if path is None:
        default_stream.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _read_config_file(path: str) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return parse_config(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_constants(args) -> None:
    record = {
        "hbar_erg_s": CGS.hbar,
        "c_cm_s": CGS.c,
        "e_statC": CGS.e,
        "a0_cm": CGS.a0,
        "mu_H_g": CGS.mu_H,
        "fine_structure_constant": CGS.fine_structure,
    }
    sys.stdout.write(format_summary(record))


def _cmd_transition(args) -> None:
    resonance_mhz, (upper, lower) = CHANNELS[args.channel]
    microwave = make_transition_pair(mode(upper), mode(lower))
    optical = make_transition_pair(mode("2p3/2"), mode("1s1/2"))
    e_a0 = CGS.e * CGS.a0
    record = {
        "channel": args.channel,
        "microwave_upper": microwave.upper.label,
        "microwave_lower": microwave.lower.label,
        "microwave_resonance_mhz": resonance_mhz,
        "optical_wavelength_nm": OPTICAL_ANCHOR_CM / CM_PER_NM,
        "dipole_mw_z_e_a0": dipole_matrix_element(microwave.upper, microwave.lower) / e_a0,
        "dipole_optical_z_e_a0": dipole_matrix_element(optical.upper, optical.lower) / e_a0,
        "dipole_ratio_hydrogenic": hydrogenic_dipole_ratio(),
        "gamma31_per_s": optical.gamma_nk,
        "lifetime31_s": 1.0 / optical.gamma_nk,
        "lifetime_metastable_s": mode("2s1/2").nominal_lifetime,
        "decrement_at_resonance": damping_decrement(
            microwave.omega_nk, microwave.omega_nk, optical.gamma_nk),
    }
    sys.stdout.write(format_summary(record))


def _cmd_fig1(args) -> None:
    header, rows = fig1_rows(args.beta_max, args.steps)
    _write_text(format_csv(header, rows), args.out, sys.stdout)


def _cmd_scenario(args) -> None:
    cfg = _read_config_file(args.config)
    header, rows, summary = run_scenario(cfg)
    _write_text(format_csv(header, rows), args.out if args.out else cfg.output, sys.stdout)
    _write_text(format_summary(summary), args.summary, sys.stderr)


def _cmd_sweep(args) -> None:
    cfg = _read_config_file(args.config)
    spec = SweepSpec(
        parameter=args.param,
        minimum=args.min,
        maximum=args.max,
        steps=args.steps,
        log=args.log,
        objective=args.objective,
    )
    header, rows, record = run_sweep(cfg, spec)
    _write_text(format_csv(header, rows), args.out, sys.stdout)
    _write_text(format_summary(record), args.summary, sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwoptical",
        description="Microwave-to-optical conversion estimates for microwave-driven "
                    "metastable hydrogen (CSV tables, scenario summaries, sweeps).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="print the Gaussian-CGS constants in use")
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("transition", help="print catalog data for a microwave channel")
    p.add_argument("channel", choices=sorted(CHANNELS))
    p.set_defaults(func=_cmd_transition)

    p = sub.add_parser("fig1", help="CSV table of the depletion integral vs beta")
    p.add_argument("--beta-max", type=float, required=True, dest="beta_max")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.set_defaults(func=_cmd_fig1)

    p = sub.add_parser("scenario", help="time series + summary for a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="CSV output path (default: config 'output' or stdout)")
    p.add_argument("--summary", help="summary output path (default: stderr)")
    p.set_defaults(func=_cmd_scenario)

    p = sub.add_parser("sweep", help="grid sweep of one parameter with argmax record")
    p.add_argument("--config", required=True)
    p.add_argument("--param", required=True, choices=sorted(SWEEP_PARAMETERS))
    p.add_argument("--min", type=float, required=True)
    p.add_argument("--max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--log", action="store_true", help="logarithmic grid spacing")
    p.add_argument("--objective", required=True, choices=sorted(OBJECTIVES))
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--summary", help="argmax record path (default: stderr)")
    p.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def run() -> None:
    raise SystemExit(main())
