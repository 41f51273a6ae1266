"""Command line driver: spectra, transfer grids, storage sweeps, response scans.

Four subcommands, each reading an optional JSON config (schema-tagged,
unknown keys rejected) and writing one CSV atomically; scalar summaries go
to stdout as JSON.  Exit codes: 0 success, 2 invalid input, 3 a numerical
guard tripped.  Set POLARITON_EIT_WORKERS to parallelize row computation
of the grid-shaped subcommands; the default is serial and output bytes do
not depend on the worker count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import eit_dark, fockspace, optics, transfer
from .errors import (
    DegenerateDark,
    IndexOutOfRange,
    NoWindowFound,
    NotConverged,
    PolaritonError,
    ScheduleNotMonotone,
    SingularResponse,
    StabilityViolation,
    StepUnderflow,
)
from .hopfield import LightMediumParams, diagonalize

SCHEMA = "polariton-eit/v1"
WORKERS_ENV = "POLARITON_EIT_WORKERS"

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3


class ConfigError(Exception):
    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


def _emit_error(kind: str, message: str, field: str | None = None) -> None:
    payload: dict = {"error": {"type": kind, "message": message}}
    if field is not None:
        payload["error"]["field"] = field
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def _load_config(path: str | None, defaults: dict) -> dict:
    cfg = {k: (dict(v) if isinstance(v, dict) else v) for k, v in defaults.items()}
    if path is None:
        return cfg
    try:
        with open(path, "r", encoding="utf-8") as fh:
            user = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(user, dict):
        raise ConfigError("config root must be a JSON object")
    schema = user.pop("schema", None)
    if schema != SCHEMA:
        raise ConfigError(
            f"config schema must be {SCHEMA!r}, got {schema!r}", field="schema"
        )
    unknown = set(user) - set(defaults)
    if unknown:
        raise ConfigError(
            f"unknown config keys: {sorted(unknown)}", field=sorted(unknown)[0]
        )
    for key, value in user.items():
        if isinstance(cfg.get(key), dict):
            if not isinstance(value, dict):
                raise ConfigError(f"{key} must be an object", field=key)
            extra = set(value) - set(cfg[key])
            if extra:
                raise ConfigError(
                    f"unknown {key} keys: {sorted(extra)}", field=key
                )
            cfg[key].update(value)
        else:
            cfg[key] = value
    return cfg


def _require_number(cfg: dict, key: str, minimum: float | None = None) -> float:
    value = cfg[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}", field=key)
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{key} must be finite", field=key)
    if minimum is not None and value < minimum:
        raise ConfigError(f"{key} must be >= {minimum}, got {value}", field=key)
    return value


def _require_int(cfg: dict, key: str, minimum: int) -> int:
    value = cfg[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key} must be an integer, got {value!r}", field=key)
    if value < minimum:
        raise ConfigError(f"{key} must be >= {minimum}, got {value}", field=key)
    return value


def _require_number_list(cfg: dict, key: str) -> list[float]:
    value = cfg[key]
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{key} must be a nonempty list", field=key)
    out = []
    for item in value:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ConfigError(f"{key} must contain numbers, got {item!r}", field=key)
        out.append(float(item))
    return out


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_csv(path: str, header: list[str], rows) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        raise ConfigError(f"output directory does not exist: {directory}", field="out")
    tmp = f"{path}.tmp.{os.getpid()}"
    try:
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(x) for x in row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        count = int(raw)
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}")
    return max(1, count)


def _map_rows(fn, args_list: list) -> list:
    workers = _worker_count()
    if workers == 1 or len(args_list) < 2:
        return [fn(a) for a in args_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args_list))


# ---------------------------------------------------------------------------
# spectrum

_SPECTRUM_DEFAULTS = {
    "omega": 1.0,
    "omega0": 0.9,
    "coupling_values": [round(0.005 * k, 10) for k in range(21)],
}


def _spectrum_row(args: tuple) -> list[float]:
    omega, omega0, g = args
    params = LightMediumParams(omega=omega, omega0=omega0, coupling=g)
    basis = diagonalize(params)
    row = [g, basis.lower.frequency, basis.upper.frequency]
    for mode in basis.modes:
        row += [mode.u1, mode.v1, mode.u2, mode.v2, mode.x1, mode.y1, mode.x2, mode.y2]
    return row


def _cmd_spectrum(ns: argparse.Namespace) -> int:
    cfg = _load_config(ns.config, _SPECTRUM_DEFAULTS)
    omega = _require_number(cfg, "omega", minimum=1e-300)
    omega0 = _require_number(cfg, "omega0", minimum=1e-300)
    g_values = _require_number_list(cfg, "coupling_values")
    bound = 0.5 * math.sqrt(omega * omega0)
    for g in g_values:
        if g < 0 or g >= bound:
            raise ConfigError(
                f"coupling {g} outside the stable range [0, {bound})",
                field="coupling_values",
            )
    rows = _map_rows(_spectrum_row, [(omega, omega0, g) for g in g_values])
    header = ["G", "Omega1", "Omega2"]
    for tag in ("lower", "upper"):
        header += [f"{c}_{tag}" for c in ("u1", "v1", "u2", "v2", "x1", "y1", "x2", "y2")]
    _write_csv(ns.out, header, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# transfer

_TRANSFER_DEFAULTS = {
    "omega": 1.0,
    "ratios": [0.9, 0.95, 0.99],
    "coupling_fracs": [round(0.005 * k, 10) for k in range(21)],
    "mass": 1.0,
    "oracle_cutoff": 25,
}


def _transfer_row(args: tuple) -> list[float]:
    omega, ratio, frac, n, mass, oracle, cutoff = args
    params = LightMediumParams(omega=omega, omega0=ratio * omega, coupling=frac * omega)
    value = transfer.transmission_efficiency(n, params, mass)
    row = [ratio, frac * omega, value]
    if oracle:
        state, _ = fockspace.polariton_number_state(params, (cutoff, cutoff), n)
        bare = fockspace.number_basis_state(state.spec, (n, 0))
        reference = abs(state.overlap(bare)) ** 2
        row += [reference, abs(value - reference)]
    return row


def _cmd_transfer(ns: argparse.Namespace) -> int:
    cfg = _load_config(ns.config, _TRANSFER_DEFAULTS)
    omega = _require_number(cfg, "omega", minimum=1e-300)
    mass = _require_number(cfg, "mass", minimum=1e-300)
    cutoff = _require_int(cfg, "oracle_cutoff", 5)
    ratios = _require_number_list(cfg, "ratios")
    fracs = _require_number_list(cfg, "coupling_fracs")
    if ns.n < 0 or ns.n > transfer.DEFAULT_MAX_N:
        raise ConfigError(f"--n must be in 0..{transfer.DEFAULT_MAX_N}", field="n")
    for ratio in ratios:
        if ratio <= 0:
            raise ConfigError(f"ratio must be positive, got {ratio}", field="ratios")
        for frac in fracs:
            if frac < 0 or frac * omega >= 0.5 * math.sqrt(omega * ratio * omega):
                raise ConfigError(
                    f"coupling fraction {frac} unstable at ratio {ratio}",
                    field="coupling_fracs",
                )
    rows = _map_rows(
        _transfer_row,
        [
            (omega, ratio, frac, ns.n, mass, ns.oracle, cutoff)
            for ratio in ratios
            for frac in fracs
        ],
    )
    header = ["omega0_ratio", "G", f"F{ns.n}"]
    if ns.oracle:
        header += [f"F{ns.n}_oracle", "agreement"]
    _write_csv(ns.out, header, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# adiabatic

_ADIABATIC_DEFAULTS = {
    "n": 1,
    "g": 1.0,
    "atom_count": 1,
    "omega": 2000.0,
    "omega0_ratio": 0.9,
    "coupling_frac": 0.0,
    "delta_cap": 0.0,
    "duration": 200.0,
    "theta_start": 0.02,
    "cutoffs": [3, 3, 3, 3],
    "samples": 65,
}


def _cmd_adiabatic(ns: argparse.Namespace) -> int:
    cfg = _load_config(ns.config, _ADIABATIC_DEFAULTS)
    n = _require_int(cfg, "n", 0)
    g = _require_number(cfg, "g", minimum=1e-300)
    atom_count = _require_int(cfg, "atom_count", 1)
    omega = _require_number(cfg, "omega", minimum=1e-300)
    ratio = _require_number(cfg, "omega0_ratio", minimum=1e-300)
    frac = _require_number(cfg, "coupling_frac", minimum=0.0)
    delta_cap = _require_number(cfg, "delta_cap")
    duration = _require_number(cfg, "duration", minimum=1e-300)
    theta_start = _require_number(cfg, "theta_start", minimum=1e-6)
    samples = _require_int(cfg, "samples", 2)
    cutoffs = cfg["cutoffs"]
    if (
        not isinstance(cutoffs, list)
        or len(cutoffs) != 4
        or any(isinstance(c, bool) or not isinstance(c, int) or c < 2 for c in cutoffs)
    ):
        raise ConfigError("cutoffs must be four integers >= 2", field="cutoffs")
    if frac * omega >= 0.5 * math.sqrt(omega * ratio * omega):
        raise ConfigError(f"coupling fraction {frac} is unstable", field="coupling_frac")
    if theta_start >= 0.5 * math.pi:
        raise ConfigError("theta_start must be below pi/2", field="theta_start")
    if n > cutoffs[0]:
        raise ConfigError(f"n={n} does not fit cutoffs {cutoffs}", field="n")

    params = LightMediumParams(omega=omega, omega0=ratio * omega, coupling=frac * omega)
    basis = diagonalize(params)
    ctx = eit_dark.EitContext.from_basis(
        basis, g=g, xi=0.0, delta_cap=delta_cap, atom_count=atom_count
    )
    spec = fockspace.ModeSpec(tuple(cutoffs))
    initial = eit_dark.bare_photon_initial_state(params, spec, n)
    schedule = eit_dark.SweepSchedule(duration=duration, theta_start=theta_start)
    result = eit_dark.adiabatic_sweep(ctx, schedule, initial, n, samples=samples)

    rows = zip(
        result.times,
        result.theta,
        result.fidelity_dark,
        result.pop_e,
        result.pop_c1,
        result.pop_c2,
        result.pop_spinwave,
        result.norm,
    )
    _write_csv(
        ns.out,
        ["t", "theta", "fidelity_dark", "pop_e", "pop_c1", "pop_c2", "pop_C", "norm"],
        rows,
    )
    summary = {
        "fidelity": float(result.fidelity),
        "leakage": float(result.leakage),
        "S_n0_squared": float(result.s_n0_squared),
    }
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------------------
# chi

_CHI_DEFAULTS = {
    "omega": 1.0e6,
    "omega0_ratio": 0.9,
    "G_ratio": 0.0,
    "xi": 10.0,
    "Delta": 0.0,
    "gamma_A": 1.0,
    "gamma_C": 1.0e-4,
    "gamma_c2": 1.0e-6,
    "g_root_N": 100.0,
    "grid": {"min": -3.0, "max": 3.0, "points": 801},
}


def _cmd_chi(ns: argparse.Namespace) -> int:
    cfg = _load_config(ns.config, _CHI_DEFAULTS)
    if ns.panel is not None:
        ratio_frac = optics.PANEL_GRID[ns.panel]
        cfg["omega0_ratio"], cfg["G_ratio"] = ratio_frac
    omega = _require_number(cfg, "omega", minimum=1e-300)
    ratio = _require_number(cfg, "omega0_ratio", minimum=1e-300)
    frac = _require_number(cfg, "G_ratio", minimum=0.0)
    g_root_n = _require_number(cfg, "g_root_N", minimum=0.0)
    xi = _require_number(cfg, "xi", minimum=0.0)
    delta_cap = _require_number(cfg, "Delta")
    rates_raw = [
        _require_number(cfg, "gamma_A", minimum=0.0),
        _require_number(cfg, "gamma_C", minimum=0.0),
        _require_number(cfg, "gamma_c2", minimum=0.0),
    ]
    grid = cfg["grid"]
    delta_min = _require_number(grid, "min")
    delta_max = _require_number(grid, "max")
    points = _require_int(grid, "points", 5)
    if delta_max <= delta_min:
        raise ConfigError("grid.max must exceed grid.min", field="grid")
    if frac * omega >= 0.5 * math.sqrt(omega * ratio * omega):
        raise ConfigError(f"coupling fraction {frac} is unstable", field="G_ratio")

    params = LightMediumParams(omega=omega, omega0=ratio * omega, coupling=frac * omega)
    ctx = optics.ProbeContext.from_params(
        params,
        g_root_n=g_root_n,
        xi=xi,
        rates=optics.DecayRates(*rates_raw),
        delta_cap=delta_cap,
    )
    deltas = np.linspace(delta_min, delta_max, points)
    table = optics.chi_table(ctx, deltas)
    _write_csv(ns.out, ["delta", "chi1", "chi2"], table)

    metrics = optics.transparency_metrics(table)
    summary = {
        "center": metrics.center,
        "minimum": metrics.minimum,
        "left": metrics.left,
        "right": metrics.right,
        "width": metrics.width,
        "dispersion_slope": metrics.dispersion_slope,
    }
    print(json.dumps(summary, sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polariton-eit",
        description="Polariton spectra, transfer efficiencies, storage sweeps, "
        "and probe response of the coupled light-medium model.",
        epilog=f"Set {WORKERS_ENV} to parallelize grid rows (default serial).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="polariton branches over a coupling grid")
    sp.add_argument("--config", help="JSON config path")
    sp.add_argument("--out", required=True, help="output CSV path")
    sp.set_defaults(func=_cmd_spectrum)

    tr = sub.add_parser("transfer", help="number-state transmission over a grid")
    tr.add_argument("--config", help="JSON config path")
    tr.add_argument("--out", required=True, help="output CSV path")
    tr.add_argument("--n", type=int, default=1, help="excitation number (default 1)")
    tr.add_argument("--oracle", action="store_true", help="add dense-overlap reference")
    tr.set_defaults(func=_cmd_transfer)

    ad = sub.add_parser("adiabatic", help="storage sweep trajectory and fidelity")
    ad.add_argument("--config", help="JSON config path")
    ad.add_argument("--out", required=True, help="output CSV path")
    ad.set_defaults(func=_cmd_adiabatic)

    ch = sub.add_parser("chi", help="probe susceptibility scan")
    ch.add_argument("--config", help="JSON config path")
    ch.add_argument("--out", required=True, help="output CSV path")
    ch.add_argument("--panel", choices=list(optics.PANEL_NAMES), help="reference panel")
    ch.set_defaults(func=_cmd_chi)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except ConfigError as exc:
        _emit_error("config", str(exc), exc.field)
        return EXIT_INVALID
    except (StabilityViolation, IndexOutOfRange, DegenerateDark, ValueError) as exc:
        _emit_error("invalid_input", str(exc))
        return EXIT_INVALID
    except (
        StepUnderflow,
        NotConverged,
        SingularResponse,
        NoWindowFound,
        ScheduleNotMonotone,
    ) as exc:
        _emit_error("numerical", str(exc))
        return EXIT_NUMERICAL
    except PolaritonError as exc:
        _emit_error("internal", str(exc))
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
