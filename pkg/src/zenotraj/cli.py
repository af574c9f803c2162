"""Command-line front end: config parsing, scenario runs, CSV/JSON emission.

Six subcommands cover the library's scenarios::

    zenotraj filter         leakage filter functions on a frequency grid
    zenotraj dynamics-diss  post-selected amplitude-damping dynamics
    zenotraj dynamics-deph  post-selected dephasing dynamics
    zenotraj dicke          collective-emission populations
    zenotraj nonmarkov      trace-distance diagnostics and divisibility
    zenotraj perturbation   general second-order engine vs closed forms

Named presets (``--recipe fig2|fig3|fig4a|fig4b|fig4c``) bundle the
parameter choices behind the standard survey figures.  Output is a
deterministic CSV or JSON table: identical configuration, identical bytes.
Exit codes: 0 success, 2 configuration error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import __version__
from .core import QubitState, SpectralDensity
from .dephasing import (
    DephasingParams,
    dephasing_exponent,
    dephasing_factors,
    modified_dephasing,
)
from .dicke import (
    CollectiveRateMatrix,
    evolve_collective,
    excited_population_analytic,
    excited_population_numeric,
    sinc,
    superposed_initial_state,
)
from .dissipative import (
    decay_amplitude_auto,
    decay_factor,
    is_cp_divisible,
    survival_probability_diss,
    trace_distance_diss,
)
from .errors import ConfigError, NumericError, ZenoTrajError
from .filters import FilterSpec, decay_factor_overlap, filter_deph, filter_diss, filter_traditional_zeno
from .numerics import TimeGrid
from .perturbation import PhaseProfile, dissipative_coupling_model, general_filter

__all__ = ["RunConfig", "ResultTable", "parse_config", "run", "emit", "main"]

_SCENARIOS = ("filter", "dynamics-diss", "dynamics-deph", "dicke", "nonmarkov", "perturbation")
_RECIPES = ("fig2", "fig3", "fig4a", "fig4b", "fig4c")
_RECIPE_SCENARIO = {"fig2": "filter", "fig3": "dicke",
                    "fig4a": "nonmarkov", "fig4b": "nonmarkov", "fig4c": "nonmarkov"}

_RECIPE_OVERLAYS = {
    "fig2": {"spectral": "gaussian", "omega_q": 1.0, "t": 5.0,
             "omega_m": 1.5, "delta": 0.2,
             "omega_min": -5.0, "omega_max": 7.0, "omega_points": 1201},
    "fig3": {"N": 3, "sinc": 1.0 / 6.0, "gamma0": 0.01, "tmax": 5.0, "steps": 500},
    "fig4a": {"model": "diss", "gamma0": 1.0, "lam": 0.1, "omega_q": 50.0,
              "tmax": 60.0, "steps": 6000},
    "fig4b": {"model": "deph", "eta": 1.0 / 3.0, "s": 1.0, "omega_c": 1.0,
              "temperature": 0.0, "tmax": 4.0, "steps": 400},
    "fig4c": {"model": "deph", "eta": 1.0 / 3.0, "s": 4.0, "omega_c": 1.0,
              "temperature": 0.0, "tmax": 200.0, "steps": 1000},
}

# structural keys a recipe pins (they decide which curves the table holds)
_RECIPE_FIXED = {
    "fig2": {},
    "fig3": {"N": 3},
    "fig4a": {"model": "diss"},
    "fig4b": {"model": "deph", "s": 1.0},
    "fig4c": {"model": "deph", "s": 4.0},
}

# file/CLI key -> internal name ("lambda" is a Python keyword)
_KEYMAP = {"lambda": "lam"}

_COMMON_DEFAULTS = {"out": None, "format": "csv", "recipe": None}

_SCENARIO_DEFAULTS = {
    "filter": {
        "kind": "diss", "spectral": "gaussian", "omega_q": 1.0, "t": 5.0,
        "N": 1, "n": 0, "n_tilde": 1.0,
        "gamma0": 1.0, "lam": 0.5, "eta": 1.0 / 3.0, "s": 1.0, "omega_c": 1.0,
        "omega_m": 1.5, "delta": 0.2,
        "omega_min": -5.0, "omega_max": 7.0, "omega_points": 1201,
    },
    "dynamics-diss": {
        "spectral": "lorentzian", "gamma0": 1.0, "lam": 1.0, "omega_q": 1.0,
        "N": 1, "n": 0, "tmax": 10.0, "steps": 1000,
    },
    "dynamics-deph": {
        "eta": 1.0 / 3.0, "s": 1.0, "omega_c": 1.0, "temperature": 0.0,
        "N": 3, "n": 1, "tmax": 4.0, "steps": 400,
    },
    "dicke": {
        "N": 3, "n": 0, "sinc": None, "qd": None, "gamma0": 1.0,
        "tmax": 5.0, "steps": 500, "numeric": False,
    },
    "nonmarkov": {
        "model": "diss", "gamma0": 1.0, "lam": 0.1, "omega_q": 50.0,
        "eta": 1.0 / 3.0, "s": 1.0, "omega_c": 1.0, "temperature": 0.0,
        "tmax": 60.0, "steps": 6000,
    },
    "perturbation": {
        "gamma0": 4.0, "lam": 2.0, "omega_q": 1.0, "t": 0.5, "N": 3, "n": 1,
        "omega_min": -2.0, "omega_max": 4.0, "omega_points": 201,
    },
}

_DEFAULT_SINC = 1.0 / 6.0


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved, validated run description."""

    scenario: str
    params: dict
    out: str | None = None
    fmt: str = "csv"
    recipe: str | None = None


@dataclass(frozen=True)
class ResultTable:
    """Rectangular result columns plus the metadata that reproduces them."""

    columns: tuple
    values: np.ndarray  # shape (rows, len(columns)), real
    units_note: str
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2 or (vals.size and vals.shape[1] != len(self.columns)):
            raise ValueError("values must be rectangular with one column per name")
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "values", vals)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="zenotraj",
        description="Post-selected open-system dynamics over superposed paths.")
    parser.add_argument("--version", action="version", version=f"zenotraj {__version__}")
    sub = parser.add_subparsers(dest="scenario", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file with configuration keys")
        p.add_argument("--out", help="output file path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
        p.add_argument("--recipe", choices=_RECIPES, help="named preset sweep")

    def spectral(p, kinds=("lorentzian", "ohmic", "gaussian")):
        p.add_argument("--spectral", choices=kinds, help="spectral density family")
        p.add_argument("--gamma0", type=float, help="resonant decay rate scale")
        p.add_argument("--lambda", dest="lam", type=float, help="spectral width")
        p.add_argument("--omega-q", type=float, help="qubit transition frequency")
        p.add_argument("--eta", type=float, help="power-law coupling strength")
        p.add_argument("--s", type=float, help="power-law exponent")
        p.add_argument("--omega-c", type=float, help="power-law cutoff frequency")
        p.add_argument("--omega-m", type=float, help="bell-peak centre frequency")
        p.add_argument("--delta", type=float, help="bell-peak squared width")

    def paths(p):
        p.add_argument("--N", type=int, help="number of superposed paths")
        p.add_argument("--n", type=int, help="number of sign-flipped paths")

    p = sub.add_parser("filter", help="filter functions on a frequency grid")
    common(p); spectral(p); paths(p)
    p.add_argument("--kind", choices=("diss", "deph", "traditional"))
    p.add_argument("--t", type=float, help="evolution time")
    p.add_argument("--n-tilde", type=float, help="pulse count of the sequential protocol")
    p.add_argument("--omega-min", type=float)
    p.add_argument("--omega-max", type=float)
    p.add_argument("--omega-points", type=int)

    p = sub.add_parser("dynamics-diss", help="post-selected amplitude-damping dynamics")
    common(p); spectral(p, kinds=("lorentzian",)); paths(p)
    p.add_argument("--tmax", type=float)
    p.add_argument("--steps", type=int)

    p = sub.add_parser("dynamics-deph", help="post-selected dephasing dynamics")
    common(p); paths(p)
    p.add_argument("--eta", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--omega-c", type=float)
    p.add_argument("--temperature", type=float)
    p.add_argument("--tmax", type=float)
    p.add_argument("--steps", type=int)

    p = sub.add_parser("dicke", help="collective-emission populations")
    common(p); paths(p)
    p.add_argument("--sinc", type=float, help="collective coupling factor in (-0.2173, 1]")
    p.add_argument("--qd", type=float, help="wavenumber times spacing (sets the factor)")
    p.add_argument("--gamma0", type=float, help="single-emitter decay rate")
    p.add_argument("--tmax", type=float, help="duration in units of 1/gamma0")
    p.add_argument("--steps", type=int)
    p.add_argument("--numeric", action="store_true", default=None,
                   help="add a master-equation population column")

    p = sub.add_parser("nonmarkov", help="trace-distance and divisibility diagnostics")
    common(p); spectral(p, kinds=("lorentzian", "ohmic"))
    p.add_argument("--model", choices=("diss", "deph"))
    p.add_argument("--temperature", type=float)
    p.add_argument("--tmax", type=float)
    p.add_argument("--steps", type=int)

    p = sub.add_parser("perturbation", help="general engine vs closed-form filter")
    common(p); spectral(p, kinds=("lorentzian",)); paths(p)
    p.add_argument("--t", type=float)
    p.add_argument("--omega-min", type=float)
    p.add_argument("--omega-max", type=float)
    p.add_argument("--omega-points", type=int)

    return parser


def _load_config_file(path, scenario, allowed):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    out = {}
    for key, value in raw.items():
        name = _KEYMAP.get(key, key)
        if name == "scenario":
            if value != scenario:
                raise ConfigError(
                    f"config file scenario '{value}' does not match subcommand '{scenario}'")
            continue
        if name not in allowed:
            raise ConfigError(f"unknown configuration key: '{key}'")
        out[name] = value
    return out


def _validate(scenario, params, recipe):
    n_paths, n_shifts = params.get("N"), params.get("n")
    if n_paths is not None:
        if n_paths < 1:
            raise ConfigError("N must be a positive integer")
        if n_shifts is not None:
            if not 0 <= n_shifts <= n_paths:
                raise ConfigError("n must satisfy 0 <= n <= N")
            if 2 * n_shifts == n_paths:
                raise ConfigError(
                    f"null post-selection: with n = N/2 (n={n_shifts}, N={n_paths}) the "
                    "projected output port is dark and one obtains a null result")
    for key in ("gamma0", "lam", "omega_c", "t", "tmax", "delta"):
        if params.get(key) is not None and params[key] <= 0:
            raise ConfigError(f"{key} must be > 0")
    for key in ("eta", "temperature"):
        if params.get(key) is not None and params[key] < 0:
            raise ConfigError(f"{key} must be >= 0")
    if params.get("s") is not None and params["s"] <= 0:
        raise ConfigError("s must be > 0")
    if params.get("steps") is not None and params["steps"] < 1:
        raise ConfigError("steps must be >= 1")
    if params.get("omega_points") is not None and params["omega_points"] < 2:
        raise ConfigError("omega_points must be >= 2")
    if params.get("n_tilde") is not None and params["n_tilde"] < 1:
        raise ConfigError("n_tilde must be >= 1")
    if scenario == "dicke":
        if params.get("sinc") is not None and params.get("qd") is not None:
            raise ConfigError("give either --sinc or --qd, not both")
        if params.get("sinc") is not None and not -0.2172 < params["sinc"] <= 1.0:
            raise ConfigError("sinc must lie in the reachable range (-0.2173, 1]")


def parse_config(argv=None):
    """argv -> RunConfig with precedence command line > file > recipe > defaults.

    A recipe pre-sets the sweep that defines the named figure; its structural
    keys (which curves the table holds) may not be overridden, everything
    else may.
    """
    args = _build_parser().parse_args(argv)
    scenario = args.scenario
    defaults = dict(_SCENARIO_DEFAULTS[scenario])
    allowed = set(defaults) | set(_COMMON_DEFAULTS)
    file_vals = _load_config_file(args.config, scenario, allowed) if args.config else {}
    cli_vals = {k: v for k, v in vars(args).items()
                if k not in ("scenario", "config") and v is not None}
    recipe = cli_vals.get("recipe", file_vals.get("recipe"))
    resolved = {**_COMMON_DEFAULTS, **defaults}
    if recipe is not None:
        if _RECIPE_SCENARIO[recipe] != scenario:
            raise ConfigError(
                f"recipe '{recipe}' belongs to scenario '{_RECIPE_SCENARIO[recipe]}', "
                f"not '{scenario}'")
        resolved.update(_RECIPE_OVERLAYS[recipe])
    resolved.update(file_vals)
    resolved.update(cli_vals)
    if recipe is not None:
        for key, value in _RECIPE_FIXED[recipe].items():
            if resolved[key] != value:
                raise ConfigError(
                    f"recipe '{recipe}' fixes {key}={value}; drop the recipe to vary it")
    out, fmt, recipe = resolved.pop("out"), resolved.pop("format"), resolved.pop("recipe")
    _validate(scenario, resolved, recipe)
    return RunConfig(scenario=scenario, params=resolved, out=out, fmt=fmt, recipe=recipe)


def _spectral_density(params):
    kind = params.get("spectral", "lorentzian")
    if kind == "lorentzian":
        return SpectralDensity.lorentzian(
            gamma0=params["gamma0"], lam=params["lam"], omega_q=params["omega_q"])
    if kind == "ohmic":
        return SpectralDensity.ohmic(
            eta=params["eta"], s=params["s"], omega_c=params["omega_c"])
    return SpectralDensity.gaussian_peak(
        omega_m=params["omega_m"], delta=params["delta"])


def _fanout(jobs):
    """Run independent column jobs on a worker pool, merged in given order."""
    if len(jobs) <= 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=min(4, len(jobs))) as pool:
        return list(pool.map(lambda job: job(), jobs))


def _base_metadata(config, units_note):
    meta = {"tool": "zenotraj", "version": __version__,
            "scenario": config.scenario, "units": units_note}
    if config.recipe:
        meta["recipe"] = config.recipe
    for key in sorted(config.params):
        value = config.params[key]
        if value is not None:
            meta[key] = value
    return meta


def _run_filter(config):
    p = config.params
    units = "omega_q = 1 sets the clock"
    omega_q, t = p["omega_q"], p["t"]
    grid = np.linspace(p["omega_min"], p["omega_max"], p["omega_points"])
    j = _spectral_density(p)
    meta = _base_metadata(config, units)
    meta["omega_q_t"] = omega_q * t  # resolved time choice, not a silent default
    if config.recipe == "fig2":
        cols = ["omega", "j", "f_N1", "f_N4", "f_N8",
                "f_tilde_N1", "f_tilde_N4", "f_tilde_N8"]
        jobs = [lambda N=N: filter_diss(grid, t, N, 0, omega_q) for N in (1, 4, 8)]
        jobs += [lambda nt=nt: filter_traditional_zeno(grid, t, nt, omega_q)
                 for nt in (1.0, 4.0, 8.0)]
        series = _fanout(jobs)
        values = np.column_stack([grid, j(grid)] + series)
        return ResultTable(cols, values, units, meta)
    kind = p["kind"]
    if kind == "diss":
        vals = filter_diss(grid, t, p["N"], p["n"], omega_q)
    elif kind == "deph":
        vals = filter_deph(grid, t, p["N"], p["n"])
    else:
        vals = filter_traditional_zeno(grid, t, p["n_tilde"], omega_q)
    return ResultTable(["omega", "j", "f"],
                       np.column_stack([grid, j(grid), vals]), units, meta)


def _run_dynamics_diss(config):
    p = config.params
    units = "omega_q = 1 sets the clock"
    grid = TimeGrid(0.0, p["tmax"] / p["steps"], p["steps"] + 1)
    j = _spectral_density({**p, "spectral": "lorentzian"})
    g = decay_amplitude_auto(j, p["omega_q"], grid)
    n_paths, n_shifts = p["N"], p["n"]
    survival = survival_probability_diss(g.values, n_paths, n_shifts)
    gamma = decay_factor(survival)
    d_pair = trace_distance_diss(g.values, n_paths, n_shifts)
    meta = _base_metadata(config, units)
    meta["g_route"] = g.source
    values = np.column_stack([grid.times, np.abs(g.values), survival, gamma, d_pair])
    return ResultTable(["t", "g_abs", "p_survival", "gamma_decay", "d_pair"],
                       values, units, meta)


def _run_dynamics_deph(config):
    p = config.params
    units = "omega_c = 1 sets the clock"
    grid = TimeGrid(0.0, p["tmax"] / p["steps"], p["steps"] + 1)
    j = SpectralDensity.ohmic(eta=p["eta"], s=p["s"], omega_c=p["omega_c"])
    params = DephasingParams(j, temperature=p["temperature"])
    factors = dephasing_factors(params, grid, p["N"], p["n"]).validate()
    meta = _base_metadata(config, units)
    values = np.column_stack([grid.times, factors.gamma, factors.phi,
                              factors.phi_mod, np.abs(factors.phi_mod)])
    return ResultTable(["t", "gamma_exponent", "phi", "phi_modified", "d_pair"],
                       values, units, meta)


def _resolve_collective_factor(p):
    if p.get("qd") is not None:
        return float(sinc(p["qd"]))
    if p.get("sinc") is not None:
        return p["sinc"]
    return _DEFAULT_SINC


def _run_dicke(config):
    p = config.params
    units = "gamma0 sets the clock; omega_q = 1 units"
    gamma0, s = p["gamma0"], _resolve_collective_factor(p)
    times = np.linspace(0.0, p["tmax"] / gamma0, p["steps"] + 1)
    meta = _base_metadata(config, units)
    meta["collective_factor"] = s
    x_axis = gamma0 * times
    if config.recipe == "fig3":
        jobs = [lambda n=n: excited_population_analytic(times, 3, n, gamma0, s)
                for n in (0, 1)]
        pe0, pe1 = _fanout(jobs)
        values = np.column_stack([
            x_axis, pe0, pe1,
            np.exp(-gamma0 * (1.0 + s) * times),
            np.exp(-gamma0 * (1.0 - s) * times),
            np.exp(-gamma0 * times),
        ])
        cols = ["gamma0_t", "pe_N3_n0", "pe_N3_n1",
                "exp_gamma_plus", "exp_gamma_minus", "exp_gamma0"]
        return ResultTable(cols, values, units, meta)
    pe = excited_population_analytic(times, p["N"], p["n"], gamma0, s)
    cols = ["gamma0_t", "pe_analytic"]
    series = [x_axis, pe]
    if p.get("numeric"):
        rates = CollectiveRateMatrix.from_factor(p["N"], s, gamma0)
        grid = TimeGrid(0.0, times[1] - times[0], times.size)
        states = evolve_collective(rates, superposed_initial_state(p["N"]), grid)
        series.append(excited_population_numeric(states, p["N"], p["n"]))
        cols.append("pe_numeric")
    return ResultTable(cols, np.column_stack(series), units, meta)


def _run_nonmarkov(config):
    p = config.params
    pairs = [(1, 0), (3, 0), (3, 1)]
    if p["model"] == "diss":
        units = "omega_q = 1 sets the clock"
        grid = TimeGrid(0.0, p["tmax"] / p["steps"], p["steps"] + 1)
        j = SpectralDensity.lorentzian(
            gamma0=p["gamma0"], lam=p["lam"], omega_q=p["omega_q"])
        g = decay_amplitude_auto(j, p["omega_q"], grid)
        jobs = [lambda N=N, n=n: trace_distance_diss(g.values, N, n) for N, n in pairs]
        columns = _fanout(jobs)
        meta = _base_metadata(config, units)
        meta["g_route"] = g.source
        divisible, violation = is_cp_divisible(g)
        meta["cp_divisible"] = divisible
        if violation is not None:
            meta["first_violation_time"] = violation
        values = np.column_stack([grid.times] + columns)
        return ResultTable(["t", "d_N1_n0", "d_N3_n0", "d_N3_n1"], values, units, meta)

    units = "omega_c = 1 sets the clock"
    grid = TimeGrid(0.0, p["tmax"] / p["steps"], p["steps"] + 1)
    j = SpectralDensity.ohmic(eta=p["eta"], s=p["s"], omega_c=p["omega_c"])
    params = DephasingParams(j, temperature=p["temperature"])
    # phi is (N, n)-independent; all modified factors derive from one series
    base = dephasing_factors(params, grid, 1, 0)
    columns = [np.abs(modified_dephasing(base.phi, N, n)) for N, n in pairs]
    meta = _base_metadata(config, units)
    meta.update(_deph_landmarks(params, base, grid))
    values = np.column_stack([grid.times] + columns)
    return ResultTable(["t", "d_N1_n0", "d_N3_n0", "d_N3_n1"], values, units, meta)


def _deph_landmarks(params, base, grid):
    """Sudden-death root (if crossed) and trapping-plateau diagnostics."""
    meta = {}
    c = (3 - 1) - (4.0 * 1 / 3) * (3 - 1)  # (N, n) = (3, 1)
    crossing = np.sqrt(base.phi) + c
    sign_change = np.nonzero(np.diff(np.sign(crossing)) != 0)[0]
    if sign_change.size:
        k = sign_change[0]
        root = brentq(
            lambda tt: np.sqrt(np.exp(-dephasing_exponent(params, tt))) + c,
            grid.times[k], grid.times[k + 1], xtol=1e-12, rtol=8.9e-16)
        meta["sudden_death_time"] = float(root)
    tail = slice(-max(2, grid.count // 10), None)
    phi_mod_tail = modified_dephasing(base.phi[tail], 3, 0)
    meta["plateau_phi"] = float(base.phi[-1])
    meta["plateau_phi_mod_N3_n0"] = float(phi_mod_tail[-1])
    meta["plateau_variation"] = float(np.ptp(phi_mod_tail))
    return meta


def _run_perturbation(config):
    p = config.params
    units = "omega_q = 1 sets the clock"
    j = SpectralDensity.lorentzian(
        gamma0=p["gamma0"], lam=p["lam"], omega_q=p["omega_q"])
    model = dissipative_coupling_model(j, omega_q=p["omega_q"])
    profile = PhaseProfile.binary(p["N"], p["n"])
    grid = np.linspace(p["omega_min"], p["omega_max"], p["omega_points"])
    t = p["t"]
    general = general_filter(model, QubitState.excited(), grid, t, profile)
    closed = filter_diss(grid, t, p["N"], p["n"], p["omega_q"])
    meta = _base_metadata(config, units)
    spec = FilterSpec("diss_superposed", t=t, omega_q=p["omega_q"],
                      n_paths=p["N"], n_shifts=p["n"])
    meta["decay_factor_overlap"] = decay_factor_overlap(j, spec)
    nonzero = np.abs(closed) > 1e-300
    meta["max_rel_deviation"] = float(np.max(
        np.abs(general[nonzero] - closed[nonzero]) / np.abs(closed[nonzero])))
    values = np.column_stack([grid, general, closed])
    return ResultTable(["omega", "f_general", "f_closed_form"], values, units, meta)


_RUNNERS = {
    "filter": _run_filter,
    "dynamics-diss": _run_dynamics_diss,
    "dynamics-deph": _run_dynamics_deph,
    "dicke": _run_dicke,
    "nonmarkov": _run_nonmarkov,
    "perturbation": _run_perturbation,
}


def run(config):
    """Execute the scenario; deterministic output for identical config."""
    try:
        return _RUNNERS[config.scenario](config)
    except ZenoTrajError as exc:
        exc.args = (f"[{config.scenario}] {exc}",) + exc.args[1:]
        raise


def _format_metadata_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def emit(table, fmt="csv", path=None):
    """Serialize the table; identical tables give identical bytes."""
    if fmt == "csv":
        lines = [f"# {key}={_format_metadata_value(table.metadata[key])}"
                 for key in sorted(table.metadata)]
        lines.append(",".join(table.columns))
        for row in table.values:
            lines.append(",".join(f"{v:.17g}" for v in row))
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        payload = {
            "metadata": table.metadata,
            "columns": list(table.columns),
            "rows": [list(map(float, row)) for row in table.values],
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        raise ConfigError(f"unknown output format: '{fmt}'")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


def main(argv=None):
    try:
        config = parse_config(argv)
    except ConfigError as exc:
        print(f"zenotraj: configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        table = run(config)
        text = emit(table, config.fmt, config.out)
    except ConfigError as exc:
        print(f"zenotraj: configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"zenotraj: numeric failure: {exc}", file=sys.stderr)
        return 3
    if config.out is None:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
