# -*- coding: utf-8 -*-

"""
Command-line front end: one subcommand per experiment, parameter sweeps
over a worker pool, CSV trajectories, a JSON summary per output directory,
and the four figure bundles with tolerance-based golden-file checks.

Exit status is 0 on success, 2 for configuration errors (nothing is
written), 3 when a solver fails and 1 when a golden check finds
differences.
"""

import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import click
import numpy as np
from joblib import Parallel, delayed

from pymathics.flavor import astro
from pymathics.flavor.core import (
    DEFAULT_DT,
    ParameterError,
    SolverError,
    TimeGrid,
    Trajectory,
    amplitude_after,
    first_zero_crossing,
    fit_log_scaling,
)
from pymathics.flavor.meanfield import (
    DEFAULT_MEANFIELD_HORIZON,
    beam_vs_isotropic_report,
    run_single_mode,
)
from pymathics.flavor.quantum_pair import (
    QUANTUM_DT,
    LadderPropagator,
    build_ladder,
    evolve_ladder,
)
from pymathics.flavor.seeded_classical import (
    DEFAULT_SEEDED_HORIZON,
    BeamPair,
    closed_form_crossing,
    run_seeded,
)
from pymathics.flavor.stability import analyze_lambda, growth_rate_empirical
from pymathics.flavor.version import __version__

# Don't consider this for user documentation
no_doc = True

logger = logging.getLogger(__name__)

EXIT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3

GOLDEN_TOLERANCE = 1e-9
FIGURES = ("fig1", "fig2", "fig3", "fig4")

# Parameter schemas: name -> (type, default).
SCHEMAS: Dict[str, Dict[str, Tuple[type, Any]]] = {
    "seeded": {
        "seed": (float, 1e-3),
        "seed_b": (float, None),
        "n_a": (float, 1.0),
        "n_b": (float, 1.0),
    },
    "quantum": {
        "n": (int, 512),
        "lam": (float, 0.0),
        "method": (str, "spectral"),
    },
    "meanfield": {
        "n": (float, 512.0),
        "seed": (float, 1.0),
        "lam": (float, 0.0),
    },
    "isotropic-compare": {
        "n": (float, 512.0),
        "m": (int, 64),
        "seed": (float, 1.0),
        "lam": (float, 0.0),
        "kernel_strength": (float, 1.0),
        "seed_b": (bool, True),
    },
    "stability": {
        "lam": (float, 0.0),
        "seed": (float, 1.0),
        "n": (float, 1e12),
    },
    "estimate": {
        "luminosity": (float, astro.GW150914_SCENARIO.luminosity_erg_per_s),
        "frequency": (float, astro.GW150914_SCENARIO.frequency_hz),
        "fill": (str, "diameter"),
        "density": (float, None),
    },
}

# (dt, horizon) used when neither flags nor the config file set them.
GRID_DEFAULTS = {
    "seeded": (DEFAULT_DT, DEFAULT_SEEDED_HORIZON),
    "quantum": (QUANTUM_DT, 20.0),
    "meanfield": (DEFAULT_DT, DEFAULT_MEANFIELD_HORIZON),
    "isotropic-compare": (1e-2, 400.0),
    "stability": (1e-2, 40.0),
    "estimate": (None, None),
}


class ConfigError(ParameterError):
    """The run configuration does not match the experiment's schema."""


def _coerce(name: str, kind: type, raw: Any) -> Any:
    if raw is None or (isinstance(raw, str) and raw.lower() == "none"):
        return None
    try:
        if kind is bool:
            if isinstance(raw, str):
                lowered = raw.lower()
                if lowered not in ("true", "false", "1", "0", "yes", "no"):
                    raise ValueError(raw)
                return lowered in ("true", "1", "yes")
            return bool(raw)
        if kind is int:
            value = float(raw)
            if value != int(value):
                raise ValueError(raw)
            return int(value)
        return kind(raw)
    except (TypeError, ValueError, OverflowError):
        raise ConfigError(f"parameter {name!r} expects {kind.__name__}, got {raw!r}")


@dataclass
class RunConfig:
    experiment: str
    parameters: Dict[str, Any]
    output_path: Path
    dt: Optional[float] = None
    horizon: Optional[float] = None
    sweep: Optional[Tuple[str, List[Any]]] = None
    workers: int = 1

    @classmethod
    def build(
        cls,
        experiment: str,
        output_path,
        config_file: Optional[str] = None,
        params: Tuple[str, ...] = (),
        dt: Optional[float] = None,
        horizon: Optional[float] = None,
        sweep: Optional[str] = None,
        workers: Optional[int] = None,
        extra: Optional[Dict[str, Any]] = None,
    ) -> "RunConfig":
        """
        Schema defaults, then the JSON config file, then ``extra`` (for
        example a scenario file), then ``-p`` flags and grid flags.
        """
        if experiment not in SCHEMAS:
            raise ConfigError(f"unknown experiment {experiment!r}")
        schema = SCHEMAS[experiment]
        values = {name: default for name, (_kind, default) in schema.items()}
        grid_dt, grid_horizon = GRID_DEFAULTS[experiment]
        file_workers = None

        layers = []
        if config_file is not None:
            try:
                data = json.loads(Path(config_file).read_text())
            except (OSError, ValueError) as e:
                raise ConfigError(f"cannot read config file {config_file}: {e}")
            if not isinstance(data, dict):
                raise ConfigError("the config file must hold a JSON object")
            grid_dt = data.pop("dt", grid_dt)
            grid_horizon = data.pop("horizon", grid_horizon)
            file_workers = data.pop("workers", None)
            if sweep is None and "sweep" in data:
                sweep = data.pop("sweep")
            data.pop("sweep", None)
            layers.append(data)
        if extra:
            layers.append(extra)
        flag_values = {}
        for item in params:
            name, sep, raw = item.partition("=")
            if not sep:
                raise ConfigError(f"parameter {item!r} is not of the form name=value")
            flag_values[name.strip()] = raw.strip()
        layers.append(flag_values)

        for layer in layers:
            for name, raw in layer.items():
                if name not in schema:
                    raise ConfigError(
                        f"unknown parameter {name!r} for {experiment}; "
                        f"known: {', '.join(sorted(schema))}"
                    )
                values[name] = _coerce(name, schema[name][0], raw)

        sweep_axis = None
        if sweep is not None:
            sweep_axis = cls._parse_sweep(schema, sweep)

        config = cls(
            experiment=experiment,
            parameters=values,
            output_path=Path(output_path),
            dt=dt if dt is not None else grid_dt,
            horizon=horizon if horizon is not None else grid_horizon,
            sweep=sweep_axis,
            workers=workers if workers is not None else (file_workers or 1),
        )
        config.validate()
        return config

    @staticmethod
    def _parse_sweep(schema, sweep) -> Tuple[str, List[Any]]:
        if isinstance(sweep, dict):
            if len(sweep) != 1:
                raise ConfigError("a sweep names exactly one parameter")
            name, raw_values = next(iter(sweep.items()))
        else:
            name, sep, joined = str(sweep).partition("=")
            if not sep:
                raise ConfigError(f"sweep {sweep!r} is not of the form name=v1,v2,...")
            raw_values = [v for v in joined.split(",") if v.strip()]
        name = name.strip()
        if name not in schema:
            raise ConfigError(f"cannot sweep unknown parameter {name!r}")
        kind = schema[name][0]
        if kind not in (int, float):
            raise ConfigError(f"sweep parameter {name!r} is not numeric")
        if not raw_values:
            raise ConfigError(f"sweep over {name!r} has no values")
        return name, [_coerce(name, kind, str(v).strip()) for v in raw_values]

    def validate(self):
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.experiment != "estimate":
            try:
                TimeGrid.up_to(float(self.horizon), float(self.dt))
            except ParameterError as e:
                raise ConfigError(f"invalid time grid: {e}")
        params = self.parameters
        if self.experiment == "quantum" and params["method"] not in ("spectral", "stepping", "dense"):
            raise ConfigError(f"unknown method {params['method']!r}")
        if self.experiment == "estimate" and params["fill"] not in astro.FILL_CONVENTIONS:
            raise ConfigError(f"fill must be one of {sorted(astro.FILL_CONVENTIONS)}")

    def points(self) -> List[Tuple[str, Dict[str, Any]]]:
        """(subdirectory, parameters) for every run; one unnamed run without a sweep."""
        if self.sweep is None:
            return [("", dict(self.parameters))]
        name, values = self.sweep
        return [(f"{name}={value:g}", {**self.parameters, name: value}) for value in values]

    def echo(self) -> dict:
        echo = {
            "experiment": self.experiment,
            "parameters": dict(self.parameters),
            "dt": self.dt,
            "horizon": self.horizon,
        }
        if self.sweep is not None:
            echo["sweep"] = {self.sweep[0]: list(self.sweep[1])}
        return echo


def write_csv(path: Path, traj: Trajectory):
    columns = ["time", "zeta"] + list(traj.audits)
    table = np.column_stack([traj.times, traj.zeta] + [traj.audits[c] for c in traj.audits])
    np.savetxt(
        path, table, fmt="%.17g", delimiter=",", header=",".join(columns),
        comments="", encoding="utf-8",
    )


def write_summary(path: Path, summary: dict):
    path.write_text(json.dumps(summary, indent=2, sort_keys=True, default=float) + "\n")


def _seeded(p, grid):
    seed_b = p["seed"] if p["seed_b"] is None else p["seed_b"]
    traj = run_seeded(BeamPair(p["n_a"], p["n_b"], p["seed"], seed_b), grid)
    summary = {"break_time": first_zero_crossing(traj)}
    if seed_b == p["seed"] and p["n_a"] == p["n_b"] and 0 < p["seed"] <= np.pi / 4:
        summary["closed_form_break_time"] = closed_form_crossing(p["seed"])
    return {"seeded.csv": traj}, summary


def _quantum(p, grid):
    h = build_ladder(p["n"], p["lam"])
    if p["method"] == "spectral":
        propagator = LadderPropagator(h)
        traj = propagator.trajectory(grid)
        break_time = propagator.refined_crossing(traj)
    else:
        traj = evolve_ladder(h, grid, p["method"])
        break_time = first_zero_crossing(traj)
    summary = {
        "break_time": break_time,
        "min_zeta": float(np.min(traj.zeta)),
        "norm_drift": traj.audit_drift("norm", relative=False),
        "energy_drift": traj.audit_drift("energy"),
        "linear_stability": analyze_lambda(p["lam"]).classification,
    }
    return {"quantum.csv": traj}, summary


def _meanfield(p, grid):
    traj = run_single_mode(p["n"], p["seed"], p["lam"], grid)
    summary = {
        "break_time": first_zero_crossing(traj),
        "spin_length_drift": max(traj.audit_drift("spin_length_a"), traj.audit_drift("spin_length_b")),
        "total_s3_drift": traj.audit_drift("total_s3", relative=False),
    }
    return {"meanfield.csv": traj}, summary


def _isotropic(p, grid):
    report = beam_vs_isotropic_report(
        p["n"], p["m"], p["seed"], grid,
        lam=p["lam"], kernel_strength=p["kernel_strength"], seed_b=p["seed_b"],
    )
    summary = {
        "beam_break_time": report.beam_break_time,
        "isotropic_break_time": report.isotropic_break_time,
        "ratio": report.ratio,
        "isotropic_late_mean": report.isotropic_late_mean,
        "beam_max_slope": report.beam_max_slope,
        "isotropic_max_slope": report.isotropic_max_slope,
    }
    return {"beams.csv": report.beams, "isotropic.csv": report.isotropic}, summary


def _stability(p, grid):
    report = analyze_lambda(p["lam"])
    measured = growth_rate_empirical(p["lam"], p["seed"], grid.t_end, p["n"], grid.dt)
    summary = {
        "classification": report.classification,
        "eigenvalues": [[z.real, z.imag] for z in report.eigenvalues],
        "growth_rate": report.growth_rate,
        "measured_growth_rate": measured.rate,
        "max_amplification": measured.max_amplification,
    }
    return {}, summary


def _estimate(p, _grid):
    scenario = astro.MergerScenario(p["luminosity"], p["frequency"])
    return {}, astro.feasibility_report(scenario, fill=p["fill"], density=p["density"])


RUNNERS = {
    "seeded": _seeded,
    "quantum": _quantum,
    "meanfield": _meanfield,
    "isotropic-compare": _isotropic,
    "stability": _stability,
    "estimate": _estimate,
}


def execute(experiment: str, parameters: dict, dt, horizon, out_dir: Path) -> dict:
    """One run: writes its CSVs into ``out_dir`` and returns its summary."""
    grid = TimeGrid.up_to(horizon, dt) if dt is not None else None
    trajectories, summary = RUNNERS[experiment](parameters, grid)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, traj in trajectories.items():
        write_csv(out_dir / name, traj)
    summary["parameters"] = parameters
    summary["files"] = sorted(trajectories)
    return summary


def run(config: RunConfig) -> dict:
    """Run every point of ``config`` and write the summary; returns it."""
    points = config.points()
    logger.info("%s: %d run(s) on %d worker(s)", config.experiment, len(points), config.workers)
    runs = Parallel(n_jobs=config.workers)(
        delayed(execute)(
            config.experiment, params, config.dt, config.horizon, config.output_path / sub
        )
        for sub, params in points
    )
    for (sub, _params), summary in zip(points, runs):
        summary["directory"] = sub
    summary = {"tool_version": __version__, "config": config.echo()}
    if config.sweep is None:
        summary.update(runs[0])
    else:
        summary["runs"] = runs
    config.output_path.mkdir(parents=True, exist_ok=True)
    write_summary(config.output_path / "summary.json", summary)
    return summary


def _fig1_curve(fraction: float):
    beams = BeamPair.from_photon_fraction(fraction)
    traj = run_seeded(beams, TimeGrid.up_to(DEFAULT_SEEDED_HORIZON, DEFAULT_DT))
    return traj, first_zero_crossing(traj), closed_form_crossing(beams.seed_a)


def _fig2_curve(n: int):
    propagator = LadderPropagator(build_ladder(n))
    traj = propagator.trajectory(TimeGrid.up_to(12.0, QUANTUM_DT))
    return traj, propagator.refined_crossing(traj)


def figure_bundle(figure: str, out_dir: Path, workers: int = 1) -> dict:
    """Write the CSVs behind one figure plus its summary.json; returns the summary."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary: Dict[str, Any] = {"tool_version": __version__, "figure": figure}
    trajectories: Dict[str, Trajectory] = {}

    if figure == "fig1":
        fractions = [1e-4, 1e-6, 1e-8, 1e-10]
        curves = Parallel(n_jobs=workers)(delayed(_fig1_curve)(f) for f in fractions)
        crossings = []
        for fraction, (traj, crossing, closed) in zip(fractions, curves):
            trajectories[f"seed_{fraction:.0e}.csv"] = traj
            crossings.append({"photon_fraction": fraction, "break_time": crossing, "closed_form": closed})
        fit = fit_log_scaling([(1.0 / c["photon_fraction"], c["break_time"]) for c in crossings])
        summary.update(crossings=crossings, slope_vs_log_inverse_fraction=fit.slope, r_squared=fit.r_squared)
    elif figure == "fig2":
        ns = [16, 64, 256, 1024]
        curves = Parallel(n_jobs=workers)(delayed(_fig2_curve)(n) for n in ns)
        for n, (traj, _crossing) in zip(ns, curves):
            trajectories[f"quantum_N{n}.csv"] = traj
        fit = fit_log_scaling([(n, c) for n, (_t, c) in zip(ns, curves)])
        summary.update(
            break_times={str(n): c for n, (_t, c) in zip(ns, curves)},
            slope=fit.slope, intercept=fit.intercept, r_squared=fit.r_squared, prefactor=fit.prefactor,
        )
    elif figure == "fig3":
        grid = TimeGrid.up_to(16.0, QUANTUM_DT)
        propagator = LadderPropagator(build_ladder(512))
        quantum = propagator.trajectory(grid)
        meanfield = run_single_mode(512, 1.0, 0.0, grid)
        crossing = propagator.refined_crossing(quantum)
        upto = quantum.times <= crossing
        trajectories.update({"quantum_N512.csv": quantum, "meanfield_seed1.csv": meanfield})
        summary.update(
            quantum_break_time=crossing,
            meanfield_break_time=first_zero_crossing(meanfield),
            max_difference_to_crossing=float(np.max(np.abs(quantum.zeta[upto] - meanfield.zeta[upto]))),
            quantum_amplitude_late=amplitude_after(quantum, 3 * crossing),
            meanfield_amplitude_late=amplitude_after(meanfield, 3 * crossing),
        )
    elif figure == "fig4":
        report = beam_vs_isotropic_report(512, 64, 1.0, TimeGrid.up_to(60.0, 1e-2))
        trajectories.update({"beams.csv": report.beams, "isotropic.csv": report.isotropic})
        summary.update(
            beam_break_time=report.beam_break_time,
            isotropic_break_time=report.isotropic_break_time,
            ratio=report.ratio,
            beam_max_slope=report.beam_max_slope,
            isotropic_max_slope=report.isotropic_max_slope,
        )
    else:
        raise ConfigError(f"unknown figure {figure!r}; use one of {FIGURES}")

    for name, traj in trajectories.items():
        write_csv(out_dir / name, traj)
    summary["files"] = sorted(trajectories)
    write_summary(out_dir / "summary.json", summary)
    return summary


def compare_bundle(produced: Path, golden: Path, tolerance: float = GOLDEN_TOLERANCE) -> List[str]:
    """
    Differences between the CSVs of ``golden`` and their counterparts in
    ``produced``: missing files, changed headers, shapes, or any cell off by
    more than ``tolerance``. A golden directory without CSVs is itself a
    problem. An empty list means the bundles agree.
    """
    references = sorted(Path(golden).glob("*.csv"))
    if not references:
        return [f"{golden}: no golden CSV files"]
    problems = []
    for reference in references:
        candidate = Path(produced) / reference.name
        if not candidate.exists():
            problems.append(f"{reference.name}: missing")
            continue
        with reference.open(encoding="utf-8") as f:
            ref_header = f.readline().strip()
        with candidate.open(encoding="utf-8") as f:
            new_header = f.readline().strip()
        if ref_header != new_header:
            problems.append(f"{reference.name}: header {new_header!r} != {ref_header!r}")
            continue
        expected = np.loadtxt(reference, delimiter=",", skiprows=1, ndmin=2)
        actual = np.loadtxt(candidate, delimiter=",", skiprows=1, ndmin=2)
        if expected.shape != actual.shape:
            problems.append(f"{reference.name}: shape {actual.shape} != {expected.shape}")
            continue
        worst = float(np.max(np.abs(expected - actual))) if expected.size else 0.0
        if not worst <= tolerance:
            problems.append(f"{reference.name}: max cell difference {worst:.3g}")
    return problems


def common_options(f):
    for option in reversed(
        [
            click.option("--out", "out", type=click.Path(file_okay=False), default="out", show_default=True,
                         help="Output directory."),
            click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False),
                         help="JSON file with parameter values."),
            click.option("--dt", type=float, help="Time step."),
            click.option("--horizon", type=float, help="Final time."),
            click.option("--workers", type=int, help="Worker processes for sweeps."),
            click.option("-p", "--param", "params", multiple=True, metavar="NAME=VALUE",
                         help="Set an experiment parameter; repeatable."),
            click.option("--sweep", metavar="NAME=V1,V2,...", help="Run once per value of a parameter."),
        ]
    ):
        f = option(f)
    return f


def _launch(ctx: click.Context, experiment: str, options: dict, extra: Optional[dict] = None):
    try:
        config = RunConfig.build(experiment, options["out"], options["config_file"], options["params"],
                                 options["dt"], options["horizon"], options["sweep"], options["workers"],
                                 extra)
    except ParameterError as e:
        click.echo(f"configuration error: {e}", err=True)
        ctx.exit(EXIT_CONFIG)
    try:
        summary = run(config)
    except SolverError as e:
        click.echo(f"solver failure: {e}", err=True)
        ctx.exit(EXIT_SOLVER)
    except ParameterError as e:
        click.echo(f"configuration error: {e}", err=True)
        ctx.exit(EXIT_CONFIG)
    if "verdict" in summary:
        click.echo(summary["verdict"])
    click.echo(f"wrote {config.output_path / 'summary.json'}")


@click.group()
@click.version_option(__version__)
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debugging output.")
def main(verbose):
    """Coherent graviton -> photon flavor conversion experiments."""
    level = logging.WARNING - 10 * min(verbose, 2)
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )


def _experiment_command(experiment: str, help_text: str):
    @main.command(experiment, help=help_text)
    @common_options
    @click.pass_context
    def command(ctx, **options):
        _launch(ctx, experiment, options)

    return command


_experiment_command("seeded", "Seeded classical beams (mixing-angle equations).")
_experiment_command("quantum", "Exact quantum ladder evolution.")
_experiment_command("meanfield", "Single-mode mean-field evolution.")
_experiment_command("isotropic-compare", "Clashing beams against isotropic clouds.")
_experiment_command("stability", "Linear stability class and measured growth rate.")


@main.command("estimate")
@common_options
@click.option("--scenario", type=click.Path(exists=True, dir_okay=False),
              help="JSON file with luminosity_erg_per_s and frequency_hz.")
@click.pass_context
def estimate(ctx, scenario, **options):
    """Astrophysical feasibility numbers for a merger."""
    extra = None
    if scenario is not None:
        try:
            loaded = astro.MergerScenario.from_json(scenario)
        except (ParameterError, OSError, ValueError) as e:
            click.echo(f"configuration error: {e}", err=True)
            ctx.exit(EXIT_CONFIG)
        extra = {"luminosity": loaded.luminosity_erg_per_s, "frequency": loaded.frequency_hz}
    _launch(ctx, "estimate", options, extra)


@main.command("figures")
@click.argument("figure", type=click.Choice(FIGURES))
@click.option("--out", type=click.Path(file_okay=False), help="Output directory (default: the figure name).")
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--check", "golden", type=click.Path(exists=True, file_okay=False),
              help="Compare the produced CSVs with this golden directory.")
@click.pass_context
def figures(ctx, figure, out, workers, golden):
    """Regenerate the curves of one figure."""
    out_dir = Path(out or figure)
    try:
        figure_bundle(figure, out_dir, workers)
    except SolverError as e:
        click.echo(f"solver failure: {e}", err=True)
        ctx.exit(EXIT_SOLVER)
    click.echo(f"wrote {out_dir}")
    if golden:
        problems = compare_bundle(out_dir, Path(golden))
        for problem in problems:
            click.echo(problem, err=True)
        if problems:
            ctx.exit(EXIT_MISMATCH)
        click.echo("matches golden files")


if __name__ == "__main__":
    main()
