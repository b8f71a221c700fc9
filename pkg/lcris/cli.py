"""
Command-line interface for running the scenario pipelines. The
exit code is 0 on success, 2 for an invalid scenario or invalid
arguments, 3 for invalid data files and 4 for a numerical failure.
"""

import argparse
import os
import sys

from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

import lcris

from lcris.analysis import metrics, optimize_bias, scattering, steering, tolerance_mc
from lcris.core import box
from lcris.data.database import Database
from lcris.read.read_scenario import ReadScenario
from lcris.read.read_traces import ReadTraces
from lcris.util import export_util, layout_util, line_util, material_util


EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


class ConfigError(Exception):
    """
    Exception for an invalid scenario or invalid arguments.
    """


class DataError(Exception):
    """
    Exception for an invalid data file.
    """


def _load_scenario(args: argparse.Namespace) -> box.ScenarioBox:
    if args.scenario is None:
        raise ConfigError("The --scenario argument is required for this command.")

    try:
        scenario = ReadScenario(args.scenario).get_scenario()

    except (ValueError, TypeError) as error:
        raise ConfigError(str(error)) from error

    if args.out is not None:
        scenario.output_dir = args.out

    if getattr(args, "trials", 1) < 1:
        raise ConfigError(f"The number of trials should be at least 1 ({args.trials}).")

    if args.threads is not None and args.threads < 1:
        raise ConfigError(f"The number of threads should be at least 1 ({args.threads}).")

    return scenario


def _seed(args: argparse.Namespace, scenario: box.ScenarioBox) -> int:
    if args.seed is not None:
        return args.seed

    return scenario.tolerance["seed"]


def _initial_voltages(scenario: box.ScenarioBox) -> Tuple[box.ProfileBox, np.ndarray]:
    wrapped = scenario.wrap_deg is not None

    profile = steering.synthesize_profile(
        scenario.layout,
        scenario.target,
        scenario.wave,
        dphi_max=scenario.wrap_deg if wrapped else 360.0,
        column_constrained=scenario.column_constrained,
        wrapped=wrapped,
    )

    t_assumed = np.full(scenario.layout.n_elements, scenario.tolerance["t_nom"])

    voltages = steering.phases_to_voltages(
        profile,
        scenario.material,
        scenario.stack,
        scenario.line,
        t_assumed,
        v_max=scenario.optimizer["bounds"][1],
    )

    return profile, voltages


def _print_summary(title: str, summary: Dict) -> None:
    print(f"{title}:")

    for key, value in summary.items():
        if isinstance(value, float):
            print(f"   - {key} = {value:.6g}")
        else:
            print(f"   - {key} = {value}")


def cmd_steer(args: argparse.Namespace) -> Dict[str, str]:
    """
    Function for calculating the far field and the efficiency
    spectrum of the steered beam.

    Parameters
    ----------
    args : argparse.Namespace
        Command-line arguments.

    Returns
    -------
    dict
        Dictionary with the paths of the output files.
    """

    scenario = _load_scenario(args)
    seed = _seed(args, scenario)

    field = tolerance_mc.thickness_field(scenario.layout, scenario.tolerance, seed=seed)
    profile, voltages = _initial_voltages(scenario)

    print("Calculating far field...", end="", flush=True)

    states = scattering.element_states(
        scenario.material,
        scenario.stack,
        scenario.line,
        voltages,
        field.t_lc,
        scenario.freq_axis,
        radiator=scenario.radiator,
        misalignment=field.misalignment,
    )

    grid = scattering.far_field(
        scenario.layout,
        states,
        scenario.wave,
        scenario.theta_axis,
        np.array([scenario.target[1]]),
        ep_exponent=scenario.ep_exponent,
        n_threads=args.threads,
    )

    rcs = scattering.ris_rcs(grid, scenario.layout, scenario.wave)

    print(" [DONE]")

    track = metrics.track_peak(rcs, scenario.target, window=scenario.window_deg)

    spectrum = metrics.efficiency_from_simulation(
        rcs, scenario.layout, scenario.target, window=scenario.window_deg
    )

    squint_bw = metrics.bandwidth_3db(
        scenario.freq_axis, np.nan_to_num(spectrum.eta), scale="power"
    )

    # Efficiency in the fixed target direction
    j_theta = int(np.argmin(np.abs(scenario.theta_axis - scenario.target[0])))

    rcs_plate = scattering.metal_plate_rcs(
        layout_util.aperture_area(scenario.layout),
        scenario.wave.theta_inc,
        float(scenario.theta_axis[j_theta]),
        scenario.wave.phi_inc,
        scenario.target[1],
        scenario.freq_axis,
    )

    eta_fixed = np.real(rcs.values[:, j_theta, 0]) / rcs_plate

    fixed_bw = metrics.bandwidth_3db(scenario.freq_axis, eta_fixed, scale="power")

    squint_angle, squint_flag = steering.squint_predict(profile, scenario.freq_axis)

    i_design = int(np.argmin(np.abs(scenario.freq_axis - scenario.wave.frequency)))

    summary = {
        "n_elements": scenario.layout.n_elements,
        "theta_r_deg": scenario.target[0],
        "phi_r_deg": scenario.target[1],
        "seed": seed,
        "eta_peak": (
            float(np.nanmax(spectrum.eta))
            if np.any(np.isfinite(spectrum.eta))
            else float("nan")
        ),
        "eta_design": float(spectrum.eta[i_design]),
        "theta_pk_design_deg": float(track.theta_pk[i_design]),
        "squint_f_lo_hz": squint_bw.f_lo,
        "squint_f_hi_hz": squint_bw.f_hi,
        "squint_fractional_bw": squint_bw.fractional_bw,
        "squint_flag": squint_bw.flag,
        "fixed_f_lo_hz": fixed_bw.f_lo,
        "fixed_f_hi_hz": fixed_bw.f_hi,
        "fixed_fractional_bw": fixed_bw.fractional_bw,
        "fixed_flag": fixed_bw.flag,
        "squint_track_start_deg": float(track.theta_pk[0]),
        "squint_track_stop_deg": float(track.theta_pk[-1]),
        "squint_predicted_start_deg": float(np.atleast_1d(squint_angle)[0]),
        "squint_predicted_stop_deg": float(np.atleast_1d(squint_angle)[-1]),
        "squint_visible_flag": squint_flag,
        "track_flag": track.flag,
    }

    _print_summary("Steering summary", summary)

    out_dir = scenario.output_dir

    files = {
        "farfield": export_util.write_farfield_csv(rcs, os.path.join(out_dir, "farfield.csv")),
        "farfield_bin": export_util.write_farfield_binary(
            rcs, os.path.join(out_dir, "farfield.bin")
        ),
        "peak_track": export_util.write_peak_track(track, os.path.join(out_dir, "peak_track.csv")),
        "spectrum": export_util.write_spectrum(spectrum, os.path.join(out_dir, "spectrum.csv")),
        "profile": export_util.write_profile(
            profile, voltages, os.path.join(out_dir, "profile.csv")
        ),
        "layout": export_util.write_layout(scenario.layout, os.path.join(out_dir, "layout.csv")),
        "tolerance": export_util.write_tolerance(
            scenario.layout, field, os.path.join(out_dir, "tolerance.csv")
        ),
        "summary": export_util.write_report(summary, os.path.join(out_dir, "summary.txt")),
    }

    if args.database is not None:
        database = Database(args.database)
        database.add_farfield("steer", rcs)
        database.add_efficiency("steer", spectrum)
        database.add_tolerance("steer", field)

    return files


def cmd_sweep(args: argparse.Namespace) -> Dict[str, str]:
    """
    Function for calculating the response of the calibrated phase
    shifter versus bias voltage, frequency and LC thickness.

    Parameters
    ----------
    args : argparse.Namespace
        Command-line arguments.

    Returns
    -------
    dict
        Dictionary with the paths of the output files.
    """

    scenario = _load_scenario(args)

    material = scenario.material
    stack = scenario.stack
    line = scenario.line

    t_nom = scenario.tolerance["t_nom"]
    f_design = scenario.wave.frequency
    v_max = scenario.optimizer["bounds"][1]

    print("Calculating phase shifter sweep...", end="", flush=True)

    v_axis = np.linspace(0.0, v_max, 81)

    v_grid, f_grid = np.meshgrid(v_axis, scenario.freq_axis, indexing="ij")

    eps_lc, tan_lc = material_util.lc_permittivity(material, v_grid)
    eps_eff, tan_eff = line_util.effective_permittivity(line, eps_lc, tan_lc, stack, t_nom)

    phase = line_util.phase_vs_thickness(line, material, stack, v_grid, t_nom, f_grid)
    loss = line_util.insertion_loss(line, eps_eff, tan_eff, f_grid)

    shifter = pd.DataFrame(
        {
            "v_bias_v": v_grid.ravel(),
            "freq_hz": f_grid.ravel(),
            "phase_deg": np.ravel(phase),
            "il_db": np.ravel(loss),
        }
    )

    t_axis = np.linspace(0.5 * t_nom, 1.5 * t_nom, 21)

    v_grid, t_grid = np.meshgrid(v_axis, t_axis, indexing="ij")

    thickness = pd.DataFrame(
        {
            "v_bias_v": v_grid.ravel(),
            "t_lc_m": t_grid.ravel(),
            "phase_deg": np.ravel(
                line_util.phase_vs_thickness(line, material, stack, v_grid, t_grid, f_design)
            ),
        }
    )

    rows = []

    for frequency in scenario.freq_axis:
        rows.append(
            {"freq_hz": frequency, **line_util.line_metrics(line, material, stack, float(frequency))}
        )

    line_table = pd.DataFrame(rows)

    print(" [DONE]")

    phase_bw = metrics.phase_bandwidth_25pct(
        scenario.freq_axis, line_table["dphi_max"].to_numpy(), f_design
    )

    design = line_util.line_metrics(line, material, stack, f_design)

    summary = {
        "l_phys_m": line.l_phys,
        "alpha_extra_db_per_m": line.alpha_extra,
        "gap_exponent": line.gap_exponent,
        "dphi_max_deg": design["dphi_max"],
        "il_max_db": design["il_max"],
        "fom_deg_per_db": design["fom"],
        "compactness_deg_per_lambda0": design["compactness"],
        "sensitivity_perp_deg_per_um": 1e-6
        * float(
            line_util.thickness_sensitivity(line, material, stack, 0.0, t_nom, f_design)
        ),
        "sensitivity_par_deg_per_um": 1e-6
        * float(
            line_util.thickness_sensitivity(line, material, stack, v_max, t_nom, f_design)
        ),
        "phase_bw_f_lo_hz": phase_bw.f_lo,
        "phase_bw_f_hi_hz": phase_bw.f_hi,
        "phase_bw_fractional": phase_bw.fractional_bw,
        "phase_bw_flag": phase_bw.flag,
    }

    _print_summary("Phase shifter summary", summary)

    out_dir = scenario.output_dir

    return {
        "shifter": export_util.write_table(shifter, os.path.join(out_dir, "shifter.csv")),
        "thickness": export_util.write_table(
            thickness, os.path.join(out_dir, "phase_vs_thickness.csv")
        ),
        "line_metrics": export_util.write_table(
            line_table.rename(
                columns={
                    "dphi_max": "dphi_max_deg",
                    "il_max": "il_max_db",
                    "fom": "fom_deg_per_db",
                    "compactness": "compactness_deg_per_lambda0",
                }
            ),
            os.path.join(out_dir, "line_metrics.csv"),
        ),
        "summary": export_util.write_report(summary, os.path.join(out_dir, "sweep.txt")),
    }


def cmd_tolerance_mc(args: argparse.Namespace) -> Dict[str, str]:
    """
    Function for running the Monte Carlo analysis of the thickness
    tolerance.

    Parameters
    ----------
    args : argparse.Namespace
        Command-line arguments.

    Returns
    -------
    dict
        Dictionary with the paths of the output files.
    """

    scenario = _load_scenario(args)
    seed = _seed(args, scenario)

    analysis = tolerance_mc.ToleranceMonteCarlo(scenario)

    trials = analysis.run(args.trials, seed=seed, optimize=args.optimize)
    aggregate = analysis.aggregate(trials)

    print("Monte Carlo summary:")

    for _, row in aggregate.iterrows():
        print(f"   - {row['quantity']} = {row['median']:.6g} (IQR = {row['iqr']:.6g})")

    out_dir = scenario.output_dir

    return {
        "trials": export_util.write_table(trials, os.path.join(out_dir, "trials.csv")),
        "aggregate": export_util.write_table(aggregate, os.path.join(out_dir, "aggregate.csv")),
    }


def cmd_optimize(args: argparse.Namespace) -> Dict[str, str]:
    """
    Function for optimizing the bias voltages of the column or of
    the individual elements for the thickness field of the scenario.

    Parameters
    ----------
    args : argparse.Namespace
        Command-line arguments.

    Returns
    -------
    dict
        Dictionary with the paths of the output files.
    """

    scenario = _load_scenario(args)
    seed = _seed(args, scenario)

    field = tolerance_mc.thickness_field(scenario.layout, scenario.tolerance, seed=seed)
    profile, voltages = _initial_voltages(scenario)

    optimizer = optimize_bias.BiasOptimizer(
        scenario.layout,
        field,
        scenario.material,
        scenario.stack,
        scenario.line,
        scenario.wave,
        scenario.target,
        radiator=scenario.radiator,
        ep_exponent=scenario.ep_exponent,
        bounds=scenario.optimizer["bounds"],
        v_tol=scenario.optimizer["v_tol"],
        sweep_tol=scenario.optimizer["sweep_tol"],
    )

    element_wise = args.element_wise or scenario.optimizer["element_wise"]

    print("Optimizing bias voltages...", end="", flush=True)

    if element_wise:
        report = optimizer.optimize_elements(voltages, scenario.optimizer["budget"], seed=seed)
    else:
        report = optimizer.optimize_columns(voltages, scenario.optimizer["budget"], seed=seed)

    print(" [DONE]")

    summary = {
        "mode": report.mode,
        "seed": seed,
        "initial_power_db": report.initial_power_db,
        "final_power_db": report.final_power_db,
        "improvement_db": report.improvement_db,
        "iterations": report.iterations,
        "evaluations": report.evaluations,
        "converged": report.converged,
    }

    _print_summary("Optimization summary", summary)

    out_dir = scenario.output_dir

    files = {
        "report": export_util.write_report(summary, os.path.join(out_dir, "optimization.txt")),
        "log": export_util.write_iterate_log(
            report.log, os.path.join(out_dir, "iterations.csv"), mode=report.mode
        ),
        "profile": export_util.write_profile(
            profile, report.voltages, os.path.join(out_dir, "voltages.csv")
        ),
    }

    if args.database is not None:
        Database(args.database).add_optimization("optimize", report)

    return files


def cmd_reduce(args: argparse.Namespace) -> Dict[str, str]:
    """
    Function for calculating the aperture efficiency from measured
    transmission traces with the geometry of the scenario.

    Parameters
    ----------
    args : argparse.Namespace
        Command-line arguments.

    Returns
    -------
    dict
        Dictionary with the paths of the output files.
    """

    scenario = _load_scenario(args)

    if args.traces is None:
        raise ConfigError("The --traces argument is required for the reduce command.")

    geometry = scenario.geometry

    try:
        traces = ReadTraces(args.traces).get_traces(
            (
                geometry["theta_tx"],
                geometry["theta_rx"],
                geometry["phi_tx"],
                geometry["phi_rx"],
            ),
            geometry["area_ris"],
            geometry["area_mp"],
        )

    except ValueError as error:
        raise DataError(str(error)) from error

    spectrum = metrics.reduce_measurement(traces)

    summary = {
        "n_samples": int(spectrum.freq_axis.size),
        "n_flagged": int(np.sum(spectrum.flagged)),
        "sigma_mp_min_m2": float(np.amin(spectrum.sigma_mp)),
        "sigma_mp_max_m2": float(np.amax(spectrum.sigma_mp)),
        "area_ris_m2": geometry["area_ris"],
        "area_mp_m2": geometry["area_mp"],
    }

    if np.any(np.isfinite(spectrum.eta)):
        summary["eta_max"] = float(np.nanmax(spectrum.eta))

    _print_summary("Reduction summary", summary)

    out_dir = scenario.output_dir

    files = {
        "spectrum": export_util.write_spectrum(spectrum, os.path.join(out_dir, "reduced.csv")),
        "summary": export_util.write_report(summary, os.path.join(out_dir, "reduce.txt")),
    }

    if args.database is not None:
        Database(args.database).add_efficiency("reduce", spectrum)

    return files


def cmd_report(args: argparse.Namespace) -> Dict[str, str]:
    """
    Function for printing and writing a summary of the power
    consumption, the response times, the delay line and the layout.

    Parameters
    ----------
    args : argparse.Namespace
        Command-line arguments.

    Returns
    -------
    dict
        Dictionary with the path of the report file.
    """

    scenario = _load_scenario(args)

    layout = scenario.layout
    t_nom = scenario.tolerance["t_nom"]

    power = material_util.array_power(scenario.p_element, layout.n_elements)
    tau_on, tau_off = material_util.response_times(scenario.response_base, t_nom)

    design = line_util.line_metrics(
        scenario.line, scenario.material, scenario.stack, scenario.wave.frequency
    )

    report = {
        "lcris_version": lcris.__version__,
        "scenario": scenario.scenario_file,
        "n_elements": layout.n_elements,
        "rows": layout.rows,
        "cols": layout.cols,
        "grid_kind": layout.grid_kind,
        "dx_m": layout.dx,
        "dy_m": layout.dy,
        "aperture_area_m2": layout_util.aperture_area(layout),
        "nearest_neighbor_m": layout_util.nearest_neighbor_distance(layout),
        "power_w": power,
        "power_mw": 1e3 * power,
        "t_lc_m": t_nom,
        "tau_on_s": tau_on,
        "tau_off_s": tau_off,
        "l_phys_m": scenario.line.l_phys,
        "dphi_max_deg": design["dphi_max"],
        "il_max_db": design["il_max"],
        "fom_deg_per_db": design["fom"],
        "compactness_deg_per_lambda0": design["compactness"],
    }

    if scenario.radiator is not None:
        report["radiator_center_loss_db"] = scenario.radiator.center_loss_db

    for item in scenario.defaults:
        key, value = item.split(" = ", 1)
        report[f"default {key}"] = value

    _print_summary("Scenario report", report)

    return {
        "report": export_util.write_report(
            report, os.path.join(scenario.output_dir, "report.txt")
        )
    }


COMMANDS = {
    "steer": cmd_steer,
    "sweep": cmd_sweep,
    "tolerance-mc": cmd_tolerance_mc,
    "optimize": cmd_optimize,
    "reduce": cmd_reduce,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    """
    Function for creating the argument parser.

    Returns
    -------
    argparse.ArgumentParser
        Parser with one subcommand per pipeline.
    """

    parser = argparse.ArgumentParser(prog="lcris", description=__doc__)
    parser.add_argument("--version", action="version", version=f"lcris {lcris.__version__}")

    subparsers = parser.add_subparsers(dest="command", required=True)

    for name in COMMANDS:
        sub = subparsers.add_parser(name)
        sub.add_argument("--scenario", default=None, help="Path of the scenario file")
        sub.add_argument("--out", default=None, help="Output folder (overrides output.directory)")
        sub.add_argument("--seed", type=int, default=None, help="Seed of the thickness field")
        sub.add_argument("--threads", type=int, default=None, help="Worker threads of the far-field kernel")
        sub.add_argument("--database", default=None, help="HDF5 database for storing the results")

        if name == "tolerance-mc":
            sub.add_argument("--trials", type=int, default=100, help="Number of Monte Carlo trials")
            sub.add_argument(
                "--optimize", action="store_true", help="Optimize the voltages of each trial"
            )

        if name == "optimize":
            sub.add_argument(
                "--element-wise", action="store_true", help="Optimize each element separately"
            )

        if name == "reduce":
            sub.add_argument("--traces", default=None, help="CSV file with the measured traces")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Function for running a command.

    Parameters
    ----------
    argv : list(str), None
        Command-line arguments. The arguments of the process are
        used if set to ``None``.

    Returns
    -------
    int
        Exit code.
    """

    parser = build_parser()

    try:
        args = parser.parse_args(argv)

    except SystemExit as error:
        return EXIT_OK if error.code in (0, None) else EXIT_CONFIG

    try:
        COMMANDS[args.command](args)

    except ConfigError as error:
        print(f"Configuration error: {error}", file=sys.stderr)
        return EXIT_CONFIG

    except DataError as error:
        print(f"Data error: {error}", file=sys.stderr)
        return EXIT_DATA

    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as error:
        print(f"Numerical error: {error}", file=sys.stderr)
        return EXIT_NUMERIC

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
