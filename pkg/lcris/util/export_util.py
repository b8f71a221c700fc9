"""
Utility functions for writing results to CSV, text and binary files.
All CSV files use a header row, a dot as decimal separator and a
fixed float format so that identical results give identical files.
"""

import os

from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from typeguard import typechecked

from lcris.core import box


FLOAT_FORMAT = "%.10g"

GRID_HEADER = np.dtype("<u4")
GRID_AXIS = np.dtype("<f8")
GRID_VALUE = np.dtype("<c8")


@typechecked
def write_table(table: pd.DataFrame, output_file: str) -> str:
    """
    Function for writing a table to a CSV file.

    Parameters
    ----------
    table : pandas.DataFrame
        Table with one column per quantity.
    output_file : str
        Path of the CSV file.

    Returns
    -------
    str
        Path of the CSV file.
    """

    out_folder = os.path.dirname(output_file)

    if out_folder:
        os.makedirs(out_folder, exist_ok=True)

    table.to_csv(
        output_file,
        index=False,
        float_format=FLOAT_FORMAT,
        encoding="utf-8",
        lineterminator="\n",
    )

    return output_file


@typechecked
def farfield_table(grid: box.FarFieldBox) -> pd.DataFrame:
    """
    Function for converting a far-field grid into a table in long
    format with one row per frequency, azimuth and elevation.

    Parameters
    ----------
    grid : lcris.core.box.FarFieldBox
        Box with the far field or RCS.

    Returns
    -------
    pandas.DataFrame
        Table with the columns ``f_hz``, ``theta_deg``,
        ``phi_deg``, ``re``, ``im``, and ``mag_db``.
    """

    freq, theta, phi = np.meshgrid(
        grid.freq_axis, grid.theta_axis, grid.phi_axis, indexing="ij"
    )

    values = np.asarray(grid.values, dtype=complex).ravel()

    with np.errstate(divide="ignore"):
        if grid.normalization == "rcs_m2":
            mag_db = 10.0 * np.log10(np.abs(values))
        else:
            mag_db = 20.0 * np.log10(np.abs(values))

    return pd.DataFrame(
        {
            "f_hz": freq.ravel(),
            "theta_deg": theta.ravel(),
            "phi_deg": phi.ravel(),
            "re": values.real,
            "im": values.imag,
            "mag_db": mag_db,
        }
    )


@typechecked
def write_farfield_csv(grid: box.FarFieldBox, output_file: str) -> str:
    """
    Function for writing a far-field grid to a CSV file in long
    format.

    Parameters
    ----------
    grid : lcris.core.box.FarFieldBox
        Box with the far field or RCS.
    output_file : str
        Path of the CSV file.

    Returns
    -------
    str
        Path of the CSV file.
    """

    return write_table(farfield_table(grid), output_file)


@typechecked
def write_farfield_binary(grid: box.FarFieldBox, output_file: str) -> str:
    """
    Function for writing a far-field grid to a binary file. The
    file starts with the number of frequencies, azimuth angles and
    elevation angles as little-endian unsigned 32-bit integers,
    followed by the three axes as little-endian 64-bit floats and
    the values as little-endian 64-bit complex numbers in row-major
    order (frequency, azimuth, elevation).

    Parameters
    ----------
    grid : lcris.core.box.FarFieldBox
        Box with the far field or RCS.
    output_file : str
        Path of the binary file.

    Returns
    -------
    str
        Path of the binary file.
    """

    shape = (grid.freq_axis.size, grid.theta_axis.size, grid.phi_axis.size)

    if grid.values.shape != shape:
        raise ValueError(
            f"The shape of the values {grid.values.shape} does not match "
            f"the axes {shape}."
        )

    out_folder = os.path.dirname(output_file)

    if out_folder:
        os.makedirs(out_folder, exist_ok=True)

    with open(output_file, "wb") as bin_file:
        bin_file.write(np.array(shape, dtype=GRID_HEADER).tobytes())

        for axis in [grid.freq_axis, grid.theta_axis, grid.phi_axis]:
            bin_file.write(np.asarray(axis, dtype=GRID_AXIS).tobytes())

        bin_file.write(np.ascontiguousarray(grid.values, dtype=GRID_VALUE).tobytes())

    return output_file


@typechecked
def read_farfield_binary(input_file: str, normalization: str = "raw") -> box.FarFieldBox:
    """
    Function for reading a far-field grid from a binary file that
    was written by
    :func:`~lcris.util.export_util.write_farfield_binary`.

    Parameters
    ----------
    input_file : str
        Path of the binary file.
    normalization : str
        Normalization of the stored values ('raw', 'peak', or
        'rcs_m2'), which is not part of the file.

    Returns
    -------
    lcris.core.box.FarFieldBox
        Box with the far field or RCS.
    """

    with open(input_file, "rb") as bin_file:
        content = bin_file.read()

    n_header = 3 * GRID_HEADER.itemsize

    if len(content) < n_header:
        raise ValueError(f"The file '{input_file}' is too short for a grid header.")

    shape = tuple(int(item) for item in np.frombuffer(content[:n_header], dtype=GRID_HEADER))

    n_axes = sum(shape) * GRID_AXIS.itemsize
    n_values = int(np.prod(shape)) * GRID_VALUE.itemsize

    if len(content) != n_header + n_axes + n_values:
        raise ValueError(
            f"The size of '{input_file}' ({len(content)} bytes) does not "
            f"match a grid with the shape {shape}."
        )

    axes = np.frombuffer(content[n_header : n_header + n_axes], dtype=GRID_AXIS)
    freq_axis, theta_axis, phi_axis = np.split(axes, [shape[0], shape[0] + shape[1]])

    values = np.frombuffer(content[n_header + n_axes :], dtype=GRID_VALUE).reshape(shape)

    return box.create_box(
        "farfield",
        theta_axis=theta_axis.astype(float),
        phi_axis=phi_axis.astype(float),
        freq_axis=freq_axis.astype(float),
        values=values.astype(complex),
        normalization=normalization,
    )


@typechecked
def write_peak_track(track: box.PeakTrackBox, output_file: str) -> str:
    """
    Function for writing the tracked beam peak to a CSV file.

    Parameters
    ----------
    track : lcris.core.box.PeakTrackBox
        Box with the tracked peak.
    output_file : str
        Path of the CSV file.

    Returns
    -------
    str
        Path of the CSV file.
    """

    table = pd.DataFrame(
        {
            "freq_hz": track.freq_axis,
            "theta_pk_deg": track.theta_pk,
            "phi_pk_deg": track.phi_pk,
            "magnitude": track.magnitude,
            "at_edge": np.asarray(track.at_edge, dtype=int),
        }
    )

    return write_table(table, output_file)


@typechecked
def write_spectrum(spectrum: box.EfficiencyBox, output_file: str) -> str:
    """
    Function for writing an efficiency spectrum to a CSV file.

    Parameters
    ----------
    spectrum : lcris.core.box.EfficiencyBox
        Box with the efficiency spectrum.
    output_file : str
        Path of the CSV file.

    Returns
    -------
    str
        Path of the CSV file.
    """

    n_freq = spectrum.freq_axis.size

    mag_db = spectrum.mag_db if spectrum.mag_db is not None else np.full(n_freq, np.nan)
    flagged = spectrum.flagged if spectrum.flagged is not None else np.zeros(n_freq, dtype=bool)

    table = pd.DataFrame(
        {
            "freq_hz": spectrum.freq_axis,
            "eta": spectrum.eta,
            "theta_pk_deg": spectrum.theta_track,
            "mag_db": mag_db,
            "flagged": np.asarray(flagged, dtype=int),
        }
    )

    return write_table(table, output_file)


@typechecked
def write_layout(layout: box.LayoutBox, output_file: str) -> str:
    """
    Function for writing the element positions to a CSV file.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    output_file : str
        Path of the CSV file.

    Returns
    -------
    str
        Path of the CSV file.
    """

    table = pd.DataFrame(
        {
            "index": np.arange(layout.n_elements),
            "x_m": layout.positions[:, 0],
            "y_m": layout.positions[:, 1],
            "column": layout.column_of,
        }
    )

    return write_table(table, output_file)


@typechecked
def write_tolerance(
    layout: box.LayoutBox, field: box.ToleranceBox, output_file: str
) -> str:
    """
    Function for writing a thickness field to a CSV file.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    field : lcris.core.box.ToleranceBox
        Box with the thickness field.
    output_file : str
        Path of the CSV file.

    Returns
    -------
    str
        Path of the CSV file.
    """

    table = pd.DataFrame(
        {
            "index": np.arange(layout.n_elements),
            "x_m": layout.positions[:, 0],
            "y_m": layout.positions[:, 1],
            "t_lc_m": field.t_lc,
        }
    )

    return write_table(table, output_file)


@typechecked
def write_profile(
    profile: box.ProfileBox, voltages: Optional[np.ndarray], output_file: str
) -> str:
    """
    Function for writing a phase profile and the bias voltages to a
    CSV file.

    Parameters
    ----------
    profile : lcris.core.box.ProfileBox
        Box with the phase profile.
    voltages : np.ndarray, None
        RMS bias voltage per element (V). The column is filled with
        NaN if set to ``None``.
    output_file : str
        Path of the CSV file.

    Returns
    -------
    str
        Path of the CSV file.
    """

    if voltages is None:
        voltages = np.full(profile.phase.size, np.nan)

    table = pd.DataFrame(
        {
            "element": np.arange(profile.phase.size),
            "phase_deg": profile.phase,
            "voltage_v": voltages,
        }
    )

    return write_table(table, output_file)


@typechecked
def write_iterate_log(
    log: List[Tuple[int, int, float, float]], output_file: str, mode: str = "column"
) -> str:
    """
    Function for writing the iterate log of the bias optimization to
    a CSV file.

    Parameters
    ----------
    log : list(tuple(int, int, float, float))
        Sweep, coordinate, voltage (V) and power (dB) after each
        coordinate update.
    output_file : str
        Path of the CSV file.
    mode : str
        Optimization mode ('column' or 'element'), used as the name
        of the coordinate column.

    Returns
    -------
    str
        Path of the CSV file.
    """

    table = pd.DataFrame(log, columns=["sweep", mode, "voltage", "power_db"])

    return write_table(table, output_file)


def _format_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))

    if isinstance(value, (int, np.integer)):
        return str(int(value))

    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % value

    if isinstance(value, (tuple, list, np.ndarray)):
        return ", ".join(_format_value(item) for item in value)

    return str(value)


@typechecked
def write_report(report: Dict[str, Any], output_file: str) -> str:
    """
    Function for writing a report with one ``key: value`` line per
    entry to a text file.

    Parameters
    ----------
    report : dict
        Dictionary with the report entries.
    output_file : str
        Path of the text file.

    Returns
    -------
    str
        Path of the text file.
    """

    out_folder = os.path.dirname(output_file)

    if out_folder:
        os.makedirs(out_folder, exist_ok=True)

    with open(output_file, "w", encoding="utf-8", newline="\n") as out_file:
        for key, value in report.items():
            out_file.write(f"{key}: {_format_value(value)}\n")

    return output_file
