"""
Module with functionalities for calculating the aperture efficiency,
the bandwidth, and the loss budget of the surface.
"""

import math
import warnings

from typing import Dict, Optional, Tuple, Union

import numpy as np

from typeguard import typechecked

from lcris.analysis import scattering
from lcris.core import box, constants
from lcris.util import layout_util, line_util, material_util


@typechecked
def track_peak(
    grid: box.FarFieldBox, near: Tuple[float, float], window: float = 5.0
) -> box.PeakTrackBox:
    """
    Function for following the beam peak across the frequency axis.
    At each frequency, the maximum is searched within ``window``
    around the peak of the previous frequency, starting at ``near``.
    The track is flagged if a maximum lies on the border of the
    search window, which means that the beam moved further than
    the window between two frequencies.

    Parameters
    ----------
    grid : lcris.core.box.FarFieldBox
        Box with the far field or RCS.
    near : tuple(float, float)
        Azimuth and elevation angle (deg) where the search starts.
    window : float
        Half-width of the search window (deg).

    Returns
    -------
    lcris.core.box.PeakTrackBox
        Box with the tracked peak.
    """

    steps = [
        np.amin(np.diff(axis))
        for axis in [grid.theta_axis, grid.phi_axis]
        if axis.size > 1
    ]

    if len(steps) > 0 and window <= min(steps):
        raise ValueError(
            f"The search window ({window} deg) should be larger than "
            f"the angular step of the grid ({min(steps)} deg)."
        )

    n_freq = grid.freq_axis.size

    theta_pk = np.zeros(n_freq)
    phi_pk = np.zeros(n_freq)
    magnitude = np.zeros(n_freq)
    at_edge = np.zeros(n_freq, dtype=bool)

    center = near

    for i in range(n_freq):
        theta_idx = np.flatnonzero(np.abs(grid.theta_axis - center[0]) <= window)
        phi_idx = np.flatnonzero(np.abs(grid.phi_axis - center[1]) <= window)

        if theta_idx.size == 0:
            theta_idx = np.array([np.argmin(np.abs(grid.theta_axis - center[0]))])

        if phi_idx.size == 0:
            phi_idx = np.array([np.argmin(np.abs(grid.phi_axis - center[1]))])

        sub_grid = np.abs(grid.values[i][np.ix_(theta_idx, phi_idx)])

        j_theta, j_phi = np.unravel_index(np.argmax(sub_grid), sub_grid.shape)

        edge_theta = theta_idx.size > 1 and j_theta in [0, theta_idx.size - 1]
        edge_phi = phi_idx.size > 1 and j_phi in [0, phi_idx.size - 1]

        theta_pk[i] = grid.theta_axis[theta_idx[j_theta]]
        phi_pk[i] = grid.phi_axis[phi_idx[j_phi]]
        magnitude[i] = sub_grid[j_theta, j_phi]
        at_edge[i] = edge_theta or edge_phi

        center = (theta_pk[i], phi_pk[i])

    flag = bool(np.any(at_edge))

    if flag:
        warnings.warn(
            f"The beam peak is located on the border of the search window "
            f"at {np.sum(at_edge)} frequencies. The search window of "
            f"{window} deg may be too small to follow the beam."
        )

    return box.create_box(
        "peaktrack",
        freq_axis=grid.freq_axis,
        theta_pk=theta_pk,
        phi_pk=phi_pk,
        magnitude=magnitude,
        at_edge=at_edge,
        flag=flag,
    )


@typechecked
def efficiency_from_simulation(
    rcs_grid: box.FarFieldBox,
    layout: box.LayoutBox,
    near: Tuple[float, float],
    window: float = 5.0,
) -> box.EfficiencyBox:
    """
    Function for calculating the aperture efficiency from the RCS
    of the surface at the tracked beam peak. The transmitter angles
    are the incidence angles of the RCS grid and the receiver
    angles are the tracked peak angles.

    Parameters
    ----------
    rcs_grid : lcris.core.box.FarFieldBox
        Box with the RCS (m2).
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    near : tuple(float, float)
        Target direction (deg) at which the peak tracking starts.
    window : float
        Half-width of the search window (deg).

    Returns
    -------
    lcris.core.box.EfficiencyBox
        Box with the aperture efficiency.
    """

    if rcs_grid.normalization != "rcs_m2":
        raise ValueError(
            f"The grid should have the 'rcs_m2' normalization instead "
            f"of '{rcs_grid.normalization}'."
        )

    track = track_peak(rcs_grid, near, window=window)

    theta_rx = track.theta_pk.copy()
    phi_rx = track.phi_pk.copy()
    rcs = track.magnitude.copy()

    # Samples without a peak are evaluated at the target direction
    flagged = np.zeros(rcs_grid.freq_axis.size, dtype=bool)

    for i in range(rcs_grid.freq_axis.size):
        if np.ptp(rcs_grid.values[i]) <= 1e-12 * np.amax(np.abs(rcs_grid.values[i])):
            j_theta = np.argmin(np.abs(rcs_grid.theta_axis - near[0]))
            j_phi = np.argmin(np.abs(rcs_grid.phi_axis - near[1]))

            theta_rx[i] = rcs_grid.theta_axis[j_theta]
            phi_rx[i] = rcs_grid.phi_axis[j_phi]
            rcs[i] = rcs_grid.values[i, j_theta, j_phi]
            flagged[i] = True

    if np.any(flagged):
        warnings.warn(
            f"The RCS pattern is flat at {np.sum(flagged)} frequencies. "
            f"The efficiency is evaluated at the target direction."
        )

    # Peaks at grazing angles have no metal-plate reference
    grazing = (np.abs(theta_rx) >= 90.0) | (np.abs(phi_rx) >= 90.0)
    flagged |= grazing

    area = layout_util.aperture_area(layout)

    rcs_plate = scattering.metal_plate_rcs(
        area,
        rcs_grid.theta_inc,
        np.where(grazing, 0.0, theta_rx),
        rcs_grid.phi_inc,
        np.where(grazing, 0.0, phi_rx),
        rcs_grid.freq_axis,
    )

    eta = np.where(grazing, np.nan, rcs / rcs_plate)

    with np.errstate(divide="ignore"):
        mag_db = 10.0 * np.log10(rcs)

    return box.create_box(
        "efficiency",
        freq_axis=rcs_grid.freq_axis,
        eta=eta,
        theta_track=theta_rx,
        phi_track=phi_rx,
        mag_db=mag_db,
        flagged=flagged | track.at_edge,
    )


@typechecked
def reduce_measurement(traces: box.TracesBox) -> box.EfficiencyBox:
    """
    Function for calculating the aperture efficiency from measured
    transmission traces of the surface and a metal plate. The RCS
    of the surface follows from the RCS of the plate in dBsm and
    the difference between the traces.

    Parameters
    ----------
    traces : lcris.core.box.TracesBox
        Box with the traces and the measurement geometry.

    Returns
    -------
    lcris.core.box.EfficiencyBox
        Box with the aperture efficiency. The ``sigma_mp``
        attribute contains the RCS of the plate (m2).
    """

    if traces.s21_ris_db.shape != traces.freq_axis.shape or (
        traces.s21_mp_db.shape != traces.freq_axis.shape
    ):
        raise ValueError("The traces should have the same length as the frequencies.")

    if traces.area_ris <= 0.0 or traces.area_mp <= 0.0:
        raise ValueError(
            f"The areas should be positive (A_RIS = {traces.area_ris} m2, "
            f"A_MP = {traces.area_mp} m2)."
        )

    flagged = ~(np.isfinite(traces.s21_ris_db) & np.isfinite(traces.s21_mp_db))

    if np.any(flagged):
        warnings.warn(
            f"The traces contain {np.sum(flagged)} samples that are "
            f"not finite. These samples are flagged."
        )

    angles = (traces.theta_tx, traces.theta_rx, traces.phi_tx, traces.phi_rx)

    sigma_mp = scattering.metal_plate_rcs(
        traces.area_mp,
        angles[0],
        angles[1],
        angles[2],
        angles[3],
        traces.freq_axis,
    )

    sigma_ris_db = 10.0 * np.log10(sigma_mp) + traces.s21_ris_db - traces.s21_mp_db

    ideal_ris = scattering.metal_plate_rcs(
        traces.area_ris,
        angles[0],
        angles[1],
        angles[2],
        angles[3],
        traces.freq_axis,
    )

    eta = 10.0 ** (sigma_ris_db / 10.0) / ideal_ris
    eta[flagged] = np.nan

    return box.create_box(
        "efficiency",
        freq_axis=traces.freq_axis,
        eta=eta,
        theta_track=np.full(traces.freq_axis.size, traces.theta_rx),
        phi_track=np.full(traces.freq_axis.size, traces.phi_rx),
        mag_db=sigma_ris_db,
        flagged=flagged,
        sigma_mp=sigma_mp,
    )


@typechecked
def traces_from_efficiency(
    spectrum: box.EfficiencyBox,
    angles: Tuple[float, float, float, float],
    area_ris: float,
    area_mp: float,
    s21_mp_db: Union[float, np.ndarray] = 0.0,
) -> box.TracesBox:
    """
    Function for synthesizing the transmission traces of a
    measurement that results in a given efficiency spectrum.

    Parameters
    ----------
    spectrum : lcris.core.box.EfficiencyBox
        Box with the efficiency spectrum.
    angles : tuple(float, float, float, float)
        Angles ``theta_tx``, ``theta_rx``, ``phi_tx``, and ``phi_rx``
        of the measurement geometry (deg).
    area_ris : float
        Aperture area of the surface (m2).
    area_mp : float
        Area of the metal plate (m2).
    s21_mp_db : float, np.ndarray
        Transmission trace of the metal plate (dB).

    Returns
    -------
    lcris.core.box.TracesBox
        Box with the traces and the geometry.
    """

    freq_axis = spectrum.freq_axis

    sigma_ris = spectrum.eta * scattering.metal_plate_rcs(
        area_ris, angles[0], angles[1], angles[2], angles[3], freq_axis
    )

    sigma_mp = scattering.metal_plate_rcs(
        area_mp, angles[0], angles[1], angles[2], angles[3], freq_axis
    )

    s21_mp_db = np.broadcast_to(np.asarray(s21_mp_db, dtype=float), freq_axis.shape)

    s21_ris_db = s21_mp_db + 10.0 * np.log10(sigma_ris) - 10.0 * np.log10(sigma_mp)

    return box.create_box(
        "traces",
        freq_axis=freq_axis,
        s21_ris_db=s21_ris_db,
        s21_mp_db=s21_mp_db.copy(),
        theta_tx=angles[0],
        theta_rx=angles[1],
        phi_tx=angles[2],
        phi_rx=angles[3],
        area_ris=area_ris,
        area_mp=area_mp,
    )


def _edge_crossing(
    freq_1: float, level_1: float, freq_2: float, level_2: float, level: float
) -> float:
    if level_1 == level_2:
        return freq_1

    return freq_1 + (level - level_1) * (freq_2 - freq_1) / (level_2 - level_1)


@typechecked
def bandwidth_3db(
    freq_axis: np.ndarray, magnitude: np.ndarray, scale: str = "power"
) -> box.BandwidthBox:
    """
    Function for calculating the half-power bandwidth around the
    global maximum. The band edges are linearly interpolated in dB
    between the frequency samples.

    Parameters
    ----------
    freq_axis : np.ndarray
        Frequencies (Hz).
    magnitude : np.ndarray
        Magnitude at each frequency.
    scale : str
        Scale of the magnitude ('power', 'field', or 'db').

    Returns
    -------
    lcris.core.box.BandwidthBox
        Box with the band edges, the center frequency (midpoint of
        the edges), and the fractional bandwidth.
    """

    if scale == "power":
        with np.errstate(divide="ignore"):
            mag_db = 10.0 * np.log10(magnitude)

    elif scale == "field":
        with np.errstate(divide="ignore"):
            mag_db = 20.0 * np.log10(np.abs(magnitude))

    elif scale == "db":
        mag_db = np.asarray(magnitude, dtype=float)

    else:
        raise ValueError(
            f"The scale '{scale}' is not supported. Please choose "
            f"'power', 'field', or 'db'."
        )

    finite = np.isfinite(mag_db)

    if not np.any(finite) or np.ptp(mag_db[finite]) <= 1e-12:
        warnings.warn("The spectrum is flat so there is no unique maximum.")

        return box.create_box(
            "bandwidth",
            f_lo=math.nan,
            f_hi=math.nan,
            fractional_bw=math.nan,
            f_center=math.nan,
            flag="flat",
        )

    mag_db = np.where(finite, mag_db, -np.inf)

    i_max = int(np.argmax(mag_db))
    level = mag_db[i_max] - constants.HALF_POWER_DB

    flags = []

    i_lo = i_max
    while i_lo > 0 and mag_db[i_lo - 1] >= level:
        i_lo -= 1

    if i_lo == 0:
        f_lo = float(freq_axis[0])
        flags.append("lower edge outside sweep")
    else:
        f_lo = _edge_crossing(
            freq_axis[i_lo - 1],
            max(mag_db[i_lo - 1], level - 1e3),
            freq_axis[i_lo],
            mag_db[i_lo],
            level,
        )

    i_hi = i_max
    while i_hi < freq_axis.size - 1 and mag_db[i_hi + 1] >= level:
        i_hi += 1

    if i_hi == freq_axis.size - 1:
        f_hi = float(freq_axis[-1])
        flags.append("upper edge outside sweep")
    else:
        f_hi = _edge_crossing(
            freq_axis[i_hi],
            mag_db[i_hi],
            freq_axis[i_hi + 1],
            max(mag_db[i_hi + 1], level - 1e3),
            level,
        )

    flag = None

    if len(flags) > 0:
        flag = ", ".join(flags)
        warnings.warn(f"The bandwidth is one-sided: {flag}.")

    f_center = 0.5 * (f_lo + f_hi)

    return box.create_box(
        "bandwidth",
        f_lo=float(f_lo),
        f_hi=float(f_hi),
        fractional_bw=float((f_hi - f_lo) / f_center),
        f_center=float(f_center),
        flag=flag,
    )


@typechecked
def phase_bandwidth_25pct(
    freq_axis: np.ndarray, dphi: np.ndarray, f_center: float
) -> box.BandwidthBox:
    """
    Function for calculating the band around the center frequency
    in which the differential phase shift deviates at most 25% from
    its value at the center frequency.

    Parameters
    ----------
    freq_axis : np.ndarray
        Frequencies (Hz), strictly increasing.
    dphi : np.ndarray
        Differential phase shift at each frequency (deg).
    f_center : float
        Center frequency (Hz).

    Returns
    -------
    lcris.core.box.BandwidthBox
        Box with the band edges and the fractional bandwidth
        relative to ``f_center``.
    """

    if not freq_axis[0] <= f_center <= freq_axis[-1]:
        raise ValueError(
            f"The center frequency ({f_center} Hz) is outside the "
            f"frequency range ({freq_axis[0]}-{freq_axis[-1]} Hz)."
        )

    dphi_center = float(np.interp(f_center, freq_axis, dphi))
    limit = 0.25 * abs(dphi_center)

    # The center frequency is added as a sample without deviation
    i_center = int(np.searchsorted(freq_axis, f_center))

    if i_center < freq_axis.size and freq_axis[i_center] == f_center:
        freq_band = freq_axis.astype(float)
        deviation = np.abs(dphi - dphi_center)
    else:
        freq_band = np.insert(freq_axis.astype(float), i_center, f_center)
        deviation = np.insert(np.abs(dphi - dphi_center), i_center, 0.0)

    inside = deviation <= limit * (1.0 + 1e-12)

    flags = []

    i_lo = i_center
    while i_lo > 0 and inside[i_lo - 1]:
        i_lo -= 1

    if i_lo == 0:
        f_lo = float(freq_band[0])
        flags.append("lower edge outside sweep")
    else:
        f_lo = _edge_crossing(
            freq_band[i_lo], deviation[i_lo], freq_band[i_lo - 1], deviation[i_lo - 1], limit
        )

    i_hi = i_center
    while i_hi < freq_band.size - 1 and inside[i_hi + 1]:
        i_hi += 1

    if i_hi == freq_band.size - 1:
        f_hi = float(freq_band[-1])
        flags.append("upper edge outside sweep")
    else:
        f_hi = _edge_crossing(
            freq_band[i_hi], deviation[i_hi], freq_band[i_hi + 1], deviation[i_hi + 1], limit
        )

    flag = None

    if len(flags) > 0:
        flag = ", ".join(flags)
        warnings.warn(f"The phase bandwidth is not bounded by the sweep: {flag}.")

    return box.create_box(
        "bandwidth",
        f_lo=float(f_lo),
        f_hi=float(f_hi),
        fractional_bw=float((f_hi - f_lo) / f_center),
        f_center=f_center,
        flag=flag,
    )


@typechecked
def loss_budget(eta: float, losses: Dict[str, float]) -> Dict[str, float]:
    """
    Function for closing the power budget of the surface. The
    residual is the fraction of the incident power that is neither
    reflected into the beam nor attributed to a loss mechanism.

    Parameters
    ----------
    eta : float
        Aperture efficiency.
    losses : dict
        Fraction of the incident power per loss mechanism.

    Returns
    -------
    dict
        Dictionary with the efficiency, the loss fractions, and
        the ``residual``.
    """

    if eta < 0.0:
        raise ValueError(f"The efficiency should not be negative ({eta}).")

    for key, value in losses.items():
        if value < 0.0:
            raise ValueError(f"The loss fraction of '{key}' should not be negative ({value}).")

    residual = 1.0 - eta - sum(losses.values())

    if residual < -1e-12:
        raise ValueError(
            f"The loss fractions add up to {sum(losses.values()):.4f}, which "
            f"exceeds the available fraction of 1 - eta = {1.0 - eta:.4f}."
        )

    budget = {"eta": eta}
    budget.update(losses)
    budget["residual"] = max(residual, 0.0)

    return budget


@typechecked
def element_loss_budget(
    material: box.LcMaterialBox,
    stack: box.StackBox,
    line: box.LineBox,
    radiator: Optional[box.RadiatorBox],
    v_bias: float,
    t_lc: float,
    frequency: float,
) -> Dict[str, float]:
    """
    Function for splitting the power that is absorbed by an element
    over the LC, the glass, the conductor and the radiator. The
    absorbed power is divided in proportion to the attenuation (dB)
    of each mechanism.

    Parameters
    ----------
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    radiator : lcris.core.box.RadiatorBox, None
        Box with the radiator.
    v_bias : float
        RMS bias voltage (V).
    t_lc : float
        LC thickness (m).
    frequency : float
        Frequency (Hz).

    Returns
    -------
    dict
        Dictionary with the ``reflected`` power fraction and the
        absorbed fractions ``lc``, ``glass``, ``conductor``, and
        ``radiator``.
    """

    eps_lc, tan_lc = material_util.lc_permittivity(material, v_bias)
    eps_eff, _ = line_util.effective_permittivity(line, eps_lc, tan_lc, stack, t_lc)
    q_fill = line_util.filling_factor(line, t_lc)

    diel_scale = (
        2.0
        * line.l_phys
        * constants.DIEL_LOSS
        * math.sqrt(eps_eff)
        * frequency
        / constants.LIGHT
    )

    loss_db = {
        "lc": diel_scale * q_fill * tan_lc,
        "glass": diel_scale * (1.0 - q_fill) * stack.tan_glass,
        "conductor": 2.0 * line.l_phys * line.alpha_extra,
        "radiator": 0.0,
    }

    if radiator is not None:
        loss_db["radiator"] = float(scattering.radiator_loss(radiator, frequency))

    total_db = sum(loss_db.values())

    reflected = 10.0 ** (-total_db / 10.0)

    budget = {"reflected": reflected}

    for key, value in loss_db.items():
        if total_db > 0.0:
            budget[key] = (1.0 - reflected) * value / total_db
        else:
            budget[key] = 0.0

    return budget
