"""
Module with functionalities for synthesizing the phase profile of a
steered beam and for converting phases into bias voltages.
"""

import warnings

from typing import Optional, Tuple, Union

import numpy as np

from typeguard import typechecked

from lcris.analysis.scattering import check_wave, direction_cosines
from lcris.core import box, constants
from lcris.util import line_util, material_util


@typechecked
def synthesize_profile(
    layout: box.LayoutBox,
    target: Tuple[float, float],
    wave: box.WaveBox,
    dphi_max: float = 360.0,
    column_constrained: bool = False,
    wrapped: bool = True,
) -> box.ProfileBox:
    """
    Function for calculating the progressive phase profile that
    reflects the incident plane wave into the target direction.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    target : tuple(float, float)
        Azimuth and elevation angle of the reflected beam (deg).
    wave : lcris.core.box.WaveBox
        Box with the incident plane wave. The frequency of the
        wave is used as design frequency.
    dphi_max : float
        Modulus (deg) with which the phases are wrapped.
    column_constrained : bool
        Assign the same phase to all elements of a column. The phase
        is evaluated at the mean x position of the column and the
        phase gradient along y is dropped.
    wrapped : bool
        Wrap the phases into the range [0, ``dphi_max``).

    Returns
    -------
    lcris.core.box.ProfileBox
        Box with the phase profile (deg).
    """

    check_wave(wave)

    if abs(target[0]) >= 90.0 or abs(target[1]) >= 90.0:
        raise ValueError(
            f"The target angles should be in the range (-90, 90) deg "
            f"(theta_r = {target[0]}, phi_r = {target[1]})."
        )

    if dphi_max <= 0.0:
        raise ValueError(f"The phase modulus should be positive ({dphi_max} deg).")

    profile_warnings = []

    if wrapped and dphi_max < 360.0:
        message = (
            f"The phase modulus of {dphi_max} deg is smaller than 360 deg "
            f"so the profile does not cover a full phase cycle."
        )

        warnings.warn(message)
        profile_warnings.append(message)

    wavelength = constants.LIGHT / wave.frequency

    u_target, v_target = direction_cosines(target[0], target[1])
    u_inc, v_inc = direction_cosines(wave.theta_inc, wave.phi_inc)

    x_pos = layout.positions[:, 0]
    y_pos = layout.positions[:, 1]

    if column_constrained:
        x_column = np.array(
            [np.mean(x_pos[layout.column_of == i]) for i in range(layout.cols)]
        )

        x_pos = x_column[layout.column_of]
        y_pos = np.zeros_like(y_pos)

    phase = (
        -360.0
        / wavelength
        * (x_pos * (u_target - u_inc) + y_pos * (v_target - v_inc))
    )

    if wrapped:
        phase = np.mod(phase, dphi_max)

    return box.create_box(
        "profile",
        phase=phase,
        wrapped=wrapped,
        target=target,
        f_design=wave.frequency,
        dphi_max=dphi_max,
        column_constrained=column_constrained,
        warnings=profile_warnings,
        incidence=(wave.theta_inc, wave.phi_inc),
    )


@typechecked
def profile_reflection(profile: box.ProfileBox, freq_axis: np.ndarray) -> np.ndarray:
    """
    Function for calculating the reflection coefficients of ideal
    lossless delay lines that realize the phase profile at the
    design frequency. The phase of a delay line is proportional to
    the frequency.

    Parameters
    ----------
    profile : lcris.core.box.ProfileBox
        Box with the phase profile.
    freq_axis : np.ndarray
        Frequencies (Hz).

    Returns
    -------
    np.ndarray
        Reflection coefficients with shape (n_freq, n_elements).
    """

    scaling = freq_axis[:, np.newaxis] / profile.f_design

    return np.exp(1j * np.radians(profile.phase[np.newaxis, :]) * scaling)


@typechecked
def phase_window(
    material: box.LcMaterialBox,
    stack: box.StackBox,
    line: box.LineBox,
    t_lc: np.ndarray,
    frequency: float,
    v_max: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Function for calculating the range of relative phases that the
    elements can realize at their LC thickness.

    Parameters
    ----------
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    t_lc : np.ndarray
        LC thickness per element (m).
    frequency : float
        Frequency (Hz).
    v_max : float, None
        Maximum bias voltage (V). The phase is limited by the
        invertible permittivity range if set to ``None``.

    Returns
    -------
    np.ndarray
        Smallest relative phase per element (deg).
    np.ndarray
        Largest relative phase per element (deg).
    """

    eps_min, eps_max = material_util.permittivity_range(material)

    if v_max is not None:
        eps_max = min(eps_max, material_util.lc_permittivity(material, v_max)[0])

    phase_ref = line_util.reference_phase(line, material, stack, frequency)

    limits = []

    for eps_lc in [eps_min, eps_max]:
        eps_eff, _ = line_util.effective_permittivity(line, eps_lc, 0.0, stack, t_lc)
        limits.append(line_util.round_trip_phase(line, eps_eff, frequency) - phase_ref)

    return limits[0], limits[1]


@typechecked
def phases_to_voltages(
    profile: box.ProfileBox,
    material: box.LcMaterialBox,
    stack: box.StackBox,
    line: box.LineBox,
    t_lc_assumed: np.ndarray,
    v_max: Optional[float] = 20.0,
) -> np.ndarray:
    """
    Function for calculating the bias voltages that realize the
    phase profile at the design frequency. The target phases are
    shifted by multiples of 360 deg into the phase window of each
    element.

    Parameters
    ----------
    profile : lcris.core.box.ProfileBox
        Box with the phase profile.
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    t_lc_assumed : np.ndarray
        LC thickness per element (m) that is assumed for the
        conversion.
    v_max : float, None
        Maximum bias voltage (V). The full permittivity range of the
        LC is used if set to ``None``.

    Returns
    -------
    np.ndarray
        RMS bias voltage per element (V).
    """

    if t_lc_assumed.shape != profile.phase.shape:
        raise ValueError(
            f"The number of thickness values ({t_lc_assumed.size}) is not "
            f"equal to the number of phases ({profile.phase.size})."
        )

    frequency = profile.f_design

    phase_low, phase_high = phase_window(
        material, stack, line, t_lc_assumed, frequency, v_max=v_max
    )

    phase = phase_low + np.mod(profile.phase - phase_low, 360.0)

    # Phases just above the upper limit are reached by rounding
    unreachable = phase > phase_high + 1e-9

    if np.any(unreachable):
        raise ValueError(
            f"The phase of elements {np.flatnonzero(unreachable).tolist()} "
            f"is outside the phase window of the delay lines."
        )

    phase = np.minimum(phase, phase_high)

    phase_ref = line_util.reference_phase(line, material, stack, frequency)
    phase_scale = 2.0 * 360.0 * frequency / constants.LIGHT * line.l_phys

    eps_eff = ((phase + phase_ref) / phase_scale) ** 2

    q_fill = line_util.filling_factor(line, t_lc_assumed)
    eps_loaded = (eps_eff - (1.0 - q_fill) * stack.eps_glass) / q_fill
    eps_lc = 1.0 + (eps_loaded - 1.0) / line_util.gap_loading(line, t_lc_assumed)

    voltages = np.asarray(material_util.invert_permittivity(material, eps_lc))

    if v_max is not None:
        voltages = np.minimum(voltages, v_max)

    return voltages


@typechecked
def squint_predict(
    profile: box.ProfileBox, frequency: Union[float, np.ndarray]
) -> Tuple[Union[float, np.ndarray], bool]:
    """
    Function for predicting the azimuth angle of the beam peak at
    a different frequency than the design frequency. Wrapped
    profiles steer like a grating with a period that is fixed in
    space, while unwrapped profiles act as true time delays.

    Parameters
    ----------
    profile : lcris.core.box.ProfileBox
        Box with the phase profile.
    frequency : float, np.ndarray
        Frequency (Hz).

    Returns
    -------
    float, np.ndarray
        Azimuth angle of the beam peak (deg).
    bool
        Flag that is set if the beam has left the visible region,
        in which case the angle is set to +/-90 deg.
    """

    if not profile.wrapped:
        angle = np.full(np.shape(frequency), profile.target[0])

        if angle.ndim == 0:
            return float(angle), False

        return angle, False

    u_inc = np.sin(np.radians(profile.incidence[0]))
    u_target = np.sin(np.radians(profile.target[0]))

    u_peak = u_inc + (u_target - u_inc) * profile.f_design / np.asarray(frequency)

    flag = bool(np.any(np.abs(u_peak) > 1.0))

    if flag:
        warnings.warn(
            "The predicted beam direction is outside the visible "
            "region and has been clamped to 90 deg."
        )

    angle = np.degrees(np.arcsin(np.clip(u_peak, -1.0, 1.0)))

    if angle.ndim == 0:
        return float(angle), flag

    return angle, flag
