"""
Utility functions for the delay-line phase shifter.
"""

import math

from typing import Dict, Optional, Tuple, Union

import numpy as np

from typeguard import typechecked

from lcris.core import box, constants
from lcris.util import material_util


@typechecked
def check_line(line: box.LineBox) -> None:
    """
    Function for validating the parameters of a delay line.

    Parameters
    ----------
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.

    Returns
    -------
    NoneType
        None
    """

    if line.l_phys <= 0.0:
        raise ValueError(f"The line length should be positive ({line.l_phys} m).")

    if line.t_lc_nominal <= 0.0:
        raise ValueError(
            f"The nominal LC thickness should be positive ({line.t_lc_nominal} m)."
        )

    if not 0.0 < line.fill_max <= 1.0:
        raise ValueError(
            f"The maximum filling factor should be in (0, 1] ({line.fill_max})."
        )

    # t_half = 0 is the pure-LC limit
    if line.t_half < 0.0:
        raise ValueError(
            f"The half-confinement thickness should not be negative ({line.t_half} m)."
        )

    if line.alpha_extra < 0.0:
        raise ValueError(
            f"The additional attenuation should not be negative "
            f"({line.alpha_extra} dB/m)."
        )

    if line.gap_exponent < 0.0:
        raise ValueError(
            f"The gap-loading exponent should not be negative ({line.gap_exponent})."
        )


@typechecked
def filling_factor(
    line: box.LineBox, t_lc: Union[float, np.ndarray]
) -> Union[float, np.ndarray]:
    """
    Function for calculating the fraction of the line's field
    energy that is confined in the LC layer.

    Parameters
    ----------
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    t_lc : float, np.ndarray
        LC thickness (m).

    Returns
    -------
    float, np.ndarray
        Filling factor.
    """

    t_lc = np.asarray(t_lc, dtype=float)

    if np.any(t_lc <= 0.0):
        raise ValueError(
            f"The LC thickness should be positive (minimum value = {np.amin(t_lc)} m)."
        )

    q_fill = line.fill_max * t_lc / (t_lc + line.t_half)

    if q_fill.ndim == 0:
        return float(q_fill)

    return q_fill


@typechecked
def gap_loading(
    line: box.LineBox, t_lc: Union[float, np.ndarray]
) -> Union[float, np.ndarray]:
    """
    Function for calculating the factor with which the LC
    susceptibility is scaled for a deviation from the nominal
    LC thickness.

    Parameters
    ----------
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    t_lc : float, np.ndarray
        LC thickness (m).

    Returns
    -------
    float, np.ndarray
        Gap-loading factor.
    """

    t_lc = np.asarray(t_lc, dtype=float)

    if np.any(t_lc <= 0.0):
        raise ValueError(
            f"The LC thickness should be positive (minimum value = {np.amin(t_lc)} m)."
        )

    loading = (line.t_lc_nominal / t_lc) ** line.gap_exponent

    if loading.ndim == 0:
        return float(loading)

    return loading


@typechecked
def effective_permittivity(
    line: box.LineBox,
    eps_lc: Union[float, np.ndarray],
    tan_lc: Union[float, np.ndarray],
    stack: box.StackBox,
    t_lc: Union[float, np.ndarray],
) -> Tuple[Union[float, np.ndarray], Union[float, np.ndarray]]:
    """
    Function for calculating the effective permittivity and loss
    tangent of the line as a mix of the LC and the glass, weighted
    with the filling factor.

    The electric susceptibility of the LC, ``eps_lc - 1``, is scaled
    with the gap-loading factor ``(t_lc_nominal / t_lc) **
    gap_exponent`` of the line. A thinner gap concentrates the
    field of the defected ground in the LC so the tunable part of
    the permittivity weighs more. The factor equals one at the
    nominal thickness and for a zero exponent, which is the plain
    filling-factor mix.

    Parameters
    ----------
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    eps_lc : float, np.ndarray
        Relative permittivity of the LC.
    tan_lc : float, np.ndarray
        Loss tangent of the LC.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    t_lc : float, np.ndarray
        LC thickness (m).

    Returns
    -------
    float, np.ndarray
        Effective relative permittivity.
    float, np.ndarray
        Effective loss tangent.
    """

    if np.any(np.asarray(eps_lc) < 1.0):
        raise ValueError("The LC permittivity should be at least 1.")

    q_fill = filling_factor(line, t_lc)
    eps_loaded = 1.0 + (eps_lc - 1.0) * gap_loading(line, t_lc)

    eps_eff = q_fill * eps_loaded + (1.0 - q_fill) * stack.eps_glass
    tan_eff = q_fill * tan_lc + (1.0 - q_fill) * stack.tan_glass

    return eps_eff, tan_eff


@typechecked
def round_trip_phase(
    line: box.LineBox,
    eps_eff: Union[float, np.ndarray],
    frequency: Union[float, np.ndarray],
) -> Union[float, np.ndarray]:
    """
    Function for calculating the insertion phase of the wave that
    travels to the open end of the line and back.

    Parameters
    ----------
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    eps_eff : float, np.ndarray
        Effective relative permittivity.
    frequency : float, np.ndarray
        Frequency (Hz).

    Returns
    -------
    float, np.ndarray
        Round-trip phase (deg).
    """

    if np.any(np.asarray(frequency) <= 0.0):
        raise ValueError("The frequency should be positive.")

    return 2.0 * 360.0 * frequency / constants.LIGHT * line.l_phys * np.sqrt(eps_eff)


@typechecked
def insertion_loss(
    line: box.LineBox,
    eps_eff: Union[float, np.ndarray],
    tan_eff: Union[float, np.ndarray],
    frequency: Union[float, np.ndarray],
) -> Union[float, np.ndarray]:
    """
    Function for calculating the round-trip insertion loss of the
    line from the dielectric attenuation and the additional
    conductor and substrate attenuation.

    Parameters
    ----------
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    eps_eff : float, np.ndarray
        Effective relative permittivity.
    tan_eff : float, np.ndarray
        Effective loss tangent.
    frequency : float, np.ndarray
        Frequency (Hz).

    Returns
    -------
    float, np.ndarray
        Insertion loss (dB).
    """

    if np.any(np.asarray(frequency) <= 0.0):
        raise ValueError("The frequency should be positive.")

    alpha_diel = (
        constants.DIEL_LOSS * np.sqrt(eps_eff) * tan_eff * frequency / constants.LIGHT
    )

    return 2.0 * line.l_phys * (alpha_diel + line.alpha_extra)


@typechecked
def figure_of_merit(delta_phi_max: float, il_max: float) -> float:
    """
    Function for calculating the figure of merit of a phase shifter.

    Parameters
    ----------
    delta_phi_max : float
        Maximum differential phase shift (deg).
    il_max : float
        Maximum insertion loss (dB).

    Returns
    -------
    float
        Figure of merit (deg/dB).
    """

    if il_max <= 0.0:
        raise ValueError(
            f"The maximum insertion loss should be positive ({il_max} dB)."
        )

    return delta_phi_max / il_max


@typechecked
def compactness(delta_phi_max: float, l_phys: float, frequency: float) -> float:
    """
    Function for calculating the differential phase shift per
    free-space wavelength of line length.

    Parameters
    ----------
    delta_phi_max : float
        Maximum differential phase shift (deg).
    l_phys : float
        Physical length of the line (m).
    frequency : float
        Frequency (Hz).

    Returns
    -------
    float
        Compactness (deg per wavelength).
    """

    if l_phys <= 0.0:
        raise ValueError(f"The line length should be positive ({l_phys} m).")

    if frequency <= 0.0:
        raise ValueError(f"The frequency should be positive ({frequency} Hz).")

    return delta_phi_max * (constants.LIGHT / frequency) / l_phys


@typechecked
def shifter_phase(
    line: box.LineBox,
    material: box.LcMaterialBox,
    stack: box.StackBox,
    v_bias: Union[float, np.ndarray],
    t_lc: Union[float, np.ndarray],
    frequency: Union[float, np.ndarray],
) -> Union[float, np.ndarray]:
    """
    Function for calculating the absolute round-trip phase for a
    bias voltage and LC thickness.

    Parameters
    ----------
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    v_bias : float, np.ndarray
        RMS bias voltage (V).
    t_lc : float, np.ndarray
        LC thickness (m).
    frequency : float, np.ndarray
        Frequency (Hz).

    Returns
    -------
    float, np.ndarray
        Round-trip phase (deg).
    """

    eps_lc, tan_lc = material_util.lc_permittivity(material, v_bias)
    eps_eff, _ = effective_permittivity(line, eps_lc, tan_lc, stack, t_lc)

    return round_trip_phase(line, eps_eff, frequency)


@typechecked
def reference_phase(
    line: box.LineBox,
    material: box.LcMaterialBox,
    stack: box.StackBox,
    frequency: Union[float, np.ndarray],
) -> Union[float, np.ndarray]:
    """
    Function for calculating the phase of the unbiased line with
    the nominal LC thickness, which is the zero point of all
    relative phases.

    Parameters
    ----------
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    frequency : float, np.ndarray
        Frequency (Hz).

    Returns
    -------
    float, np.ndarray
        Round-trip phase (deg).
    """

    return shifter_phase(line, material, stack, 0.0, line.t_lc_nominal, frequency)


@typechecked
def phase_vs_thickness(
    line: box.LineBox,
    material: box.LcMaterialBox,
    stack: box.StackBox,
    v_bias: Union[float, np.ndarray],
    t_lc: Union[float, np.ndarray],
    frequency: Union[float, np.ndarray],
) -> Union[float, np.ndarray]:
    """
    Function for calculating the phase relative to the unbiased
    line with the nominal LC thickness.

    Parameters
    ----------
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    v_bias : float, np.ndarray
        RMS bias voltage (V).
    t_lc : float, np.ndarray
        LC thickness (m).
    frequency : float, np.ndarray
        Frequency (Hz).

    Returns
    -------
    float, np.ndarray
        Relative phase (deg).
    """

    phase = shifter_phase(line, material, stack, v_bias, t_lc, frequency)

    return phase - reference_phase(line, material, stack, frequency)


@typechecked
def thickness_sensitivity(
    line: box.LineBox,
    material: box.LcMaterialBox,
    stack: box.StackBox,
    v_bias: Union[float, np.ndarray],
    t_lc: Union[float, np.ndarray],
    frequency: Union[float, np.ndarray],
) -> Union[float, np.ndarray]:
    """
    Function for calculating the derivative of the round-trip phase
    with respect to the LC thickness.

    Parameters
    ----------
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    v_bias : float, np.ndarray
        RMS bias voltage (V).
    t_lc : float, np.ndarray
        LC thickness (m).
    frequency : float, np.ndarray
        Frequency (Hz).

    Returns
    -------
    float, np.ndarray
        Phase sensitivity (deg/m).
    """

    eps_lc, tan_lc = material_util.lc_permittivity(material, v_bias)
    eps_eff, _ = effective_permittivity(line, eps_lc, tan_lc, stack, t_lc)

    t_lc = np.asarray(t_lc, dtype=float)

    q_fill = filling_factor(line, t_lc)
    loading = gap_loading(line, t_lc)
    eps_loaded = 1.0 + (eps_lc - 1.0) * loading

    dq_dt = line.fill_max * line.t_half / (t_lc + line.t_half) ** 2
    dloading_dt = -line.gap_exponent * loading / t_lc

    deps_dt = (eps_loaded - stack.eps_glass) * dq_dt
    deps_dt = deps_dt + q_fill * (eps_lc - 1.0) * dloading_dt

    phase_scale = 2.0 * 360.0 * frequency / constants.LIGHT * line.l_phys

    return phase_scale * deps_dt / (2.0 * np.sqrt(eps_eff))


@typechecked
def shifter_response(
    line: box.LineBox,
    material: box.LcMaterialBox,
    stack: box.StackBox,
    v_bias: float,
    t_lc: float,
    frequency: float,
) -> box.ShifterBox:
    """
    Function for calculating the round-trip phase and insertion loss
    of the phase shifter.

    Parameters
    ----------
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    v_bias : float
        RMS bias voltage (V).
    t_lc : float
        LC thickness (m).
    frequency : float
        Frequency (Hz).

    Returns
    -------
    lcris.core.box.ShifterBox
        Box with the phase shifter response.
    """

    eps_lc, tan_lc = material_util.lc_permittivity(material, v_bias)
    eps_eff, tan_eff = effective_permittivity(line, eps_lc, tan_lc, stack, t_lc)

    return box.create_box(
        "shifter",
        phase=float(round_trip_phase(line, eps_eff, frequency)),
        insertion_loss=float(insertion_loss(line, eps_eff, tan_eff, frequency)),
        frequency=frequency,
    )


@typechecked
def line_metrics(
    line: box.LineBox,
    material: box.LcMaterialBox,
    stack: box.StackBox,
    frequency: float,
) -> Dict[str, float]:
    """
    Function for calculating the maximum differential phase shift,
    the maximum insertion loss, the figure of merit and the
    compactness of the line at the nominal LC thickness.

    Parameters
    ----------
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    frequency : float
        Frequency (Hz).

    Returns
    -------
    dict
        Dictionary with ``dphi_max`` (deg), ``il_max`` (dB),
        ``fom`` (deg/dB), and ``compactness`` (deg per wavelength).
    """

    responses = []

    for eps_lc, tan_lc in [
        (material.eps_perp, material.tan_perp),
        (material.eps_par, material.tan_par),
    ]:
        eps_eff, tan_eff = effective_permittivity(
            line, eps_lc, tan_lc, stack, line.t_lc_nominal
        )

        responses.append(
            (
                float(round_trip_phase(line, eps_eff, frequency)),
                float(insertion_loss(line, eps_eff, tan_eff, frequency)),
            )
        )

    dphi_max = responses[1][0] - responses[0][0]
    il_max = max(responses[0][1], responses[1][1])

    return {
        "dphi_max": dphi_max,
        "il_max": il_max,
        "fom": figure_of_merit(dphi_max, il_max),
        "compactness": compactness(dphi_max, line.l_phys, frequency),
    }


@typechecked
def calibrate_line(
    target_dphi: float,
    frequency: float,
    material: box.LcMaterialBox,
    stack: box.StackBox,
    fill_max: float = 0.9,
    t_half: float = 1e-6,
    t_lc_nominal: float = 4.6e-6,
    target_fom: Optional[float] = None,
    alpha_extra: float = 0.0,
    gap_exponent: float = 0.0,
) -> box.LineBox:
    """
    Function for solving the line length for which the differential
    phase shift between the two LC orientations equals the target
    value. Optionally, the additional attenuation is solved such
    that the line has the target figure of merit.

    Parameters
    ----------
    target_dphi : float
        Target differential phase shift (deg).
    frequency : float
        Design frequency (Hz).
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    fill_max : float
        Maximum filling factor.
    t_half : float
        Half-confinement thickness (m).
    t_lc_nominal : float
        Nominal LC thickness (m).
    target_fom : float, None
        Target figure of merit (deg/dB). The ``alpha_extra`` argument
        is used if set to ``None``.
    alpha_extra : float
        Additional attenuation (dB/m), only used if ``target_fom``
        is set to ``None``.
    gap_exponent : float
        Exponent of the gap loading of the LC susceptibility. The
        calibration is not affected since the loading factor is one
        at the nominal thickness.

    Returns
    -------
    lcris.core.box.LineBox
        Box with the calibrated delay line.
    """

    if target_dphi <= 0.0:
        raise ValueError(
            f"The target differential phase should be positive ({target_dphi} deg) "
            f"since the line length has to be positive."
        )

    line = box.create_box(
        "line",
        l_phys=1.0,
        t_lc_nominal=t_lc_nominal,
        fill_max=fill_max,
        t_half=t_half,
        alpha_extra=alpha_extra,
        gap_exponent=gap_exponent,
    )

    check_line(line)

    eps_perp, _ = effective_permittivity(
        line, material.eps_perp, material.tan_perp, stack, t_lc_nominal
    )
    eps_par, _ = effective_permittivity(
        line, material.eps_par, material.tan_par, stack, t_lc_nominal
    )

    sqrt_diff = math.sqrt(eps_par) - math.sqrt(eps_perp)

    if sqrt_diff <= 0.0:
        raise ValueError(
            "The line can not be calibrated because the effective "
            "permittivity does not increase with the LC permittivity "
            f"(eps_eff = {eps_perp} and {eps_par})."
        )

    line.l_phys = target_dphi / (2.0 * 360.0 * frequency / constants.LIGHT * sqrt_diff)

    if target_fom is not None:
        if target_fom <= 0.0:
            raise ValueError(f"The target FoM should be positive ({target_fom} deg/dB).")

        line.alpha_extra = 0.0
        il_diel = line_metrics(line, material, stack, frequency)["il_max"]
        il_target = target_dphi / target_fom

        if il_diel > il_target:
            raise ValueError(
                f"The target FoM of {target_fom} deg/dB is not reachable "
                f"because the dielectric loss alone is {il_diel:.3f} dB "
                f"while the loss budget is {il_target:.3f} dB."
            )

        line.alpha_extra = (il_target - il_diel) / (2.0 * line.l_phys)

    return line
