"""
Utility functions for the voltage tuning of the liquid crystal and
for the response-time and power estimates.
"""

import math

from typing import Tuple, Union

import numpy as np

from typeguard import typechecked

from lcris.core import box


# Relative margin below eps_par that bounds the invertible range
EPS_MARGIN = 1e-6

# Relative tolerance for clipping targets onto the reachable interval
CLIP_TOL = 1e-12


def _as_output(values: np.ndarray) -> Union[float, np.ndarray]:
    if values.ndim == 0:
        return float(values)

    return values


@typechecked
def check_material(material: box.LcMaterialBox) -> None:
    """
    Function for validating the parameters of a liquid crystal
    mixture.

    Parameters
    ----------
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.

    Returns
    -------
    NoneType
        None
    """

    if not material.eps_par > material.eps_perp > 1.0:
        raise ValueError(
            f"The permittivities should obey eps_par > eps_perp > 1 "
            f"(eps_perp = {material.eps_perp}, eps_par = {material.eps_par})."
        )

    for key in ["tan_perp", "tan_par"]:
        value = getattr(material, key)

        if not 0.0 < value < 1.0:
            raise ValueError(
                f"The loss tangent {key} = {value} should be in the range (0, 1)."
            )

    if material.v_threshold < 0.0:
        raise ValueError(
            f"The threshold voltage should not be negative "
            f"(v_threshold = {material.v_threshold} V)."
        )

    if material.v_scale <= 0.0:
        raise ValueError(
            f"The saturation voltage scale should be positive "
            f"(v_scale = {material.v_scale} V)."
        )


@typechecked
def check_stack(stack: box.StackBox) -> None:
    """
    Function for validating the glass and conductor stack.

    Parameters
    ----------
    stack : lcris.core.box.StackBox
        Box with the stack materials.

    Returns
    -------
    NoneType
        None
    """

    if stack.eps_glass <= 1.0:
        raise ValueError(
            f"The glass permittivity should be larger than 1 "
            f"(eps_glass = {stack.eps_glass})."
        )

    if not 0.0 <= stack.tan_glass < 1.0:
        raise ValueError(
            f"The glass loss tangent should be in the range [0, 1) "
            f"(tan_glass = {stack.tan_glass})."
        )

    for key in ["t_glass", "t_gold"]:
        value = getattr(stack, key)

        if value <= 0.0:
            raise ValueError(f"The thickness {key} = {value} m should be positive.")


@typechecked
def mixing_fraction(
    material: box.LcMaterialBox, v_bias: Union[float, np.ndarray]
) -> Union[float, np.ndarray]:
    """
    Function for calculating the fraction by which the LC director is
    rotated from the perpendicular towards the parallel orientation.
    The fraction is zero up to the threshold voltage and saturates
    exponentially above it.

    Parameters
    ----------
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    v_bias : float, np.ndarray
        RMS bias voltage (V).

    Returns
    -------
    float, np.ndarray
        Mixing fraction in the range [0, 1).
    """

    v_bias = np.asarray(v_bias, dtype=float)

    if not np.all(np.isfinite(v_bias)):
        raise ValueError("The bias voltage should be a finite number.")

    if np.any(v_bias < 0.0):
        raise ValueError(
            f"The bias voltage should not be negative (minimum "
            f"value = {np.amin(v_bias)} V)."
        )

    v_drive = np.clip(v_bias - material.v_threshold, 0.0, None)

    return _as_output(-np.expm1(-v_drive / material.v_scale))


@typechecked
def lc_permittivity(
    material: box.LcMaterialBox, v_bias: Union[float, np.ndarray]
) -> Tuple[Union[float, np.ndarray], Union[float, np.ndarray]]:
    """
    Function for calculating the relative permittivity and loss
    tangent of the LC at a given bias voltage. Both quantities are
    interpolated between the perpendicular and parallel values with
    the same mixing fraction.

    Parameters
    ----------
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    v_bias : float, np.ndarray
        RMS bias voltage (V).

    Returns
    -------
    float, np.ndarray
        Relative permittivity.
    float, np.ndarray
        Loss tangent.
    """

    s_mix = np.asarray(mixing_fraction(material, v_bias))

    eps_lc = material.eps_perp + (material.eps_par - material.eps_perp) * s_mix
    tan_lc = material.tan_perp + (material.tan_par - material.tan_perp) * s_mix

    return _as_output(eps_lc), _as_output(tan_lc)


@typechecked
def permittivity_range(material: box.LcMaterialBox) -> Tuple[float, float]:
    """
    Function for returning the interval of permittivities that can be
    converted into a bias voltage.

    Parameters
    ----------
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.

    Returns
    -------
    float
        Lower limit, which is the perpendicular permittivity.
    float
        Upper limit, which is the parallel permittivity reduced
        by ``EPS_MARGIN``.
    """

    return float(material.eps_perp), float(material.eps_par * (1.0 - EPS_MARGIN))


@typechecked
def invert_permittivity(
    material: box.LcMaterialBox, eps_target: Union[float, np.ndarray]
) -> Union[float, np.ndarray]:
    """
    Function for calculating the bias voltage for which the LC has a
    given permittivity. The threshold voltage is returned for the
    perpendicular permittivity.

    Parameters
    ----------
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    eps_target : float, np.ndarray
        Target relative permittivity.

    Returns
    -------
    float, np.ndarray
        RMS bias voltage (V).
    """

    eps_min, eps_max = permittivity_range(material)

    eps_target = np.asarray(eps_target, dtype=float)

    outside = (eps_target < eps_min * (1.0 - CLIP_TOL)) | (
        eps_target > eps_max * (1.0 + CLIP_TOL)
    )

    if np.any(outside):
        raise ValueError(
            f"The target permittivity {eps_target[outside].ravel()[0]} is "
            f"outside the reachable range [{eps_min}, {eps_max}]."
        )

    eps_target = np.clip(eps_target, eps_min, eps_max)

    s_mix = (eps_target - material.eps_perp) / (material.eps_par - material.eps_perp)

    v_bias = material.v_threshold - material.v_scale * np.log1p(-s_mix)

    return _as_output(v_bias)


@typechecked
def calibrate_v_scale(
    v_threshold: float, v_max: float = 20.0, s_max: float = 0.99
) -> float:
    """
    Function for calculating the saturation voltage scale for which
    the mixing fraction reaches ``s_max`` at ``v_max``.

    Parameters
    ----------
    v_threshold : float
        Threshold voltage (V).
    v_max : float
        Maximum drive voltage (V).
    s_max : float
        Mixing fraction at the maximum drive voltage.

    Returns
    -------
    float
        Saturation voltage scale (V).
    """

    if v_max <= v_threshold:
        raise ValueError(
            f"The maximum voltage ({v_max} V) should be larger than "
            f"the threshold voltage ({v_threshold} V)."
        )

    if not 0.0 < s_max < 1.0:
        raise ValueError(f"The argument of s_max = {s_max} should be in (0, 1).")

    return (v_max - v_threshold) / (-math.log1p(-s_max))


@typechecked
def response_times(
    base: box.ResponseBaseBox, t_lc: Union[float, np.ndarray]
) -> Tuple[Union[float, np.ndarray], Union[float, np.ndarray]]:
    """
    Function for scaling the switch-on and switch-off times of the LC
    quadratically with the layer thickness.

    Parameters
    ----------
    base : lcris.core.box.ResponseBaseBox
        Box with the response times at the reference thickness.
    t_lc : float, np.ndarray
        LC thickness (m).

    Returns
    -------
    float, np.ndarray
        Switch-on time (s).
    float, np.ndarray
        Switch-off time (s).
    """

    t_lc = np.asarray(t_lc, dtype=float)

    if np.any(t_lc <= 0.0):
        raise ValueError(
            f"The LC thickness should be positive (minimum "
            f"value = {np.amin(t_lc)} m)."
        )

    scaling = (t_lc / base.t_lc_ref) ** 2

    return _as_output(base.tau_on_ref * scaling), _as_output(base.tau_off_ref * scaling)


@typechecked
def array_power(p_element: float, n_elements: int) -> float:
    """
    Function for calculating the power consumption of the full
    surface from the average power per element.

    Parameters
    ----------
    p_element : float
        Average power consumption of a single element (W).
    n_elements : int
        Number of elements.

    Returns
    -------
    float
        Total power consumption (W).
    """

    if p_element < 0.0:
        raise ValueError(
            f"The power per element should not be negative ({p_element} W)."
        )

    if n_elements < 1:
        raise ValueError(
            f"The number of elements should be at least 1 ({n_elements})."
        )

    return p_element * n_elements
