"""
Module with functionalities for calculating the reflection of the
elements, the scattered far field of the surface and the radar
cross section (RCS) of the surface and a metal plate.
"""

import math

from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple, Union

import numpy as np

from typeguard import typechecked

from lcris.core import box, constants
from lcris.core.init import get_config
from lcris.util import line_util, material_util, tolerance_util


# Number of directions that are evaluated in one matrix product
CHUNK_SIZE = 4096


@typechecked
def check_wave(wave: box.WaveBox) -> None:
    """
    Function for validating the incident plane wave.

    Parameters
    ----------
    wave : lcris.core.box.WaveBox
        Box with the plane wave.

    Returns
    -------
    NoneType
        None
    """

    if abs(wave.theta_inc) >= 90.0 or abs(wave.phi_inc) >= 90.0:
        raise ValueError(
            f"The incidence angles should be in the range (-90, 90) deg "
            f"(theta_inc = {wave.theta_inc}, phi_inc = {wave.phi_inc})."
        )

    if wave.frequency <= 0.0:
        raise ValueError(f"The frequency should be positive ({wave.frequency} Hz).")


@typechecked
def direction_cosines(
    theta: Union[float, np.ndarray], phi: Union[float, np.ndarray]
) -> Tuple[Union[float, np.ndarray], Union[float, np.ndarray]]:
    """
    Function for converting the azimuth and elevation angles into
    direction cosines with ``u = sin(theta)`` and
    ``v = sin(phi) cos(theta)``.

    Parameters
    ----------
    theta : float, np.ndarray
        Azimuth angle (deg).
    phi : float, np.ndarray
        Elevation angle (deg).

    Returns
    -------
    float, np.ndarray
        Direction cosine along x.
    float, np.ndarray
        Direction cosine along y.
    """

    theta = np.radians(theta)
    phi = np.radians(phi)

    return np.sin(theta), np.sin(phi) * np.cos(theta)


@typechecked
def element_pattern(
    theta: Union[float, np.ndarray],
    phi: Union[float, np.ndarray],
    ep_exponent: float,
) -> Union[float, np.ndarray]:
    """
    Function for calculating the amplitude pattern of an element,
    ``cos(theta)**e * cos(phi)**e``.

    The pattern is applied once for the incident and once for the
    scattered direction. The far-field functions therefore default
    to ``e = 0.5`` instead of the plain cosine (``e = 1``) so that
    the power of a steered ideal aperture follows the product of
    the four cosines of the bistatic metal-plate RCS. Set
    ``e = 1`` for a cosine amplitude pattern of each pass.

    Parameters
    ----------
    theta : float, np.ndarray
        Azimuth angle (deg).
    phi : float, np.ndarray
        Elevation angle (deg).
    ep_exponent : float
        Exponent of the cosine pattern. Both 0.5 (default of
        ``far_field`` and the scenario files) and 1 are common.

    Returns
    -------
    float, np.ndarray
        Amplitude pattern.
    """

    cos_theta = np.clip(np.cos(np.radians(theta)), 0.0, None)
    cos_phi = np.clip(np.cos(np.radians(phi)), 0.0, None)

    return (cos_theta * cos_phi) ** ep_exponent


@typechecked
def radiator_loss(
    radiator: box.RadiatorBox, frequency: Union[float, np.ndarray]
) -> Union[float, np.ndarray]:
    """
    Function for calculating the loss of the aperture-coupled patch
    radiator. The loss is a Gaussian power window around the center
    frequency with a half-power width of ``bw_frac``.

    Parameters
    ----------
    radiator : lcris.core.box.RadiatorBox
        Box with the radiator parameters.
    frequency : float, np.ndarray
        Frequency (Hz).

    Returns
    -------
    float, np.ndarray
        Radiator loss (dB).
    """

    half_width = 0.5 * radiator.bw_frac * radiator.f0

    return (
        radiator.center_loss_db
        + constants.HALF_POWER_DB * ((frequency - radiator.f0) / half_width) ** 2
    )


@typechecked
def calibrate_radiator(
    material: box.LcMaterialBox,
    stack: box.StackBox,
    line: box.LineBox,
    f0: float,
    eta_target: float = 0.215,
    bw_frac: float = 0.25,
) -> box.RadiatorBox:
    """
    Function for solving the radiator loss at the center frequency
    for which an in-phase surface of unbiased elements with nominal
    LC thickness has the target aperture efficiency at broadside.

    Parameters
    ----------
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    f0 : float
        Center frequency of the radiator (Hz).
    eta_target : float
        Target aperture efficiency.
    bw_frac : float
        Fractional half-power bandwidth of the radiator.

    Returns
    -------
    lcris.core.box.RadiatorBox
        Box with the calibrated radiator.
    """

    if not 0.0 < eta_target <= 1.0:
        raise ValueError(f"The target efficiency should be in (0, 1] ({eta_target}).")

    if bw_frac <= 0.0:
        raise ValueError(f"The fractional bandwidth should be positive ({bw_frac}).")

    response = line_util.shifter_response(
        line, material, stack, material.v_threshold, line.t_lc_nominal, f0
    )

    center_loss = -10.0 * math.log10(eta_target) - response.insertion_loss

    if center_loss < 0.0:
        raise ValueError(
            f"The target efficiency of {eta_target} can not be reached "
            f"because the line loss is already {response.insertion_loss:.3f} dB."
        )

    return box.create_box(
        "radiator", f0=f0, bw_frac=bw_frac, center_loss_db=center_loss
    )


@typechecked
def element_reflection(
    material: box.LcMaterialBox,
    stack: box.StackBox,
    line: box.LineBox,
    v_bias: Union[float, np.ndarray],
    t_lc: Union[float, np.ndarray],
    frequency: Union[float, np.ndarray],
    radiator: Optional[box.RadiatorBox] = None,
    misalignment: Tuple[float, float] = (0.0, 0.0),
) -> Union[complex, np.ndarray]:
    """
    Function for calculating the complex reflection coefficient of
    an element. The phase is relative to the unbiased line with
    nominal LC thickness. The arguments are broadcasted against
    each other.

    Parameters
    ----------
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    v_bias : float, np.ndarray
        RMS bias voltage (V).
    t_lc : float, np.ndarray
        LC thickness (m).
    frequency : float, np.ndarray
        Frequency (Hz).
    radiator : lcris.core.box.RadiatorBox, None
        Box with the radiator. The radiator is lossless if set
        to ``None``.
    misalignment : tuple(float, float)
        Misalignment of the metallization along x and y (m).

    Returns
    -------
    complex, np.ndarray
        Complex reflection coefficient.
    """

    eps_lc, tan_lc = material_util.lc_permittivity(material, v_bias)
    eps_eff, tan_eff = line_util.effective_permittivity(
        line, eps_lc, tan_lc, stack, t_lc
    )

    phase = line_util.round_trip_phase(line, eps_eff, frequency)
    phase = phase - line_util.reference_phase(line, material, stack, frequency)

    loss = line_util.insertion_loss(line, eps_eff, tan_eff, frequency)

    if radiator is not None:
        loss = loss + radiator_loss(radiator, frequency)

    gamma = 10.0 ** (-loss / 20.0) * np.exp(1j * np.radians(phase))

    if misalignment != (0.0, 0.0):
        if radiator is None:
            raise ValueError(
                "The misalignment window is centered at the radiator "
                "frequency so the radiator argument is required."
            )

        gamma = gamma * tolerance_util.misalignment_response(
            misalignment, frequency, radiator.f0
        )

    if np.ndim(gamma) == 0:
        return complex(gamma)

    return gamma


@typechecked
def element_states(
    material: box.LcMaterialBox,
    stack: box.StackBox,
    line: box.LineBox,
    voltages: np.ndarray,
    t_lc: np.ndarray,
    freq_axis: np.ndarray,
    radiator: Optional[box.RadiatorBox] = None,
    misalignment: Tuple[float, float] = (0.0, 0.0),
) -> box.ElementBox:
    """
    Function for calculating the reflection coefficients of all
    elements across the frequency axis.

    Parameters
    ----------
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    voltages : np.ndarray
        RMS bias voltage per element (V).
    t_lc : np.ndarray
        LC thickness per element (m).
    freq_axis : np.ndarray
        Frequencies (Hz).
    radiator : lcris.core.box.RadiatorBox, None
        Box with the radiator. The radiator is lossless if set
        to ``None``.
    misalignment : tuple(float, float)
        Misalignment of the metallization along x and y (m).

    Returns
    -------
    lcris.core.box.ElementBox
        Box with the element states. The reflection coefficients
        have the shape (n_freq, n_elements).
    """

    if voltages.shape != t_lc.shape:
        raise ValueError(
            f"The number of voltages ({voltages.size}) is not equal to the "
            f"number of thickness values ({t_lc.size})."
        )

    gamma = element_reflection(
        material,
        stack,
        line,
        voltages[np.newaxis, :],
        t_lc[np.newaxis, :],
        freq_axis[:, np.newaxis],
        radiator=radiator,
        misalignment=misalignment,
    )

    return box.create_box(
        "element",
        v_bias=voltages,
        t_lc=t_lc,
        freq_axis=freq_axis,
        gamma=np.asarray(gamma, dtype=complex),
    )


@typechecked
def steering_vector(
    layout: box.LayoutBox,
    wave: box.WaveBox,
    theta: np.ndarray,
    phi: np.ndarray,
    frequency: float,
    ep_exponent: float,
) -> np.ndarray:
    """
    Function for calculating the contribution of each element with
    unit reflection to the far field in a set of directions. The
    phase is relative to the centroid of the layout and the element
    factor of the incidence direction is included.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    wave : lcris.core.box.WaveBox
        Box with the incident plane wave.
    theta : np.ndarray
        Azimuth angles of the directions (deg).
    phi : np.ndarray
        Elevation angles of the directions (deg).
    frequency : float
        Frequency (Hz).
    ep_exponent : float
        Exponent of the cosine element pattern.

    Returns
    -------
    np.ndarray
        Complex weights with shape (n_directions, n_elements).
    """

    k_0 = 2.0 * np.pi * frequency / constants.LIGHT

    u_dir, v_dir = direction_cosines(theta, phi)
    u_inc, v_inc = direction_cosines(wave.theta_inc, wave.phi_inc)

    phase = k_0 * (
        np.outer(u_dir - u_inc, layout.positions[:, 0])
        + np.outer(v_dir - v_inc, layout.positions[:, 1])
    )

    pattern = element_pattern(theta, phi, ep_exponent)
    pattern = pattern * element_pattern(wave.theta_inc, wave.phi_inc, ep_exponent)

    return pattern[:, np.newaxis] * np.exp(1j * phase)


@typechecked
def far_field(
    layout: box.LayoutBox,
    states: box.ElementBox,
    wave: box.WaveBox,
    theta_axis: np.ndarray,
    phi_axis: np.ndarray,
    ep_exponent: float = 0.5,
    n_threads: Optional[int] = None,
) -> box.FarFieldBox:
    """
    Function for calculating the scattered far field of the surface
    by summing the contributions of all elements. The frequencies
    are distributed over a pool of worker threads.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    states : lcris.core.box.ElementBox
        Box with the element states.
    wave : lcris.core.box.WaveBox
        Box with the incident plane wave.
    theta_axis : np.ndarray
        Azimuth angles (deg), strictly increasing.
    phi_axis : np.ndarray
        Elevation angles (deg), strictly increasing.
    ep_exponent : float
        Exponent of the cosine element pattern.
    n_threads : int, None
        Number of worker threads. The value of ``n_threads`` in
        the configuration file is used if set to ``None``.

    Returns
    -------
    lcris.core.box.FarFieldBox
        Box with the complex far field, with the shape
        (n_freq, n_theta, n_phi) and normalization ``'raw'``.
    """

    check_wave(wave)

    if states.gamma.shape[1] != layout.n_elements:
        raise ValueError(
            f"The number of element states ({states.gamma.shape[1]}) is not "
            f"equal to the number of elements ({layout.n_elements})."
        )

    for axis_name, axis in [("theta_axis", theta_axis), ("phi_axis", phi_axis)]:
        if axis.ndim != 1 or np.any(np.diff(axis) <= 0.0):
            raise ValueError(f"The {axis_name} should be strictly increasing.")

    if n_threads is None:
        n_threads = get_config()["n_threads"]

    theta_grid, phi_grid = np.meshgrid(theta_axis, phi_axis, indexing="ij")
    theta_flat = theta_grid.ravel()
    phi_flat = phi_grid.ravel()

    def _field_at_frequency(freq_idx: int) -> np.ndarray:
        frequency = float(states.freq_axis[freq_idx])
        gamma = states.gamma[freq_idx]

        field = np.zeros(theta_flat.size, dtype=complex)

        for i in range(0, theta_flat.size, CHUNK_SIZE):
            weights = steering_vector(
                layout,
                wave,
                theta_flat[i : i + CHUNK_SIZE],
                phi_flat[i : i + CHUNK_SIZE],
                frequency,
                ep_exponent,
            )

            field[i : i + CHUNK_SIZE] = weights @ gamma

        return field.reshape(theta_grid.shape)

    n_freq = states.freq_axis.size

    with ThreadPoolExecutor(max_workers=max(n_threads, 1)) as executor:
        results = list(executor.map(_field_at_frequency, range(n_freq)))

    return box.create_box(
        "farfield",
        theta_axis=theta_axis,
        phi_axis=phi_axis,
        freq_axis=states.freq_axis,
        values=np.stack(results, axis=0),
        normalization="raw",
        theta_inc=wave.theta_inc,
        phi_inc=wave.phi_inc,
        ep_exponent=ep_exponent,
        n_elements=layout.n_elements,
    )


@typechecked
def metal_plate_rcs(
    area: float,
    theta_tx: float,
    theta_rx: Union[float, np.ndarray],
    phi_tx: float,
    phi_rx: Union[float, np.ndarray],
    frequency: Union[float, np.ndarray],
) -> Union[float, np.ndarray]:
    """
    Function for calculating the bistatic RCS of a perfectly
    conducting metal plate,
    ``4 pi A^2 cos(theta_tx) cos(theta_rx) cos(phi_tx) cos(phi_rx) / lambda^2``.

    Parameters
    ----------
    area : float
        Area of the plate (m2).
    theta_tx : float
        Azimuth angle of the transmitter (deg).
    theta_rx : float, np.ndarray
        Azimuth angle of the receiver (deg).
    phi_tx : float
        Elevation angle of the transmitter (deg).
    phi_rx : float, np.ndarray
        Elevation angle of the receiver (deg).
    frequency : float, np.ndarray
        Frequency (Hz).

    Returns
    -------
    float, np.ndarray
        RCS (m2).
    """

    if area <= 0.0:
        raise ValueError(f"The area of the plate should be positive ({area} m2).")

    for angle in [theta_tx, theta_rx, phi_tx, phi_rx]:
        if np.any(np.abs(angle) >= 90.0):
            raise ValueError(
                f"The angles should be in the range (-90, 90) deg "
                f"(found {np.asarray(angle).ravel()[0]} deg)."
            )

    wavelength = constants.LIGHT / np.asarray(frequency, dtype=float)

    cosines = (
        np.cos(np.radians(theta_tx))
        * np.cos(np.radians(theta_rx))
        * np.cos(np.radians(phi_tx))
        * np.cos(np.radians(phi_rx))
    )

    rcs = 4.0 * np.pi * area**2 * cosines / wavelength**2

    if np.ndim(rcs) == 0:
        return float(rcs)

    return rcs


@typechecked
def physical_optics_rcs(
    width: float,
    height: float,
    theta_tx: float,
    theta_rx: float,
    phi_tx: float,
    phi_rx: float,
    frequency: float,
    n_samples: int = 200,
) -> float:
    """
    Function for calculating the bistatic RCS of a rectangular metal
    plate by integrating the physical-optics surface current over
    the aperture with the midpoint rule. The receiver angles are
    measured on the mirrored side such that the specular direction
    has the same angles as the transmitter.

    Parameters
    ----------
    width : float
        Width of the plate along x (m).
    height : float
        Height of the plate along y (m).
    theta_tx : float
        Azimuth angle of the transmitter (deg).
    theta_rx : float
        Azimuth angle of the receiver (deg).
    phi_tx : float
        Elevation angle of the transmitter (deg).
    phi_rx : float
        Elevation angle of the receiver (deg).
    frequency : float
        Frequency (Hz).
    n_samples : int
        Number of integration cells along each side.

    Returns
    -------
    float
        RCS (m2).
    """

    k_0 = 2.0 * np.pi * frequency / constants.LIGHT

    u_tx, v_tx = direction_cosines(theta_tx, phi_tx)
    u_rx, v_rx = direction_cosines(theta_rx, phi_rx)

    x_mid = (np.arange(n_samples) + 0.5) / n_samples * width - 0.5 * width
    y_mid = (np.arange(n_samples) + 0.5) / n_samples * height - 0.5 * height

    cell_area = width * height / n_samples**2

    integral_x = np.sum(np.exp(1j * k_0 * (u_rx - u_tx) * x_mid))
    integral_y = np.sum(np.exp(1j * k_0 * (v_rx - v_tx) * y_mid))

    integral = cell_area * integral_x * integral_y

    cosines = (
        np.cos(np.radians(theta_tx))
        * np.cos(np.radians(theta_rx))
        * np.cos(np.radians(phi_tx))
        * np.cos(np.radians(phi_rx))
    )

    return float(4.0 * np.pi * (k_0 / (2.0 * np.pi)) ** 2 * np.abs(integral) ** 2 * cosines)


@typechecked
def ris_rcs(
    grid: box.FarFieldBox, layout: box.LayoutBox, wave: box.WaveBox
) -> box.FarFieldBox:
    """
    Function for converting the raw far field into the RCS of the
    surface. An in-phase surface of lossless elements under
    broadside incidence is assigned the RCS of a metal plate with
    the aperture area in the specular direction.

    Parameters
    ----------
    grid : lcris.core.box.FarFieldBox
        Box with the raw far field.
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    wave : lcris.core.box.WaveBox
        Box with the incident plane wave of the far field.

    Returns
    -------
    lcris.core.box.FarFieldBox
        Box with the RCS (m2) and normalization ``'rcs_m2'``.
    """

    if grid.normalization != "raw":
        raise ValueError(
            f"The far field should have the 'raw' normalization instead "
            f"of '{grid.normalization}'."
        )

    if (grid.theta_inc, grid.phi_inc) != (wave.theta_inc, wave.phi_inc):
        raise ValueError(
            "The incidence angles of the plane wave do not match with "
            "the far field."
        )

    area = layout.dx * layout.dy * layout.rows * layout.cols

    # Uniform in-phase surface at broadside, |E| = N
    field_ideal = float(layout.n_elements)

    rcs_plate = metal_plate_rcs(area, 0.0, 0.0, 0.0, 0.0, grid.freq_axis)

    rcs = (
        rcs_plate[:, np.newaxis, np.newaxis]
        * np.abs(grid.values) ** 2
        / field_ideal**2
    )

    return box.create_box(
        "farfield",
        theta_axis=grid.theta_axis,
        phi_axis=grid.phi_axis,
        freq_axis=grid.freq_axis,
        values=rcs,
        normalization="rcs_m2",
        theta_inc=grid.theta_inc,
        phi_inc=grid.phi_inc,
        ep_exponent=grid.ep_exponent,
        n_elements=grid.n_elements,
    )
