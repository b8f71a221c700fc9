"""
Utility functions for generating LC thickness fields and for the
metallization misalignment.
"""

import math
import warnings

from typing import Optional, Tuple, Union

import numpy as np

from scipy.linalg import cholesky
from scipy.spatial.distance import cdist
from typeguard import typechecked

from lcris.core import box


# Smallest LC thickness (m) of a random field
T_FLOOR = 0.5e-6

# Largest number of elements for the exact Cholesky method
N_CHOLESKY = 2000

# Number of random Fourier features for larger layouts
N_FEATURES = 2000

# Offset (m) and fractional window width that anchor the misalignment model
D_REF = 30e-6
B_REF = 0.0819


@typechecked
def uniform_field(layout: box.LayoutBox, t_nom: float) -> box.ToleranceBox:
    """
    Function for creating a field with the same LC thickness at
    every element.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    t_nom : float
        Nominal LC thickness (m).

    Returns
    -------
    lcris.core.box.ToleranceBox
        Box with the thickness field.
    """

    if t_nom <= 0.0:
        raise ValueError(f"The nominal LC thickness should be positive ({t_nom} m).")

    return box.create_box(
        "tolerance",
        kind="uniform",
        t_lc=np.full(layout.n_elements, t_nom),
        misalignment=(0.0, 0.0),
        parameters={"t_nom": t_nom},
    )


@typechecked
def tilted_field(
    layout: box.LayoutBox, t_nom: float, gx: float, gy: float
) -> box.ToleranceBox:
    """
    Function for creating a field with an LC thickness that changes
    linearly across the aperture.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    t_nom : float
        LC thickness at the centroid (m).
    gx : float
        Thickness gradient along x (m/m).
    gy : float
        Thickness gradient along y (m/m).

    Returns
    -------
    lcris.core.box.ToleranceBox
        Box with the thickness field.
    """

    t_lc = t_nom + gx * layout.positions[:, 0] + gy * layout.positions[:, 1]

    if np.any(t_lc <= 0.0):
        idx = int(np.argmin(t_lc))
        x_pos, y_pos = layout.positions[idx]

        corner = ("lower" if y_pos < 0.0 else "upper") + "-"
        corner += "left" if x_pos < 0.0 else "right"

        raise ValueError(
            f"The tilted LC thickness is not positive at the {corner} "
            f"corner (element {idx} at x = {x_pos:.3e} m, y = {y_pos:.3e} m, "
            f"t_lc = {t_lc[idx]:.3e} m)."
        )

    return box.create_box(
        "tolerance",
        kind="tilted",
        t_lc=t_lc,
        misalignment=(0.0, 0.0),
        parameters={"t_nom": t_nom, "gx": gx, "gy": gy},
    )


@typechecked
def correlated_noise(
    positions: np.ndarray, corr_len: float, rng: np.random.Generator
) -> np.ndarray:
    """
    Function for drawing a zero-mean, unit-variance Gaussian field
    with the exponential correlation ``exp(-d/corr_len)``. The
    covariance matrix is factorized with a Cholesky decomposition
    for up to ``N_CHOLESKY`` positions. Larger layouts use random
    Fourier features with wavevectors drawn from the bivariate Cauchy
    distribution, which is the spectral density of the exponential
    kernel in two dimensions.

    Parameters
    ----------
    positions : np.ndarray
        Positions (m), with shape (n_points, 2).
    corr_len : float
        Correlation length (m).
    rng : np.random.Generator
        Random number generator.

    Returns
    -------
    np.ndarray
        Field values at the positions.
    """

    n_points = positions.shape[0]

    if n_points <= N_CHOLESKY:
        covar = np.exp(-cdist(positions, positions) / corr_len)
        covar[np.diag_indices(n_points)] += 1e-10

        chol_low = cholesky(covar, lower=True)

        return chol_low @ rng.standard_normal(n_points)

    chi_scale = np.abs(rng.standard_normal(N_FEATURES))
    wavevec = rng.standard_normal((N_FEATURES, 2)) / chi_scale[:, np.newaxis]
    wavevec /= corr_len

    weights = rng.standard_normal((2, N_FEATURES))

    phase = positions @ wavevec.T

    field = np.cos(phase) @ weights[0] + np.sin(phase) @ weights[1]

    return field / math.sqrt(N_FEATURES)


@typechecked
def random_field(
    layout: box.LayoutBox,
    t_nom: float,
    sigma: float,
    corr_len: float,
    seed: Optional[int] = None,
) -> box.ToleranceBox:
    """
    Function for creating a Gaussian random field of LC thicknesses
    with an isotropic exponential correlation. Values below
    ``T_FLOOR`` are clamped and the number of clamped elements is
    stored in the box.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    t_nom : float
        Mean LC thickness (m).
    sigma : float
        Standard deviation of the thickness (m).
    corr_len : float
        Correlation length (m).
    seed : int, None
        Seed of the random number generator.

    Returns
    -------
    lcris.core.box.ToleranceBox
        Box with the thickness field.
    """

    if t_nom <= 0.0:
        raise ValueError(f"The nominal LC thickness should be positive ({t_nom} m).")

    if sigma < 0.0:
        raise ValueError(f"The standard deviation should not be negative ({sigma} m).")

    if corr_len <= 0.0:
        raise ValueError(f"The correlation length should be positive ({corr_len} m).")

    if sigma == 0.0:
        t_lc = np.full(layout.n_elements, t_nom)

    else:
        rng = np.random.default_rng(seed)
        t_lc = t_nom + sigma * correlated_noise(layout.positions, corr_len, rng)

    n_clamped = int(np.sum(t_lc < T_FLOOR))

    if n_clamped > 0:
        warnings.warn(
            f"The LC thickness of {n_clamped} elements is below "
            f"{T_FLOOR*1e6} um and has been clamped."
        )

        t_lc = np.clip(t_lc, T_FLOOR, None)

    return box.create_box(
        "tolerance",
        kind="random",
        t_lc=t_lc,
        misalignment=(0.0, 0.0),
        parameters={"t_nom": t_nom, "sigma": sigma, "corr_len": corr_len},
        seed=seed,
        n_clamped=n_clamped,
    )


@typechecked
def with_misalignment(
    field: box.ToleranceBox, dx_off: float, dy_off: float
) -> box.ToleranceBox:
    """
    Function for adding a metallization misalignment to a thickness
    field.

    Parameters
    ----------
    field : lcris.core.box.ToleranceBox
        Box with the thickness field.
    dx_off : float
        Misalignment along x (m).
    dy_off : float
        Misalignment along y (m).

    Returns
    -------
    lcris.core.box.ToleranceBox
        Copy of the box with the misalignment.
    """

    return box.create_box(
        "tolerance",
        kind=field.kind,
        t_lc=field.t_lc.copy(),
        misalignment=(dx_off, dy_off),
        parameters=dict(field.parameters),
        seed=field.seed,
        n_clamped=field.n_clamped,
    )


@typechecked
def misalignment_bandwidth(offset: Tuple[float, float], f0: float) -> float:
    """
    Function for calculating the width of the frequency window by
    which a misalignment narrows the element response. The width is
    inversely proportional to the absolute offset.

    Parameters
    ----------
    offset : tuple(float, float)
        Misalignment along x and y (m).
    f0 : float
        Center frequency (Hz).

    Returns
    -------
    float
        Window width (Hz). Infinity is returned without offset.
    """

    distance = math.hypot(offset[0], offset[1])

    if distance == 0.0:
        return math.inf

    return f0 * B_REF * D_REF / distance


@typechecked
def misalignment_response(
    offset: Tuple[float, float],
    frequency: Union[float, np.ndarray],
    f0: float,
) -> Union[float, np.ndarray]:
    """
    Function for calculating the amplitude factor of an element with
    misaligned metallization layers. The factor is a Gaussian window
    around ``f0`` that narrows with increasing offset and drops only
    slightly at the center frequency.

    Parameters
    ----------
    offset : tuple(float, float)
        Misalignment along x and y (m).
    frequency : float, np.ndarray
        Frequency (Hz).
    f0 : float
        Center frequency (Hz).

    Returns
    -------
    float, np.ndarray
        Amplitude factor.
    """

    if offset[0] < 0.0 or offset[1] < 0.0:
        warnings.warn(
            "The misalignment components are negative, their absolute "
            "values are used."
        )

    frequency = np.asarray(frequency, dtype=float)

    distance = math.hypot(offset[0], offset[1])

    if distance == 0.0:
        factor = np.ones_like(frequency)

    else:
        width = misalignment_bandwidth(offset, f0)
        center = max(1.0 - 0.01 * (distance / D_REF) ** 2, 0.0)

        factor = center * np.exp(-(((frequency - f0) / width) ** 2))

    if factor.ndim == 0:
        return float(factor)

    return factor
