"""
Utility functions for the element layout of the aperture.
"""

import math

from typing import List

import numpy as np

from scipy.spatial import cKDTree
from typeguard import typechecked

from lcris.core import box, constants


@typechecked
def spacing_from_wavelength(spacing_lambda0: float, frequency: float) -> float:
    """
    Function for converting an element spacing in units of the
    free-space wavelength into meters.

    Parameters
    ----------
    spacing_lambda0 : float
        Element spacing (free-space wavelengths).
    frequency : float
        Frequency (Hz).

    Returns
    -------
    float
        Element spacing (m).
    """

    if frequency <= 0.0:
        raise ValueError(f"The frequency should be positive ({frequency} Hz).")

    return spacing_lambda0 * constants.LIGHT / frequency


@typechecked
def build_layout(
    rows: int, cols: int, dx: float, dy: float, grid_kind: str = "triangular"
) -> box.LayoutBox:
    """
    Function for creating the element positions of a rectangular or
    triangular grid. The elements are ordered row by row, starting
    with the row at the smallest y coordinate. On a triangular grid,
    the odd rows are shifted by half a spacing in x. The layout is
    centered at the centroid of the positions.

    Parameters
    ----------
    rows : int
        Number of rows.
    cols : int
        Number of columns.
    dx : float
        Element spacing along x (m).
    dy : float
        Element spacing along y (m).
    grid_kind : str
        Grid type ('rectangular' or 'triangular').

    Returns
    -------
    lcris.core.box.LayoutBox
        Box with the layout.
    """

    if rows < 1 or cols < 1:
        raise ValueError(
            f"The layout requires at least one row and column "
            f"(rows = {rows}, cols = {cols})."
        )

    if dx <= 0.0 or dy <= 0.0:
        raise ValueError(
            f"The element spacings should be positive (dx = {dx} m, dy = {dy} m)."
        )

    if grid_kind not in ["rectangular", "triangular"]:
        raise ValueError(
            f"The grid_kind '{grid_kind}' is not supported. Please "
            f"choose 'rectangular' or 'triangular'."
        )

    row_of, column_of = np.divmod(np.arange(rows * cols), cols)

    x_pos = column_of * dx
    y_pos = row_of * dy

    if grid_kind == "triangular":
        x_pos = x_pos + 0.5 * dx * (row_of % 2)

    positions = np.column_stack([x_pos, y_pos]).astype(float)
    positions -= np.mean(positions, axis=0)

    return box.create_box(
        "layout",
        rows=rows,
        cols=cols,
        dx=dx,
        dy=dy,
        grid_kind=grid_kind,
        positions=positions,
        row_of=row_of,
        column_of=column_of,
    )


@typechecked
def aperture_area(layout: box.LayoutBox) -> float:
    """
    Function for calculating the aperture area from the element
    spacings and the number of rows and columns.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.

    Returns
    -------
    float
        Aperture area (m2).
    """

    return layout.dx * layout.dy * layout.rows * layout.cols


@typechecked
def column_groups(layout: box.LayoutBox) -> List[np.ndarray]:
    """
    Function for grouping the elements that share a bias line.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.

    Returns
    -------
    list(np.ndarray)
        Element indices per column, ordered by x.
    """

    return [np.flatnonzero(layout.column_of == i) for i in range(layout.cols)]


@typechecked
def nearest_neighbor_distance(layout: box.LayoutBox) -> float:
    """
    Function for calculating the smallest distance between two
    elements of the layout.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.

    Returns
    -------
    float
        Nearest-neighbor distance (m). Infinity is returned for a
        single element.
    """

    if layout.n_elements < 2:
        return math.inf

    tree = cKDTree(layout.positions)
    distance, _ = tree.query(layout.positions, k=2)

    return float(np.amin(distance[:, 1]))


@typechecked
def rotate_layout(layout: box.LayoutBox, angle_deg: float) -> box.LayoutBox:
    """
    Function for rotating the element positions counterclockwise
    around the centroid. The row and column indices are kept.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    angle_deg : float
        Rotation angle (deg).

    Returns
    -------
    lcris.core.box.LayoutBox
        Box with the rotated layout.
    """

    angle = math.radians(angle_deg)

    rotation = np.array(
        [[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]]
    )

    return box.create_box(
        "layout",
        rows=layout.rows,
        cols=layout.cols,
        dx=layout.dx,
        dy=layout.dy,
        grid_kind=layout.grid_kind,
        positions=layout.positions @ rotation.T,
        row_of=layout.row_of.copy(),
        column_of=layout.column_of.copy(),
    )
