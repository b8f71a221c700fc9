"""
Module with reading functionalities for measured transmission traces.
"""

import os

from typing import Tuple

import numpy as np
import pandas as pd

from typeguard import typechecked

from lcris.core import box


COLUMNS = ["freq_hz", "s21_ris_db", "s21_mp_db"]


class ReadTraces:
    """
    Class for reading the measured transmission traces of the surface
    and the metal plate from a CSV file with the columns ``freq_hz``,
    ``s21_ris_db``, and ``s21_mp_db``. Samples with the value ``nan``
    or ``inf`` are accepted and flagged by the reduction.
    """

    @typechecked
    def __init__(self, traces_file: str) -> None:
        """
        Parameters
        ----------
        traces_file : str
            Path to the CSV file.

        Returns
        -------
        NoneType
            None
        """

        if not os.path.isfile(traces_file):
            raise ValueError(f"The traces file '{traces_file}' is not found.")

        self.traces_file = traces_file

        try:
            raw_data = pd.read_csv(
                traces_file,
                dtype=str,
                keep_default_na=False,
                skipinitialspace=True,
                encoding="utf-8",
            )

        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as error:
            raise ValueError(f"The traces file '{traces_file}' can not be parsed: {error}") from error

        raw_data.columns = [item.strip() for item in raw_data.columns]

        missing = [item for item in COLUMNS if item not in raw_data.columns]

        if missing:
            raise ValueError(
                f"The traces file does not contain the columns {missing}. "
                f"The required header is {','.join(COLUMNS)}."
            )

        self.data = pd.DataFrame(index=raw_data.index)

        for item in COLUMNS:
            raw_column = raw_data[item].str.strip()
            values = pd.to_numeric(raw_column, errors="coerce")

            # Values that are not numbers and not an explicit NaN
            malformed = values.isna() & (raw_column.str.lower() != "nan")

            if malformed.any():
                row = int(np.flatnonzero(malformed.to_numpy())[0])

                raise ValueError(
                    f"Row {row+1} of the traces file (line {row+2}) contains "
                    f"the invalid {item} value '{raw_column.iloc[row]}'."
                )

            self.data[item] = values.astype(float)

        freq = self.data["freq_hz"].to_numpy()

        if freq.size == 0:
            raise ValueError("The traces file does not contain any rows.")

        if not np.all(np.isfinite(freq)) or np.any(freq <= 0.0):
            raise ValueError("The frequencies of the traces should be finite and positive.")

        if np.any(np.diff(freq) <= 0.0):
            raise ValueError("The frequencies of the traces should be strictly increasing.")

    @typechecked
    def get_traces(
        self,
        angles: Tuple[float, float, float, float],
        area_ris: float,
        area_mp: float,
    ) -> box.TracesBox:
        """
        Function for creating a box with the traces and the
        measurement geometry.

        Parameters
        ----------
        angles : tuple(float, float, float, float)
            Angles ``theta_tx``, ``theta_rx``, ``phi_tx``, and
            ``phi_rx`` of the measurement geometry (deg).
        area_ris : float
            Aperture area of the surface (m2).
        area_mp : float
            Area of the metal plate (m2).

        Returns
        -------
        lcris.core.box.TracesBox
            Box with the traces and the geometry.
        """

        return box.create_box(
            "traces",
            freq_axis=self.data["freq_hz"].to_numpy(dtype=float),
            s21_ris_db=self.data["s21_ris_db"].to_numpy(dtype=float),
            s21_mp_db=self.data["s21_mp_db"].to_numpy(dtype=float),
            theta_tx=angles[0],
            theta_rx=angles[1],
            phi_tx=angles[2],
            phi_rx=angles[3],
            area_ris=area_ris,
            area_mp=area_mp,
        )
