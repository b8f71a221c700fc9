"""
Module with functionalities for reading and writing of data.
"""

import warnings

from typing import Optional, Union

import h5py
import numpy as np

from typeguard import typechecked

from lcris.core import box
from lcris.core.init import get_config


class Database:
    """
    Class with reading and writing functionalities for the HDF5 database.
    """

    @typechecked
    def __init__(self, database: Optional[str] = None) -> None:
        """
        Parameters
        ----------
        database : str, None
            Path of the HDF5 database. The database in the
            configuration file is used if set to ``None``.

        Returns
        -------
        NoneType
            None
        """

        if database is None:
            database = get_config()["database"]

        self.database = database

    @typechecked
    def list_content(self) -> None:
        """
        Function for listing the content of the HDF5 database. The
        database structure will be descended while printing the paths
        of all the groups and datasets, as well as the dataset
        attributes.

        Returns
        -------
        NoneType
            None
        """

        print("Database content:")

        def _descend(
            h5_object: Union[h5py.File, h5py.Group, h5py.Dataset],
            separator: str = "",
        ) -> None:
            if isinstance(h5_object, (h5py.File, h5py.Group)):
                for key in h5_object.keys():
                    print(separator + "- " + key + ": " + str(h5_object[key]))
                    _descend(h5_object[key], separator=separator + "\t")

            elif isinstance(h5_object, h5py.Dataset):
                for key in h5_object.attrs.keys():
                    print(separator + "- " + key + ": " + str(h5_object.attrs[key]))

        with h5py.File(self.database, "r") as hdf_file:
            _descend(hdf_file)

    @typechecked
    def delete_data(self, data_set: str) -> None:
        """
        Function for deleting a dataset from the HDF5 database.

        Parameters
        ----------
        data_set : str
            Group or dataset path in the HDF5 database. For example,
            ``data_set="farfield/steer"`` will remove the far field
            that was stored with the tag ``'steer'``.

        Returns
        -------
        NoneType
            None
        """

        with h5py.File(self.database, "a") as hdf_file:
            if data_set in hdf_file:
                print(f"Deleting data: {data_set}...", end="", flush=True)
                del hdf_file[data_set]
                print(" [DONE]")

            else:
                warnings.warn(
                    f"The dataset {data_set} is not found in {self.database}."
                )

    @staticmethod
    def _replace_group(hdf_file: h5py.File, group_path: str) -> h5py.Group:
        if group_path in hdf_file:
            warnings.warn(
                f"The group {group_path} is already present in the "
                f"database and will be overwritten."
            )

            del hdf_file[group_path]

        return hdf_file.create_group(group_path)

    @typechecked
    def add_farfield(self, tag: str, grid: box.FarFieldBox) -> None:
        """
        Function for storing a far-field grid in the database.

        Parameters
        ----------
        tag : str
            Database tag.
        grid : lcris.core.box.FarFieldBox
            Box with the far field or RCS.

        Returns
        -------
        NoneType
            None
        """

        print(f"Storing far field in database: farfield/{tag}...", end="", flush=True)

        with h5py.File(self.database, "a") as hdf_file:
            group = self._replace_group(hdf_file, f"farfield/{tag}")

            group.create_dataset("freq_axis", data=grid.freq_axis)
            group.create_dataset("theta_axis", data=grid.theta_axis)
            group.create_dataset("phi_axis", data=grid.phi_axis)

            dset = group.create_dataset("values", data=grid.values)
            dset.attrs["normalization"] = str(grid.normalization)
            dset.attrs["theta_inc"] = float(grid.theta_inc)
            dset.attrs["phi_inc"] = float(grid.phi_inc)

            if grid.ep_exponent is not None:
                dset.attrs["ep_exponent"] = float(grid.ep_exponent)

            if grid.n_elements is not None:
                dset.attrs["n_elements"] = int(grid.n_elements)

        print(" [DONE]")

    @typechecked
    def get_farfield(self, tag: str) -> box.FarFieldBox:
        """
        Function for reading a far-field grid from the database.

        Parameters
        ----------
        tag : str
            Database tag.

        Returns
        -------
        lcris.core.box.FarFieldBox
            Box with the far field or RCS.
        """

        with h5py.File(self.database, "r") as hdf_file:
            if f"farfield/{tag}" not in hdf_file:
                raise ValueError(f"The far field with tag '{tag}' is not found.")

            group = hdf_file[f"farfield/{tag}"]
            dset = group["values"]

            kwargs = {
                "freq_axis": np.asarray(group["freq_axis"]),
                "theta_axis": np.asarray(group["theta_axis"]),
                "phi_axis": np.asarray(group["phi_axis"]),
                "values": np.asarray(dset),
                "normalization": str(dset.attrs["normalization"]),
                "theta_inc": float(dset.attrs["theta_inc"]),
                "phi_inc": float(dset.attrs["phi_inc"]),
            }

            if "ep_exponent" in dset.attrs:
                kwargs["ep_exponent"] = float(dset.attrs["ep_exponent"])

            if "n_elements" in dset.attrs:
                kwargs["n_elements"] = int(dset.attrs["n_elements"])

        return box.create_box("farfield", **kwargs)

    @typechecked
    def add_efficiency(self, tag: str, spectrum: box.EfficiencyBox) -> None:
        """
        Function for storing an efficiency spectrum in the database.

        Parameters
        ----------
        tag : str
            Database tag.
        spectrum : lcris.core.box.EfficiencyBox
            Box with the efficiency spectrum.

        Returns
        -------
        NoneType
            None
        """

        print(f"Storing efficiency in database: efficiency/{tag}...", end="", flush=True)

        with h5py.File(self.database, "a") as hdf_file:
            group = self._replace_group(hdf_file, f"efficiency/{tag}")

            for item in ["freq_axis", "eta", "theta_track", "phi_track"]:
                group.create_dataset(item, data=getattr(spectrum, item))

            for item in ["mag_db", "flagged", "sigma_mp"]:
                if getattr(spectrum, item) is not None:
                    group.create_dataset(item, data=getattr(spectrum, item))

        print(" [DONE]")

    @typechecked
    def get_efficiency(self, tag: str) -> box.EfficiencyBox:
        """
        Function for reading an efficiency spectrum from the database.

        Parameters
        ----------
        tag : str
            Database tag.

        Returns
        -------
        lcris.core.box.EfficiencyBox
            Box with the efficiency spectrum.
        """

        with h5py.File(self.database, "r") as hdf_file:
            if f"efficiency/{tag}" not in hdf_file:
                raise ValueError(f"The efficiency spectrum with tag '{tag}' is not found.")

            group = hdf_file[f"efficiency/{tag}"]

            kwargs = {key: np.asarray(group[key]) for key in group.keys()}

        return box.create_box("efficiency", **kwargs)

    @typechecked
    def add_tolerance(self, tag: str, field: box.ToleranceBox) -> None:
        """
        Function for storing a thickness field in the database.

        Parameters
        ----------
        tag : str
            Database tag.
        field : lcris.core.box.ToleranceBox
            Box with the thickness field.

        Returns
        -------
        NoneType
            None
        """

        print(f"Storing thickness field in database: tolerance/{tag}...", end="", flush=True)

        with h5py.File(self.database, "a") as hdf_file:
            group = self._replace_group(hdf_file, f"tolerance/{tag}")

            dset = group.create_dataset("t_lc", data=field.t_lc)
            dset.attrs["kind"] = str(field.kind)
            dset.attrs["misalignment"] = np.array(field.misalignment, dtype=float)
            dset.attrs["n_clamped"] = int(field.n_clamped)

            if field.seed is not None:
                dset.attrs["seed"] = int(field.seed)

            for key, value in field.parameters.items():
                dset.attrs[key] = float(value)

        print(" [DONE]")

    @typechecked
    def add_optimization(self, tag: str, report: box.OptimizationBox) -> None:
        """
        Function for storing an optimization report and its iterate
        log in the database.

        Parameters
        ----------
        tag : str
            Database tag.
        report : lcris.core.box.OptimizationBox
            Box with the optimization report.

        Returns
        -------
        NoneType
            None
        """

        print(f"Storing optimization in database: optimization/{tag}...", end="", flush=True)

        with h5py.File(self.database, "a") as hdf_file:
            group = self._replace_group(hdf_file, f"optimization/{tag}")

            dset = group.create_dataset("voltages", data=report.voltages)
            dset.attrs["mode"] = str(report.mode)
            dset.attrs["initial_power_db"] = float(report.initial_power_db)
            dset.attrs["final_power_db"] = float(report.final_power_db)
            dset.attrs["improvement_db"] = float(report.improvement_db)
            dset.attrs["iterations"] = int(report.iterations)
            dset.attrs["evaluations"] = int(report.evaluations)
            dset.attrs["converged"] = bool(report.converged)

            if report.seed is not None:
                dset.attrs["seed"] = int(report.seed)

            if report.log:
                dset_log = group.create_dataset("log", data=np.array(report.log, dtype=float))
                dset_log.attrs["columns"] = "sweep, coordinate, voltage, power_db"

        print(" [DONE]")
