import os

import h5py
import numpy as np
import pytest

import lcris


class TestDatabase:
    def setup_class(self):
        self.database_file = "./database_test.hdf5"

        self.grid = lcris.create_box(
            "farfield",
            theta_axis=np.array([-10.0, 0.0, 10.0]),
            phi_axis=np.array([0.0]),
            freq_axis=np.array([60e9]),
            values=np.ones((1, 3, 1), dtype=complex),
            normalization="raw",
            ep_exponent=0.5,
            n_elements=4,
        )

    def teardown_class(self):
        os.remove(self.database_file)

    def test_farfield(self):
        database = lcris.Database(self.database_file)
        database.add_farfield("test", self.grid)

        grid = database.get_farfield("test")

        assert grid.normalization == "raw"
        assert grid.ep_exponent == 0.5
        assert grid.n_elements == 4
        assert np.array_equal(grid.values, self.grid.values)

        with pytest.warns(UserWarning):
            database.add_farfield("test", self.grid)

        with pytest.raises(ValueError):
            database.get_farfield("missing")

    def test_tolerance(self):
        layout = lcris.build_layout(2, 2, 1e-3, 1e-3)
        field = lcris.random_field(layout, 4.6e-6, 0.2e-6, 3e-3, seed=1)

        database = lcris.Database(self.database_file)
        database.add_tolerance("test", field)

        with h5py.File(self.database_file, "r") as hdf_file:
            dset = hdf_file["tolerance/test/t_lc"]

            assert np.array_equal(np.asarray(dset), field.t_lc)
            assert dset.attrs["kind"] == "random"
            assert dset.attrs["seed"] == 1
            assert dset.attrs["sigma"] == pytest.approx(0.2e-6, rel=1e-10, abs=0.0)

    def test_optimization(self):
        report = lcris.create_box(
            "optimization",
            mode="column",
            initial_power_db=10.0,
            final_power_db=12.0,
            improvement_db=2.0,
            iterations=4,
            evaluations=61,
            voltages=np.array([1.0, 2.0]),
            converged=True,
            seed=None,
            log=[(1, 0, 1.0, 11.0), (1, 1, 2.0, 12.0)],
        )

        database = lcris.Database(self.database_file)
        database.add_optimization("test", report)

        with h5py.File(self.database_file, "r") as hdf_file:
            assert hdf_file["optimization/test/log"].shape == (2, 4)
            assert hdf_file["optimization/test/voltages"].attrs["converged"]

    def test_list_and_delete(self, capsys):
        database = lcris.Database(self.database_file)

        database.list_content()
        assert "farfield" in capsys.readouterr().out

        database.delete_data("farfield/test")

        with h5py.File(self.database_file, "r") as hdf_file:
            assert "farfield/test" not in hdf_file

        with pytest.warns(UserWarning):
            database.delete_data("farfield/test")
