import os

import numpy as np
import pytest

import lcris
from lcris.util import test_util


class TestReadScenario:
    def setup_class(self):
        self.limit = 1e-10
        self.scenario_file = "./scenario_read.ini"

    def teardown_class(self):
        os.remove(self.scenario_file)

    def _read(self, blocks=None, **overrides):
        test_util.create_scenario(self.scenario_file, blocks=blocks, **overrides)

        return lcris.ReadScenario(self.scenario_file).get_scenario()

    def test_minimal_scenario(self):
        scenario = self._read(blocks=["layout"])

        assert scenario.layout.n_elements == 120
        assert scenario.layout.grid_kind == "triangular"
        assert scenario.wave.frequency == 60e9
        assert scenario.freq_axis.shape == (201,)
        assert scenario.theta_axis.shape == (721,)
        assert scenario.target == (0.0, 0.0)
        assert scenario.wrap_deg == 360.0
        assert scenario.column_constrained
        assert scenario.ep_exponent == 0.5
        assert scenario.output_dir == "output"
        assert scenario.p_element == pytest.approx(21.5e-9, rel=self.limit, abs=0.0)

        assert scenario.optimizer == {
            "budget": 50000,
            "bounds": (0.0, 20.0),
            "v_tol": 0.05,
            "sweep_tol": 0.05,
            "element_wise": False,
        }

        assert scenario.tolerance["kind"] == "uniform"
        assert scenario.tolerance["t_nom"] == 4.6e-6
        assert scenario.tolerance["misalignment"] == (0.0, 0.0)

        assert scenario.radiator.center_loss_db == pytest.approx(1.9256, rel=1e-3, abs=0.0)

        line_metrics = lcris.line_metrics(
            scenario.line, scenario.material, scenario.stack, 60e9
        )

        assert line_metrics["fom"] == pytest.approx(80.0, rel=1e-4, abs=0.0)
        assert scenario.line.gap_exponent == 1.8

        assert scenario.geometry["area_ris"] == pytest.approx(
            lcris.aperture_area(scenario.layout), rel=self.limit, abs=0.0
        )

        assert "excitation.f_design_hz = 60000000000.0" in scenario.defaults
        assert "target.theta_r_deg = 0.0" in scenario.defaults
        assert not any(item.startswith("layout.rows") for item in scenario.defaults)

    def test_full_scenario(self):
        scenario = self._read(
            layout__grid_kind="rectangular",
            target__wrap_deg="none",
            target__column_constrained="false",
            radiator__center_loss_db=1.5,
            line__l_phys_m=0.012,
            line__gap_exponent=0.5,
            tolerance__misalign_um=20.0,
            optimizer__element_wise="yes",
            materials__eps_par=3.6,
        )

        assert scenario.layout.grid_kind == "rectangular"
        assert scenario.wrap_deg is None
        assert not scenario.column_constrained
        assert scenario.radiator.center_loss_db == 1.5
        assert scenario.line.l_phys == 0.012
        assert scenario.line.gap_exponent == 0.5
        assert scenario.tolerance["misalignment"] == pytest.approx(
            (20e-6, 0.0), rel=self.limit, abs=0.0
        )
        assert scenario.optimizer["element_wise"]
        assert scenario.material.eps_par == 3.6
        assert scenario.target == (30.0, 0.0)
        assert scenario.freq_axis == pytest.approx(
            np.linspace(55e9, 65e9, 11), rel=self.limit, abs=0.0
        )

        assert lcris.ReadScenario(self.scenario_file).get_settings()["target"][
            "wrap_deg"
        ] == "none"

    def test_missing_layout(self):
        test_util.create_scenario(self.scenario_file, blocks=["target"])

        with pytest.raises(ValueError) as error:
            lcris.ReadScenario(self.scenario_file)

        assert "layout" in str(error.value)

    def test_missing_key(self):
        with pytest.raises(ValueError) as error:
            self._read(layout__rows=None)

        assert str(error.value) == "The required key 'layout.rows' is missing."

    def test_invalid_value(self):
        with pytest.raises(ValueError) as error:
            self._read(layout__rows="ten")

        assert "'layout.rows'" in str(error.value)

        with pytest.raises(ValueError) as error:
            self._read(target__column_constrained="maybe")

        assert "'target.column_constrained'" in str(error.value)

        with pytest.raises(ValueError) as error:
            self._read(target__theta_r_deg=95.0)

        assert "target.theta_r_deg" in str(error.value)

        with pytest.raises(ValueError):
            self._read(tolerance__kind="wedge")

        with pytest.raises(ValueError):
            self._read(optimizer__v_max_v=-1.0)

    def test_invalid_tolerance(self):
        with pytest.raises(ValueError) as error:
            self._read(tolerance__kind="tilted", tolerance__gx=1.0)

        assert "'tolerance.gx'" in str(error.value)
        assert "corner" in str(error.value)

        # A tilt that is only too large along y
        with pytest.raises(ValueError) as error:
            self._read(tolerance__kind="tilted", tolerance__gx=1e-5, tolerance__gy=-1e-3)

        assert "upper" in str(error.value)

        scenario = self._read(tolerance__kind="tilted", tolerance__gx=1e-5)
        assert scenario.tolerance["gx"] == 1e-5

        with pytest.raises(ValueError) as error:
            self._read(tolerance__kind="random", tolerance__corr_len_m=0.0)

        assert "tolerance.corr_len_m" in str(error.value)

        with pytest.raises(ValueError) as error:
            self._read(tolerance__kind="random", tolerance__sigma_m=-1e-7)

        assert "tolerance.sigma_m" in str(error.value)

        with pytest.raises(ValueError):
            self._read(line__gap_exponent=-1.0)

    def test_unknown_keys(self):
        with pytest.raises(ValueError) as error:
            self._read(layout__colums=12)

        assert "'layout.colums'" in str(error.value)

        test_util.create_scenario(self.scenario_file)

        with open(self.scenario_file, "a", encoding="utf-8") as out_file:
            out_file.write("[plotting]\ncolor = red\n")

        with pytest.raises(ValueError) as error:
            lcris.ReadScenario(self.scenario_file)

        assert "plotting" in str(error.value)

    def test_exclusive_keys(self):
        with pytest.raises(ValueError):
            self._read(line__l_phys_m=0.012, line__target_dphi_deg=360.0)

        with pytest.raises(ValueError):
            self._read(radiator__center_loss_db=1.5, radiator__eta_target=0.2)

        with pytest.raises(ValueError) as error:
            self._read(radiator__enabled="false", tolerance__misalign_um=20.0)

        assert "radiator" in str(error.value)

    def test_missing_file(self):
        with pytest.raises(ValueError):
            lcris.ReadScenario("./missing_scenario.ini")
