import os
import shutil

import numpy as np
import pandas as pd
import pytest

import lcris
from lcris.util import test_util


class TestToleranceMC:
    def setup_class(self):
        self.limit = 1e-10
        self.scenario_file = "./scenario_mc.ini"

        reader = lcris.ReadMaterial()
        self.material = reader.get_material()
        self.stack = reader.get_stack()

        self.line = lcris.calibrate_line(
            380.0, 60e9, self.material, self.stack, target_fom=80.0
        )

        spacing = lcris.spacing_from_wavelength(0.45, 60e9)
        self.layout = lcris.build_layout(10, 12, spacing, spacing)

        self.wave = lcris.create_box(
            "wave", theta_inc=0.0, phi_inc=0.0, frequency=60e9
        )

    def teardown_class(self):
        os.remove(self.scenario_file)

        if os.path.isdir("output"):
            shutil.rmtree("output")

    def test_thickness_field(self):
        settings = {
            "kind": "tilted",
            "t_nom": 4.6e-6,
            "gx": 1e-5,
            "gy": 0.0,
            "sigma": 0.0,
            "corr_len": 3e-3,
            "misalignment": (20e-6, 0.0),
        }

        field = lcris.thickness_field(self.layout, settings)

        assert field.kind == "tilted"
        assert field.misalignment == (20e-6, 0.0)
        assert np.ptp(field.t_lc) > 0.0

        settings["kind"] = "random"
        settings["sigma"] = 0.3e-6

        field_1 = lcris.thickness_field(self.layout, settings, seed=4)
        field_2 = lcris.thickness_field(self.layout, settings, seed=4)

        assert np.array_equal(field_1.t_lc, field_2.t_lc)

        settings["kind"] = "wedge"

        with pytest.raises(ValueError) as error:
            lcris.thickness_field(self.layout, settings)

        assert "wedge" in str(error.value)

    def test_uniform_trials(self):
        test_util.create_scenario(self.scenario_file)
        scenario = lcris.ReadScenario(self.scenario_file).get_scenario()

        monte_carlo = lcris.ToleranceMonteCarlo(scenario)
        trials = monte_carlo.run(3, seed=5)

        assert list(trials.columns) == [
            "trial",
            "seed",
            "peak_eta",
            "peak_theta_deg",
            "angle_offset_deg",
            "n_clamped",
            "improvement_db",
        ]

        assert list(trials["seed"]) == [5, 6, 7]
        assert np.all(trials["peak_eta"] == trials["peak_eta"][0])
        assert 0.0 < trials["peak_eta"][0] < 1.0
        assert np.all(np.abs(trials["angle_offset_deg"]) <= 1.0)
        assert np.all(np.isnan(trials["improvement_db"]))

        summary = lcris.ToleranceMonteCarlo.aggregate(trials)

        assert list(summary["quantity"]) == [
            "peak_eta",
            "peak_theta_deg",
            "angle_offset_deg",
            "improvement_db",
        ]

        assert summary["iqr"][0] == 0.0
        assert summary["median"][0] == pytest.approx(
            trials["peak_eta"][0], rel=self.limit, abs=0.0
        )

        assert np.isnan(summary["median"][3])

        with pytest.raises(ValueError):
            monte_carlo.run(0)

    def test_random_trials(self):
        test_util.create_scenario(
            self.scenario_file, tolerance__kind="random", tolerance__sigma_m=0.3e-6
        )

        scenario = lcris.ReadScenario(self.scenario_file).get_scenario()

        trials_1 = lcris.ToleranceMonteCarlo(scenario).run(4, seed=1)
        trials_2 = lcris.ToleranceMonteCarlo(scenario).run(4, seed=1)

        pd.testing.assert_frame_equal(trials_1, trials_2)

        assert np.unique(trials_1["peak_eta"]).size == 4
        assert np.all(trials_1["n_clamped"] == 0.0)

        # The seed of the scenario is used by default
        trials_3 = lcris.ToleranceMonteCarlo(scenario).run(1)
        assert trials_3["seed"][0] == 0

    def test_optimized_trial(self):
        test_util.create_scenario(
            self.scenario_file, tolerance__kind="random", tolerance__sigma_m=0.3e-6
        )

        scenario = lcris.ReadScenario(self.scenario_file).get_scenario()

        result = lcris.ToleranceMonteCarlo(scenario).run_trial(seed=3, optimize=True)

        assert np.isfinite(result["improvement_db"])
        assert result["improvement_db"] >= 0.0

    def test_fit_tilt_gradient(self):
        g_x = lcris.fit_tilt_gradient(
            self.layout,
            self.material,
            self.stack,
            self.line,
            self.wave,
            4.6e-6,
            steer_deg=30.0,
            peak_deg=31.0,
        )

        assert g_x != 0.0

        profile = lcris.synthesize_profile(self.layout, (30.0, 0.0), self.wave)
        t_nom = np.full(self.layout.n_elements, 4.6e-6)

        voltages = lcris.phases_to_voltages(
            profile, self.material, self.stack, self.line, t_nom
        )

        field = lcris.tilted_field(self.layout, 4.6e-6, g_x, 0.0)

        theta_pk, _ = lcris.peak_direction(
            self.layout,
            self.material,
            self.stack,
            self.line,
            self.wave,
            voltages,
            field,
            np.linspace(-89.95, 89.95, 3599),
        )

        assert theta_pk == pytest.approx(31.0, rel=0.0, abs=0.1)

    def test_tilt_degradation(self):
        line = lcris.calibrate_line(
            380.0, 60e9, self.material, self.stack, target_fom=80.0, gap_exponent=1.8
        )

        layout = lcris.build_layout(25, 30, self.layout.dx, self.layout.dy)
        theta_axis = np.linspace(-89.95, 89.95, 3599)

        g_x = lcris.fit_tilt_gradient(
            layout,
            self.material,
            self.stack,
            line,
            self.wave,
            4.6e-6,
            steer_deg=30.0,
            peak_deg=42.0,
            theta_axis=theta_axis,
        )

        profile = lcris.synthesize_profile(layout, (30.0, 0.0), self.wave)
        uniform = lcris.uniform_field(layout, 4.6e-6)

        voltages = lcris.phases_to_voltages(
            profile, self.material, self.stack, line, uniform.t_lc
        )

        peaks = [
            lcris.peak_direction(
                layout,
                self.material,
                self.stack,
                line,
                self.wave,
                voltages,
                field,
                theta_axis,
            )
            for field in [uniform, lcris.tilted_field(layout, 4.6e-6, g_x, 0.0)]
        ]

        assert peaks[0][0] == pytest.approx(30.0, rel=0.0, abs=0.2)
        assert 38.0 <= peaks[1][0] <= 45.0
        assert 2.0 <= peaks[0][1] - peaks[1][1] <= 4.0

        # Thickness change between the outer columns
        x_pos = layout.positions[:, 0]
        assert abs(g_x) * np.ptp(x_pos) < 4e-6
