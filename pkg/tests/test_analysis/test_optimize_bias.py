import numpy as np
import pytest

import lcris


class TestOptimize:
    def setup_class(self):
        self.frequency = 60e9
        self.target = (30.0, 0.0)

        reader = lcris.ReadMaterial()
        self.material = reader.get_material()
        self.stack = reader.get_stack()

        self.line = lcris.calibrate_line(
            380.0, self.frequency, self.material, self.stack, target_fom=80.0
        )

        spacing = lcris.spacing_from_wavelength(0.45, self.frequency)
        self.layout = lcris.build_layout(10, 12, spacing, spacing)

        self.wave = lcris.create_box(
            "wave", theta_inc=0.0, phi_inc=0.0, frequency=self.frequency
        )

        self.uniform = lcris.uniform_field(self.layout, 4.6e-6)

        profile = lcris.synthesize_profile(
            self.layout, self.target, self.wave, column_constrained=True
        )

        self.initial = lcris.phases_to_voltages(
            profile,
            self.material,
            self.stack,
            self.line,
            self.uniform.t_lc,
            v_max=20.0,
        )

    def _optimizer(self, field, layout=None, target=None):
        if layout is None:
            layout = self.layout

        if target is None:
            target = self.target

        return lcris.BiasOptimizer(
            layout, field, self.material, self.stack, self.line, self.wave, target
        )

    def test_evaluations_per_sweep(self):
        optimizer = self._optimizer(self.uniform)

        assert optimizer.n_gs == 13
        assert optimizer.evaluations_per_sweep(12) == 180

    def test_single_element(self):
        layout = lcris.build_layout(1, 1, self.layout.dx, self.layout.dy)
        field = lcris.uniform_field(layout, 4.6e-6)

        optimizer = self._optimizer(field, layout=layout, target=(0.0, 0.0))

        report = optimizer.optimize_elements(np.zeros(1), 100)

        assert report.mode == "element"
        assert report.voltages[0] >= 19.95
        assert report.improvement_db > 0.0
        assert report.evaluations <= 100

    def test_budget_exhausted(self):
        optimizer = self._optimizer(self.uniform)

        budget = 1 + optimizer.evaluations_per_sweep(12)
        report = optimizer.optimize_columns(np.zeros(120), budget)

        assert not report.converged
        assert report.evaluations == budget
        assert report.iterations == 12
        assert len(report.log) == 12
        assert report.improvement_db > 3.0

        with pytest.raises(ValueError) as error:
            optimizer.optimize_columns(np.zeros(120), budget - 1)

        assert "budget" in str(error.value)

    def test_uniform_field(self):
        optimizer = self._optimizer(self.uniform)

        report = optimizer.optimize_columns(self.initial, 5000)

        assert report.mode == "column"
        assert report.converged
        assert report.evaluations <= 5000
        assert 0.0 <= report.improvement_db <= 0.5

        assert report.initial_power_db == pytest.approx(
            optimizer.objective_power(np.clip(self.initial, 0.0, 20.0)), rel=1e-9, abs=0.0
        )

        assert report.final_power_db == pytest.approx(
            optimizer.objective_power(report.voltages), rel=1e-9, abs=0.0
        )

        for group in lcris.column_groups(self.layout):
            assert np.all(report.voltages[group] == report.voltages[group[0]])

    def test_element_wise(self):
        optimizer = self._optimizer(self.uniform)

        report_column = optimizer.optimize_columns(self.initial, 20000)
        report_element = optimizer.optimize_elements(self.initial, 20000)

        assert report_element.final_power_db >= report_column.final_power_db - 0.1

    def test_disorder(self):
        field = lcris.random_field(self.layout, 4.6e-6, 0.5e-6, 3e-3, seed=1)

        report_uniform = self._optimizer(self.uniform).optimize_columns(self.initial, 5000)
        report_random = self._optimizer(field).optimize_columns(self.initial, 5000)

        assert report_random.improvement_db >= report_uniform.improvement_db

    def test_deterministic(self):
        field = lcris.random_field(self.layout, 4.6e-6, 0.5e-6, 3e-3, seed=2)

        report_1 = self._optimizer(field).optimize_columns(self.initial, 3000, seed=3)
        report_2 = self._optimizer(field).optimize_columns(self.initial, 3000, seed=3)

        assert report_1.seed == 3
        assert np.array_equal(report_1.voltages, report_2.voltages)
        assert report_1.log == report_2.log

    def test_invalid(self):
        with pytest.raises(ValueError):
            lcris.BiasOptimizer(
                self.layout,
                lcris.uniform_field(lcris.build_layout(2, 2, 1e-3, 1e-3), 4.6e-6),
                self.material,
                self.stack,
                self.line,
                self.wave,
                self.target,
            )

        with pytest.raises(ValueError):
            lcris.BiasOptimizer(
                self.layout,
                self.uniform,
                self.material,
                self.stack,
                self.line,
                self.wave,
                self.target,
                bounds=(10.0, 5.0),
            )

        optimizer = self._optimizer(self.uniform)

        with pytest.raises(ValueError):
            optimizer.objective_power(np.full(120, 25.0))

    def test_initial_bounds(self):
        optimizer = self._optimizer(self.uniform)

        for initial in [np.full(120, 25.0), np.full(120, -1.0)]:
            with pytest.raises(ValueError) as error:
                optimizer.optimize_columns(initial, 5000)

            assert "bounds" in str(error.value)

        with pytest.raises(ValueError) as error:
            optimizer.optimize_elements(np.zeros(119), 5000)

        assert "initial voltages" in str(error.value)


class TestDisorderRecovery:
    def setup_class(self):
        self.frequency = 60e9
        self.target = (30.0, 0.0)

        reader = lcris.ReadMaterial()
        self.material = reader.get_material()
        self.stack = reader.get_stack()

        self.line = lcris.calibrate_line(
            380.0,
            self.frequency,
            self.material,
            self.stack,
            target_fom=80.0,
            gap_exponent=1.8,
        )

        spacing = lcris.spacing_from_wavelength(0.45, self.frequency)
        self.layout = lcris.build_layout(25, 30, spacing, spacing)

        self.wave = lcris.create_box(
            "wave", theta_inc=0.0, phi_inc=0.0, frequency=self.frequency
        )

        self.uniform = lcris.uniform_field(self.layout, 4.6e-6)

        profile = lcris.synthesize_profile(
            self.layout, self.target, self.wave, column_constrained=True
        )

        self.initial = lcris.phases_to_voltages(
            profile, self.material, self.stack, self.line, self.uniform.t_lc
        )

    def _optimize(self, field):
        optimizer = lcris.BiasOptimizer(
            self.layout,
            field,
            self.material,
            self.stack,
            self.line,
            self.wave,
            self.target,
        )

        return optimizer.optimize_columns(self.initial, 50000)

    def test_uniform_thickness(self):
        report = self._optimize(self.uniform)

        assert 0.0 <= report.improvement_db <= 0.5

    def test_random_thickness(self):
        improvement = []

        for seed in range(10):
            field = lcris.random_field(self.layout, 4.6e-6, 0.5e-6, 3e-3, seed=seed)
            report = self._optimize(field)

            assert report.evaluations <= 50000

            improvement.append(report.improvement_db)

        assert np.all(np.array(improvement) >= 0.0)
        assert np.median(improvement) >= 3.0
