import math

import numpy as np
import pytest

import lcris
from lcris.core import constants


class TestMetrics:
    def setup_class(self):
        self.limit = 1e-10
        self.frequency = 60e9

        spacing = lcris.spacing_from_wavelength(0.45, self.frequency)
        self.layout = lcris.build_layout(10, 12, spacing, spacing)
        self.area = lcris.aperture_area(self.layout)

        self.wave = lcris.create_box(
            "wave", theta_inc=0.0, phi_inc=0.0, frequency=self.frequency
        )

        self.freq_axis = np.linspace(50e9, 70e9, 201)

    def _traces(self, s21_ris_db, s21_mp_db, area_mp=None):
        if area_mp is None:
            area_mp = self.area

        return lcris.create_box(
            "traces",
            freq_axis=self.freq_axis,
            s21_ris_db=s21_ris_db,
            s21_mp_db=s21_mp_db,
            theta_tx=0.0,
            theta_rx=30.0,
            phi_tx=0.0,
            phi_rx=0.0,
            area_ris=self.area,
            area_mp=area_mp,
        )

    def test_bandwidth_3db(self):
        mag_db = -np.abs(self.freq_axis - 60e9) / 1e9

        bandwidth = lcris.bandwidth_3db(self.freq_axis, mag_db, scale="db")

        assert bandwidth.f_lo == pytest.approx(
            60e9 - constants.HALF_POWER_DB * 1e9, rel=1e-9, abs=0.0
        )

        assert bandwidth.f_hi == pytest.approx(
            60e9 + constants.HALF_POWER_DB * 1e9, rel=1e-9, abs=0.0
        )

        assert bandwidth.f_center == pytest.approx(60e9, rel=1e-9, abs=0.0)

        assert bandwidth.fractional_bw == pytest.approx(
            2.0 * constants.HALF_POWER_DB / 60.0, rel=1e-8, abs=0.0
        )

        assert bandwidth.flag is None

        bandwidth_power = lcris.bandwidth_3db(
            self.freq_axis, 10.0 ** (mag_db / 10.0), scale="power"
        )

        assert bandwidth_power.f_lo == pytest.approx(bandwidth.f_lo, rel=1e-9, abs=0.0)

        bandwidth_field = lcris.bandwidth_3db(
            self.freq_axis, 10.0 ** (mag_db / 20.0), scale="field"
        )

        assert bandwidth_field.f_hi == pytest.approx(bandwidth.f_hi, rel=1e-9, abs=0.0)

    def test_bandwidth_one_sided(self):
        mag_db = -(self.freq_axis - 50e9) / 1e9

        with pytest.warns(UserWarning):
            bandwidth = lcris.bandwidth_3db(self.freq_axis, mag_db, scale="db")

        assert bandwidth.flag == "lower edge outside sweep"
        assert bandwidth.f_lo == 50e9

        assert bandwidth.f_hi == pytest.approx(
            50e9 + constants.HALF_POWER_DB * 1e9, rel=1e-9, abs=0.0
        )

    def test_bandwidth_flat(self):
        with pytest.warns(UserWarning):
            bandwidth = lcris.bandwidth_3db(self.freq_axis, np.ones(201))

        assert bandwidth.flag == "flat"
        assert math.isnan(bandwidth.fractional_bw)

        with pytest.raises(ValueError):
            lcris.bandwidth_3db(self.freq_axis, np.ones(201), scale="linear")

    def test_phase_bandwidth(self):
        freq_axis = np.linspace(30e9, 90e9, 61)
        dphi = 360.0 * freq_axis / 60e9

        bandwidth = lcris.phase_bandwidth_25pct(freq_axis, dphi, 60e9)

        assert bandwidth.f_lo == pytest.approx(45e9, rel=1e-9, abs=0.0)
        assert bandwidth.f_hi == pytest.approx(75e9, rel=1e-9, abs=0.0)
        assert bandwidth.fractional_bw == pytest.approx(0.5, rel=1e-9, abs=0.0)
        assert bandwidth.flag is None

        # Center frequency between two samples
        bandwidth = lcris.phase_bandwidth_25pct(freq_axis, dphi, 60.5e9)

        assert bandwidth.f_lo == pytest.approx(0.75 * 60.5e9, rel=1e-9, abs=0.0)
        assert bandwidth.f_hi == pytest.approx(1.25 * 60.5e9, rel=1e-9, abs=0.0)

        with pytest.warns(UserWarning):
            bandwidth = lcris.phase_bandwidth_25pct(
                self.freq_axis, 360.0 * self.freq_axis / 60e9, 60e9
            )

        assert bandwidth.f_lo == 50e9
        assert bandwidth.f_hi == 70e9

        with pytest.raises(ValueError):
            lcris.phase_bandwidth_25pct(freq_axis, dphi, 100e9)

    def test_track_peak(self):
        theta_axis = np.linspace(-90.0, 90.0, 361)
        freq_axis = np.array([55e9, 60e9, 65e9])

        # Beam that moves by 2 deg per frequency
        centers = np.array([28.0, 30.0, 32.0])
        values = np.exp(-(((theta_axis[np.newaxis, :] - centers[:, np.newaxis]) / 3.0) ** 2))

        grid = lcris.create_box(
            "farfield",
            theta_axis=theta_axis,
            phi_axis=np.array([0.0]),
            freq_axis=freq_axis,
            values=values[:, :, np.newaxis],
            normalization="raw",
        )

        track = lcris.track_peak(grid, (30.0, 0.0), window=5.0)

        assert track.theta_pk == pytest.approx(centers, rel=self.limit, abs=0.0)
        assert track.magnitude == pytest.approx(np.ones(3), rel=self.limit, abs=0.0)
        assert not track.flag

        with pytest.warns(UserWarning):
            track = lcris.track_peak(grid, (20.0, 0.0), window=3.0)

        assert track.flag
        assert track.at_edge[0]

        with pytest.raises(ValueError):
            lcris.track_peak(grid, (30.0, 0.0), window=0.5)

    def test_efficiency_from_simulation(self):
        freq_axis = np.array([55e9, 60e9, 65e9])
        n_elements = self.layout.n_elements

        states = lcris.create_box(
            "element",
            v_bias=np.zeros(n_elements),
            t_lc=np.full(n_elements, 4.6e-6),
            freq_axis=freq_axis,
            gamma=np.ones((3, n_elements), dtype=complex),
        )

        grid = lcris.far_field(
            self.layout,
            states,
            self.wave,
            np.linspace(-89.5, 89.5, 359),
            np.array([0.0]),
            n_threads=1,
        )

        rcs = lcris.ris_rcs(grid, self.layout, self.wave)

        spectrum = lcris.efficiency_from_simulation(rcs, self.layout, (0.0, 0.0))

        assert spectrum.eta == pytest.approx(np.ones(3), rel=1e-9, abs=0.0)
        assert spectrum.theta_track == pytest.approx(np.zeros(3), rel=0.0, abs=1e-12)
        assert not np.any(spectrum.flagged)

        with pytest.raises(ValueError):
            lcris.efficiency_from_simulation(grid, self.layout, (0.0, 0.0))

    def test_reduce_measurement(self):
        traces = self._traces(np.full(201, -40.0), np.full(201, -40.0))
        spectrum = lcris.reduce_measurement(traces)

        assert spectrum.eta == pytest.approx(np.ones(201), rel=1e-9, abs=0.0)

        rcs_plate = lcris.metal_plate_rcs(
            self.area, 0.0, 30.0, 0.0, 0.0, self.freq_axis
        )

        assert spectrum.sigma_mp == pytest.approx(rcs_plate, rel=self.limit, abs=0.0)

        traces = self._traces(np.full(201, -50.0), np.full(201, -40.0))
        spectrum = lcris.reduce_measurement(traces)

        assert spectrum.eta == pytest.approx(np.full(201, 0.1), rel=1e-9, abs=0.0)

        # A common offset of the traces does not change the efficiency
        s21_ris = -45.0 + np.sin(self.freq_axis / 1e9)
        s21_mp = -40.0 + 0.5 * np.cos(self.freq_axis / 1e9)

        eta_1 = lcris.reduce_measurement(self._traces(s21_ris, s21_mp)).eta
        eta_2 = lcris.reduce_measurement(self._traces(s21_ris + 7.0, s21_mp + 7.0)).eta

        assert eta_2 == pytest.approx(eta_1, rel=1e-9, abs=0.0)

        # A plate with half the area of the surface
        spectrum = lcris.reduce_measurement(
            self._traces(np.full(201, -40.0), np.full(201, -40.0), area_mp=0.5 * self.area)
        )

        assert spectrum.eta == pytest.approx(np.full(201, 0.25), rel=1e-9, abs=0.0)

    def test_reduce_measurement_invalid(self):
        s21_ris = np.full(201, -40.0)
        s21_ris[10] = np.nan

        with pytest.warns(UserWarning):
            spectrum = lcris.reduce_measurement(self._traces(s21_ris, np.full(201, -40.0)))

        assert spectrum.flagged[10]
        assert np.sum(spectrum.flagged) == 1
        assert math.isnan(spectrum.eta[10])

        with pytest.raises(ValueError):
            lcris.reduce_measurement(self._traces(np.full(200, -40.0), np.full(201, -40.0)))

    def test_traces_from_efficiency(self):
        eta = 0.2 + 0.1 * np.cos(self.freq_axis / 1e9)

        spectrum = lcris.create_box(
            "efficiency",
            freq_axis=self.freq_axis,
            eta=eta,
            theta_track=np.full(201, 30.0),
            phi_track=np.zeros(201),
        )

        traces = lcris.traces_from_efficiency(
            spectrum, (0.0, 30.0, 0.0, 0.0), self.area, 2.0 * self.area, s21_mp_db=-35.0
        )

        assert np.all(traces.s21_mp_db == -35.0)

        assert traces.s21_ris_db == pytest.approx(
            -35.0 + 10.0 * np.log10(eta) - 10.0 * np.log10(4.0), rel=1e-9, abs=0.0
        )

        assert lcris.reduce_measurement(traces).eta == pytest.approx(eta, rel=1e-9, abs=0.0)

    def test_loss_budget(self):
        budget = lcris.loss_budget(
            0.215, {"lc": 0.42, "glass": 0.12, "conductor": 0.08, "radiator": 0.062}
        )

        assert budget["eta"] == 0.215
        assert budget["residual"] == pytest.approx(0.103, rel=1e-9, abs=0.0)

        with pytest.raises(ValueError):
            lcris.loss_budget(0.5, {"lc": 0.6})

        with pytest.raises(ValueError):
            lcris.loss_budget(0.5, {"lc": -0.1})

    def test_element_loss_budget(self):
        reader = lcris.ReadMaterial()
        material = reader.get_material()
        stack = reader.get_stack()

        line = lcris.calibrate_line(380.0, self.frequency, material, stack, target_fom=80.0)
        radiator = lcris.calibrate_radiator(material, stack, line, self.frequency)

        budget = lcris.element_loss_budget(
            material, stack, line, radiator, 2.0, 4.6e-6, self.frequency
        )

        assert budget["reflected"] == pytest.approx(0.215, rel=1e-9, abs=0.0)
        assert sum(budget.values()) == pytest.approx(1.0, rel=1e-12, abs=0.0)
        assert all(value >= 0.0 for value in budget.values())

        budget = lcris.element_loss_budget(
            material, stack, line, None, 20.0, 4.6e-6, self.frequency
        )

        assert budget["radiator"] == 0.0
        assert budget["reflected"] > 10.0 ** (-4.75 / 10.0)
