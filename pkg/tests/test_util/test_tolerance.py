import numpy as np
import pytest

import lcris
from lcris.util import tolerance_util


class TestTolerance:
    def setup_class(self):
        self.limit = 1e-10
        self.t_nom = 4.6e-6
        self.spacing = lcris.spacing_from_wavelength(0.45, 60e9)
        self.layout = lcris.build_layout(25, 30, self.spacing, self.spacing)

    def test_uniform_field(self):
        field = lcris.uniform_field(self.layout, self.t_nom)

        assert field.kind == "uniform"
        assert np.all(field.t_lc == self.t_nom)
        assert field.misalignment == (0.0, 0.0)

        with pytest.raises(ValueError):
            lcris.uniform_field(self.layout, 0.0)

    def test_tilted_field(self):
        field = lcris.tilted_field(self.layout, self.t_nom, 1e-4, 0.0)

        assert np.mean(field.t_lc) == pytest.approx(self.t_nom, rel=1e-9, abs=0.0)

        x_pos = self.layout.positions[:, 0]
        assert field.t_lc[np.argmax(x_pos)] > field.t_lc[np.argmin(x_pos)]

        with pytest.raises(ValueError) as error:
            lcris.tilted_field(self.layout, self.t_nom, 1e-2, 0.0)

        assert "lower-left" in str(error.value)

    def test_random_field_zero_sigma(self):
        field = lcris.random_field(self.layout, self.t_nom, 0.0, 3e-3, seed=1)

        assert field.kind == "random"
        assert np.all(field.t_lc == self.t_nom)
        assert field.n_clamped == 0

    def test_random_field_seed(self):
        field_1 = lcris.random_field(self.layout, self.t_nom, 0.5e-6, 3e-3, seed=5)
        field_2 = lcris.random_field(self.layout, self.t_nom, 0.5e-6, 3e-3, seed=5)
        field_3 = lcris.random_field(self.layout, self.t_nom, 0.5e-6, 3e-3, seed=6)

        assert np.array_equal(field_1.t_lc, field_2.t_lc)
        assert not np.array_equal(field_1.t_lc, field_3.t_lc)

    def test_random_field_no_clamping(self):
        sigma = self.t_nom / 6.0

        for seed in range(5):
            field = lcris.random_field(self.layout, self.t_nom, sigma, 3e-3, seed=seed)
            assert field.n_clamped == 0

    def test_random_field_clamping(self):
        with pytest.warns(UserWarning):
            field = lcris.random_field(self.layout, self.t_nom, 4e-6, 3e-3, seed=2)

        assert field.n_clamped > 0
        assert np.amin(field.t_lc) == tolerance_util.T_FLOOR

    def test_random_field_statistics(self):
        spacing = lcris.spacing_from_wavelength(0.5, 60e9)
        layout = lcris.build_layout(100, 100, spacing, spacing, "rectangular")

        sigma = 0.5e-6
        field = lcris.random_field(layout, self.t_nom, sigma, 1e-9, seed=3)

        assert np.mean(field.t_lc) == pytest.approx(self.t_nom, rel=0.0, abs=0.05 * sigma)
        assert np.std(field.t_lc) == pytest.approx(sigma, rel=0.1, abs=0.0)

    def test_random_field_correlation(self):
        layout = lcris.build_layout(10, 10, 1e-3, 1e-3, "rectangular")

        sigma = 0.5e-6
        products = []

        for seed in range(100):
            field = lcris.random_field(layout, self.t_nom, sigma, 1e-3, seed=seed)
            t_norm = (field.t_lc.reshape(10, 10) - self.t_nom) / sigma
            products.append((t_norm[:, 1:] * t_norm[:, :-1]).ravel())

        assert np.mean(products) == pytest.approx(np.exp(-1.0), rel=0.0, abs=0.1)

    def test_rotation_consistency(self):
        layout = lcris.build_layout(10, 12, self.spacing, self.spacing)
        rotated = lcris.rotate_layout(layout, 90.0)

        field = lcris.random_field(layout, self.t_nom, 0.5e-6, 3e-3, seed=11)
        field_rot = lcris.random_field(rotated, self.t_nom, 0.5e-6, 3e-3, seed=11)

        assert field_rot.t_lc == pytest.approx(field.t_lc, rel=1e-6, abs=0.0)

    def test_misalignment(self):
        field = lcris.uniform_field(self.layout, self.t_nom)
        shifted = lcris.with_misalignment(field, 30e-6, 0.0)

        assert shifted.misalignment == (30e-6, 0.0)
        assert field.misalignment == (0.0, 0.0)
        assert np.array_equal(shifted.t_lc, field.t_lc)

        assert lcris.misalignment_bandwidth((0.0, 0.0), 60e9) == np.inf
        assert lcris.misalignment_bandwidth((30e-6, 0.0), 60e9) == pytest.approx(
            60e9 * 0.0819, rel=self.limit, abs=0.0
        )

        assert lcris.misalignment_response((0.0, 0.0), 65e9, 60e9) == 1.0
        assert lcris.misalignment_response((30e-6, 0.0), 60e9, 60e9) == pytest.approx(
            0.99, rel=self.limit, abs=0.0
        )

        response = lcris.misalignment_response(
            (30e-6, 0.0), np.array([55e9, 60e9, 65e9]), 60e9
        )

        assert response[0] == pytest.approx(response[2], rel=self.limit, abs=0.0)
        assert response[0] < response[1]

        with pytest.warns(UserWarning):
            lcris.misalignment_response((-30e-6, 0.0), 60e9, 60e9)
