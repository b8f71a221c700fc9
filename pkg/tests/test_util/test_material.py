import math

import numpy as np
import pytest

import lcris
from lcris.util import material_util


class TestMaterial:
    def setup_class(self):
        self.limit = 1e-10
        self.material = lcris.ReadMaterial().get_material()
        self.response = lcris.ReadMaterial().get_response_base()

    def test_mixing_fraction(self):
        assert lcris.mixing_fraction(self.material, 0.0) == 0.0
        assert lcris.mixing_fraction(self.material, 2.0) == 0.0

        v_half = 2.0 + 3.5 * math.log(2.0)
        assert lcris.mixing_fraction(self.material, v_half) == pytest.approx(
            0.5, rel=self.limit, abs=0.0
        )

        s_mix = lcris.mixing_fraction(self.material, np.linspace(0.0, 20.0, 101))
        assert np.all(np.diff(s_mix) >= 0.0)
        assert np.all(s_mix < 1.0)

        with pytest.raises(ValueError) as error:
            lcris.mixing_fraction(self.material, -1.0)

        assert "should not be negative" in str(error.value)

        for v_bias in [math.nan, np.array([5.0, math.inf])]:
            with pytest.raises(ValueError) as error:
                lcris.mixing_fraction(self.material, v_bias)

            assert "finite" in str(error.value)

        with pytest.raises(ValueError):
            lcris.lc_permittivity(self.material, math.nan)

    def test_lc_permittivity(self):
        eps_lc, tan_lc = lcris.lc_permittivity(self.material, 0.0)
        assert eps_lc == pytest.approx(2.46, rel=self.limit, abs=0.0)
        assert tan_lc == pytest.approx(0.0116, rel=self.limit, abs=0.0)

        eps_lc, tan_lc = lcris.lc_permittivity(self.material, 20.0)
        assert eps_lc == pytest.approx(3.52375, rel=1e-5, abs=0.0)
        assert 0.0064 < tan_lc < 0.0116

    def test_invert_permittivity(self):
        v_bias = np.array([2.5, 5.0, 10.0, 19.0])
        eps_lc, _ = lcris.lc_permittivity(self.material, v_bias)

        assert lcris.invert_permittivity(self.material, eps_lc) == pytest.approx(
            v_bias, rel=1e-9, abs=0.0
        )

        assert lcris.invert_permittivity(self.material, 2.46) == pytest.approx(
            2.0, rel=self.limit, abs=0.0
        )

    def test_invert_clipping(self):
        eps_min, eps_max = lcris.permittivity_range(self.material)

        assert eps_min == 2.46
        assert eps_max == pytest.approx(3.53 * (1.0 - 1e-6), rel=self.limit, abs=0.0)

        v_max = lcris.invert_permittivity(self.material, eps_max * (1.0 + 1e-13))
        assert np.isfinite(v_max)

        with pytest.raises(ValueError) as error:
            lcris.invert_permittivity(self.material, 3.53)

        assert "outside the reachable range" in str(error.value)

        with pytest.raises(ValueError):
            lcris.invert_permittivity(self.material, 2.4)

    def test_calibrate_v_scale(self):
        v_scale = lcris.calibrate_v_scale(2.0)
        assert v_scale == pytest.approx(18.0 / math.log(100.0), rel=self.limit, abs=0.0)

        material = lcris.ReadMaterial().get_material(overrides={"v_scale": v_scale})
        assert lcris.mixing_fraction(material, 20.0) == pytest.approx(
            0.99, rel=self.limit, abs=0.0
        )

        with pytest.raises(ValueError):
            lcris.calibrate_v_scale(25.0)

    def test_response_times(self):
        tau_on, tau_off = lcris.response_times(self.response, 4.6e-6)
        assert tau_on == pytest.approx(15e-3, rel=self.limit, abs=0.0)
        assert tau_off == pytest.approx(72e-3, rel=self.limit, abs=0.0)

        tau_on_2, tau_off_2 = lcris.response_times(self.response, 9.2e-6)
        assert tau_on_2 / tau_on == pytest.approx(4.0, rel=1e-12, abs=0.0)
        assert tau_off_2 / tau_off == pytest.approx(4.0, rel=1e-12, abs=0.0)

        with pytest.raises(ValueError):
            lcris.response_times(self.response, 0.0)

    def test_array_power(self):
        assert lcris.array_power(21.5e-9, 1000000) == pytest.approx(
            21.5e-3, rel=1e-12, abs=0.0
        )

    def test_check_material(self):
        material = lcris.create_box(
            "lc_material",
            eps_perp=3.0,
            tan_perp=0.01,
            eps_par=2.5,
            tan_par=0.01,
            v_threshold=1.0,
            v_scale=1.0,
        )

        with pytest.raises(ValueError) as error:
            material_util.check_material(material)

        assert "eps_par > eps_perp" in str(error.value)

        with pytest.raises(ValueError) as error:
            lcris.ReadMaterial().get_material(overrides={"tan_par": 0.0})

        assert "tan_par" in str(error.value)
