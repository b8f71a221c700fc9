import pytest

import lcris


class TestReadMaterial:
    def setup_class(self):
        self.limit = 1e-10

    def test_available(self):
        reader = lcris.ReadMaterial()

        assert reader.available("lc") == ["GT7-29001"]
        assert reader.available("stack") == ["AF32-gold"]

    def test_get_material(self):
        material = lcris.ReadMaterial().get_material()

        assert material.name == "GT7-29001"
        assert material.eps_perp == 2.46
        assert material.eps_par == 3.53
        assert material.tan_perp == 0.0116
        assert material.tan_par == 0.0064
        assert material.v_threshold == 2.0
        assert material.v_scale == 3.5

        material = lcris.ReadMaterial().get_material(overrides={"eps_par": 3.6})

        assert material.eps_par == 3.6
        assert material.eps_perp == 2.46

        with pytest.raises(ValueError) as error:
            lcris.ReadMaterial().get_material(overrides={"eps_zz": 3.6})

        assert "eps_zz" in str(error.value)

        with pytest.raises(ValueError):
            lcris.ReadMaterial().get_material(overrides={"eps_par": 2.0})

    def test_get_stack(self):
        stack = lcris.ReadMaterial().get_stack()

        assert stack.name == "AF32-gold"
        assert stack.eps_glass == 5.1
        assert stack.tan_glass == 0.009
        assert stack.t_glass == pytest.approx(300e-6, rel=self.limit, abs=0.0)
        assert stack.conductor == "gold"

        stack = lcris.ReadMaterial().get_stack(overrides={"t_gold": 3e-6})
        assert stack.t_gold == 3e-6

    def test_response_base(self):
        response = lcris.ReadMaterial().get_response_base()

        assert response.tau_on_ref == pytest.approx(15e-3, rel=self.limit, abs=0.0)
        assert response.tau_off_ref == pytest.approx(72e-3, rel=self.limit, abs=0.0)
        assert response.t_lc_ref == pytest.approx(4.6e-6, rel=self.limit, abs=0.0)

    def test_unknown_names(self):
        with pytest.raises(ValueError) as error:
            lcris.ReadMaterial(lc_name="E7")

        assert "GT7-29001" in str(error.value)

        with pytest.raises(ValueError):
            lcris.ReadMaterial(stack_name="quartz")
