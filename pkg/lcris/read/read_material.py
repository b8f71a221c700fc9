"""
Module with reading functionalities for the material presets.
"""

import json
import pathlib

from typing import Dict, List, Optional

from typeguard import typechecked

from lcris.core import box
from lcris.util import material_util


class ReadMaterial:
    """
    Class for reading the LC material, the stack materials and the
    response-time base from the presets in ``material_data.json``.
    """

    @typechecked
    def __init__(
        self, lc_name: str = "GT7-29001", stack_name: str = "AF32-gold"
    ) -> None:
        """
        Parameters
        ----------
        lc_name : str
            Name of the LC mixture. The name is also used for
            selecting the response-time base.
        stack_name : str
            Name of the glass and conductor stack.

        Returns
        -------
        NoneType
            None
        """

        data_file = pathlib.Path(__file__).parents[1].resolve() / "data/material_data.json"

        with open(data_file, "r", encoding="utf-8") as json_file:
            self.material_data = json.load(json_file)

        if lc_name not in self.material_data["lc"]:
            raise ValueError(
                f"The LC material '{lc_name}' is not available. Please "
                f"select one of the following: {self.available('lc')}."
            )

        if stack_name not in self.material_data["stack"]:
            raise ValueError(
                f"The stack '{stack_name}' is not available. Please "
                f"select one of the following: {self.available('stack')}."
            )

        self.lc_name = lc_name
        self.stack_name = stack_name

    @typechecked
    def available(self, category: str) -> List[str]:
        """
        Function for listing the presets of a category.

        Parameters
        ----------
        category : str
            Category of the presets ('lc', 'stack', or 'response').

        Returns
        -------
        list(str)
            Names of the presets.
        """

        return list(self.material_data[category].keys())

    @staticmethod
    def _merge(preset: Dict, overrides: Optional[Dict], keys: List[str]) -> Dict:
        values = {key: float(preset[key]) for key in keys}

        if overrides is not None:
            for key, value in overrides.items():
                if key not in values:
                    raise ValueError(
                        f"The parameter '{key}' can not be overridden. "
                        f"Supported parameters are {keys}."
                    )

                values[key] = float(value)

        return values

    @typechecked
    def get_material(self, overrides: Optional[Dict] = None) -> box.LcMaterialBox:
        """
        Function for creating a box with the LC material.

        Parameters
        ----------
        overrides : dict, None
            Dictionary with parameter values that replace the
            values of the preset.

        Returns
        -------
        lcris.core.box.LcMaterialBox
            Box with the LC material.
        """

        keys = ["eps_perp", "tan_perp", "eps_par", "tan_par", "v_threshold", "v_scale"]

        values = self._merge(self.material_data["lc"][self.lc_name], overrides, keys)

        material = box.create_box("lc_material", name=self.lc_name, **values)

        material_util.check_material(material)

        return material

    @typechecked
    def get_stack(self, overrides: Optional[Dict] = None) -> box.StackBox:
        """
        Function for creating a box with the stack materials.

        Parameters
        ----------
        overrides : dict, None
            Dictionary with parameter values that replace the
            values of the preset.

        Returns
        -------
        lcris.core.box.StackBox
            Box with the stack materials.
        """

        preset = self.material_data["stack"][self.stack_name]

        keys = ["eps_glass", "tan_glass", "t_glass", "t_gold"]

        values = self._merge(preset, overrides, keys)

        stack = box.create_box(
            "stack", name=self.stack_name, conductor=preset["conductor"], **values
        )

        material_util.check_stack(stack)

        return stack

    @typechecked
    def get_response_base(self) -> box.ResponseBaseBox:
        """
        Function for creating a box with the response times of the
        LC mixture at the reference thickness.

        Returns
        -------
        lcris.core.box.ResponseBaseBox
            Box with the response-time base.
        """

        if self.lc_name not in self.material_data["response"]:
            raise ValueError(
                f"There are no response times available for '{self.lc_name}'."
            )

        preset = self.material_data["response"][self.lc_name]

        values = {key: float(value) for key, value in preset.items()}

        if min(values.values()) <= 0.0:
            raise ValueError(f"The response-time base should be positive ({values}).")

        return box.create_box("response_base", **values)
