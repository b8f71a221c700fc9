"""
Module with reading functionalities for scenario files.
"""

import configparser
import os

from typing import Any, Callable, Dict, List, Optional

import numpy as np

from typeguard import typechecked

from lcris.analysis import scattering
from lcris.core import box
from lcris.read import read_material
from lcris.util import layout_util, line_util, tolerance_util


BLOCKS = [
    "materials",
    "stack",
    "line",
    "radiator",
    "layout",
    "tolerance",
    "excitation",
    "target",
    "optimizer",
    "geometry",
    "output",
]

_REQUIRED = object()

# Thickness coupling of the line that is used if the scenario does
# not set one. The phase sensitivity is about -250 to -350 deg/um.
GAP_EXPONENT = 1.8


def _to_bool(raw: str) -> bool:
    states = configparser.ConfigParser.BOOLEAN_STATES

    if raw.lower() not in states:
        raise ValueError(f"'{raw}' is not a boolean")

    return states[raw.lower()]


def _to_optional_float(raw: str) -> Optional[float]:
    if raw.lower() == "none":
        return None

    return float(raw)


class _Block:
    """
    Internal class for reading the keys of a scenario block while
    keeping track of the keys that are used and the defaults that
    are applied.
    """

    def __init__(
        self, config: configparser.ConfigParser, name: str, defaults: List[str]
    ) -> None:
        self.name = name
        self.section = dict(config[name]) if config.has_section(name) else {}
        self.defaults = defaults
        self.used = set()

    def get(self, key: str, convert: Callable, default: Any = _REQUIRED) -> Any:
        self.used.add(key)

        if key not in self.section:
            if default is _REQUIRED:
                raise ValueError(f"The required key '{self.name}.{key}' is missing.")

            self.defaults.append(f"{self.name}.{key} = {default}")

            return default

        raw = self.section[key].strip()

        try:
            return convert(raw)

        except ValueError as error:
            raise ValueError(
                f"The value '{raw}' of '{self.name}.{key}' is not valid ({error})."
            ) from error

    def check_keys(self) -> None:
        unknown = sorted(set(self.section) - self.used)

        if unknown:
            raise ValueError(
                f"The block '{self.name}' contains unknown keys: "
                + ", ".join(f"'{self.name}.{key}'" for key in unknown)
                + "."
            )


class ReadScenario:
    """
    Class for reading a scenario file. The scenario file is an INI
    file with the blocks ``[materials]``, ``[stack]``, ``[line]``,
    ``[radiator]``, ``[layout]``, ``[tolerance]``, ``[excitation]``,
    ``[target]``, ``[optimizer]``, ``[geometry]``, and ``[output]``.
    Only the ``[layout]`` block is required. Keys of physical
    quantities carry the unit as suffix (e.g. ``t_nom_m`` or
    ``f_design_hz``).
    """

    @typechecked
    def __init__(self, scenario_file: str) -> None:
        """
        Parameters
        ----------
        scenario_file : str
            Path to the scenario file.

        Returns
        -------
        NoneType
            None
        """

        if not os.path.isfile(scenario_file):
            raise ValueError(f"The scenario file '{scenario_file}' is not found.")

        self.scenario_file = scenario_file

        self.config = configparser.ConfigParser()

        try:
            self.config.read(scenario_file, encoding="utf-8")

        except configparser.Error as error:
            raise ValueError(
                f"The scenario file '{scenario_file}' can not be parsed: {error}"
            ) from error

        unknown = [item for item in self.config.sections() if item not in BLOCKS]

        if unknown:
            raise ValueError(
                f"The scenario file contains unknown blocks: {unknown}. "
                f"Supported blocks are {BLOCKS}."
            )

        if not self.config.has_section("layout"):
            raise ValueError("The scenario file does not contain the required 'layout' block.")

    @typechecked
    def get_scenario(self) -> box.ScenarioBox:
        """
        Function for validating the scenario and creating a box with
        the materials, the calibrated delay line and radiator, the
        layout and the analysis settings.

        Returns
        -------
        lcris.core.box.ScenarioBox
            Box with the scenario.
        """

        defaults = []

        blocks = {name: _Block(self.config, name, defaults) for name in BLOCKS}

        # Materials

        block = blocks["materials"]

        reader = read_material.ReadMaterial(
            lc_name=block.get("lc", str, "GT7-29001"),
            stack_name=block.get("stack", str, "AF32-gold"),
        )

        lc_keys = {
            "eps_perp": "eps_perp",
            "tan_perp": "tan_perp",
            "eps_par": "eps_par",
            "tan_par": "tan_par",
            "v_threshold": "v_threshold_v",
            "v_scale": "v_scale_v",
        }

        overrides = {
            param: block.get(key, float)
            for param, key in lc_keys.items()
            if key in block.section
        }

        material = reader.get_material(overrides=overrides)
        response_base = reader.get_response_base()

        block = blocks["stack"]

        stack_keys = {
            "eps_glass": "eps_glass",
            "tan_glass": "tan_glass",
            "t_glass": "t_glass_m",
            "t_gold": "t_gold_m",
        }

        overrides = {
            param: block.get(key, float)
            for param, key in stack_keys.items()
            if key in block.section
        }

        stack = reader.get_stack(overrides=overrides)

        # Excitation

        block = blocks["excitation"]

        f_design = block.get("f_design_hz", float, 60e9)

        if f_design <= 0.0:
            raise ValueError(
                f"The value of 'excitation.f_design_hz' should be positive ({f_design})."
            )

        wave = box.create_box(
            "wave",
            theta_inc=block.get("theta_inc_deg", float, 0.0),
            phi_inc=block.get("phi_inc_deg", float, 0.0),
            frequency=f_design,
        )

        scattering.check_wave(wave)

        f_start = block.get("f_start_hz", float, 50e9)
        f_stop = block.get("f_stop_hz", float, 70e9)
        n_freq = block.get("n_freq", int, 201)

        if n_freq < 1 or f_start <= 0.0 or (n_freq > 1 and f_stop <= f_start):
            raise ValueError(
                f"The frequency sweep of the 'excitation' block should be "
                f"strictly increasing (f_start_hz = {f_start}, f_stop_hz = "
                f"{f_stop}, n_freq = {n_freq})."
            )

        freq_axis = np.linspace(f_start, f_stop, n_freq)

        theta_min = block.get("theta_min_deg", float, -90.0)
        theta_max = block.get("theta_max_deg", float, 90.0)
        n_theta = block.get("n_theta", int, 721)

        if n_theta < 2 or theta_max <= theta_min or theta_min < -90.0 or theta_max > 90.0:
            raise ValueError(
                f"The angle axis of the 'excitation' block should be strictly "
                f"increasing within [-90, 90] deg (theta_min_deg = {theta_min}, "
                f"theta_max_deg = {theta_max}, n_theta = {n_theta})."
            )

        theta_axis = np.linspace(theta_min, theta_max, n_theta)

        ep_exponent = block.get("ep_exponent", float, 0.5)

        if ep_exponent < 0.0:
            raise ValueError(
                f"The value of 'excitation.ep_exponent' should not be negative ({ep_exponent})."
            )

        # Delay line

        block = blocks["line"]

        fill_max = block.get("fill_max", float, 0.9)
        t_half = block.get("t_half_m", float, 1e-6)
        t_lc_nominal = block.get("t_lc_nominal_m", float, 4.6e-6)
        alpha_extra = block.get("alpha_extra_db_per_m", float, 0.0)
        gap_exponent = block.get("gap_exponent", float, GAP_EXPONENT)

        if "l_phys_m" in block.section:
            for key in ["target_dphi_deg", "target_fom_deg_per_db"]:
                if key in block.section:
                    raise ValueError(
                        f"The keys 'line.l_phys_m' and 'line.{key}' can not be combined."
                    )

            line = box.create_box(
                "line",
                l_phys=block.get("l_phys_m", float),
                t_lc_nominal=t_lc_nominal,
                fill_max=fill_max,
                t_half=t_half,
                alpha_extra=alpha_extra,
                gap_exponent=gap_exponent,
            )

            line_util.check_line(line)

        else:
            target_fom = block.get("target_fom_deg_per_db", _to_optional_float, 80.0)

            line = line_util.calibrate_line(
                block.get("target_dphi_deg", float, 380.0),
                f_design,
                material,
                stack,
                fill_max=fill_max,
                t_half=t_half,
                t_lc_nominal=t_lc_nominal,
                target_fom=target_fom,
                alpha_extra=alpha_extra,
                gap_exponent=gap_exponent,
            )

        # Radiator

        block = blocks["radiator"]

        if block.get("enabled", _to_bool, True):
            f_0 = block.get("f0_hz", float, f_design)
            bw_frac = block.get("bw_frac", float, 0.25)

            if "center_loss_db" in block.section:
                if "eta_target" in block.section:
                    raise ValueError(
                        "The keys 'radiator.center_loss_db' and "
                        "'radiator.eta_target' can not be combined."
                    )

                radiator = box.create_box(
                    "radiator",
                    f0=f_0,
                    bw_frac=bw_frac,
                    center_loss_db=block.get("center_loss_db", float),
                )

            else:
                radiator = scattering.calibrate_radiator(
                    material,
                    stack,
                    line,
                    f_0,
                    eta_target=block.get("eta_target", float, 0.215),
                    bw_frac=bw_frac,
                )

            if radiator.bw_frac <= 0.0 or radiator.center_loss_db < 0.0:
                raise ValueError(
                    f"The radiator should have a positive bandwidth and a "
                    f"non-negative loss (bw_frac = {radiator.bw_frac}, "
                    f"center_loss_db = {radiator.center_loss_db})."
                )

        else:
            radiator = None

        # Layout

        block = blocks["layout"]

        spacing = block.get("spacing_lambda0", float, 0.45)

        d_x = block.get("dx_m", float, layout_util.spacing_from_wavelength(spacing, f_design))
        d_y = block.get("dy_m", float, layout_util.spacing_from_wavelength(spacing, f_design))

        layout = layout_util.build_layout(
            block.get("rows", int),
            block.get("cols", int),
            d_x,
            d_y,
            grid_kind=block.get("grid_kind", str, "triangular"),
        )

        # Tolerance

        block = blocks["tolerance"]

        tolerance = {
            "kind": block.get("kind", str, "uniform"),
            "t_nom": block.get("t_nom_m", float, line.t_lc_nominal),
            "gx": block.get("gx", float, 0.0),
            "gy": block.get("gy", float, 0.0),
            "sigma": block.get("sigma_m", float, 0.0),
            "corr_len": block.get("corr_len_m", float, 3e-3),
            "seed": block.get("seed", int, 0),
            "misalignment": (
                1e-6 * block.get("misalign_um", float, 0.0),
                1e-6 * block.get("misalign_y_um", float, 0.0),
            ),
        }

        if tolerance["kind"] not in ["uniform", "tilted", "random"]:
            raise ValueError(
                f"The value '{tolerance['kind']}' of 'tolerance.kind' is not "
                f"supported. Please use 'uniform', 'tilted', or 'random'."
            )

        if tolerance["t_nom"] <= 0.0 or tolerance["sigma"] < 0.0:
            raise ValueError(
                f"The values of 'tolerance.t_nom_m' ({tolerance['t_nom']}) and "
                f"'tolerance.sigma_m' ({tolerance['sigma']}) should be positive "
                f"and non-negative."
            )

        if tolerance["corr_len"] <= 0.0:
            raise ValueError(
                f"The value of 'tolerance.corr_len_m' should be positive "
                f"({tolerance['corr_len']})."
            )

        if tolerance["kind"] == "tilted":
            try:
                tolerance_util.tilted_field(
                    layout, tolerance["t_nom"], tolerance["gx"], tolerance["gy"]
                )

            except ValueError as error:
                raise ValueError(
                    f"The gradients 'tolerance.gx' ({tolerance['gx']}) and "
                    f"'tolerance.gy' ({tolerance['gy']}) are too large for the "
                    f"layout. {error}"
                ) from error

        if tolerance["misalignment"] != (0.0, 0.0) and radiator is None:
            raise ValueError(
                "The 'tolerance.misalign_um' key requires an enabled radiator."
            )

        # Target

        block = blocks["target"]

        target = (
            block.get("theta_r_deg", float, 0.0),
            block.get("phi_r_deg", float, 0.0),
        )

        if abs(target[0]) >= 90.0 or abs(target[1]) >= 90.0:
            raise ValueError(
                f"The target angles should be in the range (-90, 90) deg "
                f"('target.theta_r_deg' = {target[0]}, 'target.phi_r_deg' = {target[1]})."
            )

        wrap_deg = block.get("wrap_deg", _to_optional_float, 360.0)

        if wrap_deg is not None and wrap_deg <= 0.0:
            raise ValueError(f"The value of 'target.wrap_deg' should be positive ({wrap_deg}).")

        column_constrained = block.get("column_constrained", _to_bool, True)

        window_deg = block.get("window_deg", float, 5.0)

        # Optimizer

        block = blocks["optimizer"]

        optimizer = {
            "budget": block.get("budget", int, 50000),
            "bounds": (block.get("v_min_v", float, 0.0), block.get("v_max_v", float, 20.0)),
            "v_tol": block.get("v_tol_v", float, 0.05),
            "sweep_tol": block.get("sweep_tol_db", float, 0.05),
            "element_wise": block.get("element_wise", _to_bool, False),
        }

        if optimizer["bounds"][0] < 0.0 or optimizer["bounds"][1] <= optimizer["bounds"][0]:
            raise ValueError(
                f"The voltage bounds of the 'optimizer' block are not valid "
                f"({optimizer['bounds']})."
            )

        # Geometry

        block = blocks["geometry"]

        area_ris = block.get("area_ris_m2", float, layout_util.aperture_area(layout))

        geometry = {
            "theta_tx": block.get("theta_tx_deg", float, wave.theta_inc),
            "theta_rx": block.get("theta_rx_deg", float, target[0]),
            "phi_tx": block.get("phi_tx_deg", float, wave.phi_inc),
            "phi_rx": block.get("phi_rx_deg", float, target[1]),
            "area_ris": area_ris,
            "area_mp": block.get("area_mp_m2", float, area_ris),
        }

        if geometry["area_ris"] <= 0.0 or geometry["area_mp"] <= 0.0:
            raise ValueError(
                f"The areas of the 'geometry' block should be positive "
                f"({geometry['area_ris']}, {geometry['area_mp']})."
            )

        # Output

        block = blocks["output"]

        output_dir = block.get("directory", str, "output")
        p_element = block.get("p_element_w", float, 21.5e-9)

        for item in blocks.values():
            item.check_keys()

        return box.create_box(
            "scenario",
            scenario_file=self.scenario_file,
            material=material,
            stack=stack,
            response_base=response_base,
            line=line,
            radiator=radiator,
            layout=layout,
            tolerance=tolerance,
            wave=wave,
            freq_axis=freq_axis,
            theta_axis=theta_axis,
            target=target,
            wrap_deg=wrap_deg,
            column_constrained=column_constrained,
            ep_exponent=ep_exponent,
            optimizer=optimizer,
            geometry=geometry,
            output_dir=output_dir,
            window_deg=window_deg,
            p_element=p_element,
            defaults=defaults,
        )

    @typechecked
    def get_settings(self) -> Dict[str, Dict[str, str]]:
        """
        Function for returning the raw content of the scenario blocks.

        Returns
        -------
        dict
            Dictionary with the keys and values per block.
        """

        return {name: dict(self.config[name]) for name in self.config.sections()}
