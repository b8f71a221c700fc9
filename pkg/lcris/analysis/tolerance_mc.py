"""
Module with functionalities for the Monte Carlo analysis of the LC
thickness tolerance and for fitting a tilted LC layer.
"""

import warnings

from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from tqdm.auto import tqdm
from typeguard import typechecked

from lcris.analysis import metrics, optimize_bias, scattering, steering
from lcris.core import box
from lcris.util import tolerance_util


@typechecked
def thickness_field(
    layout: box.LayoutBox, settings: Dict, seed: Optional[int] = None
) -> box.ToleranceBox:
    """
    Function for creating the thickness field that is described by
    the tolerance settings of a scenario.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    settings : dict
        Dictionary with the ``kind`` ('uniform', 'tilted', or
        'random'), ``t_nom``, ``gx``, ``gy``, ``sigma``,
        ``corr_len``, and ``misalignment``.
    seed : int, None
        Seed of the random field.

    Returns
    -------
    lcris.core.box.ToleranceBox
        Box with the thickness field.
    """

    if settings["kind"] == "uniform":
        field = tolerance_util.uniform_field(layout, settings["t_nom"])

    elif settings["kind"] == "tilted":
        field = tolerance_util.tilted_field(
            layout, settings["t_nom"], settings["gx"], settings["gy"]
        )

    elif settings["kind"] == "random":
        field = tolerance_util.random_field(
            layout,
            settings["t_nom"],
            settings["sigma"],
            settings["corr_len"],
            seed=seed,
        )

    else:
        raise ValueError(f"The tolerance kind '{settings['kind']}' is not supported.")

    misalignment = settings.get("misalignment", (0.0, 0.0))

    if misalignment != (0.0, 0.0):
        field = tolerance_util.with_misalignment(field, *misalignment)

    return field


@typechecked
def peak_direction(
    layout: box.LayoutBox,
    material: box.LcMaterialBox,
    stack: box.StackBox,
    line: box.LineBox,
    wave: box.WaveBox,
    voltages: np.ndarray,
    field: box.ToleranceBox,
    theta_axis: np.ndarray,
    phi: float = 0.0,
    radiator: Optional[box.RadiatorBox] = None,
    ep_exponent: float = 0.5,
) -> Tuple[float, float]:
    """
    Function for finding the global maximum of the far field in an
    azimuth cut at the frequency of the incident wave.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    wave : lcris.core.box.WaveBox
        Box with the incident plane wave.
    voltages : np.ndarray
        RMS bias voltage per element (V).
    field : lcris.core.box.ToleranceBox
        Box with the actual LC thickness.
    theta_axis : np.ndarray
        Azimuth angles (deg) of the cut.
    phi : float
        Elevation angle (deg) of the cut.
    radiator : lcris.core.box.RadiatorBox, None
        Box with the radiator.
    ep_exponent : float
        Exponent of the cosine element pattern.

    Returns
    -------
    float
        Azimuth angle (deg) of the maximum.
    float
        Far-field power (dB) at the maximum.
    """

    states = scattering.element_states(
        material,
        stack,
        line,
        voltages,
        field.t_lc,
        np.array([wave.frequency]),
        radiator=radiator,
        misalignment=field.misalignment,
    )

    grid = scattering.far_field(
        layout, states, wave, theta_axis, np.array([phi]), ep_exponent, n_threads=1
    )

    magnitude = np.abs(grid.values[0, :, 0])
    idx = int(np.argmax(magnitude))

    return float(theta_axis[idx]), float(20.0 * np.log10(magnitude[idx]))


@typechecked
def fit_tilt_gradient(
    layout: box.LayoutBox,
    material: box.LcMaterialBox,
    stack: box.StackBox,
    line: box.LineBox,
    wave: box.WaveBox,
    t_nom: float,
    steer_deg: float = 30.0,
    peak_deg: float = 42.0,
    radiator: Optional[box.RadiatorBox] = None,
    ep_exponent: float = 0.5,
    theta_axis: Optional[np.ndarray] = None,
    n_scan: int = 24,
    n_bisect: int = 30,
    v_max: float = 20.0,
) -> float:
    """
    Function for fitting the azimuth gradient of a tilted LC layer
    for which a profile that is converted into voltages with the
    nominal thickness steers the beam to ``peak_deg`` instead of
    ``steer_deg``. The gradient is scanned over the range for which
    the thickness stays above the floor of the random fields and
    refined by bisection on the error of the peak angle.

    Parameters
    ----------
    layout : lcris.core.box.LayoutBox
        Box with the layout.
    material : lcris.core.box.LcMaterialBox
        Box with the LC material.
    stack : lcris.core.box.StackBox
        Box with the stack materials.
    line : lcris.core.box.LineBox
        Box with the delay-line parameters.
    wave : lcris.core.box.WaveBox
        Box with the incident plane wave.
    t_nom : float
        LC thickness (m) at the centroid.
    steer_deg : float
        Azimuth angle (deg) of the synthesized profile.
    peak_deg : float
        Azimuth angle (deg) at which the beam should peak.
    radiator : lcris.core.box.RadiatorBox, None
        Box with the radiator.
    ep_exponent : float
        Exponent of the cosine element pattern.
    theta_axis : np.ndarray, None
        Azimuth angles (deg) of the peak search. A 0.05 deg grid
        between -89.95 and 89.95 deg is used if set to ``None``.
    n_scan : int
        Number of scan points on each side of zero gradient.
    n_bisect : int
        Number of bisection steps.
    v_max : float
        Maximum bias voltage (V) of the converted profile.

    Returns
    -------
    float
        Thickness gradient along x (m/m).
    """

    if theta_axis is None:
        theta_axis = np.linspace(-89.95, 89.95, 3599)

    profile = steering.synthesize_profile(layout, (steer_deg, 0.0), wave)

    t_assumed = np.full(layout.n_elements, t_nom)

    voltages = steering.phases_to_voltages(
        profile, material, stack, line, t_assumed, v_max=v_max
    )

    def _angle_error(gx: float) -> float:
        field = tolerance_util.tilted_field(layout, t_nom, gx, 0.0)

        theta_pk, _ = peak_direction(
            layout,
            material,
            stack,
            line,
            wave,
            voltages,
            field,
            theta_axis,
            radiator=radiator,
            ep_exponent=ep_exponent,
        )

        return theta_pk - peak_deg

    x_pos = layout.positions[:, 0]

    g_pos = (t_nom - tolerance_util.T_FLOOR) / max(-np.amin(x_pos), 1e-30)
    g_neg = (t_nom - tolerance_util.T_FLOOR) / max(np.amax(x_pos), 1e-30)

    scan = np.concatenate(
        [np.linspace(-g_neg, 0.0, n_scan + 1)[:-1], np.linspace(0.0, g_pos, n_scan + 1)]
    )

    errors = np.array([_angle_error(float(gx)) for gx in scan])

    brackets = np.flatnonzero(np.sign(errors[:-1]) != np.sign(errors[1:]))

    if brackets.size == 0:
        warnings.warn(
            f"The beam peak does not pass {peak_deg} deg within the "
            f"admissible gradients. The closest scan point is returned."
        )

        return float(scan[np.argmin(np.abs(errors))])

    # Bracket that is closest to a uniform layer
    i_zero = n_scan
    i_bracket = brackets[np.argmin(np.abs(brackets + 0.5 - i_zero))]

    g_low, g_high = float(scan[i_bracket]), float(scan[i_bracket + 1])
    e_low = errors[i_bracket]

    for _ in range(n_bisect):
        g_mid = 0.5 * (g_low + g_high)
        e_mid = _angle_error(g_mid)

        if e_mid == 0.0:
            return g_mid

        if np.sign(e_mid) == np.sign(e_low):
            g_low, e_low = g_mid, e_mid
        else:
            g_high = g_mid

    e_final_low = abs(_angle_error(g_low))
    e_final_high = abs(_angle_error(g_high))

    return g_low if e_final_low <= e_final_high else g_high


class ToleranceMonteCarlo:
    """
    Class for the Monte Carlo analysis of the beam of a surface with
    random thickness fields. The voltages of each trial are
    calculated with the nominal LC thickness, while the far field is
    calculated with the thickness field of the trial.
    """

    @typechecked
    def __init__(self, scenario: box.ScenarioBox) -> None:
        """
        Parameters
        ----------
        scenario : lcris.core.box.ScenarioBox
            Box with the scenario.

        Returns
        -------
        NoneType
            None
        """

        self.scenario = scenario

        wrapped = scenario.wrap_deg is not None
        dphi_max = scenario.wrap_deg if wrapped else 360.0

        self.profile = steering.synthesize_profile(
            scenario.layout,
            scenario.target,
            scenario.wave,
            dphi_max=dphi_max,
            column_constrained=scenario.column_constrained,
            wrapped=wrapped,
        )

        t_assumed = np.full(scenario.layout.n_elements, scenario.tolerance["t_nom"])

        self.voltages = steering.phases_to_voltages(
            self.profile,
            scenario.material,
            scenario.stack,
            scenario.line,
            t_assumed,
            v_max=scenario.optimizer["bounds"][1],
        )

    @typechecked
    def run_trial(
        self, seed: Optional[int] = None, optimize: bool = False
    ) -> Dict[str, float]:
        """
        Method for running a single trial.

        Parameters
        ----------
        seed : int, None
            Seed of the thickness field.
        optimize : bool
            Optimize the voltages and report the improvement of the
            received power in the target direction.

        Returns
        -------
        dict
            Dictionary with the ``peak_eta``, ``peak_theta_deg``,
            ``angle_offset_deg``, ``n_clamped``, and
            ``improvement_db``.
        """

        scenario = self.scenario

        field = thickness_field(scenario.layout, scenario.tolerance, seed=seed)

        states = scattering.element_states(
            scenario.material,
            scenario.stack,
            scenario.line,
            self.voltages,
            field.t_lc,
            np.array([scenario.wave.frequency]),
            radiator=scenario.radiator,
            misalignment=field.misalignment,
        )

        grid = scattering.far_field(
            scenario.layout,
            states,
            scenario.wave,
            scenario.theta_axis,
            np.array([scenario.target[1]]),
            scenario.ep_exponent,
            n_threads=1,
        )

        rcs = scattering.ris_rcs(grid, scenario.layout, scenario.wave)

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")

            spectrum = metrics.efficiency_from_simulation(
                rcs, scenario.layout, scenario.target, window=180.0
            )

        result = {
            "peak_eta": float(spectrum.eta[0]),
            "peak_theta_deg": float(spectrum.theta_track[0]),
            "angle_offset_deg": float(spectrum.theta_track[0] - scenario.target[0]),
            "n_clamped": float(field.n_clamped),
            "improvement_db": np.nan,
        }

        if optimize:
            optimizer = optimize_bias.BiasOptimizer(
                scenario.layout,
                field,
                scenario.material,
                scenario.stack,
                scenario.line,
                scenario.wave,
                scenario.target,
                radiator=scenario.radiator,
                ep_exponent=scenario.ep_exponent,
                bounds=scenario.optimizer["bounds"],
                v_tol=scenario.optimizer["v_tol"],
                sweep_tol=scenario.optimizer["sweep_tol"],
            )

            if scenario.optimizer["element_wise"]:
                report = optimizer.optimize_elements(
                    self.voltages, scenario.optimizer["budget"], seed=seed
                )
            else:
                report = optimizer.optimize_columns(
                    self.voltages, scenario.optimizer["budget"], seed=seed
                )

            result["improvement_db"] = report.improvement_db

        return result

    @typechecked
    def run(
        self, n_trials: int, seed: Optional[int] = None, optimize: bool = False
    ) -> pd.DataFrame:
        """
        Method for running the Monte Carlo trials. Trial ``i`` uses
        the seed ``seed + i``.

        Parameters
        ----------
        n_trials : int
            Number of trials.
        seed : int, None
            Seed of the first trial. The seed of the tolerance
            settings is used if set to ``None``.
        optimize : bool
            Optimize the voltages of each trial.

        Returns
        -------
        pandas.DataFrame
            Table with one row per trial.
        """

        if n_trials < 1:
            raise ValueError(f"The number of trials should be at least 1 ({n_trials}).")

        if seed is None:
            seed = self.scenario.tolerance["seed"]

        rows = []

        for i in tqdm(range(n_trials), desc="Monte Carlo trials"):
            trial_seed = seed + i
            result = self.run_trial(seed=trial_seed, optimize=optimize)

            rows.append({"trial": i, "seed": trial_seed, **result})

        return pd.DataFrame(rows)

    @staticmethod
    @typechecked
    def aggregate(trials: pd.DataFrame) -> pd.DataFrame:
        """
        Method for calculating the median and interquartile range of
        the trial results.

        Parameters
        ----------
        trials : pandas.DataFrame
            Table that is returned by
            :func:`~lcris.analysis.tolerance_mc.ToleranceMonteCarlo.run`.

        Returns
        -------
        pandas.DataFrame
            Table with the ``median``, ``q25``, ``q75``, and ``iqr``
            of each quantity.
        """

        rows = []

        for key in ["peak_eta", "peak_theta_deg", "angle_offset_deg", "improvement_db"]:
            values = trials[key].to_numpy(dtype=float)

            if np.all(np.isnan(values)):
                q_25 = q_50 = q_75 = np.nan
            else:
                q_25, q_50, q_75 = np.nanpercentile(values, [25.0, 50.0, 75.0])

            rows.append(
                {
                    "quantity": key,
                    "median": q_50,
                    "q25": q_25,
                    "q75": q_75,
                    "iqr": q_75 - q_25,
                }
            )

        return pd.DataFrame(rows)
