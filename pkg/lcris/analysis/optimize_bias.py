"""
Module with functionalities for optimizing the bias voltages of the
surface towards maximum received power in a target direction.
"""

import math

from typing import List, Optional, Tuple

import numpy as np

from typeguard import typechecked

from lcris.analysis import scattering
from lcris.core import box
from lcris.util import layout_util


INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1 / phi
INV_PHI_SQUARE = (3.0 - math.sqrt(5.0)) / 2.0  # 1 / phi^2


class BiasOptimizer:
    """
    Class for maximizing the received power in a target direction by
    cyclic coordinate ascent over the bias voltages of the columns
    or of the individual elements. Each coordinate is optimized with
    a golden-section search and a new voltage is only accepted if it
    increases the power. The power is evaluated with the actual LC
    thickness of the elements.
    """

    @typechecked
    def __init__(
        self,
        layout: box.LayoutBox,
        tolerance: box.ToleranceBox,
        material: box.LcMaterialBox,
        stack: box.StackBox,
        line: box.LineBox,
        wave: box.WaveBox,
        target: Tuple[float, float],
        radiator: Optional[box.RadiatorBox] = None,
        ep_exponent: float = 0.5,
        bounds: Tuple[float, float] = (0.0, 20.0),
        v_tol: float = 0.05,
        sweep_tol: float = 0.05,
    ) -> None:
        """
        Parameters
        ----------
        layout : lcris.core.box.LayoutBox
            Box with the layout.
        tolerance : lcris.core.box.ToleranceBox
            Box with the actual LC thickness of the elements.
        material : lcris.core.box.LcMaterialBox
            Box with the LC material.
        stack : lcris.core.box.StackBox
            Box with the stack materials.
        line : lcris.core.box.LineBox
            Box with the delay-line parameters.
        wave : lcris.core.box.WaveBox
            Box with the incident plane wave. The power is optimized
            at the frequency of the wave.
        target : tuple(float, float)
            Azimuth and elevation angle (deg) of the target direction.
        radiator : lcris.core.box.RadiatorBox, None
            Box with the radiator.
        ep_exponent : float
            Exponent of the cosine element pattern.
        bounds : tuple(float, float)
            Voltage range (V) of the search.
        v_tol : float
            Voltage tolerance (V) of the golden-section search.
        sweep_tol : float
            The optimization is converged when a sweep over all
            coordinates increases the power by less than
            ``sweep_tol`` (dB).

        Returns
        -------
        NoneType
            None
        """

        if tolerance.t_lc.size != layout.n_elements:
            raise ValueError(
                f"The thickness field has {tolerance.t_lc.size} values while "
                f"the layout has {layout.n_elements} elements."
            )

        if bounds[1] <= bounds[0] or bounds[0] < 0.0:
            raise ValueError(f"The voltage bounds {bounds} are not valid.")

        self.layout = layout
        self.tolerance = tolerance
        self.material = material
        self.stack = stack
        self.line = line
        self.wave = wave
        self.target = target
        self.radiator = radiator
        self.bounds = bounds
        self.v_tol = v_tol
        self.sweep_tol = sweep_tol

        self.weights = scattering.steering_vector(
            layout,
            wave,
            np.array([target[0]]),
            np.array([target[1]]),
            wave.frequency,
            ep_exponent,
        )[0]

        # Number of golden-section steps to reach the voltage tolerance
        self.n_gs = max(
            int(math.ceil(math.log(v_tol / (bounds[1] - bounds[0])) / math.log(INV_PHI))),
            0,
        )

    def _contribution(self, indices: np.ndarray, v_bias: np.ndarray) -> np.ndarray:
        gamma = scattering.element_reflection(
            self.material,
            self.stack,
            self.line,
            v_bias,
            self.tolerance.t_lc[indices],
            self.wave.frequency,
            radiator=self.radiator,
            misalignment=self.tolerance.misalignment,
        )

        return gamma * self.weights[indices]

    @staticmethod
    def _to_db(field_sum: complex) -> float:
        if field_sum == 0.0:
            return -math.inf

        return 20.0 * math.log10(abs(field_sum))

    @typechecked
    def objective_power(self, voltages: np.ndarray) -> float:
        """
        Method for calculating the received power in the target
        direction, ``20 log10 |E|``.

        Parameters
        ----------
        voltages : np.ndarray
            RMS bias voltage per element (V).

        Returns
        -------
        float
            Received power (dB).
        """

        if voltages.size != self.layout.n_elements:
            raise ValueError(
                f"The number of voltages ({voltages.size}) is not equal to "
                f"the number of elements ({self.layout.n_elements})."
            )

        if np.any(voltages < self.bounds[0]) or np.any(voltages > self.bounds[1]):
            raise ValueError(
                f"The voltages should be within the bounds {self.bounds} V."
            )

        indices = np.arange(self.layout.n_elements)

        return self._to_db(complex(np.sum(self._contribution(indices, voltages))))

    def evaluations_per_sweep(self, n_coord: int) -> int:
        """
        Method for calculating the number of objective evaluations
        of a sweep over ``n_coord`` coordinates.

        Parameters
        ----------
        n_coord : int
            Number of coordinates.

        Returns
        -------
        int
            Number of evaluations.
        """

        return n_coord * (self.n_gs + 2)

    def _golden_section(self, trial_power) -> Tuple[float, float]:
        low, high = self.bounds
        width = high - low

        v_c = low + INV_PHI_SQUARE * width
        v_d = low + INV_PHI * width
        p_c = trial_power(v_c)
        p_d = trial_power(v_d)

        for _ in range(self.n_gs):
            width *= INV_PHI

            if p_c > p_d:
                high = v_d
                v_d, p_d = v_c, p_c
                v_c = low + INV_PHI_SQUARE * width
                p_c = trial_power(v_c)

            else:
                low = v_c
                v_c, p_c = v_d, p_d
                v_d = low + INV_PHI * width
                p_d = trial_power(v_d)

        if p_c > p_d:
            return v_c, p_c

        return v_d, p_d

    def _coordinate_ascent(
        self,
        groups: List[np.ndarray],
        initial: np.ndarray,
        budget: int,
        seed: Optional[int],
        mode: str,
    ) -> box.OptimizationBox:
        n_coord = len(groups)
        per_sweep = self.evaluations_per_sweep(n_coord)

        if budget < 1 + per_sweep:
            raise ValueError(
                f"The budget of {budget} evaluations is smaller than a single "
                f"sweep, which requires at least {1 + per_sweep} evaluations."
            )

        if initial.size != self.layout.n_elements:
            raise ValueError(
                f"The number of initial voltages ({initial.size}) is not equal "
                f"to the number of elements ({self.layout.n_elements})."
            )

        if np.any(initial < self.bounds[0]) or np.any(initial > self.bounds[1]):
            raise ValueError(
                f"The initial voltages should be within the bounds {self.bounds} V "
                f"(range = {np.amin(initial)} to {np.amax(initial)} V)."
            )

        voltages = np.array(initial, dtype=float)

        indices = np.arange(self.layout.n_elements)
        contribution = self._contribution(indices, voltages)
        field_sum = complex(np.sum(contribution))

        evaluations = 1
        initial_power = self._to_db(field_sum)
        power = initial_power

        rng = np.random.default_rng(seed) if seed is not None else None

        iterations = 0
        sweep = 0
        converged = False
        log = []

        while evaluations + per_sweep <= budget:
            sweep += 1
            sweep_start = power

            if rng is None:
                order = np.arange(n_coord)
            else:
                order = rng.permutation(n_coord)

            for coord in order:
                group = groups[coord]
                rest = field_sum - complex(np.sum(contribution[group]))

                def _trial_power(v_bias: float) -> float:
                    trial = self._contribution(group, np.full(group.size, v_bias))
                    return self._to_db(rest + complex(np.sum(trial)))

                v_best, p_best = self._golden_section(_trial_power)

                evaluations += self.n_gs + 2
                iterations += 1

                if p_best > power:
                    voltages[group] = v_best
                    contribution[group] = self._contribution(
                        group, np.full(group.size, v_best)
                    )
                    field_sum = rest + complex(np.sum(contribution[group]))
                    power = p_best

                log.append((sweep, int(coord), float(voltages[group[0]]), power))

            if power - sweep_start < self.sweep_tol:
                converged = True
                break

        return box.create_box(
            "optimization",
            mode=mode,
            initial_power_db=initial_power,
            final_power_db=power,
            improvement_db=power - initial_power,
            iterations=iterations,
            evaluations=evaluations,
            voltages=voltages,
            converged=converged,
            seed=seed,
            log=log,
        )

    @typechecked
    def optimize_columns(
        self, initial: np.ndarray, budget: int, seed: Optional[int] = None
    ) -> box.OptimizationBox:
        """
        Method for optimizing one bias voltage per column.

        Parameters
        ----------
        initial : np.ndarray
            Initial RMS bias voltage per element (V).
        budget : int
            Maximum number of objective evaluations.
        seed : int, None
            Seed for the order in which the columns are visited in
            each sweep. The columns are visited from left to right
            if set to ``None``.

        Returns
        -------
        lcris.core.box.OptimizationBox
            Box with the optimization report.
        """

        groups = layout_util.column_groups(self.layout)

        return self._coordinate_ascent(groups, initial, budget, seed, "column")

    @typechecked
    def optimize_elements(
        self, initial: np.ndarray, budget: int, seed: Optional[int] = None
    ) -> box.OptimizationBox:
        """
        Method for optimizing the bias voltage of each element.

        Parameters
        ----------
        initial : np.ndarray
            Initial RMS bias voltage per element (V).
        budget : int
            Maximum number of objective evaluations.
        seed : int, None
            Seed for the order in which the elements are visited in
            each sweep. The natural order is used if set to ``None``.

        Returns
        -------
        lcris.core.box.OptimizationBox
            Box with the optimization report.
        """

        groups = [np.array([i]) for i in range(self.layout.n_elements)]

        return self._coordinate_ascent(groups, initial, budget, seed, "element")
