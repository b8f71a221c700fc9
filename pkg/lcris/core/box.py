"""
Module with classes for storing data in ``Box`` objects.
"""

import numpy as np


def create_box(boxtype, **kwargs):
    """
    Function for creating a :class:`~lcris.core.box.Box`.

    Parameters
    ----------
    boxtype : str
        Type of the box ('lc_material', 'stack', 'response_base',
        'line', 'shifter', 'radiator', 'layout', 'tolerance',
        'element', 'wave', 'farfield', 'profile', 'peaktrack',
        'bandwidth', 'efficiency', 'traces', 'optimization',
        or 'scenario').

    Returns
    -------
    lcris.core.box
        Box with the data and parameters.
    """

    if boxtype == "lc_material":
        box = LcMaterialBox()
        box.eps_perp = kwargs["eps_perp"]
        box.tan_perp = kwargs["tan_perp"]
        box.eps_par = kwargs["eps_par"]
        box.tan_par = kwargs["tan_par"]
        box.v_threshold = kwargs["v_threshold"]
        box.v_scale = kwargs["v_scale"]
        if "name" in kwargs:
            box.name = kwargs["name"]

    elif boxtype == "stack":
        box = StackBox()
        box.eps_glass = kwargs["eps_glass"]
        box.tan_glass = kwargs["tan_glass"]
        box.t_glass = kwargs["t_glass"]
        box.t_gold = kwargs["t_gold"]
        if "conductor" in kwargs:
            box.conductor = kwargs["conductor"]
        if "name" in kwargs:
            box.name = kwargs["name"]

    elif boxtype == "response_base":
        box = ResponseBaseBox()
        box.tau_on_ref = kwargs["tau_on_ref"]
        box.tau_off_ref = kwargs["tau_off_ref"]
        box.t_lc_ref = kwargs["t_lc_ref"]

    elif boxtype == "line":
        box = LineBox()
        box.l_phys = kwargs["l_phys"]
        box.t_lc_nominal = kwargs["t_lc_nominal"]
        box.fill_max = kwargs["fill_max"]
        box.t_half = kwargs["t_half"]
        box.alpha_extra = kwargs["alpha_extra"]
        box.gap_exponent = kwargs["gap_exponent"]

    elif boxtype == "shifter":
        box = ShifterBox()
        box.phase = kwargs["phase"]
        box.insertion_loss = kwargs["insertion_loss"]
        box.frequency = kwargs["frequency"]

    elif boxtype == "radiator":
        box = RadiatorBox()
        box.f0 = kwargs["f0"]
        box.bw_frac = kwargs["bw_frac"]
        box.center_loss_db = kwargs["center_loss_db"]

    elif boxtype == "layout":
        box = LayoutBox()
        box.rows = kwargs["rows"]
        box.cols = kwargs["cols"]
        box.dx = kwargs["dx"]
        box.dy = kwargs["dy"]
        box.grid_kind = kwargs["grid_kind"]
        box.positions = kwargs["positions"]
        box.row_of = kwargs["row_of"]
        box.column_of = kwargs["column_of"]

    elif boxtype == "tolerance":
        box = ToleranceBox()
        box.kind = kwargs["kind"]
        box.t_lc = kwargs["t_lc"]
        box.misalignment = kwargs["misalignment"]
        box.parameters = kwargs["parameters"]
        if "seed" in kwargs:
            box.seed = kwargs["seed"]
        if "n_clamped" in kwargs:
            box.n_clamped = kwargs["n_clamped"]

    elif boxtype == "element":
        box = ElementBox()
        box.v_bias = kwargs["v_bias"]
        box.t_lc = kwargs["t_lc"]
        box.freq_axis = kwargs["freq_axis"]
        box.gamma = kwargs["gamma"]

    elif boxtype == "wave":
        box = WaveBox()
        box.theta_inc = kwargs["theta_inc"]
        box.phi_inc = kwargs["phi_inc"]
        box.frequency = kwargs["frequency"]
        if "amplitude" in kwargs:
            box.amplitude = kwargs["amplitude"]

    elif boxtype == "farfield":
        box = FarFieldBox()
        box.theta_axis = kwargs["theta_axis"]
        box.phi_axis = kwargs["phi_axis"]
        box.freq_axis = kwargs["freq_axis"]
        box.values = kwargs["values"]
        box.normalization = kwargs["normalization"]
        if "theta_inc" in kwargs:
            box.theta_inc = kwargs["theta_inc"]
        if "phi_inc" in kwargs:
            box.phi_inc = kwargs["phi_inc"]
        if "ep_exponent" in kwargs:
            box.ep_exponent = kwargs["ep_exponent"]
        if "n_elements" in kwargs:
            box.n_elements = kwargs["n_elements"]

    elif boxtype == "profile":
        box = ProfileBox()
        box.phase = kwargs["phase"]
        box.wrapped = kwargs["wrapped"]
        box.target = kwargs["target"]
        box.f_design = kwargs["f_design"]
        box.dphi_max = kwargs["dphi_max"]
        if "column_constrained" in kwargs:
            box.column_constrained = kwargs["column_constrained"]
        if "warnings" in kwargs:
            box.warnings = kwargs["warnings"]
        if "incidence" in kwargs:
            box.incidence = kwargs["incidence"]

    elif boxtype == "peaktrack":
        box = PeakTrackBox()
        box.freq_axis = kwargs["freq_axis"]
        box.theta_pk = kwargs["theta_pk"]
        box.phi_pk = kwargs["phi_pk"]
        box.magnitude = kwargs["magnitude"]
        box.at_edge = kwargs["at_edge"]
        box.flag = kwargs["flag"]

    elif boxtype == "bandwidth":
        box = BandwidthBox()
        box.f_lo = kwargs["f_lo"]
        box.f_hi = kwargs["f_hi"]
        box.fractional_bw = kwargs["fractional_bw"]
        box.f_center = kwargs["f_center"]
        if "flag" in kwargs:
            box.flag = kwargs["flag"]

    elif boxtype == "efficiency":
        box = EfficiencyBox()
        box.freq_axis = kwargs["freq_axis"]
        box.eta = kwargs["eta"]
        box.theta_track = kwargs["theta_track"]
        box.phi_track = kwargs["phi_track"]
        if "mag_db" in kwargs:
            box.mag_db = kwargs["mag_db"]
        if "flagged" in kwargs:
            box.flagged = kwargs["flagged"]
        if "sigma_mp" in kwargs:
            box.sigma_mp = kwargs["sigma_mp"]

    elif boxtype == "traces":
        box = TracesBox()
        box.freq_axis = kwargs["freq_axis"]
        box.s21_ris_db = kwargs["s21_ris_db"]
        box.s21_mp_db = kwargs["s21_mp_db"]
        box.theta_tx = kwargs["theta_tx"]
        box.theta_rx = kwargs["theta_rx"]
        box.phi_tx = kwargs["phi_tx"]
        box.phi_rx = kwargs["phi_rx"]
        box.area_ris = kwargs["area_ris"]
        box.area_mp = kwargs["area_mp"]

    elif boxtype == "optimization":
        box = OptimizationBox()
        box.mode = kwargs["mode"]
        box.initial_power_db = kwargs["initial_power_db"]
        box.final_power_db = kwargs["final_power_db"]
        box.improvement_db = kwargs["improvement_db"]
        box.iterations = kwargs["iterations"]
        box.evaluations = kwargs["evaluations"]
        box.voltages = kwargs["voltages"]
        box.converged = kwargs["converged"]
        box.seed = kwargs["seed"]
        if "log" in kwargs:
            box.log = kwargs["log"]

    elif boxtype == "scenario":
        box = ScenarioBox()
        box.scenario_file = kwargs["scenario_file"]
        box.material = kwargs["material"]
        box.stack = kwargs["stack"]
        box.response_base = kwargs["response_base"]
        box.line = kwargs["line"]
        box.radiator = kwargs["radiator"]
        box.layout = kwargs["layout"]
        box.tolerance = kwargs["tolerance"]
        box.wave = kwargs["wave"]
        box.freq_axis = kwargs["freq_axis"]
        box.theta_axis = kwargs["theta_axis"]
        box.target = kwargs["target"]
        box.wrap_deg = kwargs["wrap_deg"]
        box.column_constrained = kwargs["column_constrained"]
        box.ep_exponent = kwargs["ep_exponent"]
        box.optimizer = kwargs["optimizer"]
        box.geometry = kwargs["geometry"]
        box.output_dir = kwargs["output_dir"]
        box.window_deg = kwargs["window_deg"]
        box.p_element = kwargs["p_element"]
        if "defaults" in kwargs:
            box.defaults = kwargs["defaults"]

    else:
        raise ValueError(f"The box type '{boxtype}' is not recognized.")

    return box


class Box:
    """
    Class for generic methods that can be applied on all `Box` object.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

    def open_box(self):
        """
        Method for inspecting the content of a `Box`.

        Returns
        -------
        NoneType
            None
        """

        print(f"Opening {type(self).__name__}...")

        for key, value in self.__dict__.items():
            print(f"{key} = {value}")


class LcMaterialBox(Box):
    """
    Class for storing the anisotropic permittivity and the
    voltage tuning curve of a liquid crystal mixture.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.name = None
        self.eps_perp = None
        self.tan_perp = None
        self.eps_par = None
        self.tan_par = None
        self.v_threshold = None
        self.v_scale = None


class StackBox(Box):
    """
    Class for storing the glass and conductor properties of the
    layer stack.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.name = None
        self.eps_glass = None
        self.tan_glass = None
        self.t_glass = None
        self.t_gold = None
        self.conductor = "gold"


class ResponseBaseBox(Box):
    """
    Class for storing measured LC response times at a reference
    thickness.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.tau_on_ref = None
        self.tau_off_ref = None
        self.t_lc_ref = None


class LineBox(Box):
    """
    Class for storing the parameters of the delay-line phase shifter.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.l_phys = None
        self.t_lc_nominal = None
        self.fill_max = None
        self.t_half = None
        self.alpha_extra = None
        self.gap_exponent = None


class ShifterBox(Box):
    """
    Class for storing the round-trip response of a phase shifter.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.phase = None
        self.insertion_loss = None
        self.frequency = None


class RadiatorBox(Box):
    """
    Class for storing the frequency window of the aperture-coupled
    patch radiator.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.f0 = None
        self.bw_frac = None
        self.center_loss_db = None


class LayoutBox(Box):
    """
    Class for storing the element positions of an aperture.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.rows = None
        self.cols = None
        self.dx = None
        self.dy = None
        self.grid_kind = None
        self.positions = None
        self.row_of = None
        self.column_of = None

    @property
    def n_elements(self):
        """
        Number of elements in the layout.

        Returns
        -------
        int
            Number of elements.
        """

        return int(self.positions.shape[0])


class ToleranceBox(Box):
    """
    Class for storing a per-element LC thickness field and the
    metallization misalignment.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.kind = None
        self.t_lc = None
        self.misalignment = (0.0, 0.0)
        self.parameters = None
        self.seed = None
        self.n_clamped = 0


class ElementBox(Box):
    """
    Class for storing the bias voltages, LC thicknesses and complex
    reflection coefficients of all elements.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.v_bias = None
        self.t_lc = None
        self.freq_axis = None
        self.gamma = None


class WaveBox(Box):
    """
    Class for storing an incident plane wave.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.theta_inc = None
        self.phi_inc = None
        self.frequency = None
        self.amplitude = 1.0


class FarFieldBox(Box):
    """
    Class for storing a scattered field or RCS sampled over
    frequency, azimuth and elevation.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.theta_axis = None
        self.phi_axis = None
        self.freq_axis = None
        self.values = None
        self.normalization = None
        self.theta_inc = 0.0
        self.phi_inc = 0.0
        self.ep_exponent = None
        self.n_elements = None

    def cut(self, phi: float) -> np.ndarray:
        """
        Method for extracting the (frequency, azimuth) cut at the
        elevation sample closest to ``phi``.

        Parameters
        ----------
        phi : float
            Elevation angle (deg).

        Returns
        -------
        np.ndarray
            Values with shape (n_freq, n_theta).
        """

        idx = int(np.argmin(np.abs(self.phi_axis - phi)))

        return self.values[:, :, idx]


class ProfileBox(Box):
    """
    Class for storing a phase profile across the aperture.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.phase = None
        self.wrapped = None
        self.target = None
        self.f_design = None
        self.dphi_max = None
        self.column_constrained = False
        self.warnings = []
        self.incidence = (0.0, 0.0)


class PeakTrackBox(Box):
    """
    Class for storing the beam peak tracked over frequency.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.freq_axis = None
        self.theta_pk = None
        self.phi_pk = None
        self.magnitude = None
        self.at_edge = None
        self.flag = False


class BandwidthBox(Box):
    """
    Class for storing a bandwidth interval.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.f_lo = None
        self.f_hi = None
        self.fractional_bw = None
        self.f_center = None
        self.flag = None


class EfficiencyBox(Box):
    """
    Class for storing an aperture efficiency spectrum.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.freq_axis = None
        self.eta = None
        self.theta_track = None
        self.phi_track = None
        self.mag_db = None
        self.flagged = None
        self.sigma_mp = None


class TracesBox(Box):
    """
    Class for storing measured transmission traces of the RIS and
    the metal plate together with the measurement geometry.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.freq_axis = None
        self.s21_ris_db = None
        self.s21_mp_db = None
        self.theta_tx = None
        self.theta_rx = None
        self.phi_tx = None
        self.phi_rx = None
        self.area_ris = None
        self.area_mp = None


class OptimizationBox(Box):
    """
    Class for storing the result of a bias voltage optimization.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.mode = None
        self.initial_power_db = None
        self.final_power_db = None
        self.improvement_db = None
        self.iterations = None
        self.evaluations = None
        self.voltages = None
        self.converged = None
        self.seed = None
        self.log = []


class ScenarioBox(Box):
    """
    Class for storing all blocks of a scenario file.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        self.scenario_file = None
        self.material = None
        self.stack = None
        self.response_base = None
        self.line = None
        self.radiator = None
        self.layout = None
        self.tolerance = None
        self.wave = None
        self.freq_axis = None
        self.theta_axis = None
        self.target = None
        self.wrap_deg = None
        self.column_constrained = None
        self.ep_exponent = None
        self.optimizer = None
        self.geometry = None
        self.output_dir = None
        self.window_deg = None
        self.p_element = None
        self.defaults = []
