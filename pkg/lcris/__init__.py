from lcris.analysis.metrics import (
    bandwidth_3db,
    efficiency_from_simulation,
    element_loss_budget,
    loss_budget,
    phase_bandwidth_25pct,
    reduce_measurement,
    track_peak,
    traces_from_efficiency,
)

from lcris.analysis.optimize_bias import BiasOptimizer

from lcris.analysis.scattering import (
    calibrate_radiator,
    element_pattern,
    element_reflection,
    element_states,
    far_field,
    metal_plate_rcs,
    physical_optics_rcs,
    radiator_loss,
    ris_rcs,
    steering_vector,
)

from lcris.analysis.steering import (
    phase_window,
    phases_to_voltages,
    profile_reflection,
    squint_predict,
    synthesize_profile,
)

from lcris.analysis.tolerance_mc import (
    ToleranceMonteCarlo,
    fit_tilt_gradient,
    peak_direction,
    thickness_field,
)

from lcris.core.box import create_box

from lcris.core.constants import *

from lcris.core.init import LcrisInit, get_config

from lcris.data.database import Database

from lcris.read.read_material import ReadMaterial

from lcris.read.read_scenario import ReadScenario

from lcris.read.read_traces import ReadTraces

from lcris.util.layout_util import (
    aperture_area,
    build_layout,
    column_groups,
    nearest_neighbor_distance,
    rotate_layout,
    spacing_from_wavelength,
)

from lcris.util.line_util import (
    calibrate_line,
    compactness,
    figure_of_merit,
    filling_factor,
    gap_loading,
    line_metrics,
    phase_vs_thickness,
    shifter_phase,
    shifter_response,
    thickness_sensitivity,
)

from lcris.util.material_util import (
    array_power,
    calibrate_v_scale,
    invert_permittivity,
    lc_permittivity,
    mixing_fraction,
    permittivity_range,
    response_times,
)

from lcris.util.tolerance_util import (
    misalignment_bandwidth,
    misalignment_response,
    random_field,
    tilted_field,
    uniform_field,
    with_misalignment,
)


__author__ = "The lcris developers"
__license__ = "MIT"
__version__ = "0.1.0"
__maintainer__ = "The lcris developers"
__status__ = "Development"
