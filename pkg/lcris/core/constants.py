"""
Physical constants in the International System of Units (SI).
"""

import math

from astropy import constants

LIGHT = constants.c.value  # (m s-1)

# Dielectric attenuation of a quasi-TEM line is
# DIEL_LOSS * sqrt(eps_eff) * tan_eff * f / c (dB m-1)
DIEL_LOSS = 20.0 * math.pi / math.log(10.0)

# Half-power level (dB)
HALF_POWER_DB = 10.0 * math.log10(2.0)
