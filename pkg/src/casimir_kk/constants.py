"""Physical constants and unit conversions.

All frequencies inside the package are photon energies in eV, i.e. angular
frequencies in units of eV/hbar.  Conversions to rad/s and to wavelengths
happen only at the I/O boundary.
"""

import math

# CODATA 2018, exact or to 10 significant digits
HBAR_EV_S = 6.582119569e-16  # eV s
HBAR_J_S = 1.054571817e-34  # J s
C_M_S = 299792458.0  # m / s
K_B_EV_K = 8.617333262e-5  # eV / K
K_B_J_K = 1.380649e-23  # J / K
HBAR_C_EV_M = 1.973269804e-7  # eV m
HC_EV_UM = 1.239841984  # eV um, so omega[eV/hbar] = HC_EV_UM / lambda[um]


def ev_to_rad_s(omega_ev):
    return omega_ev / HBAR_EV_S


def rad_s_to_ev(omega_rad_s):
    return omega_rad_s * HBAR_EV_S


def wavelength_um_to_ev(lambda_um):
    return HC_EV_UM / lambda_um


def ev_to_wavelength_um(omega_ev):
    return HC_EV_UM / omega_ev


def ev_to_inverse_m(omega_ev):
    """Vacuum wavenumber omega/c in 1/m for a frequency given in eV/hbar."""
    return omega_ev / HBAR_C_EV_M


def ideal_casimir_pressure(separation_m):
    """Zero-temperature perfect-reflector pressure -pi^2 hbar c / (240 a^4) in Pa."""
    return -math.pi**2 * HBAR_J_S * C_M_S / (240.0 * separation_m**4)
