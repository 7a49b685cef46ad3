"""Gaussian-CGS constants and the boundary unit conversions.

Everything downstream (dipole elements, decay rates, field couplings,
flux bookkeeping) is evaluated in Gaussian CGS; user-facing quantities
(MHz, nm, W/cm^2) are converted here, once, at the boundary.
"""

import math
from dataclasses import dataclass

__all__ = [
    "PhysicalConstants",
    "CGS",
    "ERG_PER_S_PER_W",
    "CM_PER_NM",
    "freq_mhz_to_angular",
    "angular_to_freq_mhz",
    "wavelength_to_angular",
    "angular_to_wavelength",
    "flux_si_to_cgs",
    "field_from_flux",
    "flux_from_field",
]

# unit conversion factors
ERG_PER_S_PER_W = 1.0e7   # 1 W = 1e7 erg/s, so 1 W/cm^2 = 1e7 erg s^-1 cm^-2
CM_PER_NM = 1.0e-7


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants in Gaussian CGS (CODATA 2018)."""

    hbar: float = 1.054571817e-27   # erg s
    c: float = 2.99792458e10        # cm/s
    e: float = 4.80320471e-10       # statC
    a0: float = 5.29177210903e-9    # cm (Bohr radius)
    mu_H: float = 1.6735328e-24     # g (atomic mass of hydrogen)

    def __post_init__(self):
        for name in ("hbar", "c", "e", "a0", "mu_H"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name}: must be strictly positive")

    @property
    def fine_structure(self):
        """Dimensionless e^2/(hbar c), ~1/137; sanity anchor for the unit system."""
        return self.e**2 / (self.hbar * self.c)


CGS = PhysicalConstants()


def freq_mhz_to_angular(f_mhz: float) -> float:
    """Frequency in MHz -> angular frequency in rad/s (2*pi*1e6*f)."""
    if f_mhz < 0:
        raise ValueError(f"frequency must be nonnegative, got {f_mhz} MHz")
    return 2.0 * math.pi * 1.0e6 * f_mhz


def angular_to_freq_mhz(omega: float) -> float:
    """Angular frequency in rad/s -> frequency in MHz."""
    if omega < 0:
        raise ValueError(f"angular frequency must be nonnegative, got {omega} rad/s")
    return omega / (2.0 * math.pi * 1.0e6)


def wavelength_to_angular(wavelength_cm: float, constants: PhysicalConstants = CGS) -> float:
    """Vacuum wavelength in cm -> angular frequency omega = 2*pi*c/wavelength."""
    if wavelength_cm <= 0:
        raise ValueError(f"wavelength must be positive, got {wavelength_cm} cm")
    return 2.0 * math.pi * constants.c / wavelength_cm


def angular_to_wavelength(omega: float, constants: PhysicalConstants = CGS) -> float:
    """Angular frequency in rad/s -> vacuum wavelength in cm (inverse of the above)."""
    if omega <= 0:
        raise ValueError(f"angular frequency must be positive, got {omega} rad/s")
    return 2.0 * math.pi * constants.c / omega


def flux_si_to_cgs(flux_w_cm2: float) -> float:
    """Power flux W/cm^2 -> erg s^-1 cm^-2."""
    if flux_w_cm2 < 0:
        raise ValueError(f"flux must be nonnegative, got {flux_w_cm2} W/cm^2")
    return flux_w_cm2 * ERG_PER_S_PER_W


def field_from_flux(flux_cgs: float, constants: PhysicalConstants = CGS) -> float:
    """Field amplitude E0 (statV/cm) of a wave with energy flux S = c*E0^2/(8*pi)."""
    if flux_cgs < 0:
        raise ValueError(f"flux must be nonnegative, got {flux_cgs} erg/s/cm^2")
    return math.sqrt(8.0 * math.pi * flux_cgs / constants.c)


def flux_from_field(e0: float, constants: PhysicalConstants = CGS) -> float:
    """Energy flux S = c*E0^2/(8*pi) (erg s^-1 cm^-2) for field amplitude E0 (statV/cm)."""
    if e0 < 0:
        raise ValueError(f"field amplitude must be nonnegative, got {e0} statV/cm")
    return constants.c * e0**2 / (8.0 * math.pi)
