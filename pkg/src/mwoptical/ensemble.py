"""Orientation-averaged ensemble response for a gas of randomly oriented atoms:
the depletion integral f(beta) with its closed form and asymptotics, the
ensemble intensity and cross-sections, the depletion time, and the vessel
figure of merit n31 that sets the peak conversion efficiency.

The depletion parameter

    beta = 3 * E0^2 * wavelength_31^3 * ratio * decrement * t / (32 * pi^3 * hbar)

carries wavelength_31 *cubed*: that is the only power for which the exponent
of the single-atom depletion law stays dimensionless (E0^2 in erg/cm^3,
wavelength^3 in cm^3, hbar in erg s), and it is what the substitution of the
coupling and decay-rate definitions into that law produces.  beta equals
|b_32(theta=0)|^2 * decrement * t / (2 * gamma_31) identically, a consistency
the test suite checks against the hydrogen and dynamics modules.
"""

import math
from dataclasses import dataclass, field

from .coupling import MicrowaveDrive
from .units import CGS, PhysicalConstants

__all__ = [
    "EnsembleConfig",
    "BetaPoint",
    "f_beta",
    "f_beta_approx_small",
    "f_beta_approx_large",
    "beta_of",
    "averaged_excitation",
    "total_intensity",
    "sigma_total",
    "sigma_max",
    "eta_max",
    "depletion_time",
]

# Below this, the closed form loses digits to cancellation; the alternating
# series converges to <1e-16 in a handful of terms.
_SERIES_CUTOFF = 0.1


@dataclass(frozen=True)
class EnsembleConfig:
    """Vessel and gas parameters for the ensemble estimates.

    length/area in cm/cm^2, gas_density in g/cm^3, wavelength_31 (the optical
    emission wavelength) in cm; rho22_0 is the initial degree of excitation
    and ratio the squared dipole ratio |d_32|^2/|d_31|^2.
    """

    length: float
    area: float
    gas_density: float
    rho22_0: float
    ratio: float
    wavelength_31: float
    constants: PhysicalConstants = field(default=CGS)

    def __post_init__(self):
        for name in ("length", "area", "gas_density", "wavelength_31"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name}: must be positive, got {getattr(self, name)}")
        if not 0.0 <= self.rho22_0 <= 1.0:
            raise ValueError(f"rho22_0 must lie in [0, 1], got {self.rho22_0}")
        if self.ratio < 0:
            raise ValueError(f"ratio must be nonnegative, got {self.ratio}")

    @property
    def n_atoms(self) -> float:
        """Number of atoms in the vessel, gas_density * area * length / mu_H."""
        return self.gas_density * self.area * self.length / self.constants.mu_H

    @property
    def n31(self) -> float:
        """Dimensionless vessel parameter gas_density * length * wavelength_31^2 / mu_H."""
        return self.gas_density * self.length * self.wavelength_31**2 / self.constants.mu_H


@dataclass(frozen=True)
class BetaPoint:
    """One sample of the depletion curve: f is strictly decreasing, f(0) = 1/3."""

    beta: float
    f_value: float

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError(f"beta must be nonnegative, got {self.beta}")
        if not 0.0 < self.f_value <= 1.0 / 3.0 + 1e-15:
            raise ValueError(f"f_value must lie in (0, 1/3], got {self.f_value}")


def f_beta(beta: float) -> float:
    """Orientation-average depletion integral of x^2 * exp(-beta*x^2) over x in [0, 1].

    Closed form sqrt(pi)*erf(sqrt(beta))/(4*beta^(3/2)) - exp(-beta)/(2*beta)
    for beta >= 0.1; the alternating series sum_k (-beta)^k / (k! * (2k+3))
    below that, where the closed form would cancel catastrophically.
    """
    if beta < 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")
    if beta < _SERIES_CUTOFF:
        total = 0.0
        term = 1.0 / 3.0  # k = 0
        k = 0
        while abs(term) > 1e-17:
            total += term
            k += 1
            term *= -beta / k
            term = term * (2 * k + 1) / (2 * k + 3)
        return total
    root = math.sqrt(beta)
    return (math.sqrt(math.pi) * math.erf(root) / (4.0 * beta * root)
            - math.exp(-beta) / (2.0 * beta))


def f_beta_approx_small(beta: float) -> float:
    """Small-beta approximation (1/3)*exp(-beta/2); comparison tables only."""
    if beta < 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")
    return math.exp(-beta / 2.0) / 3.0


def f_beta_approx_large(beta: float) -> float:
    """Large-beta asymptote (sqrt(pi)/4)*beta^(-3/2); comparison tables only."""
    if beta < 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")
    if beta == 0:
        return math.inf
    return math.sqrt(math.pi) / 4.0 * beta**-1.5


def beta_of(drive: MicrowaveDrive, ratio: float, wavelength_31: float,
            decrement: float, t: float, constants: PhysicalConstants = CGS) -> float:
    """Depletion parameter 3*E0^2*wavelength_31^3*ratio*decrement*t / (32*pi^3*hbar)."""
    for name, value in (("ratio", ratio), ("wavelength_31", wavelength_31),
                        ("decrement", decrement), ("t", t)):
        if value < 0:
            raise ValueError(f"{name} must be nonnegative, got {value}")
    return (3.0 * drive.e0**2 * wavelength_31**3 * ratio * decrement * t
            / (32.0 * math.pi**3 * constants.hbar))


def averaged_excitation(beta: float, rho22_0: float) -> float:
    """Orientation average of rho22 * cos^2(theta) over an isotropic ensemble,
    rho22_0 * f(beta); equals rho22_0/3 before any depletion."""
    if not 0.0 <= rho22_0 <= 1.0:
        raise ValueError(f"rho22_0 must lie in [0, 1], got {rho22_0}")
    return rho22_0 * f_beta(beta)


def _sigma_prefactor(cfg: EnsembleConfig) -> float:
    """N * (3/2pi) * wavelength^2 * ratio * rho22_0, the cross-section scale (cm^2)."""
    return (cfg.n_atoms * 3.0 / (2.0 * math.pi) * cfg.wavelength_31**2
            * cfg.ratio * cfg.rho22_0)


def total_intensity(cfg: EnsembleConfig, drive: MicrowaveDrive,
                    decrement: float, t: float) -> float:
    """Ensemble stimulated intensity (erg/s) at time t:

        decrement * N * (3/2pi) * wavelength_31^2 * ratio * rho22_0 * f(beta(t)) * S_mw
    """
    beta = beta_of(drive, cfg.ratio, cfg.wavelength_31, decrement, t, cfg.constants)
    return decrement * _sigma_prefactor(cfg) * f_beta(beta) * drive.s_mw


def sigma_total(cfg: EnsembleConfig, decrement: float, beta: float) -> float:
    """Ensemble cross-section sigma = I_total/S_mw (cm^2) at depletion beta."""
    return decrement * _sigma_prefactor(cfg) * f_beta(beta)


def sigma_max(cfg: EnsembleConfig, beta: float) -> float:
    """Peak ensemble cross-section (cm^2): ``sigma_total`` at the resonant
    decrement value, which is 1 to within gamma^2/omega_32^2 corrections."""
    return _sigma_prefactor(cfg) * f_beta(beta)


def eta_max(cfg: EnsembleConfig, beta: float) -> float:
    """Peak conversion efficiency sigma_max/area = (3/2pi)*n31*ratio*rho22_0*f(beta).

    The vessel cross-section cancels, so eta depends on the vessel only
    through n31; with the worked-example vessel (length 10 cm, density
    0.9e-4 g/cm^3, 122 nm) the prefactor (3/2pi)*n31 is ~4e10.
    """
    return sigma_max(cfg, beta) / cfg.area


def depletion_time(drive: MicrowaveDrive, ratio: float, wavelength_31: float,
                   decrement: float, constants: PhysicalConstants = CGS):
    """Characteristic time (s) for the ensemble emission to fall roughly tenfold:

        tau = 2e3 * hbar / (decrement * E0^2 * wavelength_31^3 * ratio)

    (2e3 rounds 64*pi^3 ~ 1984, placing beta(tau) ~ 6).  Inversely
    proportional to the drive flux.  Returns None ("no depletion") when the
    field or the dipole ratio is zero, rather than an infinity that would
    poison downstream tables.
    """
    if wavelength_31 <= 0:
        raise ValueError(f"wavelength_31 must be positive, got {wavelength_31}")
    if decrement <= 0:
        raise ValueError(f"decrement must be positive, got {decrement}")
    if ratio < 0:
        raise ValueError(f"ratio must be nonnegative, got {ratio}")
    if drive.e0 == 0 or ratio == 0:
        return None
    return (2.0e3 * constants.hbar
            / (decrement * drive.e0**2 * wavelength_31**3 * ratio))
