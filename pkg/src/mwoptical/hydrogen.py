"""Atomic inputs for the conversion pipeline: the n<=2 hydrogen mode catalog,
radial wavefunctions, dipole matrix elements and spontaneous decay rates.

Dipole conventions
------------------
``dipole_matrix_element`` returns the z-component element taken between
m = 0 sublevels, |<n'l'0| e*z |nl0>| = e*a0 * (angular factor) * (radial
integral).  Spontaneous decay is governed by the sublevel-summed line
strength instead: summing |<1s, 0| e*r_q |2p, m>|^2 over the vector
components q gives e^2 R^2/3 for every initial m (equal to the squared
z-element), but the standard emission-rate prefactor is 4/3 rather than
the 2/3 used in the scalar rate formula here, so folding the line strength
into a scalar magnitude doubles the squared dipole: d_summed = sqrt(2) * d_z.
``make_transition_pair`` defaults to this "summed" convention (which
reproduces the 1.6 ns 2p lifetime); pass ``convention="m0"`` for the bare
z-element.  Dipole *ratios* are identical in both conventions, so either
may feed the intensity formulas as long as it is used uniformly.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .units import CGS, PhysicalConstants, freq_mhz_to_angular, wavelength_to_angular

__all__ = [
    "FINE_STRUCTURE_MHZ",
    "LAMB_SHIFT_MHZ",
    "OPTICAL_ANCHOR_CM",
    "HydrogenMode",
    "TransitionPair",
    "MODES",
    "mode",
    "radial_wavefunction",
    "radial_dipole_integral",
    "dipole_matrix_element",
    "effective_dipole",
    "decay_rate",
    "make_transition_pair",
    "hydrogenic_dipole_ratio",
    "RATIO_UNITY",
]

# Level splittings (catalog data; these are radiative/relativistic corrections
# that Schrodinger-level machinery cannot produce, so they enter as constants).
FINE_STRUCTURE_MHZ = 10949.0    # 2p3/2 - 2s1/2
LAMB_SHIFT_MHZ = 1057.77        # 2s1/2 - 2p1/2

# The 2p-1s emission wavelength anchoring the absolute frequency scale of the
# catalog (1s1/2 sits at omega = 0).  Both 2p levels radiate on this line to
# within the splittings above (~1e-5 relative).
OPTICAL_ANCHOR_CM = 122.0e-7

# Informational lifetimes: the metastable 2s1/2 survives ~1/7 s because its
# electric-dipole decay to 1s is forbidden (delta-l = +-1 rule); 2p decays in ns.
LIFETIME_2S_S = 1.0 / 7.0
LIFETIME_2P_S = 1.6e-9

# Illustrative |d_32|^2/|d_31|^2 preset used by order-of-magnitude estimates.
RATIO_UNITY = 1.0

# Upper limit (units of a0) for the radial quadrature; the integrands decay at
# least as exp(-r), leaving a relative tail below 1e-10 at r = 40.
_RADIAL_RMAX = 40.0

_SUPPORTED_NL = {(1, 0), (2, 0), (2, 1)}


@dataclass(frozen=True)
class HydrogenMode:
    """One catalog mode: label, quantum numbers, eigenfrequency, lifetime.

    ``omega`` is the mode eigenfrequency in rad/s relative to the 1s1/2 level;
    ``nominal_lifetime`` (s) is informational only.
    """

    label: str
    n: int
    l: int
    omega: float
    nominal_lifetime: float

    def __post_init__(self):
        if not 0 <= self.l < self.n:
            raise ValueError(f"{self.label}: require 0 <= l < n, got n={self.n}, l={self.l}")
        expect_l = {"s": 0, "p": 1}.get(self.label[1:2])
        if expect_l is None or int(self.label[0]) != self.n or expect_l != self.l:
            raise ValueError(f"mode label {self.label!r} inconsistent with (n={self.n}, l={self.l})")


def _build_catalog() -> dict:
    w_2p32 = wavelength_to_angular(OPTICAL_ANCHOR_CM)
    w_2s = w_2p32 - freq_mhz_to_angular(FINE_STRUCTURE_MHZ)
    w_2p12 = w_2s - freq_mhz_to_angular(LAMB_SHIFT_MHZ)
    modes = [
        HydrogenMode("1s1/2", 1, 0, 0.0, math.inf),
        HydrogenMode("2s1/2", 2, 0, w_2s, LIFETIME_2S_S),
        HydrogenMode("2p1/2", 2, 1, w_2p12, LIFETIME_2P_S),
        HydrogenMode("2p3/2", 2, 1, w_2p32, LIFETIME_2P_S),
    ]
    return {m.label: m for m in modes}


MODES = _build_catalog()


def mode(label: str) -> HydrogenMode:
    """Look up a catalog mode by label ('1s1/2', '2s1/2', '2p1/2', '2p3/2')."""
    try:
        return MODES[label]
    except KeyError:
        raise ValueError(f"unknown mode {label!r}; valid labels: {', '.join(MODES)}") from None


def radial_wavefunction(n: int, l: int, r):
    """Normalized hydrogenic radial function R_nl(r), r in units of a0.

    Returns values in a0^(-3/2) units; accepts scalars or numpy arrays.
    Normalization: integral of R_nl^2 r^2 dr over [0, inf) equals 1.
    """
    if (n, l) not in _SUPPORTED_NL:
        raise ValueError(f"unsupported (n, l) = ({n}, {l}); supported: {sorted(_SUPPORTED_NL)}")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("radius must be nonnegative")
    if (n, l) == (1, 0):
        out = 2.0 * np.exp(-r)
    elif (n, l) == (2, 0):
        out = (1.0 / math.sqrt(2.0)) * (1.0 - r / 2.0) * np.exp(-r / 2.0)
    else:  # (2, 1)
        out = (1.0 / (2.0 * math.sqrt(6.0))) * r * np.exp(-r / 2.0)
    return out if out.ndim else float(out)


@lru_cache(maxsize=None)
def radial_dipole_integral(nl_a: tuple, nl_b: tuple) -> float:
    """Signed radial integral of R_a(r) * r * R_b(r) * r^2 over r, in units of a0.

    Evaluated by adaptive quadrature on [0, 40 a0]; the exponential decay of
    the integrands makes the truncation error negligible at the 1e-10 level.
    """
    for nl in (nl_a, nl_b):
        if nl not in _SUPPORTED_NL:
            raise ValueError(f"unsupported (n, l) = {nl}; supported: {sorted(_SUPPORTED_NL)}")

    def integrand(r):
        return radial_wavefunction(*nl_a, r) * r * radial_wavefunction(*nl_b, r) * r * r

    value, _ = quad(integrand, 0.0, _RADIAL_RMAX, epsabs=1e-12, epsrel=1e-12, limit=200)
    return value


def _angular_factor_z(l_a: int, l_b: int) -> float:
    """<l_max, m=0 | cos(theta) | l_min, m=0> for |l_a - l_b| = 1."""
    lmin = min(l_a, l_b)
    return (lmin + 1) / math.sqrt((2 * lmin + 1) * (2 * lmin + 3))


def dipole_matrix_element(upper: HydrogenMode, lower: HydrogenMode,
                          constants: PhysicalConstants = CGS) -> float:
    """Magnitude of the z-component dipole element between m = 0 sublevels (statC cm).

    Returns 0 unless the orbital quantum numbers differ by exactly 1
    (electric-dipole selection rule).
    """
    if abs(upper.l - lower.l) != 1:
        return 0.0
    radial = radial_dipole_integral((upper.n, upper.l), (lower.n, lower.l))
    return constants.e * constants.a0 * _angular_factor_z(upper.l, lower.l) * abs(radial)


def effective_dipole(upper: HydrogenMode, lower: HydrogenMode, convention: str = "summed",
                     constants: PhysicalConstants = CGS) -> float:
    """Scalar dipole magnitude |d_nk| (statC cm) under the named convention.

    "summed": sublevel-summed line strength folded into a scalar, sqrt(2) times
    the z-element; makes the standard rate formula reproduce the 2p lifetime.
    "m0": the bare z-component element between m = 0 sublevels.
    """
    z = dipole_matrix_element(upper, lower, constants)
    if convention == "summed":
        return math.sqrt(2.0) * z
    if convention == "m0":
        return z
    raise ValueError(f"unknown dipole convention {convention!r}; use 'summed' or 'm0'")


def decay_rate(omega_nk: float, d_nk: float, constants: PhysicalConstants = CGS) -> float:
    """Spontaneous decay rate 2*omega^3*|d|^2 / (3*hbar*c^3) in 1/s."""
    if omega_nk < 0:
        raise ValueError(f"transition frequency must be nonnegative, got {omega_nk};"
                         " order the pair as (upper, lower)")
    return 2.0 * omega_nk**3 * d_nk**2 / (3.0 * constants.hbar * constants.c**3)


@dataclass(frozen=True)
class TransitionPair:
    """Two catalog modes with their frequency difference, dipole and decay rate."""

    upper: HydrogenMode
    lower: HydrogenMode
    omega_nk: float   # rad/s, omega_upper - omega_lower
    d_nk: float       # statC cm
    gamma_nk: float   # 1/s

    def __post_init__(self):
        if self.gamma_nk < 0:
            raise ValueError("decay rate must be nonnegative")


def make_transition_pair(upper: HydrogenMode, lower: HydrogenMode, convention: str = "summed",
                         constants: PhysicalConstants = CGS) -> TransitionPair:
    """Bundle (omega_nk, d_nk, gamma_nk) for a catalog pair; upper must lie above lower."""
    if upper.label == lower.label:
        raise ValueError(f"transition requires two distinct modes, got {upper.label} twice")
    omega_nk = upper.omega - lower.omega
    d_nk = effective_dipole(upper, lower, convention, constants)
    gamma_nk = decay_rate(omega_nk, d_nk, constants)
    return TransitionPair(upper, lower, omega_nk, d_nk, gamma_nk)


@lru_cache(maxsize=1)
def hydrogenic_dipole_ratio() -> float:
    """|d(2p-2s)|^2 / |d(2p-1s)|^2 from the catalog wavefunctions (~16.22).

    Convention-independent (both elements scale alike), hence usable with
    either dipole convention.
    """
    d32 = dipole_matrix_element(mode("2p3/2"), mode("2s1/2"))
    d31 = dipole_matrix_element(mode("2p3/2"), mode("1s1/2"))
    return (d32 / d31) ** 2
