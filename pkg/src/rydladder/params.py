"""Parameter records, unit policy, and density-matrix checks.

Unit policy
-----------
Every frequency-like quantity (Rabi frequency, detuning, decay rate,
interaction shift) is stored internally in angular units, rad/s.  User-facing
inputs are plain MHz values nu with the angular frequency omega = 2*pi*nu*1e6;
`mhz` / `to_mhz` are the single conversion points.  Lengths are micrometers
everywhere, so van der Waals coefficients carry rad/s * um^6 internally
(config files specify them in 2pi*MHz*um^6).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

TWO_PI_MHZ = 2.0 * math.pi * 1.0e6  # rad/s per MHz


def mhz(value: float) -> float:
    """Convert a frequency in MHz to angular units (rad/s)."""
    return value * TWO_PI_MHZ


def to_mhz(omega: float) -> float:
    """Convert an angular frequency (rad/s) back to MHz."""
    return omega / TWO_PI_MHZ


@dataclass(frozen=True)
class SchemeParams:
    """Driving and decay parameters of the four-level ladder |1>-|2>-|3>-|4>.

    omega1..3: Rabi frequencies of the 1-2, 2-3, 3-4 transitions (rad/s,
    real and non-negative; field phases are absorbed by convention).
    delta1..3: detunings of the three fields (rad/s).
    gamma1..3: spontaneous decay rates of |2>, |3>, |4> (rad/s).
    """

    omega1: float
    omega2: float
    omega3: float
    delta1: float = 0.0
    delta2: float = 0.0
    delta3: float = 0.0
    gamma1: float = 0.0
    gamma2: float = 0.0
    gamma3: float = 0.0

    def __post_init__(self):
        for name in ("omega1", "omega2", "omega3"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0 (got {getattr(self, name)})")
        for name in ("gamma1", "gamma2", "gamma3"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0 (got {getattr(self, name)})")

    def replace(self, **kwargs) -> "SchemeParams":
        fields = {k: getattr(self, k) for k in self.__dataclass_fields__}
        fields.update(kwargs)
        return SchemeParams(**fields)


@dataclass(frozen=True)
class InteractionParams:
    """van der Waals coefficient, either direct or via the n^11 scaling law.

    Exactly one of the two specifications must be given:
      * c6_ref with n_ref and n  (C6 = c6_ref * (n/n_ref)**11), or
      * c6_direct.
    Units: rad/s * um^6.  Both signs are allowed.
    """

    c6_ref: float | None = None
    n_ref: float | None = None
    n: float | None = None
    c6_direct: float | None = None

    def __post_init__(self):
        scaled = self.c6_ref is not None
        if scaled and (self.n_ref is None or self.n is None):
            raise ConfigError("c6_ref requires both n_ref and n")
        if scaled and self.c6_direct is not None:
            raise ConfigError("give either (c6_ref, n_ref, n) or c6_direct, not both")
        if not scaled and self.c6_direct is None:
            raise ConfigError("no van der Waals coefficient specified")
        if scaled and self.n_ref <= 0:
            raise ConfigError("n_ref must be > 0")

    def with_n(self, n: float) -> "InteractionParams":
        if self.c6_ref is None:
            raise ConfigError("cannot sweep n: interaction given as c6_direct")
        return InteractionParams(c6_ref=self.c6_ref, n_ref=self.n_ref, n=n)


def c6_from_n(ip: InteractionParams) -> float:
    """Resolve the van der Waals coefficient in rad/s * um^6."""
    if ip.c6_direct is not None:
        return ip.c6_direct
    return ip.c6_ref * (ip.n / ip.n_ref) ** 11


@dataclass(frozen=True)
class SusceptibilityParams:
    """Single opaque prefactor bundling 2*rho_density^2/(hbar*eps0).

    The user supplies it in units that make chi dimensionless; spectra of chi
    are then correct up to this one global scale.
    """

    prefactor: float

    def __post_init__(self):
        if self.prefactor <= 0:
            raise ConfigError("susceptibility prefactor must be > 0")


# --- density-matrix checks -------------------------------------------------
# A density matrix is a plain complex (4, 4) ndarray; these helpers enforce
# the invariants every solver output must satisfy.

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-9
DIAG_TOL = 1e-9


def check_density_matrix(rho: np.ndarray, hermiticity_tol: float = HERMITICITY_TOL,
                         trace_tol: float = TRACE_TOL, diag_tol: float = DIAG_TOL) -> None:
    """Raise ValueError if `rho` is not a valid one-atom density matrix."""
    if rho.shape != (4, 4):
        raise ValueError(f"density matrix must be 4x4, got {rho.shape}")
    asym = np.abs(rho - rho.conj().T).max()
    if asym > hermiticity_tol:
        raise ValueError(f"density matrix not Hermitian (asymmetry {asym:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {tr} != 1")
    diag = np.diag(rho)
    if np.abs(diag.imag).max() > diag_tol:
        raise ValueError("density matrix diagonal not real")
    if diag.real.min() < -diag_tol or diag.real.max() > 1.0 + diag_tol:
        raise ValueError(f"populations outside [0, 1]: {diag.real}")
