"""Random atom clouds and the pairwise van der Waals potential table.

Positions are in micrometers; potentials V_ij = C6 / |r_i - r_j|^6 in rad/s.
Sampling uses the counter-based Philox generator keyed on the seed, so every
(seed, geometry) pair gives the same cloud on any machine and under any
parallel schedule.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, SamplingError

MAX_TRIES_PER_ATOM = 10_000  # rejection budget before SamplingError


@dataclass(frozen=True)
class CloudGeometry:
    """Sampling region: uniform sphere of given radius or axis-aligned box."""

    n_atoms: int
    shape: str = "sphere"  # "sphere" | "box"
    radius: float | None = None  # um, sphere
    edges: tuple[float, float, float] | None = None  # um, box
    r_min: float = 0.5  # um, minimal pair distance
    seed: int = 0

    def __post_init__(self):
        if self.n_atoms < 1:
            raise ConfigError("n_atoms must be >= 1")
        if self.r_min < 0:
            raise ConfigError("r_min must be >= 0")
        if self.shape == "sphere":
            if self.radius is None or self.radius <= 0:
                raise ConfigError("sphere geometry needs radius > 0")
        elif self.shape == "box":
            if self.edges is None or any(e <= 0 for e in self.edges):
                raise ConfigError("box geometry needs three positive edge lengths")
        else:
            raise ConfigError(f"unknown cloud shape {self.shape!r}")


def sphere_radius_from_density(n_atoms: int, density: float) -> float:
    """Radius (um) of a sphere holding n_atoms at the given density (um^-3)."""
    if density <= 0:
        raise ConfigError("density must be > 0")
    return (3.0 * n_atoms / (4.0 * np.pi * density)) ** (1.0 / 3.0)


@dataclass(frozen=True)
class Cloud:
    """Immutable sampled cloud: positions (n, 3) and potential table (n, n)."""

    positions: np.ndarray
    potentials: np.ndarray
    c6: float = 0.0
    geometry: CloudGeometry | None = field(default=None, compare=False)

    @property
    def n_atoms(self) -> int:
        return self.positions.shape[0]


def _rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def sample_positions(g: CloudGeometry) -> np.ndarray:
    """Sample n_atoms i.i.d. uniform positions, rejecting pairs closer than r_min.

    Atoms are inserted one by one; an insertion violating the minimum distance
    is resampled, so accepted positions remain uniform over the allowed region
    and the 1/r^6 law never needs regularizing.
    """
    rng = _rng_for(g.seed)
    pos = np.empty((g.n_atoms, 3))
    r_min_sq = g.r_min * g.r_min
    for k in range(g.n_atoms):
        for attempt in range(MAX_TRIES_PER_ATOM):
            if g.shape == "sphere":
                u = rng.uniform(-g.radius, g.radius, size=3)
                if u @ u > g.radius * g.radius:
                    continue
            else:
                e = np.asarray(g.edges)
                u = rng.uniform(-e / 2, e / 2)
            if k and (((pos[:k] - u) ** 2).sum(axis=1) < r_min_sq).any():
                continue
            pos[k] = u
            break
        else:
            raise SamplingError(
                f"could not place atom {k} after {MAX_TRIES_PER_ATOM} attempts; "
                f"r_min={g.r_min} um is too dense for this volume")
    return pos


def pair_potentials(positions: np.ndarray, c6: float) -> np.ndarray:
    """Symmetric table V_ij = c6 / r_ij^6 with zero diagonal (rad/s)."""
    diff = positions[:, None, :] - positions[None, :, :]
    r2 = np.einsum("ijk,ijk->ij", diff, diff)
    n = positions.shape[0]
    off = ~np.eye(n, dtype=bool)
    if n > 1 and not np.all(r2[off] > 0):
        raise SamplingError("coincident atoms: pair distance is zero")
    np.fill_diagonal(r2, np.inf)
    return c6 / r2 ** 3


def make_cloud(g: CloudGeometry, c6: float) -> Cloud:
    pos = sample_positions(g)
    return Cloud(positions=pos, potentials=pair_potentials(pos, c6), c6=c6, geometry=g)


def positions_csv(positions: np.ndarray) -> str:
    """Positions as CSV text, columns x,y,z in micrometers."""
    lines = ["x_um,y_um,z_um"]
    for p in positions:
        lines.append(",".join(f"{v:.12g}" for v in p))
    return "\n".join(lines) + "\n"
