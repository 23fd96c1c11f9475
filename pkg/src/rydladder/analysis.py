"""Derived quantities: susceptibility, EIT/EIA classification, crossings.

Feature classification is a statistical test against a local baseline, not a
fixed threshold: the absorption column is compared with the straight line
through the window edges, and a feature counts only when the central
extremum clears the baseline by a configurable multiple of its standard
error (plus a relative floor so exactly-flat data never classifies).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from .bloch import dressed_hamiltonian, dressed_eigenvalues
from .ensemble import SpectrumTable
from .errors import ConfigError
from .params import SchemeParams, SusceptibilityParams


def susceptibility(rho12: complex | np.ndarray, omega1: float,
                   sp: SusceptibilityParams) -> complex | np.ndarray:
    """Linear probe susceptibility chi = prefactor * rho12 / omega1."""
    if omega1 <= 0:
        raise ConfigError("omega1 must be > 0 for the susceptibility")
    return sp.prefactor * np.asarray(rho12) / omega1 if isinstance(rho12, np.ndarray) \
        else sp.prefactor * rho12 / omega1


@dataclass(frozen=True)
class FeatureReport:
    kind: str  # "EIA" | "EIT" | "none"
    location: float  # swept-variable units
    magnitude: float  # |extremum - baseline|, >= 0
    window: tuple[float, float]


def classify_feature(spectrum: SpectrumTable, window: tuple[float, float],
                     significance: float = 5.0) -> FeatureReport:
    """EIT/EIA verdict for the absorption inside a swept-variable window.

    The baseline is the linear interpolation between the window edges of the
    Im rho12 means.  EIA when the largest deviation from the baseline is
    positive and significant, EIT when negative and significant, else none.
    """
    x = spectrum.swept()
    if window[0] >= window[1]:
        raise ConfigError("empty classification window")
    if window[0] < x.min() - 1e-12 or window[1] > x.max() + 1e-12:
        raise ConfigError(f"window {window} outside sweep range ({x.min()}, {x.max()})")
    mask = (x >= window[0]) & (x <= window[1])
    if mask.sum() < 5:
        raise ConfigError("classification window must contain >= 5 grid points")
    xs = x[mask]
    ys = spectrum.column("im_rho12")[mask]
    errs = spectrum.column("im_rho12", stderr=True)[mask]
    baseline = ys[0] + (ys[-1] - ys[0]) * (xs - xs[0]) / (xs[-1] - xs[0])
    dev = ys - baseline
    k = int(np.argmax(np.abs(dev)))
    margin = max(significance * errs[k], 1e-12 * np.abs(ys).max())
    if dev[k] > margin:
        kind = "EIA"
    elif dev[k] < -margin:
        kind = "EIT"
    else:
        kind = "none"
    return FeatureReport(kind=kind, location=float(xs[k]),
                         magnitude=float(abs(dev[k])), window=(float(window[0]), float(window[1])))


def avoided_crossings(p: SchemeParams, delta1_grid: np.ndarray) -> list[tuple[float, float]]:
    """Local minima of the nearest-neighbor dressed-eigenvalue gaps.

    Sweeps delta1 over the given grid, computes the three adjacent gaps of
    the sorted eigenvalues, and reports every interior local minimum as
    (delta1 location, gap size), both in rad/s, ordered by location.
    """
    delta1_grid = np.asarray(delta1_grid, dtype=float)
    if delta1_grid.size < 50:
        raise ConfigError("avoided-crossing search needs >= 50 grid points")
    eigs = np.empty((delta1_grid.size, 4))
    for k, d1 in enumerate(delta1_grid):
        eigs[k] = dressed_eigenvalues(p.replace(delta1=d1))
    gaps = np.diff(eigs, axis=1)
    found = []
    for g in range(3):
        y = gaps[:, g]
        for k in range(1, len(y) - 1):
            if y[k] < y[k - 1] and y[k] < y[k + 1]:
                found.append((float(delta1_grid[k]), float(y[k])))
    found.sort()
    return found


def dressed_resonance(p: SchemeParams, parameter: str, grid: np.ndarray) -> list[float]:
    """Swept-parameter values where the mostly-Rydberg dressed state is resonant.

    Tracks the eigenvalue whose eigenvector has the largest |<4|v>| along the
    sweep and returns the zero crossings (linear interpolation between grid
    points).  This is the multiphoton resonance condition including the AC
    Stark shifts of the driving fields; it reduces to the bare three-photon
    resonance delta1+delta2+delta3 = 0 when the shifts cancel or the fields
    are weak.
    """
    grid = np.asarray(grid, dtype=float)
    e4 = np.empty(grid.size)
    for k, value in enumerate(grid):
        w, v = np.linalg.eigh(dressed_hamiltonian(p.replace(**{parameter: value})))
        e4[k] = w[np.argmax(np.abs(v[3, :]))]
    out = []
    for k in range(grid.size - 1):
        if e4[k] == 0.0:
            out.append(float(grid[k]))
        elif e4[k] * e4[k + 1] < 0:
            t = e4[k] / (e4[k] - e4[k + 1])
            out.append(float(grid[k] + t * (grid[k + 1] - grid[k])))
    return out


def spectral_extrema(x: np.ndarray, y: np.ndarray, prominence_frac: float = 0.05,
                     min_separation: float = 0.0) -> tuple[list[float], list[float]]:
    """Locations of the significant maxima and minima of a spectrum.

    A feature must be prominent on the scale of the full data range
    (prominence_frac * (max - min)) and separated from stronger features by
    at least min_separation in swept-variable units; closer sub-structure is
    merged into its dominant extremum.  Returns (maxima, minima) locations.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    span = y.max() - y.min()
    if span <= 0:
        return [], []
    dx = np.diff(x).mean()
    distance = max(1, int(round(min_separation / dx))) if min_separation else 1
    kwargs = dict(prominence=prominence_frac * span, distance=distance)
    mx, _ = find_peaks(y, **kwargs)
    mn, _ = find_peaks(-y, **kwargs)
    return [float(x[i]) for i in mx], [float(x[i]) for i in mn]
