"""Self-consistent mean-field solution of the interacting ensemble.

Each atom i sees an interaction shift on its Rydberg level

    shift_i = sum_{j != i} V_ij * rho44_j,

i.e. the Rydberg populations of all other atoms weighted by the pair
potentials.  The shifts feed back into the per-atom steady states, so the
Rydberg populations are found by damped fixed-point iteration: solve all
atoms at the current shifts, then mix the new populations into the old ones
until the largest per-atom change falls below tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bloch import liouvillian_parts, steady_state_batch
from .cloud import Cloud
from .errors import ConfigError
from .params import SchemeParams


@dataclass(frozen=True)
class SolverConfig:
    """Fixed-point iteration controls.

    damping alpha in (0, 1] is the under-relaxation factor of the population
    update; 1 reproduces plain replacement iteration.  initial_guess is one of
    "non-interacting" (one zero-shift solve, the default), "zeros", or
    "provided" (then `initial_values` must hold per-atom rho44).
    """

    tolerance: float = 1e-6
    max_iterations: int = 500
    damping: float = 0.5
    initial_guess: str = "non-interacting"
    initial_values: np.ndarray | None = None

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ConfigError("tolerance must be > 0")
        if not 0.0 < self.damping <= 1.0:
            raise ConfigError("damping must be in (0, 1]")
        if self.initial_guess not in ("non-interacting", "zeros", "provided"):
            raise ConfigError(f"unknown initial_guess {self.initial_guess!r}")
        if self.initial_guess == "provided" and self.initial_values is None:
            raise ConfigError("initial_guess='provided' requires initial_values")


@dataclass(frozen=True)
class MeanFieldState:
    """Converged (or abandoned) fixed-point state.

    `iteration` counts steady-state sweeps over the ensemble, including the
    one that builds the non-interacting initial guess.  `shifts` are
    recomputed from the returned rho44, so shifts == potentials @ rho44
    holds exactly.  `residual_history` holds max |delta rho44| per loop pass.
    """

    rho44: np.ndarray
    shifts: np.ndarray
    iteration: int
    residual: float
    converged: bool
    residual_history: tuple[float, ...] = field(default=())


def compute_shifts(cloud: Cloud, rho44: np.ndarray) -> np.ndarray:
    """Per-atom interaction shifts sum_{j != i} V_ij rho44_j (rad/s)."""
    rho44 = np.asarray(rho44, dtype=float)
    if rho44.shape != (cloud.n_atoms,):
        raise ValueError(f"rho44 has shape {rho44.shape}, expected ({cloud.n_atoms},)")
    return cloud.potentials @ rho44


def self_consistent_solve(p: SchemeParams, cloud: Cloud,
                          cfg: SolverConfig = SolverConfig()) -> tuple[np.ndarray, MeanFieldState]:
    """Damped fixed-point iteration over the per-atom Rydberg populations.

    Returns the per-atom density matrices, shape (n_atoms, 4, 4), and the
    MeanFieldState.  Non-convergence is not an error: the state comes back
    with converged=False and the full residual history, and the caller
    decides (the ensemble layer excludes such realizations and reports the
    fraction).
    """
    n = cloud.n_atoms
    L0, D = liouvillian_parts(p)
    sweeps = 0

    if cfg.initial_guess == "zeros":
        rho44 = np.zeros(n)
        rhos = None
    elif cfg.initial_guess == "provided":
        rho44 = np.asarray(cfg.initial_values, dtype=float).copy()
        if rho44.shape != (n,):
            raise ConfigError(f"initial_values has shape {rho44.shape}, expected ({n},)")
        rhos = None
    else:
        rhos = steady_state_batch(L0, D, np.zeros(n))
        sweeps += 1
        rho44 = rhos[:, 3, 3].real.copy()

    history: list[float] = []
    residual = np.inf
    converged = False
    for _ in range(cfg.max_iterations):
        shifts = cloud.potentials @ rho44
        rhos = steady_state_batch(L0, D, shifts)
        sweeps += 1
        rho44_new = rhos[:, 3, 3].real
        residual = float(np.abs(rho44_new - rho44).max())
        history.append(residual)
        if residual < cfg.tolerance:
            rho44 = rho44_new
            converged = True
            break
        rho44 = (1.0 - cfg.damping) * rho44 + cfg.damping * rho44_new

    if rhos is None:  # max_iterations == 0 with a non-solving guess
        rhos = steady_state_batch(L0, D, cloud.potentials @ rho44)
        sweeps += 1
    if not converged:
        # keep the returned populations consistent with the returned matrices
        rho44 = rhos[:, 3, 3].real

    state = MeanFieldState(
        rho44=rho44.copy(),
        shifts=cloud.potentials @ rho44,
        iteration=sweeps,
        residual=residual,
        converged=converged,
        residual_history=tuple(history),
    )
    return rhos, state
