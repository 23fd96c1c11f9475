"""Monte Carlo realization averaging and parameter sweeps.

A realization samples one cloud, runs the self-consistent solve, and averages
the observables over atoms.  A grid point averages many realizations whose
seeds are derived from the master seed by counter, and a sweep reuses the
same realization seeds at every grid value (common random numbers), so the
spectra are smooth in the swept variable.  All reductions run in a fixed
order: results are bit-identical for any thread count.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .cloud import CloudGeometry, make_cloud
from .errors import ConfigError, PointError, SamplingError, SteadyStateError
from .meanfield import SolverConfig, self_consistent_solve
from .params import InteractionParams, SchemeParams, c6_from_n

SWEEPABLE = ("delta1", "delta2", "delta3", "omega1", "omega2", "omega3", "n")

OBSERVABLES = ("rho11", "rho22", "rho33", "rho44", "re_rho12", "im_rho12")


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter on a uniform inclusive grid over a base setup."""

    parameter: str
    start: float
    stop: float
    points: int
    scheme: SchemeParams
    interaction: InteractionParams
    geometry: CloudGeometry
    solver: SolverConfig = SolverConfig()
    n_realizations: int = 1

    def __post_init__(self):
        if self.parameter not in SWEEPABLE:
            raise ConfigError(f"cannot sweep {self.parameter!r}; one of {SWEEPABLE}")
        if self.points < 2:
            raise ConfigError("sweep needs at least 2 grid points")
        if self.n_realizations < 1:
            raise ConfigError("n_realizations must be >= 1")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)

    def at(self, value: float) -> tuple[SchemeParams, InteractionParams]:
        """Base parameters with the swept value substituted."""
        if self.parameter == "n":
            return self.scheme, self.interaction.with_n(value)
        return self.scheme.replace(**{self.parameter: value}), self.interaction


@dataclass(frozen=True)
class SpectrumRow:
    swept_value: float
    means: dict[str, float]
    stderrs: dict[str, float]
    unconverged_frac: float
    error: str | None = None


@dataclass(frozen=True)
class SpectrumTable:
    parameter: str
    rows: tuple[SpectrumRow, ...]
    master_seed: int
    config_hash: str = ""
    extra_metadata: dict[str, str] = field(default_factory=dict)

    def column(self, name: str, stderr: bool = False) -> np.ndarray:
        src = "stderrs" if stderr else "means"
        return np.array([getattr(r, src)[name] for r in self.rows])

    def swept(self) -> np.ndarray:
        return np.array([r.swept_value for r in self.rows])


def realization_seed(master_seed: int, index: int) -> np.random.SeedSequence:
    """Counter-derived, schedule-independent seed for realization `index`."""
    return np.random.SeedSequence(entropy=(int(master_seed), int(index)))


def run_realization(scheme: SchemeParams, interaction: InteractionParams,
                    geometry: CloudGeometry, solver: SolverConfig,
                    seed: int) -> tuple[dict[str, float], bool]:
    """One cloud sample + self-consistent solve, observables averaged over atoms."""
    c6 = c6_from_n(interaction)
    try:
        cloud = make_cloud(replace(geometry, seed=seed), c6)
        rhos, state = self_consistent_solve(scheme, cloud, solver)
    except (SamplingError, SteadyStateError) as exc:
        raise type(exc)(f"realization seed {seed}: {exc}") from exc
    rho12 = rhos[:, 0, 1]
    obs = {
        "rho11": float(rhos[:, 0, 0].real.mean()),
        "rho22": float(rhos[:, 1, 1].real.mean()),
        "rho33": float(rhos[:, 2, 2].real.mean()),
        "rho44": float(rhos[:, 3, 3].real.mean()),
        "re_rho12": float(rho12.real.mean()),
        "im_rho12": float(rho12.imag.mean()),
    }
    return obs, state.converged


def realization_seed_int(master_seed: int, index: int) -> int:
    # stable 64-bit integer seed for the cloud sampler
    return int(realization_seed(master_seed, index).generate_state(1, np.uint64)[0])


def monte_carlo_point(scheme: SchemeParams, interaction: InteractionParams,
                      geometry: CloudGeometry, solver: SolverConfig,
                      n_realizations: int, master_seed: int,
                      threads: int = 1) -> tuple[dict[str, float], dict[str, float], float]:
    """Means and standard errors over realizations at one parameter point.

    Unconverged realizations are excluded from the statistics; their fraction
    is returned.  Raises PointError when nothing converged.
    """
    if n_realizations < 1:
        raise ConfigError("n_realizations must be >= 1")
    seeds = [realization_seed_int(master_seed, r) for r in range(n_realizations)]

    def task(seed):
        return run_realization(scheme, interaction, geometry, solver, seed)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(task, seeds))
    else:
        results = [task(s) for s in seeds]

    kept = [obs for obs, ok in results if ok]
    unconverged = n_realizations - len(kept)
    frac = unconverged / n_realizations
    if not kept:
        raise PointError(
            f"all {n_realizations} realizations unconverged at this point")
    means, stderrs = {}, {}
    for name in OBSERVABLES:
        vals = np.array([o[name] for o in kept])
        means[name] = float(vals.mean())
        if len(vals) > 1:
            stderrs[name] = float(vals.std(ddof=1) / math.sqrt(len(vals)))
        else:
            stderrs[name] = 0.0
    return means, stderrs, frac


def sweep(spec: SweepSpec, master_seed: int, threads: int = 1) -> SpectrumTable:
    """One monte_carlo_point per grid value, identical realization seeds reused."""
    rows = []
    for value in spec.grid():
        scheme, interaction = spec.at(value)
        try:
            means, stderrs, frac = monte_carlo_point(
                scheme, interaction, spec.geometry, spec.solver,
                spec.n_realizations, master_seed, threads=threads)
            rows.append(SpectrumRow(float(value), means, stderrs, frac))
        except (PointError, SamplingError, SteadyStateError) as exc:
            nan = {k: float("nan") for k in OBSERVABLES}
            rows.append(SpectrumRow(float(value), nan, dict(nan), 1.0, error=str(exc)))
    return SpectrumTable(parameter=spec.parameter, rows=tuple(rows), master_seed=master_seed)
