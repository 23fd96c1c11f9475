"""Steady-state optical response of interacting four-level Rydberg ladders.

Self-consistent mean-field treatment of the van der Waals interaction with
Monte Carlo cloud averaging: EIT, EIA, and their crossover in cold Cs and Rb
ensembles.
"""

__version__ = "0.1.0"

from .params import (SchemeParams, InteractionParams, SusceptibilityParams,
                     c6_from_n, mhz, to_mhz)
from .bloch import (Liouvillian, build_liouvillian, steady_state, time_evolve,
                    dressed_eigenvalues, weak_probe_rho12, two_level_steady_state)
from .cloud import Cloud, CloudGeometry, sample_positions, pair_potentials, make_cloud
from .meanfield import MeanFieldState, SolverConfig, compute_shifts, self_consistent_solve
from .ensemble import SweepSpec, SpectrumTable, run_realization, monte_carlo_point, sweep
from .analysis import (FeatureReport, susceptibility, classify_feature,
                       avoided_crossings, dressed_resonance, spectral_extrema)
from .pair_exact import exact_pair_steady_state

__all__ = [
    "SchemeParams", "InteractionParams", "SusceptibilityParams", "c6_from_n",
    "mhz", "to_mhz", "Liouvillian", "build_liouvillian", "steady_state",
    "time_evolve", "dressed_eigenvalues", "weak_probe_rho12",
    "two_level_steady_state", "Cloud", "CloudGeometry", "sample_positions",
    "pair_potentials", "make_cloud", "MeanFieldState", "SolverConfig",
    "compute_shifts", "self_consistent_solve", "SweepSpec", "SpectrumTable",
    "run_realization", "monte_carlo_point", "sweep", "FeatureReport",
    "susceptibility", "classify_feature", "avoided_crossings",
    "dressed_resonance", "spectral_extrema", "exact_pair_steady_state",
]
