"""Built-in oracle suite behind the `validate` CLI command.

Every check compares an independent route (closed form, long-time
integration, scalar fixed point, exact pair diagonalization) against the
production solvers.  The parameter sets mirror the bundled Cs configuration.
"""
from __future__ import annotations

import numpy as np

from .bloch import (dressed_hamiltonian, steady_state, time_evolve,
                    two_level_steady_state, weak_probe_rho12)
from .cloud import Cloud
from .meanfield import SolverConfig, self_consistent_solve
from .params import SchemeParams, mhz

CS_SCHEME = SchemeParams(
    omega1=mhz(0.1), omega2=mhz(8.0), omega3=mhz(1.0),
    delta1=0.0, delta2=0.0, delta3=mhz(-4.0),
    gamma1=mhz(5.39), gamma2=mhz(3.31), gamma3=0.0)

RB_SCHEME = SchemeParams(
    omega1=mhz(10.0), omega2=mhz(25.0), omega3=mhz(18.0),
    delta1=0.0, delta2=0.0, delta3=0.0,
    gamma1=mhz(6.0), gamma2=mhz(0.66), gamma3=0.0)


def two_atom_cloud(v12: float) -> Cloud:
    """Symmetric pair at unit distance with the given interaction (rad/s)."""
    positions = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    potentials = np.array([[0.0, v12], [v12, 0.0]])
    return Cloud(positions=positions, potentials=potentials, c6=v12)


def dressed_probe_resonances(p: SchemeParams) -> np.ndarray:
    """delta1 values where the weak probe hits a dressed state exactly.

    Eigenvalues of the {2,3,4} block of the Hamiltonian at delta1 = 0: the
    block is rigidly shifted by -delta1, so the probe is resonant when
    delta1 equals one of these eigenvalues.
    """
    block = dressed_hamiltonian(p.replace(delta1=0.0))[1:, 1:]
    return np.linalg.eigvalsh(block)


def check_two_level() -> dict:
    """Steady state against the closed-form two-level result."""
    omega1, gamma1 = mhz(1.4), mhz(5.39)
    p0 = SchemeParams(omega1=omega1, omega2=0.0, omega3=0.0,
                      gamma1=gamma1, gamma2=mhz(1.0), gamma3=mhz(1.0))
    worst = 0.0
    for d1 in np.linspace(mhz(-15), mhz(15), 101):
        rho = steady_state(p0.replace(delta1=d1))
        rho22_ref, rho12_ref = two_level_steady_state(omega1, d1, gamma1)
        worst = max(worst, abs(rho[1, 1].real - rho22_ref), abs(rho[0, 1] - rho12_ref))
    return {"name": "two_level_analytic", "passed": bool(worst <= 1e-8),
            "detail": f"max abs deviation {worst:.3e} (bound 1e-8)"}


def check_weak_probe() -> dict:
    """Solver coherence against the nested weak-probe formula."""
    p0 = CS_SCHEME.replace(omega1=mhz(0.01))
    resonances = dressed_probe_resonances(p0)
    exclude = p0.gamma2 / 10.0
    worst = 0.0
    for d1 in np.linspace(mhz(-15), mhz(15), 301):
        if np.abs(resonances - d1).min() < exclude:
            continue
        p = p0.replace(delta1=d1)
        rho12 = steady_state(p)[0, 1]
        ref = weak_probe_rho12(p)
        worst = max(worst, abs(rho12 - ref) / abs(ref))
    return {"name": "weak_probe_formula", "passed": bool(worst <= 0.01),
            "detail": f"max relative deviation {worst:.3e} (bound 1e-2)"}


def check_long_time(n_sets: int = 8, seed: int = 11) -> dict:
    """Adaptive time integration against the linear steady-state solve."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[0, 0] = 1.0
    worst = 0.0
    for _ in range(n_sets):
        p = SchemeParams(
            omega1=mhz(rng.uniform(0.0, 30.0)), omega2=mhz(rng.uniform(0.0, 30.0)),
            omega3=mhz(rng.uniform(0.0, 30.0)), delta1=mhz(rng.uniform(-30.0, 30.0)),
            delta2=mhz(rng.uniform(-30.0, 30.0)), delta3=mhz(rng.uniform(-30.0, 30.0)),
            gamma1=mhz(rng.uniform(1.0, 30.0)), gamma2=mhz(rng.uniform(0.1, 10.0)),
            gamma3=mhz(rng.uniform(0.1, 2.0)))
        gamma_min = min(g for g in (p.gamma1, p.gamma2, p.gamma3) if g > 0)
        rho_t = time_evolve(p, 0.0, rho0, t_final=100.0 / gamma_min)
        rho_ss = steady_state(p)
        worst = max(worst, np.abs(rho_t - rho_ss).max())
    return {"name": "long_time_consistency", "passed": bool(worst <= 1e-6),
            "detail": f"{n_sets} random parameter sets, max deviation {worst:.3e} (bound 1e-6)"}


def check_shift_equivalence(seed: int = 23) -> dict:
    """Interaction shift equals a detuning substitution delta3 -> delta3 - s."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    worst = 0.0
    for _ in range(5):
        p = CS_SCHEME.replace(delta1=mhz(rng.uniform(-10, 10)))
        s = mhz(rng.uniform(-5.0, 5.0))
        direct = steady_state(p, s)
        substituted = steady_state(p.replace(delta3=p.delta3 - s), 0.0)
        worst = max(worst, np.abs(direct - substituted).max())
    return {"name": "shift_equivalence", "passed": bool(worst <= 1e-10),
            "detail": f"max elementwise deviation {worst:.3e} (bound 1e-10)"}


def check_decoupled_convergence() -> dict:
    """Zero interaction converges on sweep 2 to the non-interacting state."""
    cloud = two_atom_cloud(0.0)
    rhos, state = self_consistent_solve(CS_SCHEME.replace(delta1=mhz(4.0)), cloud)
    reference = steady_state(CS_SCHEME.replace(delta1=mhz(4.0)), 0.0)
    dev = max(np.abs(rhos[k] - reference).max() for k in range(2))
    ok = state.converged and state.iteration == 2 and dev <= 1e-12
    return {"name": "decoupled_convergence", "passed": bool(ok),
            "detail": f"iteration {state.iteration} (expect 2), deviation {dev:.3e}"}


def check_pair_oracle() -> dict:
    """Mean field against the exact two-atom steady state over 4 decades."""
    from .pair_exact import exact_pair_steady_state  # local import: heavy module
    p = CS_SCHEME.replace(delta1=mhz(4.0))
    cfg = SolverConfig(tolerance=1e-10, damping=0.5, max_iterations=2000)
    table = []
    for factor in (1e-2, 1e-1, 1.0, 10.0):
        v12 = factor * p.omega3
        _, reduced = exact_pair_steady_state(p, v12)
        exact44 = reduced[3, 3].real
        _, state = self_consistent_solve(p, two_atom_cloud(v12), cfg)
        mf44 = float(state.rho44.mean())
        table.append({"v12_over_omega3": factor, "exact_rho44": exact44,
                      "mf_rho44": mf44, "rel_diff": abs(mf44 - exact44) / exact44})
    diffs = [row["rel_diff"] for row in table]
    ok = diffs[0] <= 0.01 and diffs[1] <= 0.01 and all(a < b for a, b in zip(diffs, diffs[1:]))
    return {"name": "mean_field_vs_exact_pair", "passed": bool(ok),
            "detail": table}


def run_oracle_suite(long_time_sets: int = 8) -> dict:
    checks = [
        check_two_level(),
        check_weak_probe(),
        check_long_time(n_sets=long_time_sets),
        check_shift_equivalence(),
        check_decoupled_convergence(),
        check_pair_oracle(),
    ]
    return {"checks": checks, "passed": all(c["passed"] for c in checks)}
