"""Single-atom optical Bloch equations for the four-level ladder.

The equations of motion for the reduced density matrix are (angular units,
rho_ab = <a|rho|b>, a, b in 1..4):

    rho11' =  i/2 W1 (rho12 - rho21) + G1 rho22
    rho22' = -i/2 W1 (rho12 - rho21) + i/2 W2 (rho23 - rho32) + G2 rho33 - G1 rho22
    rho33' = -i/2 W2 (rho23 - rho32) + i/2 W3 (rho34 - rho43) + G3 rho44 - G2 rho33
    rho44' = -i/2 W3 (rho34 - rho43) - G3 rho44
    rho12' =  i/2 W1 (rho11 - rho22) + i/2 W2 rho13 - i D1 rho12 - G1/2 rho12
    rho13' =  i/2 W3 rho14 + i/2 W2 rho12 - i/2 W1 rho23
              - i (D1+D2) rho13 - G2/2 rho13
    rho14' =  i/2 W3 rho13 - i/2 W1 rho24 - i (D1+D2+D3) rho14 - G3/2 rho14
              + i s rho14
    rho23' =  i/2 W2 (rho22 - rho33) - i/2 W1 rho13 + i/2 W3 rho24
              - i D2 rho23 - (G1+G2)/2 rho23
    rho24' =  i/2 W3 rho23 - i/2 W2 rho34 - i/2 W1 rho14
              - i (D2+D3) rho24 - (G1+G3)/2 rho24 + i s rho24
    rho34' =  i/2 W3 (rho33 - rho44) - i/2 W2 rho24 - i D3 rho34
              - (G2+G3)/2 rho34 + i s rho34

plus the Hermitian conjugates of the six coherence equations.  The real
scalar s is the mean-field interaction shift on the Rydberg level: the
many-body terms i * sum_j V_ij rho_a4 rho44 enter as +i*s*rho_a4, which is
the same as replacing D3 -> D3 - s.  (The W3/2 rho24 term in the rho23
equation is taken with the factor i; without it trace conservation and
Hermiticity of the generator break, see `test_bloch.py`.)

Vectorization is row-major and fixed: vec(rho)[4*(a-1) + (b-1)] = rho_ab.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import IntegrationError, SteadyStateError
from .params import SchemeParams, check_density_matrix

RESIDUAL_RTOL = 1e-10  # residual bound: ||L vec(rho)||_inf <= RESIDUAL_RTOL * max(1, ||L||_inf)
COND_LIMIT = 1e12  # condition estimate above which the solve is rejected


def _idx(a: int, b: int) -> int:
    """Row-major index of rho_ab in vec(rho), a, b 1-based."""
    return 4 * (a - 1) + (b - 1)


# positions of the diagonal elements in vec(rho)
_DIAG = [_idx(a, a) for a in range(1, 5)]


@dataclass(frozen=True)
class Liouvillian:
    """16x16 generator L with d vec(rho)/dt = L vec(rho), plus its shift."""

    matrix: np.ndarray
    shift: float


def _upper_triangle_rows(p: SchemeParams, shift: float) -> np.ndarray:
    """Rows of L for the populations and the six upper coherences."""
    w1, w2, w3 = p.omega1, p.omega2, p.omega3
    d1, d2, d3 = p.delta1, p.delta2, p.delta3
    g1, g2, g3 = p.gamma1, p.gamma2, p.gamma3
    i = 1j

    L = np.zeros((16, 16), dtype=complex)

    def add(a, b, c, d, coeff):
        L[_idx(a, b), _idx(c, d)] += coeff

    # populations
    add(1, 1, 1, 2, i / 2 * w1); add(1, 1, 2, 1, -i / 2 * w1); add(1, 1, 2, 2, g1)
    add(2, 2, 1, 2, -i / 2 * w1); add(2, 2, 2, 1, i / 2 * w1)
    add(2, 2, 2, 3, i / 2 * w2); add(2, 2, 3, 2, -i / 2 * w2)
    add(2, 2, 3, 3, g2); add(2, 2, 2, 2, -g1)
    add(3, 3, 2, 3, -i / 2 * w2); add(3, 3, 3, 2, i / 2 * w2)
    add(3, 3, 3, 4, i / 2 * w3); add(3, 3, 4, 3, -i / 2 * w3)
    add(3, 3, 4, 4, g3); add(3, 3, 3, 3, -g2)
    add(4, 4, 3, 4, -i / 2 * w3); add(4, 4, 4, 3, i / 2 * w3); add(4, 4, 4, 4, -g3)
    # coherences
    add(1, 2, 1, 1, i / 2 * w1); add(1, 2, 2, 2, -i / 2 * w1)
    add(1, 2, 1, 3, i / 2 * w2)
    add(1, 2, 1, 2, -i * d1 - g1 / 2)
    add(1, 3, 1, 4, i / 2 * w3); add(1, 3, 1, 2, i / 2 * w2); add(1, 3, 2, 3, -i / 2 * w1)
    add(1, 3, 1, 3, -i * (d1 + d2) - g2 / 2)
    add(1, 4, 1, 3, i / 2 * w3); add(1, 4, 2, 4, -i / 2 * w1)
    add(1, 4, 1, 4, -i * (d1 + d2 + d3) - g3 / 2 + i * shift)
    add(2, 3, 2, 2, i / 2 * w2); add(2, 3, 3, 3, -i / 2 * w2)
    add(2, 3, 1, 3, -i / 2 * w1); add(2, 3, 2, 4, i / 2 * w3)
    add(2, 3, 2, 3, -i * d2 - (g1 + g2) / 2)
    add(2, 4, 2, 3, i / 2 * w3); add(2, 4, 3, 4, -i / 2 * w2); add(2, 4, 1, 4, -i / 2 * w1)
    add(2, 4, 2, 4, -i * (d2 + d3) - (g1 + g3) / 2 + i * shift)
    add(3, 4, 3, 3, i / 2 * w3); add(3, 4, 4, 4, -i / 2 * w3); add(3, 4, 2, 4, -i / 2 * w2)
    add(3, 4, 3, 4, -i * d3 - (g2 + g3) / 2 + i * shift)
    return L


def build_liouvillian(p: SchemeParams, shift: float = 0.0) -> Liouvillian:
    """Generator of the four-level master equation at interaction shift `shift`.

    The lower-triangle coherence rows are the complex conjugates of the upper
    ones, rho_ba' = conj(rho_ab'), so Hermiticity is preserved by construction.
    """
    L = _upper_triangle_rows(p, shift)
    for a in range(1, 5):
        for b in range(a + 1, 5):
            row, crow = _idx(a, b), _idx(b, a)
            for c in range(1, 5):
                for d in range(1, 5):
                    coeff = L[row, _idx(c, d)]
                    if coeff != 0:
                        L[crow, _idx(d, c)] = L[crow, _idx(d, c)] + np.conj(coeff)
    return Liouvillian(matrix=L, shift=shift)


def liouvillian_parts(p: SchemeParams) -> tuple[np.ndarray, np.ndarray]:
    """Split L(shift) = L0 + shift * D for cheap batched construction."""
    L0 = build_liouvillian(p, 0.0).matrix
    L1 = build_liouvillian(p, 1.0).matrix
    return L0, L1 - L0


def _trace_row_system(L: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Replace the first row of L with the unit-trace constraint."""
    A = L.copy()
    A[0, :] = 0.0
    A[0, _DIAG] = 1.0
    b = np.zeros(16, dtype=complex)
    b[0] = 1.0
    return A, b


def _check_residual(L: np.ndarray, vec: np.ndarray) -> float:
    resid = np.abs(L @ vec).max()
    bound = RESIDUAL_RTOL * max(1.0, np.abs(L).sum(axis=1).max())
    if resid > bound:
        cond = np.linalg.cond(L[1:, 1:])
        raise SteadyStateError(
            f"steady-state residual {resid:.3e} exceeds bound {bound:.3e}; "
            f"condition estimate {cond:.3e} suggests a non-unique steady state")
    return resid


def steady_state(p: SchemeParams, shift: float = 0.0) -> np.ndarray:
    """Unique steady state of the master equation, as a 4x4 density matrix.

    Solves L vec(rho) = 0 with one row replaced by the trace constraint.
    Raises SteadyStateError (with a condition estimate) when the steady state
    is non-unique, e.g. undriven levels with zero decay.
    """
    L = build_liouvillian(p, shift).matrix
    A, b = _trace_row_system(L)
    try:
        vec = np.linalg.solve(A, b)
    except np.linalg.LinAlgError:
        cond = np.linalg.cond(A)
        raise SteadyStateError(
            f"singular steady-state system (condition estimate {cond:.3e}); "
            "the steady state is non-unique") from None
    _check_residual(L, vec)
    rho = vec.reshape(4, 4)
    rho = 0.5 * (rho + rho.conj().T)  # remove roundoff-level asymmetry
    check_density_matrix(rho)
    return rho


def steady_state_batch(L0: np.ndarray, D: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """Steady states for many shifts of the same scheme, shape (n, 4, 4).

    Uses the L0/D split from `liouvillian_parts`.  On failure the offending
    shift index is named in the error.
    """
    shifts = np.asarray(shifts, dtype=float)
    n = shifts.shape[0]
    A = L0[None, :, :] + shifts[:, None, None] * D[None, :, :]
    A[:, 0, :] = 0.0
    A[:, 0, _DIAG] = 1.0
    b = np.zeros((n, 16, 1), dtype=complex)
    b[:, 0, 0] = 1.0
    try:
        vec = np.linalg.solve(A, b)[..., 0]
    except np.linalg.LinAlgError:
        # identify the culprit for the error message
        for k in range(n):
            try:
                np.linalg.solve(A[k], b[k, :, 0])
            except np.linalg.LinAlgError:
                raise SteadyStateError(
                    f"singular steady-state system at atom index {k} "
                    f"(shift {shifts[k]:.6e} rad/s)") from None
        raise
    L_full = L0[None, :, :] + shifts[:, None, None] * D[None, :, :]
    resid = np.abs(np.einsum("nij,nj->ni", L_full, vec)).max(axis=1)
    bound = RESIDUAL_RTOL * max(1.0, np.abs(L0).sum(axis=1).max(),
                                np.abs(L_full).sum(axis=2).max())
    bad = np.nonzero(resid > bound)[0]
    if bad.size:
        k = int(bad[0])
        raise SteadyStateError(
            f"steady-state residual {resid[k]:.3e} exceeds bound {bound:.3e} "
            f"at atom index {k}")
    rho = vec.reshape(n, 4, 4)
    return 0.5 * (rho + rho.conj().transpose(0, 2, 1))


def time_evolve(p: SchemeParams, shift: float, rho0: np.ndarray,
                t_final: float, dt_max: float = np.inf,
                rtol: float = 1e-10, atol: float = 1e-12) -> np.ndarray:
    """Integrate d vec(rho)/dt = L vec(rho) from rho0 to t_final.

    Adaptive high-order explicit integration; used as a cross-check on the
    linear steady-state solve.  Trace and Hermiticity are verified at t_final.
    """
    check_density_matrix(rho0, hermiticity_tol=1e-10)
    if t_final == 0.0:
        return rho0.copy()
    L = build_liouvillian(p, shift).matrix
    sol = solve_ivp(lambda t, y: L @ y, (0.0, t_final), rho0.reshape(16),
                    method="DOP853", rtol=rtol, atol=atol, max_step=dt_max)
    if not sol.success:
        raise IntegrationError(f"time evolution failed: {sol.message}")
    rho = sol.y[:, -1].reshape(4, 4)
    if abs(np.trace(rho) - 1.0) > 1e-8:
        raise IntegrationError(f"trace drifted to {np.trace(rho)}")
    if np.abs(rho - rho.conj().T).max() > 1e-8:
        raise IntegrationError("Hermiticity lost during integration")
    return rho


def dressed_hamiltonian(p: SchemeParams) -> np.ndarray:
    """Hermitian 4x4 Hamiltonian of the driven ladder (no decay), rad/s."""
    w1, w2, w3 = p.omega1, p.omega2, p.omega3
    d1, d2, d3 = p.delta1, p.delta2, p.delta3
    return np.array([
        [0.0, w1 / 2, 0.0, 0.0],
        [w1 / 2, -d1, w2 / 2, 0.0],
        [0.0, w2 / 2, -(d1 + d2), w3 / 2],
        [0.0, 0.0, w3 / 2, -(d1 + d2 + d3)],
    ])


def dressed_eigenvalues(p: SchemeParams) -> np.ndarray:
    """Eigenvalues of the driven-ladder Hamiltonian, ascending, rad/s."""
    return np.linalg.eigvalsh(dressed_hamiltonian(p))


# --- analytic references ----------------------------------------------------

def two_level_steady_state(omega1: float, delta1: float, gamma1: float) -> tuple[float, complex]:
    """Closed-form (rho22, rho12) of the driven, damped two-level atom."""
    rho22 = (omega1 ** 2 / 4) / (delta1 ** 2 + gamma1 ** 2 / 4 + omega1 ** 2 / 2)
    rho12 = (1j * omega1 / 2) * (1 - 2 * rho22) / (gamma1 / 2 + 1j * delta1)
    return rho22, rho12


def weak_probe_rho12(p: SchemeParams) -> complex:
    """Nested weak-probe formula for the probe coherence rho12,

        rho12 = (i W1/2) / (g21 + i D1 + (W2/2)^2 / (g31 + i (D1+D2)
                + (W3/2)^2 / (g41 + i (D1+D2+D3)))),

    with half-widths g21 = G1/2, g31 = G2/2, g41 = G3/2 read off the rho12,
    rho13, rho14 equations.  Linear response in omega1 with the ground state
    undepleted; valid for omega1 << gamma1.  Evaluated with denominators
    cleared so the dark-state pole at exact three-photon resonance with
    G3 = 0 takes its finite limit (the bare two-level coherence).
    """
    g21 = p.gamma1 / 2 + 1j * p.delta1
    g31 = p.gamma2 / 2 + 1j * (p.delta1 + p.delta2)
    d3 = p.gamma3 / 2 + 1j * (p.delta1 + p.delta2 + p.delta3)
    q2 = (p.omega2 / 2) ** 2
    q3 = (p.omega3 / 2) ** 2
    if q3 == 0.0 and d3 == 0.0:
        d3 = 1.0  # q3 = 0 makes d3 cancel; any nonzero value works
    return (1j * p.omega1 / 2) * (g31 * d3 + q3) / (g21 * (g31 * d3 + q3) + q2 * d3)
