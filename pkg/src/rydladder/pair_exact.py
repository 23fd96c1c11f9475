"""Exact two-atom master equation on the 16-dimensional pair space.

Validation oracle for the mean-field factorization rho_{a4,44} = rho_a4 *
rho44: the pair Hamiltonian is H x I + I x H + v12 |44><44| with independent
single-atom decay channels, solved exactly (256-dimensional vectorized
generator, dense).  No hierarchy truncation is involved, so the deviation of
the reduced single-atom state from the mean-field fixed point measures the
correlation error of the method.
"""
from __future__ import annotations

import numpy as np

from .bloch import dressed_hamiltonian
from .errors import SteadyStateError
from .params import SchemeParams


def _single_atom_collapse_ops(p: SchemeParams) -> list[np.ndarray]:
    ops = []
    for (a, b, g) in ((0, 1, p.gamma1), (1, 2, p.gamma2), (2, 3, p.gamma3)):
        if g > 0:
            c = np.zeros((4, 4))
            c[a, b] = np.sqrt(g)
            ops.append(c)
    return ops


def pair_liouvillian(p: SchemeParams, v12: float) -> np.ndarray:
    """256x256 generator for row-major vec of the two-atom density matrix."""
    h1 = dressed_hamiltonian(p).astype(complex)
    eye4 = np.eye(4)
    h = np.kron(h1, eye4) + np.kron(eye4, h1)
    p44 = np.zeros((4, 4))
    p44[3, 3] = 1.0
    h = h + v12 * np.kron(p44, p44)

    eye = np.eye(16)
    L = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for c1 in _single_atom_collapse_ops(p):
        for c in (np.kron(c1, eye4), np.kron(eye4, c1)):
            cdc = c.conj().T @ c
            L += np.kron(c, c.conj()) - 0.5 * (np.kron(cdc, eye) + np.kron(eye, cdc.T))
    return L


def reduce_to_single(pair_state: np.ndarray, atom: int = 0) -> np.ndarray:
    """Partial trace of the 16x16 pair state over the other atom."""
    blocks = pair_state.reshape(4, 4, 4, 4)  # indices (a1, a2, b1, b2)
    if atom == 0:
        return np.einsum("agbg->ab", blocks)
    return np.einsum("gagb->ab", blocks)


def exact_pair_steady_state(p: SchemeParams, v12: float) -> tuple[np.ndarray, np.ndarray]:
    """Steady state of the interacting pair and its reduced one-atom state.

    Returns (pair_state 16x16, reduced 4x4).  Raises SteadyStateError with a
    condition estimate when the pair steady state is non-unique.
    """
    L = pair_liouvillian(p, v12)
    A = L.copy()
    A[0, :] = 0.0
    diag = [17 * k for k in range(16)]  # vec positions of rho_{(ab),(ab)}
    A[0, diag] = 1.0
    b = np.zeros(256, dtype=complex)
    b[0] = 1.0
    try:
        vec = np.linalg.solve(A, b)
    except np.linalg.LinAlgError:
        cond = np.linalg.cond(A)
        raise SteadyStateError(
            f"singular pair steady state (condition estimate {cond:.3e})") from None
    resid = np.abs(L @ vec).max()
    bound = 1e-10 * max(1.0, np.abs(L).sum(axis=1).max())
    if resid > bound:
        cond = np.linalg.cond(A)
        raise SteadyStateError(
            f"pair steady-state residual {resid:.3e} exceeds {bound:.3e} "
            f"(condition estimate {cond:.3e})")
    pair = vec.reshape(16, 16)
    pair = 0.5 * (pair + pair.conj().T)
    reduced = reduce_to_single(pair)
    return pair, reduced


def swap_atoms(pair_state: np.ndarray) -> np.ndarray:
    """Exchange-conjugated pair state S rho S with S the swap operator."""
    blocks = pair_state.reshape(4, 4, 4, 4)
    return np.einsum("abcd->badc", blocks).reshape(16, 16)
