import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rydladder.bloch import (build_liouvillian, dressed_eigenvalues, steady_state,
                             steady_state_batch, liouvillian_parts, time_evolve,
                             two_level_steady_state, weak_probe_rho12)
from rydladder.errors import SteadyStateError
from rydladder.params import SchemeParams, check_density_matrix, mhz

DIAG = [0, 5, 10, 15]

frequency = st.floats(min_value=0.0, max_value=30.0)
detuning = st.floats(min_value=-30.0, max_value=30.0)


def random_scheme(draw_mhz):
    o1, o2, o3, d1, d2, d3, g1, g2, g3 = draw_mhz
    return SchemeParams(omega1=mhz(o1), omega2=mhz(o2), omega3=mhz(o3),
                        delta1=mhz(d1), delta2=mhz(d2), delta3=mhz(d3),
                        gamma1=mhz(g1), gamma2=mhz(g2), gamma3=mhz(g3))


scheme_strategy = st.tuples(
    frequency, frequency, frequency, detuning, detuning, detuning,
    st.floats(min_value=0.5, max_value=30.0),
    st.floats(min_value=0.1, max_value=10.0),
    st.floats(min_value=0.1, max_value=2.0),
).map(random_scheme)


class TestLiouvillianStructure:
    @given(scheme_strategy, st.floats(min_value=-10.0, max_value=10.0))
    def test_columns_conserve_trace(self, p, shift_mhz):
        L = build_liouvillian(p, mhz(shift_mhz)).matrix
        col_sums = L[DIAG, :].sum(axis=0)
        assert np.abs(col_sums).max() <= 1e-12 * max(1.0, np.abs(L).max())

    @given(scheme_strategy)
    def test_hermitian_input_gives_hermitian_derivative(self, p):
        L = build_liouvillian(p, mhz(1.3)).matrix
        rng = np.random.default_rng(7)
        x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = (x + x.conj().T) / 2
        rho /= np.trace(rho).real
        drho = (L @ rho.reshape(16)).reshape(4, 4)
        scale = max(1.0, np.abs(drho).max())
        assert np.abs(drho - drho.conj().T).max() <= 1e-12 * scale

    def test_two_level_limit_block_decouples(self, cs_params):
        p = cs_params.replace(omega2=0.0, omega3=0.0)
        L = build_liouvillian(p, 0.0).matrix
        block = [0, 1, 4, 5]  # vec positions of rho11, rho12, rho21, rho22
        outside = [k for k in range(16) if k not in block]
        # dynamics started inside the {1,2} subspace never leaves it
        assert np.abs(L[np.ix_(outside, block)]).max() == 0.0

    def test_shift_enters_only_on_rydberg_coherences(self, cs_params):
        L0, D = liouvillian_parts(cs_params)
        expected = np.zeros((16, 16), dtype=complex)
        for a in (1, 2, 3):  # rho_a4 rows get +i, conjugates -i
            expected[4 * (a - 1) + 3, 4 * (a - 1) + 3] = 1j
            expected[4 * 3 + (a - 1), 4 * 3 + (a - 1)] = -1j
        assert np.abs(D - expected).max() == 0.0


class TestSteadyState:
    def test_no_driving_decays_to_ground(self):
        p = SchemeParams(omega1=0.0, omega2=0.0, omega3=0.0,
                         gamma1=mhz(5.0), gamma2=mhz(3.0), gamma3=mhz(1.0))
        rho = steady_state(p)
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        assert np.abs(rho - expected).max() <= 1e-12

    def test_two_level_against_closed_form_and_integration(self):
        omega1, delta1, gamma1 = mhz(1.3), mhz(2.7), mhz(5.0)
        p = SchemeParams(omega1=omega1, omega2=0.0, omega3=0.0, delta1=delta1,
                         gamma1=gamma1, gamma2=mhz(3.0), gamma3=mhz(1.0))
        rho = steady_state(p)
        rho22, rho12 = two_level_steady_state(omega1, delta1, gamma1)
        assert rho[1, 1].real == pytest.approx(rho22, abs=1e-12)
        assert rho[0, 1] == pytest.approx(rho12, abs=1e-12)
        # independent route: long-time integration from the ground state
        rho0 = np.zeros((4, 4), dtype=complex)
        rho0[0, 0] = 1.0
        rho_t = time_evolve(p, 0.0, rho0, t_final=60.0 / gamma1)
        assert abs(rho_t[1, 1].real - rho22) <= 1e-7

    def test_weak_probe_matches_nested_formula(self, cs_params):
        p0 = cs_params.replace(omega1=cs_params.gamma1 / 150.0)
        for d1 in mhz(np.linspace(-12.0, 12.0, 41)):
            p = p0.replace(delta1=d1)
            rho12 = steady_state(p)[0, 1]
            ref = weak_probe_rho12(p)
            assert abs(rho12 - ref) / abs(ref) <= 0.01

    def test_probe_linearity_over_one_decade(self, cs_params):
        base = cs_params.gamma1 / 1000.0
        p = cs_params.replace(delta1=mhz(2.0))
        r = [abs(steady_state(p.replace(omega1=s * base))[0, 1]) for s in (1.0, 10.0)]
        assert r[1] / r[0] == pytest.approx(10.0, rel=0.01)

    @given(scheme_strategy, st.floats(min_value=-10.0, max_value=10.0))
    def test_invariants_and_residual(self, p, shift_mhz):
        shift = mhz(shift_mhz)
        rho = steady_state(p, shift)
        check_density_matrix(rho)
        L = build_liouvillian(p, shift).matrix
        residual = np.abs(L @ rho.reshape(16)).max()
        assert residual <= 1e-10 * max(1.0, np.abs(L).sum(axis=1).max())

    @given(scheme_strategy, st.floats(min_value=-8.0, max_value=8.0))
    def test_shift_equivalence(self, p, shift_mhz):
        shift = mhz(shift_mhz)
        direct = steady_state(p, shift)
        substituted = steady_state(p.replace(delta3=p.delta3 - shift), 0.0)
        assert np.abs(direct - substituted).max() <= 1e-10

    def test_isolated_undamped_level_raises(self):
        # levels 3, 4 undriven and level 4 undamped: steady state non-unique
        p = SchemeParams(omega1=mhz(1.0), omega2=0.0, omega3=0.0,
                         gamma1=mhz(5.0), gamma2=mhz(3.0), gamma3=0.0)
        with pytest.raises(SteadyStateError, match="condition"):
            steady_state(p)

    def test_batch_matches_scalar_solves(self, cs_params):
        L0, D = liouvillian_parts(cs_params)
        shifts = mhz(np.array([-2.0, 0.0, 0.7, 5.0]))
        batch = steady_state_batch(L0, D, shifts)
        for k, s in enumerate(shifts):
            assert np.abs(batch[k] - steady_state(cs_params, s)).max() <= 1e-12


class TestTimeEvolve:
    def test_zero_time_is_identity(self, cs_params):
        rho0 = np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex)
        assert np.array_equal(time_evolve(cs_params, 0.0, rho0, 0.0), rho0)

    def test_pure_decay_returns_to_ground(self):
        p = SchemeParams(omega1=0.0, omega2=0.0, omega3=0.0,
                         gamma1=mhz(5.0), gamma2=mhz(3.0), gamma3=mhz(1.0))
        rho0 = np.zeros((4, 4), dtype=complex)
        rho0[1, 1] = 1.0
        rho = time_evolve(p, 0.0, rho0, t_final=40.0 / p.gamma1)
        assert abs(rho[0, 0].real - 1.0) <= 1e-6
        assert np.abs(np.diag(rho)[1:]).max() <= 1e-6

    def test_long_time_limit_equals_steady_state(self, cs_params):
        # gamma3 > 0 so every level damps directly and 50/Gamma_min mixes;
        # with an undamped Rydberg level the relaxation is set by the much
        # slower dark-state rate instead.
        p = cs_params.replace(delta1=mhz(3.0), gamma3=mhz(0.8))
        rho0 = np.zeros((4, 4), dtype=complex)
        rho0[0, 0] = 1.0
        gamma_min = min(g for g in (p.gamma1, p.gamma2, p.gamma3) if g > 0)
        rho_t = time_evolve(p, mhz(0.4), rho0, t_final=50.0 / gamma_min)
        assert np.abs(rho_t - steady_state(p, mhz(0.4))).max() <= 1e-6


class TestDressedEigenvalues:
    def test_all_zero_fields(self):
        p = SchemeParams(omega1=0.0, omega2=0.0, omega3=0.0)
        assert np.array_equal(dressed_eigenvalues(p), np.zeros(4))

    def test_single_field_rabi_splitting(self):
        p = SchemeParams(omega1=mhz(1.0), omega2=0.0, omega3=0.0)
        eigs = dressed_eigenvalues(p)
        expected = np.array([-mhz(1.0) / 2, 0.0, 0.0, mhz(1.0) / 2])
        assert np.abs(eigs - expected).max() <= 1e-9 * mhz(1.0)

    def test_sorted_and_continuous_for_cs(self, cs_params):
        grid = mhz(np.linspace(-15.0, 15.0, 301))
        prev = None
        min_gap = np.inf
        for d1 in grid:
            eigs = dressed_eigenvalues(cs_params.replace(delta1=d1))
            assert np.all(np.diff(eigs) >= 0)
            min_gap = min(min_gap, np.diff(eigs).min())
            if prev is not None:
                # continuity: change bounded by the parameter step
                assert np.abs(eigs - prev).max() <= 2.0 * (grid[1] - grid[0])
            prev = eigs
        assert min_gap > 0  # avoided, not actual, crossings
