import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from stairway.errors import DegeneracyError
from stairway.synth import matrix_exp
from stairway.well import (
    BlochVector,
    TwoLevelHamiltonian,
    bloch_from_density,
    bloch_from_state,
    decompose,
    eigen_energies,
    eigen_states,
    evolve,
    max_transfer,
    propagator,
    rabi_trace,
    transfer_time,
)

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)

reals = st.floats(-5, 5, allow_nan=False)


def random_h(rng):
    return TwoLevelHamiltonian(rng.normal(), rng.normal(), complex(rng.normal(), rng.normal()))


def overlap(a, b):
    return abs(np.vdot(a, b))


class TestEigen:
    def test_symmetric_energies(self):
        assert eigen_energies(TwoLevelHamiltonian(0.4, 0.4, 0.25)) == pytest.approx((0.65, 0.15), abs=1e-15)

    def test_decoupled(self):
        assert eigen_energies(TwoLevelHamiltonian(2.0, -1.0)) == (2.0, -1.0)
        assert eigen_energies(TwoLevelHamiltonian(-1.0, 2.0)) == (2.0, -1.0)

    def test_generic_against_eigh(self):
        h = TwoLevelHamiltonian(1.0, 2.0, 0.5)
        e_plus, e_minus = eigen_energies(h)
        assert e_plus == pytest.approx(1.5 + math.sqrt(0.5), abs=1e-14)
        assert e_minus == pytest.approx(1.5 - math.sqrt(0.5), abs=1e-14)
        w, v = np.linalg.eigh(h.matrix)
        np.testing.assert_allclose([e_minus, e_plus], w, atol=1e-14)
        v_plus, v_minus = eigen_states(h)
        assert overlap(v[:, 1], v_plus) > 1 - 1e-10
        assert overlap(v[:, 0], v_minus) > 1 - 1e-10

    def test_symmetric_states(self):
        v_plus, v_minus = eigen_states(TwoLevelHamiltonian(0.3, 0.3, 0.2))
        np.testing.assert_allclose(v_plus, (KET1 + KET0) / math.sqrt(2), atol=1e-15)
        assert overlap(v_minus, (KET1 - KET0) / math.sqrt(2)) == pytest.approx(1.0, abs=1e-15)

    def test_decoupled_states(self):
        v_plus, v_minus = eigen_states(TwoLevelHamiltonian(-1.0, 1.0))
        np.testing.assert_allclose(v_plus, KET1, atol=0)
        np.testing.assert_allclose(v_minus, KET0, atol=0)

    def test_degenerate(self):
        with pytest.raises(DegeneracyError):
            eigen_states(TwoLevelHamiltonian(0.5, 0.5, 0.0))
        with pytest.raises(DegeneracyError):
            transfer_time(TwoLevelHamiltonian(0.5, 0.5, 0.0))

    def test_phase_convention(self, rng):
        for _ in range(50):
            for v in eigen_states(random_h(rng)):
                first = v[0] if abs(v[0]) > 1e-15 else v[1]
                assert abs(first.imag) < 1e-15 and first.real > 0

    def test_random_eigenpairs(self, rng):
        for _ in range(1000):
            h = random_h(rng)
            m = h.matrix
            energies = eigen_energies(h)
            w = np.linalg.eigvalsh(m)
            assert max(abs(energies[0] - w[1]), abs(energies[1] - w[0])) < 1e-10
            for e, v in zip(energies, eigen_states(h)):
                assert abs(np.linalg.norm(v) - 1) < 1e-12
                assert np.max(np.abs(m @ v - e * v)) < 1e-10


class TestDecompose:
    def test_pure_tunnelling(self):
        d = decompose(TwoLevelHamiltonian(0.0, 0.0, 1.0))
        assert (d.h0, d.h1, d.h2, d.h3, d.hr) == (0.0, 1.0, 0.0, 0.0, 1.0)

    def test_pure_bias(self):
        d = decompose(TwoLevelHamiltonian(1.0, -1.0, 0.0))
        assert (d.h0, d.h1, d.h2, d.h3) == (0.0, 0.0, 0.0, 1.0)
        assert (d.hx, d.hy, d.hz) == (0.0, 0.0, 1.0)

    def test_example_round_trip(self):
        h = TwoLevelHamiltonian(0.3, 0.1, 0.2 - 0.1j)
        assert np.max(np.abs(decompose(h).matrix() - h.matrix)) <= 1e-15

    def test_off_diagonal_sign(self):
        d = decompose(TwoLevelHamiltonian(0.0, 0.0, 0.2 - 0.1j))
        # H01 = h1 - i h2 for Y = [[0, -i], [i, 0]]
        assert d.h1 == pytest.approx(0.2) and d.h2 == pytest.approx(0.1)

    def test_random_round_trip(self, rng):
        for _ in range(1000):
            h = random_h(rng)
            d = decompose(h)
            assert np.max(np.abs(d.matrix() - h.matrix)) < 1e-14
            assert d.hx**2 + d.hy**2 + d.hz**2 == pytest.approx(1.0, abs=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(reals, reals, reals, reals)
    def test_from_pauli_inverts(self, h0, h1, h2, h3):
        d = decompose(TwoLevelHamiltonian.from_pauli(h0, h1, h2, h3))
        np.testing.assert_allclose([d.h0, d.h1, d.h2, d.h3], [h0, h1, h2, h3], atol=1e-14)

    def test_zero(self):
        d = decompose(TwoLevelHamiltonian(0.2, 0.2))
        assert d.hr == 0 and (d.hx, d.hy, d.hz) == (0.0, 0.0, 0.0)


class TestEvolve:
    def test_half_transfer_time(self):
        a_t = 0.8
        h = TwoLevelHamiltonian(0.0, 0.0, a_t)
        psi = evolve(h, KET0, math.pi / 2 / a_t)
        assert overlap(psi, KET1) == pytest.approx(1.0, abs=1e-14)
        assert transfer_time(h) == pytest.approx(math.pi / 2 / a_t, abs=1e-15)

    def test_zero_time(self):
        psi = np.array([0.6, 0.8j])
        np.testing.assert_allclose(evolve(random_h(np.random.default_rng(1)), psi, 0.0), psi, atol=1e-15)

    def test_diagonal_stationary(self):
        h = TwoLevelHamiltonian(0.7, -0.2)
        for t in (0.3, 5.0, 40.0):
            assert overlap(evolve(h, KET0, t), KET0) == pytest.approx(1.0, abs=1e-14)

    def test_against_scaling_and_squaring(self, rng):
        for _ in range(200):
            h = random_h(rng)
            t = rng.uniform(-10, 10)
            psi0 = rng.normal(size=2) + 1j * rng.normal(size=2)
            psi0 /= np.linalg.norm(psi0)
            psi = evolve(h, psi0, t)
            assert abs(np.linalg.norm(psi) - 1) < 1e-12
            assert np.max(np.abs(psi - expm(-1j * t * h.matrix) @ psi0)) < 1e-11
            assert np.max(np.abs(propagator(h, t) - matrix_exp(h.matrix, -t))) < 1e-11

    def test_rejects_unnormalised(self):
        with pytest.raises(ValueError):
            evolve(TwoLevelHamiltonian(0, 0, 1), np.array([1.0, 1.0]), 0.1)
        with pytest.raises(ValueError):
            evolve(TwoLevelHamiltonian(0, 0, 1), np.array([1.0, 0, 0]), 0.1)

    def test_bloch_rotation_about_axis(self, rng):
        for _ in range(20):
            h = random_h(rng)
            d = decompose(h)
            axis = np.array([d.hx, d.hy, d.hz])
            psi0 = rng.normal(size=2) + 1j * rng.normal(size=2)
            psi0 /= np.linalg.norm(psi0)
            angle0 = bloch_from_state(psi0).as_array() @ axis
            for t in np.linspace(0, 7, 15):
                r = bloch_from_state(evolve(h, psi0, t))
                assert r.length == pytest.approx(1.0, abs=1e-9)
                assert r.as_array() @ axis == pytest.approx(angle0, abs=1e-9)


class TestRabi:
    def test_symmetric_full_sweep(self):
        h = TwoLevelHamiltonian(0.0, 0.0, 1.0)
        trace = rabi_trace(h, KET0, np.linspace(0, 2 * transfer_time(h), 10_001))
        assert trace.p0_values.min() < 1e-6
        assert trace.p0_values[0] == pytest.approx(1.0, abs=1e-15)

    def test_skewed_half_sweep(self):
        s = 1 / math.sqrt(2)
        h = TwoLevelHamiltonian.from_axis(1.0, s, 0.0, s)
        assert max_transfer(h) == pytest.approx(0.5, abs=1e-15)
        trace = rabi_trace(h, KET0, np.linspace(0, 2 * transfer_time(h), 10_001))
        assert trace.p0_values.min() == pytest.approx(0.5, abs=1e-6)

    def test_constant_for_identity(self):
        trace = rabi_trace(TwoLevelHamiltonian(0.4, 0.4), KET0, np.linspace(0, 10, 50))
        np.testing.assert_array_equal(trace.p0_values, 1.0)

    def test_matches_evolve(self, rng):
        h = random_h(rng)
        psi0 = np.array([0.6, 0.8j])
        t = np.linspace(0, 5, 40)
        trace = rabi_trace(h, psi0, t)
        expected = [abs(evolve(h, psi0, ti)[0]) ** 2 for ti in t]
        np.testing.assert_allclose(trace.p0_values, expected, atol=1e-13)
        np.testing.assert_array_equal(trace.p0_values + trace.p1_values, 1.0)
        assert trace.params is h

    def test_max_transfer_general(self, rng):
        for _ in range(10):
            h = random_h(rng)
            d = decompose(h)
            trace = rabi_trace(h, KET0, np.linspace(0, transfer_time(h), 10_001))
            bound = (d.h1**2 + d.h2**2) / d.hr**2
            assert trace.p1_values.max() == pytest.approx(bound, abs=1e-6)
            assert np.all((trace.p0_values >= 0) & (trace.p0_values <= 1))

    def test_grid_errors(self):
        h = TwoLevelHamiltonian(0, 0, 1)
        with pytest.raises(ValueError):
            rabi_trace(h, KET0, [])
        with pytest.raises(ValueError):
            rabi_trace(h, KET0, [0.0, 0.2, 0.1])
        with pytest.raises(ValueError):
            rabi_trace(h, KET0, [[0.0, 1.0]])


class TestBloch:
    def test_ground(self):
        r = bloch_from_density(np.outer(KET0, KET0))
        assert r == BlochVector(0.0, 0.0, 1.0)
        assert r.p0 == 1.0 and r.is_pure()

    def test_maximally_mixed(self):
        r = bloch_from_density(np.eye(2) / 2)
        assert r.as_array().tolist() == [0.0, 0.0, 0.0]
        assert r.p0 == r.p1 == 0.5
        assert not r.is_pure()

    def test_plus(self):
        plus = (KET1 + KET0) / math.sqrt(2)
        np.testing.assert_allclose(bloch_from_density(np.outer(plus, plus.conj())).as_array(), [1, 0, 0], atol=1e-15)

    def test_y_eigenstate(self):
        psi = np.array([1, 1j]) / math.sqrt(2)
        np.testing.assert_allclose(bloch_from_state(psi).as_array(), [0, 1, 0], atol=1e-15)

    def test_invalid(self):
        with pytest.raises(ValueError):
            bloch_from_density(np.array([[1, 1], [0, 0]]))
        with pytest.raises(ValueError):
            bloch_from_density(np.eye(2))
        with pytest.raises(ValueError):
            bloch_from_density(np.diag([1.5, -0.5]))
        with pytest.raises(ValueError):
            bloch_from_density(np.eye(3) / 3)

    def test_mixture_inside_ball(self, rng):
        for _ in range(100):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            rho = a @ a.conj().T
            rho /= np.trace(rho)
            r = bloch_from_density(rho)
            assert r.length <= 1 + 1e-12
            assert r.p0 == pytest.approx(rho[0, 0].real, abs=1e-14)
