import numpy as np
import pytest
from conftest import random_hermitian, random_state

from qslbound.dynamics import (
    TimeGrid,
    evolve_state,
    expectation_derivative,
    heisenberg_evolve,
    propagator,
    propagator_family,
    track_observable,
)
from qslbound.linalg import SIGMA_X, SIGMA_Z, spectral_norm, tensor_product
from qslbound.scenarios import evolved_amplitudes, initial_schmidt_state

PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)


class TestTimeGrid:
    def test_endpoints(self):
        grid = TimeGrid(2.0, 10)
        assert grid.points[0] == 0.0
        assert grid.points[-1] == 2.0
        assert grid.points.size == 11

    def test_validation(self):
        with pytest.raises(ValueError):
            TimeGrid(0.0, 10)
        with pytest.raises(ValueError):
            TimeGrid(1.0, 1)

    def test_resolution_default(self):
        grid = TimeGrid.with_resolution(1.0)
        assert grid.n_steps == 2000
        assert TimeGrid.with_resolution(0.001).n_steps >= 16
        assert TimeGrid.with_resolution(1.0001).n_steps % 2 == 0


class TestPropagator:
    def test_zero_time(self):
        rng = np.random.default_rng(2)
        assert np.allclose(propagator(random_hermitian(rng, 4), 0.0), np.eye(4))

    def test_phase_rotation(self):
        u = propagator(SIGMA_Z, np.pi / 2.0)
        assert np.allclose(u, np.diag([-1j, 1j]), atol=1e-12)

    def test_two_qubit_closed_form(self):
        # exp(-i XX t)|00> = cos t |00> - i sin t |11>.
        h = tensor_product(SIGMA_X, SIGMA_X)
        psi = initial_schmidt_state(1.0)
        out = propagator(h, 0.7) @ psi
        expected = np.array([np.cos(0.7), 0.0, 0.0, -1j * np.sin(0.7)])
        assert np.allclose(out, expected, atol=1e-12)

    def test_unitarity_randomized(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            u_of_t = propagator_family(random_hermitian(rng, 4))
            u = u_of_t(float(rng.uniform(-100.0, 100.0)))
            assert np.max(np.abs(u.conj().T @ u - np.eye(4))) <= 1e-10


class TestEvolveState:
    def test_identity(self):
        psi = PLUS
        assert np.allclose(evolve_state(np.eye(2), psi), psi)

    def test_bit_flip(self):
        out = evolve_state(SIGMA_X, np.array([1.0, 0.0]))
        assert np.allclose(out, [0.0, 1.0])

    def test_matches_closed_form_amplitudes(self):
        p, theta, t = 0.1, 1.0, 0.5
        h = theta * tensor_product(SIGMA_X, SIGMA_X)
        out = evolve_state(propagator(h, t), initial_schmidt_state(p))
        alpha, beta = evolved_amplitudes(p, theta, 0.0, t)
        assert np.allclose(out, [alpha, 0.0, 0.0, beta], atol=1e-10)

    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError, match="unitary"):
            evolve_state(np.diag([1.0, 2.0]), PLUS)


class TestHeisenbergEvolve:
    def test_identity(self):
        rng = np.random.default_rng(5)
        obs = random_hermitian(rng, 4)
        assert np.allclose(heisenberg_evolve(np.eye(4), obs), obs)

    def test_spectrum_preserved(self):
        rng = np.random.default_rng(7)
        h = random_hermitian(rng, 4)
        obs = random_hermitian(rng, 4)
        o_t = heisenberg_evolve(propagator(h, 1.3), obs)
        assert np.allclose(np.linalg.eigvalsh(o_t), np.linalg.eigvalsh(obs))

    def test_picture_equivalence_randomized(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            h = random_hermitian(rng, 4)
            obs = random_hermitian(rng, 4)
            psi = random_state(rng, 4)
            u = propagator(h, float(rng.uniform(-5.0, 5.0)))
            heis = np.vdot(psi, heisenberg_evolve(u, obs) @ psi).real
            schro = np.vdot(u @ psi, obs @ (u @ psi)).real
            assert heis == pytest.approx(schro, abs=1e-10)


class TestExpectationDerivative:
    def test_conserved_observable(self):
        rng = np.random.default_rng(13)
        h = random_hermitian(rng, 3)
        psi = random_state(rng, 3)
        assert expectation_derivative(h, h, psi) == pytest.approx(0.0, abs=1e-12)

    def test_extremum_at_zero(self):
        assert expectation_derivative(SIGMA_Z, SIGMA_X, PLUS) == pytest.approx(
            0.0, abs=1e-14
        )

    def test_analytic_oracle_at_pi_over_8(self):
        # <sigma_x(t)> = cos 2t in |+>, so the slope at pi/8 is -2 sin(pi/4).
        t = np.pi / 8.0
        o_t = heisenberg_evolve(propagator(SIGMA_Z, t), SIGMA_X)
        got = expectation_derivative(SIGMA_Z, o_t, PLUS)
        assert got == pytest.approx(-2.0 * np.sin(np.pi / 4.0), abs=1e-12)


class TestTrackObservable:
    def test_identity_observable(self):
        rng = np.random.default_rng(17)
        h = random_hermitian(rng, 2)
        traj = track_observable(h, np.eye(2), PLUS, TimeGrid(1.0, 20))
        assert np.allclose(traj.means, 1.0)
        assert np.allclose(traj.std_devs, 0.0, atol=1e-8)
        assert np.allclose(traj.derivatives, 0.0, atol=1e-12)

    def test_single_qubit_analytic_curve(self):
        grid = TimeGrid(1.0, 200)
        traj = track_observable(SIGMA_Z, SIGMA_X, PLUS, grid)
        assert np.allclose(traj.means, np.cos(2.0 * grid.points), atol=1e-12)
        assert np.allclose(traj.std_devs, np.abs(np.sin(2.0 * grid.points)), atol=1e-10)
        assert np.allclose(traj.derivatives, -2.0 * np.sin(2.0 * grid.points), atol=1e-12)

    def test_finite_difference_consistency(self):
        rng = np.random.default_rng(19)
        h = random_hermitian(rng, 4)
        obs = random_hermitian(rng, 4)
        psi = random_state(rng, 4)
        grid = TimeGrid(1.0, 400)
        traj = track_observable(h, obs, psi, grid)
        dx = grid.dx
        fd = (traj.means[2:] - traj.means[:-2]) / (2.0 * dx)
        scale = (2.0 * spectral_norm(h)) ** 3 * spectral_norm(obs)
        assert np.max(np.abs(fd - traj.derivatives[1:-1])) <= 10.0 * dx * dx * scale

    def test_energy_conservation(self):
        rng = np.random.default_rng(23)
        h = random_hermitian(rng, 4)
        psi = random_state(rng, 4)
        traj = track_observable(h, h, psi, TimeGrid(3.0, 60))
        assert np.max(np.abs(traj.means - traj.means[0])) <= 1e-10
        assert np.max(np.abs(traj.derivatives)) <= 1e-10
