import itertools

import numpy as np
import pytest
from conftest import random_density, random_hermitian, random_unitary

from qslbound.measures import (
    capacity_of_entanglement,
    entanglement_entropy,
    entanglement_report,
    ergotropy_max,
    modular_hamiltonian,
    relative_surprisal_variance,
)

LN2 = np.log(2.0)
RHO_19 = np.diag([0.1, 0.9]).astype(complex)

# Frozen from the scalar eigenvalue formulas (independent of the matrix path).
S_19 = 0.3250829733914482
C_19 = 0.43450162589252944


class TestEntanglementEntropy:
    def test_pure_state(self):
        assert entanglement_entropy(np.diag([1.0, 0.0])) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed(self):
        assert entanglement_entropy(np.eye(2) / 2.0) == pytest.approx(LN2)

    def test_scalar_oracle(self):
        assert entanglement_entropy(RHO_19) == pytest.approx(S_19, abs=1e-12)

    def test_unitary_invariance(self):
        rng = np.random.default_rng(29)
        for _ in range(200):
            d = int(rng.choice([2, 3, 4]))
            rho = random_density(rng, d)
            u = random_unitary(rng, d)
            assert entanglement_entropy(u @ rho @ u.conj().T) == pytest.approx(
                entanglement_entropy(rho), abs=1e-10
            )


class TestModularHamiltonian:
    def test_maximally_mixed(self):
        assert np.allclose(modular_hamiltonian(np.eye(2) / 2.0), LN2 * np.eye(2))

    def test_scalar_oracle(self):
        k = modular_hamiltonian(RHO_19)
        assert np.allclose(
            np.diag(k).real, [2.302585092994046, 0.10536051565782628], atol=1e-12
        )

    def test_pure_state_mean_vanishes(self):
        rho = np.diag([1.0, 0.0]).astype(complex)
        k = modular_hamiltonian(rho)
        # One clamped-large eigenvalue, but with ~zero weight in rho.
        assert np.trace(rho @ k).real == pytest.approx(0.0, abs=1e-10)

    def test_mean_reproduces_entropy(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            rho = random_density(rng, 4)
            k = modular_hamiltonian(rho)
            assert np.trace(rho @ k).real == pytest.approx(
                entanglement_entropy(rho), abs=1e-10
            )


class TestCapacityOfEntanglement:
    def test_pure_state(self):
        assert capacity_of_entanglement(np.diag([1.0, 0.0])) == pytest.approx(
            0.0, abs=1e-10
        )

    def test_flat_spectrum(self):
        assert capacity_of_entanglement(np.eye(2) / 2.0) == pytest.approx(0.0, abs=1e-12)

    def test_scalar_oracle(self):
        assert capacity_of_entanglement(RHO_19) == pytest.approx(C_19, abs=1e-12)

    def test_equals_modular_variance(self):
        rng = np.random.default_rng(37)
        for _ in range(500):
            d = int(rng.choice([2, 3, 4]))
            rho = random_density(rng, d)
            k = modular_hamiltonian(rho)
            var = np.trace(rho @ k @ k).real - np.trace(rho @ k).real ** 2
            assert capacity_of_entanglement(rho) == pytest.approx(var, abs=1e-9)


class TestRelativeSurprisalVariance:
    def test_self_is_zero(self):
        rng = np.random.default_rng(41)
        rho = random_density(rng, 3)
        assert relative_surprisal_variance(rho, rho) == pytest.approx(0.0, abs=1e-10)

    def test_against_maximally_mixed_is_capacity(self):
        assert relative_surprisal_variance(RHO_19, np.eye(2) / 2.0) == pytest.approx(
            C_19, abs=1e-10
        )
        rng = np.random.default_rng(43)
        for _ in range(100):
            d = int(rng.choice([2, 3, 4]))
            rho = random_density(rng, d)
            assert relative_surprisal_variance(rho, np.eye(d) / d) == pytest.approx(
                capacity_of_entanglement(rho), abs=1e-9
            )

    def test_scalar_oracle_reversed_arguments(self):
        # Brute-force scalar evaluation for commuting diagonal inputs.
        l5, l59 = np.log(5.0), np.log(5.0 / 9.0)
        d_mean = 0.5 * (l5 + l59)
        expected = 0.5 * (l5**2 + l59**2) - d_mean**2
        got = relative_surprisal_variance(np.eye(2) / 2.0, RHO_19)
        assert got == pytest.approx(expected, abs=1e-12)
        assert got == pytest.approx(1.2069489608125819, abs=1e-12)

    def test_support_violation(self):
        rho = np.diag([0.5, 0.5]).astype(complex)
        sigma = np.diag([1.0, 0.0]).astype(complex)
        with pytest.raises(ValueError, match="support"):
            relative_surprisal_variance(rho, sigma)


class TestErgotropy:
    def test_ground_state_is_passive(self):
        h = np.diag([0.0, 1.0, 2.0]).astype(complex)
        rho = np.diag([1.0, 0.0, 0.0]).astype(complex)
        assert ergotropy_max(rho, h) == pytest.approx(0.0, abs=1e-12)

    def test_inverted_qubit(self):
        rho = np.diag([0.2, 0.8]).astype(complex)
        h = np.diag([0.0, 1.0]).astype(complex)
        assert ergotropy_max(rho, h) == pytest.approx(0.6)

    def test_maximally_mixed_is_passive(self):
        rng = np.random.default_rng(47)
        for d in (2, 3, 4):
            h = random_hermitian(rng, d)
            assert ergotropy_max(np.eye(d) / d, h) == pytest.approx(0.0, abs=1e-10)

    def test_matches_permutation_bruteforce(self):
        rng = np.random.default_rng(53)
        for _ in range(50):
            d = int(rng.choice([2, 3, 4]))
            rho = random_density(rng, d)
            h = random_hermitian(rng, d)
            pops = np.linalg.eigvalsh(rho)
            energies = np.linalg.eigvalsh(h)
            best = min(
                float(np.dot(pops[list(perm)], energies))
                for perm in itertools.permutations(range(d))
            )
            expected = np.trace(rho @ h).real - best
            assert ergotropy_max(rho, h) == pytest.approx(expected, abs=1e-10)


def test_entanglement_report_fields():
    rep = entanglement_report(RHO_19)
    assert rep.entropy == pytest.approx(S_19, abs=1e-12)
    assert rep.capacity == pytest.approx(C_19, abs=1e-12)
    assert rep.entropy <= np.log(2.0) + 1e-12
    assert rep.capacity >= 0.0
    assert np.allclose(np.sort(rep.modular_spectrum), [-np.log(0.9), -np.log(0.1)])
