from math import sqrt

import numpy as np
import pytest

from src.qnlwe.ensemble import (
    Ensemble,
    StateLabel,
    cyclic_ensemble,
    ensemble_from_process,
    game_ensemble,
    shift,
)
from src.qnlwe.errors import InputError
from src.qnlwe.process import afbw
from src.qnlwe.statevector import (
    OutcomeDistribution,
    StateVector,
    apply_hadamards,
    batch_gram_deviation,
    check_seed,
    computational_distribution,
    derive_seed,
    from_label,
    generator,
    gram_deviation,
    gram_matrix,
    overlap,
    random_product_state,
    random_state,
    sample,
    sample_with,
)

INV_SQRT2 = 1 / sqrt(2)


def _state(chars: str) -> StateVector:
    return from_label(StateLabel(chars))


class TestFromLabel:
    def test_computational(self) -> None:
        expected = np.zeros(8)
        expected[0] = 1
        assert np.allclose(_state("000").amps, expected, atol=1e-12)

    def test_plus(self) -> None:
        expected = np.zeros(8)
        expected[0b001] = INV_SQRT2
        expected[0b101] = INV_SQRT2
        assert np.allclose(_state("+01").amps, expected, atol=1e-12)

    def test_minus(self) -> None:
        assert np.allclose(_state("-").amps, [INV_SQRT2, -INV_SQRT2], atol=1e-12)

    def test_amplitudes_are_real(self) -> None:
        psi = _state("+-0+")
        assert np.all(psi.amps.imag == 0)
        assert np.allclose(np.abs(psi.amps[psi.amps != 0]), 2 ** (-3 / 2), atol=1e-12)

    def test_read_only(self) -> None:
        with pytest.raises(ValueError):
            _state("01").amps[0] = 1


class TestStateVector:
    def test_wrong_length(self) -> None:
        with pytest.raises(InputError):
            StateVector(2, np.ones(3))

    def test_too_many_qubits(self) -> None:
        with pytest.raises(InputError):
            StateVector(13, np.zeros(1 << 13))

    def test_basis_state(self) -> None:
        assert np.allclose(StateVector.basis_state(0b10, 2).amps, [0, 0, 1, 0])
        with pytest.raises(InputError):
            StateVector.basis_state(4, 2)


class TestHadamards:
    def test_empty_mask(self) -> None:
        psi = random_state(3, 1)
        assert np.allclose(apply_hadamards(psi, 0).amps, psi.amps, atol=1e-12)

    def test_first_qubit(self) -> None:
        rotated = apply_hadamards(_state("001"), 0b100)
        assert np.allclose(rotated.amps, _state("+01").amps, atol=1e-12)

    def test_last_qubit(self) -> None:
        rotated = apply_hadamards(_state("01+"), 0b001)
        assert np.allclose(rotated.amps, _state("010").amps, atol=1e-12)

    def test_involution_and_norm(self) -> None:
        for seed in range(20):
            psi = random_state(4, seed)
            mask = seed % 16
            once = apply_hadamards(psi, mask)
            assert abs(once.norm - 1) <= 1e-12
            assert np.max(np.abs(apply_hadamards(once, mask).amps - psi.amps)) <= 1e-12

    def test_mask_out_of_range(self) -> None:
        with pytest.raises(InputError):
            apply_hadamards(_state("00"), 4)


class TestOverlap:
    def test_values(self) -> None:
        assert abs(overlap(_state("+01"), _state("001")) - INV_SQRT2) <= 1e-12
        assert abs(abs(overlap(_state("+01"), _state("001"))) ** 2 - 0.5) <= 1e-12
        assert abs(overlap(_state("000"), _state("000")) - 1) <= 1e-12
        assert abs(overlap(_state("000"), _state("111"))) <= 1e-12

    def test_conjugate_symmetry(self) -> None:
        for seed in range(10):
            phi = random_state(3, seed)
            psi = random_state(3, seed + 100)
            assert abs(overlap(phi, psi) - overlap(psi, phi).conjugate()) <= 1e-12

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(InputError):
            overlap(_state("0"), _state("00"))


class TestComputationalDistribution:
    def test_half_half(self) -> None:
        distribution = computational_distribution(_state("01+"))
        assert distribution.support() == [0b010, 0b011]
        assert np.allclose(distribution.probs[[0b010, 0b011]], 0.5, atol=1e-12)

    def test_point_mass(self) -> None:
        distribution = computational_distribution(_state("000"))
        assert distribution.support() == [0]

    def test_hadamard_undoes_plus(self) -> None:
        distribution = computational_distribution(apply_hadamards(_state("01+"), 0b001))
        assert abs(distribution.probs[0b010] - 1) <= 1e-12
        assert distribution.support(1e-12) == [0b010]

    def test_unnormalized(self) -> None:
        with pytest.raises(InputError):
            computational_distribution(StateVector(1, np.array([1.0, 1.0])))

    def test_lines(self) -> None:
        distribution = computational_distribution(_state("+"))
        assert distribution.lines() == ["0 0.500000000000", "1 0.500000000000"]


class TestSampling:
    def test_point_mass(self) -> None:
        distribution = computational_distribution(_state("101"))
        for seed in range(20):
            assert sample(distribution, seed) == 0b101

    def test_deterministic(self) -> None:
        distribution = computational_distribution(_state("01+"))
        for seed in (0, 1, 2**63, 2**64 - 1):
            first = sample(distribution, seed)
            assert first in (0b010, 0b011)
            assert sample(distribution, seed) == first

    def test_derived_seeds(self) -> None:
        distribution = computational_distribution(_state("+"))
        draws = [sample(distribution, derive_seed(5, i)) for i in range(50)]
        assert draws == [sample(distribution, derive_seed(5, i)) for i in range(50)]
        assert set(draws) == {0, 1}

    def test_frequencies(self) -> None:
        distribution = computational_distribution(_state("01+"))
        rng = generator(0)
        counts = np.bincount([sample_with(distribution, rng) for _ in range(10_000)], minlength=8)
        assert 0.45 <= counts[0b010] / 10_000 <= 0.55
        assert 0.45 <= counts[0b011] / 10_000 <= 0.55
        assert counts[0b010] + counts[0b011] == 10_000

    def test_total_variation(self) -> None:
        distribution = computational_distribution(random_state(3, 7))
        rng = generator(11)
        counts = np.bincount([sample_with(distribution, rng) for _ in range(20_000)], minlength=8)
        empirical = OutcomeDistribution(3, counts / 20_000)
        assert empirical.total_variation(distribution) <= 0.05

    def test_invalid_seed(self) -> None:
        distribution = computational_distribution(_state("0"))
        with pytest.raises(InputError):
            sample(distribution, -1)
        with pytest.raises(InputError):
            derive_seed(2**64, 0)

    def test_check_seed(self) -> None:
        check_seed(0)
        check_seed(2**64 - 1)
        with pytest.raises(InputError, match="64-bit"):
            check_seed(2**64)


class TestGramMatrix:
    def test_shift(self) -> None:
        gram = gram_matrix(shift())
        assert np.max(np.abs(gram - np.eye(8))) <= 1e-9

    def test_zero_and_plus(self) -> None:
        gram = gram_matrix(Ensemble.parse_labels(["0", "+"]))
        assert abs(gram[0, 1] - INV_SQRT2) <= 1e-12
        assert abs(gram[1, 0] - INV_SQRT2) <= 1e-12

    def test_four_party_fixtures(self) -> None:
        assert gram_deviation(game_ensemble()) <= 1e-9
        assert gram_deviation(cyclic_ensemble()) <= 1e-9

    def test_batch_matches_single(self) -> None:
        rng = np.random.default_rng(9)
        tables = rng.integers(0, 8, size=(30, 8)).astype(np.uint8)
        tables[0] = afbw().as_array()
        deviations = batch_gram_deviation(tables, 3)
        for row, deviation in zip(tables, deviations):
            ensemble = Ensemble(
                3, tuple(StateLabel.from_bits(int(w), x, 3) for x, w in enumerate(row))
            )
            assert abs(deviation - gram_deviation(ensemble)) <= 1e-12
        assert deviations[0] <= 1e-9


class TestRandomStates:
    def test_normalized(self) -> None:
        for seed in range(5):
            assert random_state(3, seed).is_normalized()
            assert random_product_state(3, seed).is_normalized()

    def test_seeded(self) -> None:
        assert np.array_equal(random_state(2, 3).amps, random_state(2, 3).amps)
        assert np.array_equal(random_product_state(2, 3).amps, random_product_state(2, 3).amps)

    def test_ensemble_states_are_normalized(self) -> None:
        for label in ensemble_from_process(afbw()).states:
            assert from_label(label).is_normalized(1e-12)
