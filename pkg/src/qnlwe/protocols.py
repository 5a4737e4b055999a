"""Measurement in the basis S_omega through a classical process, and the
converse simulation of the process's channel from that measurement.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from loguru import logger

from .ensemble.construction import ensemble_from_process, is_orthonormal_exact
from .ensemble.labels import StateLabel
from .errors import InputError, NonOrthonormalError
from .process.table import ProcessTable
from .statevector import (
    NORM_TOLERANCE,
    OutcomeDistribution,
    Seed,
    StateVector,
    apply_hadamards,
    derive_seed,
    from_label,
    generator,
    sample,
    sample_with,
)
from .utils import check_word, word_to_bits


@dataclass(frozen=True)
class MeasurementRecord:
    n: int
    basis: int  # bits received from the process
    outcome: int  # bits fed back to the process

    @property
    def label(self) -> StateLabel:
        return StateLabel.from_bits(self.basis, self.outcome, self.n)

    def __str__(self) -> str:
        return (
            f"basis={word_to_bits(self.basis, self.n)} "
            f"outcome={word_to_bits(self.outcome, self.n)} label={self.label}"
        )


@dataclass(frozen=True)
class ChannelRun:
    n: int
    input_bits: int
    label: StateLabel
    output: int


def _require_orthonormal(omega: ProcessTable) -> None:
    if not is_orthonormal_exact(ensemble_from_process(omega)):
        raise NonOrthonormalError(
            "the ensemble of this process is not orthonormal, so the measurement "
            "weights do not form a distribution"
        )


def measurement_distribution(
    omega: ProcessTable, psi: StateVector, force: bool = False
) -> list[tuple[MeasurementRecord, float]]:
    """Born weights |<x|H^omega(x)|psi>|^2 of the protocol, one record per x.

    Each party receives its basis bit from the process, applies H if it is 1,
    measures, and feeds the outcome back; the consistent runs are exactly the
    pairs (omega(x), x). With force the raw weights are returned even when the
    ensemble is not orthonormal.
    """
    if omega.n != psi.n:
        raise InputError(f"process has {omega.n} parties but the state has {psi.n} qubits")
    if not force:
        _require_orthonormal(omega)

    # One Hadamard layer per distinct basis choice
    rotated: dict[int, StateVector] = {}
    result = []
    for x in range(1 << omega.n):
        basis = omega(x)
        if basis not in rotated:
            rotated[basis] = apply_hadamards(psi, basis)
        p = float(abs(rotated[basis].amps[x]) ** 2)
        result.append((MeasurementRecord(omega.n, basis, x), p))

    total = sum(p for _, p in result)
    if not force and abs(total - 1) > NORM_TOLERANCE:
        raise InputError(f"measurement weights sum to {total}; is the state normalized?")
    logger.debug(f"Measurement weights sum to {total}")
    return result


def _as_distribution(
    omega: ProcessTable, weights: list[tuple[MeasurementRecord, float]]
) -> OutcomeDistribution:
    # indexed by outcome x
    return OutcomeDistribution(omega.n, np.array([p for _, p in weights]))


def run_measurement(
    omega: ProcessTable, psi: StateVector, seed: Seed, force: bool = False
) -> MeasurementRecord:
    """One seeded protocol run.

    With force, a non-orthonormal ensemble is sampled from its raw weights
    rescaled to sum to one.
    """
    weights = measurement_distribution(omega, psi, force=force)
    x = sample(_as_distribution(omega, weights), seed)
    record = weights[x][0]
    assert record.basis == omega(record.outcome)
    return record


def discriminate(omega: ProcessTable, secret: int, seed: Seed) -> int:
    """Prepares state `secret` of S_omega, measures it, and names the state."""
    check_word(secret, omega.n)
    ensemble = ensemble_from_process(omega)
    record = run_measurement(omega, from_label(ensemble[secret]), seed)
    return _index_of(omega, record)


def _index_of(omega: ProcessTable, record: MeasurementRecord) -> int:
    # State x of S_omega has outcome x and basis omega(x)
    if omega(record.outcome) != record.basis:
        raise InputError(f"record {record} is inconsistent with the process")
    return record.outcome


@dataclass(frozen=True)
class DiscriminationTally:
    label: StateLabel
    trials: int
    successes: int

    def __str__(self) -> str:
        return f"state={self.label} trials={self.trials} success={self.successes}"


def _tally_state(omega: ProcessTable, secret: int, trials: int, seed: int) -> DiscriminationTally:
    ensemble = ensemble_from_process(omega)
    weights = measurement_distribution(omega, from_label(ensemble[secret]))
    distribution = _as_distribution(omega, weights)
    successes = 0
    for trial in range(trials):
        rng = generator(derive_seed(seed, secret, trial))
        record = weights[sample_with(distribution, rng)][0]
        if _index_of(omega, record) == secret:
            successes += 1
    return DiscriminationTally(ensemble[secret], trials, successes)


def discrimination_tally(
    omega: ProcessTable, trials: int, seed: int = 0, jobs: int = 1
) -> list[DiscriminationTally]:
    """Runs `trials` seeded discriminations for every state, in state order."""
    if trials < 0:
        raise InputError(f"trials must be non-negative, but got {trials}")
    _require_orthonormal(omega)
    secrets = range(1 << omega.n)
    logger.info(f"Discriminating {len(secrets)} states, {trials} trials each")
    if jobs <= 1:
        return [_tally_state(omega, s, trials, seed) for s in secrets]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(
            executor.map(
                _tally_state,
                [omega] * len(secrets),
                secrets,
                [trials] * len(secrets),
                [seed] * len(secrets),
            )
        )


# f: 0 -> 0, 1 -> 0, + -> 1, - -> 1, i.e. the basis bit of each label
def f_map(label: StateLabel) -> int:
    return label.basisbits


def channel_distribution(omega: ProcessTable, input_bits: int) -> OutcomeDistribution:
    """Prepares |input_bits>, measures it in S_omega, and applies f per party."""
    check_word(input_bits, omega.n)
    weights = measurement_distribution(omega, StateVector.basis_state(input_bits, omega.n))
    probs = np.zeros(1 << omega.n)
    for record, p in weights:
        probs[f_map(record.label)] += p
    return OutcomeDistribution(omega.n, probs)


def run_channel(omega: ProcessTable, input_bits: int, seed: Seed) -> ChannelRun:
    record = run_measurement(omega, StateVector.basis_state(input_bits, omega.n), seed)
    return ChannelRun(omega.n, input_bits, record.label, f_map(record.label))


@dataclass(frozen=True)
class FaithfulnessReport:
    faithful: bool
    distributions: list[OutcomeDistribution]
    violations: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.faithful


def channel_is_faithful(
    omega: ProcessTable, tolerance: float = NORM_TOLERANCE
) -> FaithfulnessReport:
    """True iff every input x lands on omega(x) with probability 1."""
    _require_orthonormal(omega)
    distributions = []
    violations = []
    for x in range(1 << omega.n):
        distribution = channel_distribution(omega, x)
        distributions.append(distribution)
        expected = np.zeros(1 << omega.n)
        expected[omega(x)] = 1
        if np.max(np.abs(distribution.probs - expected)) > tolerance:
            violations.append(x)
    if violations:
        logger.info(
            f"Channel differs from the process on {[word_to_bits(x, omega.n) for x in violations]}"
        )
    return FaithfulnessReport(not violations, distributions, violations)
