"""Dense n-qubit statevectors over product states and Hadamard layers.

Qubit i (0-based) is party i + 1 and the most significant bit of a basis index,
so amplitude index x matches the bit string of x.

Randomness comes from numpy's PCG64 generator seeded through
numpy.random.SeedSequence. A seed is either a 64-bit integer or a SeedSequence
from derive_seed; sample() draws one uniform double u from the generator and
returns the first index whose cumulative probability exceeds u.
"""

import functools
from dataclasses import dataclass
from math import sqrt

import numpy as np
from numpy.typing import NDArray

from .ensemble.labels import Ensemble, StateLabel
from .errors import InputError
from .utils import check_party_count, check_word, party_mask, unpack, word_to_bits

MAX_QUBITS = 12
NORM_TOLERANCE = 1e-9
# computational_distribution refuses states further off than this
INPUT_NORM_TOLERANCE = 1e-6

_SQRT2_INV = 1 / sqrt(2)
_H = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV

# Amplitudes of |0>, |1>, |+>, |-> indexed by [basis bit, x bit]
_SINGLE = np.array(
    [
        [[1.0, 0.0], [0.0, 1.0]],
        [[_SQRT2_INV, _SQRT2_INV], [_SQRT2_INV, -_SQRT2_INV]],
    ]
)

Seed = int | np.random.SeedSequence


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amps: NDArray[np.complex128]

    def __post_init__(self) -> None:
        check_party_count(self.n, MAX_QUBITS)
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if len(amps) != 1 << self.n:
            raise InputError(
                f"{self.n} qubits need {1 << self.n} amplitudes, but got {len(amps)}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tolerance: float = NORM_TOLERANCE) -> bool:
        return abs(self.norm - 1) <= tolerance

    @classmethod
    def basis_state(cls, x: int, n: int) -> "StateVector":
        check_word(x, n)
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[x] = 1
        return cls(n, amps)


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    n: int
    probs: NDArray[np.float64]

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=np.float64).reshape(-1)
        if len(probs) != 1 << self.n:
            raise InputError(
                f"{self.n}-bit outcomes need {1 << self.n} probabilities, but got {len(probs)}"
            )
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    @property
    def total(self) -> float:
        return float(np.sum(self.probs))

    def is_valid(self, tolerance: float = NORM_TOLERANCE) -> bool:
        return bool(np.all(self.probs >= 0)) and abs(self.total - 1) <= tolerance

    def support(self, tolerance: float = 0.0) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.probs > tolerance)]

    def lines(self) -> list[str]:
        return [
            f"{word_to_bits(x, self.n)} {p:.12f}" for x, p in enumerate(self.probs)
        ]

    def total_variation(self, other: "OutcomeDistribution") -> float:
        return float(np.sum(np.abs(self.probs - other.probs)) / 2)


def from_label(label: StateLabel) -> StateVector:
    amps = functools.reduce(
        np.kron,
        (
            _SINGLE[b, x]
            for b, x in zip(unpack(label.basisbits, label.n), unpack(label.xbits, label.n))
        ),
    )
    return StateVector(label.n, amps)


def apply_hadamards(psi: StateVector, mask: int) -> StateVector:
    """H on every qubit whose bit is set in mask."""
    check_word(mask, psi.n)
    n = psi.n
    amps = np.asarray(psi.amps).reshape([2] * n)
    for i in range(n):
        if mask & party_mask(i, n):
            amps = np.moveaxis(np.tensordot(_H, amps, axes=([1], [i])), 0, i)
    return StateVector(n, amps.reshape(-1))


def overlap(phi: StateVector, psi: StateVector) -> complex:
    """<phi|psi>"""
    if phi.n != psi.n:
        raise InputError(f"cannot overlap {phi.n} and {psi.n} qubits")
    return complex(np.vdot(phi.amps, psi.amps))


def computational_distribution(psi: StateVector) -> OutcomeDistribution:
    if not psi.is_normalized(INPUT_NORM_TOLERANCE):
        raise InputError(f"state has norm {psi.norm}, expected 1")
    return OutcomeDistribution(psi.n, np.abs(psi.amps) ** 2)


def derive_seed(seed: int, *keys: int) -> np.random.SeedSequence:
    """Independent stream for (seed, keys); used for per-trial seeding."""
    check_seed(seed)
    return np.random.SeedSequence(seed, spawn_key=keys)


def generator(seed: Seed) -> np.random.Generator:
    if isinstance(seed, int):
        check_seed(seed)
    return np.random.Generator(np.random.PCG64(seed))


def sample(distribution: OutcomeDistribution, seed: Seed) -> int:
    return sample_with(distribution, generator(seed))


def sample_with(distribution: OutcomeDistribution, rng: np.random.Generator) -> int:
    cdf = np.cumsum(distribution.probs)
    u = rng.random() * cdf[-1]
    index = int(np.searchsorted(cdf, u, side="right"))
    return min(index, len(cdf) - 1)


def gram_matrix(ensemble: Ensemble) -> NDArray[np.complex128]:
    vectors = np.array([from_label(s).amps for s in ensemble.states])
    return vectors.conj() @ vectors.T


def gram_deviation(ensemble: Ensemble) -> float:
    """Largest entry of |G - I|."""
    gram = gram_matrix(ensemble)
    return float(np.max(np.abs(gram - np.eye(len(gram)))))


def batch_gram_deviation(tables: NDArray[np.integer], n: int) -> NDArray[np.float64]:
    """Per row of tables, max |G - I| of the ensemble {H^table[x]|x>}.

    All amplitudes are real; a state's amplitude at index j is the product over
    qubits of the single-qubit amplitude of that qubit's bit of j.
    """
    size = 1 << n
    words = np.arange(size)
    amps = np.ones((len(tables), size, size))
    for i in range(n):
        shift = n - 1 - i
        basis = (tables >> shift) & 1
        word_bit = (words >> shift) & 1
        # [row, state x, index j]
        amps *= _SINGLE[basis[:, :, None], word_bit[None, :, None], word_bit[None, None, :]]
    gram = amps @ np.transpose(amps, (0, 2, 1))
    return np.max(np.abs(gram - np.eye(size)), axis=(1, 2))


def random_state(n: int, seed: Seed) -> StateVector:
    rng = generator(seed)
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, amps / np.linalg.norm(amps))


def random_product_state(n: int, seed: Seed) -> StateVector:
    rng = generator(seed)
    factors = []
    for _ in range(n):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        factors.append(v / np.linalg.norm(v))
    return StateVector(n, functools.reduce(np.kron, factors))


def check_seed(seed: int) -> None:
    """Seeds are 64-bit unsigned integers."""
    if not 0 <= seed < 1 << 64:
        raise InputError(f"seed must be a 64-bit unsigned integer, but got {seed}")
