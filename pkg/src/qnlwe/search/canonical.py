"""Symmetry reduction of process tables.

The group acts by g.omega(x) = P(omega(P^-1(x) + s)) + t, with P a permutation
of the parties (applied to inputs and outputs together), s a flip of input
bits and t a flip of output bits. It maps classical processes to classical
processes and preserves the signaling pattern up to relabelling.
"""

import functools
import itertools
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..errors import InputError
from ..process.table import ProcessTable
from ..utils import bit, party_mask

MAX_CANONICAL_PARTIES = 5
MAX_BATCH_PARTIES = 3


@dataclass(frozen=True)
class GroupElement:
    perm: tuple[int, ...]  # party i moves to perm[i]
    input_flip: int
    output_flip: int

    @property
    def n(self) -> int:
        return len(self.perm)

    def permute(self, word: int) -> int:
        out = 0
        for i, j in enumerate(self.perm):
            out |= bit(word, i, self.n) * party_mask(j, self.n)
        return out

    def unpermute(self, word: int) -> int:
        out = 0
        for i, j in enumerate(self.perm):
            out |= bit(word, j, self.n) * party_mask(i, self.n)
        return out

    def input_map(self) -> list[int]:
        return [self.unpermute(x) ^ self.input_flip for x in range(1 << self.n)]

    def output_map(self) -> list[int]:
        return [self.permute(w) ^ self.output_flip for w in range(1 << self.n)]

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "GroupElement":
        return cls(
            tuple(int(i) for i in rng.permutation(n)),
            int(rng.integers(1 << n)),
            int(rng.integers(1 << n)),
        )


def transform(omega: ProcessTable, g: GroupElement) -> ProcessTable:
    if g.n != omega.n:
        raise InputError(f"group element acts on {g.n} parties, not {omega.n}")
    inputs, outputs = g.input_map(), g.output_map()
    return ProcessTable(omega.n, tuple(outputs[omega(inputs[x])] for x in range(1 << omega.n)))


def group_elements(n: int) -> list[GroupElement]:
    return [
        GroupElement(perm, s, t)
        for perm in itertools.permutations(range(n))
        for s in range(1 << n)
        for t in range(1 << n)
    ]


@functools.cache
def group_maps(n: int) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
    """Input and output maps of every group element, shape (n! 4^n, 2^n) each."""
    elements = group_elements(n)
    inputs = np.array([g.input_map() for g in elements], dtype=np.int64)
    outputs = np.array([g.output_map() for g in elements], dtype=np.int64)
    return inputs, outputs


def canonicalize(omega: ProcessTable) -> ProcessTable:
    """Lexicographically smallest table in the orbit of omega."""
    if omega.n > MAX_CANONICAL_PARTIES:
        raise InputError(
            f"canonical forms are limited to {MAX_CANONICAL_PARTIES} parties "
            f"(the group has n! 4^n elements), but got {omega.n}"
        )
    inputs, outputs = group_maps(omega.n)
    images = np.take_along_axis(outputs, omega.as_array()[inputs], axis=1)
    # lexsort treats the last key as primary
    first = np.lexsort(images.T[::-1])[0]
    return ProcessTable.from_array(omega.n, images[first])


def table_keys(tables: NDArray[np.integer], n: int) -> NDArray[np.int64]:
    """Packs each row into one integer whose order is the lexicographic order."""
    if n > MAX_BATCH_PARTIES:
        raise InputError(f"packed keys need n <= {MAX_BATCH_PARTIES}, but got {n}")
    size = 1 << n
    keys = np.zeros(len(tables), dtype=np.int64)
    for x in range(size):
        keys = (keys << n) | tables[:, x].astype(np.int64)
    return keys


def canonicalize_batch(tables: NDArray[np.integer], n: int) -> NDArray[np.integer]:
    """canonicalize applied to every row, vectorised over the rows."""
    if len(tables) == 0:
        return tables.copy()
    inputs, outputs = group_maps(n)
    best = tables.copy()
    best_keys = table_keys(best, n)
    for in_map, out_map in zip(inputs, outputs):
        images = out_map[tables[:, in_map]].astype(tables.dtype)
        keys = table_keys(images, n)
        better = keys < best_keys
        best[better] = images[better]
        best_keys = np.where(better, keys, best_keys)
    return best
