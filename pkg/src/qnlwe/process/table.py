from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..errors import InputError
from ..utils import bit, check_party_count, check_word, pack, word_to_bits


@dataclass(frozen=True)
class ProcessTable:
    """A Boolean function {0,1}^n -> {0,1}^n stored as table[x] = omega(x)."""

    n: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        check_party_count(self.n)
        if len(self.table) != 1 << self.n:
            raise InputError(
                f"a {self.n}-party table needs {1 << self.n} rows, but got {len(self.table)}"
            )
        for x, w in enumerate(self.table):
            if not 0 <= w < 1 << self.n:
                raise InputError(
                    f"row {word_to_bits(x, self.n)}: output {w} does not fit in {self.n} bits"
                )

    def __call__(self, x: int) -> int:
        check_word(x, self.n)
        return self.table[x]

    # i-th output bit omega_i(x), 0-based party index
    def component(self, i: int, x: int) -> int:
        return bit(self(x), i, self.n)

    def as_array(self) -> NDArray[np.uint16]:
        return np.array(self.table, dtype=np.uint16)

    def rows(self) -> list[tuple[str, str]]:
        return [
            (word_to_bits(x, self.n), word_to_bits(w, self.n))
            for x, w in enumerate(self.table)
        ]

    def __str__(self) -> str:
        return "\n".join(f"{x} {w}" for x, w in self.rows())

    @classmethod
    def from_function(cls, n: int, func: Callable[[list[int]], list[int]]) -> "ProcessTable":
        """Builds the table from a function on bit lists (party 1 first)."""
        check_party_count(n)
        table = []
        for x in range(1 << n):
            table.append(pack(func([bit(x, i, n) for i in range(n)])))
        return cls(n, tuple(table))

    @classmethod
    def from_array(cls, n: int, array: NDArray[np.integer]) -> "ProcessTable":
        return cls(n, tuple(int(w) for w in array))

    @classmethod
    def constant(cls, n: int, word: int = 0) -> "ProcessTable":
        check_word(word, n)
        return cls(n, (word,) * (1 << n))

    @classmethod
    def identity(cls, n: int) -> "ProcessTable":
        return cls(n, tuple(range(1 << n)))


def evaluate(omega: ProcessTable, x: int) -> int:
    return omega(x)


# a = (y+1)z, b = (z+1)x, c = (x+1)y
def afbw() -> ProcessTable:
    return ProcessTable.from_function(
        3,
        lambda v: [
            (v[1] ^ 1) & v[2],
            (v[2] ^ 1) & v[0],
            (v[0] ^ 1) & v[1],
        ],
    )
