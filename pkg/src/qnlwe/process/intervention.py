import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from enum import IntEnum

import numpy as np
from numpy.typing import NDArray

from ..errors import InputError
from ..utils import check_word, party_mask


# All four functions {0,1} -> {0,1}, in the order used for lexicographic iteration.
class Func(IntEnum):
    CONST0 = 0
    CONST1 = 1
    ID = 2
    NOT = 3

    def __call__(self, b: int) -> int:
        match self:
            case Func.CONST0:
                return 0
            case Func.CONST1:
                return 1
            case Func.ID:
                return b
            case Func.NOT:
                return b ^ 1
            case _:
                assert False


@dataclass(frozen=True)
class Intervention:
    funcs: tuple[Func, ...]

    def __post_init__(self) -> None:
        if not self.funcs:
            raise InputError("an intervention needs at least one party")
        for f in self.funcs:
            if not isinstance(f, Func):
                raise InputError(f"{f!r} is not one of {[g.name for g in Func]}")

    @property
    def n(self) -> int:
        return len(self.funcs)

    # mu(p) = (p & pass_mask) ^ xor_mask, evaluated for all parties at once.
    @property
    def pass_mask(self) -> int:
        mask = 0
        for i, f in enumerate(self.funcs):
            if f in (Func.ID, Func.NOT):
                mask |= party_mask(i, self.n)
        return mask

    @property
    def xor_mask(self) -> int:
        mask = 0
        for i, f in enumerate(self.funcs):
            if f in (Func.CONST1, Func.NOT):
                mask |= party_mask(i, self.n)
        return mask

    @property
    def is_constant(self) -> bool:
        return self.pass_mask == 0

    def apply(self, p: int) -> int:
        check_word(p, self.n)
        return (p & self.pass_mask) ^ self.xor_mask

    def apply_all(self, words: NDArray[np.integer]) -> NDArray[np.integer]:
        return (words & self.pass_mask) ^ self.xor_mask

    def __str__(self) -> str:
        return ",".join(f.name for f in self.funcs)

    @classmethod
    def parse(cls, text: str) -> "Intervention":
        try:
            return cls(tuple(Func[name.strip().upper()] for name in text.split(",")))
        except KeyError as e:
            raise InputError(f"unknown intervention function {e}") from None

    @classmethod
    def identity(cls, n: int) -> "Intervention":
        return cls((Func.ID,) * n)


def apply_intervention(mu: Intervention, p: int) -> int:
    return mu.apply(p)


def all_interventions(n: int) -> Iterator[Intervention]:
    """All 4^n interventions; party 1 varies slowest."""
    for funcs in itertools.product(Func, repeat=n):
        yield Intervention(funcs)
