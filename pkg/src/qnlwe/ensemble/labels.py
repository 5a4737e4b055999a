from dataclasses import dataclass

from ..errors import InputError
from ..utils import bit, check_party_count, check_word

# (basis bit, x bit) for each symbol; the unicode minus is read as "-"
_SYMBOLS = {"0": (0, 0), "1": (0, 1), "+": (1, 0), "-": (1, 1)}
_CHARS = {v: k for k, v in _SYMBOLS.items()}


@dataclass(frozen=True)
class StateLabel:
    """A product state such as "+01", party 1 leftmost."""

    chars: str

    def __post_init__(self) -> None:
        if not self.chars:
            raise InputError("a state label needs at least one character")
        bad = [c for c in self.chars if c not in _SYMBOLS]
        if bad:
            raise InputError(f'"{self.chars}" contains symbols outside {{0,1,+,-}}: {bad}')

    @property
    def n(self) -> int:
        return len(self.chars)

    @property
    def xbits(self) -> int:
        word = 0
        for c in self.chars:
            word = (word << 1) | _SYMBOLS[c][1]
        return word

    @property
    def basisbits(self) -> int:
        word = 0
        for c in self.chars:
            word = (word << 1) | _SYMBOLS[c][0]
        return word

    def __str__(self) -> str:
        return self.chars

    @classmethod
    def parse(cls, text: str) -> "StateLabel":
        return cls(text.strip().replace("−", "-"))

    @classmethod
    def from_bits(cls, basis: int, x: int, n: int) -> "StateLabel":
        check_word(basis, n)
        check_word(x, n)
        return cls(
            "".join(_CHARS[(bit(basis, i, n), bit(x, i, n))] for i in range(n))
        )


@dataclass(frozen=True)
class Ensemble:
    n: int
    states: tuple[StateLabel, ...]

    def __post_init__(self) -> None:
        check_party_count(self.n)
        if len(self.states) != 1 << self.n:
            raise InputError(
                f"a {self.n}-party ensemble needs {1 << self.n} states, but got {len(self.states)}"
            )
        for s in self.states:
            if s.n != self.n:
                raise InputError(f'state "{s}" does not have {self.n} parties')

    def __len__(self) -> int:
        return len(self.states)

    def __getitem__(self, index: int) -> StateLabel:
        return self.states[index]

    def as_set(self) -> frozenset[StateLabel]:
        return frozenset(self.states)

    def sorted(self) -> "Ensemble":
        """Canonical order: lexicographic by x-bits, then by basis bits."""
        return type(self)(
            self.n, tuple(sorted(self.states, key=lambda s: (s.xbits, s.basisbits)))
        )

    def same_states(self, other: "Ensemble") -> bool:
        return self.n == other.n and sorted(s.chars for s in self.states) == sorted(
            s.chars for s in other.states
        )

    @classmethod
    def parse_labels(cls, labels: list[str]) -> "Ensemble":
        states = tuple(StateLabel.parse(label) for label in labels)
        if not states:
            raise InputError("an ensemble needs at least one state")
        return cls(states[0].n, states)

