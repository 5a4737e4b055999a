from .labels import Ensemble

SHIFT = ("000", "111", "+01", "-01", "1+0", "1-0", "01+", "01-")

# Four-party ensemble built from a process modelled on a nonlocal game
# fmt: off
GAME = (
    "0000", "0+01", "+01+", "001-",
    "01+0", "+-01", "01-0", "0111",
    "1+0+", "1++-", "-01+", "1+--",
    "1-00", "--01", "111+", "1-1-",
)

# Four-party cyclic generalisation of the AF/BW process
CYCLIC = (
    "0000", "0101", "0111", "1010",
    "1011", "1101", "1110", "1111",
    "001+", "001-", "01+0", "01-0",
    "1+00", "1-00", "+001", "-001",
)
# fmt: on


def shift() -> Ensemble:
    return Ensemble.parse_labels(list(SHIFT))


def game_ensemble() -> Ensemble:
    return Ensemble.parse_labels(list(GAME))


def cyclic_ensemble() -> Ensemble:
    return Ensemble.parse_labels(list(CYCLIC))
