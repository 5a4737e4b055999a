import sys
from collections.abc import Iterator

from loguru import logger

from .errors import InputError

MAX_PARTIES = 16


def configure_logging(is_logging: bool = False) -> None:
    logger.remove()
    logger.add(sys.stdout, filter=lambda _: is_logging)

    # Errors still reach stderr when logging is disabled
    logger.add(sys.stderr, level="ERROR", filter=lambda _: not is_logging)


def check_party_count(n: int, limit: int = MAX_PARTIES) -> None:
    if not 1 <= n <= limit:
        raise InputError(f"party count must be in 1..{limit}, but got {n}")


def check_word(word: int, n: int) -> None:
    if not 0 <= word < (1 << n):
        raise InputError(f"{word} does not fit in {n} bits")


# Party i (0-based) is stored at bit n-1-i, so party 1 is the leftmost character.
def bit(word: int, i: int, n: int) -> int:
    return (word >> (n - 1 - i)) & 1


def party_mask(i: int, n: int) -> int:
    return 1 << (n - 1 - i)


def flip(word: int, i: int, n: int) -> int:
    return word ^ party_mask(i, n)


def word_to_bits(word: int, n: int) -> str:
    return format(word, f"0{n}b")


# e.g. "010" -> 0b010
def bits_to_word(bits: str) -> int:
    if not bits or any(c not in "01" for c in bits):
        raise InputError(f'"{bits}" is not a string over {{0,1}}')
    return int(bits, 2)


def pack(bits: list[int]) -> int:
    word = 0
    for b in bits:
        word = (word << 1) | (b & 1)
    return word


def unpack(word: int, n: int) -> list[int]:
    return [bit(word, i, n) for i in range(n)]


def content_lines(text: str) -> Iterator[tuple[int, str]]:
    """Yields (line number, content) with comments and surrounding blanks removed."""
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        if content.strip():
            yield number, content.strip()
