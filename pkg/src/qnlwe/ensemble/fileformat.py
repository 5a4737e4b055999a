import re
from pathlib import Path

from loguru import logger

from ..errors import InputError, ParseError
from ..utils import MAX_PARTIES, content_lines
from .labels import Ensemble, StateLabel

_HEADER = re.compile(r"ensemble\s+n=(\d+)")


def parse_ensemble(text: str) -> Ensemble:
    """Parses the ".ens" format: an `ensemble n=<N>` header, then 2^N labels."""
    lines = content_lines(text)
    first = next(lines, None)
    if first is None:
        raise _error("missing `ensemble n=<N>` header", None)
    number, content = first
    match = _HEADER.fullmatch(content)
    if match is None:
        raise _error(f'expected `ensemble n=<N>`, but got "{content}"', number)
    n = int(match.group(1))
    if not 1 <= n <= MAX_PARTIES:
        raise _error(f"party count must be in 1..{MAX_PARTIES}, but got {n}", number)

    states: list[StateLabel] = []
    last = number
    for number, content in lines:
        last = number
        try:
            label = StateLabel.parse(content)
        except InputError as e:
            raise _error(str(e), number) from None
        if label.n != n:
            raise _error(f'"{label}" must have {n} characters', number)
        if len(states) == 1 << n:
            raise _error(f"more than {1 << n} states", number)
        states.append(label)

    if len(states) != 1 << n:
        raise _error(f"expected {1 << n} states, but got {len(states)}", last)
    return Ensemble(n, tuple(states))


def format_ensemble(ensemble: Ensemble, header: list[str] | None = None) -> str:
    lines = [f"# {h}" for h in header or []]
    lines.append(f"ensemble n={ensemble.n}")
    lines.extend(s.chars for s in ensemble.states)
    return "\n".join(lines) + "\n"


def read_ensemble(path: Path) -> Ensemble:
    logger.info(f"Reading ensemble from {path}")
    try:
        return parse_ensemble(path.read_text(encoding="utf-8"))
    except ParseError as e:
        raise e.with_path(path) from None


def write_ensemble(ensemble: Ensemble, path: Path, header: list[str] | None = None) -> None:
    path.write_text(format_ensemble(ensemble, header), encoding="utf-8")


def _error(message: str, line: int | None) -> ParseError:
    error = ParseError(message, line)
    logger.debug(str(error))
    return error
