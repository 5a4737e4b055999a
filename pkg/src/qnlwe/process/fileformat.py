import re
from pathlib import Path

from loguru import logger

from ..errors import InputError, ParseError
from ..utils import MAX_PARTIES, bits_to_word, content_lines, word_to_bits
from .table import ProcessTable

_HEADER = re.compile(r"process\s+n=(\d+)")


def parse_process(text: str) -> ProcessTable:
    """Parses the ".proc" format: a `process n=<N>` header, then 2^N rows
    `<xbits> <wbits>` in lexicographic x order.
    """
    lines = content_lines(text)
    first = next(lines, None)
    if first is None:
        raise _error("missing `process n=<N>` header", None)
    number, content = first
    match = _HEADER.fullmatch(content)
    if match is None:
        raise _error(f'expected `process n=<N>`, but got "{content}"', number)
    n = int(match.group(1))
    if not 1 <= n <= MAX_PARTIES:
        raise _error(f"party count must be in 1..{MAX_PARTIES}, but got {n}", number)

    table: list[int] = []
    seen: dict[int, int] = {}
    last = number
    for number, content in lines:
        last = number
        fields = content.split()
        if len(fields) != 2:
            raise _error(f'expected "<xbits> <wbits>", but got "{content}"', number)
        x, w = (_read_bits(f, n, number) for f in fields)
        if x in seen:
            raise _error(
                f"duplicate row {word_to_bits(x, n)} (first seen on line {seen[x]})",
                number,
            )
        seen[x] = number
        if x != len(table):
            raise _error(
                f"row {word_to_bits(x, n)} is out of order, expected "
                f"{word_to_bits(len(table), n) if len(table) < 1 << n else 'end of file'}",
                number,
            )
        table.append(w)

    if len(table) != 1 << n:
        raise _error(f"expected {1 << n} rows, but got {len(table)}", last)
    return ProcessTable(n, tuple(table))


def format_process(omega: ProcessTable, header: list[str] | None = None) -> str:
    lines = [f"# {h}" for h in header or []]
    lines.append(f"process n={omega.n}")
    lines.extend(f"{x} {w}" for x, w in omega.rows())
    return "\n".join(lines) + "\n"


def read_process(path: Path) -> ProcessTable:
    logger.info(f"Reading process table from {path}")
    try:
        return parse_process(path.read_text(encoding="utf-8"))
    except ParseError as e:
        raise e.with_path(path) from None


def write_process(omega: ProcessTable, path: Path, header: list[str] | None = None) -> None:
    path.write_text(format_process(omega, header), encoding="utf-8")


def _read_bits(field: str, n: int, line: int) -> int:
    if len(field) != n:
        raise _error(f'"{field}" must have {n} characters', line)
    try:
        return bits_to_word(field)
    except InputError as e:
        raise _error(str(e), line) from None


def _error(message: str, line: int | None) -> ParseError:
    error = ParseError(message, line)
    logger.debug(str(error))
    return error
