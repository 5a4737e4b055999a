from pathlib import Path

import pytest

from src.qnlwe.errors import ParseError
from src.qnlwe.process import (
    ProcessTable,
    afbw,
    format_process,
    parse_process,
    read_process,
    write_process,
)

DATA_DIR = Path(__file__).parent.parent / "data"


class TestParseProcess:
    def test_afbw_file(self) -> None:
        assert read_process(DATA_DIR / "afbw.proc") == afbw()

    def test_format(self) -> None:
        text = format_process(ProcessTable(1, (1, 1)), ["command: test"])
        assert text == "# command: test\nprocess n=1\n0 1\n1 1\n"

    def test_written_file_reads_back(self, tmp_path: Path) -> None:
        path = tmp_path / "afbw.proc"
        write_process(afbw(), path, ["seed: 0"])
        assert read_process(path) == afbw()

    def test_comments_and_whitespace(self) -> None:
        text = "# leading comment\n\nprocess n=1   # header\n0 1  \n1 1\t\n# trailing\n"
        assert parse_process(text) == ProcessTable(1, (1, 1))

    def _parse_error(self, text: str) -> ParseError:
        try:
            parse_process(text)
        except ParseError as e:
            return e
        else:
            assert False, "expected a parse error"

    def test_missing_header(self) -> None:
        error = self._parse_error("# only a comment\n")
        assert error.line is None

    def test_wrong_header(self) -> None:
        error = self._parse_error("ensemble n=1\n0\n1\n")
        assert error.line == 1

    def test_party_count_out_of_range(self) -> None:
        error = self._parse_error("process n=17\n")
        assert error.line == 1

    def test_duplicate_row(self) -> None:
        error = self._parse_error("process n=1\n0 0\n0 1\n")
        assert error.line == 3
        assert "duplicate row 0" in str(error)

    def test_out_of_order_row(self) -> None:
        error = self._parse_error("process n=2\n00 00\n10 00\n01 00\n11 00\n")
        assert error.line == 3
        assert "out of order" in str(error)

    def test_malformed_bits(self) -> None:
        error = self._parse_error("process n=1\n0 2\n1 0\n")
        assert error.line == 2

    def test_wrong_width(self) -> None:
        error = self._parse_error("process n=2\n00 00\n01 0\n10 00\n11 00\n")
        assert error.line == 3

    def test_missing_field(self) -> None:
        error = self._parse_error("process n=1\n0\n1 0\n")
        assert error.line == 2

    def test_too_few_rows(self) -> None:
        error = self._parse_error("process n=2\n00 00\n01 00\n")
        assert error.line == 3
        assert "expected 4 rows, but got 2" in str(error)

    def test_message_carries_line(self) -> None:
        error = self._parse_error("process n=1\n0 0\n0 1\n")
        assert str(error).startswith("line 3: ")

    def test_read_names_the_file(self, tmp_path: Path) -> None:
        path = tmp_path / "broken.proc"
        path.write_text("process n=1\n0 0\n", encoding="utf-8")
        with pytest.raises(ParseError, match="broken.proc: line 2"):
            read_process(path)

    def test_read_keeps_the_line(self, tmp_path: Path) -> None:
        path = tmp_path / "broken.proc"
        path.write_text("process n=1\n0 0\n0 1\n", encoding="utf-8")
        with pytest.raises(ParseError) as info:
            read_process(path)
        assert info.value.line == 3
        assert info.value.path == path
        assert str(info.value) == f"{path}: line 3: duplicate row 0 (first seen on line 2)"
