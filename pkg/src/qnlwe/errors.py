from pathlib import Path


class QnlweError(Exception):
    """Base class for every error raised by the library."""


class InputError(QnlweError):
    """Arguments out of range or an operation's precondition does not hold."""


class ParseError(InputError):
    """Malformed file content; renders as `[<path>: ][line <k>: ]<message>`."""

    def __init__(self, message: str, line: int | None = None, path: Path | None = None) -> None:
        self.detail = message
        self.line = line
        self.path = path
        if line is not None:
            message = f"line {line}: {message}"
        if path is not None:
            message = f"{path}: {message}"
        super().__init__(message)

    def with_path(self, path: Path) -> "ParseError":
        return ParseError(self.detail, self.line, path)


class NonOrthonormalError(QnlweError):
    """The ensemble induced by a process is not an orthonormal basis."""
