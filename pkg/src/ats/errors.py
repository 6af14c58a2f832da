"""Error type shared across the toolkit.

Every failure mode raised by this package carries a stable machine-readable
``code`` (e.g. ``"MalformedRow"``, ``"LabelOutOfRange"``) so that callers --
the CLI, the HTTP server, and tests -- can branch on it without parsing
message text.
"""

from __future__ import annotations


class AtsError(Exception):
    """Toolkit error with a stable code and a human-readable message.

    Args:
        code: CamelCase identifier of the failure mode.
        message: Explanation intended for end users.
        line: 1-based line number for file-parsing errors, when known.
    """

    def __init__(self, code: str, message: str, *, line: int | None = None):
        self.code = code
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)

    @property
    def message(self) -> str:
        return str(self)

    def __repr__(self) -> str:  # pragma: no cover
        return f"AtsError({self.code!r}, {str(self)!r})"
