"""Exception types and diagnostic helpers shared across the compiler."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Span:
    """Half-open character range [start, end) into the source text."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError(f"backwards span: {self.start}..{self.end}")


class SourceError(Exception):
    """Base class for every user-visible compiler error.

    Carries an optional span so the CLI can point at the offending text.
    """

    severity = "error"

    def __init__(self, message: str, span: Span | None = None):
        super().__init__(message)
        self.message = message
        self.span = span


class UnterminatedString(SourceError):
    pass


class IllegalCharacter(SourceError):
    pass


class QuerySyntaxError(SourceError):
    """Parse failure; ``expected`` lists the token kinds/words that would
    have been accepted at the error position."""

    def __init__(self, message: str, span: Span | None = None, expected: tuple[str, ...] = ()):
        if expected:
            message = f"{message} (expected {', '.join(sorted(expected))})"
        super().__init__(message, span)
        self.expected = tuple(sorted(expected))


class UnknownOrdinal(SourceError):
    def __init__(self, word: str, span: Span | None = None):
        super().__init__(f"unknown ordinal adjective {word!r}", span)
        self.word = word


class EmptyList(SourceError):
    pass


class UnknownAttribute(SourceError):
    def __init__(self, word: str, known: tuple[str, ...] = ()):
        message = f"unknown attribute {word!r}"
        if known:
            message += f"; known attributes: {', '.join(sorted(known))}"
        super().__init__(message)
        self.word = word
        self.known = tuple(sorted(known))


class OrdinalNotAllowed(SourceError):
    def __init__(self, attribute: str):
        super().__init__(f"attribute {attribute!r} does not take an ordinal adjective")
        self.attribute = attribute


class MissingOrdinal(SourceError):
    def __init__(self, attribute: str):
        super().__init__(f"attribute {attribute!r} requires an ordinal adjective")
        self.attribute = attribute


class UndeclaredSubject(SourceError):
    def __init__(self, name: str):
        super().__init__(
            f"{name!r} is never introduced by an invocation statement or a type assumption"
        )
        self.name = name


class DuplicateDeclaration(SourceError):
    def __init__(self, name: str):
        super().__init__(f"conflicting declarations for {name!r}")
        self.name = name


class ConfigParseError(SourceError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateAttribute(SourceError):
    def __init__(self, word: str, line: int):
        super().__init__(f"line {line}: attribute {word!r} defined twice in one profile")
        self.word = word
        self.line = line


class BadTemplate(SourceError):
    def __init__(self, word: str, reason: str):
        super().__init__(f"bad template for attribute {word!r}: {reason}")
        self.word = word


class QlLexError(SourceError):
    pass


def line_column(text: str, offset: int) -> tuple[int, int]:
    """1-based (line, column) of a character offset into ``text``."""
    offset = max(0, min(offset, len(text)))
    line = text.count("\n", 0, offset) + 1
    last_nl = text.rfind("\n", 0, offset)
    return line, offset - last_nl


def format_diagnostic(path: str, text: str, err: SourceError) -> str:
    """Render ``path:line:col: severity: message`` for editor jump-to-error."""
    line, col = (1, 1)
    if err.span is not None:
        line, col = line_column(text, err.span.start)
    return f"{path}:{line}:{col}: {err.severity}: {err.message}"
