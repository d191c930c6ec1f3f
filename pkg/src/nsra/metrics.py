"""Halstead counts for controlled-English queries and generated CodeQL.

Counting conventions (fixed; reported numbers are only meaningful relative
to a convention, so both are spelled out here):

* Controlled-English queries are counted on the normalized token stream.
  Operands are user-defined terminals: identifiers plus string and integer
  literals (list items included).  Operators are the language's working
  vocabulary: statement keywords, attribute words, and ordinal adjectives.
  Pure glue carries no weight: ``of``, articles, possessive markers, list
  brackets and commas, and sentence periods are not counted.
* CodeQL text is counted on its token stream.  Operators are the clause
  keywords, called method names, comparison signs, and punctuation; operands
  are the remaining identifiers (variables and type names) and literals.

Keywords count case-insensitively; identifiers and literals are distinct
case-sensitively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lexer import TokenKind, normalize, tokenize
from .qlgen import _KEYWORDS as _QL_KEYWORDS
from .qlgen import lex_ql
from .registry import Registry, builtin_crypto_profile

STROUD_SECONDS = 18  # mental discriminations per second in the time formula


@dataclass(frozen=True)
class HalsteadCounts:
    distinct_operators: int
    distinct_operands: int
    total_operators: int
    total_operands: int

    def __post_init__(self) -> None:
        if min(
            self.distinct_operators,
            self.distinct_operands,
            self.total_operators,
            self.total_operands,
        ) < 0:
            raise ValueError("negative Halstead count")
        if self.total_operands > 0 and self.distinct_operands == 0:
            raise ValueError("operands counted but none distinct")

    @property
    def vocabulary(self) -> int:
        return self.distinct_operators + self.distinct_operands

    @property
    def length(self) -> int:
        return self.total_operators + self.total_operands

    @property
    def volume(self) -> float:
        if self.vocabulary == 0:
            return 0.0
        return self.length * math.log2(self.vocabulary)

    @property
    def difficulty(self) -> float:
        if self.distinct_operands == 0:
            return 0.0
        return (self.distinct_operators / 2) * (self.total_operands / self.distinct_operands)

    @property
    def effort(self) -> float:
        return self.difficulty * self.volume

    @property
    def time_seconds(self) -> float:
        return self.effort / STROUD_SECONDS


def _tally(keys: list[tuple[str, object]]) -> tuple[int, int]:
    return len(set(keys)), len(keys)


# Glue tokens that carry no Halstead weight in controlled-English counting.
_UNCOUNTED_WORDS = frozenset({"of"})
_UNCOUNTED_KINDS = frozenset(
    {TokenKind.LIST_OPEN, TokenKind.LIST_CLOSE, TokenKind.COMMA, TokenKind.PERIOD, TokenKind.POSSESSIVE}
)


def halstead_nsra(query_text: str, registry: Registry | None = None) -> HalsteadCounts:
    """Counts for a controlled-English query (see module docstring).

    The registry decides which identifier-looking words are attribute
    vocabulary (operators) rather than user terminals (operands).
    """
    registry = registry or builtin_crypto_profile()
    operators: list[tuple[str, object]] = []
    operands: list[tuple[str, object]] = []
    for tok in normalize(tokenize(query_text)):
        if tok.kind in _UNCOUNTED_KINDS:
            continue
        if tok.kind is TokenKind.STRING:
            operands.append(("str", tok.text))
        elif tok.kind is TokenKind.INT:
            operands.append(("int", int(tok.text)))
        elif tok.kind is TokenKind.ORDINAL:
            operators.append(("op", tok.lowered()))
        elif tok.kind is TokenKind.WORD:
            if tok.lowered() not in _UNCOUNTED_WORDS:
                operators.append(("op", tok.lowered()))
        elif tok.kind is TokenKind.IDENT:
            if tok.text in registry.rules:
                operators.append(("op", tok.lowered()))
            else:
                operands.append(("id", tok.text))
    n1, big_n1 = _tally(operators)
    n2, big_n2 = _tally(operands)
    return HalsteadCounts(n1, n2, big_n1, big_n2)


def halstead_ql(ql_text: str) -> HalsteadCounts:
    """Counts for CodeQL text (see module docstring for the convention)."""
    tokens = lex_ql(ql_text)
    operators: list[tuple[str, object]] = []
    operands: list[tuple[str, object]] = []
    for i, tok in enumerate(tokens):
        if tok.kind == "punct":
            operators.append(("op", tok.text))
        elif tok.kind == "string":
            operands.append(("str", tok.text))
        elif tok.kind == "int":
            operands.append(("int", int(tok.text)))
        elif tok.text in _QL_KEYWORDS:
            operators.append(("op", tok.text))
        else:
            nxt = tokens[i + 1] if i + 1 < len(tokens) else None
            if nxt is not None and nxt.kind == "punct" and nxt.text == "(":
                operators.append(("op", tok.text))  # called method name
            else:
                operands.append(("id", tok.text))
    n1, big_n1 = _tally(operators)
    n2, big_n2 = _tally(operands)
    return HalsteadCounts(n1, n2, big_n1, big_n2)


@dataclass(frozen=True)
class ComparisonRow:
    """One query's controlled-English counts against its CodeQL counts."""

    vocab_nsra: int
    vocab_ql: int
    length_nsra: int
    length_ql: int
    reduction_pct: float
    vocab_reduction_pct: float
    effort_ratio: float
    time_ratio: float

    def to_dict(self) -> dict[str, float | int]:
        return {
            "vocabulary_nsra": self.vocab_nsra,
            "vocabulary_ql": self.vocab_ql,
            "length_nsra": self.length_nsra,
            "length_ql": self.length_ql,
            "length_reduction_pct": self.reduction_pct,
            "vocabulary_reduction_pct": self.vocab_reduction_pct,
            "effort_ratio": self.effort_ratio,
            "time_ratio": self.time_ratio,
        }


def compare(nsra: HalsteadCounts, ql: HalsteadCounts) -> ComparisonRow:
    """Length/vocabulary reductions and effort/time ratios (QL over NSRA)."""
    if ql.length == 0:
        raise ZeroDivisionError("cannot compare against an empty query")
    if ql.vocabulary == 0:
        raise ZeroDivisionError("cannot compare against an empty vocabulary")
    effort_ratio = ql.effort / nsra.effort if nsra.effort else math.inf
    time_ratio = ql.time_seconds / nsra.time_seconds if nsra.time_seconds else math.inf
    return ComparisonRow(
        vocab_nsra=nsra.vocabulary,
        vocab_ql=ql.vocabulary,
        length_nsra=nsra.length,
        length_ql=ql.length,
        reduction_pct=100.0 * (1.0 - nsra.length / ql.length),
        vocab_reduction_pct=100.0 * (1.0 - nsra.vocabulary / ql.vocabulary),
        effort_ratio=effort_ratio,
        time_ratio=time_ratio,
    )


def format_row(row: ComparisonRow) -> str:
    lines = [
        f"{'':<12}{'vocabulary':>12}{'length':>10}",
        f"{'query':<12}{row.vocab_nsra:>12}{row.length_nsra:>10}",
        f"{'codeql':<12}{row.vocab_ql:>12}{row.length_ql:>10}",
        f"length reduction:     {row.reduction_pct:6.1f}%",
        f"vocabulary reduction: {row.vocab_reduction_pct:6.1f}%",
        f"effort ratio (ql/query): {row.effort_ratio:.1f}x",
        f"time ratio (ql/query):   {row.time_ratio:.1f}x",
    ]
    return "\n".join(lines)
