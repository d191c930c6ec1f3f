"""Tokenizer and paraphrase normalizer for the controlled-English query language.

``tokenize`` segments raw text into tokens whose concatenation (plus the
skipped whitespace) reconstructs the input.  ``normalize`` then rewrites the
token stream into the canonical surface form the parser understands:
contractions expanded, possessives turned into ``of`` phrases, and articles
dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto

from .errors import IllegalCharacter, Span, UnterminatedString


class TokenKind(Enum):
    WORD = auto()          # structural vocabulary (keywords, pattern words, articles)
    ORDINAL = auto()       # first .. tenth
    STRING = auto()        # quoted literal, quotes stripped, content verbatim
    INT = auto()           # decimal integer literal
    IDENT = auto()         # user identifier or attribute word
    LIST_OPEN = auto()     # [
    LIST_CLOSE = auto()    # ]
    COMMA = auto()         # ,
    PERIOD = auto()        # .
    POSSESSIVE = auto()    # 's


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: Span

    def lowered(self) -> str:
        return self.text.lower()


# Ordinal adjectives admitted by the grammar, in argument-position order.
ORDINALS = {
    "first": 1,
    "second": 2,
    "third": 3,
    "fourth": 4,
    "fifth": 5,
    "sixth": 6,
    "seventh": 7,
    "eighth": 8,
    "ninth": 9,
    "tenth": 10,
}

ARTICLES = frozenset({"a", "an", "the"})

# Closed vocabulary of structural words.  Anything alphabetic outside this set
# (and the ordinals) lexes as an identifier; attribute words such as
# "algorithm" are identifiers whose attribute role is positional.
STRUCTURE_WORDS = frozenset(
    {
        "object",
        "of",
        "invokes",
        "invoke",
        "does",
        "not",
        "is",
        "in",
        "it",
        "false",
        "necessary",
        "that",
        "if",
        "then",
        "and",
        "or",
        "precedes",
        "follows",
        "signature",
        "variable",
        "class",
        "method",
        "access",
    }
    | ARTICLES
)

# Words that can directly follow an article without making the article a
# determiner of a user noun phrase is not a thing we need to model; instead,
# an article is dropped only when the next word is not one of these
# statement-level keywords.  This keeps a bare identifier "a" (as in
# "a is b.") intact.
_ARTICLE_STOPPERS = frozenset(
    {"is", "invokes", "invoke", "does", "precedes", "follows", "and", "or", "then", "in"}
)

_QUOTE_PAIRS = {'"': '"', "“": "”", "”": "”"}

_WORDLIKE = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


def _classify(word: str) -> TokenKind:
    lower = word.lower()
    if lower in ORDINALS:
        return TokenKind.ORDINAL
    if lower in STRUCTURE_WORDS:
        return TokenKind.WORD
    return TokenKind.IDENT


def tokenize(text: str) -> list[Token]:
    """Segment query text into tokens.

    Quoted strings (straight or typographic quotes) become single STRING
    tokens holding their content verbatim; ``'s`` becomes a POSSESSIVE token;
    the contraction ``doesn't`` stays one WORD token for ``normalize`` to
    expand.
    """
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _QUOTE_PAIRS:
            closing = _QUOTE_PAIRS[ch]
            j = i + 1
            while j < n and text[j] not in (closing, '"', "”"):
                j += 1
            if j >= n:
                raise UnterminatedString("unterminated string literal", Span(i, n))
            tokens.append(Token(TokenKind.STRING, text[i + 1 : j], Span(i, j + 1)))
            i = j + 1
            continue
        if ch == "[":
            tokens.append(Token(TokenKind.LIST_OPEN, ch, Span(i, i + 1)))
            i += 1
            continue
        if ch == "]":
            tokens.append(Token(TokenKind.LIST_CLOSE, ch, Span(i, i + 1)))
            i += 1
            continue
        if ch == ",":
            tokens.append(Token(TokenKind.COMMA, ch, Span(i, i + 1)))
            i += 1
            continue
        if ch == ".":
            tokens.append(Token(TokenKind.PERIOD, ch, Span(i, i + 1)))
            i += 1
            continue
        if ch in ("'", "’"):
            # Only the possessive suffix reaches here; contractions are
            # consumed while lexing the preceding word.
            if i + 1 < n and text[i + 1] in ("s", "S") and (i + 2 >= n or text[i + 2] not in _WORDLIKE):
                tokens.append(Token(TokenKind.POSSESSIVE, text[i : i + 2], Span(i, i + 2)))
                i += 2
                continue
            raise IllegalCharacter(f"stray {ch!r}", Span(i, i + 1))
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token(TokenKind.INT, text[i:j], Span(i, j)))
            i = j
            continue
        if ch in _WORDLIKE:
            j = i
            while j < n and text[j] in _WORDLIKE:
                j += 1
            # Absorb an apostrophe that is part of a contraction (doesn't);
            # a trailing 's stays separate as the possessive marker.
            if (
                j < n
                and text[j] in ("'", "’")
                and j + 1 < n
                and text[j + 1] in _WORDLIKE
                and not (text[j + 1] in ("s", "S") and (j + 2 >= n or text[j + 2] not in _WORDLIKE))
            ):
                j += 2
                while j < n and text[j] in _WORDLIKE:
                    j += 1
                tokens.append(Token(TokenKind.WORD, text[i:j], Span(i, j)))
                i = j
                continue
            word = text[i:j]
            tokens.append(Token(_classify(word), word, Span(i, j)))
            i = j
            continue
        raise IllegalCharacter(f"illegal character {ch!r}", Span(i, i + 1))
    return tokens


def _word(template: Token, text: str, kind: TokenKind | None = None) -> Token:
    """Synthesize a token at the source position of ``template``."""
    return Token(kind or _classify(text), text, template.span)


def normalize(tokens: list[Token]) -> list[Token]:
    """Rewrite a token stream into canonical surface form.

    Three rewrites, applied in order:

    1. ``doesn't`` (and ``doesn`` + ``'t`` variants) expands to ``does not``.
    2. Possessives: ``X 's [ordinal] attr`` becomes ``[ordinal] attr of X``.
    3. Articles drop, unless the following token is a statement keyword, so
       a bare identifier spelled ``a`` survives (``a is b.``).

    Idempotent: normalizing canonical output returns it unchanged.  Spans of
    synthesized tokens point at the source token they replace.
    """
    out: list[Token] = []
    for tok in tokens:
        if tok.kind is TokenKind.WORD and tok.lowered() in ("doesn't", "doesn’t"):
            out.append(_word(tok, "does"))
            out.append(_word(tok, "not"))
        else:
            out.append(tok)

    out = _rewrite_possessives(out)

    result: list[Token] = []
    for idx, tok in enumerate(out):
        if tok.kind is TokenKind.WORD and tok.lowered() in ARTICLES:
            nxt = out[idx + 1] if idx + 1 < len(out) else None
            if nxt is not None and nxt.kind in (TokenKind.WORD, TokenKind.ORDINAL, TokenKind.IDENT):
                if nxt.lowered() not in _ARTICLE_STOPPERS:
                    continue
            # An article not determining a noun phrase is really an
            # identifier that happens to be spelled "a" (as in "a is b.").
            tok = Token(TokenKind.IDENT, tok.text, tok.span)
        result.append(tok)
    return result


def _rewrite_possessives(tokens: list[Token]) -> list[Token]:
    """Turn ``X 's [ordinal] attr`` into ``[ordinal] attr of X``.

    The possessor is the single token before ``'s``; chains like
    ``x's type's name`` resolve right-to-left by iterating to fixpoint.
    """
    while True:
        idx = next((i for i, t in enumerate(tokens) if t.kind is TokenKind.POSSESSIVE), None)
        if idx is None:
            return tokens
        if idx == 0 or tokens[idx - 1].kind not in (TokenKind.IDENT, TokenKind.WORD):
            raise IllegalCharacter("possessive marker without a possessor", tokens[idx].span)
        owner = tokens[idx - 1]
        phrase: list[Token] = []
        j = idx + 1
        if j < len(tokens) and tokens[j].kind is TokenKind.ORDINAL:
            phrase.append(tokens[j])
            j += 1
        if j < len(tokens) and tokens[j].kind in (TokenKind.IDENT, TokenKind.WORD):
            phrase.append(tokens[j])
            j += 1
        if not phrase or phrase[-1].kind not in (TokenKind.IDENT, TokenKind.WORD):
            raise IllegalCharacter("possessive marker without an attribute", tokens[idx].span)
        rewritten = phrase + [_word(tokens[idx], "of")] + [owner]
        tokens = tokens[: idx - 1] + rewritten + tokens[j:]


def ordinal_value(word: str) -> int | None:
    """1-based value of an ordinal adjective, or None if not one of the ten."""
    return ORDINALS.get(word.lower())
