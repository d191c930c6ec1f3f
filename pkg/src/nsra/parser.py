"""Recursive-descent parser: normalized token stream -> QueryAst.

Precedence, tightest first: basic/pattern units, ``it is false that`` (binds
one unit), ``and``, ``or``.  ``if .. then ..`` takes a full or-chain as its
condition and an and-chain as its consequence, which is how the worked
queries group.  Necessity statements are admitted only at sentence level.
"""

from __future__ import annotations

from .errors import EmptyList, QuerySyntaxError, Span, UnknownOrdinal
from .lexer import Token, TokenKind, normalize, ordinal_value, tokenize
from .syntax import (
    AndStmt,
    Basic,
    Exp,
    Ident,
    IfStmt,
    InvocationPattern,
    Literal,
    LiteralList,
    Necessity,
    NotStmt,
    OrderingPattern,
    OrStmt,
    Prefixed,
    QueryAst,
    SignaturePattern,
    Statement,
    TypeAssumption,
)

_TYPE_NOUNS = {("variable",): "variable", ("class",): "class", ("method", "access"): "method access"}


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Token | None:
        idx = self.pos + offset
        return self.tokens[idx] if idx < len(self.tokens) else None

    def at_word(self, *words: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.kind in (TokenKind.WORD, TokenKind.IDENT) and tok.lowered() in words

    def at_kind(self, kind: TokenKind, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.kind is kind

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise QuerySyntaxError("unexpected end of query", self._end_span())
        self.pos += 1
        return tok

    def expect_word(self, *words: str) -> Token:
        if not self.at_word(*words):
            raise self.error(*words)
        return self.take()

    def expect_kind(self, kind: TokenKind, what: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind is not kind:
            raise self.error(what)
        return self.take()

    def error(self, *expected: str) -> QuerySyntaxError:
        tok = self.peek()
        if tok is None:
            return QuerySyntaxError("unexpected end of query", self._end_span(), expected)
        return QuerySyntaxError(f"unexpected {tok.text!r}", tok.span, expected)

    def _end_span(self) -> Span:
        if self.tokens:
            last = self.tokens[-1].span
            return Span(last.end, last.end)
        return Span(0, 0)


def parse_text(text: str) -> QueryAst:
    """Tokenize, normalize, and parse query text."""
    return parse_query(normalize(tokenize(text)))


def parse_query(tokens: list[Token]) -> QueryAst:
    """Parse a normalized token stream into a QueryAst.

    Sentences are period-delimited; every sentence must be a complete
    statement.
    """
    cur = _Cursor(tokens)
    statements: list[Statement] = []
    while cur.peek() is not None:
        statements.append(_sentence(cur))
    if not statements:
        raise QuerySyntaxError("empty query", Span(0, 0))
    return QueryAst(tuple(statements))


def _sentence(cur: _Cursor) -> Statement:
    if _at_phrase(cur, "it", "is", "necessary", "that"):
        for _ in range(4):
            cur.take()
        inner = _or_chain(cur)
        stmt: Statement = Necessity(inner)
    else:
        stmt = _or_chain(cur)
    cur.expect_kind(TokenKind.PERIOD, "'.'")
    return stmt


def _at_phrase(cur: _Cursor, *words: str) -> bool:
    return all(cur.at_word(w, offset=i) for i, w in enumerate(words))


def _or_chain(cur: _Cursor) -> Statement:
    items = [_and_chain(cur)]
    while cur.at_word("or"):
        cur.take()
        items.append(_and_chain(cur))
    if len(items) == 1:
        return items[0]
    return OrStmt(tuple(items))


def _and_chain(cur: _Cursor) -> Statement:
    items = [_unit(cur, previous=None)]
    while cur.at_word("and"):
        cur.take()
        items.append(_unit(cur, previous=items[-1]))
    if len(items) == 1:
        return items[0]
    return AndStmt(tuple(items))


def _unit(cur: _Cursor, previous: Statement | None) -> Statement:
    """One connective-free statement.

    ``it is false that`` binds the unit that follows (an if-statement counts
    as one unit); ``it is necessary that`` is rejected here so necessity
    never nests.
    """
    if _at_phrase(cur, "it", "is", "necessary", "that"):
        tok = cur.peek()
        assert tok is not None
        raise QuerySyntaxError(
            "a necessity statement must stand on its own sentence", tok.span
        )
    if _at_phrase(cur, "it", "is", "false", "that"):
        for _ in range(4):
            cur.take()
        return NotStmt(_unit(cur, previous=None))
    if cur.at_word("if"):
        cur.take()
        cond = _or_chain(cur)
        if cur.at_kind(TokenKind.COMMA):  # tolerated before "then"
            cur.take()
        cur.expect_word("then")
        then = _and_chain(cur)
        return IfStmt(cond, then)
    return _simple(cur, previous)


def _simple(cur: _Cursor, previous: Statement | None) -> Statement:
    if cur.at_word("object"):
        return _invocation(cur)
    if cur.at_word("signature"):
        return _signature(cur)
    if cur.at_word("is"):
        return _elliptical_signature(cur, previous)
    if cur.at_kind(TokenKind.IDENT) and cur.at_word("precedes", "follows", offset=1):
        return _ordering(cur)
    return _basic(cur)


def _invocation(cur: _Cursor) -> Statement:
    cur.expect_word("object")
    cur.expect_word("of")
    class_name = cur.expect_kind(TokenKind.IDENT, "class name").text
    if cur.at_word("invokes"):
        cur.take()
        positive = True
    else:
        cur.expect_word("does")
        cur.expect_word("not")
        cur.expect_word("invoke")
        positive = False
    method = cur.expect_kind(TokenKind.IDENT, "method name").text
    return InvocationPattern(class_name, method, positive)


def _ordering(cur: _Cursor) -> Statement:
    left = cur.take().text
    verb = cur.take().lowered()
    right = cur.expect_kind(TokenKind.IDENT, "method name").text
    if verb == "follows":
        return OrderingPattern(before=right, after=left, direction="follows")
    return OrderingPattern(before=left, after=right, direction="precedes")


def _signature(cur: _Cursor) -> Statement:
    cur.expect_word("signature")
    cur.expect_word("of")
    method = cur.expect_kind(TokenKind.IDENT, "method name").text
    cur.expect_word("is")
    positive = True
    if cur.at_word("not"):
        cur.take()
        positive = False
    items = _literal_list(cur)
    return SignaturePattern(method, tuple(_as_type_name(i, cur) for i in items), positive)


def _elliptical_signature(cur: _Cursor, previous: Statement | None) -> Statement:
    """``... and is not ["int", "Key"]`` re-uses the prior signature subject."""
    if not isinstance(previous, SignaturePattern):
        raise cur.error("a statement subject")
    cur.expect_word("is")
    positive = True
    if cur.at_word("not"):
        cur.take()
        positive = False
    items = _literal_list(cur)
    return SignaturePattern(
        previous.method_name, tuple(_as_type_name(i, cur) for i in items), positive
    )


def _as_type_name(lit: Literal, cur: _Cursor) -> str:
    if not isinstance(lit.value, str):
        raise QuerySyntaxError("signature lists hold type names as strings", cur._end_span())
    return lit.value


def _basic(cur: _Cursor) -> Statement:
    lhs = _exp(cur)
    cur.expect_word("is")
    negated = False
    if cur.at_word("not"):
        cur.take()
        negated = True
    if cur.at_word("in"):
        cur.take()
        items = _literal_list(cur)
        return Basic(_require_non_literal(lhs, cur), LiteralList(items), negated)
    noun = _type_noun(cur)
    if noun is not None:
        if negated:
            raise QuerySyntaxError("type assumptions cannot be negated", cur._end_span())
        return Basic(_require_non_literal(lhs, cur), TypeAssumption(noun))
    rhs = _exp(cur)
    # Symmetric equality: "RSA" is the algorithm of .. stores the expression
    # on the left and the literal on the right.
    if isinstance(lhs, Literal) and not isinstance(rhs, Literal):
        lhs, rhs = rhs, lhs
    return Basic(lhs, rhs, negated)


def _require_non_literal(lhs: Exp, cur: _Cursor) -> Exp:
    if isinstance(lhs, Literal):
        raise QuerySyntaxError("a literal cannot be the subject here", cur._end_span())
    return lhs


def _type_noun(cur: _Cursor) -> str | None:
    for words, noun in _TYPE_NOUNS.items():
        if _at_phrase(cur, *words):
            after = cur.peek(len(words))
            # "method access" must not swallow an attribute use of "method".
            if after is None or after.kind in (TokenKind.PERIOD, TokenKind.COMMA) or (
                after.kind is TokenKind.WORD and after.lowered() in ("and", "or", "then")
            ):
                for _ in words:
                    cur.take()
                return noun
    return None


def _literal_list(cur: _Cursor) -> tuple[Literal, ...]:
    open_tok = cur.expect_kind(TokenKind.LIST_OPEN, "'['")
    items: list[Literal] = []
    if cur.at_kind(TokenKind.LIST_CLOSE):
        close = cur.take()
        raise EmptyList("empty list", Span(open_tok.span.start, close.span.end))
    while True:
        items.append(_literal(cur))
        if cur.at_kind(TokenKind.COMMA):
            cur.take()
            continue
        cur.expect_kind(TokenKind.LIST_CLOSE, "']'")
        return tuple(items)


def _literal(cur: _Cursor) -> Literal:
    tok = cur.peek()
    if tok is None:
        raise cur.error("a literal")
    if tok.kind is TokenKind.STRING:
        cur.take()
        return Literal(tok.text)
    if tok.kind is TokenKind.INT:
        cur.take()
        return Literal(int(tok.text))
    raise cur.error("a string or integer literal")


def _exp(cur: _Cursor) -> Exp:
    tok = cur.peek()
    if tok is None:
        raise cur.error("an expression")
    if tok.kind in (TokenKind.STRING, TokenKind.INT):
        return _literal(cur)
    if tok.kind is TokenKind.ORDINAL:
        cur.take()
        value = ordinal_value(tok.text)
        assert value is not None
        attr = cur.peek()
        if attr is None or attr.kind not in (TokenKind.IDENT, TokenKind.WORD):
            raise cur.error("attribute word")
        cur.take()
        cur.expect_word("of")
        return Prefixed(attr.lowered(), value, _exp(cur))
    if tok.kind in (TokenKind.IDENT, TokenKind.WORD):
        # Adjective position: word before "attribute of" must be an ordinal.
        nxt = cur.peek(1)
        if (
            nxt is not None
            and nxt.kind in (TokenKind.IDENT, TokenKind.WORD)
            and cur.at_word("of", offset=2)
            and nxt.lowered() != "of"
        ):
            raise UnknownOrdinal(tok.text, tok.span)
        if cur.at_word("of", offset=1):
            cur.take()
            cur.take()  # of
            return Prefixed(tok.lowered(), None, _exp(cur))
        if tok.kind is TokenKind.IDENT:
            cur.take()
            return Ident(tok.text)
    raise cur.error("an expression")
