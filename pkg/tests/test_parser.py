from __future__ import annotations

import random

import pytest

from nsra.errors import EmptyList, QuerySyntaxError, UnknownOrdinal
from nsra.parser import parse_text
from nsra.syntax import (
    AndStmt,
    Basic,
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
    SignaturePattern,
    TypeAssumption,
    query_to_text,
)


def single(text: str):
    query = parse_text(text)
    assert len(query.statements) == 1
    return query.statements[0]


def test_invocation_pattern():
    assert single("An object of Cipher invokes init.") == InvocationPattern("Cipher", "init", True)


def test_negative_invocation_contraction():
    assert single("An object of Cipher doesn't invoke init.") == InvocationPattern(
        "Cipher", "init", False
    )


def test_negative_invocation_spelled_out():
    assert single("An object of Cipher does not invoke init.") == InvocationPattern(
        "Cipher", "init", False
    )


def test_ordering_precedes():
    assert single("getInstance precedes init.") == OrderingPattern(
        "getInstance", "init", "precedes"
    )


def test_ordering_follows_swaps():
    stmt = single("init follows getInstance.")
    assert stmt == OrderingPattern("getInstance", "init", "follows")
    assert (stmt.before, stmt.after) == ("getInstance", "init")


def test_type_assumption():
    assert single("var1 is a variable.") == Basic(Ident("var1"), TypeAssumption("variable"))


def test_method_access_assumption():
    assert single("m is a method access.") == Basic(Ident("m"), TypeAssumption("method access"))


def test_prefix_nesting_outermost_first():
    stmt = single('the type of the second argument of init is "PrivateKey".')
    assert stmt == Basic(
        Prefixed("type", None, Prefixed("argument", 2, Ident("init"))),
        Literal("PrivateKey"),
    )


def test_membership():
    stmt = single('arg1 is in ["RSA", "AES"].')
    assert stmt == Basic(Ident("arg1"), LiteralList((Literal("RSA"), Literal("AES"))))


def test_is_not_negates():
    stmt = single('init is not "x".')
    assert stmt == Basic(Ident("init"), Literal("x"), negated=True)


def test_reversed_equality_stored_symmetrically():
    forward = single('the algorithm of getInstance\'s first argument is "RSA".')
    reversed_ = single('"RSA" is the algorithm of getInstance\'s first argument.')
    assert forward == reversed_


def test_paraphrase_forms_identical():
    forms = [
        'the algorithm of getInstance\'s first argument is "RSA".',
        'the algorithm of the first argument of getInstance is "RSA".',
        '"RSA" is the algorithm of getInstance\'s first argument.',
    ]
    parsed = [single(f) for f in forms]
    assert parsed[0] == parsed[1] == parsed[2]


def test_it_is_false_that():
    stmt = single('It is false that a is "x".')
    assert stmt == NotStmt(Basic(Ident("a"), Literal("x")))


def test_if_then():
    stmt = single('If arg1 is "RSA" then arg2 is "AES".')
    assert stmt == IfStmt(
        Basic(Ident("arg1"), Literal("RSA")), Basic(Ident("arg2"), Literal("AES"))
    )


def test_comma_tolerated_before_then():
    with_comma = single('if a is "x", then b is "y".')
    without = single('if a is "x" then b is "y".')
    assert with_comma == without


def test_necessity():
    stmt = single('It is necessary that a is "x".')
    assert stmt == Necessity(Basic(Ident("a"), Literal("x")))


def test_necessity_cannot_nest():
    with pytest.raises(QuerySyntaxError):
        parse_text('It is necessary that it is necessary that a is "x".')


def test_and_binds_tighter_than_or():
    stmt = single('a is "1" and b is "2" or c is "3".')
    assert isinstance(stmt, OrStmt)
    assert isinstance(stmt.items[0], AndStmt)
    assert isinstance(stmt.items[1], Basic)


def test_false_that_binds_one_unit():
    stmt = single('It is false that a is "1" and b is "2".')
    assert isinstance(stmt, AndStmt)
    assert isinstance(stmt.items[0], NotStmt)


def test_false_that_captures_if_then():
    stmt = single('It is false that if a is "1" then b is "2" or it is false that c is "3".')
    assert isinstance(stmt, OrStmt)
    assert isinstance(stmt.items[0], NotStmt)
    assert isinstance(stmt.items[0].inner, IfStmt)
    assert isinstance(stmt.items[1], NotStmt)


def test_if_condition_takes_or_chain():
    stmt = single('if a is "1" or b is "2" then c is "3".')
    assert isinstance(stmt, IfStmt)
    assert isinstance(stmt.cond, OrStmt)


def test_then_branch_takes_and_chain():
    stmt = single('if a is "1" then b is "2" and c is "3".')
    assert isinstance(stmt, IfStmt)
    assert isinstance(stmt.then, AndStmt)


def test_signature_pattern():
    stmt = single('getInstance\'s signature is ["int", "Certificate"].')
    assert stmt == SignaturePattern("getInstance", ("int", "Certificate"), True)


def test_signature_negative_with_ellipsis():
    stmt = single(
        "getInstance's signature is not [\"int\"] and is not [\"int\", \"Key\"]."
    )
    assert stmt == AndStmt(
        (
            SignaturePattern("getInstance", ("int",), False),
            SignaturePattern("getInstance", ("int", "Key"), False),
        )
    )


def test_ellipsis_without_subject_rejected():
    with pytest.raises(QuerySyntaxError):
        parse_text('a is "1" and is not ["int"].')


def test_empty_list_rejected():
    with pytest.raises(EmptyList):
        parse_text("arg1 is in [].")


def test_unknown_ordinal_reported():
    with pytest.raises(UnknownOrdinal) as info:
        parse_text('the eleventh argument of init is "x".')
    assert info.value.word == "eleventh"


def test_ordinals_first_through_tenth_accepted():
    words = ["first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth"]
    for i, word in enumerate(words, start=1):
        stmt = single(f'the {word} argument of init is "x".')
        assert stmt.lhs == Prefixed("argument", i, Ident("init"))


def test_misspelled_keyword_is_error():
    with pytest.raises(QuerySyntaxError):
        parse_text("getInstance precede init.")


def test_missing_period_is_error():
    with pytest.raises(QuerySyntaxError):
        parse_text("An object of Cipher invokes init")


def test_error_spans_inside_input():
    text = "An object of Cipher invokes init"
    try:
        parse_text(text)
    except QuerySyntaxError as err:
        assert err.span is not None
        assert 0 <= err.span.start <= err.span.end <= len(text)
    else:  # pragma: no cover
        raise AssertionError("expected a syntax error")


def test_statement_order_preserved():
    query = parse_text("An object of Cipher invokes init. An object of Cipher invokes getInstance.")
    assert [s.method_name for s in query.statements] == ["init", "getInstance"]


def test_keywords_case_insensitive():
    upper = single('IT IS NECESSARY THAT a IS "x".')
    lower = single('it is necessary that a is "x".')
    assert upper == lower


def test_identifiers_case_sensitive():
    a = single('Init is "x".')
    b = single('init is "x".')
    assert a != b


# --- printer round trip ------------------------------------------------------


def _random_query(rng: random.Random) -> str:
    """Sample a random surface query from the grammar."""
    idents = ["init", "getInstance", "update", "doFinal"]
    attrs = ["algorithm", "mode", "name", "padding"]

    def exp() -> str:
        base = rng.choice(idents)
        text = base
        for _ in range(rng.randint(0, 2)):
            if rng.random() < 0.5:
                ordinal = rng.choice(["first", "second", "third"])
                text = f"{ordinal} argument of {text}"
            else:
                text = f"{rng.choice(attrs)} of {text}"
        return text

    def basic() -> str:
        if rng.random() < 0.3:
            items = ", ".join(f'"{rng.choice("ABC")}{i}"' for i in range(rng.randint(1, 3)))
            return f"{exp()} is in [{items}]"
        verb = "is not" if rng.random() < 0.3 else "is"
        return f'{exp()} {verb} "{rng.choice("XYZ")}"'

    def unit(depth: int) -> str:
        roll = rng.random()
        if depth > 1:
            return basic()
        if roll < 0.2:
            return f"it is false that {basic()}"
        if roll < 0.4:
            return f"if {basic()} then {basic()}"
        if roll < 0.5:
            return f"An object of Cipher invokes {rng.choice(idents)}"
        return basic()

    def statement() -> str:
        parts = [unit(0)]
        for _ in range(rng.randint(0, 2)):
            parts.append(rng.choice([" and ", " or "]) + unit(1))
        return "".join(parts)

    sentences = []
    for _ in range(rng.randint(1, 3)):
        body = statement()
        if rng.random() < 0.3:
            body = f"It is necessary that {body}"
        sentences.append(body + ".")
    return " ".join(sentences)


def test_print_parse_round_trip():
    rng = random.Random(20240817)
    for _ in range(300):
        text = _random_query(rng)
        first = parse_text(text)
        printed = query_to_text(first)
        second = parse_text(printed)
        assert second == first, f"round trip failed for {text!r} -> {printed!r}"


def test_round_trip_on_task_queries(golden_dir):
    for name in ("example_invoke", "task1", "task2", "task3"):
        text = (golden_dir / f"{name}.nsra").read_text(encoding="utf-8")
        first = parse_text(text)
        assert parse_text(query_to_text(first)) == first
