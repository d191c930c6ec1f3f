from __future__ import annotations

import pytest

from nsra.ir import And, Chain, Count, Decl, Eq, Exists, Lit, Lt, Not, Var, free_variables
from nsra.patterns import lower_invocation, lower_ordering, lower_signature


def test_positive_invocation():
    lowering = lower_invocation("Cipher", "init", True)
    assert lowering.new_decls == (Decl("init", "MethodAccess"),)
    assert not lowering.exists_bound
    assert lowering.cond == And(
        (
            Eq(Chain(Var("init"), ("getMethod()", "getName()")), Lit("init")),
            Eq(Chain(Var("init"), ("getReceiverType()", "getName()")), Lit("Cipher")),
        )
    )


def test_negative_invocation():
    lowering = lower_invocation("Cipher", "init", False)
    assert lowering.new_decls == ()
    assert lowering.exists_bound
    assert isinstance(lowering.cond, Not)
    exists = lowering.cond.inner
    assert isinstance(exists, Exists)
    assert exists.decl == Decl("init", "MethodAccess")


def test_negative_invocation_no_free_variables():
    lowering = lower_invocation("Cipher", "init", False)
    assert free_variables(lowering.cond) == set()


def test_positive_invocation_getinstance():
    lowering = lower_invocation("Cipher", "getInstance", True)
    left = lowering.cond.items[0]
    assert left == Eq(
        Chain(Var("getInstance"), ("getMethod()", "getName()")), Lit("getInstance")
    )


def test_invocation_injective_on_inputs():
    seen = set()
    pairs = [("Cipher", "init"), ("Cipher", "getInstance"), ("Mac", "init")]
    for class_name, method in pairs:
        lowering = lower_invocation(class_name, method, True)
        key = (lowering.new_decls, lowering.cond)
        assert key not in seen
        seen.add(key)


def test_invocation_requires_names():
    with pytest.raises(ValueError):
        lower_invocation("", "init", True)


def test_ordering_conjunction():
    cond = lower_ordering("getInstance", "init")
    assert cond == And(
        (
            Eq(
                Chain(Var("getInstance"), ("getEnclosingCallable()",)),
                Chain(Var("init"), ("getEnclosingCallable()",)),
            ),
            Lt(
                Chain(Var("getInstance"), ("getLocation()", "getEndLine()")),
                Chain(Var("init"), ("getLocation()", "getEndLine()")),
            ),
        )
    )


def test_ordering_self_is_emitted_as_written():
    cond = lower_ordering("a", "a")
    line_cmp = cond.items[1]
    assert isinstance(line_cmp, Lt)
    assert line_cmp.left == line_cmp.right  # unsatisfiable, by design


def test_signature_two_types():
    cond = lower_signature("getInstance", ("int", "Certificate"), True)
    assert cond.items[0] == Eq(
        Count(Chain(Var("getInstance"), ("getAnArgument()",))), Lit(2)
    )
    assert cond.items[1] == Eq(
        Chain(Var("getInstance"), ("getArgument(0)", "getType()", "toString()")),
        Lit("int"),
    )
    assert cond.items[2] == Eq(
        Chain(Var("getInstance"), ("getArgument(1)", "getType()", "toString()")),
        Lit("Certificate"),
    )


def test_signature_three_types_third_slot():
    cond = lower_signature("getInstance", ("int", "Certificate", "SecureRandom"), True)
    assert cond.items[0].right == Lit(3)
    assert cond.items[3] == Eq(
        Chain(Var("getInstance"), ("getArgument(2)", "getType()", "toString()")),
        Lit("SecureRandom"),
    )


def test_signature_conjunct_count_is_n_plus_one():
    for n in range(1, 6):
        types = tuple(f"T{i}" for i in range(n))
        cond = lower_signature("m", types, True)
        assert len(cond.items) == n + 1


def test_signature_negative_wraps():
    cond = lower_signature("m", ("int",), False)
    assert isinstance(cond, Not)
    assert len(cond.inner.items) == 2


def test_signature_rejects_empty_list():
    with pytest.raises(ValueError):
        lower_signature("m", (), True)
