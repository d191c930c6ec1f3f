"""Property tests for the logical transformations, checked against
brute-force truth tables."""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from nsra.ir import (
    And,
    BoolExpr,
    Eq,
    Lit,
    Not,
    Or,
    Var,
    assignments,
    atoms,
    evaluate,
    simplify,
)
from nsra.lowering import apply_necessity, desugar_implication, expand_membership

_ATOMS = [Eq(Var(f"a{i}"), Lit(i)) for i in range(10)]


def _trees(max_atoms: int = 10) -> st.SearchStrategy[BoolExpr]:
    leaves = st.sampled_from(_ATOMS[:max_atoms])
    return st.recursive(
        leaves,
        lambda children: st.one_of(
            st.lists(children, min_size=2, max_size=3).map(tuple).map(And),
            st.lists(children, min_size=2, max_size=3).map(tuple).map(Or),
            children.map(Not),
        ),
        max_leaves=10,
    )


@given(_trees(), _trees())
@settings(max_examples=200, deadline=None)
def test_implication_matches_truth_table(p, q):
    cond = desugar_implication(p, q)
    shared = atoms(And((p, q)))
    for env in assignments(shared):
        implies = (not evaluate(p, env)) or evaluate(q, env)
        assert evaluate(cond, env) == implies


@given(st.lists(_trees(max_atoms=5), min_size=1, max_size=4))
@settings(max_examples=200, deadline=None)
def test_necessity_violation_semantics(constraints):
    cond = apply_necessity(constraints)
    shared = atoms(And(tuple(constraints))) or [_ATOMS[0]]
    for env in assignments(shared):
        some_violated = any(not evaluate(c, env) for c in constraints)
        assert evaluate(cond, env) == some_violated


@given(st.lists(st.sampled_from(["RSA", "AES", "", "ECB", "42"]), min_size=1, max_size=5))
@settings(max_examples=200, deadline=None)
def test_membership_matches_any_of(items):
    lhs = Var("arg1")
    lits = [Lit(i) for i in items]
    cond = expand_membership(lhs, lits)
    # Oracle: for every choice of which equalities hold, the disjunction is
    # true iff at least one item matched.
    for env in assignments(atoms(cond)):
        assert evaluate(cond, env) == any(env[a] for a in atoms(cond))


@given(_trees())
@settings(max_examples=300, deadline=None)
def test_simplify_preserves_truth_table(tree):
    simplified = simplify(tree)
    for env in assignments(atoms(tree)):
        assert evaluate(simplified, env) == evaluate(tree, env)


@given(_trees())
@settings(max_examples=200, deadline=None)
def test_simplify_idempotent(tree):
    once = simplify(tree)
    assert simplify(once) == once


@given(_trees())
@settings(max_examples=200, deadline=None)
def test_simplify_removes_double_negation(tree):
    assert simplify(Not(Not(tree))) == simplify(tree)


@given(_trees())
@settings(max_examples=200, deadline=None)
def test_simplified_connectives_have_two_plus_children(tree):
    def check(node: BoolExpr) -> None:
        if isinstance(node, (And, Or)):
            assert len(node.items) >= 2
            for item in node.items:
                assert not isinstance(item, type(node))  # flattened
                check(item)
        elif isinstance(node, Not):
            assert not isinstance(node.inner, Not)
            check(node.inner)

    check(simplify(tree))
