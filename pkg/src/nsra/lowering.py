"""Lowering from the parse tree to QueryIR.

Declarations come from positive invocation patterns and type assumptions in
first-mention order; everything else becomes the where-condition, with
necessity statements contributing the disjunction of their negations at the
end.  The select list is every declared variable, in declaration order.
"""

from __future__ import annotations

from . import syntax as ast
from .errors import (
    DuplicateDeclaration,
    MissingOrdinal,
    OrdinalNotAllowed,
    UndeclaredSubject,
)
from .ir import (
    And,
    BoolExpr,
    Chain,
    Decl,
    Eq,
    Lit,
    Not,
    Or,
    QlExpr,
    QueryIR,
    TRUE,
    TrueExpr,
    Var,
    conjoin,
    disjoin,
    simplify,
)
from .patterns import METHOD_ACCESS, lower_invocation, lower_ordering, lower_signature
from .registry import Registry, lookup_attribute


def desugar_implication(p: BoolExpr, q: BoolExpr) -> BoolExpr:
    """``if p then q`` as a plain condition: not p, or q."""
    return Or((Not(p), q))


def apply_necessity(constraints: list[BoolExpr]) -> BoolExpr:
    """A query flags violations: some mandatory constraint must be false."""
    if not constraints:
        raise ValueError("no necessity constraints")
    if len(constraints) == 1:
        return Not(constraints[0])
    return Or(tuple(Not(c) for c in constraints))


def expand_membership(lhs: QlExpr, items: list[Lit]) -> BoolExpr:
    """Membership in a list is the disjunction of the equalities."""
    if not items:
        raise ValueError("empty membership list")
    return disjoin([Eq(lhs, item) for item in items])


def resolve_exp(
    e: ast.Exp,
    reg: Registry,
    comparison_is_string: bool = False,
    declared: frozenset[str] | None = None,
) -> QlExpr:
    """Resolve an expression to a value chain.

    The innermost identifier becomes a variable reference, each prefix layer
    appends its rule's calls (ordinals fill the slot zero-based), and an
    object-valued result gains a trailing ``toString()`` when it is about to
    be compared with a string.
    """
    resolved = _resolve_inner(e, reg, declared)
    if comparison_is_string and isinstance(e, ast.Prefixed):
        rule = lookup_attribute(e.attribute, reg)
        if rule.result_kind == "object" and isinstance(resolved, Chain):
            resolved = resolved.extended(("toString()",))
    return resolved


def _resolve_inner(e: ast.Exp, reg: Registry, declared: frozenset[str] | None) -> QlExpr:
    if isinstance(e, ast.Literal):
        return Lit(e.value)
    if isinstance(e, ast.Ident):
        if declared is not None and e.name not in declared:
            raise UndeclaredSubject(e.name)
        return Var(e.name)
    rule = lookup_attribute(e.attribute, reg)
    if e.ordinal is not None and not rule.has_ordinal_slot:
        raise OrdinalNotAllowed(e.attribute)
    if e.ordinal is None and rule.has_ordinal_slot:
        raise MissingOrdinal(e.attribute)
    ordinal_index = None if e.ordinal is None else e.ordinal - 1
    steps = rule.render_steps(ordinal_index)
    inner = _resolve_inner(e.inner, reg, declared)
    if isinstance(inner, Chain):
        return inner.extended(steps)
    return Chain(inner, steps)


def _outermost_attribute(e: ast.Exp) -> str | None:
    return e.attribute if isinstance(e, ast.Prefixed) else None


def lower(query: ast.QueryAst, reg: Registry) -> QueryIR:
    """Lower a parsed query to IR; deterministic for a given input."""
    decls = _collect_decls(query, reg)
    declared = frozenset(d.var_name for d in decls)

    plain: list[BoolExpr] = []
    necessity: list[BoolExpr] = []
    for stmt in query.statements:
        if isinstance(stmt, ast.Necessity):
            necessity.append(_lower_statement(stmt.inner, reg, declared))
        else:
            cond = _lower_statement(stmt, reg, declared)
            if not isinstance(cond, TrueExpr):
                plain.append(cond)
    if necessity:
        plain.append(apply_necessity(necessity))

    condition = simplify(conjoin(plain))
    return QueryIR(tuple(decls), condition, tuple(d.var_name for d in decls))


def _collect_decls(query: ast.QueryAst, reg: Registry) -> list[Decl]:
    """First-mention-order declarations from positive invocations and type
    assumptions anywhere in the query."""
    decls: dict[str, Decl] = {}
    invocation_class: dict[str, str] = {}

    def add(decl: Decl) -> None:
        existing = decls.get(decl.var_name)
        if existing is None:
            decls[decl.var_name] = decl
        elif existing != decl:
            raise DuplicateDeclaration(decl.var_name)

    def walk(stmt: ast.Statement) -> None:
        if isinstance(stmt, ast.InvocationPattern):
            if stmt.positive:
                # Re-invoking the same method from the same class merges;
                # the same method name under two classes is a conflict.
                known = invocation_class.get(stmt.method_name)
                if known is not None and known != stmt.class_name:
                    raise DuplicateDeclaration(stmt.method_name)
                invocation_class[stmt.method_name] = stmt.class_name
                add(Decl(stmt.method_name, METHOD_ACCESS))
        elif isinstance(stmt, ast.Basic) and isinstance(stmt.rhs, ast.TypeAssumption):
            if not isinstance(stmt.lhs, ast.Ident):
                raise UndeclaredSubject(ast.exp_to_text(stmt.lhs))
            ql_type = reg.ql_type_names.get(stmt.rhs.noun, stmt.rhs.noun)
            add(Decl(stmt.lhs.name, ql_type))
        elif isinstance(stmt, (ast.AndStmt, ast.OrStmt)):
            for item in stmt.items:
                walk(item)
        elif isinstance(stmt, ast.NotStmt):
            walk(stmt.inner)
        elif isinstance(stmt, ast.IfStmt):
            walk(stmt.cond)
            walk(stmt.then)
        elif isinstance(stmt, ast.Necessity):
            walk(stmt.inner)

    for stmt in query.statements:
        walk(stmt)
    return list(decls.values())


def _lower_statement(stmt: ast.Statement, reg: Registry, declared: frozenset[str]) -> BoolExpr:
    if isinstance(stmt, ast.Basic):
        return _lower_basic(stmt, reg, declared)
    if isinstance(stmt, ast.AndStmt):
        return And(tuple(_lower_statement(i, reg, declared) for i in stmt.items))
    if isinstance(stmt, ast.OrStmt):
        return Or(tuple(_lower_statement(i, reg, declared) for i in stmt.items))
    if isinstance(stmt, ast.NotStmt):
        return Not(_lower_statement(stmt.inner, reg, declared))
    if isinstance(stmt, ast.IfStmt):
        return desugar_implication(
            _lower_statement(stmt.cond, reg, declared),
            _lower_statement(stmt.then, reg, declared),
        )
    if isinstance(stmt, ast.Necessity):
        raise ValueError("necessity statements cannot nest inside other statements")
    if isinstance(stmt, ast.InvocationPattern):
        return lower_invocation(stmt.class_name, stmt.method_name, stmt.positive).cond
    if isinstance(stmt, ast.OrderingPattern):
        for name in (stmt.before, stmt.after):
            if name not in declared:
                raise UndeclaredSubject(name)
        return lower_ordering(stmt.before, stmt.after)
    if isinstance(stmt, ast.SignaturePattern):
        if stmt.method_name not in declared:
            raise UndeclaredSubject(stmt.method_name)
        return lower_signature(stmt.method_name, stmt.type_names, stmt.positive)
    raise TypeError(f"cannot lower {stmt!r}")


def _lower_basic(stmt: ast.Basic, reg: Registry, declared: frozenset[str]) -> BoolExpr:
    if isinstance(stmt.rhs, ast.TypeAssumption):
        return TRUE  # contributes a declaration only
    aliases_apply = _outermost_attribute(stmt.lhs) == "type"
    if isinstance(stmt.rhs, ast.LiteralList):
        is_string = all(isinstance(i.value, str) for i in stmt.rhs.items)
        lhs = resolve_exp(stmt.lhs, reg, is_string, declared)
        items = [Lit(_aliased(i.value, reg, aliases_apply)) for i in stmt.rhs.items]
        cond = expand_membership(lhs, items)
    else:
        is_string = isinstance(stmt.rhs, ast.Literal) and isinstance(stmt.rhs.value, str)
        lhs = resolve_exp(stmt.lhs, reg, is_string, declared)
        if isinstance(stmt.rhs, ast.Literal):
            rhs: QlExpr = Lit(_aliased(stmt.rhs.value, reg, aliases_apply))
        else:
            rhs = resolve_exp(stmt.rhs, reg, False, declared)
        cond = Eq(lhs, rhs)
    return Not(cond) if stmt.negated else cond


def _aliased(value: str | int, reg: Registry, aliases_apply: bool) -> str | int:
    if aliases_apply and isinstance(value, str):
        return reg.resolve_alias(value)
    return value
