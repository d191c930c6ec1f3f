"""Logical intermediate representation and its simplifier.

``QlExpr`` models values (variables, literals, call chains, count); the
boolean layer is an and/or/not/exists tree over comparisons.  ``simplify``
applies exactly three rewrites: double-negation removal, flattening of
nested same-operator nodes, and pushing a negation through a connective
when (and only when) doing so strictly reduces the number of negations in
the tree, which keeps one negation in front of membership groups while
turning negated implications into ``p and not q`` form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


# --- value expressions -------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Lit:
    value: Union[str, int]


@dataclass(frozen=True)
class Chain:
    """A call chain: base expression followed by rendered call steps, e.g.
    ``Chain(Var("init"), ("getMethod()", "getName()"))``."""

    base: "QlExpr"
    steps: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("call chain needs at least one step")

    def extended(self, steps: tuple[str, ...]) -> "Chain":
        return Chain(self.base, self.steps + steps)


@dataclass(frozen=True)
class Count:
    inner: "QlExpr"


QlExpr = Union[Var, Lit, Chain, Count]


# --- boolean expressions -----------------------------------------------------


@dataclass(frozen=True)
class Eq:
    left: QlExpr
    right: QlExpr


@dataclass(frozen=True)
class Lt:
    left: QlExpr
    right: QlExpr


@dataclass(frozen=True)
class And:
    items: tuple["BoolExpr", ...]


@dataclass(frozen=True)
class Or:
    items: tuple["BoolExpr", ...]


@dataclass(frozen=True)
class Not:
    inner: "BoolExpr"


@dataclass(frozen=True)
class Decl:
    var_name: str
    ql_type: str


@dataclass(frozen=True)
class Exists:
    decl: Decl
    body: "BoolExpr"


@dataclass(frozen=True)
class TrueExpr:
    pass


TRUE = TrueExpr()

BoolExpr = Union[Eq, Lt, And, Or, Not, Exists, TrueExpr]


@dataclass(frozen=True)
class QueryIR:
    decls: tuple[Decl, ...]
    condition: BoolExpr
    selects: tuple[str, ...]


# --- simplifier --------------------------------------------------------------


def conjoin(items: list[BoolExpr]) -> BoolExpr:
    items = [i for i in items if not isinstance(i, TrueExpr)]
    if not items:
        return TRUE
    if len(items) == 1:
        return items[0]
    return And(tuple(items))


def disjoin(items: list[BoolExpr]) -> BoolExpr:
    if not items:
        raise ValueError("empty disjunction")
    if len(items) == 1:
        return items[0]
    return Or(tuple(items))


def _count_nots(e: BoolExpr) -> int:
    if isinstance(e, Not):
        return 1 + _count_nots(e.inner)
    if isinstance(e, (And, Or)):
        return sum(_count_nots(i) for i in e.items)
    if isinstance(e, Exists):
        return _count_nots(e.body)
    return 0


def simplify(e: BoolExpr) -> BoolExpr:
    """Normalize a boolean tree; logically equivalent to the input."""
    if isinstance(e, And):
        items: list[BoolExpr] = []
        for child in (simplify(i) for i in e.items):
            if isinstance(child, TrueExpr):
                continue
            if isinstance(child, And):
                items.extend(child.items)
            else:
                items.append(child)
        return conjoin(items)
    if isinstance(e, Or):
        items = []
        for child in (simplify(i) for i in e.items):
            # "not true" is vacuous inside a disjunction.
            if isinstance(child, Not) and isinstance(child.inner, TrueExpr):
                continue
            if isinstance(child, Or):
                items.extend(child.items)
            else:
                items.append(child)
        if not items:
            return TRUE
        return disjoin(items)
    if isinstance(e, Not):
        raw = e.inner
        if isinstance(raw, Not):
            return simplify(raw.inner)
        if isinstance(raw, (And, Or)):
            # De Morgan push, decided on the shape as written (before
            # flattening merges nested groups): worthwhile only when it
            # strictly drops the negation count, i.e. the negated children
            # outweigh the plain ones.
            negated = sum(1 for i in raw.items if isinstance(i, Not))
            plain = len(raw.items) - negated
            if plain < 1 + negated:
                flipped = tuple(Not(i) for i in raw.items)
                dual: BoolExpr = And(flipped) if isinstance(raw, Or) else Or(flipped)
                return simplify(dual)
        inner = simplify(raw)
        if isinstance(inner, Not):
            return inner.inner
        return Not(inner)
    if isinstance(e, Exists):
        return Exists(e.decl, simplify(e.body))
    return e


# --- evaluation (truth-table oracle support) ---------------------------------


def atoms(e: BoolExpr) -> list[BoolExpr]:
    """Distinct comparison atoms in first-appearance order."""
    seen: list[BoolExpr] = []

    def walk(node: BoolExpr) -> None:
        if isinstance(node, (Eq, Lt)):
            if node not in seen:
                seen.append(node)
        elif isinstance(node, (And, Or)):
            for i in node.items:
                walk(i)
        elif isinstance(node, Not):
            walk(node.inner)
        elif isinstance(node, Exists):
            walk(node.body)

    walk(e)
    return seen


def evaluate(e: BoolExpr, assignment: dict[BoolExpr, bool]) -> bool:
    """Truth value of ``e`` under an atom assignment.

    Exists nodes are treated as opaque atoms and must appear in the
    assignment themselves if present.
    """
    if isinstance(e, TrueExpr):
        return True
    if isinstance(e, (Eq, Lt, Exists)):
        return assignment[e]
    if isinstance(e, And):
        return all(evaluate(i, assignment) for i in e.items)
    if isinstance(e, Or):
        return any(evaluate(i, assignment) for i in e.items)
    if isinstance(e, Not):
        return not evaluate(e.inner, assignment)
    raise TypeError(f"cannot evaluate {e!r}")


def assignments(atom_list: list[BoolExpr]) -> Iterator[dict[BoolExpr, bool]]:
    """All 2^n truth assignments over the given atoms."""
    n = len(atom_list)
    for bits in range(1 << n):
        yield {atom: bool(bits >> i & 1) for i, atom in enumerate(atom_list)}


def free_variables(e: BoolExpr, bound: frozenset[str] = frozenset()) -> set[str]:
    """Variable names used in ``e`` that no enclosing Exists binds."""
    out: set[str] = set()

    def value_vars(v: QlExpr) -> set[str]:
        if isinstance(v, Var):
            return {v.name}
        if isinstance(v, Chain):
            return value_vars(v.base)
        if isinstance(v, Count):
            return value_vars(v.inner)
        return set()

    if isinstance(e, (Eq, Lt)):
        out |= value_vars(e.left) | value_vars(e.right)
    elif isinstance(e, (And, Or)):
        for i in e.items:
            out |= free_variables(i, bound)
    elif isinstance(e, Not):
        out |= free_variables(e.inner, bound)
    elif isinstance(e, Exists):
        out |= free_variables(e.body, bound | {e.decl.var_name})
    return out - bound
