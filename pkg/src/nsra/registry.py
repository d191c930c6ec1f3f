"""Attribute registry: English attribute words -> CodeQL call-chain templates.

A profile is a line-oriented text file:

    # attribute rules come first, one per line
    receiver = getReceiverType()
    algorithm = toString().replaceAll("\\"", "").splitAt("/", 0)
    argument  = getArgument(@ordinal)

    [aliases]
    PublicKey = java.security.PublicKey

    [types]
    variable = Variable
    method access = MethodAccess

``@ordinal`` marks the slot filled by an ordinal adjective (zero-based at
render time).  ``#`` starts a comment.  User rules shadow built-in rules by
attribute word.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import BadTemplate, ConfigParseError, DuplicateAttribute, UnknownAttribute

log = logging.getLogger(__name__)

ORDINAL_SLOT = "@ordinal"

# Call names whose result is directly comparable to a string literal.
_STRING_RESULTS = frozenset({"toString", "getName", "replaceAll", "splitAt"})


@dataclass(frozen=True)
class CallStep:
    """One rendered method call: name plus literal args, with at most one
    ordinal slot."""

    name: str
    args: tuple[object, ...] = ()  # str | int literals, or ORDINAL_SLOT

    def render(self, ordinal_index: int | None = None) -> str:
        rendered = []
        for arg in self.args:
            if arg == ORDINAL_SLOT:
                if ordinal_index is None:
                    raise ValueError("ordinal slot left unfilled")
                rendered.append(str(ordinal_index))
            elif isinstance(arg, int):
                rendered.append(str(arg))
            else:
                escaped = str(arg).replace("\\", "\\\\").replace('"', '\\"')
                rendered.append(f'"{escaped}"')
        return f"{self.name}({', '.join(rendered)})"


@dataclass(frozen=True)
class AttributeRule:
    word: str
    steps: tuple[CallStep, ...]
    result_kind: str  # "string" | "object"

    def __post_init__(self) -> None:
        if not self.steps:
            raise BadTemplate(self.word, "template has no calls")
        slots = sum(1 for s in self.steps for a in s.args if a == ORDINAL_SLOT)
        if slots > 1:
            raise BadTemplate(self.word, "template names an ordinal slot twice")

    @property
    def has_ordinal_slot(self) -> bool:
        return any(a == ORDINAL_SLOT for s in self.steps for a in s.args)

    def render_steps(self, ordinal_index: int | None = None) -> tuple[str, ...]:
        return tuple(step.render(ordinal_index) for step in self.steps)


@dataclass(frozen=True)
class Registry:
    rules: dict[str, AttributeRule] = field(default_factory=dict)
    type_aliases: dict[str, str] = field(default_factory=dict)
    ql_type_names: dict[str, str] = field(default_factory=dict)

    def resolve_alias(self, simple_name: str) -> str:
        """Qualified name for a simple type name; unknown names pass through."""
        if simple_name in self.type_aliases:
            return self.type_aliases[simple_name]
        log.warning("no qualified-name alias for type %r; using it as written", simple_name)
        return simple_name


def lookup_attribute(word: str, reg: Registry) -> AttributeRule:
    rule = reg.rules.get(word)
    if rule is None:
        raise UnknownAttribute(word, tuple(reg.rules))
    return rule


_BUILTIN_PROFILE = r"""
# Attribute vocabulary for Java cryptography queries.
name      = getName()
type      = getType()
argument  = getArgument(@ordinal)
method    = getMethod()
algorithm = toString().replaceAll("\"", "").splitAt("/", 0)
mode      = toString().replaceAll("\"", "").splitAt("/", 1)
padding   = toString().replaceAll("\"", "").splitAt("/", 2)

[aliases]
PublicKey   = java.security.PublicKey
PrivateKey  = java.security.PrivateKey
Certificate = java.security.cert.Certificate

[types]
variable      = Variable
class         = Class
method access = MethodAccess
"""


def builtin_crypto_profile() -> Registry:
    """The built-in Java-cryptography profile (parsed from profile syntax,
    so the loader is exercised on every use)."""
    return load_profile(_BUILTIN_PROFILE, base=Registry())


def load_profile(config_text: str, base: Registry | None = None) -> Registry:
    """Parse profile text and overlay it on ``base`` (built-in by default).

    Raises ConfigParseError for malformed lines, DuplicateAttribute when one
    file defines an attribute twice, BadTemplate for ill-formed templates.
    """
    if base is None:
        base = builtin_crypto_profile()
    rules = dict(base.rules)
    aliases = dict(base.type_aliases)
    type_names = dict(base.ql_type_names)
    seen_words: set[str] = set()
    section = "rules"

    for line_no, raw in enumerate(config_text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in ("rules", "aliases", "types"):
                raise ConfigParseError(f"unknown section [{section}]", line_no)
            continue
        if "=" not in line:
            raise ConfigParseError("expected 'name = value'", line_no)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigParseError("expected 'name = value'", line_no)
        if section == "aliases":
            aliases[key] = value
        elif section == "types":
            type_names[key.lower()] = value
        else:
            if key in seen_words:
                raise DuplicateAttribute(key, line_no)
            seen_words.add(key)
            steps = _parse_template(key, value, line_no)
            kind = "string" if steps[-1].name in _STRING_RESULTS else "object"
            rules[key] = AttributeRule(key, steps, kind)
    return Registry(rules, aliases, type_names)


def _parse_template(word: str, text: str, line_no: int) -> tuple[CallStep, ...]:
    steps: list[CallStep] = []
    i = 0
    n = len(text)
    while i < n:
        j = i
        while j < n and (text[j].isalnum() or text[j] == "_"):
            j += 1
        name = text[i:j]
        if not name:
            raise ConfigParseError(f"expected a call name in template for {word!r}", line_no)
        if j >= n or text[j] != "(":
            raise ConfigParseError(f"call {name!r} needs parentheses", line_no)
        args, j = _parse_args(word, text, j + 1, line_no)
        steps.append(CallStep(name, args))
        i = j
        if i < n:
            if text[i] != ".":
                raise ConfigParseError(f"expected '.' between calls, found {text[i]!r}", line_no)
            i += 1
    if not steps:
        raise BadTemplate(word, "template has no calls")
    return tuple(steps)


def _parse_args(word: str, text: str, i: int, line_no: int) -> tuple[tuple[object, ...], int]:
    args: list[object] = []
    n = len(text)
    while True:
        while i < n and text[i] == " ":
            i += 1
        if i >= n:
            raise ConfigParseError(f"unterminated argument list for {word!r}", line_no)
        if text[i] == ")":
            return tuple(args), i + 1
        if text[i] == '"':
            value = []
            i += 1
            while i < n and text[i] != '"':
                if text[i] == "\\" and i + 1 < n:
                    value.append(text[i + 1])
                    i += 2
                else:
                    value.append(text[i])
                    i += 1
            if i >= n:
                raise ConfigParseError("unterminated string in template", line_no)
            args.append("".join(value))
            i += 1
        elif text[i] == "@":
            if text[i : i + len(ORDINAL_SLOT)] != ORDINAL_SLOT:
                raise ConfigParseError("unknown @ marker (only @ordinal)", line_no)
            args.append(ORDINAL_SLOT)
            i += len(ORDINAL_SLOT)
        elif text[i].isdigit() or text[i] == "-":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            args.append(int(text[i:j]))
            i = j
        else:
            raise ConfigParseError(f"unexpected {text[i]!r} in template arguments", line_no)
        while i < n and text[i] == " ":
            i += 1
        if i < n and text[i] == ",":
            i += 1
