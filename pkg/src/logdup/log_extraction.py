"""Logging statement extraction and static text rendering.

A logging statement's grouping key is its compile-time-derivable text: string
literals verbatim, in-file static-final string constants folded in, and a
placeholder for every non-string value. The placeholder uses angle-bracket
characters that cannot appear unescaped in a Java string literal, so rendered
texts never collide with literal content.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from logdup.javasrc.lexer import CHAR, IDENT, KEYWORD, NUMBER, PUNCT, STRING, Token
from logdup.javasrc.parser import Invocation, split_top_level
from logdup.source_model import CodeBlock, SourceUnit

PLACEHOLDER = "⟨V⟩"  # ⟨V⟩

LEVELS = ("fatal", "error", "warn", "info", "debug", "trace")

FULL_STACK_TRACE = "full_stack_trace"
MESSAGE_ONLY = "message_only"
NONE = "none"
_USAGE_RANK = {NONE: 0, MESSAGE_ONLY: 1, FULL_STACK_TRACE: 2}

# identifiers conventionally holding a throwable when no catch context is known
_THROWABLE_NAME = re.compile(r"(?i)^(e|ex|exc|t|th|err|error|cause|exception|throwable|e\d|ex\d|t\d)$")

DEFAULT_RECEIVER_PATTERN = r"(?i)(log|logger|s_log.*|logging)"


@dataclass(frozen=True)
class LoggerConfig:
    """Which invocations count as logging calls."""

    receiver_pattern: str = DEFAULT_RECEIVER_PATTERN
    level_methods: tuple[tuple[str, str], ...] = tuple((lv, lv) for lv in LEVELS)

    def level_of(self, method_name: str) -> str | None:
        for name, level in self.level_methods:
            if name == method_name:
                return level
        return None

    def receiver_matches(self, ident: str) -> bool:
        return re.fullmatch(self.receiver_pattern, ident) is not None


@dataclass(frozen=True)
class ExceptionUsage:
    value: str  # full_stack_trace | message_only | none


@dataclass(frozen=True)
class LoggingStatement:
    id: str
    file_path: str
    line: int
    end_line: int
    level: str
    static_text: str
    enclosing_type: str
    enclosing_method: str
    enclosing_method_sig: str
    enclosing_block: str | None
    logged_variable_kinds: tuple[str, ...]
    exception_usage: str | None  # None when not inside a catch block
    in_catch_of: tuple[str, ...]
    catch_block: str | None


def usage_rank(usage: str) -> int:
    return _USAGE_RANK[usage]


# ------------------------------------------------------------ expression view


def _strip_parens(tokens: tuple[Token, ...]) -> tuple[Token, ...]:
    while len(tokens) >= 2 and tokens[0].text == "(" and tokens[-1].text == ")":
        depth = 0
        for k, t in enumerate(tokens):
            if t.kind == PUNCT and t.text == "(":
                depth += 1
            elif t.kind == PUNCT and t.text == ")":
                depth -= 1
                if depth == 0 and k != len(tokens) - 1:
                    return tokens
        tokens = tokens[1:-1]
    return tokens


def _operands(arg: tuple[Token, ...]) -> list[tuple[Token, ...]]:
    """Split one argument expression on top-level '+'."""
    return [p for p in split_top_level(_strip_parens(arg), "+") if p]


def _idents_in(tokens: tuple[Token, ...]) -> set[str]:
    return {t.text for t in tokens if t.kind == IDENT}


def _is_bare_ident(tokens: tuple[Token, ...]) -> str | None:
    if len(tokens) == 1 and tokens[0].kind == IDENT:
        return tokens[0].text
    return None


def _dotted_name(tokens: tuple[Token, ...]) -> str | None:
    """Match Name(.Name)* with no calls; returns the dotted text."""
    if not tokens or len(tokens) % 2 == 0:
        return None
    for k, t in enumerate(tokens):
        if k % 2 == 0 and t.kind != IDENT:
            return None
        if k % 2 == 1 and t.text != ".":
            return None
    return "".join(t.text for t in tokens)


class ConstantPool:
    """Lazy folding of in-file `static final String` constants."""

    def __init__(self, unit: SourceUnit):
        self._exprs = unit.parsed.constants
        self._types = [t.qualified_name for t in unit.type_decls]
        self._cache: dict[tuple[str, str], str | None] = {}

    def resolve(self, enclosing_type: str, name: str) -> str | None:
        dotted = name.split(".")
        if len(dotted) == 1:
            # innermost enclosing type outward, then any type in the file
            parts = enclosing_type.split(".")
            for k in range(len(parts), 0, -1):
                v = self._fold(".".join(parts[:k]), name)
                if v is not None:
                    return v
            for q in self._types:
                v = self._fold(q, name)
                if v is not None:
                    return v
            return None
        owner_simple, const = ".".join(dotted[:-1]), dotted[-1]
        for q in self._types:
            if q == owner_simple or q.endswith("." + owner_simple.rsplit(".", 1)[-1]):
                v = self._fold(q, const)
                if v is not None:
                    return v
        return None

    def _fold(self, type_qname: str, name: str, _seen: frozenset = frozenset()) -> str | None:
        key = (type_qname, name)
        if key in self._cache:
            return self._cache[key]
        if key in _seen or key not in self._exprs:
            return None
        out: list[str] = []
        ok = True
        for op in _operands(self._exprs[key]):
            op = _strip_parens(op)
            if len(op) == 1 and op[0].kind in (STRING, CHAR):
                out.append(op[0].value)
                continue
            ref = _dotted_name(op)
            if ref is not None:
                sub = self._fold(type_qname, ref.rsplit(".", 1)[-1], _seen | {key})
                if sub is not None:
                    out.append(sub)
                    continue
            ok = False
            break
        value = "".join(out) if ok else None
        self._cache[key] = value
        return value


# --------------------------------------------------------------- rendering


def _classify_trailing_throwable(
    args: tuple[tuple[Token, ...], ...], catch_var: str | None
) -> int | None:
    """Index of the argument classified as the trailing throwable, if any."""
    if not args:
        return None
    last = _strip_parens(args[-1])
    name = _is_bare_ident(last)
    if name is None:
        return None
    if catch_var and name == catch_var:
        return len(args) - 1
    if _THROWABLE_NAME.fullmatch(name):
        return len(args) - 1
    return None


def render_static_text(
    args: tuple[tuple[Token, ...], ...],
    constants: ConstantPool | None = None,
    enclosing_type: str = "",
    catch_var: str | None = None,
) -> str:
    """Concatenate the compile-time text of a logging call's arguments.

    String literals and resolvable constants contribute their text, every
    other value contributes one placeholder, and a trailing throwable
    argument contributes nothing.
    """
    throwable_idx = _classify_trailing_throwable(args, catch_var)
    out: list[str] = []
    for idx, arg in enumerate(args):
        if idx == throwable_idx:
            continue
        for op in _operands(arg):
            op = _strip_parens(op)
            if len(op) == 1 and op[0].kind in (STRING, CHAR):
                out.append(op[0].value)
                continue
            ref = _dotted_name(op)
            if ref is not None and constants is not None:
                folded = constants.resolve(enclosing_type, ref)
                if folded is not None:
                    out.append(folded)
                    continue
            out.append(PLACEHOLDER)
    return "".join(out)


def _variable_kinds(
    args: tuple[tuple[Token, ...], ...],
    constants: ConstantPool | None,
    enclosing_type: str,
    catch_var: str | None,
) -> tuple[str, ...]:
    kinds: list[str] = []
    for arg in args:
        for op in _operands(arg):
            op = _strip_parens(op)
            if len(op) == 1 and op[0].kind in (STRING, CHAR, NUMBER):
                continue
            if len(op) == 1 and op[0].kind == KEYWORD:
                continue  # true/false/null
            name = _is_bare_ident(op)
            if name is not None:
                if catch_var and name == catch_var:
                    kinds.append("exception-var")
                elif constants is not None and constants.resolve(enclosing_type, name) is not None:
                    kinds.append("string-var")
                else:
                    kinds.append("non-string-var")
                continue
            if any(t.text == "(" for t in op):
                kinds.append("call-result")
            else:
                kinds.append("non-string-var")
    return tuple(kinds)


def classify_exception_usage(args: tuple[tuple[Token, ...], ...], catch_var: str) -> str:
    """How the catch's exception variable is recorded by this call.

    Total order: passing the variable itself beats message-style access
    (getMessage()/toString()/any call or nested use) beats no use at all.
    """
    saw_message = False
    for arg in args:
        for op in _operands(arg):
            op = _strip_parens(op)
            if _is_bare_ident(op) == catch_var:
                return FULL_STACK_TRACE
            if catch_var in _idents_in(op):
                saw_message = True
    return MESSAGE_ONLY if saw_message else NONE


# --------------------------------------------------------------- extraction


def _block_maps(unit: SourceUnit):
    by_id = {b.id: b for b in unit.blocks}

    def catch_ancestor(block_id: str | None) -> CodeBlock | None:
        cur = block_id
        while cur is not None:
            b = by_id[cur]
            if b.kind == "catch":
                return b
            cur = b.parent_block
        return None

    return by_id, catch_ancestor


def is_logging_call(inv: Invocation, config: LoggerConfig) -> str | None:
    """Level name when the invocation is a recognized logging call."""
    if inv.is_object_creation:
        return None
    level = config.level_of(inv.name)
    if level is None:
        return None
    if inv.receiver_kind == "simple":
        return level if inv.receiver_last and config.receiver_matches(inv.receiver_last) else None
    if inv.receiver_kind in ("call", "other"):
        # receiver value is not statically nameable: include, level from name
        return level
    return None  # bare call with no receiver


def extract_logging_statements(
    unit: SourceUnit, config: LoggerConfig | None = None
) -> list[LoggingStatement]:
    """All recognized logging statements of one unit, in document order."""
    config = config or LoggerConfig()
    constants = ConstantPool(unit)
    _, catch_ancestor = _block_maps(unit)
    out: list[LoggingStatement] = []
    seq = 0
    for inv in sorted(unit.invocations, key=lambda v: v.tok_index):
        level = is_logging_call(inv, config)
        if level is None:
            continue
        seq += 1
        catch = catch_ancestor(inv.block_id)
        catch_var = catch.catch_variable if catch is not None else None
        text = render_static_text(inv.args, constants, inv.type_name, catch_var)
        usage = classify_exception_usage(inv.args, catch_var) if catch_var else None
        if catch is not None and usage is None:
            usage = NONE
        out.append(
            LoggingStatement(
                id=f"{unit.file_path}#s{seq}",
                file_path=unit.file_path,
                line=inv.start_line,
                end_line=inv.end_line,
                level=level,
                static_text=text,
                enclosing_type=inv.type_name,
                enclosing_method=inv.method_name,
                enclosing_method_sig=inv.method_sig,
                enclosing_block=inv.block_id,
                logged_variable_kinds=_variable_kinds(inv.args, constants, inv.type_name, catch_var),
                exception_usage=usage,
                in_catch_of=catch.caught_exception_types if catch is not None else (),
                catch_block=catch.id if catch is not None else None,
            )
        )
    return out


def catch_blocks_passing_exception(unit: SourceUnit, config: LoggerConfig | None = None) -> set[str]:
    """Catch block ids whose exception variable escapes into a non-logging
    invocation or constructor (error-handler hand-off)."""
    config = config or LoggerConfig()
    _, catch_ancestor = _block_maps(unit)
    escapes: set[str] = set()
    for inv in unit.invocations:
        catch = catch_ancestor(inv.block_id)
        if catch is None or not catch.catch_variable:
            continue
        if not inv.is_object_creation and is_logging_call(inv, config) is not None:
            continue
        var = catch.catch_variable
        for arg in inv.args:
            if var in _idents_in(arg):
                escapes.add(catch.id)
                break
    return escapes
