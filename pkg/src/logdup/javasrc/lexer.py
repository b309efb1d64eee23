"""Tokenizer for Java source text.

Produces a flat token stream with exact line numbers. Comments and whitespace
are dropped; string and char literals carry their decoded values. The goal is
structural fidelity on real-world files, not full JLS conformance: the lexer
must never raise on malformed input.
"""

from dataclasses import dataclass

IDENT = "ident"
KEYWORD = "keyword"
STRING = "string"
CHAR = "char"
NUMBER = "number"
PUNCT = "punct"

# Includes literal words (true/false/null) so downstream normalization can
# treat them as literals rather than identifiers.
KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null
    var record yield permits sealed non-sealed""".split()
)

# Multi-character operators that matter structurally. '<<' / '>>' are kept as
# single chars so generic argument depth tracking stays simple.
_MULTI_OPS = (
    "->", "::", "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
)

_ESCAPES = {
    "b": "\b", "t": "\t", "n": "\n", "f": "\f", "r": "\r",
    '"': '"', "'": "'", "\\": "\\", "s": " ",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    value: str
    line: int


def _decode_escapes(raw: str) -> str:
    out = []
    i, n = 0, len(raw)
    while i < n:
        c = raw[i]
        if c != "\\" or i + 1 >= n:
            out.append(c)
            i += 1
            continue
        e = raw[i + 1]
        if e == "u":
            j = i + 2
            while j < n and raw[j] == "u":
                j += 1
            hexpart = raw[j : j + 4]
            if len(hexpart) == 4 and all(h in "0123456789abcdefABCDEF" for h in hexpart):
                out.append(chr(int(hexpart, 16)))
                i = j + 4
                continue
            out.append(e)
            i += 2
        elif e in _ESCAPES:
            out.append(_ESCAPES[e])
            i += 2
        elif e.isdigit():
            j = i + 1
            digits = ""
            while j < n and raw[j].isdigit() and len(digits) < 3:
                digits += raw[j]
                j += 1
            try:
                out.append(chr(int(digits, 8)))
            except ValueError:
                out.append(digits)
            i = j
        else:
            out.append(e)
            i += 2
    return "".join(out)


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c in "_$"


def _is_ident_part(c: str) -> bool:
    return c.isalnum() or c in "_$"


def tokenize(source: str) -> list[Token]:
    """Tokenize Java source. Tolerates a leading BOM and any malformed tail."""
    if source.startswith("﻿"):
        source = source[1:]
    toks: list[Token] = []
    i, n, line = 0, len(source), 1
    while i < n:
        c = source[i]
        if c == "\n":
            line += 1
            i += 1
            continue
        if c.isspace():
            i += 1
            continue
        if c == "/" and i + 1 < n and source[i + 1] == "/":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if c == "/" and i + 1 < n and source[i + 1] == "*":
            j = source.find("*/", i + 2)
            if j == -1:
                line += source.count("\n", i)
                i = n
            else:
                line += source.count("\n", i, j + 2)
                i = j + 2
            continue
        if c == '"':
            if source.startswith('"""', i):
                # Text block: raw content kept as-is (incidental indentation
                # is not stripped; grouping only needs determinism).
                j = source.find('"""', i + 3)
                if j == -1:
                    j = n - 3
                raw = source[i + 3 : j]
                toks.append(Token(STRING, source[i : j + 3], raw, line))
                line += source.count("\n", i, j + 3)
                i = j + 3
                continue
            j = i + 1
            while j < n and source[j] != '"':
                if source[j] == "\\":
                    j += 1
                elif source[j] == "\n":
                    break  # unterminated: recover at end of line
                j += 1
            raw = source[i + 1 : j]
            toks.append(Token(STRING, source[i : j + 1], _decode_escapes(raw), line))
            i = j + 1
            continue
        if c == "'":
            j = i + 1
            while j < n and source[j] != "'":
                if source[j] == "\\":
                    j += 1
                elif source[j] == "\n":
                    break
                j += 1
            raw = source[i + 1 : j]
            toks.append(Token(CHAR, source[i : j + 1], _decode_escapes(raw), line))
            i = j + 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i + 1
            while j < n:
                d = source[j]
                if d.isalnum() or d in "._":
                    j += 1
                elif d in "+-" and source[j - 1] in "eEpP":
                    j += 1
                else:
                    break
            text = source[i:j]
            toks.append(Token(NUMBER, text, text, line))
            i = j
            continue
        if _is_ident_start(c):
            j = i + 1
            while j < n and _is_ident_part(source[j]):
                j += 1
            text = source[i:j]
            kind = KEYWORD if text in KEYWORDS else IDENT
            toks.append(Token(kind, text, text, line))
            i = j
            continue
        for op in _MULTI_OPS:
            if source.startswith(op, i):
                toks.append(Token(PUNCT, op, op, line))
                i += len(op)
                break
        else:
            toks.append(Token(PUNCT, c, c, line))
            i += 1
    return toks
