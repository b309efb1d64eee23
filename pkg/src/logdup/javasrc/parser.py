"""Structural parser for Java compilation units.

Single forward pass over the token stream. Recovers declared types with their
inheritance clauses, method signatures, the nested statement-block tree
(method/try/catch/finally/if/else/for/while/switch/anonymous), string
constants, and every method invocation with its argument token slices.

Tolerant by construction: unparseable regions are recorded as diagnostics and
skipped, never raised. Parsing the same text twice yields an identical result.
"""

from dataclasses import dataclass, field

from logdup.javasrc.lexer import IDENT, KEYWORD, PUNCT, Token, tokenize

MODIFIER_WORDS = frozenset(
    "public protected private static final abstract synchronized native"
    " strictfp transient volatile default sealed".split()
)

_TYPE_KEYWORDS = ("class", "interface", "enum", "record")

_BLOCK_KIND_FOR = {
    "for": "for",
    "while": "while",
    "do": "while",
    "switch": "switch-case",
    "synchronized": "anonymous",
}


@dataclass
class RawBlock:
    id: str
    kind: str
    file_path: str
    start_line: int
    end_line: int
    parent_id: str | None
    caught_types: tuple[str, ...] = ()
    catch_var: str = ""
    tok_start: int = 0  # token range: exact extent, free of line-sharing noise
    tok_end: int = 0


@dataclass
class RawMethod:
    name: str
    param_types: tuple[str, ...]
    body_block_id: str | None
    has_override: bool
    line: int

    @property
    def signature(self) -> str:
        return "%s(%s)" % (self.name, ",".join(self.param_types))


@dataclass
class RawType:
    qualified_name: str
    simple_name: str
    kind: str  # class | interface | enum
    extends_names: tuple[str, ...]
    implements_names: tuple[str, ...]
    is_abstract: bool
    methods: list[RawMethod] = field(default_factory=list)


@dataclass
class Invocation:
    name: str
    receiver: str
    receiver_kind: str  # none | simple | call | other
    receiver_last: str
    args: tuple[tuple[Token, ...], ...]
    start_line: int
    end_line: int
    block_id: str | None
    type_name: str
    method_name: str
    method_sig: str
    is_object_creation: bool = False
    tok_index: int = 0  # document-order sort key


@dataclass
class ParsedUnit:
    file_path: str
    package_name: str
    imports: dict[str, str]
    types: list[RawType]
    blocks: list[RawBlock]
    invocations: list[Invocation]
    constants: dict[tuple[str, str], tuple[Token, ...]]
    diagnostics: list[tuple[int, str]]
    source_lines: tuple[str, ...]
    tokens: tuple[Token, ...] = ()


def split_top_level(tokens: tuple[Token, ...], sep: str) -> list[tuple[Token, ...]]:
    """Split a token slice on `sep` at zero (), [], {} depth."""
    parts: list[tuple[Token, ...]] = []
    depth = 0
    cur: list[Token] = []
    for t in tokens:
        if t.kind == PUNCT:
            if t.text in "([{":
                depth += 1
            elif t.text in ")]}":
                depth = max(0, depth - 1)
            elif t.text == sep and depth == 0:
                parts.append(tuple(cur))
                cur = []
                continue
        cur.append(t)
    if cur or parts:
        parts.append(tuple(cur))
    return parts


def parse_java(file_path: str, source: str) -> ParsedUnit:
    return _Parser(file_path, source).run()


class _Parser:
    def __init__(self, file_path: str, source: str):
        self.path = file_path
        self.toks = tokenize(source)
        self.n = len(self.toks)
        self.i = 0
        self.unit = ParsedUnit(
            file_path=file_path,
            package_name="",
            imports={},
            types=[],
            blocks=[],
            invocations=[],
            constants={},
            diagnostics=[],
            source_lines=tuple(source.splitlines()),
            tokens=tuple(self.toks),
        )
        self._block_seq = 0
        self._type_stack: list[RawType] = []
        self._method_stack: list[RawMethod] = []

    # ------------------------------------------------------------- helpers

    def cur(self) -> Token | None:
        return self.toks[self.i] if self.i < self.n else None

    def peek(self, k: int) -> Token | None:
        j = self.i + k
        return self.toks[j] if j < self.n else None

    def adv(self) -> Token | None:
        t = self.cur()
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.cur()
        return t is not None and t.text == text

    def diag(self, line: int, message: str) -> None:
        self.unit.diagnostics.append((line, message))

    def new_block(
        self, kind: str, parent: RawBlock | None, start_line: int, tok_start: int | None = None, **kw
    ) -> RawBlock:
        self._block_seq += 1
        blk = RawBlock(
            id=f"{self.path}#b{self._block_seq}",
            kind=kind,
            file_path=self.path,
            start_line=start_line,
            end_line=start_line,
            parent_id=parent.id if parent else None,
            tok_start=self.i if tok_start is None else tok_start,
            **kw,
        )
        self.unit.blocks.append(blk)
        return blk

    def _cur_type_name(self) -> str:
        return self._type_stack[-1].qualified_name if self._type_stack else ""

    def _cur_method(self) -> tuple[str, str]:
        if self._method_stack:
            m = self._method_stack[-1]
            return m.name, m.signature
        return "", ""

    def skip_balanced(self, open_ch: str, close_ch: str) -> None:
        """Consume from an opening bracket through its match. No scanning."""
        depth = 0
        while self.i < self.n:
            t = self.adv()
            if t.kind != PUNCT:
                continue
            if t.text == open_ch:
                depth += 1
            elif t.text == close_ch:
                depth -= 1
                if depth == 0:
                    return

    def skip_angles(self) -> None:
        """Consume a generic argument/parameter group starting at '<'.

        Bails out without consuming anything if the region does not look like
        generics (encounters ';', '{', '}' before balancing).
        """
        start = self.i
        depth = 0
        j = self.i
        while j < self.n:
            x = self.toks[j]
            if x.kind == PUNCT:
                if x.text == "<":
                    depth += 1
                elif x.text == ">":
                    depth -= 1
                    if depth == 0:
                        self.i = j + 1
                        return
                elif x.text in (";", "{", "}"):
                    break
            j += 1
        self.i = start  # not generics; leave untouched

    def read_dotted_name(self) -> str:
        """Read Name(.Name)* skipping generic argument groups."""
        parts: list[str] = []
        while True:
            t = self.cur()
            if t is None or t.kind not in (IDENT, KEYWORD):
                break
            parts.append(t.text)
            self.adv()
            if self.at("<"):
                self.skip_angles()
            if self.at(".") and self.peek(1) is not None and self.peek(1).kind in (IDENT, KEYWORD):
                self.adv()
                continue
            break
        return ".".join(parts)

    # ----------------------------------------------------------- top level

    def run(self) -> ParsedUnit:
        while self.i < self.n:
            before = self.i
            t = self.cur()
            if t.kind == KEYWORD and t.text == "package":
                self.adv()
                self.unit.package_name = self.read_dotted_name()
                self.skip_to_semi()
            elif t.kind == KEYWORD and t.text == "import":
                self.adv()
                if self.at("static"):
                    self.adv()
                name = self.read_dotted_name()
                if name and not self.at("*"):
                    simple = name.rsplit(".", 1)[-1]
                    self.unit.imports.setdefault(simple, name)
                self.skip_to_semi()
            else:
                prefix = self.scan_decl_prefix()
                t = self.cur()
                if t is None:
                    break
                if t.kind == KEYWORD and t.text in _TYPE_KEYWORDS:
                    self.parse_type(prefix)
                elif t.text == "@" or (t.kind == PUNCT and t.text == ";"):
                    self.adv()
                else:
                    if self.i == before:
                        self.diag(t.line, f"unexpected top-level token {t.text!r}")
                        self.adv()
        return self.unit

    def skip_to_semi(self) -> None:
        while self.i < self.n:
            t = self.adv()
            if t.kind == PUNCT and t.text == ";":
                return

    def scan_decl_prefix(self) -> dict:
        """Consume annotations and modifier keywords before a declaration."""
        mods: set[str] = set()
        has_override = False
        while True:
            t = self.cur()
            if t is None:
                break
            if t.text == "@":
                nxt = self.peek(1)
                if nxt is not None and nxt.text == "interface":
                    break  # annotation type declaration, not a usage
                self.adv()
                name = self.read_dotted_name()
                if name.rsplit(".", 1)[-1] == "Override":
                    has_override = True
                if self.at("("):
                    self.skip_balanced("(", ")")
                continue
            if t.kind == KEYWORD and t.text in MODIFIER_WORDS:
                mods.add(t.text)
                self.adv()
                continue
            break
        return {"mods": mods, "override": has_override}

    # ------------------------------------------------------- declarations

    def parse_type(self, prefix: dict) -> None:
        kw = self.adv()  # class / interface / enum / record
        kind = {"record": "class"}.get(kw.text, kw.text)
        name_tok = self.cur()
        if name_tok is None or name_tok.kind != IDENT:
            self.diag(kw.line, f"missing name after {kw.text!r}")
            return
        simple = name_tok.text
        self.adv()
        if self.at("<"):
            self.skip_angles()
        if kw.text == "record" and self.at("("):
            self.skip_balanced("(", ")")

        extends: list[str] = []
        implements: list[str] = []
        while True:
            t = self.cur()
            if t is None or t.text in ("{", ";"):
                break
            if t.text == "extends":
                self.adv()
                extends.extend(self.read_type_name_list())
            elif t.text == "implements":
                self.adv()
                implements.extend(self.read_type_name_list())
            elif t.text == "permits":
                self.adv()
                self.read_type_name_list()
            else:
                self.adv()

        enclosing = self._cur_type_name()
        if enclosing:
            qname = f"{enclosing}.{simple}"
        elif self.unit.package_name:
            qname = f"{self.unit.package_name}.{simple}"
        else:
            qname = simple
        rtype = RawType(
            qualified_name=qname,
            simple_name=simple,
            kind=kind,
            extends_names=tuple(extends),
            implements_names=tuple(implements),
            is_abstract="abstract" in prefix["mods"] or kind == "interface",
        )
        self.unit.types.append(rtype)

        if not self.at("{"):
            return
        self.adv()
        self._type_stack.append(rtype)
        try:
            if kind == "enum":
                self.parse_enum_constants()
            self.parse_members(rtype)
        finally:
            self._type_stack.pop()

    def read_type_name_list(self) -> list[str]:
        names: list[str] = []
        while True:
            t = self.cur()
            if t is None or t.kind not in (IDENT, KEYWORD) or t.text in (
                "extends",
                "implements",
                "permits",
            ):
                break
            name = self.read_dotted_name()
            if name:
                names.append(name)
            if self.at(","):
                self.adv()
                continue
            break
        return names

    def parse_enum_constants(self) -> None:
        while self.i < self.n:
            t = self.cur()
            if t.text == ";":
                self.adv()
                return
            if t.text == "}":
                return  # parse_members consumes it
            if t.text == "@":
                self.scan_decl_prefix()
                continue
            if t.kind in (IDENT, KEYWORD):
                self.adv()
                if self.at("("):
                    self.adv()
                    self.scan_expression(None, terminators=(")",))
                if self.at("{"):
                    self.parse_anonymous_body(None)
                if self.at(","):
                    self.adv()
                continue
            self.adv()

    def parse_members(self, rtype: RawType | None) -> None:
        """Parse a class/interface body until the matching '}'."""
        while self.i < self.n:
            t = self.cur()
            if t.text == "}":
                self.adv()
                return
            if t.text == ";":
                self.adv()
                continue
            before = self.i
            prefix = self.scan_decl_prefix()
            t = self.cur()
            if t is None:
                return
            if t.text == "}":
                self.adv()
                return
            if t.kind == KEYWORD and t.text in _TYPE_KEYWORDS:
                self.parse_type(prefix)
                continue
            if t.text == "@" and self.peek(1) is not None and self.peek(1).text == "interface":
                self.adv()
                self.adv()
                if self.cur() is not None and self.cur().kind == IDENT:
                    self.adv()
                if self.at("{"):
                    self.skip_balanced("{", "}")
                continue
            if t.text == "{":
                # instance or static initializer: modeled as a synthetic method
                self.parse_method_rest(
                    rtype, name="<initializer>", name_line=t.line, prefix=prefix, params=(), tok_start=before
                )
                continue
            if t.text == "<":
                self.skip_angles()
                if self.i == before:
                    self.adv()
                continue
            shape, j = self._member_shape()
            if shape == "method":
                name_tok = self.toks[j - 1]
                if name_tok.kind not in (IDENT, KEYWORD):
                    self.diag(name_tok.line, "malformed member; skipping")
                    self.i = j + 1
                    continue
                is_ctor = rtype is not None and name_tok.text == rtype.simple_name and j - 1 == self.i
                name = "<init>" if is_ctor else name_tok.text
                self.i = j  # at '('
                params = self.parse_parameter_types()
                self.parse_method_rest(
                    rtype, name=name, name_line=name_tok.line, prefix=prefix, params=params, tok_start=before
                )
            elif shape == "field":
                self.parse_field(rtype, prefix, stop=j)
            else:  # 'end' or confusion: recover
                if self.i == before:
                    self.diag(t.line, f"unexpected member token {t.text!r}")
                    self.adv()

    def _member_shape(self) -> tuple[str, int]:
        j = self.i
        depth = 0
        angle = 0
        while j < self.n:
            t = self.toks[j]
            if t.kind == PUNCT:
                x = t.text
                if depth == 0 and angle == 0:
                    if x == "(":
                        return ("method", j)
                    if x in ("=", ";"):
                        return ("field", j)
                    if x in ("{", "}"):
                        return ("end", j)
                if x in ("(", "["):
                    depth += 1
                elif x in (")", "]"):
                    depth = max(0, depth - 1)
                elif x == "<":
                    angle += 1
                elif x == ">":
                    angle = max(0, angle - 1)
            j += 1
        return ("end", j)

    def parse_parameter_types(self) -> tuple[str, ...]:
        """Parse '(...)' of a method declaration into normalized type names.

        Normalization: generic arguments and package qualifiers dropped,
        varargs recorded as arrays. Syntactic only, by design.
        """
        assert self.at("(")
        start = self.i + 1
        self.skip_balanced("(", ")")
        slice_ = tuple(self.toks[start : self.i - 1])
        # split on commas at zero bracket AND zero angle depth: declaration
        # context, so '<'/'>' always bracket generic arguments here
        parts: list[list[Token]] = [[]]
        depth = angle = 0
        for t in slice_:
            if t.kind == PUNCT:
                if t.text in "([{":
                    depth += 1
                elif t.text in ")]}":
                    depth = max(0, depth - 1)
                elif t.text == "<":
                    angle += 1
                elif t.text == ">":
                    angle = max(0, angle - 1)
                elif t.text == "," and depth == 0 and angle == 0:
                    parts.append([])
                    continue
            parts[-1].append(t)
        out = []
        for part in parts:
            if not part:
                continue
            name = self._normalize_param_type(tuple(part))
            if name:
                out.append(name)
        return tuple(out)

    @staticmethod
    def _normalize_param_type(tokens: tuple[Token, ...]) -> str:
        toks = []
        angle = 0
        i = 0
        n = len(tokens)
        while i < n:
            t = tokens[i]
            if t.text == "@":
                i += 1
                while i < n and tokens[i].kind in (IDENT, KEYWORD):
                    i += 1
                    if i < n and tokens[i].text == ".":
                        i += 1
                        continue
                    break
                if i < n and tokens[i].text == "(":  # annotation arguments
                    depth = 0
                    while i < n:
                        if tokens[i].text == "(":
                            depth += 1
                        elif tokens[i].text == ")":
                            depth -= 1
                            if depth == 0:
                                i += 1
                                break
                        i += 1
                continue
            if t.text == "<":
                angle += 1
                i += 1
                continue
            if t.text == ">":
                angle = max(0, angle - 1)
                i += 1
                continue
            if angle or t.text == "final":
                i += 1
                continue
            toks.append(t)
            i += 1
        if not toks:
            return ""
        # last identifier is the parameter name; the rest is the type
        name_idx = None
        for k in range(len(toks) - 1, -1, -1):
            if toks[k].kind == IDENT:
                name_idx = k
                break
        if name_idx is None or name_idx == 0:
            type_toks = list(toks)  # untyped/odd parameter: keep as written
        else:
            type_toks = toks[:name_idx] + [t for t in toks[name_idx + 1 :] if t.text in "[]"]
        raw = "".join(t.text for t in type_toks)
        arrays = raw.count("[]") + (1 if "..." in raw else 0)
        base = raw.replace("[]", "").replace("...", "")
        base = base.rsplit(".", 1)[-1] if "." in base else base
        return base + "[]" * arrays

    def parse_method_rest(
        self,
        rtype: RawType | None,
        name: str,
        name_line: int,
        prefix: dict,
        params: tuple[str, ...],
        tok_start: int,
    ) -> None:
        """Handle throws clause and body of a method/constructor/initializer."""
        while self.i < self.n:
            t = self.cur()
            if t.text == "throws":
                self.adv()
                self.read_type_name_list()
            elif t.text == "default":
                self.adv()  # annotation member default value
                self.scan_expression(None, terminators=(";",))
                break
            elif t.text == ";":
                self.adv()
                self._register_method(rtype, name, params, None, prefix, name_line)
                return
            elif t.text == "{":
                break
            else:
                self.adv()
        if not self.at("{"):
            self._register_method(rtype, name, params, None, prefix, name_line)
            return
        method = self._register_method(rtype, name, params, None, prefix, name_line)
        blk = self.new_block("method", None, name_line, tok_start=tok_start)
        method.body_block_id = blk.id
        self._method_stack.append(method)
        self.adv()
        try:
            self.parse_block_body(blk)
        finally:
            self._method_stack.pop()

    def _register_method(
        self,
        rtype: RawType | None,
        name: str,
        params: tuple[str, ...],
        body_id: str | None,
        prefix: dict,
        line: int,
    ) -> RawMethod:
        m = RawMethod(
            name=name,
            param_types=params,
            body_block_id=body_id,
            has_override=prefix["override"],
            line=line,
        )
        if rtype is not None:
            rtype.methods.append(m)
        return m

    def parse_field(self, rtype: RawType | None, prefix: dict, stop: int) -> None:
        """Parse field declarator(s); records String constants for folding."""
        name = ""
        name_idx = stop
        for k in range(stop - 1, self.i - 1, -1):
            if self.toks[k].kind == IDENT:
                name = self.toks[k].text
                name_idx = k
                break
        type_text = "".join(t.text for t in self.toks[self.i : name_idx])
        is_string = type_text.endswith("String") and "[" not in type_text
        is_const = ("static" in prefix["mods"] and "final" in prefix["mods"]) or (
            rtype is not None and rtype.kind == "interface"
        )
        self.i = stop  # land on '=' or ';'
        while self.i < self.n:
            t = self.cur()
            if t.text == ";":
                self.adv()
                return
            if t.text == "=":
                self.adv()
                expr_start = self.i
                self.scan_expression(None, terminators=(";", ","), consume=False)
                expr = tuple(self.toks[expr_start : self.i])
                if is_string and is_const and name and rtype is not None:
                    self.unit.constants[(rtype.qualified_name, name)] = expr
                t = self.cur()
                if t is None:
                    return
                if t.text == ";":
                    self.adv()
                    return
                self.adv()  # ','
                name = ""
                if self.cur() is not None and self.cur().kind == IDENT:
                    name = self.cur().text
                    self.adv()
                continue
            if t.text == ",":
                self.adv()
                if self.cur() is not None and self.cur().kind == IDENT:
                    name = self.cur().text
                    self.adv()
                continue
            self.adv()

    # ---------------------------------------------------------- statements

    def parse_block_body(self, block: RawBlock) -> None:
        """Parse statements until the matching '}' (already past '{')."""
        while self.i < self.n:
            t = self.cur()
            if t.text == "}":
                block.end_line = t.line
                block.tok_end = self.i
                self.adv()
                return
            before = self.i
            self.parse_statement(block)
            if self.i == before:
                self.diag(t.line, f"parser stall at {t.text!r}; skipping token")
                self.adv()
        block.end_line = self.toks[-1].line if self.toks else block.start_line
        block.tok_end = self.n - 1

    def parse_statement(self, parent: RawBlock | None) -> None:
        t = self.cur()
        if t is None:
            return
        if t.text == ";":
            self.adv()
            return
        if t.text == "{":
            blk = self.new_block("anonymous", parent, t.line)
            self.adv()
            self.parse_block_body(blk)
            return
        if t.kind == KEYWORD:
            text = t.text
            if text == "try":
                self.parse_try(parent)
                return
            if text == "if":
                self.parse_if(parent)
                return
            if text in _BLOCK_KIND_FOR:
                line0 = t.line
                kw_i = self.i
                self.adv()
                if text != "do" and self.at("("):
                    self.adv()
                    self.scan_expression(parent, terminators=(")",))
                self.parse_body_or_statement(parent, _BLOCK_KIND_FOR[text], line0, kw_i)
                if text == "do" and self.at("while"):
                    self.adv()
                    if self.at("("):
                        self.adv()
                        self.scan_expression(parent, terminators=(")",))
                    if self.at(";"):
                        self.adv()
                return
            if text in ("return", "throw", "assert", "yield"):
                self.adv()
                self.scan_expression(parent, terminators=(";",))
                return
            if text in ("break", "continue"):
                self.skip_to_semi()
                return
            if text == "case":
                self.adv()
                depth = 0
                while self.i < self.n:
                    x = self.cur()
                    if x.kind == PUNCT:
                        if x.text in "([":
                            depth += 1
                        elif x.text in ")]":
                            depth = max(0, depth - 1)
                        elif depth == 0 and x.text in (":", "->"):
                            self.adv()
                            return
                        elif depth == 0 and x.text == "}":
                            return
                    self.adv()
                return
            if text == "default" and self.peek(1) is not None and self.peek(1).text in (":", "->"):
                self.adv()
                self.adv()
                return
            if text in _TYPE_KEYWORDS:
                # local class: parsed for its statements only, like an
                # anonymous body (its methods never join override analysis)
                self.adv()
                while self.i < self.n and not self.at("{") and not self.at(";"):
                    self.adv()
                if self.at("{"):
                    self.parse_anonymous_body(parent)
                return
        if (
            t.kind == IDENT
            and self.peek(1) is not None
            and self.peek(1).text == ":"
            and (self.peek(2) is None or self.peek(2).text != ":")
        ):
            self.adv()
            self.adv()
            return
        self.scan_expression(parent, terminators=(";",))

    def parse_body_or_statement(
        self, parent: RawBlock | None, kind: str, start_line: int, tok_start: int
    ) -> None:
        if self.at("{"):
            blk = self.new_block(kind, parent, start_line, tok_start=tok_start)
            self.adv()
            self.parse_block_body(blk)
        else:
            self.parse_statement(parent)

    def parse_if(self, parent: RawBlock | None) -> None:
        line0 = self.cur().line
        kw_i = self.i
        self.adv()
        if self.at("("):
            self.adv()
            self.scan_expression(parent, terminators=(")",))
        self.parse_body_or_statement(parent, "if", line0, kw_i)
        while self.at("else"):
            eline = self.cur().line
            e_i = self.i
            self.adv()
            if self.at("if"):
                self.parse_if(parent)
            else:
                self.parse_body_or_statement(parent, "else", eline, e_i)

    def parse_try(self, parent: RawBlock | None) -> None:
        line0 = self.cur().line
        kw_i = self.i
        self.adv()
        # The try block spans the whole statement, catches and finally
        # included, so that catch blocks nest inside their try.
        tryblk = self.new_block("try", parent, line0, tok_start=kw_i)
        if self.at("("):
            self.adv()
            self.scan_expression(tryblk, terminators=(")",))
        if self.at("{"):
            self.adv()
            self.parse_block_body(tryblk)
        last_line = tryblk.end_line
        last_tok = tryblk.tok_end
        while self.at("catch"):
            cline = self.cur().line
            c_i = self.i
            self.adv()
            types, var = self.parse_catch_clause()
            cblk = self.new_block(
                "catch", tryblk, cline, tok_start=c_i, caught_types=types, catch_var=var
            )
            if self.at("{"):
                self.adv()
                self.parse_block_body(cblk)
            last_line = max(last_line, cblk.end_line)
            last_tok = max(last_tok, cblk.tok_end)
        if self.at("finally"):
            fline = self.cur().line
            f_i = self.i
            self.adv()
            fblk = self.new_block("finally", tryblk, fline, tok_start=f_i)
            if self.at("{"):
                self.adv()
                self.parse_block_body(fblk)
            last_line = max(last_line, fblk.end_line)
            last_tok = max(last_tok, fblk.tok_end)
        tryblk.end_line = max(tryblk.end_line, last_line)
        tryblk.tok_end = max(tryblk.tok_end, last_tok)

    def parse_catch_clause(self) -> tuple[tuple[str, ...], str]:
        """Parse `([final] Type1 [| Type2 ...] var)`; returns (types, var)."""
        if not self.at("("):
            return (), ""
        start = self.i + 1
        self.skip_balanced("(", ")")
        slice_ = tuple(self.toks[start : self.i - 1])
        types: list[str] = []
        var = ""
        parts = split_top_level(slice_, "|")
        for idx, union_part in enumerate(parts):
            toks = [t for t in union_part if t.text != "final" and t.text != "@"]
            # group consecutive ident/dot runs into dotted names
            names: list[str] = []
            cur_name: list[str] = []
            prev_dot = False
            for t in toks:
                if t.kind == IDENT:
                    if cur_name and not prev_dot:
                        names.append(".".join(cur_name))
                        cur_name = []
                    cur_name.append(t.text)
                    prev_dot = False
                elif t.text == ".":
                    prev_dot = True
                else:
                    if cur_name:
                        names.append(".".join(cur_name))
                        cur_name = []
                    prev_dot = False
            if cur_name:
                names.append(".".join(cur_name))
            if not names:
                continue
            if idx == len(parts) - 1 and len(names) >= 2:
                types.append(names[-2])
                var = names[-1]
            else:
                types.append(names[0])
        return tuple(types), var

    # --------------------------------------------------------- expressions

    def scan_expression(
        self,
        parent: RawBlock | None,
        terminators: tuple[str, ...],
        consume: bool = True,
    ) -> None:
        """Scan an expression region, recording invocations, object creations,
        lambda bodies and anonymous class bodies. Stops at any terminator
        punctuation found at zero bracket depth."""
        chain_start: int | None = None
        chain_simple = True
        prev_call: Invocation | None = None
        while self.i < self.n:
            t = self.cur()
            if t.kind == PUNCT and t.text in terminators:
                if consume:
                    self.adv()
                return
            if t.kind == PUNCT and t.text == "}":
                return  # recovery: let the enclosing block see it
            if t.kind == KEYWORD and t.text == "new":
                self.parse_new(parent)
                chain_start = None
                prev_call = None
                continue
            if t.kind == KEYWORD and t.text == "switch":
                # switch expression: `switch (x) { ... }`
                line0 = t.line
                self.adv()
                if self.at("("):
                    self.adv()
                    self.scan_expression(parent, terminators=(")",))
                if self.at("{"):
                    blk = self.new_block("switch-case", parent, line0)
                    self.adv()
                    self.parse_block_body(blk)
                prev_call = None
                continue
            if t.kind == IDENT or (t.kind == KEYWORD and t.text in ("this", "super")):
                if chain_start is None:
                    chain_start = self.i
                    chain_simple = prev_call is None
                self.adv()
                continue
            if t.kind == PUNCT and t.text == ".":
                nxt = self.peek(1)
                if nxt is not None and (nxt.kind == IDENT or nxt.text in ("this", "class")):
                    if chain_start is None:
                        chain_start = self.i
                        chain_simple = False
                    self.adv()
                    continue
                self.adv()
                chain_start = None
                continue
            if t.kind == PUNCT and t.text == "(":
                if chain_start is not None and self.toks[self.i - 1].kind in (IDENT, KEYWORD):
                    inv = self.record_invocation(chain_start, parent, chain_simple, prev_call)
                    prev_call = inv
                    chain_start = None
                    continue
                self.adv()
                self.scan_expression(parent, terminators=(")",))
                chain_start = None
                prev_call = None
                continue
            if t.kind == PUNCT and t.text == "->":
                self.adv()
                if self.at("{"):
                    blk = self.new_block("anonymous", parent, t.line)
                    self.adv()
                    self.parse_block_body(blk)
                chain_start = None
                prev_call = None
                continue
            if t.kind == PUNCT and t.text == "{":
                # array/annotation initializer: scan inside, no block
                self.adv()
                self.scan_expression(parent, terminators=("}",))
                chain_start = None
                prev_call = None
                continue
            if t.kind == PUNCT and t.text == "[":
                self.adv()
                self.scan_expression(parent, terminators=("]",))
                continue
            # any other token breaks the primary chain
            self.adv()
            chain_start = None
            if t.kind == PUNCT and t.text not in (")", "]"):
                prev_call = None

    def record_invocation(
        self,
        chain_start: int,
        parent: RawBlock | None,
        chain_simple: bool,
        prev_call: Invocation | None,
    ) -> Invocation:
        chain = self.toks[chain_start : self.i]
        name = chain[-1].text
        recv_toks = chain[:-1]
        while recv_toks and recv_toks[-1].text == ".":
            recv_toks = recv_toks[:-1]
        receiver = "".join(x.text for x in recv_toks)
        recv_idents = [x.text for x in recv_toks if x.kind in (IDENT, KEYWORD)]
        if prev_call is not None and not chain_simple:
            receiver_kind = "call"
            receiver_last = recv_idents[-1] if recv_idents else prev_call.name
        elif not recv_toks:
            receiver_kind = "none"
            receiver_last = ""
        elif chain_simple:
            receiver_kind = "simple"
            receiver_last = recv_idents[-1] if recv_idents else ""
        else:
            receiver_kind = "other"
            receiver_last = recv_idents[-1] if recv_idents else ""
        start_line = chain[0].line
        assert self.at("(")
        self.adv()
        args_start = self.i
        self.scan_expression(parent, terminators=(")",), consume=False)
        args_slice = tuple(self.toks[args_start : self.i])
        end_tok = self.cur()
        end_line = end_tok.line if end_tok is not None else start_line
        if self.at(")"):
            self.adv()
        mname, msig = self._cur_method()
        inv = Invocation(
            name=name,
            receiver=receiver,
            receiver_kind=receiver_kind,
            receiver_last=receiver_last,
            args=tuple(tuple(p) for p in split_top_level(args_slice, ",") if p),
            start_line=start_line,
            end_line=end_line,
            block_id=parent.id if parent else None,
            type_name=self._cur_type_name(),
            method_name=mname,
            method_sig=msig,
            tok_index=chain_start,
        )
        self.unit.invocations.append(inv)
        return inv

    def parse_new(self, parent: RawBlock | None) -> None:
        new_i = self.i
        new_tok = self.adv()  # 'new'
        name = self.read_dotted_name()
        if self.at("["):
            while self.at("["):
                self.adv()
                self.scan_expression(parent, terminators=("]",))
            if self.at("{"):
                self.adv()
                self.scan_expression(parent, terminators=("}",))
            return
        if not self.at("("):
            return
        self.adv()
        args_start = self.i
        self.scan_expression(parent, terminators=(")",), consume=False)
        args_slice = tuple(self.toks[args_start : self.i])
        end_tok = self.cur()
        if self.at(")"):
            self.adv()
        mname, msig = self._cur_method()
        self.unit.invocations.append(
            Invocation(
                name=name.rsplit(".", 1)[-1] if name else "",
                receiver="",
                receiver_kind="none",
                receiver_last="",
                args=tuple(tuple(p) for p in split_top_level(args_slice, ",") if p),
                start_line=new_tok.line,
                end_line=end_tok.line if end_tok is not None else new_tok.line,
                block_id=parent.id if parent else None,
                type_name=self._cur_type_name(),
                method_name=mname,
                method_sig=msig,
                is_object_creation=True,
                tok_index=new_i,
            )
        )
        if self.at("{"):
            self.parse_anonymous_body(parent)

    def parse_anonymous_body(self, parent: RawBlock | None) -> None:
        """Body of an anonymous class (or local class / enum constant body).

        Declared methods are parsed for their statements, attributed to the
        enclosing (outer) method, and never registered on a named type.
        """
        t = self.cur()  # '{'
        blk = self.new_block("anonymous", parent, t.line)
        self.adv()
        while self.i < self.n:
            t = self.cur()
            if t.text == "}":
                blk.end_line = t.line
                self.adv()
                return
            if t.text == ";":
                self.adv()
                continue
            before = self.i
            prefix = self.scan_decl_prefix()
            t = self.cur()
            if t is None:
                return
            if t.text == "}":
                blk.end_line = t.line
                self.adv()
                return
            if t.kind == KEYWORD and t.text in _TYPE_KEYWORDS:
                self.adv()
                while self.i < self.n and not self.at("{") and not self.at(";"):
                    self.adv()
                if self.at("{"):
                    self.parse_anonymous_body(blk)
                continue
            if t.text == "{":
                inner = self.new_block("anonymous", blk, t.line)
                self.adv()
                self.parse_block_body(inner)
                continue
            if t.text == "<":
                self.skip_angles()
                if self.i == before:
                    self.adv()
                continue
            shape, j = self._member_shape()
            if shape == "method":
                name_tok = self.toks[j - 1]
                self.i = j
                if name_tok.kind not in (IDENT, KEYWORD):
                    self.adv()
                    continue
                self.parse_parameter_types()
                # skip throws, then body
                while self.i < self.n and not self.at("{") and not self.at(";"):
                    self.adv()
                if self.at(";"):
                    self.adv()
                    continue
                if self.at("{"):
                    mline = name_tok.line
                    body = self.new_block("method", blk, mline)
                    self.adv()
                    self.parse_block_body(body)
                continue
            if shape == "field":
                self.parse_field(None, prefix, stop=j)
                continue
            if self.i == before:
                self.adv()
