"""Structural model of a scanned Java source tree.

Wraps the grammar-level parser output in immutable domain objects and builds
the cross-file views the detectors need: the comparable-block listing and the
inheritance graph with its method-override mapping.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from logdup.javasrc.parser import Invocation, ParsedUnit, RawType, parse_java

BLOCK_KINDS = (
    "method", "try", "catch", "finally", "if", "else", "for", "while",
    "switch-case", "anonymous",
)

# Exceptions whose catch is considered generic rather than application-specific
GENERIC_EXCEPTIONS = frozenset({"Exception", "Throwable", "RuntimeException"})


@dataclass(frozen=True)
class CodeBlock:
    id: str
    kind: str
    file_path: str
    start_line: int
    end_line: int
    parent_block: str | None
    caught_exception_types: tuple[str, ...] = ()
    catch_variable: str = ""
    tok_start: int = 0
    tok_end: int = 0

    @property
    def line_count(self) -> int:
        return self.end_line - self.start_line + 1


@dataclass(frozen=True)
class MethodDecl:
    name: str
    parameter_type_names: tuple[str, ...]
    body_block: str | None
    enclosing_type: str
    has_override_marker: bool

    @property
    def signature(self) -> str:
        return "%s(%s)" % (self.name, ",".join(self.parameter_type_names))


@dataclass(frozen=True)
class TypeDecl:
    qualified_name: str
    simple_name: str
    kind: str  # class | interface | enum
    extends_names: tuple[str, ...]
    implements_names: tuple[str, ...]
    methods: tuple[MethodDecl, ...]
    is_abstract: bool


@dataclass(frozen=True)
class SourceUnit:
    file_path: str
    package_name: str
    type_decls: tuple[TypeDecl, ...]
    parse_diagnostics: tuple[tuple[int, str], ...]
    blocks: tuple[CodeBlock, ...]
    parsed: ParsedUnit = field(compare=False, repr=False)

    @property
    def invocations(self) -> list[Invocation]:
        return self.parsed.invocations


@dataclass
class InheritanceGraph:
    nodes: set[str]
    external_nodes: set[str]
    extends_edges: set[tuple[str, str]]
    implements_edges: set[tuple[str, str]]
    override_map: dict[tuple[str, str], set[tuple[str, str]]]
    # (type, method-signature) -> linking supertype(s) shared with each relative
    link_reasons: dict[tuple[tuple[str, str], tuple[str, str]], str] = field(default_factory=dict)


def parse_source_unit(path: str, source: str) -> SourceUnit:
    """Parse one Java file into the immutable structural model."""
    parsed = parse_java(path, source)
    types = tuple(_freeze_type(t) for t in parsed.types)
    blocks = tuple(
        CodeBlock(
            id=b.id,
            kind=b.kind,
            file_path=b.file_path,
            start_line=b.start_line,
            end_line=b.end_line,
            parent_block=b.parent_id,
            caught_exception_types=b.caught_types,
            catch_variable=b.catch_var,
            tok_start=b.tok_start,
            tok_end=b.tok_end,
        )
        for b in parsed.blocks
    )
    return SourceUnit(
        file_path=path,
        package_name=parsed.package_name,
        type_decls=types,
        parse_diagnostics=tuple(parsed.diagnostics),
        blocks=blocks,
        parsed=parsed,
    )


def _freeze_type(t: RawType) -> TypeDecl:
    return TypeDecl(
        qualified_name=t.qualified_name,
        simple_name=t.simple_name,
        kind=t.kind,
        extends_names=t.extends_names,
        implements_names=t.implements_names,
        methods=tuple(
            MethodDecl(
                name=m.name,
                parameter_type_names=m.param_types,
                body_block=m.body_block_id,
                enclosing_type=t.qualified_name,
                has_override_marker=m.has_override,
            )
            for m in t.methods
        ),
        is_abstract=t.is_abstract,
    )


def is_test_file(rel_path: str) -> bool:
    """Default exclusion: test directories and *Test.java / *Tests.java files."""
    parts = rel_path.replace("\\", "/").split("/")
    for seg in parts[:-1]:
        if seg.lower() in ("test", "tests"):
            return True
    name = parts[-1]
    return name.endswith("Test.java") or name.endswith("Tests.java")


def discover_files(root: str, include_tests: bool = False) -> tuple[list[str], list[str]]:
    """Walk `root` for .java files; returns (kept, skipped) relative paths, sorted."""
    kept: list[str] = []
    skipped: list[str] = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for fn in sorted(filenames):
            if not fn.endswith(".java"):
                continue
            rel = os.path.relpath(os.path.join(dirpath, fn), root).replace(os.sep, "/")
            if not include_tests and is_test_file(rel):
                skipped.append(rel)
            else:
                kept.append(rel)
    kept.sort()
    skipped.sort()
    return kept, skipped


def default_thread_count() -> int:
    env = os.environ.get("LOGDUP_THREADS", "")
    if env.strip().isdigit() and int(env) > 0:
        return int(env)
    return min(8, os.cpu_count() or 1)


def parse_tree(root: str, include_tests: bool = False, threads: int | None = None):
    """Parse all kept .java files under root. Returns (units, skipped, warnings).

    Per-file parsing is pure; files are handed to a thread pool but results
    are collected in sorted-path order so output never depends on timing.
    """
    kept, skipped = discover_files(root, include_tests=include_tests)
    warnings: list[str] = []

    def load(rel: str) -> SourceUnit | None:
        full = os.path.join(root, rel)
        try:
            with open(full, "r", encoding="utf-8", errors="replace") as fh:
                source = fh.read()
        except OSError as exc:
            warnings.append(f"skipped unreadable file {rel}: {exc}")
            return None
        return parse_source_unit(rel, source)

    n_threads = threads if threads is not None else default_thread_count()
    if n_threads <= 1 or len(kept) <= 1:
        results = [load(rel) for rel in kept]
    else:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            results = list(pool.map(load, kept))
    units = [u for u in results if u is not None]
    return units, skipped, warnings


def enumerate_blocks(units: list[SourceUnit], min_lines: int) -> list[CodeBlock]:
    """Every block spanning at least `min_lines` source lines.

    Nested qualifying blocks are listed standalone as well; their text stays
    inside the parent's span, so parent and child both enter comparison.
    """
    if min_lines < 1:
        raise ValueError("min_lines must be >= 1")
    out = [b for u in units for b in u.blocks if b.line_count >= min_lines]
    out.sort(key=lambda b: (b.file_path, b.start_line, b.tok_start))
    return out


# ----------------------------------------------------------------- inheritance


def _resolve_supertype(
    name: str,
    unit: SourceUnit,
    enclosing: str,
    by_qname: dict[str, TypeDecl],
    by_simple: dict[str, list[str]],
) -> str:
    """Map a source-level supertype name to a scanned type or an external node."""
    if name in by_qname:
        return name
    simple = name.rsplit(".", 1)[-1]
    # nested sibling: Enclosing.name
    parts = enclosing.split(".")
    for k in range(len(parts), 0, -1):
        cand = ".".join(parts[:k]) + "." + name
        if cand in by_qname:
            return cand
    imported = unit.parsed.imports.get(simple)
    if imported and imported in by_qname:
        return imported
    if unit.package_name:
        cand = f"{unit.package_name}.{name}"
        if cand in by_qname:
            return cand
    owners = by_simple.get(simple, [])
    if len(owners) == 1:
        return owners[0]
    # unresolved: keep as an external leaf node, import-qualified if known
    return f"external:{imported or name}"


def build_inheritance_graph(units: list[SourceUnit]) -> InheritanceGraph:
    """Extends/implements edges plus the method-override mapping.

    Methods with equal (name, parameter-type) signatures are linked between a
    type and its direct supertype, and between two types sharing a direct
    parent class or a common implemented interface. Constructors and synthetic
    members (names in angle brackets) never link.
    """
    by_qname: dict[str, TypeDecl] = {}
    unit_of: dict[str, SourceUnit] = {}
    for u in units:
        for t in u.type_decls:
            by_qname[t.qualified_name] = t
            unit_of[t.qualified_name] = u
    by_simple: dict[str, list[str]] = {}
    for q, t in sorted(by_qname.items()):
        by_simple.setdefault(t.simple_name, []).append(q)

    nodes = set(by_qname)
    external: set[str] = set()
    extends_edges: set[tuple[str, str]] = set()
    implements_edges: set[tuple[str, str]] = set()

    for q in sorted(by_qname):
        t = by_qname[q]
        u = unit_of[q]
        for name in t.extends_names:
            target = _resolve_supertype(name, u, q, by_qname, by_simple)
            if target.startswith("external:"):
                external.add(target)
            extends_edges.add((q, target))
        for name in t.implements_names:
            target = _resolve_supertype(name, u, q, by_qname, by_simple)
            if target.startswith("external:"):
                external.add(target)
            implements_edges.add((q, target))

    override_map: dict[tuple[str, str], set[tuple[str, str]]] = {}
    link_reasons: dict[tuple[tuple[str, str], tuple[str, str]], str] = {}

    def linkable_sigs(q: str) -> dict[str, MethodDecl]:
        out = {}
        for m in by_qname[q].methods:
            if m.name.startswith("<"):
                continue
            out[m.signature] = m
        return out

    def link(a: str, b: str, reason: str) -> None:
        if a == b:
            return
        sigs_a = linkable_sigs(a)
        sigs_b = linkable_sigs(b)
        for sig in sorted(set(sigs_a) & set(sigs_b)):
            ka, kb = (a, sig), (b, sig)
            override_map.setdefault(ka, set()).add(kb)
            override_map.setdefault(kb, set()).add(ka)
            link_reasons.setdefault((ka, kb), reason)
            link_reasons.setdefault((kb, ka), reason)

    # parent <-> child links (scanned parents only; external ones have no methods)
    for child, parent in sorted(extends_edges | implements_edges):
        if parent in by_qname:
            link(child, parent, f"inherits {parent}")

    # sibling links: shared direct parent class or common implemented interface
    children_of: dict[str, list[str]] = {}
    for child, parent in sorted(extends_edges):
        children_of.setdefault(parent, []).append(child)
    impl_of: dict[str, list[str]] = {}
    for child, parent in sorted(implements_edges):
        impl_of.setdefault(parent, []).append(child)
    for parent, kids in sorted(children_of.items()):
        for i, a in enumerate(kids):
            for b in kids[i + 1 :]:
                link(a, b, f"shared parent {parent}")
    for iface, kids in sorted(impl_of.items()):
        for i, a in enumerate(kids):
            for b in kids[i + 1 :]:
                link(a, b, f"shared interface {iface}")

    return InheritanceGraph(
        nodes=nodes,
        external_nodes=external,
        extends_edges=extends_edges,
        implements_edges=implements_edges,
        override_map=override_map,
        link_reasons=link_reasons,
    )
