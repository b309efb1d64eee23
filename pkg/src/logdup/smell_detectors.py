"""Detectors for the four duplicate-logging code smells.

IC  - identical messages in different catch blocks of one try, none of which
      records anything about the exception.
IE  - duplicate messages in catch blocks that record the exception
      inconsistently (stack trace vs message vs nothing) for the same caught
      type; three justifiable shapes are suppressed rather than reported.
LM  - a copied message that no longer matches its class/method name, found by
      comparing per-member common-word counts.
DP  - identical messages in override-linked methods of parent/sibling types.

Level inconsistency (IL) is computed as informational metadata only and never
counts as a finding.
"""

from __future__ import annotations

from dataclasses import dataclass

from logdup.duplicate_index import DuplicateSet
from logdup.log_extraction import NONE, PLACEHOLDER, LoggingStatement, usage_rank
from logdup.source_model import GENERIC_EXCEPTIONS, CodeBlock, InheritanceGraph
from logdup.textwords import split_and_stem

PATTERNS = ("IC", "IE", "LM", "DP")

IE1 = "IE.1"  # generic vs specific exception types
IE2 = "IE.2"  # same catch block, richer usage at debug/trace
IE3 = "IE.3"  # exception handed to a separate error-handling object


@dataclass(frozen=True)
class SmellInstance:
    pattern: str
    set_id: str
    members: tuple[str, ...]
    evidence: dict
    suppressed_by: str | None = None


def _simple(name: str) -> str:
    return name.rsplit(".", 1)[-1]


def _is_generic_catch(caught: tuple[str, ...]) -> bool:
    return bool(caught) and all(_simple(c) in GENERIC_EXCEPTIONS for c in caught)


# ------------------------------------------------------------------------ IC


def detect_ic(
    dup_sets: list[DuplicateSet],
    statements: dict[str, LoggingStatement],
    blocks: dict[str, CodeBlock],
) -> list[SmellInstance]:
    """Same-try groups of duplicate-set members in distinct catch blocks with
    pairwise-different caught types where no member records the exception."""
    out: list[SmellInstance] = []
    for dset in dup_sets:
        by_try: dict[str, list[LoggingStatement]] = {}
        for sid in dset.members:
            s = statements[sid]
            if s.catch_block is None:
                continue
            try_id = blocks[s.catch_block].parent_block
            if try_id is None:
                continue
            by_try.setdefault(try_id, []).append(s)
        for try_id in sorted(by_try):
            group = by_try[try_id]
            catches = sorted({s.catch_block for s in group})
            if len(group) < 2 or len(catches) < 2:
                continue
            if any(s.exception_usage != NONE for s in group):
                continue
            caught_sets = [set(blocks[c].caught_exception_types) for c in catches]
            disjoint = all(
                not (caught_sets[i] & caught_sets[j])
                for i in range(len(caught_sets))
                for j in range(i + 1, len(caught_sets))
            )
            if not disjoint:
                continue
            out.append(
                SmellInstance(
                    pattern="IC",
                    set_id=dset.id,
                    members=tuple(s.id for s in sorted(group, key=lambda x: (x.file_path, x.line))),
                    evidence={
                        "try_block": try_id,
                        "caught_types": {
                            c: list(blocks[c].caught_exception_types) for c in catches
                        },
                    },
                )
            )
    return out


# ------------------------------------------------------------------------ IE


def _ie_filters(
    group: list[LoggingStatement],
    escapes: set[str],
) -> tuple[str | None, dict]:
    """Evaluate justifiable-case filters for a same-caught-type member group."""
    verdicts: dict[str, bool] = {}

    # IE.2: the differing statements share one catch block and the richer
    # usage sits at debug/trace verbosity on a different level
    same_block = len({s.catch_block for s in group}) == 1
    ie2 = False
    if same_block:
        richest = max(group, key=lambda s: usage_rank(s.exception_usage))
        levels = {s.level for s in group}
        ie2 = len(levels) > 1 and richest.level in ("debug", "trace")
    verdicts[IE2] = ie2
    if ie2:
        return IE2, verdicts

    # IE.3: every least-recording member's catch block hands the exception
    # to another invocation or constructor
    min_rank = min(usage_rank(s.exception_usage) for s in group)
    least = [s for s in group if usage_rank(s.exception_usage) == min_rank]
    ie3 = all(s.catch_block in escapes for s in least)
    verdicts[IE3] = ie3
    if ie3:
        return IE3, verdicts

    return None, verdicts


def detect_ie(
    dup_sets: list[DuplicateSet],
    statements: dict[str, LoggingStatement],
    escapes: set[str],
) -> list[SmellInstance]:
    """Inconsistent exception recording among a set's catch-block members.

    Members are compared when their caught exception types are identical;
    the one sanctioned cross-type comparison is the generic-vs-specific split,
    which is always the justifiable case IE.1. Suppressed instances carry
    their tag and surface only in verbose output.
    """
    out: list[SmellInstance] = []
    for dset in dup_sets:
        catch_members = [
            statements[sid]
            for sid in dset.members
            if statements[sid].exception_usage is not None and statements[sid].in_catch_of
        ]
        if len(catch_members) < 2:
            continue
        by_types: dict[tuple[str, ...], list[LoggingStatement]] = {}
        for s in catch_members:
            key = tuple(sorted(_simple(c) for c in s.in_catch_of))
            by_types.setdefault(key, []).append(s)

        for key in sorted(by_types):
            group = by_types[key]
            usages = {s.exception_usage for s in group}
            if len(group) < 2 or len(usages) < 2:
                continue
            suppressed, verdicts = _ie_filters(group, escapes)
            out.append(
                SmellInstance(
                    pattern="IE",
                    set_id=dset.id,
                    members=tuple(s.id for s in sorted(group, key=lambda x: (x.file_path, x.line))),
                    evidence={
                        "caught_types": list(key),
                        "usage": {s.id: s.exception_usage for s in group},
                        "filters": verdicts,
                    },
                    suppressed_by=suppressed,
                )
            )

        # IE.1: generic Exception/Throwable/RuntimeException catch recorded
        # differently from a specific catch of the same message
        generic = [s for s in catch_members if _is_generic_catch(s.in_catch_of)]
        specific = [s for s in catch_members if not _is_generic_catch(s.in_catch_of)]
        pair_members: list[LoggingStatement] = []
        for g in generic:
            for s in specific:
                if g.exception_usage != s.exception_usage:
                    pair_members.extend((g, s))
        if pair_members:
            uniq = sorted({m.id: m for m in pair_members}.values(), key=lambda x: (x.file_path, x.line))
            out.append(
                SmellInstance(
                    pattern="IE",
                    set_id=dset.id,
                    members=tuple(m.id for m in uniq),
                    evidence={
                        "caught_types": sorted({_simple(c) for m in uniq for c in m.in_catch_of}),
                        "usage": {m.id: m.exception_usage for m in uniq},
                        "filters": {IE1: True},
                    },
                    suppressed_by=IE1,
                )
            )
    return out


# ------------------------------------------------------------------------ LM


def name_word_set(statement: LoggingStatement) -> set[str]:
    """Split+stem of the enclosing simple type name and method name."""
    simple_type = _simple(statement.enclosing_type)
    return set(split_and_stem(simple_type + " " + statement.enclosing_method))


def log_word_set(statement: LoggingStatement, stop_words: set[str]) -> set[str]:
    text = statement.static_text.replace(PLACEHOLDER, " ")
    return set(split_and_stem(text)) - stop_words


def detect_lm(
    dup_sets: list[DuplicateSet],
    statements: dict[str, LoggingStatement],
    stop_words: set[str],
) -> list[SmellInstance]:
    """Flag sets whose members share an inconsistent number of common words
    between message and class-method name. All-zero sets never flag; members
    with an empty name set are skipped."""
    out: list[SmellInstance] = []
    for dset in dup_sets:
        counted: list[tuple[LoggingStatement, int, set[str]]] = []
        for sid in dset.members:
            s = statements[sid]
            names = name_word_set(s)
            if not names:
                continue
            common = names & log_word_set(s, stop_words)
            counted.append((s, len(common), common))
        if len(counted) < 2:
            continue
        counts = {c for _, c, _ in counted}
        if len(counts) < 2 or counts == {0}:
            continue
        out.append(
            SmellInstance(
                pattern="LM",
                set_id=dset.id,
                members=tuple(s.id for s, _, _ in counted),
                evidence={
                    "common_word_counts": {s.id: c for s, c, _ in counted},
                    "common_words": {s.id: sorted(w) for s, _, w in counted},
                },
            )
        )
    return out


# ------------------------------------------------------------------------ DP


def detect_dp(
    dup_sets: list[DuplicateSet],
    statements: dict[str, LoggingStatement],
    inheritance: InheritanceGraph,
) -> list[SmellInstance]:
    """Duplicate messages residing in override-linked methods (parent/child or
    siblings under one parent class or shared interface). One instance per
    connected group of linked members within a set."""
    out: list[SmellInstance] = []
    for dset in dup_sets:
        members = [statements[sid] for sid in dset.members]
        keys = {}
        for s in members:
            keys[s.id] = (s.enclosing_type, s.enclosing_method_sig)
        # adjacency among members via override links
        adj: dict[str, set[str]] = {s.id: set() for s in members}
        linked_any = False
        for i, a in enumerate(members):
            for b in members[i + 1 :]:
                if keys[a.id] == keys[b.id]:
                    continue
                if keys[b.id] in inheritance.override_map.get(keys[a.id], ()):
                    adj[a.id].add(b.id)
                    adj[b.id].add(a.id)
                    linked_any = True
        if not linked_any:
            continue
        seen: set[str] = set()
        for s in sorted(members, key=lambda x: (x.file_path, x.line)):
            if s.id in seen or not adj[s.id]:
                continue
            comp = []
            stack = [s.id]
            while stack:
                cur = stack.pop()
                if cur in seen:
                    continue
                seen.add(cur)
                comp.append(cur)
                stack.extend(sorted(adj[cur] - seen))
            if len(comp) < 2:
                continue
            comp_stmts = sorted((statements[c] for c in comp), key=lambda x: (x.file_path, x.line))
            reasons = sorted(
                {
                    inheritance.link_reasons.get((keys[a.id], keys[b.id]), "")
                    for a in comp_stmts
                    for b in comp_stmts
                    if keys[b.id] in inheritance.override_map.get(keys[a.id], ())
                }
                - {""}
            )
            out.append(
                SmellInstance(
                    pattern="DP",
                    set_id=dset.id,
                    members=tuple(x.id for x in comp_stmts),
                    evidence={
                        "methods": sorted({f"{keys[x.id][0]}#{keys[x.id][1]}" for x in comp_stmts}),
                        "linked_via": reasons,
                    },
                )
            )
    return out


# ------------------------------------------------------- informational IL


def detect_il(
    dup_sets: list[DuplicateSet],
    statements: dict[str, LoggingStatement],
) -> list[SmellInstance]:
    """Level inconsistency within a set. Informational only, never a finding."""
    out: list[SmellInstance] = []
    for dset in dup_sets:
        members = [statements[sid] for sid in dset.members]
        levels = {s.level for s in members}
        if len(levels) < 2:
            continue
        out.append(
            SmellInstance(
                pattern="IL",
                set_id=dset.id,
                members=dset.members,
                evidence={"levels": {s.id: s.level for s in members}},
            )
        )
    return out
