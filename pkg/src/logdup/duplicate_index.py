"""Grouping of logging statements into duplicate sets, plus corpus counters."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from logdup.log_extraction import LoggingStatement


@dataclass(frozen=True)
class DuplicateSet:
    id: str
    key: str  # the shared static text
    members: tuple[str, ...]  # statement ids, ordered by (file, line)
    span_types: frozenset[str]


@dataclass(frozen=True)
class CorpusStats:
    nol: int  # logging statements
    nodl: int  # duplicate logging statements
    nods: int  # duplicate sets

    @property
    def duplicate_pct(self) -> float:
        return 100.0 * self.nodl / self.nol if self.nol else 0.0


def set_id_for(key: str) -> str:
    return "d" + hashlib.sha1(key.encode("utf-8")).hexdigest()[:12]


def build_duplicate_sets(statements: list[LoggingStatement]) -> list[DuplicateSet]:
    """Exact grouping by rendered static text; singletons and empty texts drop out."""
    by_text: dict[str, list[LoggingStatement]] = {}
    for s in statements:
        if not s.static_text:
            continue  # an empty key would lump unrelated `log.x(e)` calls together
        by_text.setdefault(s.static_text, []).append(s)
    sets = []
    for key in sorted(by_text):
        members = sorted(by_text[key], key=lambda s: (s.file_path, s.line, s.id))
        if len(members) < 2:
            continue
        sets.append(
            DuplicateSet(
                id=set_id_for(key),
                key=key,
                members=tuple(s.id for s in members),
                span_types=frozenset(s.enclosing_type for s in members),
            )
        )
    return sets


def corpus_stats(sets: list[DuplicateSet], statements: list[LoggingStatement]) -> CorpusStats:
    return CorpusStats(
        nol=len(statements),
        nodl=sum(len(d.members) for d in sets),
        nods=len(sets),
    )
