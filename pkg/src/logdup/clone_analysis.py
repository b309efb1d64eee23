"""Near-miss, block-level clone detection and its correlation with duplicate
logging statements.

Blocks are normalized (comments dropped, identifiers and literals blinded,
one statement per line) and compared by line-level longest common subsequence:
similarity = 100 * |LCS| / max(|a|, |b|). Pairs at or above the threshold are
grouped transitively into clone classes; a block never pairs with its own
ancestor, which would otherwise self-match through nested double listing.
"""

from __future__ import annotations

from dataclasses import dataclass

from logdup.duplicate_index import DuplicateSet
from logdup.javasrc.lexer import CHAR, IDENT, KEYWORD, NUMBER, STRING
from logdup.log_extraction import LoggingStatement
from logdup.source_model import CodeBlock, SourceUnit

CLONE_DETECTED = "clone-detected"
MICRO_CLONE = "micro-clone"
NON_CLONE = "non-clone"


@dataclass(frozen=True)
class NormalizedBlock:
    block_id: str
    lines: tuple[str, ...]


@dataclass(frozen=True)
class CloneClass:
    id: str
    member_blocks: tuple[str, ...]
    pairwise_similarity: dict

    def mean_similarity(self) -> float:
        if not self.pairwise_similarity:
            return 100.0
        vals = list(self.pairwise_similarity.values())
        return sum(vals) / len(vals)


@dataclass(frozen=True)
class CloneCorrelation:
    dup_set_id: str
    classification: str  # clone-detected | micro-clone | non-clone
    similarity: float | None
    clone_class: str | None
    blocks: tuple[str, ...]


def normalize_block(
    block: CodeBlock, unit: SourceUnit, deleted_lines: set[int] | None = None
) -> NormalizedBlock:
    """Blind identifiers/literals and re-line the block one statement per line.

    `deleted_lines` drops every token on those source lines first (used by the
    strip-logging experiment).
    """
    toks = unit.parsed.tokens[block.tok_start : block.tok_end + 1]
    lines: list[str] = []
    cur: list[str] = []
    for t in toks:
        if deleted_lines and t.line in deleted_lines:
            continue
        if t.kind == IDENT:
            cur.append("id")
        elif t.kind in (STRING, CHAR, NUMBER):
            cur.append("lit")
        elif t.kind == KEYWORD:
            cur.append("lit" if t.text in ("true", "false", "null") else t.text)
        else:
            cur.append(t.text)
        if t.text in (";", "{", "}"):
            lines.append(" ".join(cur))
            cur = []
    if cur:
        lines.append(" ".join(cur))
    return NormalizedBlock(block_id=block.id, lines=tuple(lines))


def _lcs_len(a: tuple[str, ...], b: tuple[str, ...]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        curr = [0]
        for j, y in enumerate(b, 1):
            if x == y:
                curr.append(prev[j - 1] + 1)
            else:
                curr.append(max(prev[j], curr[-1]))
        prev = curr
    return prev[-1]


def block_similarity(a: NormalizedBlock, b: NormalizedBlock) -> float:
    """100 * LCS / max(len); 100 iff the line sequences are identical."""
    la, lb = len(a.lines), len(b.lines)
    if la == 0 and lb == 0:
        return 100.0
    if la == 0 or lb == 0:
        return 0.0
    return 100.0 * _lcs_len(a.lines, b.lines) / max(la, lb)


def _is_ancestor(blocks: dict[str, CodeBlock], a: str, b: str) -> bool:
    cur = blocks[b].parent_block
    while cur is not None:
        if cur == a:
            return True
        cur = blocks[cur].parent_block
    return False


def detect_clones(
    blocks: list[CodeBlock],
    normalized: dict[str, NormalizedBlock],
    blocks_by_id: dict[str, CodeBlock],
    threshold: float = 70.0,
    min_lines: int = 10,
) -> list[CloneClass]:
    """Transitive grouping of non-nested block pairs at >= threshold similarity.

    Blocks shorter than min_lines after normalization never enter comparison.
    """
    comparable = [b for b in blocks if len(normalized[b.id].lines) >= min_lines]
    comparable.sort(key=lambda b: b.id)
    parent: dict[str, str] = {b.id: b.id for b in comparable}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    sims: dict[tuple[str, str], float] = {}
    for i, a in enumerate(comparable):
        na = normalized[a.id]
        for b in comparable[i + 1 :]:
            nb = normalized[b.id]
            la, lb = len(na.lines), len(nb.lines)
            if 100.0 * min(la, lb) / max(la, lb) < threshold:
                continue  # LCS cannot reach the threshold
            if a.file_path == b.file_path and (
                _is_ancestor(blocks_by_id, a.id, b.id) or _is_ancestor(blocks_by_id, b.id, a.id)
            ):
                continue
            sim = block_similarity(na, nb)
            if sim >= threshold:
                key = (a.id, b.id) if a.id <= b.id else (b.id, a.id)
                sims[key] = sim
                ra, rb = find(a.id), find(b.id)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

    groups: dict[str, list[str]] = {}
    for b in comparable:
        root = find(b.id)
        groups.setdefault(root, []).append(b.id)
    classes = []
    idx = 0
    for root in sorted(groups):
        members = sorted(groups[root])
        if len(members) < 2:
            continue
        idx += 1
        classes.append(
            CloneClass(
                id=f"c{idx}",
                member_blocks=tuple(members),
                pairwise_similarity={
                    k: v for k, v in sorted(sims.items()) if k[0] in members and k[1] in members
                },
            )
        )
    return classes


def _containing(block: CodeBlock, stmt: LoggingStatement) -> bool:
    return block.file_path == stmt.file_path and block.start_line <= stmt.line <= block.end_line


def correlate(
    dup_sets: list[DuplicateSet],
    clone_classes: list[CloneClass],
    statements: dict[str, LoggingStatement],
    blocks_by_id: dict[str, CodeBlock],
    normalized: dict[str, NormalizedBlock],
    threshold: float = 70.0,
    min_lines: int = 10,
) -> list[CloneCorrelation]:
    """Classify every duplicate set as clone-detected, micro-clone or non-clone.

    clone-detected: two members sit in two different member blocks of one
    clone class. micro-clone: members' innermost blocks are all below the
    minimum clone size yet still pairwise similar at the threshold.
    """
    out: list[CloneCorrelation] = []
    for dset in dup_sets:
        members = [statements[sid] for sid in dset.members]
        hit: CloneCorrelation | None = None
        for cc in clone_classes:
            hosts: dict[str, set[str]] = {}
            for bid in cc.member_blocks:
                blk = blocks_by_id[bid]
                for s in members:
                    if _containing(blk, s):
                        hosts.setdefault(bid, set()).add(s.id)
            if len(hosts) >= 2 and len(set().union(*hosts.values())) >= 2:
                out.append(
                    CloneCorrelation(
                        dup_set_id=dset.id,
                        classification=CLONE_DETECTED,
                        similarity=round(cc.mean_similarity(), 1),
                        clone_class=cc.id,
                        blocks=tuple(sorted(hosts)),
                    )
                )
                hit = out[-1]
                break
        if hit is not None:
            continue

        inner = sorted(
            {s.enclosing_block for s in members if s.enclosing_block is not None}
        )
        micro_sim: float | None = None
        if len(inner) >= 2 and all(
            len(normalized[bid].lines) < min_lines for bid in inner if bid in normalized
        ):
            best = 0.0
            for i, a in enumerate(inner):
                for b in inner[i + 1 :]:
                    if a in normalized and b in normalized:
                        best = max(best, block_similarity(normalized[a], normalized[b]))
            if best >= threshold:
                micro_sim = round(best, 1)
        if micro_sim is not None:
            out.append(
                CloneCorrelation(
                    dup_set_id=dset.id,
                    classification=MICRO_CLONE,
                    similarity=micro_sim,
                    clone_class=None,
                    blocks=tuple(inner),
                )
            )
        else:
            out.append(
                CloneCorrelation(
                    dup_set_id=dset.id,
                    classification=NON_CLONE,
                    similarity=None,
                    clone_class=None,
                    blocks=(),
                )
            )
    return out


def clone_summary(dup_sets: list[DuplicateSet], correlations: list[CloneCorrelation]) -> dict:
    clone = [c for c in correlations if c.classification == CLONE_DETECTED]
    micro = [c for c in correlations if c.classification == MICRO_CLONE]
    total = len(dup_sets)
    avg = round(sum(c.similarity for c in clone) / len(clone), 1) if clone else None
    return {
        "dup_sets": total,
        "clone_sets": len(clone),
        "clone_set_pct": round(100.0 * len(clone) / total, 1) if total else 0.0,
        "avg_similarity": avg,
        "micro_clone_sets": len(micro),
        "non_clone_sets": len(correlations) - len(clone) - len(micro),
    }


def strip_logs_and_recompute(
    correlations: list[CloneCorrelation],
    dup_sets: list[DuplicateSet],
    statements: dict[str, LoggingStatement],
    blocks_by_id: dict[str, CodeBlock],
    units_by_path: dict[str, SourceUnit],
    threshold: float = 70.0,
    min_lines: int = 10,
) -> dict:
    """Delete each clone-detected set's log lines from its hosting blocks and
    re-check the pair: how many sets stop being clones (too short or too
    dissimilar)?"""
    sets_by_id = {d.id: d for d in dup_sets}
    clone_corrs = [c for c in correlations if c.classification == CLONE_DETECTED]
    reduced = 0
    dropped_sets: list[str] = []
    for corr in clone_corrs:
        dset = sets_by_id[corr.dup_set_id]
        deleted_by_file: dict[str, set[int]] = {}
        for sid in dset.members:
            s = statements[sid]
            deleted_by_file.setdefault(s.file_path, set()).update(
                range(s.line, s.end_line + 1)
            )
        stripped: dict[str, NormalizedBlock] = {}
        for bid in corr.blocks:
            blk = blocks_by_id[bid]
            unit = units_by_path[blk.file_path]
            stripped[bid] = normalize_block(blk, unit, deleted_by_file.get(blk.file_path, set()))
        still = False
        ids = sorted(corr.blocks)
        for i, a in enumerate(ids):
            for b in ids[i + 1 :]:
                na, nb = stripped[a], stripped[b]
                if len(na.lines) < min_lines or len(nb.lines) < min_lines:
                    continue
                if block_similarity(na, nb) >= threshold:
                    still = True
                    break
            if still:
                break
        if not still:
            reduced += 1
            dropped_sets.append(corr.dup_set_id)
    n = len(clone_corrs)
    return {
        "clone_sets": n,
        "clone_sets_ndl": n - reduced,
        "reduced": reduced,
        "percent_reduced": round(100.0 * reduced / n, 1) if n else 0.0,
        "reduced_set_ids": sorted(dropped_sets),
    }
