"""Scoring of detector output against a labeled ground truth, plus the random
prediction baseline.

Ground truth lives in a plain-text sidecar keyed by the set's static text and
its member locations, so fixtures survive small line-number churn (a ±2 line
tolerance is applied when resolving locations).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from logdup.duplicate_index import DuplicateSet
from logdup.log_extraction import LoggingStatement
from logdup.smell_detectors import SmellInstance

LINE_TOLERANCE = 2


class CorpusDriftError(RuntimeError):
    """A ground-truth entry no longer resolves against the scanned corpus."""


@dataclass(frozen=True, order=True)
class TruthEntry:
    pattern: str
    locations: tuple[tuple[str, int], ...]  # (file, line), sorted
    static_text: str


@dataclass
class GroundTruth:
    entries: list[TruthEntry]

    def patterns(self) -> set[str]:
        return {e.pattern for e in self.entries}


def load_ground_truth(path: str) -> GroundTruth:
    """Read the sidecar format: `PATTERN<TAB>file:line,file:line<TAB>json-text`."""
    entries: list[TruthEntry] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t", 2)
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 tab-separated fields")
            pattern, locs_raw, text_raw = parts
            locs = []
            for loc in locs_raw.split(","):
                f, _, ln = loc.rpartition(":")
                locs.append((f, int(ln)))
            entries.append(
                TruthEntry(
                    pattern=pattern.strip(),
                    locations=tuple(sorted(locs)),
                    static_text=json.loads(text_raw),
                )
            )
    return GroundTruth(entries=entries)


def dump_ground_truth(entries: list[TruthEntry]) -> str:
    lines = ["# pattern\tfile:line,...\tstatic_text (json-encoded)"]
    for e in sorted(entries, key=lambda x: (x.pattern, x.locations)):
        locs = ",".join(f"{f}:{ln}" for f, ln in e.locations)
        lines.append(f"{e.pattern}\t{locs}\t{json.dumps(e.static_text, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


def _locations_match(
    truth_locs: tuple[tuple[str, int], ...], member_locs: list[tuple[str, int]]
) -> bool:
    """Every truth location pairs with a distinct member in the same file
    within the line tolerance, and no member is left over."""
    if len(truth_locs) != len(member_locs):
        return False
    remaining = list(member_locs)
    for f, ln in truth_locs:
        best = None
        for k, (mf, ml) in enumerate(remaining):
            if mf == f and abs(ml - ln) <= LINE_TOLERANCE:
                best = k
                break
        if best is None:
            return False
        remaining.pop(best)
    return not remaining


def resolve_truth(
    truth: GroundTruth,
    dup_sets: list[DuplicateSet],
    statements: dict[str, LoggingStatement],
    pattern: str,
) -> set[str]:
    """Duplicate-set ids flagged problematic for `pattern`.

    Raises CorpusDriftError when an entry's text or locations no longer
    resolve: silently scoring against a stale fixture would be worse.
    """
    by_key = {d.key: d for d in dup_sets}
    flagged: set[str] = set()
    for e in truth.entries:
        if e.pattern != pattern:
            continue
        dset = by_key.get(e.static_text)
        if dset is None:
            raise CorpusDriftError(
                f"ground-truth text {e.static_text!r} is not a duplicate set in this scan"
            )
        member_locs = [(statements[sid].file_path, statements[sid].line) for sid in dset.members]
        if not _locations_match(e.locations, member_locs):
            raise CorpusDriftError(
                f"ground-truth locations for {e.static_text!r} drifted: "
                f"expected {e.locations}, scan has {sorted(member_locs)}"
            )
        flagged.add(dset.id)
    return flagged


def precision_recall(detected: int, correct: int, truth: int) -> tuple[float | None, float | None]:
    """Percentages; None where the denominator is zero (reported as N/A)."""
    precision = 100.0 * correct / detected if detected else None
    recall = 100.0 * correct / truth if truth else None
    return precision, recall


def score(
    instances: list[SmellInstance],
    truth: GroundTruth,
    pattern: str,
    dup_sets: list[DuplicateSet],
    statements: dict[str, LoggingStatement],
) -> dict:
    """Precision/recall of unsuppressed findings for one pattern, per set."""
    truth_ids = resolve_truth(truth, dup_sets, statements, pattern)
    detected_ids = {
        i.set_id for i in instances if i.pattern == pattern and i.suppressed_by is None
    }
    correct = len(detected_ids & truth_ids)
    precision, recall = precision_recall(len(detected_ids), correct, len(truth_ids))
    return {
        "pattern": pattern,
        "detected": len(detected_ids),
        "correct": correct,
        "truth": len(truth_ids),
        "precision": precision,
        "recall": recall,
    }


def random_baseline(
    candidates: list[str],
    positives: set[str],
    iterations: int = 30,
    seed: int = 0,
) -> dict:
    """Random prediction by label distribution: each candidate is predicted
    positive with probability equal to the positive rate; precision/recall are
    averaged across iterations. Deterministic for a given seed."""
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    n = len(candidates)
    p = len(positives) / n if n else 0.0
    rng = random.Random(seed)
    precisions: list[float] = []
    recalls: list[float] = []
    for _ in range(iterations):
        predicted = {c for c in candidates if rng.random() < p}
        correct = len(predicted & positives)
        if predicted:
            precisions.append(100.0 * correct / len(predicted))
        if positives:
            recalls.append(100.0 * correct / len(positives))
    return {
        "iterations": iterations,
        "positive_rate": p,
        "mean_precision": sum(precisions) / len(precisions) if precisions else None,
        "mean_recall": sum(recalls) / len(recalls) if recalls else None,
    }
