"""Scan orchestration and report emission.

`run_scan` drives the full pipeline: parse -> extract -> group -> detect
(-> clone analysis) and returns an immutable result whose emitted form is
byte-identical for identical (corpus, config) inputs regardless of thread
count. Findings are sorted by (pattern, file, line) for stable diffs.
"""

from __future__ import annotations

import fnmatch
import json
from dataclasses import dataclass, field

from logdup import __version__
from logdup import clone_analysis as clones
from logdup import smell_detectors as smells
from logdup.config import ScanConfig
from logdup.duplicate_index import CorpusStats, DuplicateSet, build_duplicate_sets, corpus_stats
from logdup.log_extraction import (
    LoggingStatement,
    catch_blocks_passing_exception,
    extract_logging_statements,
)
from logdup.source_model import (
    CodeBlock,
    InheritanceGraph,
    SourceUnit,
    build_inheritance_graph,
    enumerate_blocks,
    parse_tree,
)
from logdup.textwords import compute_stop_words, split_and_stem

EXIT_CLEAN = 0
EXIT_FINDINGS = 1
EXIT_FATAL = 2


@dataclass
class ScanResult:
    config: ScanConfig
    units: list[SourceUnit]
    skipped_files: list[str]
    warnings: list[str]
    statements: list[LoggingStatement]
    statements_by_id: dict[str, LoggingStatement]
    dup_sets: list[DuplicateSet]
    stats: CorpusStats
    inheritance: InheritanceGraph
    stop_words: set[str]
    instances: list[smells.SmellInstance]  # every detection incl. suppressed
    informational_il: list[smells.SmellInstance]
    blocks_by_id: dict[str, CodeBlock] = field(default_factory=dict)
    clone_correlations: list[clones.CloneCorrelation] = field(default_factory=list)
    clone_summary: dict | None = None
    strip_experiment: dict | None = None

    @property
    def findings(self) -> list[smells.SmellInstance]:
        return [i for i in self.instances if i.suppressed_by is None]

    @property
    def suppressed(self) -> list[smells.SmellInstance]:
        return [i for i in self.instances if i.suppressed_by is not None]

    def exit_code(self) -> int:
        return EXIT_FINDINGS if self.findings else EXIT_CLEAN


def _glob_filter(units: list[SourceUnit], config: ScanConfig) -> list[SourceUnit]:
    out = []
    for u in units:
        rel = u.file_path
        if config.include_globs and not any(fnmatch.fnmatch(rel, g) for g in config.include_globs):
            continue
        if any(fnmatch.fnmatch(rel, g) for g in config.exclude_globs):
            continue
        out.append(u)
    return out


def _sort_key(result: ScanResult):
    def key(inst: smells.SmellInstance):
        first = result.statements_by_id[inst.members[0]]
        return (inst.pattern, first.file_path, first.line, inst.set_id)

    return key


def run_scan(config: ScanConfig, threads: int | None = None) -> ScanResult:
    units: list[SourceUnit] = []
    skipped: list[str] = []
    warnings: list[str] = []
    for root in config.roots:
        u, s, w = parse_tree(root, include_tests=config.include_tests, threads=threads)
        units.extend(u)
        skipped.extend(s)
        warnings.extend(w)
    units = _glob_filter(units, config)

    statements: list[LoggingStatement] = []
    escapes: set[str] = set()
    for u in units:
        statements.extend(extract_logging_statements(u, config.logger_config))
        escapes |= catch_blocks_passing_exception(u, config.logger_config)
    statements.sort(key=lambda s: (s.file_path, s.line, s.id))
    by_id = {s.id: s for s in statements}

    dup_sets = build_duplicate_sets(statements)
    stats = corpus_stats(dup_sets, statements)
    inheritance = build_inheritance_graph(units)
    stop_words = compute_stop_words(
        (split_and_stem(s.static_text) for s in statements), cap=config.stopword_cap
    )
    blocks_by_id = {b.id: b for u in units for b in u.blocks}

    instances: list[smells.SmellInstance] = []
    if "IC" in config.patterns:
        instances.extend(smells.detect_ic(dup_sets, by_id, blocks_by_id))
    if "IE" in config.patterns:
        instances.extend(smells.detect_ie(dup_sets, by_id, escapes))
    if "LM" in config.patterns:
        instances.extend(smells.detect_lm(dup_sets, by_id, stop_words))
    if "DP" in config.patterns:
        instances.extend(smells.detect_dp(dup_sets, by_id, inheritance))
    informational_il = smells.detect_il(dup_sets, by_id)

    result = ScanResult(
        config=config,
        units=units,
        skipped_files=skipped,
        warnings=warnings,
        statements=statements,
        statements_by_id=by_id,
        dup_sets=dup_sets,
        stats=stats,
        inheritance=inheritance,
        stop_words=stop_words,
        instances=instances,
        informational_il=informational_il,
        blocks_by_id=blocks_by_id,
    )
    result.instances.sort(key=_sort_key(result))

    if config.with_clone_analysis:
        _run_clone_analysis(result, threads=threads)
    return result


def _run_clone_analysis(result: ScanResult, threads: int | None = None) -> None:
    config = result.config
    units_by_path = {u.file_path: u for u in result.units}
    comparable = enumerate_blocks(result.units, config.clone_min_lines)
    normalized: dict[str, clones.NormalizedBlock] = {}
    for u in result.units:
        for b in u.blocks:
            normalized[b.id] = clones.normalize_block(b, u)
    classes = clones.detect_clones(
        comparable,
        normalized,
        result.blocks_by_id,
        threshold=config.clone_threshold,
        min_lines=config.clone_min_lines,
    )
    correlations = clones.correlate(
        result.dup_sets,
        classes,
        result.statements_by_id,
        result.blocks_by_id,
        normalized,
        threshold=config.clone_threshold,
        min_lines=config.clone_min_lines,
    )
    summary = clones.clone_summary(result.dup_sets, correlations)
    strip = clones.strip_logs_and_recompute(
        correlations,
        result.dup_sets,
        result.statements_by_id,
        result.blocks_by_id,
        units_by_path,
        threshold=config.clone_threshold,
        min_lines=config.clone_min_lines,
    )
    result.clone_correlations = correlations
    result.clone_summary = summary
    result.strip_experiment = strip


# ------------------------------------------------------------------ emission


def _member_entry(result: ScanResult, sid: str) -> dict:
    s = result.statements_by_id[sid]
    return {
        "file": s.file_path,
        "line": s.line,
        "level": s.level,
        "type": s.enclosing_type,
        "method": s.enclosing_method,
    }


def _instance_entry(result: ScanResult, inst: smells.SmellInstance) -> dict:
    dset = next(d for d in result.dup_sets if d.id == inst.set_id)
    entry = {
        "pattern": inst.pattern,
        "set_id": inst.set_id,
        "static_text": dset.key,
        "members": [_member_entry(result, sid) for sid in inst.members],
        "evidence": inst.evidence,
    }
    if inst.suppressed_by is not None:
        entry["suppressed_by"] = inst.suppressed_by
    return entry


def report_dict(result: ScanResult) -> dict:
    cfg = result.config
    findings = [_instance_entry(result, i) for i in result.findings if i.pattern in cfg.patterns]
    summary = {p: sum(1 for f in findings if f["pattern"] == p) for p in cfg.patterns}
    summary["total"] = len(findings)
    doc = {
        "tool": {"name": "logdup", "version": __version__},
        "config_fingerprint": cfg.fingerprint(),
        "roots": sorted(cfg.roots),
        "patterns": list(cfg.patterns),
        "stats": {
            "files_scanned": len(result.units),
            "files_skipped": len(result.skipped_files),
            "logging_statements": result.stats.nol,
            "duplicate_statements": result.stats.nodl,
            "duplicate_sets": result.stats.nods,
            "duplicate_pct": round(result.stats.duplicate_pct, 2),
        },
        "summary": summary,
        "findings": findings,
        "suppressed": [
            _instance_entry(result, i) for i in result.suppressed if cfg.verbose
        ],
        "informational": {
            "IL": [_instance_entry(result, i) for i in result.informational_il]
            if cfg.verbose
            else []
        },
        "warnings": sorted(result.warnings),
        "parse_diagnostics": sorted(
            f"{u.file_path}:{line}: {msg}" for u in result.units for line, msg in u.parse_diagnostics
        ),
    }
    if result.clone_summary is not None:
        doc["clones"] = {
            "summary": result.clone_summary,
            "strip_experiment": result.strip_experiment,
            "correlations": [
                {
                    "set_id": c.dup_set_id,
                    "classification": c.classification,
                    "similarity": c.similarity,
                    "clone_class": c.clone_class,
                }
                for c in sorted(result.clone_correlations, key=lambda c: c.dup_set_id)
            ],
        }
    else:
        doc["clones"] = None
    return doc


def _fmt_pct(value: float | None) -> str:
    return "N/A" if value is None else f"{value:.1f}%"


def emit(result: ScanResult, fmt: str | None = None) -> bytes:
    fmt = fmt or result.config.output_format
    if fmt == "json":
        doc = report_dict(result)
        return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode(
            "utf-8"
        )
    if fmt != "text":
        raise ValueError(f"unknown output format {fmt!r}")
    doc = report_dict(result)
    st = doc["stats"]
    lines = [
        "logdup scan report",
        "==================",
        f"roots: {', '.join(doc['roots'])}",
        f"config: {doc['config_fingerprint']}  patterns: {','.join(doc['patterns'])}",
        f"files scanned: {st['files_scanned']} (skipped: {st['files_skipped']})",
        f"logging statements (NOL): {st['logging_statements']}",
        f"duplicate statements (NODL): {st['duplicate_statements']} ({st['duplicate_pct']}%)",
        f"duplicate sets (NODS): {st['duplicate_sets']}",
        "",
        "findings: "
        + "  ".join(f"{p}: {doc['summary'][p]}" for p in doc["patterns"])
        + f"  total: {doc['summary']['total']}",
    ]
    for f in doc["findings"]:
        lines.append("")
        lines.append(f"[{f['pattern']}] {f['static_text']!r}")
        for m in f["members"]:
            lines.append(
                f"    {m['file']}:{m['line']} ({m['level']}, {m['type']}.{m['method']})"
            )
    if result.config.verbose and doc["suppressed"]:
        lines.append("")
        lines.append("suppressed (justifiable cases):")
        for f in doc["suppressed"]:
            lines.append(f"  [{f['pattern']}/{f['suppressed_by']}] {f['static_text']!r}")
            for m in f["members"]:
                lines.append(f"      {m['file']}:{m['line']} ({m['level']})")
    if result.config.verbose and doc["informational"]["IL"]:
        lines.append("")
        lines.append("informational level inconsistencies (IL, never findings):")
        for f in doc["informational"]["IL"]:
            levels = ",".join(sorted(set(f["evidence"]["levels"].values())))
            lines.append(f"  [IL] {f['static_text']!r} levels: {levels}")
    if doc["clones"] is not None:
        cs = doc["clones"]["summary"]
        lines.append("")
        lines.append(
            f"clone analysis: {cs['clone_sets']}/{cs['dup_sets']} duplicate sets in clones"
            f" ({cs['clone_set_pct']}%), avg similarity "
            + (f"{cs['avg_similarity']}" if cs["avg_similarity"] is not None else "N/A")
            + f", micro-clones: {cs['micro_clone_sets']}"
        )
        se = doc["clones"]["strip_experiment"]
        lines.append(
            f"after stripping duplicate logs: {se['clone_sets_ndl']}/{se['clone_sets']} still clones"
            f" ({se['percent_reduced']}% reduced)"
        )
    for w in doc["warnings"]:
        lines.append(f"warning: {w}")
    return ("\n".join(lines) + "\n").encode("utf-8")
