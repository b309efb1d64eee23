"""Command-line entry point: `logdup scan` and `logdup eval`."""

from __future__ import annotations

import argparse
import os
import sys

from logdup.config import ScanConfig, load_config_file, parse_patterns
from logdup.evaluation import (
    CorpusDriftError,
    load_ground_truth,
    random_baseline,
    score,
)
from logdup.report import EXIT_FATAL, emit, run_scan


def _add_scan_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("root", help="directory tree of .java files")
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--patterns", help="comma list of ic,ie,lm,dp (default: all)")
    p.add_argument("--format", choices=("text", "json"), dest="fmt", help="output format")
    p.add_argument("--stopwords", type=int, help="stop-word cap for LM (default 50)")
    p.add_argument("--with-clone-analysis", action="store_true", default=None,
                   help="run the O(n^2) block clone analysis")
    p.add_argument("--clone-threshold", type=float, help="clone similarity percent (default 70)")
    p.add_argument("--clone-min-lines", type=int, help="minimum comparable block lines (default 10)")
    p.add_argument("--include-tests", action="store_true", default=None,
                   help="also scan test directories and *Test.java files")
    p.add_argument("--verbose", action="store_true", default=None,
                   help="include suppressed and informational results")
    p.add_argument("-o", "--output", help="write the report to a file instead of stdout")


def build_config(args: argparse.Namespace) -> ScanConfig:
    cfg = ScanConfig()
    if args.config:
        cfg = load_config_file(args.config, cfg)
    updates: dict = {"roots": (args.root,)}
    if args.patterns is not None:
        updates["patterns"] = parse_patterns(args.patterns)
    if args.fmt is not None:
        updates["output_format"] = args.fmt
    if args.stopwords is not None:
        updates["stopword_cap"] = args.stopwords
    if args.with_clone_analysis is not None:
        updates["with_clone_analysis"] = args.with_clone_analysis
    if args.clone_threshold is not None:
        updates["clone_threshold"] = args.clone_threshold
    if args.clone_min_lines is not None:
        updates["clone_min_lines"] = args.clone_min_lines
    if args.include_tests is not None:
        updates["include_tests"] = args.include_tests
    if args.verbose is not None:
        updates["verbose"] = args.verbose
    from dataclasses import replace

    return replace(cfg, **updates)


def _fmt_pct(value: float | None) -> str:
    return "N/A" if value is None else f"{value:.1f}%"


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="logdup",
        description="Scan Java source trees for duplicate logging statements "
        "and the IC/IE/LM/DP logging code smells.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan_p = sub.add_parser("scan", help="scan a source tree and report findings")
    _add_scan_options(scan_p)

    eval_p = sub.add_parser("eval", help="score findings against a ground-truth file")
    _add_scan_options(eval_p)
    eval_p.add_argument("--truth", required=True, help="ground-truth sidecar file")
    eval_p.add_argument("--pattern", required=True, help="pattern to score (ic/ie/lm/dp)")
    eval_p.add_argument("--baseline", action="store_true", help="also run the random baseline")
    eval_p.add_argument("--seed", type=int, default=0)
    eval_p.add_argument("--iterations", type=int, default=30)

    args = parser.parse_args(argv)

    if not os.path.isdir(args.root):
        print(f"error: root {args.root!r} is not a readable directory", file=sys.stderr)
        return EXIT_FATAL
    try:
        config = build_config(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL

    result = run_scan(config)

    if args.command == "scan":
        payload = emit(result)
        if args.output:
            with open(args.output, "wb") as fh:
                fh.write(payload)
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
        return result.exit_code()

    # eval
    pattern = args.pattern.strip().upper()
    try:
        truth = load_ground_truth(args.truth)
        outcome = score(result.instances, truth, pattern, result.dup_sets, result.statements_by_id)
    except (CorpusDriftError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL
    print(
        f"pattern={pattern} detected={outcome['detected']} correct={outcome['correct']}"
        f" truth={outcome['truth']} precision={_fmt_pct(outcome['precision'])}"
        f" recall={_fmt_pct(outcome['recall'])}"
    )
    if args.baseline:
        from logdup.evaluation import resolve_truth

        positives = resolve_truth(truth, result.dup_sets, result.statements_by_id, pattern)
        candidates = [d.id for d in result.dup_sets]
        base = random_baseline(candidates, positives, iterations=args.iterations, seed=args.seed)
        print(
            f"baseline iterations={base['iterations']} positive_rate={base['positive_rate']:.4f}"
            f" mean_precision={_fmt_pct(base['mean_precision'])}"
            f" mean_recall={_fmt_pct(base['mean_recall'])}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
