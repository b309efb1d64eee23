"""Scan configuration: defaults, config-file parsing, flag overrides.

The config file is a flat `key = value` text format; command-line flags win
over file values. Defaults reproduce the standard detector configuration
(all four patterns, 50 stop words, clone threshold 70% over 10-line blocks).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace

from logdup.log_extraction import DEFAULT_RECEIVER_PATTERN, LEVELS, LoggerConfig

ALL_PATTERNS = ("IC", "IE", "LM", "DP")


@dataclass(frozen=True)
class ScanConfig:
    roots: tuple[str, ...] = ()
    include_globs: tuple[str, ...] = ()
    exclude_globs: tuple[str, ...] = ()
    include_tests: bool = False
    patterns: tuple[str, ...] = ALL_PATTERNS
    stopword_cap: int = 50
    with_clone_analysis: bool = False
    clone_threshold: float = 70.0
    clone_min_lines: int = 10
    output_format: str = "text"
    verbose: bool = False
    logger_config: LoggerConfig = field(default_factory=LoggerConfig)

    def fingerprint(self) -> str:
        payload = {
            "include_globs": self.include_globs,
            "exclude_globs": self.exclude_globs,
            "include_tests": self.include_tests,
            "patterns": self.patterns,
            "stopword_cap": self.stopword_cap,
            "with_clone_analysis": self.with_clone_analysis,
            "clone_threshold": self.clone_threshold,
            "clone_min_lines": self.clone_min_lines,
            "receiver_pattern": self.logger_config.receiver_pattern,
            "level_methods": self.logger_config.level_methods,
        }
        blob = json.dumps(payload, sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:12]


def parse_patterns(raw: str) -> tuple[str, ...]:
    out = []
    for p in raw.split(","):
        p = p.strip().upper()
        if not p:
            continue
        if p not in ALL_PATTERNS:
            raise ValueError(f"unknown pattern {p!r}; choose from {','.join(ALL_PATTERNS).lower()}")
        out.append(p)
    if not out:
        raise ValueError("no patterns selected")
    return tuple(out)


def load_config_file(path: str, base: ScanConfig | None = None) -> ScanConfig:
    cfg = base or ScanConfig()
    level_methods = dict(cfg.logger_config.level_methods)
    receiver = cfg.logger_config.receiver_pattern
    updates: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key == "patterns":
                updates["patterns"] = parse_patterns(value)
            elif key == "stopwords":
                updates["stopword_cap"] = int(value)
            elif key == "include_tests":
                updates["include_tests"] = value.lower() in ("1", "true", "yes")
            elif key == "with_clone_analysis":
                updates["with_clone_analysis"] = value.lower() in ("1", "true", "yes")
            elif key == "clone_threshold":
                updates["clone_threshold"] = float(value)
            elif key == "clone_min_lines":
                updates["clone_min_lines"] = int(value)
            elif key == "format":
                updates["output_format"] = value
            elif key == "include":
                updates["include_globs"] = tuple(v.strip() for v in value.split(",") if v.strip())
            elif key == "exclude":
                updates["exclude_globs"] = tuple(v.strip() for v in value.split(",") if v.strip())
            elif key == "logger.receiver_pattern":
                receiver = value
            elif key.startswith("logger.method."):
                method = key[len("logger.method.") :]
                level = value.lower()
                known = set(LEVELS) | {"unknown"}
                if level not in known:
                    raise ValueError(f"{path}:{lineno}: unknown level {value!r}")
                level_methods[method] = level
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    updates["logger_config"] = LoggerConfig(
        receiver_pattern=receiver,
        level_methods=tuple(sorted(level_methods.items())),
    )
    return replace(cfg, **updates)


def default_logger_config() -> LoggerConfig:
    return LoggerConfig(
        receiver_pattern=DEFAULT_RECEIVER_PATTERN,
        level_methods=tuple((lv, lv) for lv in LEVELS),
    )
