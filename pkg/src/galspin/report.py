"""Report rendering: human-readable text and a versioned JSON schema."""

from __future__ import annotations

import json
from typing import Sequence

from .config import SuiteConfig
from .verdict import Status, Verdict

SCHEMA_VERSION = 1


def suite_outcomes(verdicts: Sequence[Verdict]) -> dict:
    """Suite name -> True when every verdict of that suite passed."""
    outcomes: dict = {}
    for verdict in verdicts:
        suite = verdict.details.get("suite", "unknown")
        outcomes[suite] = outcomes.get(suite, True) and verdict.passed
    return outcomes


def exit_code(verdicts: Sequence[Verdict]) -> int:
    """0 when every verdict passed, 1 otherwise (2 is reserved for config errors)."""
    return 0 if all(v.passed for v in verdicts) else 1


def _group_key(label: str) -> str:
    return label.split("-", 1)[0]


def emit_text(verdicts: Sequence[Verdict], config: SuiteConfig | None = None) -> str:
    lines = []
    if config is not None:
        lines.append(f"seed {config.seed}; suites: {', '.join(config.suites) or '(none)'}")
        lines.append("")
    groups: dict = {}
    for verdict in verdicts:
        groups.setdefault(_group_key(verdict.label), []).append(verdict)
    for group in sorted(groups):
        lines.append(f"== {group} ==")
        for verdict in groups[group]:
            bits = [f"{verdict.label}: {verdict.status.value}"]
            if verdict.residual is not None:
                bits.append(f"residual={verdict.residual:.3g}")
            if verdict.witness is not None:
                bits.append(f"witness={json.dumps(verdict.witness, sort_keys=True)}")
            bits.append(f"{verdict.seconds:.2f}s")
            lines.append("  " + "  ".join(bits))
        lines.append("")
    outcomes = suite_outcomes(verdicts)
    passed = sum(1 for ok in outcomes.values() if ok)
    lines.append(f"{passed}/{len(outcomes)} suites passed")
    return "\n".join(lines) + "\n"


def emit_json(verdicts: Sequence[Verdict], config: SuiteConfig | None = None) -> str:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "config": config.echo() if config is not None else None,
        "verdicts": [v.to_dict() for v in verdicts],
        "summary": {
            "total_verdicts": len(verdicts),
            "passed_verdicts": sum(1 for v in verdicts if v.passed),
            "suites": {
                name: ("PASS" if ok else "FAIL")
                for name, ok in suite_outcomes(verdicts).items()
            },
        },
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def parse_json_report(text: str) -> tuple[dict, list[Verdict]]:
    payload = json.loads(text)
    if payload.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported report schema {payload.get('schema_version')!r}"
        )
    verdicts = [Verdict.from_dict(entry) for entry in payload["verdicts"]]
    return payload, verdicts


def strip_timings(report_json: str) -> str:
    """Canonical form for determinism comparisons: timing fields removed."""
    payload = json.loads(report_json)
    for verdict in payload.get("verdicts", []):
        verdict.pop("seconds", None)
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
