"""
📋 REPORTS
==========
Command results in two renderings that carry the same verdict string:
human-readable emoji lines and JSON (--json).
"""

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import psutil

from core.intervals import format_rational

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

STATUS_ICONS = {EXIT_PASS: "✅", EXIT_FAIL: "❌", EXIT_ERROR: "⚠️"}


def to_plain(value: Any) -> Any:
    """Exact values as JSON-friendly data: rationals become "p/q" strings"""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {str(key): to_plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(item) for item in value]
    return str(value)


def format_value(value: Any) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(format_value(item) for item in value) + ")"
    return str(value)


def memory_usage_mb() -> float:
    return psutil.Process().memory_info().rss / (1024 * 1024)


@dataclass
class Report:
    command: str
    verdict: str = ""
    exit_code: int = EXIT_PASS
    witnesses: List[Tuple[str, Any]] = field(default_factory=list)
    details: List[str] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    started: float = field(default_factory=time.time)
    elapsed: Optional[float] = None
    rss_mb: Optional[float] = None

    def witness(self, label: str, value: Any) -> "Report":
        if value is not None:
            self.witnesses.append((label, value))
        return self

    def detail(self, line: str) -> "Report":
        self.details.append(line)
        return self

    def finish(self, verdict: str, exit_code: int) -> "Report":
        self.verdict = verdict
        self.exit_code = exit_code
        self.elapsed = time.time() - self.started
        self.rss_mb = memory_usage_mb()
        return self

    def as_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "verdict": self.verdict,
            "exit_code": self.exit_code,
            "witnesses": [[label, to_plain(value)] for label, value in self.witnesses],
            "details": list(self.details),
            "data": to_plain(self.data),
            "elapsed_seconds": round(self.elapsed or 0.0, 6),
            "rss_mb": round(self.rss_mb or 0.0, 1),
        }

    def render_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False)

    def render_text(self) -> str:
        lines = [f"{STATUS_ICONS.get(self.exit_code, '⚠️')} {self.verdict}", f"   command: {self.command}"]
        for label, value in self.witnesses:
            lines.append(f"   🔍 {label}: {format_value(value)}")
        lines.extend(f"   {line}" for line in self.details)
        if self.elapsed is not None:
            lines.append(f"   ⏱️  {self.elapsed:.3f}s, {self.rss_mb or 0.0:.1f} MB")
        return "\n".join(lines)

    def render(self, as_json: bool = False) -> str:
        return self.render_json() if as_json else self.render_text()


def command_echo(argv: Sequence[str]) -> str:
    return " ".join(argv)
