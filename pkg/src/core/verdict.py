"""
Result Types
============
Boolean checks with exact witnesses, and verdict certificates.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a decidable check; a failed check carries a witness"""
    passed: bool
    witness: Optional[Any] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


# Theorem anchor exercised by each certificate route
ROUTE_ANCHORS: Dict[str, str] = {
    "surjectivity check": "Thm 5.4",
    "disconnected graph": "Thm 5.7",
    "continuum-valued route": "Thm 2.2",
    "inverse continuum-valued route": "Thm 2.2",
    "decomposition route": "Thm 5.8 + Lemma 5.6",
    "decomposition route on the inverse": "Thm 5.9 + Thm 5.8 + Lemma 5.6",
    "finite-stage connectivity": "Thms 5.3/5.4",
    "decomposition into continuum-valued functions": "Thm 5.8",
}


class VerdictKind(str, Enum):
    CERTIFIED = "CERTIFIED"
    CERTIFIED_ALL_N = "CERTIFIED_ALL_N"
    CONNECTED_UP_TO_N = "CONNECTED_UP_TO_N"
    DISCONNECTED = "DISCONNECTED"
    UNKNOWN = "UNKNOWN"
    REJECTED = "REJECTED"


@dataclass(frozen=True)
class Verdict:
    """Machine-readable certificate

    DISCONNECTED carries the smallest n with a disconnected finite product and
    its component count; CONNECTED_UP_TO_N carries the largest n checked.
    """
    kind: VerdictKind
    route: str = ""
    reason: str = ""
    n: Optional[int] = None
    component_count: Optional[int] = None
    witnesses: Tuple[Tuple[str, Any], ...] = field(default_factory=tuple)

    @property
    def label(self) -> str:
        if self.kind is VerdictKind.CONNECTED_UP_TO_N:
            return f"CONNECTED_UP_TO_N({self.n})"
        if self.kind is VerdictKind.DISCONNECTED:
            return f"DISCONNECTED({self.n}, {self.component_count})"
        if self.kind is VerdictKind.REJECTED:
            return f"REJECTED({self.reason})"
        return self.kind.value

    @property
    def anchor(self) -> str:
        return ROUTE_ANCHORS.get(self.route, "")

    @property
    def route_label(self) -> str:
        """Route name followed by its theorem anchor, e.g. decomposition route (Thm 5.8 + Lemma 5.6)"""
        return f"{self.route} ({self.anchor})" if self.anchor else self.route

    @property
    def is_certificate(self) -> bool:
        return self.kind in (VerdictKind.CERTIFIED, VerdictKind.CERTIFIED_ALL_N)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.label,
            "kind": self.kind.value,
            "route": self.route,
            "anchor": self.anchor,
            "reason": self.reason,
            "n": self.n,
            "component_count": self.component_count,
            "witnesses": [[label, value] for label, value in self.witnesses],
        }


def witness_list(**named: Any) -> Tuple[Tuple[str, Any], ...]:
    return tuple((label, value) for label, value in named.items() if value is not None)


def describe_witnesses(witnesses: Tuple[Tuple[str, Any], ...]) -> List[str]:
    return [f"{label} = {value}" for label, value in witnesses]
