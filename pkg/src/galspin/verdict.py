"""Structured outcome of a verification check."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import ConsistencyError


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE_UNDER_RESTRICTION = "INCONCLUSIVE-UNDER-RESTRICTION"


@dataclass
class Verdict:
    """One check outcome, keyed by an axiom/theorem-style label.

    ``details`` and ``witness`` must stay JSON-serializable; a FAIL must
    carry a witness or a residual so the report is actionable.
    """

    label: str
    status: Status
    details: dict = field(default_factory=dict)
    residual: float | None = None
    witness: object = None
    seconds: float = 0.0

    def __post_init__(self):
        if self.status is Status.FAIL and self.witness is None and self.residual is None:
            raise ConsistencyError(
                f"FAIL verdict {self.label!r} lacks a witness and a residual"
            )

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "status": self.status.value,
            "residual": self.residual,
            "witness": self.witness,
            "details": self.details,
            "seconds": self.seconds,
        }

    @staticmethod
    def from_dict(d: dict) -> "Verdict":
        return Verdict(
            label=d["label"],
            status=Status(d["status"]),
            details=d.get("details") or {},
            residual=d.get("residual"),
            witness=d.get("witness"),
            seconds=d.get("seconds", 0.0),
        )


def passed(verdicts) -> bool:
    return all(v.passed for v in verdicts)
