"""Result types shared by the checks: validation reports and verdicts.

Checks never raise for a failed condition; they record an issue here and
the caller decides. Verdicts carry the citation tag of the statement that
produced them so reports can say *which* result blocks rank zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from pullback.errors import InvariantError


class CheckFailed(InvariantError):
    """An identity that must hold exactly does not."""


# ---------------------------------------------------------------------------
# Validation result types
# ---------------------------------------------------------------------------

class ValidationIssue:
    """A single failed check or warning."""

    __slots__ = ("check", "message", "severity")

    def __init__(self, check: str, message: str, severity: str = "error") -> None:
        self.check = check
        self.message = message
        self.severity = severity  # "error" or "warning"

    def to_dict(self) -> dict[str, str]:
        return {"check": self.check, "message": self.message, "severity": self.severity}


class ValidationResult:
    """Aggregated outcome of the checks run on one object."""

    def __init__(self, subject: str = "portrait") -> None:
        self.subject = subject
        self.issues: list[ValidationIssue] = []
        self.passed: list[str] = []

    @property
    def status(self) -> str:
        if any(i.severity == "error" for i in self.issues):
            return "errors"
        if self.issues:
            return "warnings"
        return "valid"

    @property
    def ok(self) -> bool:
        return self.status != "errors"

    @property
    def failed(self) -> list[str]:
        return [i.check for i in self.issues if i.severity == "error"]

    def add_error(self, check: str, message: str) -> None:
        self.issues.append(ValidationIssue(check, message, "error"))

    def add_warning(self, check: str, message: str) -> None:
        self.issues.append(ValidationIssue(check, message, "warning"))

    def add_valid(self, check: str) -> None:
        self.passed.append(check)

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "subject": self.subject,
            "errors": [i.to_dict() for i in self.issues if i.severity == "error"],
            "warnings": [i.to_dict() for i in self.issues if i.severity == "warning"],
            "passed": self.passed,
        }


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

class VerdictStatus(str, Enum):
    POSSIBLE = "possible"
    BLOCKED = "blocked"
    NOT_CONSTANT = "not-constant"
    UNOBSTRUCTED = "unobstructed"


@dataclass(frozen=True)
class Reason:
    citation: str
    detail: str
    informational: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "citation": self.citation,
            "detail": self.detail,
            "informational": self.informational,
        }


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    reasons: tuple[Reason, ...] = field(default_factory=tuple)

    @property
    def negative(self) -> bool:
        """True when the verdict rules rank zero (or constancy) out."""
        return self.status in (VerdictStatus.BLOCKED, VerdictStatus.NOT_CONSTANT)

    @property
    def citations(self) -> list[str]:
        return [r.citation for r in self.reasons if not r.informational]

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status.value,
            "reasons": [r.to_dict() for r in self.reasons],
        }


def require_checks(result: ValidationResult) -> ValidationResult:
    """Raise :class:`CheckFailed` naming every failed check, else return *result*."""
    if not result.ok:
        raise CheckFailed(
            "; ".join(f"{i.check}: {i.message}" for i in result.issues if i.severity == "error")
        )
    return result
