"""Three-valued check results with named violations."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    INDETERMINATE = "indeterminate"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Violation:
    label: str
    exponent: int | None
    reason: str

    def __str__(self):
        at = f" at exponent {self.exponent}" if self.exponent is not None else ""
        return f"{self.label}{at}: {self.reason}"


@dataclass(frozen=True)
class CheckResult:
    verdict: Verdict
    violations: tuple = ()
    notes: tuple = ()

    def __bool__(self):
        return self.verdict is Verdict.TRUE

    @property
    def ok(self) -> bool:
        return self.verdict is Verdict.TRUE

    @classmethod
    def collect(cls, violations, undecided=()) -> "CheckResult":
        """FALSE if anything was violated, else INDETERMINATE if anything was out of range."""
        violations = tuple(violations)
        undecided = tuple(undecided)
        if violations:
            return cls(Verdict.FALSE, violations, undecided)
        if undecided:
            return cls(Verdict.INDETERMINATE, (), undecided)
        return cls(Verdict.TRUE)
