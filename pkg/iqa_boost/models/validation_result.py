"""
Validation Result data models for tracking database validation outcomes.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class ValidationSeverity(Enum):
    """Severity levels for validation checks."""

    ERROR = "ERROR"  # Count mismatch against the expected table
    WARNING = "WARNING"  # Suspicious but not a mismatch
    INFO = "INFO"  # Informational message


@dataclass
class Validation:
    """
    Represents a single validation check result.

    Attributes:
        check_name: Name/description of the validation check
        passed: Whether the validation passed
        expected: Expected value
        actual: Actual value found
        severity: Severity level (ERROR, WARNING, INFO)
        message: Detailed message explaining the result
    """

    check_name: str
    passed: bool
    expected: Optional[str]
    actual: Optional[str]
    severity: ValidationSeverity
    message: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check_name": self.check_name,
            "passed": self.passed,
            "expected": self.expected,
            "actual": self.actual,
            "severity": self.severity.value,
            "message": self.message,
        }

    def __repr__(self) -> str:
        status = "✓" if self.passed else "✗"
        return f"{status} {self.check_name}: {self.message}"


@dataclass
class ValidationResult:
    """
    The outcome of checking one database against expected category counts.

    Attributes:
        database_id: Database that was checked
        validations: Individual check results, one per category plus the total
        mismatched_categories: Categories whose count differs from expected
        total_matches: Whether the record total equals the expected total
    """

    database_id: str
    validations: List[Validation] = field(default_factory=list)
    mismatched_categories: List[str] = field(default_factory=list)
    total_matches: bool = True

    def add_validation(self, validation: Validation) -> None:
        """Add a validation check result."""
        self.validations.append(validation)

    @property
    def errors(self) -> List[str]:
        """Messages of failed ERROR-severity checks (derived from validations)."""
        return [
            v.message
            for v in self.validations
            if not v.passed and v.severity == ValidationSeverity.ERROR
        ]

    @property
    def is_valid(self) -> bool:
        """True when there are no failed ERROR-severity checks."""
        return not any(
            not v.passed and v.severity == ValidationSeverity.ERROR
            for v in self.validations
        )

    def get_status_summary(self) -> str:
        return "PASS" if self.is_valid else "MISMATCH"

    def to_text(self) -> str:
        """Key-value text block, one line per check."""
        lines = [
            f"database: {self.database_id}",
            f"status: {self.get_status_summary()}",
            f"total_matches: {str(self.total_matches).lower()}",
            f"mismatched_categories: {','.join(self.mismatched_categories)}",
        ]
        for v in self.validations:
            symbol = "ok" if v.passed else "MISMATCH"
            lines.append(
                f"{v.check_name}: expected={v.expected} actual={v.actual} [{symbol}]"
            )
        return "\n".join(lines) + "\n"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "database_id": self.database_id,
            "status": self.get_status_summary(),
            "total_matches": self.total_matches,
            "mismatched_categories": list(self.mismatched_categories),
            "validations": [v.to_dict() for v in self.validations],
        }

    def __repr__(self) -> str:
        return (
            f"ValidationResult(database_id='{self.database_id}', "
            f"status='{self.get_status_summary()}', errors={len(self.errors)})"
        )
