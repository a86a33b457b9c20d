"""
Database validator - checks category counts against an expected table.
"""

import logging
from collections import Counter
from typing import Dict, Mapping

from ..models import CATEGORIES, Database, ValidationResult, Validation, ValidationSeverity

logger = logging.getLogger(__name__)


def category_counts(db: Database) -> Dict[str, int]:
    """
    Number of distorted stimuli per category.

    Every category of the seven-member taxonomy is present in the result, so
    absent categories map to 0 and the values sum to len(db).
    """
    tally = Counter(record.category for record in db.records)
    return {category: tally.get(category, 0) for category in CATEGORIES}


class DatabaseValidator:
    """Compares a database's category breakdown with an expected count table."""

    def __init__(self, expected: Mapping[str, int]):
        """
        Initialize database validator.

        Args:
            expected: category -> count; categories left out count as 0
        """
        unknown = sorted(set(expected) - set(CATEGORIES))
        if unknown:
            raise ValueError(f"Unknown categories in expected counts: {', '.join(unknown)}")
        self.expected = {c: int(expected.get(c, 0)) for c in CATEGORIES}

    def validate(self, db: Database) -> ValidationResult:
        """
        Check every category and the total.

        Mismatches are recorded as failed ERROR validations; nothing is raised.

        Args:
            db: Database to check

        Returns:
            ValidationResult with one check per category plus the total
        """
        actual = category_counts(db)
        result = ValidationResult(database_id=db.database_id)

        for category in CATEGORIES:
            want, got = self.expected[category], actual[category]
            passed = want == got
            if not passed:
                result.mismatched_categories.append(category)
            result.add_validation(
                Validation(
                    check_name=category,
                    passed=passed,
                    expected=str(want),
                    actual=str(got),
                    severity=ValidationSeverity.INFO if passed else ValidationSeverity.ERROR,
                    message=(
                        f"{category}: {got} stimuli"
                        if passed
                        else f"{category}: expected {want} stimuli, found {got}"
                    ),
                )
            )

        want_total, got_total = sum(self.expected.values()), len(db)
        result.total_matches = want_total == got_total
        result.add_validation(
            Validation(
                check_name="total",
                passed=result.total_matches,
                expected=str(want_total),
                actual=str(got_total),
                severity=ValidationSeverity.INFO if result.total_matches else ValidationSeverity.ERROR,
                message=f"total: expected {want_total} stimuli, found {got_total}",
            )
        )

        if result.is_valid:
            logger.info("Database '%s' matches expected counts (%d stimuli)", db.database_id, got_total)
        else:
            logger.warning(
                "Database '%s' count mismatch in: %s",
                db.database_id,
                ", ".join(result.mismatched_categories) or "total",
            )
        return result


def validate_database(db: Database, expected: Mapping[str, int]) -> ValidationResult:
    """Shorthand for DatabaseValidator(expected).validate(db)."""
    return DatabaseValidator(expected).validate(db)
