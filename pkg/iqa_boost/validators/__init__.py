"""
Validators for benchmark databases.
"""

from .database_validator import DatabaseValidator, category_counts, validate_database

__all__ = [
    "DatabaseValidator",
    "category_counts",
    "validate_database",
]
