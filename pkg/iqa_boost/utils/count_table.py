"""Per-database category counts of the three benchmark databases.

Counts are of distorted stimuli only (reference images are not counted). The
canonical table lives in ``data/expected_counts.json``; ``DEFAULT_COUNTS`` is the
shipped fallback used when the JSON is missing or unreadable.
"""

import json
import logging
from pathlib import Path
from typing import Dict

from ..exceptions import RegistryError
from ..models import CATEGORIES
from .string_matcher import StringMatcher

logger = logging.getLogger(__name__)

COUNTS_DATA_PATH = Path(__file__).resolve().parents[2] / "data" / "expected_counts.json"

DEFAULT_COUNTS: Dict[str, Dict[str, int]] = {
    "LIVE": {"compression": 460, "noise": 174, "communication": 174, "blur": 174,
             "color": 0, "global": 0, "local": 0},
    "MULTI": {"compression": 180, "noise": 180, "communication": 0, "blur": 315,
              "color": 0, "global": 0, "local": 0},
    "TID13": {"compression": 375, "noise": 1375, "communication": 250, "blur": 250,
              "color": 375, "global": 250, "local": 250},
}


def _complete(counts: Dict[str, int]) -> Dict[str, int]:
    """Fill absent categories with 0 and reject unknown ones."""
    unknown = sorted(set(counts) - set(CATEGORIES))
    if unknown:
        raise ValueError(f"Unknown categories in expected counts: {', '.join(unknown)}")
    return {c: int(counts.get(c, 0)) for c in CATEGORIES}


def load_all_counts() -> Dict[str, Dict[str, int]]:
    """Return every database's counts (JSON if valid, else DEFAULT_COUNTS)."""
    try:
        if COUNTS_DATA_PATH.exists():
            with open(COUNTS_DATA_PATH, encoding="utf-8") as f:
                data = json.load(f)
            if isinstance(data, dict) and data:
                return {db: _complete(c) for db, c in data.items()}
    except (json.JSONDecodeError, OSError, ValueError, TypeError) as e:
        logger.warning("Could not read %s (%s); using built-in counts", COUNTS_DATA_PATH, e)
    return {db: dict(c) for db, c in DEFAULT_COUNTS.items()}


def expected_counts(database_id: str) -> Dict[str, int]:
    """Category counts for one known database."""
    table = load_all_counts()
    if database_id not in table:
        raise RegistryError(
            f"No expected counts for database '{database_id}'",
            suggestion=StringMatcher.closest(database_id, table),
        )
    return dict(table[database_id])


def read_counts_file(path: Path) -> Dict[str, int]:
    """Load a user-supplied {category: count} JSON map."""
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object of category counts")
    return _complete(data)
