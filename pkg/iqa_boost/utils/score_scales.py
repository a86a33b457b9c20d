"""Declared subjective-score ranges of the benchmark databases.

LIVE and MULTI report DMOS on [0, 100]; TID13 reports MOS on [0, 9]. The table
lives in ``data/score_scales.json``; ``DEFAULT_SCALES`` is the shipped fallback.
Databases without an entry fall back to their observed (min, max).
"""

import json
import logging
import math
from pathlib import Path
from typing import Dict, Optional, Tuple

logger = logging.getLogger(__name__)

SCALES_DATA_PATH = Path(__file__).resolve().parents[2] / "data" / "score_scales.json"

DEFAULT_SCALES: Dict[str, Tuple[float, float]] = {
    "LIVE": (0.0, 100.0),
    "MULTI": (0.0, 100.0),
    "TID13": (0.0, 9.0),
}


def _parse(data: object) -> Dict[str, Tuple[float, float]]:
    if not isinstance(data, dict) or not data:
        raise ValueError("expected a non-empty object of [min, max] pairs")
    scales = {}
    for database_id, bounds in data.items():
        lo, hi = (float(v) for v in bounds)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"bad scale for '{database_id}': {bounds}")
        scales[database_id] = (lo, hi)
    return scales


def load_score_scales() -> Dict[str, Tuple[float, float]]:
    """Return every declared scale (JSON if valid, else DEFAULT_SCALES)."""
    try:
        if SCALES_DATA_PATH.exists():
            with open(SCALES_DATA_PATH, encoding="utf-8") as f:
                return _parse(json.load(f))
    except (json.JSONDecodeError, OSError, ValueError, TypeError) as e:
        logger.warning("Could not read %s (%s); using built-in scales", SCALES_DATA_PATH, e)
    return dict(DEFAULT_SCALES)


def declared_score_scale(database_id: str) -> Optional[Tuple[float, float]]:
    """Declared (min, max) of a known database, or None."""
    return load_score_scales().get(database_id)
