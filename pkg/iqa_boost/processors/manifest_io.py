"""
Manifest reader/writer for benchmark databases.

A manifest is a UTF-8 CSV with LF line endings, one header line, and one row
per distorted stimulus:

    stimulus_id,reference_path,distorted_path,subjective_score,category,database_id

Paths are stored verbatim; they are only resolved when images are decoded.
"""

import csv
import logging
import math
from pathlib import Path
from typing import List, Optional, Tuple

from ..exceptions import DuplicateStimulusError, ManifestParseError
from ..models import CATEGORIES, Database, StimulusRecord
from ..utils import StringMatcher, declared_score_scale

logger = logging.getLogger(__name__)

MANIFEST_COLUMNS = (
    "stimulus_id",
    "reference_path",
    "distorted_path",
    "subjective_score",
    "category",
    "database_id",
)


def _parse_score(raw: str, row: int, path: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ManifestParseError(
            f"subjective_score '{raw}' is not a number", row=row, path=path
        ) from None
    if not math.isfinite(value):
        raise ManifestParseError(
            f"subjective_score '{raw}' is not finite", row=row, path=path
        )
    return value


def _parse_category(raw: str, row: int, path: str) -> str:
    category = raw.strip()
    if category in CATEGORIES:
        return category
    hint = StringMatcher.closest(category, CATEGORIES)
    message = f"unknown category '{raw}'"
    if hint:
        message += f" (did you mean '{hint}'?)"
    raise ManifestParseError(message, row=row, path=path)


def parse_manifest_rows(
    rows: List[List[str]], path: str = ""
) -> Tuple[str, List[StimulusRecord]]:
    """
    Turn raw CSV rows (header excluded) into records.

    Row numbers in errors count data rows from 1, so "row 2" is the second
    stimulus line.

    Returns:
        (database_id, records)
    """
    records: List[StimulusRecord] = []
    seen = set()
    database_id: Optional[str] = None

    for row_number, fields in enumerate(rows, start=1):
        if len(fields) != len(MANIFEST_COLUMNS):
            raise ManifestParseError(
                f"expected {len(MANIFEST_COLUMNS)} columns, found {len(fields)}",
                row=row_number,
                path=path,
            )
        stimulus_id, ref, dist, raw_score, raw_category, db = fields
        if not stimulus_id.strip():
            raise ManifestParseError("empty stimulus_id", row=row_number, path=path)
        score = _parse_score(raw_score, row_number, path)
        category = _parse_category(raw_category, row_number, path)

        if database_id is None:
            database_id = db
        elif db != database_id:
            raise ManifestParseError(
                f"database_id '{db}' differs from '{database_id}' declared on row 1",
                row=row_number,
                path=path,
            )
        if stimulus_id in seen:
            raise DuplicateStimulusError(
                f"{path + ': ' if path else ''}row {row_number}: duplicate stimulus_id "
                f"'{stimulus_id}'",
                stimulus_id=stimulus_id,
            )
        seen.add(stimulus_id)
        records.append(StimulusRecord(stimulus_id, ref, dist, score, category, db))

    if database_id is None:
        raise ManifestParseError("manifest has no data rows", path=path)
    return database_id, records


def default_score_scale(
    database_id: str, records: List[StimulusRecord]
) -> Tuple[float, float]:
    """
    Declared scale of a known database, else the observed (min, max).

    A declared scale that does not contain every score is ignored with a warning.
    """
    scores = [r.subjective_score for r in records]
    observed = (min(scores), max(scores))
    declared = declared_score_scale(database_id)
    if declared is None:
        return observed
    if observed[0] < declared[0] or observed[1] > declared[1]:
        logger.warning(
            "Scores of '%s' span [%g, %g], outside its declared scale [%g, %g]; using the observed range",
            database_id, observed[0], observed[1], declared[0], declared[1],
        )
        return observed
    return declared


def load_manifest(
    path: Path, score_scale: Optional[Tuple[float, float]] = None
) -> Database:
    """
    Load a manifest into an immutable Database.

    Args:
        path: Manifest CSV
        score_scale: Bounds of the subjective scores; defaults to
            default_score_scale of the file's database

    Returns:
        Database with records in manifest order

    Raises:
        ManifestParseError: On a malformed header or row (row number included)
        DuplicateStimulusError: When a stimulus_id repeats
    """
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))

    if not rows:
        raise ManifestParseError("manifest is empty", path=str(path))
    header = [h.strip() for h in rows[0]]
    if tuple(header) != MANIFEST_COLUMNS:
        raise ManifestParseError(
            f"header must be '{','.join(MANIFEST_COLUMNS)}', got '{','.join(rows[0])}'",
            row=0,
            path=str(path),
        )

    database_id, records = parse_manifest_rows(rows[1:], path=str(path))
    if score_scale is None:
        score_scale = default_score_scale(database_id, records)

    logger.info("Loaded %d stimuli for database '%s' from %s", len(records), database_id, path)
    return Database(database_id, tuple(records), score_scale)


def write_manifest(db: Database, path: Path) -> None:
    """
    Write a Database so that load_manifest reproduces it exactly.

    The manifest has no column for score_scale; it survives the round trip when
    it equals default_score_scale, otherwise a warning is logged.
    """
    path = Path(path)
    if db.score_scale != default_score_scale(db.database_id, list(db.records)):
        logger.warning(
            "Score scale %s of '%s' is not recoverable from %s; pass it to load_manifest",
            db.score_scale, db.database_id, path,
        )
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(MANIFEST_COLUMNS)
        for r in db.records:
            writer.writerow(
                [
                    r.stimulus_id,
                    r.reference_path,
                    r.distorted_path,
                    repr(r.subjective_score),
                    r.category,
                    r.database_id,
                ]
            )
    logger.info("Wrote %d stimuli to %s", len(db.records), path)
