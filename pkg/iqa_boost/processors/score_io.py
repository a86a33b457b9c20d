"""
Score-file reader/writer.

External estimators and the native engine share one CSV format:

    stimulus_id,metric_id,score

so natively computed scores can be swapped for external ones downstream.
"""

import csv
import logging
import math
from pathlib import Path
from typing import Sequence

from ..exceptions import DuplicateStimulusError, ManifestParseError
from ..models import MetricDescriptor, ScoreFragment
from ..utils import require_metric

logger = logging.getLogger(__name__)

SCORE_COLUMNS = ("stimulus_id", "metric_id", "score")


def ingest_external_scores(
    path: Path, registry: Sequence[MetricDescriptor]
) -> ScoreFragment:
    """
    Read a score file into a {(stimulus_id, metric_id): score} fragment.

    Pairs missing from the file are absent from the fragment (never zero-filled).

    Raises:
        ManifestParseError: Wrong header/column count, non-numeric or non-finite score
        RegistryError: metric_id not declared in the registry
        DuplicateStimulusError: The same (stimulus, metric) pair appears twice
    """
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))

    if not rows or tuple(h.strip() for h in rows[0]) != SCORE_COLUMNS:
        raise ManifestParseError(
            f"header must be '{','.join(SCORE_COLUMNS)}'", row=0, path=str(path)
        )

    fragment: ScoreFragment = {}
    for row_number, fields in enumerate(rows[1:], start=1):
        if not fields:
            continue
        if len(fields) != len(SCORE_COLUMNS):
            raise ManifestParseError(
                f"expected {len(SCORE_COLUMNS)} columns, found {len(fields)}",
                row=row_number,
                path=str(path),
            )
        stimulus_id, metric_id, raw = (v.strip() for v in fields)
        require_metric(metric_id, registry)
        try:
            score = float(raw)
        except ValueError:
            raise ManifestParseError(
                f"score '{raw}' is not a number", row=row_number, path=str(path)
            ) from None
        if not math.isfinite(score):
            raise ManifestParseError(
                f"score '{raw}' is not finite", row=row_number, path=str(path)
            )
        key = (stimulus_id, metric_id)
        if key in fragment:
            raise DuplicateStimulusError(
                f"{path}: row {row_number}: duplicate score for stimulus "
                f"'{stimulus_id}' under metric '{metric_id}'",
                stimulus_id=stimulus_id,
            )
        fragment[key] = score

    logger.info("Ingested %d scores from %s", len(fragment), path)
    return fragment


def merge_fragments(*fragments: ScoreFragment) -> ScoreFragment:
    """Union of fragments; on overlap the later fragment wins."""
    merged: ScoreFragment = {}
    for fragment in fragments:
        for key, value in fragment.items():
            if key in merged and merged[key] != value:
                logger.warning(
                    "Score for stimulus '%s' / metric '%s' overwritten (%r -> %r)",
                    key[0], key[1], merged[key], value,
                )
            merged[key] = value
    return merged


def write_scores(fragment: ScoreFragment, path: Path) -> None:
    """Write a fragment in the score-file format, in insertion order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SCORE_COLUMNS)
        for (stimulus_id, metric_id), score in fragment.items():
            writer.writerow([stimulus_id, metric_id, repr(float(score))])
    logger.info("Wrote %d scores to %s", len(fragment), path)
