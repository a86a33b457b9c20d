"""
Native scoring over a database and assembly of regressor inputs.
"""

import logging
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from ..exceptions import CompletenessError, RegistryError
from ..models import NATIVE_METRIC_IDS, Database, GrayImage, ScoreFragment, ScoreTable, StimulusRecord
from ..processors import load_gray_image
from ..utils import StringMatcher, worker_count
from .fidelity import compute_psnr
from .structural import compute_ms_ssim, compute_ssim

logger = logging.getLogger(__name__)

NATIVE_METRICS: Dict[str, Callable[[GrayImage, GrayImage], float]] = {
    "PSNR": compute_psnr,
    "SSIM": compute_ssim,
    "MS-SSIM": compute_ms_ssim,
}


def _resolve(path: str, base_dir: Optional[Path]) -> Path:
    p = Path(path)
    if base_dir is not None and not p.is_absolute():
        return Path(base_dir) / p
    return p


def _score_stimulus(
    record: StimulusRecord, metric_ids: Sequence[str], base_dir: Optional[Path]
) -> Dict[Tuple[str, str], float]:
    ref = load_gray_image(_resolve(record.reference_path, base_dir))
    dist = load_gray_image(_resolve(record.distorted_path, base_dir))
    return {(record.stimulus_id, m): NATIVE_METRICS[m](ref, dist) for m in metric_ids}


def compute_native_scores(
    db: Database,
    metric_ids: Sequence[str] = NATIVE_METRIC_IDS,
    threads: Optional[int] = None,
    base_dir: Optional[Path] = None,
) -> ScoreFragment:
    """
    Compute native metrics for every stimulus of a database.

    Args:
        db: Database whose image pairs are scored
        metric_ids: Subset of PSNR, SSIM, MS-SSIM
        threads: Worker cap (see utils.worker_count)
        base_dir: Directory relative manifest paths are resolved against

    Returns:
        Fragment with one entry per (stimulus, metric), in database order
    """
    for metric_id in metric_ids:
        if metric_id not in NATIVE_METRICS:
            raise RegistryError(
                f"Metric '{metric_id}' has no native implementation",
                suggestion=StringMatcher.closest(metric_id, NATIVE_METRICS),
            )

    n_jobs = worker_count(threads)
    logger.info(
        "Scoring %d stimuli of '%s' with %s (%d workers)",
        len(db), db.database_id, ", ".join(metric_ids), n_jobs,
    )
    parts = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_score_stimulus)(record, tuple(metric_ids), base_dir) for record in db.records
    )
    fragment: ScoreFragment = {}
    for part in parts:
        fragment.update(part)
    return fragment


def assemble_score_table(
    fragment: ScoreFragment, stimulus_ids: Sequence[str], metric_ids: Sequence[str]
) -> ScoreTable:
    """Complete ScoreTable for the given ids, or CompletenessError on the first gap."""
    return ScoreTable.assemble(fragment, stimulus_ids, metric_ids)


def build_feature_matrix(
    db: Database, table: ScoreTable, selected: Sequence[str]
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Regressor inputs for a database.

    Returns:
        (X, y) with X[i, j] the score of stimulus i (database order) under
        selected[j], and y the subjective scores

    Raises:
        CompletenessError: naming the first (stimulus, metric) pair, in
            row-major order, that the table lacks
    """
    rows = {sid: i for i, sid in enumerate(table.stimulus_ids)}
    cols = {mid: j for j, mid in enumerate(table.metric_ids)}

    for record in db.records:
        for metric_id in selected:
            if record.stimulus_id not in rows or metric_id not in cols:
                raise CompletenessError(
                    f"No score for stimulus '{record.stimulus_id}' under metric '{metric_id}'",
                    missing=(record.stimulus_id, metric_id),
                )

    row_index = np.array([rows[sid] for sid in db.stimulus_ids], dtype=np.intp)
    col_index = np.array([cols[m] for m in selected], dtype=np.intp)
    X = table.scores[np.ix_(row_index, col_index)].copy()
    y = np.array(db.subjective_scores, dtype=np.float64)
    return X, y
