"""
Synthetic benchmark with a known need for fusion.

Subjective scores mix two latent factors nonlinearly; each estimator column
is a noisy view of one factor or a blend of both, so no single column can
explain the score and fusing columns pays off.
"""

from typing import Tuple

import numpy as np

from ..models import CATEGORIES, Database, ScoreTable, StimulusRecord

SCORE_SCALE = (0.0, 10.0)


def _estimator_column(j: int, a: np.ndarray, b: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    n = a.size
    if j == 0:
        return a + rng.normal(0.0, 0.25, n)
    if j == 1:
        return b + rng.normal(0.0, 0.25, n)
    if j == 2:
        return np.tanh(2.0 * a) + 0.5 * b + rng.normal(0.0, 0.3, n)
    if j == 3:
        return np.exp(b) + rng.normal(0.0, 0.4, n)
    if j == 4:
        return a + b + rng.normal(0.0, 1.0, n)
    w = rng.uniform(0.0, 1.0)
    return w * a + (1.0 - w) * b + rng.normal(0.0, 0.5, n)


def make_synthetic_benchmark(
    n: int = 500, m: int = 5, seed: int = 0, database_id: str = "SYN"
) -> Tuple[Database, ScoreTable]:
    """
    Build a database of n stimuli and an n x m score table.

    Metric ids are "M1".."Mm"; image paths are placeholders and never read.
    """
    if n < 1 or m < 1:
        raise ValueError("make_synthetic_benchmark needs n >= 1 and m >= 1")
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1.0, 1.0, n)
    b = rng.uniform(-1.0, 1.0, n)
    y = 5.0 + 2.0 * np.tanh(2.0 * a) + 1.5 * np.tanh(2.0 * b) + rng.normal(0.0, 0.1, n)
    y = np.clip(y, *SCORE_SCALE)

    stimulus_ids = [f"syn{i + 1:04d}" for i in range(n)]
    records = tuple(
        StimulusRecord(
            stimulus_id=sid,
            reference_path=f"ref/{sid}.png",
            distorted_path=f"dist/{sid}.png",
            subjective_score=float(y[i]),
            category=CATEGORIES[i % len(CATEGORIES)],
            database_id=database_id,
        )
        for i, sid in enumerate(stimulus_ids)
    )
    scores = np.column_stack([_estimator_column(j, a, b, rng) for j in range(m)])
    metric_ids = tuple(f"M{j + 1}" for j in range(m))
    return Database(database_id, records, SCORE_SCALE), ScoreTable(tuple(stimulus_ids), metric_ids, scores)
