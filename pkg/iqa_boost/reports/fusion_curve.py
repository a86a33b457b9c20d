"""
Plot-data files for incremental-fusion curves.

CSV columns (stable):
    size       number of fused estimators
    learner    nn | svr
    criterion  RMSE | PLCC | SRCC
    mean       mean over runs
    std        population std over runs
    sigline    significance-line value of the criterion (empty for RMSE)

Scatter CSV columns (stable), one row per stimulus and learner:
    stimulus_id, category, learner, subjective, raw, mapped
"""

import io
import logging
from pathlib import Path
from typing import Any, Dict, Sequence, Tuple

import pandas as pd

from ..models import FusionCurve, ScatterPoint
from ..utils.json_io import dumps

logger = logging.getLogger(__name__)

CURVE_CSV_COLUMNS: Tuple[str, ...] = ("size", "learner", "criterion", "mean", "std", "sigline")
SCATTER_CSV_COLUMNS: Tuple[str, ...] = ("stimulus_id", "category", "learner", "subjective", "raw", "mapped")


def curve_frame(curve: FusionCurve) -> pd.DataFrame:
    rows = [
        {
            "size": p.size,
            "learner": p.learner,
            "criterion": p.criterion.value,
            "mean": p.mean,
            "std": p.std,
            "sigline": curve.significance_line.get(p.criterion),
        }
        for p in curve.points
    ]
    frame = pd.DataFrame(rows, columns=list(CURVE_CSV_COLUMNS))
    frame["sigline"] = frame["sigline"].astype("float64")
    return frame


def emit_fusion_curve(curve: FusionCurve) -> Tuple[Dict[str, Any], str]:
    """
    Returns:
        (JSON payload, CSV text with the CURVE_CSV_COLUMNS header)
    """
    csv_text = curve_frame(curve).to_csv(index=False, float_format="%.17g", lineterminator="\n", na_rep="")
    return curve.to_dict(), csv_text


def read_curve_csv(text: str) -> pd.DataFrame:
    """Parse CSV text produced by emit_fusion_curve; floats parse back exactly."""
    frame = pd.read_csv(io.StringIO(text), float_precision="round_trip")
    missing = [c for c in CURVE_CSV_COLUMNS if c not in frame.columns]
    if missing:
        raise ValueError(f"Curve CSV is missing columns: {', '.join(missing)}")
    return frame


def write_fusion_curve(curve: FusionCurve, out_dir: Path, stem: str) -> Tuple[Path, Path]:
    """Write <stem>.json and <stem>.csv."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload, csv_text = emit_fusion_curve(curve)
    json_path, csv_path = out_dir / f"{stem}.json", out_dir / f"{stem}.csv"
    with open(json_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps(payload))
    with open(csv_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(csv_text)
    logger.info("Wrote fusion curve for '%s' to %s", curve.database_id, csv_path)
    return json_path, csv_path


def write_scatter(points: Sequence[ScatterPoint], out_dir: Path, stem: str) -> Path:
    """Write <stem>_scatter.csv: subjective vs objective score per stimulus."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame([p.to_dict() for p in points], columns=list(SCATTER_CSV_COLUMNS))
    path = out_dir / f"{stem}_scatter.csv"
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(frame.to_csv(index=False, float_format="%.17g", lineterminator="\n"))
    logger.info("Wrote %d scatter points to %s", len(points), path)
    return path
