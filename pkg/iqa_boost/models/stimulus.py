"""
Stimulus and database models for subjective-quality benchmarks.
"""

import math
from dataclasses import dataclass, field
from typing import List, Tuple

from ..exceptions import DuplicateStimulusError, ShapeError

# Seven distortion categories; every benchmark distortion type maps to one.
CATEGORIES: Tuple[str, ...] = (
    "compression",
    "noise",
    "communication",
    "blur",
    "color",
    "global",
    "local",
)


@dataclass(frozen=True)
class StimulusRecord:
    """
    One (reference, distorted, subjective score) pair of a database.

    Attributes:
        stimulus_id: Identifier unique within its database
        reference_path: Path of the pristine image, stored verbatim
        distorted_path: Path of the distorted image, stored verbatim
        subjective_score: MOS or DMOS in the database's native units
        category: One of CATEGORIES
        database_id: Database this record belongs to
    """

    stimulus_id: str
    reference_path: str
    distorted_path: str
    subjective_score: float
    category: str
    database_id: str

    def __post_init__(self) -> None:
        if not self.stimulus_id or not str(self.stimulus_id).strip():
            raise ValueError("StimulusRecord.stimulus_id must be a non-empty string")
        if self.category not in CATEGORIES:
            raise ValueError(
                f"StimulusRecord.category must be one of {', '.join(CATEGORIES)}, "
                f"got '{self.category}'"
            )
        score = float(self.subjective_score)
        if not math.isfinite(score):
            raise ValueError(
                f"StimulusRecord '{self.stimulus_id}' has non-finite subjective score"
            )
        object.__setattr__(self, "subjective_score", score)


@dataclass(frozen=True)
class Database:
    """
    An ordered, immutable collection of stimuli from one benchmark.

    Attributes:
        database_id: Benchmark identifier (e.g. LIVE, MULTI, TID13)
        records: Records in manifest order
        score_scale: (min, max) bounds of the subjective scores
    """

    database_id: str
    records: Tuple[StimulusRecord, ...]
    score_scale: Tuple[float, float] = field(default=(-math.inf, math.inf))

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        if not self.records:
            raise ShapeError(f"Database '{self.database_id}' has no records")

        lo, hi = (float(v) for v in self.score_scale)
        object.__setattr__(self, "score_scale", (lo, hi))

        seen = set()
        for record in self.records:
            if record.database_id != self.database_id:
                raise ValueError(
                    f"Record '{record.stimulus_id}' belongs to database "
                    f"'{record.database_id}', not '{self.database_id}'"
                )
            if record.stimulus_id in seen:
                raise DuplicateStimulusError(
                    f"Duplicate stimulus_id '{record.stimulus_id}' in database "
                    f"'{self.database_id}'",
                    stimulus_id=record.stimulus_id,
                )
            seen.add(record.stimulus_id)
            if not lo <= record.subjective_score <= hi:
                raise ValueError(
                    f"Subjective score {record.subjective_score} of "
                    f"'{record.stimulus_id}' is outside the scale [{lo}, {hi}]"
                )

    def __len__(self) -> int:
        return len(self.records)

    @property
    def stimulus_ids(self) -> List[str]:
        return [r.stimulus_id for r in self.records]

    @property
    def subjective_scores(self) -> List[float]:
        return [r.subjective_score for r in self.records]

    def __repr__(self) -> str:
        return f"Database(database_id='{self.database_id}', records={len(self.records)})"
