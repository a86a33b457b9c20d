"""
Image and score models shared by the metric engine and the regressors.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Sequence, Tuple

import numpy as np

from ..exceptions import CompletenessError, ShapeError

# The eleven estimators compared in the benchmark tables, in table order.
DEFAULT_METRIC_IDS: Tuple[str, ...] = (
    "PSNR",
    "PSNR-HA",
    "PSNR-HMA",
    "SSIM",
    "MS-SSIM",
    "CW-SSIM",
    "IW-SSIM",
    "SR-SIM",
    "FSIMc",
    "PerSIM",
    "UNIQUE",
)

# Estimators this package computes itself.
NATIVE_METRIC_IDS: Tuple[str, ...] = ("PSNR", "SSIM", "MS-SSIM")

# (stimulus_id, metric_id) -> score; absent pairs are simply not present.
ScoreFragment = Dict[Tuple[str, str], float]


@dataclass(frozen=True)
class GrayImage:
    """
    A single-channel image with real intensities in [0, dynamic_range].

    Attributes:
        samples: height x width float64 array (row-major)
        dynamic_range: L, the peak intensity (255 for 8-bit)
    """

    samples: np.ndarray
    dynamic_range: float = 255.0

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 2 or samples.shape[0] < 1 or samples.shape[1] < 1:
            raise ShapeError(f"GrayImage needs a non-empty 2-D array, got {samples.shape}")
        if not np.all(np.isfinite(samples)):
            raise ValueError("GrayImage samples must be finite")
        if samples.min() < 0.0 or samples.max() > self.dynamic_range:
            raise ValueError(
                f"GrayImage samples must lie in [0, {self.dynamic_range}], "
                f"got [{samples.min()}, {samples.max()}]"
            )
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "dynamic_range", float(self.dynamic_range))

    @property
    def height(self) -> int:
        return int(self.samples.shape[0])

    @property
    def width(self) -> int:
        return int(self.samples.shape[1])

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height}, L={self.dynamic_range:g})"


class MetricSource(Enum):
    NATIVE = "native"
    EXTERNAL = "external"


class Polarity(Enum):
    HIGHER_IS_BETTER = "higher-is-better"
    LOWER_IS_BETTER = "lower-is-better"


@dataclass(frozen=True)
class MetricDescriptor:
    """One quality estimator known to the registry."""

    metric_id: str
    source: MetricSource
    polarity: Polarity = Polarity.HIGHER_IS_BETTER

    def __post_init__(self) -> None:
        if not self.metric_id or not self.metric_id.strip():
            raise ValueError("MetricDescriptor.metric_id must be a non-empty string")
        object.__setattr__(self, "source", MetricSource(self.source))
        object.__setattr__(self, "polarity", Polarity(self.polarity))


@dataclass(frozen=True)
class SSIMParams:
    """Window and stabilizer constants for SSIM."""

    window_size: int = 11
    sigma: float = 1.5
    k1: float = 0.01
    k2: float = 0.03

    def __post_init__(self) -> None:
        if self.window_size < 1 or self.window_size % 2 == 0:
            raise ValueError("SSIMParams.window_size must be a positive odd integer")
        if self.sigma <= 0:
            raise ValueError("SSIMParams.sigma must be positive")


@dataclass(frozen=True)
class ScoreTable:
    """
    Complete matrix of objective scores.

    Attributes:
        stimulus_ids: Row labels
        metric_ids: Column labels
        scores: len(stimulus_ids) x len(metric_ids) finite matrix
    """

    stimulus_ids: Tuple[str, ...]
    metric_ids: Tuple[str, ...]
    scores: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "stimulus_ids", tuple(self.stimulus_ids))
        object.__setattr__(self, "metric_ids", tuple(self.metric_ids))
        scores = np.array(self.scores, dtype=np.float64)
        expected = (len(self.stimulus_ids), len(self.metric_ids))
        if scores.shape != expected:
            raise ShapeError(f"ScoreTable matrix is {scores.shape}, labels imply {expected}")
        if not np.all(np.isfinite(scores)):
            raise ValueError("ScoreTable entries must be finite")
        if len(set(self.stimulus_ids)) != len(self.stimulus_ids):
            raise ValueError("ScoreTable stimulus_ids must be unique")
        if len(set(self.metric_ids)) != len(self.metric_ids):
            raise ValueError("ScoreTable metric_ids must be unique")
        scores.setflags(write=False)
        object.__setattr__(self, "scores", scores)

    @classmethod
    def assemble(
        cls,
        fragment: ScoreFragment,
        stimulus_ids: Sequence[str],
        metric_ids: Sequence[str],
    ) -> "ScoreTable":
        """Build a complete table from a fragment; every pair must be present."""
        scores = np.empty((len(stimulus_ids), len(metric_ids)))
        for i, sid in enumerate(stimulus_ids):
            for j, mid in enumerate(metric_ids):
                try:
                    scores[i, j] = fragment[(sid, mid)]
                except KeyError:
                    raise CompletenessError(
                        f"No score for stimulus '{sid}' under metric '{mid}'",
                        missing=(sid, mid),
                    ) from None
        return cls(tuple(stimulus_ids), tuple(metric_ids), scores)

    def lookup(self, stimulus_id: str, metric_id: str) -> float:
        try:
            i = self.stimulus_ids.index(stimulus_id)
            j = self.metric_ids.index(metric_id)
        except ValueError:
            raise CompletenessError(
                f"No score for stimulus '{stimulus_id}' under metric '{metric_id}'",
                missing=(stimulus_id, metric_id),
            ) from None
        return float(self.scores[i, j])

    def to_fragment(self) -> ScoreFragment:
        return {
            (sid, mid): float(self.scores[i, j])
            for i, sid in enumerate(self.stimulus_ids)
            for j, mid in enumerate(self.metric_ids)
        }

    def __repr__(self) -> str:
        return (
            f"ScoreTable(stimuli={len(self.stimulus_ids)}, "
            f"metrics={list(self.metric_ids)})"
        )
