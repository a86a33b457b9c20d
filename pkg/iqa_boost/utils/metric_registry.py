"""Single source of truth for the quality estimators the toolkit knows about.

Persistence mirrors the other files in ``data/``: the canonical list lives in
``data/metric_registry.json`` and may be extended with user-defined estimators.
``DEFAULT_METRICS`` below is the shipped baseline and the fallback used when the
JSON is missing or unreadable, so a registry is always available.

Only PSNR, SSIM and MS-SSIM are computed natively; every other estimator enters
through an external score file.
"""

import json
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Sequence

from ..exceptions import RegistryError
from ..models import (
    NATIVE_METRIC_IDS,
    DEFAULT_METRIC_IDS,
    MetricDescriptor,
    MetricSource,
    Polarity,
)
from .string_matcher import StringMatcher

logger = logging.getLogger(__name__)

REGISTRY_DATA_PATH = Path(__file__).resolve().parents[2] / "data" / "metric_registry.json"

DEFAULT_METRICS: List[MetricDescriptor] = [
    MetricDescriptor(
        metric_id,
        MetricSource.NATIVE if metric_id in NATIVE_METRIC_IDS else MetricSource.EXTERNAL,
        Polarity.HIGHER_IS_BETTER,
    )
    for metric_id in DEFAULT_METRIC_IDS
]


def _read_json() -> list:
    """Return the parsed metric_registry.json entries, or [] if missing/unreadable."""
    try:
        if REGISTRY_DATA_PATH.exists():
            with open(REGISTRY_DATA_PATH, encoding="utf-8") as f:
                data = json.load(f)
            if isinstance(data, dict) and isinstance(data.get("metrics"), list):
                return data["metrics"]
    except (json.JSONDecodeError, OSError) as e:
        logger.warning("Could not read %s: %s", REGISTRY_DATA_PATH, e)
    return []


def load_registry() -> List[MetricDescriptor]:
    """Return the registered estimators (JSON if valid, else DEFAULT_METRICS)."""
    entries = _read_json()
    descriptors: List[MetricDescriptor] = []
    try:
        for entry in entries:
            descriptors.append(
                MetricDescriptor(
                    metric_id=str(entry["metric_id"]).strip(),
                    source=entry.get("source", "external"),
                    polarity=entry.get("polarity", "higher-is-better"),
                )
            )
    except (KeyError, TypeError, ValueError) as e:
        logger.warning("Ignoring malformed metric registry (%s); using defaults", e)
        descriptors = []
    if not descriptors:
        return list(DEFAULT_METRICS)
    check_unique(descriptors)
    return descriptors


def check_unique(registry: Sequence[MetricDescriptor]) -> None:
    """Raise RegistryError when a metric_id is declared twice."""
    seen = set()
    for descriptor in registry:
        if descriptor.metric_id in seen:
            raise RegistryError(f"Metric '{descriptor.metric_id}' is registered twice")
        seen.add(descriptor.metric_id)


def by_id(registry: Iterable[MetricDescriptor]) -> Dict[str, MetricDescriptor]:
    return {d.metric_id: d for d in registry}


def require_metric(metric_id: str, registry: Sequence[MetricDescriptor]) -> MetricDescriptor:
    """Look up a metric, raising RegistryError with the closest known id as a hint."""
    known = by_id(registry)
    if metric_id in known:
        return known[metric_id]
    raise RegistryError(
        f"Metric '{metric_id}' is not in the registry",
        suggestion=StringMatcher.closest(metric_id, known),
    )


def select(metric_ids: Iterable[str], registry: Sequence[MetricDescriptor]) -> List[MetricDescriptor]:
    """Descriptors for the given ids, in the given order."""
    return [require_metric(m, registry) for m in metric_ids]
