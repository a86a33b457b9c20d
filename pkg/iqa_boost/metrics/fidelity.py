"""
Pixel-fidelity estimator: peak signal-to-noise ratio.
"""

import math

import numpy as np

from ..exceptions import ShapeError
from ..models import GrayImage

# Returned when the images are identical (MSE = 0)
PSNR_CAP_DB = 100.0


def check_pair(ref: GrayImage, dist: GrayImage) -> None:
    """Raise ShapeError unless both images share dimensions and dynamic range."""
    if ref.samples.shape != dist.samples.shape:
        raise ShapeError(
            f"Image dimensions differ: {ref.width}x{ref.height} vs {dist.width}x{dist.height}"
        )
    if ref.dynamic_range != dist.dynamic_range:
        raise ShapeError(
            f"Dynamic ranges differ: {ref.dynamic_range:g} vs {dist.dynamic_range:g}"
        )


def compute_psnr(ref: GrayImage, dist: GrayImage) -> float:
    """10 log10(L^2 / MSE) in dB, capped at PSNR_CAP_DB for identical images."""
    check_pair(ref, dist)
    mse = float(np.mean((ref.samples - dist.samples) ** 2))
    if mse == 0.0:
        return PSNR_CAP_DB
    return 10.0 * math.log10(ref.dynamic_range ** 2 / mse)
