"""
Structural-similarity estimators: SSIM and its multi-scale extension.

Local statistics use a normalized Gaussian window applied separably with
``scipy.ndimage.correlate1d``; only windows that lie fully inside the image
contribute (the "valid" region), so boundary handling never affects a score.
"""

from typing import Tuple

import numpy as np
from scipy import ndimage

from ..exceptions import ShapeError
from ..models import GrayImage, SSIMParams
from .fidelity import check_pair

MS_SSIM_WEIGHTS: Tuple[float, ...] = (0.0448, 0.2856, 0.3001, 0.2363, 0.1333)


def gaussian_window(size: int, sigma: float) -> np.ndarray:
    """1-D Gaussian taps summing to 1."""
    x = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    taps = np.exp(-(x ** 2) / (2.0 * sigma ** 2))
    return taps / taps.sum()


def _filter_valid(image: np.ndarray, taps: np.ndarray) -> np.ndarray:
    out = ndimage.correlate1d(image, taps, axis=0, mode="constant")
    out = ndimage.correlate1d(out, taps, axis=1, mode="constant")
    r = len(taps) // 2
    return out[r: image.shape[0] - r, r: image.shape[1] - r]


def _ssim_maps(
    x: np.ndarray, y: np.ndarray, dynamic_range: float, params: SSIMParams
) -> Tuple[np.ndarray, np.ndarray]:
    """Per-window SSIM map and contrast-structure map."""
    if min(x.shape) < params.window_size:
        raise ShapeError(
            f"Image {x.shape[1]}x{x.shape[0]} is smaller than the "
            f"{params.window_size}x{params.window_size} SSIM window"
        )
    taps = gaussian_window(params.window_size, params.sigma)
    c1 = (params.k1 * dynamic_range) ** 2
    c2 = (params.k2 * dynamic_range) ** 2

    mu_x = _filter_valid(x, taps)
    mu_y = _filter_valid(y, taps)
    sigma_xx = _filter_valid(x * x, taps) - mu_x * mu_x
    sigma_yy = _filter_valid(y * y, taps) - mu_y * mu_y
    sigma_xy = _filter_valid(x * y, taps) - mu_x * mu_y

    cs_map = (2.0 * sigma_xy + c2) / (sigma_xx + sigma_yy + c2)
    luminance = (2.0 * mu_x * mu_y + c1) / (mu_x * mu_x + mu_y * mu_y + c1)
    return luminance * cs_map, cs_map


def ssim_components(
    ref: GrayImage, dist: GrayImage, params: SSIMParams = SSIMParams()
) -> Tuple[float, float]:
    """
    Mean SSIM and mean contrast-structure term at a single scale.

    Returns:
        (ssim, cs)
    """
    check_pair(ref, dist)
    ssim_map, cs_map = _ssim_maps(ref.samples, dist.samples, ref.dynamic_range, params)
    return float(np.mean(ssim_map)), float(np.mean(cs_map))


def compute_ssim(ref: GrayImage, dist: GrayImage, params: SSIMParams = SSIMParams()) -> float:
    """Mean over valid windows of luminance x contrast x structure."""
    return ssim_components(ref, dist, params)[0]


def downsample(samples: np.ndarray) -> np.ndarray:
    """2x2 block mean followed by decimation; an odd trailing row/column is dropped."""
    h, w = (samples.shape[0] // 2) * 2, (samples.shape[1] // 2) * 2
    s = samples[:h, :w]
    return 0.25 * (s[0::2, 0::2] + s[1::2, 0::2] + s[0::2, 1::2] + s[1::2, 1::2])


def ms_ssim_min_size(params: SSIMParams = SSIMParams(), scales: int = len(MS_SSIM_WEIGHTS)) -> int:
    """Smallest side length whose coarsest scale still holds one window."""
    return params.window_size * 2 ** (scales - 1)


def compute_ms_ssim(ref: GrayImage, dist: GrayImage, params: SSIMParams = SSIMParams()) -> float:
    """
    Multi-scale SSIM over five dyadic scales.

    Contrast-structure terms enter at every scale and luminance only at the
    coarsest, each raised to its scale weight. Negative per-scale means are
    clipped to zero before exponentiation.
    """
    check_pair(ref, dist)
    min_size = ms_ssim_min_size(params)
    if min(ref.height, ref.width) < min_size:
        raise ShapeError(
            f"MS-SSIM needs images of at least {min_size}x{min_size} pixels, "
            f"got {ref.width}x{ref.height}"
        )

    x, y = ref.samples, dist.samples
    score = 1.0
    last = len(MS_SSIM_WEIGHTS) - 1
    for scale, weight in enumerate(MS_SSIM_WEIGHTS):
        ssim_map, cs_map = _ssim_maps(x, y, ref.dynamic_range, params)
        term = np.mean(ssim_map) if scale == last else np.mean(cs_map)
        score *= max(float(term), 0.0) ** weight
        if scale != last:
            x, y = downsample(x), downsample(y)
    return score
