"""
Image decoding for the native metrics.

Only lossless 8-bit inputs are accepted (PNG, PGM, PPM in grayscale or RGB).
RGB is reduced to luma with the ITU-R BT.601 weights in floating point, so no
rounding is introduced before the metrics see the samples.
"""

import logging
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..exceptions import ImageDecodeError
from ..models import GrayImage

logger = logging.getLogger(__name__)

SUPPORTED_FORMATS = ("PNG", "PPM")  # Pillow reports PGM files as "PPM"
BT601_WEIGHTS = np.array([0.299, 0.587, 0.114])


def rgb_to_luma(rgb: np.ndarray) -> np.ndarray:
    """BT.601 luma of an H x W x 3 array."""
    return np.asarray(rgb, dtype=np.float64) @ BT601_WEIGHTS


def load_gray_image(path: Path) -> GrayImage:
    """
    Decode an image file into a GrayImage with dynamic range 255.

    Raises:
        ImageDecodeError: Missing/corrupt file, unsupported format or mode
    """
    path = Path(path)
    try:
        with Image.open(path) as img:
            fmt = img.format
            mode = img.mode
            if fmt not in SUPPORTED_FORMATS:
                raise ImageDecodeError(
                    f"unsupported format {fmt!r} (expected PNG, PGM or PPM)", path=str(path)
                )
            if mode == "L":
                samples = np.asarray(img, dtype=np.float64)
            elif mode == "RGB":
                samples = np.clip(rgb_to_luma(np.asarray(img)), 0.0, 255.0)
            else:
                raise ImageDecodeError(
                    f"unsupported mode {mode!r} (expected 8-bit L or RGB)", path=str(path)
                )
    except (FileNotFoundError, UnidentifiedImageError, OSError) as e:
        raise ImageDecodeError(str(e), path=str(path)) from e

    logger.debug("Decoded %s (%s %s, %dx%d)", path, fmt, mode, samples.shape[1], samples.shape[0])
    return GrayImage(samples, dynamic_range=255.0)
