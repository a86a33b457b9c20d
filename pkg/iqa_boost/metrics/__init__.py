"""
Native quality estimators and feature-matrix assembly.
"""

from .fidelity import PSNR_CAP_DB, compute_psnr
from .structural import MS_SSIM_WEIGHTS, ssim_components, compute_ssim, compute_ms_ssim
from .engine import NATIVE_METRICS, compute_native_scores, assemble_score_table, build_feature_matrix

__all__ = [
    "PSNR_CAP_DB",
    "compute_psnr",
    "MS_SSIM_WEIGHTS",
    "ssim_components",
    "compute_ssim",
    "compute_ms_ssim",
    "NATIVE_METRICS",
    "compute_native_scores",
    "assemble_score_table",
    "build_feature_matrix",
]
