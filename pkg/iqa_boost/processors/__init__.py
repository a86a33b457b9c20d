"""
Readers and writers for manifests, score files and images.
"""

from .manifest_io import MANIFEST_COLUMNS, load_manifest, write_manifest, parse_manifest_rows
from .score_io import SCORE_COLUMNS, ingest_external_scores, merge_fragments, write_scores
from .image_reader import load_gray_image, rgb_to_luma

__all__ = [
    "MANIFEST_COLUMNS",
    "load_manifest",
    "write_manifest",
    "parse_manifest_rows",
    "SCORE_COLUMNS",
    "ingest_external_scores",
    "merge_fragments",
    "write_scores",
    "load_gray_image",
    "rgb_to_luma",
]
