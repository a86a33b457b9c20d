"""Tests for external score files and fragment merging.

Run directly (no pytest needed):
    python -m tests.test_score_io
"""

import tempfile
from pathlib import Path

from iqa_boost.exceptions import DuplicateStimulusError, ManifestParseError, RegistryError
from iqa_boost.processors import ingest_external_scores, merge_fragments, write_scores
from iqa_boost.utils import load_registry

REGISTRY = load_registry()


def _scores(*lines: str) -> Path:
    path = Path(tempfile.mkdtemp()) / "scores.csv"
    path.write_text("stimulus_id,metric_id,score\n" + "\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_ingest_keeps_absent_pairs_absent():
    fragment = ingest_external_scores(_scores("img1,UNIQUE,0.91", "img2,FSIMc,0.85"), REGISTRY)
    assert fragment == {("img1", "UNIQUE"): 0.91, ("img2", "FSIMc"): 0.85}
    assert ("img1", "FSIMc") not in fragment


def test_unknown_metric_is_registry_error_with_hint():
    raised = None
    try:
        ingest_external_scores(_scores("img1,FSIM-C,0.9"), REGISTRY)
    except RegistryError as e:
        raised = e
    assert raised is not None
    assert raised.suggestion == "FSIMc"


def test_duplicate_pair_is_rejected():
    raised = False
    try:
        ingest_external_scores(_scores("img1,PSNR,30", "img1,PSNR,31"), REGISTRY)
    except DuplicateStimulusError:
        raised = True
    assert raised


def test_bad_values_report_their_row():
    for lines in (("img1,PSNR,30", "img2,PSNR,nan"), ("img1,PSNR,30", "img2,PSNR,x"), ("img1,PSNR",)):
        raised = None
        try:
            ingest_external_scores(_scores(*lines), REGISTRY)
        except ManifestParseError as e:
            raised = e
        assert raised is not None, lines
        assert raised.row == len(lines)


def test_merge_later_fragment_wins():
    merged = merge_fragments({("a", "PSNR"): 1.0, ("b", "PSNR"): 2.0}, {("a", "PSNR"): 5.0, ("a", "SSIM"): 0.5})
    assert merged == {("a", "PSNR"): 5.0, ("b", "PSNR"): 2.0, ("a", "SSIM"): 0.5}


def test_written_scores_ingest_back_exactly():
    fragment = {("img1", "PSNR"): 30.123456789012345, ("img1", "SSIM"): 0.1 + 0.2, ("img2", "PSNR"): 1e-300}
    path = Path(tempfile.mkdtemp()) / "native.csv"
    write_scores(fragment, path)
    assert ingest_external_scores(path, REGISTRY) == fragment


if __name__ == "__main__":
    import sys

    failures = 0
    for _name, _fn in sorted(globals().items()):
        if _name.startswith("test_") and callable(_fn):
            try:
                _fn()
                print(f"PASS {_name}")
            except AssertionError as exc:
                failures += 1
                print(f"FAIL {_name}: {exc}")
            except Exception as exc:
                failures += 1
                print(f"ERROR {_name}: {type(exc).__name__}: {exc}")
    print(f"\n{failures} failure(s)")
    sys.exit(1 if failures else 0)
