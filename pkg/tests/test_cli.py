"""Tests for the command-line entry point.

Run directly (no pytest needed):
    python -m tests.test_cli
"""

import json
import tempfile
from pathlib import Path

import numpy as np
from PIL import Image

from iqa_boost.cli import EXIT_MISMATCH, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, cli_dispatch
from iqa_boost.experiments import run_single_method_study
from iqa_boost.metrics import assemble_score_table, compute_native_scores
from iqa_boost.models import ExperimentConfig
from iqa_boost.processors import MANIFEST_COLUMNS, load_manifest


def _workspace(n: int = 12) -> Path:
    """Images, manifest, score-free config and expected counts in one temp dir."""
    tmp = Path(tempfile.mkdtemp())
    lines = [",".join(MANIFEST_COLUMNS)]
    for i in range(n):
        rng = np.random.default_rng(i)
        ref = rng.integers(30, 226, (32, 32)).astype(np.uint8)
        sigma = 2.0 + 1.5 * i
        dist = np.clip(ref + rng.normal(0, sigma, ref.shape), 0, 255).astype(np.uint8)
        Image.fromarray(ref).save(tmp / f"ref{i}.png")
        Image.fromarray(dist).save(tmp / f"dist{i}.png")
        category = "noise" if i % 2 else "blur"
        lines.append(f"s{i},ref{i}.png,dist{i}.png,{90.0 - 5.0 * i + 0.3 * (i % 3)},{category},TEST")
    (tmp / "manifest.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    (tmp / "counts.json").write_text(json.dumps({"noise": n // 2, "blur": n - n // 2}), encoding="utf-8")
    return tmp


def _config(tmp: Path) -> Path:
    path = tmp / "study.json"
    path.write_text(
        json.dumps({
            "runs": 2,
            "k": 3,
            "master_seed": 4,
            "registry": ["PSNR", "SSIM"],
            "learners": ["svr"],
            "manifests": {"TEST": "manifest.csv"},
            "score_files": ["scores.csv"],
        }),
        encoding="utf-8",
    )
    return path


def test_validate_exit_codes():
    tmp = _workspace()
    manifest = str(tmp / "manifest.csv")
    result_json = tmp / "validation.json"
    assert cli_dispatch(["validate", "--manifest", manifest, "--expected", str(tmp / "counts.json"),
                         "--json", str(result_json)]) == EXIT_OK
    assert json.loads(result_json.read_text(encoding="utf-8"))["database_id"] == "TEST"

    (tmp / "wrong.json").write_text(json.dumps({"noise": 6, "blur": 5}), encoding="utf-8")
    assert cli_dispatch(["validate", "--manifest", manifest, "--expected", str(tmp / "wrong.json")]) == EXIT_MISMATCH


def test_usage_errors_exit_with_two():
    assert cli_dispatch(["part1", "--no-such-flag"]) == EXIT_USAGE
    assert cli_dispatch([]) == EXIT_USAGE
    tmp = _workspace(2)
    (tmp / "bad.json").write_text(json.dumps({"runs": 0}), encoding="utf-8")
    assert cli_dispatch(["part1", "--config", str(tmp / "bad.json"), "--out", str(tmp / "out")]) == EXIT_USAGE


def test_missing_manifest_is_a_runtime_error():
    tmp = Path(tempfile.mkdtemp())
    assert cli_dispatch(["validate", "--manifest", str(tmp / "absent.csv")]) == EXIT_RUNTIME
    assert cli_dispatch(["score", "--manifest", str(tmp / "absent.csv"), "--out", str(tmp / "s.csv")]) == EXIT_RUNTIME


def test_score_then_part1_matches_the_library_pipeline():
    tmp = _workspace()
    assert cli_dispatch(["score", "--manifest", str(tmp / "manifest.csv"), "--out", str(tmp / "scores.csv"),
                         "--metrics", "PSNR,SSIM", "--threads", "2"]) == EXIT_OK
    out = tmp / "out"
    assert cli_dispatch(["part1", "--config", str(_config(tmp)), "--out", str(out), "--threads", "1"]) == EXIT_OK

    written = json.loads((out / "part1_report.json").read_text(encoding="utf-8"))
    db = load_manifest(tmp / "manifest.csv")
    fragment = compute_native_scores(db, ("PSNR", "SSIM"), threads=1, base_dir=tmp)
    table = assemble_score_table(fragment, db.stimulus_ids, ("PSNR", "SSIM"))
    cfg = ExperimentConfig.from_json(tmp / "study.json")
    expected = run_single_method_study(db, table, cfg)
    assert written["rows"] == [row.to_dict() for row in expected.rows]
    assert (out / "part1_existing_srcc.txt").exists()
    assert (out / "part1_svr_rmse.json").exists()


def test_part1_twice_gives_identical_files():
    tmp = _workspace()
    assert cli_dispatch(["score", "--manifest", str(tmp / "manifest.csv"), "--out", str(tmp / "scores.csv"),
                         "--metrics", "PSNR,SSIM"]) == EXIT_OK
    config = str(_config(tmp))
    assert cli_dispatch(["part1", "--config", config, "--out", str(tmp / "a"), "--threads", "1"]) == EXIT_OK
    assert cli_dispatch(["part1", "--config", config, "--out", str(tmp / "b"), "--threads", "3"]) == EXIT_OK
    names = sorted(p.name for p in (tmp / "a").iterdir())
    assert names == sorted(p.name for p in (tmp / "b").iterdir())
    for name in names:
        assert (tmp / "a" / name).read_bytes() == (tmp / "b" / name).read_bytes(), name


def test_part2_and_fuse_twice_give_identical_files():
    tmp = _workspace()
    assert cli_dispatch(["score", "--manifest", str(tmp / "manifest.csv"), "--out", str(tmp / "scores.csv"),
                         "--metrics", "PSNR,SSIM"]) == EXIT_OK
    config = str(_config(tmp))
    for command in ("part2", "fuse"):
        a, b = tmp / f"{command}_a", tmp / f"{command}_b"
        assert cli_dispatch([command, "--config", config, "--out", str(a), "--threads", "1"]) == EXIT_OK
        assert cli_dispatch([command, "--config", config, "--out", str(b), "--threads", "3"]) == EXIT_OK
        names = sorted(p.name for p in a.iterdir())
        assert names and names == sorted(p.name for p in b.iterdir()), command
        for name in names:
            assert (a / name).read_bytes() == (b / name).read_bytes(), f"{command}/{name}"
    assert (tmp / "part2_a" / "part2_TEST_plcc.csv").exists()
    scatter = (tmp / "part2_a" / "part2_TEST_plcc_scatter.csv").read_text(encoding="utf-8").splitlines()
    assert scatter[0] == "stimulus_id,category,learner,subjective,raw,mapped"
    assert len(scatter) == 1 + 12
    assert (tmp / "fuse_a" / "fuse_report.json").exists()


def test_report_rerenders_a_saved_report():
    tmp = _workspace()
    assert cli_dispatch(["score", "--manifest", str(tmp / "manifest.csv"), "--out", str(tmp / "scores.csv"),
                         "--metrics", "PSNR,SSIM"]) == EXIT_OK
    assert cli_dispatch(["part1", "--config", str(_config(tmp)), "--out", str(tmp / "out")]) == EXIT_OK
    rendered = tmp / "rendered"
    assert cli_dispatch(["report", "--input", str(tmp / "out" / "part1_report.json"), "--out", str(rendered),
                         "--views", "existing", "--xlsx", str(rendered / "tables.xlsx")]) == EXIT_OK
    assert (rendered / "part1_bundle.json").exists()
    assert (rendered / "part1_report.txt").exists()
    assert (rendered / "tables.xlsx").exists()
    assert cli_dispatch(["report", "--input", str(tmp / "out" / "part1_report.json"), "--out", str(rendered),
                         "--views", "sideways"]) == EXIT_USAGE


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
