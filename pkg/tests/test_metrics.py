"""Tests for PSNR, SSIM, MS-SSIM, native scoring and the feature matrix.

Run directly (no pytest needed):
    python -m tests.test_metrics
"""

import math
import tempfile
from pathlib import Path

import numpy as np
from PIL import Image

from iqa_boost.exceptions import CompletenessError, RegistryError, ShapeError
from iqa_boost.metrics import (
    PSNR_CAP_DB,
    build_feature_matrix,
    compute_ms_ssim,
    compute_native_scores,
    compute_psnr,
    compute_ssim,
    ssim_components,
)
from iqa_boost.metrics.structural import (
    MS_SSIM_WEIGHTS,
    downsample,
    gaussian_window,
    ms_ssim_min_size,
)
from iqa_boost.models import Database, GrayImage, ScoreTable, SSIMParams, StimulusRecord
from iqa_boost.processors import load_gray_image


def _noise_image(h: int, w: int, seed: int) -> GrayImage:
    rng = np.random.default_rng(seed)
    return GrayImage(rng.integers(0, 256, size=(h, w)).astype(np.float64))


def _distort(img: GrayImage, sigma: float, seed: int) -> GrayImage:
    rng = np.random.default_rng(seed)
    return GrayImage(np.clip(img.samples + rng.normal(0, sigma, img.samples.shape), 0, 255))


def _ssim_oracle(x: np.ndarray, y: np.ndarray, params: SSIMParams = SSIMParams(), L: float = 255.0) -> float:
    """Explicit loop over every fully-contained window."""
    taps = gaussian_window(params.window_size, params.sigma)
    weights = np.outer(taps, taps)
    c1, c2 = (params.k1 * L) ** 2, (params.k2 * L) ** 2
    k = params.window_size
    values = []
    for i in range(x.shape[0] - k + 1):
        for j in range(x.shape[1] - k + 1):
            px, py = x[i:i + k, j:j + k], y[i:i + k, j:j + k]
            mx, my = np.sum(weights * px), np.sum(weights * py)
            vx = np.sum(weights * (px - mx) ** 2)
            vy = np.sum(weights * (py - my) ** 2)
            cxy = np.sum(weights * (px - mx) * (py - my))
            values.append(((2 * mx * my + c1) * (2 * cxy + c2)) / ((mx ** 2 + my ** 2 + c1) * (vx + vy + c2)))
    return float(np.mean(values))


def test_psnr_identical_images_hit_the_cap():
    img = _noise_image(8, 8, 0)
    assert compute_psnr(img, img) == PSNR_CAP_DB


def test_psnr_closed_form():
    ref = GrayImage(np.zeros((4, 6)))
    dist = GrayImage(np.full((4, 6), 10.0))
    assert abs(compute_psnr(ref, dist) - 10 * math.log10(255.0 ** 2 / 100.0)) < 1e-12


def test_psnr_of_unit_offset_and_loop_oracle():
    ref = _noise_image(16, 16, 9)
    shifted = GrayImage(np.minimum(ref.samples, 254.0) + 1.0)
    assert abs(compute_psnr(GrayImage(np.full((8, 8), 3.0)), GrayImage(np.full((8, 8), 4.0))) - 48.1308036) < 1e-6
    total = 0.0
    for i in range(16):
        for j in range(16):
            total += (ref.samples[i, j] - shifted.samples[i, j]) ** 2
    expected = 10 * math.log10(255.0 ** 2 / (total / 256))
    assert abs(compute_psnr(ref, shifted) - expected) < 1e-12
    assert compute_psnr(ref, shifted) == compute_psnr(shifted, ref)


def test_ssim_of_constant_images_has_closed_form():
    a, b = 100.0, 150.0
    c1 = (0.01 * 255.0) ** 2
    expected = (2 * a * b + c1) / (a * a + b * b + c1)
    value = compute_ssim(GrayImage(np.full((16, 16), a)), GrayImage(np.full((16, 16), b)))
    assert abs(value - expected) < 1e-12


def test_psnr_decreases_with_noise():
    ref = _noise_image(32, 32, 1)
    assert compute_psnr(ref, _distort(ref, 2, 2)) > compute_psnr(ref, _distort(ref, 20, 2))


def test_mismatched_pairs_are_shape_errors():
    a = _noise_image(16, 16, 0)
    for b in (_noise_image(16, 15, 0), GrayImage(a.samples / 255.0, dynamic_range=1.0)):
        for fn in (compute_psnr, compute_ssim):
            raised = False
            try:
                fn(a, b)
            except ShapeError:
                raised = True
            assert raised, fn.__name__


def test_ssim_identical_is_one_and_symmetric():
    ref = _noise_image(24, 20, 3)
    dist = _distort(ref, 15, 4)
    assert abs(compute_ssim(ref, ref) - 1.0) < 1e-12
    assert abs(compute_ssim(ref, dist) - compute_ssim(dist, ref)) < 1e-12
    assert compute_ssim(ref, dist) < 1.0


def test_ssim_matches_windowed_loop_oracle():
    ref = _noise_image(15, 14, 5)
    dist = _distort(ref, 25, 6)
    assert abs(compute_ssim(ref, dist) - _ssim_oracle(ref.samples, dist.samples)) < 1e-10


def test_ssim_matches_loop_oracle_on_random_64x64_pairs():
    rng = np.random.default_rng(2024)
    for i in range(100):
        ref = _noise_image(64, 64, 1000 + i)
        dist = _distort(ref, float(rng.uniform(2.0, 80.0)), 5000 + i)
        expected = _ssim_oracle(ref.samples, dist.samples)
        assert abs(compute_ssim(ref, dist) - expected) < 1e-9, f"pair {i}"


def test_ms_ssim_equals_product_of_per_scale_terms():
    ref = _noise_image(256, 256, 31)
    dist = _distort(ref, 20, 32)
    x, y = ref.samples, dist.samples
    expected = 1.0
    for scale, weight in enumerate(MS_SSIM_WEIGHTS):
        ssim, cs = ssim_components(GrayImage(x), GrayImage(y))
        last = scale == len(MS_SSIM_WEIGHTS) - 1
        term = ssim if last else cs
        assert term > 0.0
        expected *= term ** weight
        x, y = downsample(x), downsample(y)
        assert x.shape == (256 >> (scale + 1), 256 >> (scale + 1))
    assert abs(compute_ms_ssim(ref, dist) - expected) < 1e-9


def test_ssim_components_of_flat_identical_images_are_one():
    ref = GrayImage(np.full((12, 12), 100.0))
    ssim, cs = ssim_components(ref, ref)
    assert abs(ssim - 1.0) < 1e-12 and abs(cs - 1.0) < 1e-12


def test_image_smaller_than_window_is_rejected():
    raised = False
    try:
        compute_ssim(_noise_image(10, 40, 0), _noise_image(10, 40, 1))
    except ShapeError:
        raised = True
    assert raised


def test_ms_ssim_identical_is_one_and_needs_five_scales():
    assert ms_ssim_min_size() == 176
    ref = _noise_image(176, 180, 7)
    assert abs(compute_ms_ssim(ref, ref) - 1.0) < 1e-12
    assert 0.0 <= compute_ms_ssim(ref, _distort(ref, 30, 8)) < 1.0
    raised = False
    try:
        compute_ms_ssim(_noise_image(175, 200, 0), _noise_image(175, 200, 1))
    except ShapeError:
        raised = True
    assert raised


def _image_database(tmp: Path, n: int = 4) -> Database:
    records = []
    for i in range(n):
        ref = (np.random.default_rng(i).integers(0, 256, (32, 32))).astype(np.uint8)
        dist = np.clip(ref.astype(int) + (i + 1) * 3, 0, 255).astype(np.uint8)
        Image.fromarray(ref).save(tmp / f"ref{i}.png")
        Image.fromarray(dist).save(tmp / f"dist{i}.png")
        records.append(StimulusRecord(f"s{i}", f"ref{i}.png", f"dist{i}.png", float(i), "noise", "TEST"))
    return Database("TEST", tuple(records))


def test_native_scores_match_direct_computation_for_any_thread_count():
    tmp = Path(tempfile.mkdtemp())
    db = _image_database(tmp)
    one = compute_native_scores(db, ("PSNR", "SSIM"), threads=1, base_dir=tmp)
    many = compute_native_scores(db, ("PSNR", "SSIM"), threads=4, base_dir=tmp)
    assert one == many
    assert len(one) == 2 * len(db)
    ref = load_gray_image(tmp / "ref2.png")
    dist = load_gray_image(tmp / "dist2.png")
    assert one[("s2", "PSNR")] == compute_psnr(ref, dist)
    assert one[("s2", "SSIM")] == compute_ssim(ref, dist)


def test_native_scores_reject_external_metrics():
    tmp = Path(tempfile.mkdtemp())
    raised = None
    try:
        compute_native_scores(_image_database(tmp, 1), ("FSIMc",), base_dir=tmp)
    except RegistryError as e:
        raised = e
    assert raised is not None


def _score_db(n: int) -> Database:
    return Database("DB", tuple(StimulusRecord(f"s{i}", "r", "d", float(i), "blur", "DB") for i in range(n)))


def test_feature_matrix_equals_table_lookup():
    rng = np.random.default_rng(0)
    metric_ids = tuple(f"M{j}" for j in range(11))
    db = _score_db(9)
    shuffled = list(reversed(db.stimulus_ids))
    table = ScoreTable(tuple(shuffled), metric_ids, rng.normal(size=(9, 11)))
    selected = ["M3", "M0", "M10"]
    X, y = build_feature_matrix(db, table, selected)
    assert X.shape == (9, 3)
    for i, sid in enumerate(db.stimulus_ids):
        for j, m in enumerate(selected):
            assert X[i, j] == table.lookup(sid, m)
    assert list(y) == db.subjective_scores


def test_feature_matrix_names_first_missing_pair():
    db = _score_db(3)
    table = ScoreTable(("s0", "s1"), ("PSNR",), np.ones((2, 1)))
    for selected, missing in ((["PSNR"], ("s2", "PSNR")), (["SSIM", "PSNR"], ("s0", "SSIM"))):
        raised = None
        try:
            build_feature_matrix(db, table, selected)
        except CompletenessError as e:
            raised = e
        assert raised is not None
        assert raised.missing == missing


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
