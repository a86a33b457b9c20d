"""Tests for category counting and the expected-count check.

Run directly (no pytest needed):
    python -m tests.test_database_validator
"""

import json
import random
import tempfile
from pathlib import Path

from iqa_boost.exceptions import RegistryError
from iqa_boost.models import CATEGORIES, Database, StimulusRecord
from iqa_boost.utils import expected_counts, read_counts_file
from iqa_boost.validators import DatabaseValidator, category_counts, validate_database


def _db(categories, database_id: str = "LIVE") -> Database:
    records = tuple(
        StimulusRecord(f"s{i}", "r.png", f"d{i}.png", float(i), c, database_id)
        for i, c in enumerate(categories)
    )
    return Database(database_id, records)


def _live_like() -> Database:
    counts = expected_counts("LIVE")
    return _db([c for c in CATEGORIES for _ in range(counts[c])])


def test_blur_only_database_counts_zero_elsewhere():
    counts = category_counts(_db(["blur"] * 5))
    assert counts == {"compression": 0, "noise": 0, "communication": 0, "blur": 5,
                      "color": 0, "global": 0, "local": 0}


def test_counts_match_brute_force_tally():
    rng = random.Random(7)
    cats = [rng.choice(CATEGORIES) for _ in range(300)]
    counts = category_counts(_db(cats))
    for c in CATEGORIES:
        assert counts[c] == sum(1 for x in cats if x == c)
    assert sum(counts.values()) == 300


def test_table_counts_for_the_three_databases():
    assert expected_counts("LIVE") == {"compression": 460, "noise": 174, "communication": 174,
                                       "blur": 174, "color": 0, "global": 0, "local": 0}
    assert sum(expected_counts("LIVE").values()) == 982
    assert sum(expected_counts("MULTI").values()) == 675
    assert sum(expected_counts("TID13").values()) == 3125


def test_unknown_database_suggests_closest():
    raised = None
    try:
        expected_counts("TID2013")
    except RegistryError as e:
        raised = e
    assert raised is not None
    assert raised.suggestion == "TID13"


def test_matching_database_passes():
    result = validate_database(_live_like(), expected_counts("LIVE"))
    assert result.is_valid
    assert result.total_matches
    assert result.mismatched_categories == []
    assert len(result.validations) == len(CATEGORIES) + 1


def test_missing_records_are_reported_per_category():
    db = _live_like()
    trimmed = Database("LIVE", tuple(r for r in db.records if r.stimulus_id != "s0"))
    result = DatabaseValidator(expected_counts("LIVE")).validate(trimmed)
    assert not result.is_valid
    assert result.mismatched_categories == ["compression"]
    assert not result.total_matches
    assert result.to_dict()["status"] == "MISMATCH"


def test_expected_counts_reject_unknown_categories():
    raised = False
    try:
        DatabaseValidator({"blurring": 3})
    except ValueError:
        raised = True
    assert raised
    path = Path(tempfile.mkdtemp()) / "counts.json"
    path.write_text(json.dumps({"blur": 5}), encoding="utf-8")
    assert read_counts_file(path)["blur"] == 5
    assert read_counts_file(path)["noise"] == 0


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
