import json

import pytest

from adjcheck.errors import ConfigError
from adjcheck.report import CheckEntry, CheckReport, validate_report_dict


def sample_report():
    r = CheckReport(battery="coherence", context="wirthmueller(S3/C3, Q)", seed=7, samples=3)
    r.add(CheckEntry("triangle-left", ("X1",), True, dims=(6, 6)))
    r.add(CheckEntry("triangle-left", ("X0",), True, dims=(3, 3)))
    r.add(
        CheckEntry(
            "projection", ("X0", "Y1"), False, dims=(4, 4), rank=3, is_iso=False, details="rank drop"
        )
    )
    return r


def test_entries_sorted_in_json():
    payload = json.loads(sample_report().to_json())
    ats = [(e["map"], tuple(e["at"])) for e in payload["entries"]]
    assert ats == sorted(ats)


def test_json_is_deterministic_and_validates():
    a = sample_report().to_json()
    b = sample_report().to_json()
    assert a == b
    assert a.endswith("\n")
    validate_report_dict(json.loads(a))


def test_wall_time_absent_from_json_present_in_markdown():
    r = sample_report()
    r.wall_time_s = 1.25
    assert "wall" not in r.to_json()
    assert "wall time: 1.250s" in r.to_markdown()


def test_passed_property():
    r = sample_report()
    assert not r.passed
    r.entries = [e for e in r.entries if e.passed]
    assert r.passed
    r.error = ("NotFree", "boom")
    assert not r.passed


def test_summary_counts():
    assert sample_report().summary() == {"total": 3, "passed": 2, "failed": 1}


def test_markdown_groups_by_check_name():
    md = sample_report().to_markdown()
    assert md.count("## triangle-left") == 1
    assert "| X0, Y1 | NO | 4x4 | 3 | false | rank drop |" in md


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda p: p.pop("seed"), "missing keys"),
        (lambda p: p.update(extra=1), "unknown keys"),
        (lambda p: p["entries"][0].pop("map"), "missing 'map'"),
        (lambda p: p["entries"][0].update(dims=[1]), "'dims'"),
        (lambda p: p["entries"][0].update(rank=True), "must be int"),
        (lambda p: p["summary"].update(total=99), "inconsistent"),
        (lambda p: p.update(error={"type": "X"}), "error must be null"),
    ],
)
def test_validator_rejects(mutate, fragment):
    payload = json.loads(sample_report().to_json())
    mutate(payload)
    with pytest.raises(ConfigError, match="schema violation"):
        try:
            validate_report_dict(payload)
        except ConfigError as exc:
            assert fragment in str(exc)
            raise


def test_error_report_serializes():
    r = CheckReport(battery="twist", context="x", error=("OmegaNotIso", "rank 3 of 4"))
    payload = json.loads(r.to_json())
    validate_report_dict(payload)
    assert payload["error"] == {"type": "OmegaNotIso", "message": "rank 3 of 4"}
