import json

import pytest

import camsa


def test_time_bands():
    assert camsa.time_score_from_seconds(13.9) == 14
    assert camsa.time_score_from_seconds(30.0) == 1
    assert camsa.time_score_from_frames(420, 30.0) == 13


def test_geometry():
    square = [(0, 0), (4, 0), (4, 4), (0, 4)]
    assert camsa.point_in_polygon((2, 2), square) == "inside"
    assert camsa.point_in_polygon((4, 2), square) == "boundary"
    assert camsa.point_in_polygon((9, 2), square) == "outside"
    assert camsa.segments_intersect((0, 0), (2, 2), (0, 2), (2, 0))


def test_errors_are_raised():
    with pytest.raises(camsa.CamsaError, match="NegativeTime"):
        camsa.time_score_from_seconds(-1.0)
    with pytest.raises(camsa.CamsaError, match="DegeneratePolygon"):
        camsa.point_in_polygon((0, 0), [(0, 0), (1, 1)])


def test_synthesize_and_score(tmp_path):
    manifest = camsa.synthesize({"seed": 3, "fault_set": ["F7"]}, tmp_path / "run")
    truth = json.loads((tmp_path / "run" / "ground_truth.json").read_text())
    assert truth["expected_failed_criteria"] == [7]
    report = camsa.score_bundle(manifest)
    failed = [c["id"] for c in report["criteria"] if not c["passed"]]
    assert failed == [7]
    assert report["total"] == 27


def test_aggregate():
    out = camsa.aggregate([("a", [1, 2, 1, 2, 1, 2, 1], 10), ("a", [2, 2, 1, 0, 1, 2, 1], 12)])
    (group,) = out["groups"]
    assert group["label"] == "a"
    assert group["count"] == 2
    assert group["sum"] == pytest.approx(20.5)
