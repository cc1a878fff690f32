import json

import pytest

from fuzzycolor.report import SCHEMA_VERSION, CentroidEntry, RunReport


def sample():
    return RunReport(
        algorithm="fuzzy-color",
        config={"clusters": 2},
        input={"path": "x.csv", "elements": 3},
        iterations=2,
        converged=True,
        j_history=[3.0, 1.0, 1.0],
        centroids=[CentroidEntry(50, 1, 2, 2.3, "gray"), CentroidEntry(90, 0, 0, 2.3, "white")],
        cluster_counts=[2, 1],
        duration_seconds=0.25,
    )


def test_round_trip():
    r = sample()
    assert RunReport.loads(r.dumps()) == r


def test_duration_excluded_on_request():
    d = json.loads(sample().dumps(include_duration=False))
    assert "duration_seconds" not in d
    assert d["schema_version"] == SCHEMA_VERSION


def test_output_is_key_sorted():
    d = json.loads(sample().dumps())
    assert list(d) == sorted(d)


def test_rejects_wrong_version_and_unknown_fields():
    d = sample().to_dict()
    with pytest.raises(ValueError, match="schema_version"):
        RunReport.from_dict({**d, "schema_version": 99})
    with pytest.raises(ValueError, match="unknown"):
        RunReport.from_dict({**d, "extra": 1})
