"""Constellation file format: canonical writer, validating reader."""

import json

import numpy as np
import pytest

from apsk_shaper import (
    DomainError,
    box_muller_apsk,
    dumps_constellation,
    dvb_variant_apsk,
    loads_constellation,
    read_constellation,
    square_qam,
    write_constellation,
)


def test_round_trip_exact():
    for c in (box_muller_apsk(3, 2.0), dvb_variant_apsk(4), square_qam(4, 0.5)):
        back = loads_constellation(dumps_constellation(c))
        assert back.label == c.label
        assert back.family == c.family
        assert back.n == c.n
        assert back.power == c.power
        assert np.array_equal(back.points, c.points)


def test_writer_is_canonical_and_idempotent(tmp_path):
    c = box_muller_apsk(2)
    text = dumps_constellation(c)
    assert text == dumps_constellation(loads_constellation(text))
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    write_constellation(c, p1)
    write_constellation(c, p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert read_constellation(p1).points is not None


def test_seventeen_significant_digits():
    c = box_muller_apsk(2)
    doc = json.loads(dumps_constellation(c))
    # parsing the emitted digits reproduces the doubles exactly
    assert np.array_equal(np.asarray(doc["points"]), c.points)
    text = dumps_constellation(c)
    assert "1.1774100225154747" in text


def _doc(c):
    return json.loads(dumps_constellation(c))


def _reject(doc, match=None):
    with pytest.raises(DomainError, match=match):
        loads_constellation(json.dumps(doc))


def test_reader_rejects_bad_documents():
    base = _doc(box_muller_apsk(2))

    doc = dict(base)
    del doc["power"]
    _reject(doc, "missing")

    doc = dict(base)
    doc["extra"] = 1
    _reject(doc, "unknown")

    doc = dict(base)
    doc["family"] = "hexagonal"
    _reject(doc)

    doc = dict(base)
    doc["n"] = 3  # wrong cardinality for the stored 4 points
    _reject(doc)

    doc = dict(base)
    doc["power"] = -1.0
    _reject(doc)

    doc = dict(base)
    doc["points"] = [[0.0, "x"]] * 4
    _reject(doc)

    _reject([1, 2, 3])
    with pytest.raises(DomainError):
        loads_constellation("not json at all {")


def test_reader_rejects_duplicate_points():
    doc = _doc(square_qam(2))
    doc["points"][1] = doc["points"][0]
    _reject(doc, "distinct")


def test_reader_rejects_off_ring_points():
    doc = _doc(box_muller_apsk(2))
    doc["points"][0][1] *= 1.001  # push one point off its ring
    _reject(doc)


def test_reader_rejects_power_budget_violations():
    doc = _doc(box_muller_apsk(2))
    doc["power"] = 0.5  # realized average power now exceeds the budget
    _reject(doc, "exceeds")

    doc = _doc(square_qam(2))
    doc["power"] = 2.0  # QAM must sit exactly at the budget
    _reject(doc)


def test_reader_rejects_non_finite_points():
    doc = _doc(square_qam(2))
    text = json.dumps(doc).replace(doc["points"][0][0].__repr__(), "1e999", 1)
    with pytest.raises(DomainError):
        loads_constellation(text)


def test_reader_accepts_normalized_apsk():
    c = box_muller_apsk(4, 2.0, normalize=True)
    back = loads_constellation(dumps_constellation(c))
    assert np.array_equal(back.points, c.points)


def test_read_missing_file():
    with pytest.raises(DomainError):
        read_constellation("/nonexistent/path.json")
