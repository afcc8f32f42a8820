"""Exact plane-geometry helpers used by the polyline tracer."""

from fractions import Fraction as F

import pytest

from endtrack.geom import (interpolate, polyline_length_params, pt,
                           rectilinear_offset, seg_intersection,
                           segment_hits_rect, touches)


def test_seg_intersection_proper_crossing():
    p = (pt(0, 0), pt(2, 2))
    q = (pt(0, 2), pt(2, 0))
    t, u = seg_intersection(p, q)
    assert t == F(1, 2) and u == F(1, 2)
    assert interpolate(*p, t) == pt(1, 1)


def test_seg_intersection_rejects_touch_and_miss():
    p = (pt(0, 0), pt(2, 0))
    assert seg_intersection(p, (pt(2, 0), pt(2, 2))) is None  # endpoint touch
    assert seg_intersection(p, (pt(0, 1), pt(2, 1))) is None  # parallel
    assert seg_intersection(p, (pt(3, -1), pt(3, 1))) is None  # miss


def test_touches_detects_non_transversal_contact():
    p = (pt(0, 0), pt(2, 0))
    assert touches(p, (pt(2, 0), pt(2, 2)))        # shared endpoint
    assert touches(p, (pt(1, 0), pt(1, 2)))        # T-contact
    assert touches(p, (pt(1, 0), pt(3, 0)))        # collinear overlap
    assert not touches(p, (pt(1, 1), pt(1, 2)))    # disjoint
    assert not touches(p, (pt(1, -1), pt(1, 1)))   # proper crossing


def test_segment_hits_rect():
    rect = (pt(0, 0), pt(1, 1))
    assert segment_hits_rect((pt(-1, F(1, 2)), pt(2, F(1, 2))), rect)
    assert segment_hits_rect((pt(F(1, 2), F(1, 2)), pt(5, 5)), rect)  # endpoint inside
    assert not segment_hits_rect((pt(-1, 2), pt(2, 2)), rect)
    assert not segment_hits_rect((pt(2, -1), pt(2, 2)), rect)
    # Bounding boxes overlap but the segment passes clear of the corner.
    assert not segment_hits_rect((pt(2, 1), pt(1, 2)), rect)
    assert segment_hits_rect((pt(F(3, 2), 0), pt(0, F(3, 2))), rect)


def test_rectilinear_offset_closed_square():
    square = [pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)]
    inner = rectilinear_offset(square, F(1), closed=True)
    assert inner == [pt(1, 1), pt(3, 1), pt(3, 3), pt(1, 3)]
    outer = rectilinear_offset(square, F(-1), closed=True)
    assert outer == [pt(-1, -1), pt(5, -1), pt(5, 5), pt(-1, 5)]


def test_rectilinear_offset_open_path_keeps_endpoints_on_offset_lines():
    path = [pt(0, 0), pt(2, 0), pt(2, 2)]
    off = rectilinear_offset(path, F(1, 2), closed=False)
    assert off == [pt(0, F(1, 2)), pt(F(3, 2), F(1, 2)), pt(F(3, 2), 2)]


def test_rectilinear_offset_rejects_diagonals():
    with pytest.raises(ValueError):
        rectilinear_offset([pt(0, 0), pt(1, 1)], F(1), closed=False)
    with pytest.raises(ValueError):
        rectilinear_offset([pt(0, 0), pt(0, 0)], F(1), closed=False)


def test_polyline_length_params_cumulative():
    path = [pt(0, 0), pt(3, 0), pt(3, 2)]
    assert polyline_length_params(path) == [F(0), F(3), F(5)]
