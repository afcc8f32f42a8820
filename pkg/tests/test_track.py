"""Branch decomposition: cell chords, their weights, and collision tests."""

import pytest

from endtrack.charts import Strip2Chart, StripChart
from endtrack.maps import DehnTwist, EndPeriodicMap, StripShift
from endtrack.track import (
    TrackError,
    branch_cells,
    branch_weights,
    branches_cross,
    component_branches,
    supports_disjoint,
    wall_weights,
)
from endtrack.words import Arc, Loop, Multicurve, ParallelArc, canonical_loop

PLAIN = StripChart()
RUN = (("T", 0, 1), ("J", 1, 1), ("T", 1, 1),
       ("B", 1, -1), ("J", 1, -1), ("B", 0, -1))


def hole_loop(n):
    return canonical_loop(PLAIN, (("T", n, 1), ("B", n, -1)))


def test_loop_branches_follow_the_word():
    loop = canonical_loop(PLAIN, RUN)
    branches = component_branches(PLAIN, loop)
    assert len(branches) == 6
    assert set(branches) == {
        ("chord", (0, "E"), (("w", ("J", 1)), ("w", ("T", 0)))),
        ("chord", (1, "W"), (("w", ("J", 1)), ("w", ("T", 1)))),
        ("chord", (1, "E"), (("w", ("B", 1)), ("w", ("T", 1)))),
        ("chord", (1, "W"), (("w", ("B", 1)), ("w", ("J", 1)))),
        ("chord", (0, "E"), (("w", ("B", 0)), ("w", ("J", 1)))),
        ("chord", (0, "W"), (("w", ("B", 0)), ("w", ("T", 0)))),
    }


def test_hole_loop_gives_one_branch_per_side():
    branches = branch_weights(PLAIN, Multicurve.of([(hole_loop(0), 2)]))
    pair = (("w", ("B", 0)), ("w", ("T", 0)))
    assert branches == {
        ("chord", (0, "W"), pair): 2,
        ("chord", (0, "E"), pair): 2,
    }


def test_arc_branches_use_anchor_feet():
    arc = Arc(("bottom", 0), (("B", 0, 1), ("T", 0, -1)), ("top", 0))
    branches = component_branches(PLAIN, arc)
    assert branches == [
        ("chord", (0, "W"), (("a", ("bottom", 0)), ("w", ("B", 0)))),
        ("chord", (0, "E"), (("w", ("B", 0)), ("w", ("T", 0)))),
        ("chord", (0, "W"), (("a", ("top", 0)), ("w", ("T", 0)))),
    ]


def test_parallel_arc_is_its_own_branch():
    mc = Multicurve.of([(ParallelArc(("J", 3)), 5)])
    assert branch_weights(PLAIN, mc) == {("parallel", ("J", 3)): 5}
    assert wall_weights(branch_weights(PLAIN, mc)) == {}


def test_wall_weights_recover_crossing_counts():
    simple = EndPeriodicMap(PLAIN, StripShift(1), [DehnTwist(RUN, 1)])
    mc = Multicurve.of([ParallelArc(("J", 0)), hole_loop(1)])
    for step in range(4):
        assert wall_weights(branch_weights(PLAIN, mc)) == mc.weights()
        mc = simple.apply(mc)


def test_chords_cross_only_on_interleaved_endpoints():
    cell = (0, "W")
    # boundary walk of (0, W): bottom, B0, hole0, T0, top, J0
    spans_hole = ("chord", cell, (("w", ("B", 0)), ("w", ("T", 0))))
    hole_to_j = ("chord", cell, (("a", ("hole", 0)), ("w", ("J", 0))))
    hole_to_top = ("chord", cell, (("a", ("hole", 0)), ("a", ("top", 0))))
    top_to_j = ("chord", cell, (("a", ("top", 0)), ("w", ("J", 0))))
    assert branches_cross(PLAIN, spans_hole, hole_to_j)
    assert branches_cross(PLAIN, spans_hole, hole_to_top)
    assert not branches_cross(PLAIN, spans_hole, top_to_j)
    assert not branches_cross(PLAIN, hole_to_j, top_to_j)  # shared J0 foot
    other_cell = ("chord", (1, "W"), (("w", ("B", 1)), ("w", ("T", 1))))
    assert not branches_cross(PLAIN, spans_hole, other_cell)


def test_parallel_branch_collides_with_feet_on_its_wall():
    par = ("parallel", ("J", 1))
    run_branches = component_branches(PLAIN, canonical_loop(PLAIN, RUN))
    assert any(branches_cross(PLAIN, par, br) for br in run_branches)
    hole = component_branches(PLAIN, hole_loop(0))
    assert not any(branches_cross(PLAIN, par, br) for br in hole)
    assert not branches_cross(PLAIN, par, ("parallel", ("J", 1)))
    assert not branches_cross(PLAIN, par, ("parallel", ("T", 4)))


def test_disjoint_cells_certify_disjoint_supports():
    b0 = component_branches(PLAIN, hole_loop(0))
    b2 = component_branches(PLAIN, hole_loop(2))
    assert supports_disjoint(PLAIN, b0, b2)
    assert supports_disjoint(PLAIN, [("parallel", ("J", 1))], b0)


def test_forced_collision_refutes_disjointness():
    run_branches = component_branches(PLAIN, canonical_loop(PLAIN, RUN))
    assert not supports_disjoint(PLAIN, [("parallel", ("J", 1))], run_branches)


def test_shared_cells_without_collision_are_inconclusive():
    # a hole loop nests inside the two-hole loop: disjoint, but only a
    # strand-order argument shows it, so the certifier must abstain
    run_branches = component_branches(PLAIN, canonical_loop(PLAIN, RUN))
    b0 = component_branches(PLAIN, hole_loop(0))
    with pytest.raises(TrackError):
        supports_disjoint(PLAIN, run_branches, b0)


def test_odd_feet_are_rejected():
    with pytest.raises(TrackError):
        wall_weights({("chord", (0, "E"), (("w", ("B", 0)), ("w", ("T", 0)))): 1})


def test_strip2_seam_branches():
    chart = Strip2Chart(handle=True)
    tube = canonical_loop(chart, (("WA", 0, -1), ("WB", 0, 1)))
    pair = (("w", ("WA", 0)), ("w", ("WB", 0)))
    assert branch_weights(chart, Multicurve.of([tube])) == {
        ("chord", (0, "W"), pair): 1,
        ("chord", (0, "E"), pair): 1,
    }
