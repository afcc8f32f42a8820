import pytest
from hypothesis import given, strategies as st

from endtrack.surface import (
    Block,
    End,
    Juncture,
    PeriodicSurface,
    SurfaceError,
    attracting_end_check,
    build_surface,
    group_disconnects,
    separating_group_size,
    surface_to_dict,
    truncate,
    validate,
    winding_graph,
    winding_juncture_labels,
)

STRIP_BLOCK = Block("strip_block", 1, 1)  # one hole: retracts to a circle


def two_ended_strip():
    j = Juncture(arcs=1)
    return PeriodicSurface(
        name="strip",
        core=STRIP_BLOCK,
        ends=(
            End("e-", -1, STRIP_BLOCK, j, frontier_index=0),
            End("e+", 1, STRIP_BLOCK, j, frontier_index=1),
        ),
    )


def test_truncation_depth_zero_is_the_core():
    t = truncate(two_ended_strip(), 0)
    assert t.frontier == (("e-", "J0"), ("e+", "J1"))
    assert t.chi == 0
    assert t.block_count == 1


def test_truncation_depth_two_characteristic():
    t = truncate(two_ended_strip(), 2)
    assert t.frontier == (("e-", "J-2"), ("e+", "J3"))
    # five one-holed blocks glued along four arcs
    assert t.chi == -4
    assert t.block_count == 5


def test_truncations_nest():
    surf = two_ended_strip()
    pieces = [truncate(surf, d) for d in range(5)]
    for small, big in zip(pieces, pieces[1:]):
        assert small.nests_inside(big)
        assert big.chi < small.chi


def test_negative_depth_rejected():
    with pytest.raises(SurfaceError):
        truncate(two_ended_strip(), -1)


def test_surface_needs_an_end():
    with pytest.raises(SurfaceError):
        PeriodicSurface("empty", STRIP_BLOCK, ())
    with pytest.raises(SurfaceError):
        build_surface({"schema": "surface-v1", "name": "x", "ends": [],
                       "core": {"name": "b", "spine_vertices": 1, "spine_edges": 1}})


def test_three_ended_surface():
    handle_block = Block("handle_block", 1, 2)
    j = Juncture(arcs=1)
    surf = PeriodicSurface(
        "pitchfork",
        core=Block("core", 1, 3),
        ends=(
            End("e+", 1, handle_block, j),
            End("e1-", -1, handle_block, j, period=2),
            End("e2-", -1, handle_block, j, period=2),
        ),
    )
    assert len(surf.ends) == 3
    assert validate(surf) == []
    t = truncate(surf, 1)
    assert t.block_count == 4
    assert t.chi == (1 - 3) + 3 * (-1 - 1)


def test_validate_reports_winding_component_mismatch():
    bad = PeriodicSurface(
        "w",
        STRIP_BLOCK,
        (
            End("e-", -1, STRIP_BLOCK, Juncture(arcs=1)),
            End("e+", 1, STRIP_BLOCK, Juncture(circles=2), winding=(2, -3)),
        ),
    )
    msgs = validate(bad)
    assert len(msgs) == 1
    assert "5 components" in msgs[0]


def test_juncture_validation():
    with pytest.raises(SurfaceError):
        Juncture()
    with pytest.raises(SurfaceError):
        Juncture(arcs=2, labels=("only-one",))
    assert Juncture(circles=5).chi == 0
    assert Juncture(arcs=2, circles=1).component_count == 3


# --- winding ends ----------------------------------------------------------


def test_grouped_juncture_labels():
    assert winding_juncture_labels(2, -3) == ("A0", "A1", "D0", "D1", "D2")
    assert winding_juncture_labels(1, 0) == ("A0",)
    with pytest.raises(SurfaceError):
        winding_juncture_labels(0, 0)


def test_winding_graph_spans():
    adj = winding_graph(2, -3, 8)
    assert adj[0] == {2, 3}
    assert adj[4] == {1, 2, 6, 7}
    with pytest.raises(SurfaceError):
        winding_graph(0, 0, 5)


def test_single_blocks_do_not_disconnect_two_minus_three():
    # interior single domains (and even pairs) leave the chain connected
    for start in range(3, 7):
        assert not group_disconnects(2, -3, start, 1)
        assert not group_disconnects(2, -3, start, 2)
    assert group_disconnects(2, -3, 4, 3)


def test_separating_group_sizes():
    assert separating_group_size(2, -3) == 3
    assert separating_group_size(1, 0) == 1
    assert separating_group_size(1, 1) == 1
    with pytest.raises(SurfaceError):
        separating_group_size(0, 0)


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_group_size_ignores_signs(m, n):
    if m == 0 and n == 0:
        return
    assert separating_group_size(m, n) == separating_group_size(-m, -n)
    assert separating_group_size(m, n) == max(abs(m), abs(n))


def test_attracting_end_model():
    assert attracting_end_check(2, -3)
    assert attracting_end_check(1, 0)


# --- serialization ---------------------------------------------------------


def test_surface_round_trip():
    surf = PeriodicSurface(
        "winding",
        STRIP_BLOCK,
        (
            End("e-", -1, STRIP_BLOCK, Juncture(arcs=1)),
            End(
                "e+",
                1,
                Block("pants", 1, 2),
                Juncture(circles=5, labels=winding_juncture_labels(2, -3)),
                winding=(2, -3),
            ),
        ),
        boundary_circles=1,
    )
    data = surface_to_dict(surf)
    assert data["schema"] == "surface-v1"
    assert build_surface(data) == surf


def test_build_surface_rejects_unknown_schema():
    with pytest.raises(SurfaceError):
        build_surface({"schema": "surface-v2", "name": "x", "ends": [{}],
                       "core": {"name": "b", "spine_vertices": 1, "spine_edges": 1}})
