"""Chart consistency: boundary walks, wall sides, symmetries, weld vertices."""

import pytest

from endtrack.charts import Strip2Chart, StripChart
from endtrack.words import word_cells

CHARTS = [StripChart(), StripChart(crosscap=True),
          Strip2Chart(), Strip2Chart(handle=True)]


@pytest.mark.parametrize("chart", CHARTS, ids=lambda c: c.name)
def test_validate_window(chart):
    chart.validate_window(-4, 4)


@pytest.mark.parametrize("chart", CHARTS, ids=lambda c: c.name)
def test_every_wall_flanks_its_sides(chart):
    for n in (-1, 0, 2):
        for wall in chart.walls_of_block(n):
            a, b = chart.sides(wall)
            assert a != b
            for cell in (a, b):
                walls_here = [p for k, p in chart.boundary(cell) if k == "w"]
                assert wall in walls_here


def test_orientation_flip_only_on_the_crosscap_seam():
    crosscap = StripChart(crosscap=True)
    assert crosscap.orientation_flip(("W", 0))
    for family in ("T", "B", "J"):
        assert not crosscap.orientation_flip((family, 0))
    handle = Strip2Chart(handle=True)
    for family in handle.families:
        assert not handle.orientation_flip((family, 1))
    plain = StripChart()
    for family in plain.families:
        assert not plain.orientation_flip((family, 0))


@pytest.mark.parametrize("chart", CHARTS, ids=lambda c: c.name)
def test_flip_is_an_involution(chart):
    for wall in chart.walls_of_block(0):
        assert chart.flip_wall(chart.flip_wall(wall)) == wall
    for line in (("top", 0), ("bottom", 0)):
        assert chart.flip_line(chart.flip_line(line)) == line


def test_flip_exchanges_top_and_bottom():
    chart = StripChart()
    assert chart.flip_wall(("T", 3)) == ("B", 3)
    assert chart.flip_wall(("J", 3)) == ("J", 3)
    assert chart.flip_line(("top", 0)) == ("bottom", 0)
    assert chart.flip_line(("hole", 2)) == ("hole", 2)
    handle = Strip2Chart(handle=True)
    assert handle.flip_wall(("WA", 1)) == ("WB", 1)
    assert handle.flip_wall(("M", 1)) == ("M", 1)


def test_shift_moves_blocks_and_fixes_horizontal_lines():
    chart = StripChart()
    assert chart.shift_wall(("T", 0), 2) == ("T", 2)
    assert chart.shift_line(("top", 0), 2) == ("top", 0)
    assert chart.shift_line(("hole", 1), 2) == ("hole", 3)


def test_juncture_separates_adjacent_blocks():
    chart = Strip2Chart()
    assert chart.sides(("J", 2)) == ((1, "E"), (2, "W"))
    assert chart.cells_of_block(2) == ((2, "W"), (2, "E"))


@pytest.mark.parametrize("chart", CHARTS, ids=lambda c: c.name)
def test_vertex_links_per_block(chart):
    expected = {"strip": 0, "strip-crosscap": 1, "strip2": 0, "strip2-handle": 2}
    links = chart.vertex_links([0, 1])
    assert len(links) == 2 * expected[chart.name]
    for link in links:
        relator = tuple((w[0], w[1], s) for w, s in link)
        # A germ loop must be an actual closed path in the chart.
        cells = word_cells(chart, relator, closed=True)
        assert len(cells) == len(relator)


def test_attaches_depends_on_gluing():
    plain = StripChart()
    assert plain.attaches(("T", 2), ("top", 0))
    assert plain.attaches(("T", 2), ("hole", 2))
    assert not plain.attaches(("T", 2), ("hole", 1))
    crosscap = StripChart(crosscap=True)
    assert crosscap.attaches(("T", 2), ("top", 0))
    assert not crosscap.attaches(("T", 2), ("hole", 2))
    assert not crosscap.attaches(("W", 2), ("top", 0))
    handle = Strip2Chart(handle=True)
    assert not handle.attaches(("M", 0), ("holeT", 0))
    strip2 = Strip2Chart()
    assert strip2.attaches(("M", 0), ("holeT", 0))
    assert strip2.attaches(("M", 0), ("holeB", 0))
