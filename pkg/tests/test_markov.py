"""Rectangle-dynamics tests: crossing matrices, measures, symbolic words."""

from fractions import Fraction

import pytest

from endtrack import exact
from endtrack.markov import (
    EDGE_LETTERS,
    InvariantMeasure,
    MarkedPoint,
    MarkovError,
    RectanglePresentation,
    TransitionMatrix,
    admissible,
    apply_symmetry,
    build_presentation,
    markov_rectangles,
    measure_scaling,
    periodic_points,
    perron,
    presentation_to_dict,
    reconstruct_check,
    transition_matrix,
)

IDENTITY_EDGES = tuple((x, x, 1) for x in EDGE_LETTERS)
FOLDED_EMBEDDING = (
    ("alpha+", "alpha-"),
    ("beta+", "alpha-"),
    ("delta-", "gamma+"),
    ("gamma-", "gamma+"),
)
STRAIGHT_EMBEDDING = (
    ("alpha+", "alpha-"),
    ("beta+", "beta-"),
    ("delta-", "delta+"),
    ("gamma-", "gamma+"),
)
SWAPPED_EMBEDDING = (
    ("alpha+", "beta-"),
    ("beta+", "alpha-"),
    ("delta-", "gamma+"),
    ("gamma-", "delta+"),
)


def row(*names):
    return tuple((n, 1) for n in names)


def simple_pres():
    return RectanglePresentation(
        rectangles=("M1", "M2"),
        layout_neg=row("M1", "M2"),
        layout_pos=row("M1", "M2"),
        connectors_neg=("C-",),
        connectors_pos=("C+",),
        edge_map=IDENTITY_EDGES,
        edge_embedding=FOLDED_EMBEDDING,
        itineraries=(("M1", ("M1", "M2")), ("M2", ("M1", "M2"))),
        points=(
            MarkedPoint("p", ("M1",), ("alpha", "gamma")),
            MarkedPoint("q", ("M2",), (), note="corner word; unmarked dynamics"),
        ),
    )


def flip_pres():
    return RectanglePresentation(
        rectangles=("M1", "M2"),
        layout_neg=row("M1", "M2"),
        layout_pos=row("M1", "M2"),
        connectors_neg=("C-",),
        connectors_pos=("C+",),
        edge_map=tuple((x, x, -1) for x in EDGE_LETTERS),
        edge_embedding=SWAPPED_EMBEDDING,
        itineraries=(("M1", ("M1", "M1")), ("M2", ("M2", "M2"))),
        symmetry="flip",
        swap=(("M1", "M2"), ("M2", "M1")),
        points=(
            MarkedPoint("p", ("M1", "M2")),
            MarkedPoint("q", ("M2", "M1")),
        ),
    )


def fenley_pres():
    names = ("M1", "M2", "M3", "M4")
    return RectanglePresentation(
        rectangles=names,
        layout_neg=row(*names),
        layout_pos=row(*names),
        connectors_neg=("C-1", "C-2", "C-3"),
        connectors_pos=("C+1", "C+2", "C+3"),
        edge_map=IDENTITY_EDGES,
        edge_embedding=FOLDED_EMBEDDING,
        itineraries=tuple((n, names) for n in names),
    )


def ladder_pres():
    return RectanglePresentation(
        rectangles=("M1", "M2", "M3"),
        layout_neg=row("M1", "M2", "M3"),
        layout_pos=row("M1", "M2", "M3"),
        connectors_neg=("C-1", "C-2"),
        connectors_pos=("C+1", "C+2"),
        edge_map=IDENTITY_EDGES,
        edge_embedding=FOLDED_EMBEDDING,
        itineraries=(
            ("M1", ("M1", "M2")),
            ("M2", ("M1", "M2", "M3")),
            ("M3", ("M3",)),
        ),
        points=(
            MarkedPoint("p", ("M1",), ("alpha", "gamma")),
            MarkedPoint("q", ("M2",)),
        ),
    )


def pants_pres(embedding=STRAIGHT_EMBEDDING):
    return RectanglePresentation(
        rectangles=("M1", "M2"),
        layout_neg=row("M1", "M2"),
        layout_pos=row("M1", "M2"),
        connectors_neg=("C-",),
        connectors_pos=("C+",),
        edge_map=IDENTITY_EDGES,
        edge_embedding=embedding,
        itineraries=(("M1", ("M1", "M2")), ("M2", ("M1", "M2"))),
        points=(
            MarkedPoint("p", ("M1",), ("alpha", "gamma")),
            MarkedPoint("q", ("M2",), ("beta", "delta")),
        ),
    )


def test_rectangle_counts():
    assert len(markov_rectangles(simple_pres())) == 2
    assert len(markov_rectangles(fenley_pres())) == 4
    assert len(markov_rectangles(ladder_pres())) == 3


def test_no_rectangles_rejected():
    with pytest.raises(MarkovError):
        RectanglePresentation(
            rectangles=(),
            layout_neg=(),
            layout_pos=(),
            connectors_neg=(),
            connectors_pos=(),
            edge_map=IDENTITY_EDGES,
            edge_embedding=FOLDED_EMBEDDING,
            itineraries=(),
        )


def test_simple_matrix_all_ones():
    tm = transition_matrix(simple_pres())
    assert tm.entries == ((1, 1), (1, 1))


def test_perron_simple():
    m = perron(transition_matrix(simple_pres()))
    assert m == InvariantMeasure(Fraction(2), (Fraction(1, 2), Fraction(1, 2)), True, True)


def test_perron_fenley():
    tm = transition_matrix(fenley_pres())
    assert all(x == 1 for rowvals in tm.entries for x in rowvals)
    m = perron(tm)
    assert m.eigenvalue == 4
    assert m.vector == (Fraction(1, 4),) * 4
    assert m.irreducible


def test_perron_ladder_reducible():
    tm = transition_matrix(ladder_pres())
    assert tm.entries == ((1, 1, 0), (1, 1, 1), (0, 0, 1))
    m = perron(tm)
    assert m.eigenvalue == 2
    assert m.vector == (Fraction(1, 2), Fraction(1, 2), Fraction(0))
    assert not m.irreducible


def test_perron_identity_and_nilpotent():
    assert perron(TransitionMatrix(("M1",), ((1,),))).eigenvalue == 1
    with pytest.raises(exact.SpectralError):
        perron(TransitionMatrix(("M1",), ((0,),)))


def test_eigen_equation_exact_for_all_fixtures():
    for pres in (simple_pres(), flip_pres(), fenley_pres(), ladder_pres(), pants_pres()):
        tm = transition_matrix(pres)
        m = perron(tm)
        a = exact.to_matrix(tm.entries)
        assert exact.mat_vec(a, m.vector) == tuple(m.eigenvalue * x for x in m.vector)


def test_measure_scaling_values():
    assert measure_scaling(simple_pres(), 3) == Fraction(1, 8)
    assert measure_scaling(fenley_pres(), 2) == Fraction(1, 16)
    assert measure_scaling(ladder_pres(), 0) == 1
    assert measure_scaling(simple_pres(), -2) == 4


def test_measure_scaling_is_multiplicative():
    for m in range(-3, 4):
        for n in range(-3, 4):
            assert measure_scaling(simple_pres(), m + n) == measure_scaling(
                simple_pres(), m
            ) * measure_scaling(simple_pres(), n)


def test_flip_matrix_counts_and_involution():
    pres = flip_pres()
    tm = transition_matrix(pres)
    assert tm.entries == ((0, 2), (2, 0))
    assert periodic_points(pres, 1)["count"] == 0
    two = periodic_points(pres, 2)
    assert two["count"] == 8
    assert two["points"] == {"p": True, "q": True}
    assert periodic_points(pres, 1)["points"] == {"p": False, "q": False}
    word = ("M1", "M2", "M2")
    assert apply_symmetry(pres, apply_symmetry(pres, word)) == word
    assert apply_symmetry(pres, ("M1",)) == ("M2",)


def test_pants_fixed_points():
    one = periodic_points(pants_pres(), 1)
    assert one["count"] == 2
    assert one["points"] == {"p": True, "q": True}
    assert [w for w, _ in one["words"]] == [("M1",), ("M2",)]


def test_ladder_period_one_words():
    one = periodic_points(ladder_pres(), 1)
    assert one["count"] == 3
    assert {w for w, _ in one["words"]} == {("M1",), ("M2",), ("M3",)}


def test_trace_matches_word_enumeration():
    # the trace is a matrix-power computation, the words a direct product
    # scan; they must agree with multiplicity for every small period
    for pres in (simple_pres(), flip_pres(), fenley_pres(), ladder_pres()):
        for k in range(1, 7):
            data = periodic_points(pres, k)
            assert data["count"] == sum(mult for _, mult in data["words"])


def test_periodic_points_rejects_bad_period():
    with pytest.raises(MarkovError):
        periodic_points(simple_pres(), 0)


def test_block_diagonal_concatenation():
    names = ("A1", "A2", "B1", "B2")
    pres = RectanglePresentation(
        rectangles=names,
        layout_neg=row(*names),
        layout_pos=row(*names),
        connectors_neg=("c1", "c2", "c3"),
        connectors_pos=("d1", "d2", "d3"),
        edge_map=IDENTITY_EDGES,
        edge_embedding=FOLDED_EMBEDDING,
        itineraries=(
            ("A1", ("A1", "A2")),
            ("A2", ("A1", "A2")),
            ("B1", ("B1", "B2")),
            ("B2", ("B1", "B2")),
        ),
    )
    tm = transition_matrix(pres)
    assert tm.entries == (
        (1, 1, 0, 0),
        (1, 1, 0, 0),
        (0, 0, 1, 1),
        (0, 0, 1, 1),
    )


def test_band_trace_validation():
    base = ladder_pres()
    skipping = RectanglePresentation(
        rectangles=base.rectangles,
        layout_neg=base.layout_neg,
        layout_pos=base.layout_pos,
        connectors_neg=base.connectors_neg,
        connectors_pos=base.connectors_pos,
        edge_map=base.edge_map,
        edge_embedding=base.edge_embedding,
        itineraries=(("M1", ("M1", "M3")), ("M2", ("M2",)), ("M3", ("M3",))),
    )
    with pytest.raises(MarkovError, match="fold sequence"):
        transition_matrix(skipping)
    sharp_turn = RectanglePresentation(
        rectangles=base.rectangles,
        layout_neg=base.layout_neg,
        layout_pos=base.layout_pos,
        connectors_neg=base.connectors_neg,
        connectors_pos=base.connectors_pos,
        edge_map=base.edge_map,
        edge_embedding=base.edge_embedding,
        itineraries=(("M1", ("M1", "M2", "M1")), ("M2", ("M2",)), ("M3", ("M3",))),
    )
    with pytest.raises(MarkovError, match="fold sequence"):
        transition_matrix(sharp_turn)
    hairpin = RectanglePresentation(
        rectangles=base.rectangles,
        layout_neg=base.layout_neg,
        layout_pos=base.layout_pos,
        connectors_neg=base.connectors_neg,
        connectors_pos=base.connectors_pos,
        edge_map=base.edge_map,
        edge_embedding=base.edge_embedding,
        itineraries=(("M1", ("M1", "M2", "M2", "M1")), ("M2", ("M2",)), ("M3", ("M3",))),
    )
    tm = transition_matrix(hairpin)
    assert tm.entries[0] == (2, 2, 0)


def test_reconstruct_simple_and_fenley_pass():
    assert reconstruct_check(simple_pres()) == (True, ())
    assert reconstruct_check(fenley_pres()) == (True, ())
    assert reconstruct_check(flip_pres()) == (True, ())


def test_reconstruct_pants_needs_relabelled_edges():
    ok, diags = reconstruct_check(pants_pres())
    assert ok and diags == ()
    # same drawing used without interchanging the edge labels: the fixed
    # points' edge chains no longer close up
    bad, diags = reconstruct_check(pants_pres(embedding=SWAPPED_EMBEDDING))
    assert not bad
    assert "alpha+ lies on beta-, expected alpha-" in diags
    assert any(d.startswith("delta- lies on gamma+") for d in diags)


def test_reconstruct_flip_requires_interchange():
    base = flip_pres()
    wrong = RectanglePresentation(
        rectangles=base.rectangles,
        layout_neg=base.layout_neg,
        layout_pos=base.layout_pos,
        connectors_neg=base.connectors_neg,
        connectors_pos=base.connectors_pos,
        edge_map=base.edge_map,
        edge_embedding=FOLDED_EMBEDDING,
        itineraries=base.itineraries,
        symmetry="flip",
        swap=base.swap,
        points=base.points,
    )
    ok, diags = reconstruct_check(wrong)
    assert not ok
    assert any("expected beta- under the end swap" in d for d in diags)


def test_reconstruct_rejects_non_bijective_edge_map():
    base = simple_pres()
    doubled = RectanglePresentation(
        rectangles=base.rectangles,
        layout_neg=base.layout_neg,
        layout_pos=base.layout_pos,
        connectors_neg=base.connectors_neg,
        connectors_pos=base.connectors_pos,
        edge_map=(("alpha", "alpha", 1), ("beta", "alpha", 1),
                  ("gamma", "gamma", 1), ("delta", "delta", 1)),
        edge_embedding=base.edge_embedding,
        itineraries=base.itineraries,
        points=base.points,
    )
    ok, diags = reconstruct_check(doubled)
    assert not ok
    assert "edge_map is not a bijection on the four edge labels" in diags


def test_reconstruct_counts_connectors():
    base = simple_pres()
    short = RectanglePresentation(
        rectangles=base.rectangles,
        layout_neg=base.layout_neg,
        layout_pos=base.layout_pos,
        connectors_neg=(),
        connectors_pos=base.connectors_pos,
        edge_map=base.edge_map,
        edge_embedding=base.edge_embedding,
        itineraries=base.itineraries,
    )
    ok, diags = reconstruct_check(short)
    assert not ok
    assert any("negative band needs 1 connectors" in d for d in diags)


def test_presentation_round_trip():
    for pres in (simple_pres(), flip_pres(), ladder_pres()):
        data = presentation_to_dict(pres)
        rebuilt = build_presentation(data)
        assert presentation_to_dict(rebuilt) == data
        assert transition_matrix(rebuilt).entries == transition_matrix(pres).entries
    with pytest.raises(MarkovError, match="schema"):
        build_presentation({"schema": "pres-v0"})


def test_admissible_words():
    tm = transition_matrix(ladder_pres())
    assert admissible(tm, ("M1", "M2"))  # cyclic: returns via A[M2][M1]
    assert admissible(tm, ("M3",))
    assert not admissible(tm, ("M1", "M2", "M3"))  # no return edge M3 -> M1
    assert not admissible(tm, ("M1", "nope"))


def test_swap_requires_flip():
    base = simple_pres()
    with pytest.raises(MarkovError, match="symmetry"):
        RectanglePresentation(
            rectangles=base.rectangles,
            layout_neg=base.layout_neg,
            layout_pos=base.layout_pos,
            connectors_neg=base.connectors_neg,
            connectors_pos=base.connectors_pos,
            edge_map=base.edge_map,
            edge_embedding=base.edge_embedding,
            itineraries=base.itineraries,
            swap=(("M1", "M2"), ("M2", "M1")),
        )
