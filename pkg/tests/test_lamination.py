"""Juncture-iterate limits: law fitting, measures, and structural checks."""

from fractions import Fraction

import pytest

from endtrack.charts import StripChart
from endtrack.lamination import (
    LaminationError,
    compute_lamination,
    fit_branch_law,
    flat_components,
    full_support,
    minimality,
    reducing_curves,
    verify_axioms,
)
from endtrack.maps import DehnTwist, EndPeriodicMap, StripShift
from endtrack.words import Multicurve, ParallelArc

PLAIN = StripChart()
RUN = (("T", 0, 1), ("J", 1, 1), ("T", 1, 1),
       ("B", 1, -1), ("J", 1, -1), ("B", 0, -1))


@pytest.fixture(scope="module")
def simple():
    return EndPeriodicMap(PLAIN, StripShift(1), [DehnTwist(RUN, 1)], name="simple")


@pytest.fixture(scope="module")
def lam_pair(simple):
    return (compute_lamination(simple, +1, 7, 0),
            compute_lamination(simple, -1, 7, 1))


# --- raw growth oracle -------------------------------------------------------
# crossing counts computed straight from the word calculus, no law fitting


def test_juncture_iterates_grow_doubling_plus_one(simple):
    mc = Multicurve.of([ParallelArc(("J", 0))])
    seen = []
    for n in range(6):
        mc = simple.apply(mc)
        seen.append(mc.weights().get(("J", 1), 0))
    assert seen == [3, 7, 15, 31, 63, 127]  # w -> 2w + 1
    mc = Multicurve.of([ParallelArc(("J", 1))])
    back = []
    for n in range(6):
        mc = simple.inverse_apply(mc)
        back.append(mc.weights().get(("J", 0), 0))
    assert back == [3, 7, 15, 31, 63, 127]


# --- law fitting -------------------------------------------------------------


def test_fit_doubling_law():
    q, law = fit_branch_law([0, 3, 7, 15, 31, 63, 127], 1)
    assert q == 2
    assert law.terms == ((Fraction(2), Fraction(-1)),)
    assert law.value(6) == 127
    assert law.value(9) == 2 ** 10 - 1


def test_fit_constant_tail():
    q, law = fit_branch_law([5, 3, 2, 2, 2, 2], 1)
    assert q is None
    assert law.terms == ((Fraction(0), Fraction(2)),)
    assert law.start == 2


def test_fit_rejects_arithmetic_growth():
    assert fit_branch_law([0, 1, 2, 3, 4, 5, 6], 1) is None


def test_fit_alternating_needs_period_two():
    series = [0, 3, 0, 6, 0, 12, 0, 24]
    assert fit_branch_law(series, 1) is None
    q, law = fit_branch_law(series, 2)
    assert q == 2
    assert law.terms[0] == (Fraction(0), Fraction(0))
    assert law.terms[1][0] > 0
    assert law.value(7) == 24


def test_fit_needs_three_points():
    assert fit_branch_law([1, 2], 1) is None


# --- the simple map ----------------------------------------------------------


def test_simple_stabilizes_at_two(lam_pair):
    for lam in lam_pair:
        assert lam.stabilized
        assert lam.period == 1
        assert lam.eigenvalue == 2
        assert lam.contraction == Fraction(1, 2)
        assert lam.notes == []


def test_simple_measures_halve_along_the_strip(lam_pair):
    pos, neg = lam_pair
    assert [pos.measure(("J", k)) for k in range(0, 5)] == \
        [0, 2, 1, Fraction(1, 2), Fraction(1, 4)]
    assert [neg.measure(("J", k)) for k in (-2, -1, 0, 1)] == \
        [Fraction(1, 2), 1, 2, 0]
    assert pos.measure_table(4) == [1, Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]


def test_simple_is_minimal(lam_pair):
    for lam in lam_pair:
        ok, detail = minimality(lam)
        assert ok, detail
        assert lam.flat_support() == set()
        assert len(lam.minimal_sublaminations()) == 1
        assert len(lam.tail_germs()) == 1  # the arc endpoint germ on the boundary


def test_simple_covers_the_core_block(lam_pair):
    for lam in lam_pair:
        assert full_support(lam, PLAIN, (0, 0))


def test_simple_has_no_reducing_curve(simple, lam_pair):
    assert reducing_curves(simple, lam_pair) == []


def test_axiom_checks_pass_for_simple(simple):
    report = verify_axioms(simple, depth=7, junctures=(0, 1))
    assert report.passed, report.failed_names()


def test_reversed_twist_fails_measure_scaling(simple, lam_pair):
    wrong = EndPeriodicMap(PLAIN, StripShift(1), [DehnTwist(RUN, -1)])
    report = verify_axioms(wrong, depth=7, junctures=(0, 1), laminations=lam_pair)
    assert not report.passed
    assert not report["measure_scaling"].ok
    assert not report["invariance"].ok


# --- degenerate maps ---------------------------------------------------------


def test_pure_translation_has_empty_limit():
    shift = EndPeriodicMap(PLAIN, StripShift(1))
    lam = compute_lamination(shift, +1, 5)
    assert lam.stabilized and lam.empty
    assert lam.eigenvalue == 1
    assert lam.laws == {}


def test_depth_guard():
    shift = EndPeriodicMap(PLAIN, StripShift(1))
    with pytest.raises(LaminationError):
        compute_lamination(shift, +1, 3)


def test_flat_component_walk_reconstructs_a_cycle(simple):
    # feed the walker the branch classes of an explicit closed curve
    from endtrack.track import component_branches
    from endtrack.words import canonical_loop
    loop = canonical_loop(PLAIN, RUN)
    comps = flat_components(PLAIN, set(component_branches(PLAIN, loop)))
    assert len(comps) == 1
    assert comps[0]["kind"] == "cycle"
    got = comps[0]["loop"]
    assert got in (loop, loop.reversed())


def test_flat_component_walk_handles_parallel_copies():
    from endtrack.track import component_branches
    from endtrack.words import canonical_loop
    loop = canonical_loop(PLAIN, RUN)
    doubled = {b: 2 for b in component_branches(PLAIN, loop)}
    comps = flat_components(PLAIN, doubled)
    assert len(comps) == 1  # the two copies walk to the same curve
    assert comps[0]["kind"] == "cycle"
    assert comps[0]["loop"] in (loop, loop.reversed())


def test_flat_component_open_family_is_a_line():
    b = ("chord", (0, "W"), tuple(sorted([("w", ("B", 0)), ("w", ("T", 0))])))
    comps = flat_components(PLAIN, {b})
    assert comps == [{"kind": "line", "branches": {b}, "loop": None}]
