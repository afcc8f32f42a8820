"""Branch decomposition of curve families on a chart.

A family of disjoint curves meets each disk cell in parallel strands.
Strands joining the same unordered pair of boundary items form one branch,
so the family is recorded faithfully by its branch weights — a refinement
of the per-wall crossing counts, at the granularity of a train track.
"""

from typing import Dict, Iterable, List, Tuple

from .words import (
    Loop,
    Multicurve,
    ParallelArc,
    component_word,
    from_cell,
    to_cell,
    wall_of,
    word_cells,
)

Item = Tuple[str, object]  # ("w", wall) or ("a", anchor line)
Branch = Tuple             # ("chord", cell, (item, item)) or ("parallel", wall)


class TrackError(ValueError):
    """A question about branches that the decomposition cannot settle."""


def _chord(cell, item_a: Item, item_b: Item) -> Branch:
    return ("chord", cell, tuple(sorted((item_a, item_b))))


def component_branches(chart, comp) -> List[Branch]:
    """The branches one component runs through, with repetition."""

    if isinstance(comp, ParallelArc):
        return [("parallel", comp.wall)]
    word = component_word(comp)
    if isinstance(comp, Loop):
        cells = word_cells(chart, word, closed=True)
        return [
            _chord(cell, ("w", wall_of(word[i])), ("w", wall_of(word[(i + 1) % len(word)])))
            for i, cell in enumerate(cells)
        ]
    out = [_chord(from_cell(chart, word[0]), ("a", comp.start), ("w", wall_of(word[0])))]
    for i, cell in enumerate(word_cells(chart, word, closed=False)):
        out.append(_chord(cell, ("w", wall_of(word[i])), ("w", wall_of(word[i + 1]))))
    out.append(_chord(to_cell(chart, word[-1]), ("w", wall_of(word[-1])), ("a", comp.end)))
    return out


def branch_weights(chart, curves: Multicurve) -> Dict[Branch, int]:
    weights: Dict[Branch, int] = {}
    for comp, mult in curves:
        for br in component_branches(chart, comp):
            weights[br] = weights.get(br, 0) + mult
    return weights


def wall_weights(branches: Dict[Branch, int]) -> Dict[Tuple[str, int], int]:
    """Per-wall crossing counts recovered from branch weights.

    Each crossing leaves one chord foot in the cell on either side of the
    wall, so the foot total is twice the crossing count.
    """

    feet: Dict[Tuple[str, int], int] = {}
    for br, mult in branches.items():
        if br[0] != "chord":
            continue
        for kind, payload in br[2]:
            if kind == "w":
                feet[payload] = feet.get(payload, 0) + mult
    out = {}
    for wall, total in feet.items():
        if total % 2:
            raise TrackError(f"odd foot count {total} on wall {wall}")
        if total:
            out[wall] = total // 2
    return out


def branch_cells(branches: Iterable[Branch]) -> set:
    return {br[1] for br in branches if br[0] == "chord"}


def branches_cross(chart, b1: Branch, b2: Branch) -> bool:
    """Must every realization of these two branches intersect?

    Wall-parallel strands collide with anything crossing their wall; two
    chords collide exactly when they lie in the same cell and their four
    distinct endpoints interleave around its boundary walk.
    """

    if b1[0] == "parallel" and b2[0] == "parallel":
        return False
    if b1[0] == "parallel" or b2[0] == "parallel":
        par, chord = (b1, b2) if b1[0] == "parallel" else (b2, b1)
        return chord[0] == "chord" and ("w", par[1]) in chord[2]
    if b1[1] != b2[1]:
        return False
    walk = [(kind, payload) for kind, payload, _ in chart.boundary_items(b1[1])]
    (a, b), (c, d) = b1[2], b2[2]
    if len({a, b, c, d}) < 4:
        return False
    ia, ib, ic, id_ = (walk.index(x) for x in (a, b, c, d))
    lo, hi = min(ia, ib), max(ia, ib)
    return (lo < ic < hi) != (lo < id_ < hi)


def supports_disjoint(chart, branches1: Iterable[Branch], branches2: Iterable[Branch]) -> bool:
    """Can the two branch families be realized without meeting?

    Certifies the two easy directions: a forced collision anywhere means
    no, and fully disjoint cell sets (with no wall-parallel conflicts)
    mean yes.  Families that share cells without a forced collision would
    need strand-order bookkeeping across walls, which the branch weights
    alone do not determine.
    """

    bs1, bs2 = list(branches1), list(branches2)
    for x in bs1:
        for y in bs2:
            if branches_cross(chart, x, y):
                return False
    if branch_cells(bs1) & branch_cells(bs2):
        raise TrackError("families share cells without a forced collision; "
                         "branch weights cannot certify disjointness")
    return True
