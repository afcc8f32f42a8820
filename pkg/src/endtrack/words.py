"""Crossing-word calculus for curves on a charted surface.

A chart cuts the surface into disk cells along a family of walls.  Because
every complementary cell is a disk, the reduced sequence of wall crossings
is a complete isotopy invariant of an essential curve, and letter counts
double as geometric crossing numbers.  A letter is ``(family, index, sign)``
where sign ``+1`` crosses from the wall's negative side to its positive one.
"""

import heapq
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Wall = Tuple[str, int]
Line = Tuple[str, int]
Letter = Tuple[str, int, int]
Word = Tuple[Letter, ...]


class TrivialCurveError(ValueError):
    """A word reduced to something isotopically trivial."""


def wall_of(letter: Letter) -> Wall:
    return (letter[0], letter[1])


def inverse_letter(letter: Letter) -> Letter:
    return (letter[0], letter[1], -letter[2])


def reverse_word(word: Sequence[Letter]) -> Word:
    return tuple(inverse_letter(x) for x in reversed(word))


def reduce_word(word: Sequence[Letter]) -> Word:
    """Cancel adjacent inverse crossings until no pair remains."""
    out: List[Letter] = []
    for letter in word:
        if out and out[-1] == inverse_letter(letter):
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclic_reduce(word: Sequence[Letter]) -> Word:
    word = reduce_word(word)
    while len(word) >= 2 and word[0] == inverse_letter(word[-1]):
        word = word[1:-1]
    return word


def from_cell(chart, letter: Letter):
    neg, pos = chart.sides(wall_of(letter))
    return neg if letter[2] > 0 else pos


def to_cell(chart, letter: Letter):
    neg, pos = chart.sides(wall_of(letter))
    return pos if letter[2] > 0 else neg


def word_cells(chart, word: Sequence[Letter], closed: bool) -> List:
    """Cells visited between consecutive letters; validates connectivity."""
    cells = []
    for i in range(len(word) - (0 if closed else 1)):
        a = word[i]
        b = word[(i + 1) % len(word)]
        c = to_cell(chart, a)
        if c != from_cell(chart, b):
            raise ValueError(f"word is not a path: {a} exits into {c}, {b} starts at {from_cell(chart, b)}")
        cells.append(c)
    return cells


@dataclass(frozen=True, order=True)
class Loop:
    """Closed essential curve, stored as a canonical cyclic reduced word."""

    word: Word

    def reversed(self) -> "Loop":
        return Loop(reverse_word(self.word))


@dataclass(frozen=True, order=True)
class Arc:
    """Properly embedded arc between two boundary/anchor lines."""

    start: Line
    word: Word
    end: Line

    def reversed(self) -> "Arc":
        return Arc(self.end, reverse_word(self.word), self.start)


@dataclass(frozen=True, order=True)
class ParallelArc:
    """Arc isotopic to a single wall, crossing nothing."""

    wall: Wall


Component = object


def _min_rotation(word: Word) -> Word:
    return min(word[i:] + word[:i] for i in range(len(word)))


# Weld-vertex relators are length four, so one extra relator of headroom is
# what a detour through a longer word may need.  The hard cap only guards
# against runaway search on inputs far outside the intended short-word use.
_ORBIT_SLACK = 4
_ORBIT_LIMIT = 50000


def _relator_rotations(chart, blocks) -> List[Word]:
    """Contractible vertex loops, every rotation and both orientations."""
    rots = set()
    for link in chart.vertex_links(blocks):
        relator = tuple((w[0], w[1], s) for w, s in link)
        for base in (relator, reverse_word(relator)):
            for r in range(len(base)):
                rots.add(base[r:] + base[:r])
    return sorted(rots)


def _word_blocks(chart, word: Word, closed: bool) -> set:
    blocks = {letter[1] for letter in word}
    blocks.update(cell[0] for cell in word_cells(chart, word, closed))
    return blocks | {b - 1 for b in blocks} | {b + 1 for b in blocks}


def _descend_loop(chart, word: Word, rots: Sequence[Word]) -> Word:
    """Greedily shorten a cyclic word by weld-vertex relator insertions."""
    improved = True
    while improved:
        improved = False
        for i in range(len(word)):
            cell = from_cell(chart, word[i])
            for rot in rots:
                if from_cell(chart, rot[0]) != cell:
                    continue
                new = cyclic_reduce(word[:i] + rot + word[i:])
                if not new:
                    raise TrivialCurveError("loop contracts across a weld vertex")
                if len(new) < len(word):
                    word = new
                    improved = True
                    break
            if improved:
                break
    return word


def _loop_vertex_forms(chart, word: Word, rots: Sequence[Word]) -> List[Word]:
    """All shortest cyclic forms over weld-vertex relator insertions.

    Greedy rewriting at a single vertex is not confluent once two vertices
    share walls (relator products yield identities no single window sees),
    so minimisation walks the whole bounded orbit instead of trusting any
    one rewriting path.  Greedy descent first keeps the orbit small; the
    shortest-first order then lets the cap tighten further as shorter
    forms turn up.
    """
    start = _min_rotation(_descend_loop(chart, word, rots))
    best = len(start)
    seen = {start}
    heap = [(len(start), start)]
    while heap:
        size, w = heapq.heappop(heap)
        if size > best + _ORBIT_SLACK:
            break
        best = min(best, size)
        for i in range(len(w)):
            cell = from_cell(chart, w[i])
            for rot in rots:
                if from_cell(chart, rot[0]) != cell:
                    continue
                new = cyclic_reduce(w[:i] + rot + w[i:])
                if not new:
                    raise TrivialCurveError("loop contracts across a weld vertex")
                if len(new) > best + _ORBIT_SLACK:
                    continue
                key = _min_rotation(new)
                if key not in seen:
                    if len(seen) >= _ORBIT_LIMIT:
                        raise RuntimeError("weld-vertex orbit search exceeded its budget")
                    seen.add(key)
                    heapq.heappush(heap, (len(key), key))
    shortest = min(len(w) for w in seen)
    return [w for w in seen if len(w) == shortest]


def canonical_loop(chart, word: Sequence[Letter]) -> Loop:
    word = cyclic_reduce(tuple(word))
    if not word:
        raise TrivialCurveError("loop word reduced to nothing")
    rots = _relator_rotations(chart, _word_blocks(chart, word, closed=True))
    forms = _loop_vertex_forms(chart, word, rots) if rots else [word]
    return Loop(min(min(_min_rotation(w), _min_rotation(reverse_word(w)))
                    for w in forms))


def _letters_into(chart, cell) -> List[Letter]:
    """All crossings ending in ``cell``."""
    out = []
    for n in (cell[0], cell[0] + 1):
        for wall in chart.walls_of_block(n):
            neg, pos = chart.sides(wall)
            if pos == cell:
                out.append((wall[0], wall[1], 1))
            if neg == cell:
                out.append((wall[0], wall[1], -1))
    return out


def _strip_arc(chart, word: List[Letter], start: Line, end: Line,
               start_cell, end_cell):
    """Drop end letters whose walls attach to the anchor lines."""
    while word and chart.attaches(wall_of(word[0]), start):
        start_cell = to_cell(chart, word[0])
        word.pop(0)
    while word and chart.attaches(wall_of(word[-1]), end):
        end_cell = from_cell(chart, word[-1])
        word.pop()
    if word:
        start_cell = from_cell(chart, word[0])
        end_cell = to_cell(chart, word[-1])
    return tuple(word), start_cell, end_cell


def _descend_arc(chart, state, start: Line, end: Line, rots):
    """Greedily strip and shorten an arc state before the orbit walk."""
    word, sc, ec = state
    while True:
        word, sc, ec = _strip_arc(chart, list(word), start, end, sc, ec)
        shorter = None
        cells = [sc] + [to_cell(chart, x) for x in word]
        for i, cell in enumerate(cells):
            for rot in rots:
                if from_cell(chart, rot[0]) != cell:
                    continue
                new = reduce_word(word[:i] + rot + word[i:])
                if len(new) < len(word):
                    shorter = new
                    break
            if shorter is not None:
                break
        if shorter is None:
            return word, sc, ec
        word = shorter


def _arc_vertex_states(chart, state, start: Line, end: Line, rots) -> set:
    """Bounded orbit of an arc under relator insertions and end slides.

    States are ``(word, start_cell, end_cell)``; the anchor cells only
    carry information while the word is empty but are kept throughout so
    sliding an endpoint across an anchored wall stays a local move.
    """
    best = len(state[0])
    seen = {state}
    heap = [(best, state)]

    def push(word, sc, ec):
        if len(word) > best + _ORBIT_SLACK or (word, sc, ec) in seen:
            return
        if len(seen) >= _ORBIT_LIMIT:
            raise RuntimeError("weld-vertex orbit search exceeded its budget")
        seen.add((word, sc, ec))
        heapq.heappush(heap, (len(word), (word, sc, ec)))

    while heap:
        size, (word, sc, ec) = heapq.heappop(heap)
        if size > best + _ORBIT_SLACK:
            break
        best = min(best, size)
        if word and chart.attaches(wall_of(word[0]), start):
            rest = word[1:]
            push(rest, to_cell(chart, word[0]), ec if rest else to_cell(chart, word[0]))
        if word and chart.attaches(wall_of(word[-1]), end):
            rest = word[:-1]
            push(rest, sc if rest else from_cell(chart, word[-1]),
                 from_cell(chart, word[-1]))
        for y in _letters_into(chart, sc):
            if chart.attaches(wall_of(y), start):
                new = reduce_word((y,) + word)
                push(new, from_cell(chart, y), ec if new else from_cell(chart, y))
        for y in _letters_into(chart, ec):
            if chart.attaches(wall_of(y), end):
                new = reduce_word(word + (inverse_letter(y),))
                push(new, sc if new else from_cell(chart, y), from_cell(chart, y))
        cells = [sc] + [to_cell(chart, x) for x in word]
        for i, cell in enumerate(cells):
            for rot in rots:
                if from_cell(chart, rot[0]) != cell:
                    continue
                new = reduce_word(word[:i] + rot + word[i:])
                push(new, sc, ec)
    return seen


def canonical_arc(chart, start: Line, word: Sequence[Letter], end: Line,
                  start_cell=None, end_cell=None) -> Component:
    """Reduce, strip anchored end letters, and normalise an arc.

    ``start_cell``/``end_cell`` are only needed when the word is empty;
    otherwise the anchored cells are derived from the first/last letters.
    """
    word = tuple(word)
    if word:
        word_cells(chart, word, closed=False)
        start_cell = from_cell(chart, word[0])
        end_cell = to_cell(chart, word[-1])
        word = reduce_word(word)
    if start_cell is None or end_cell is None:
        raise ValueError("empty arc word needs explicit anchor cells")
    word, start_cell, end_cell = _strip_arc(chart, list(word), start, end,
                                            start_cell, end_cell)
    if not word and start_cell != end_cell:
        raise ValueError(f"empty arc anchored in distinct cells {start_cell} and {end_cell}")
    blocks = {start_cell[0], end_cell[0]}
    blocks |= {b - 1 for b in blocks} | {b + 1 for b in blocks}
    if word:
        blocks |= _word_blocks(chart, word, closed=False)
    rots = _relator_rotations(chart, blocks)
    states = {(word, start_cell, end_cell)}
    if rots:
        state = _descend_arc(chart, (word, start_cell, end_cell), start, end, rots)
        if not state[0]:
            # boundary-parallel already; the orbit would only wander
            return _normalize_empty_arc(chart, state[1], start, end)
        states = _arc_vertex_states(chart, state, start, end, rots)
    stripped = set()
    for w, sc, ec in states:
        stripped.add(_strip_arc(chart, list(w), start, end, sc, ec))
    empty_cells = {sc for w, sc, ec in stripped if not w}
    if empty_cells:
        results = {_normalize_empty_arc(chart, cell, start, end) for cell in empty_cells}
        if len(results) != 1:
            raise RuntimeError(f"empty arc normalisation is ambiguous: {results}")
        return results.pop()
    best = None
    for w, sc, ec in stripped:
        arc = Arc(start, w, end)
        arc = min(arc, arc.reversed(), key=lambda a: (a.start, a.word, a.end))
        key = (len(arc.word), arc.start, arc.word, arc.end)
        if best is None or key < best[0]:
            best = (key, arc)
    return best[1]


def _normalize_empty_arc(chart, cell, start: Line, end: Line) -> Component:
    if start == end:
        raise TrivialCurveError(f"arc in {cell} with both ends on {start} is inessential")
    boundary = chart.boundary(cell)
    idx = {item: i for i, item in enumerate(boundary)}
    ia, ib = idx[("a", start)], idx[("a", end)]
    n = len(boundary)
    sides = []
    for lo, hi in ((ia, ib), (ib, ia)):
        walls = []
        j = (lo + 1) % n
        while j != hi:
            kind, payload = boundary[j]
            if kind == "w":
                walls.append(payload)
            j = (j + 1) % n
        sides.append(walls)
    for walls in sides:
        if len(walls) == 1:
            return ParallelArc(walls[0])
    raise NotImplementedError(f"empty arc in {cell} between {start} and {end} has no single-wall side")


def component_word(comp: Component) -> Word:
    if isinstance(comp, ParallelArc):
        return ()
    return comp.word


def crossing_weights(components: Iterable[Tuple[Component, int]]) -> Dict[Wall, int]:
    """Wall -> total crossing count over a weighted family of components."""
    weights: Dict[Wall, int] = {}
    for comp, mult in components:
        for letter in component_word(comp):
            w = wall_of(letter)
            weights[w] = weights.get(w, 0) + mult
    return {w: c for w, c in weights.items() if c}


def parallel_weights(components: Iterable[Tuple[Component, int]]) -> Dict[Wall, int]:
    weights: Dict[Wall, int] = {}
    for comp, mult in components:
        if isinstance(comp, ParallelArc):
            weights[comp.wall] = weights.get(comp.wall, 0) + mult
    return weights


@dataclass(frozen=True)
class Multicurve:
    """Finite weighted family of disjointly realisable components."""

    components: Tuple[Tuple[Component, int], ...]

    @staticmethod
    def of(items: Iterable) -> "Multicurve":
        counts: Dict[Component, int] = {}
        for item in items:
            comp, mult = item if isinstance(item, tuple) else (item, 1)
            counts[comp] = counts.get(comp, 0) + mult
        ordered = tuple(sorted(counts.items(), key=lambda kv: _component_key(kv[0])))
        return Multicurve(ordered)

    def weights(self) -> Dict[Wall, int]:
        return crossing_weights(self.components)

    def parallel_weights(self) -> Dict[Wall, int]:
        return parallel_weights(self.components)

    def component_count(self) -> int:
        return sum(m for _, m in self.components)

    def __iter__(self):
        return iter(self.components)

    def union(self, other: "Multicurve") -> "Multicurve":
        return Multicurve.of(list(self.components) + list(other.components))


def _component_key(comp: Component):
    if isinstance(comp, ParallelArc):
        return (0, comp.wall, (), ())
    if isinstance(comp, Arc):
        return (1, comp.start, comp.word, comp.end)
    return (2, comp.word, (), ())


def switch_violations(chart, weights: Dict[Wall, int]) -> List:
    """Cells whose surrounding crossing counts cannot be matched up.

    For a disjointly embedded family, every cell must see an even total of
    crossings on its boundary walls, and no single wall may carry more than
    all the others combined.
    """
    cells = set()
    for wall in weights:
        cells.update(chart.sides(wall))
    bad = []
    for cell in sorted(cells, key=repr):
        local = [weights.get(payload, 0)
                 for kind, payload in chart.boundary(cell) if kind == "w"]
        total = sum(local)
        if total % 2 == 1 or (local and 2 * max(local) > total):
            bad.append(cell)
    return bad
