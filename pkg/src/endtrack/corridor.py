"""Corridor neighbourhoods of embedded loops, and Dehn twists as word surgery.

A twist is supported on an annular corridor around an embedded closed run.
The run crosses walls at *gates*; inside each cell the run edges are chords
cutting the disk into a tree of *zones*.  A curve drawn through those cells
picks a zone path; every chord crossed is one passage through the corridor,
and twisting inserts one full lap of the run (forward or backward according
to the crossing side) at each passage.  Minimising total passages over the
free choices (crossing levels along walls, materialisation of wall-parallel
arcs) realises the curve and the run in tight position, so the passage
count is also the geometric intersection number with the run.
"""

from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .words import (Arc, Letter, Line, Loop, Multicurve, ParallelArc, Wall, Word,
                    canonical_arc, canonical_loop, from_cell, inverse_letter,
                    reduce_word, to_cell, wall_of, word_cells)


class CorridorError(ValueError):
    """The run cannot serve as a twist corridor."""


class _CellTable:
    """Zone structure of one cell: slot faces, chord faces, flank lookups."""

    def __init__(self) -> None:
        self.anchor_zone: Dict[Line, Tuple[int, ...]] = {}
        self.wall_zone: Dict[Tuple[Wall, int], Tuple[int, ...]] = {}
        self.chord_faces: Dict[int, Tuple[Tuple[int, ...], Tuple[int, ...]]] = {}
        self.chord_left: Dict[int, Tuple[int, ...]] = {}


def _tree_dist(a: Tuple[int, ...], b: Tuple[int, ...]) -> int:
    common = 0
    for x, y in zip(a, b):
        if x != y:
            break
        common += 1
    return (len(a) - common) + (len(b) - common)


def _tree_path(a: Tuple[int, ...], b: Tuple[int, ...]):
    """Chords crossed walking from zone a to zone b: (chord, from_face, to_face)."""
    common = 0
    for x, y in zip(a, b):
        if x != y:
            break
        common += 1
    steps = []
    cur = a
    while len(cur) > common:
        nxt = cur[:-1]
        steps.append((cur[-1], cur, nxt))
        cur = nxt
    for i in range(common, len(b)):
        nxt = cur + (b[i],)
        steps.append((b[i], cur, nxt))
        cur = nxt
    return steps


class Corridor:
    """Embedded annular neighbourhood of a closed run on a chart."""

    def __init__(self, chart, run: Sequence[Letter]):
        self.chart = chart
        self.run: Word = tuple(tuple(x) for x in run)
        m = len(self.run)
        if m == 0:
            raise CorridorError("empty run")
        if reduce_word(self.run) != self.run or self.run[0] == inverse_letter(self.run[-1]):
            raise CorridorError(f"run is not cyclically reduced: {self.run}")
        self.cells_after = word_cells(chart, self.run, closed=True)
        flips = [bool(chart.orientation_flip(wall_of(x))) for x in self.run]
        if sum(flips) % 2 == 1:
            raise CorridorError("run is one-sided; no annular corridor exists")
        acc = 0
        self.parity: List[int] = []
        for i in range(m):
            if i > 0:
                acc ^= int(flips[i])
            self.parity.append(acc)
        self.gates_on_wall: Dict[Wall, List[int]] = {}
        for i, letter in enumerate(self.run):
            self.gates_on_wall.setdefault(wall_of(letter), []).append(i)
        self.cell_chords: Dict[object, List[int]] = {}
        for i in range(m):
            self.cell_chords.setdefault(self.cells_after[i], []).append(i)
        self.tables: Dict[object, _CellTable] = {}
        self.wall_order: Dict[Wall, Tuple[int, ...]] = {}
        self._solve_embedding()

    # -- embedding -----------------------------------------------------------

    def _solve_embedding(self) -> None:
        walls = sorted(self.gates_on_wall, key=repr)
        options = []
        for w in walls:
            gates = self.gates_on_wall[w]
            if len(gates) == 1:
                options.append([tuple(gates)])
            else:
                options.append([tuple(p) for p in permutations(gates)])
        stack_choice: List[Tuple[int, ...]] = []

        def search(idx: int) -> bool:
            if idx == len(walls):
                return self._try_orders(dict(zip(walls, stack_choice)))
            for option in options[idx]:
                stack_choice.append(option)
                if search(idx + 1):
                    return True
                stack_choice.pop()
            return False

        if not search(0):
            raise CorridorError(f"run admits no embedded corridor: {self.run}")

    def _try_orders(self, order: Dict[Wall, Tuple[int, ...]]) -> bool:
        tables = {}
        for cell in self.cell_chords:
            table = self._build_cell(cell, order)
            if table is None:
                return False
            tables[cell] = table
        self.tables = tables
        self.wall_order = order
        return True

    def _tokens(self, cell, order: Dict[Wall, Tuple[int, ...]]):
        """Boundary walk of a cell as slot/gate tokens in cyclic order."""
        tokens: List[Tuple[str, object]] = []
        for kind, payload, direction in self.chart.boundary_items(cell):
            if kind == "a":
                tokens.append(("slot", ("a", payload, 0)))
                continue
            gates = list(order.get(payload, ()))
            if direction < 0:
                gates.reverse()
            tokens.append(("slot", ("w", payload, self._level(payload, direction, 0))))
            for pos, g in enumerate(gates):
                tokens.append(("gate", g))
                tokens.append(("slot", ("w", payload, self._level(payload, direction, pos + 1))))
        return tokens

    def _level(self, wall: Wall, direction: int, walk_sub: int) -> int:
        k = len(self.gates_on_wall.get(wall, ()))
        return walk_sub if direction >= 0 else k - walk_sub

    def _build_cell(self, cell, order) -> Optional[_CellTable]:
        tokens = self._tokens(cell, order)
        chords_here = set(self.cell_chords[cell])
        m = len(self.run)
        table = _CellTable()
        stack: List[int] = []
        opened: Dict[int, bool] = {}
        slot_face: List[Optional[Tuple[int, ...]]] = []
        for kind, payload in tokens:
            if kind == "slot":
                slot_face.append(tuple(stack))
                continue
            slot_face.append(None)
            gate = payload
            touching = [c for c in (gate, (gate - 1) % m) if c in chords_here]
            if len(touching) != 1:
                raise CorridorError(f"gate {gate} touches {len(touching)} chords in cell {cell}")
            chord = touching[0]
            if not opened.get(chord):
                parent = tuple(stack)
                stack.append(chord)
                opened[chord] = True
                table.chord_faces[chord] = (parent, tuple(stack))
            else:
                if not stack or stack[-1] != chord:
                    return None
                stack.pop()
        if stack:
            return None
        n = len(tokens)
        for idx, (kind, payload) in enumerate(tokens):
            if kind != "slot":
                continue
            skind, obj, level = payload
            if skind == "a":
                table.anchor_zone[obj] = slot_face[idx]
            else:
                table.wall_zone[(obj, level)] = slot_face[idx]
        for chord in chords_here:
            exit_gate = (chord + 1) % m
            pos = next(i for i, (k, p) in enumerate(tokens) if k == "gate" and p == exit_gate)
            after = (pos + 1) % n
            while tokens[after][0] != "slot":
                after = (after + 1) % n
            table.chord_left[chord] = slot_face[after]
        return table

    # -- zones and passage DP --------------------------------------------------

    def levels_of(self, wall: Wall) -> int:
        return len(self.gates_on_wall.get(wall, ())) + 1

    def _zone(self, cell, element, level: int) -> Tuple[int, ...]:
        table = self.tables.get(cell)
        if table is None:
            return ()
        kind, payload = element
        if kind == "a":
            return table.anchor_zone.get(payload, ())
        return table.wall_zone.get((payload, level), ())

    def _element_lists(self, comp):
        """Candidate element/cell sequences for a component (PA has two)."""
        if isinstance(comp, Loop):
            elems = [("w", wall_of(x)) for x in comp.word]
            cells = [to_cell(self.chart, x) for x in comp.word]
            return [(elems, cells, True)]
        if isinstance(comp, Arc):
            elems = [("a", comp.start)] + [("w", wall_of(x)) for x in comp.word] + [("a", comp.end)]
            cells = [from_cell(self.chart, comp.word[0])]
            cells += [to_cell(self.chart, x) for x in comp.word]
            return [(elems, cells, False)]
        if isinstance(comp, ParallelArc):
            lines = self._attachment_lines(comp.wall)
            return [([("a", lines[0]), ("a", lines[1])], [cell], False)
                    for cell in self.chart.sides(comp.wall)]
        raise TypeError(f"unsupported component {comp!r}")

    def _attachment_lines(self, wall: Wall) -> Tuple[Line, Line]:
        lines: List[Line] = []
        for cell in self.chart.sides(wall):
            for kind, payload, _ in self.chart.boundary_items(cell):
                if kind == "a" and self.chart.attaches(wall, payload) and payload not in lines:
                    lines.append(payload)
        if len(lines) != 2:
            raise CorridorError(
                f"wall {wall} attaches to {len(lines)} anchor lines; cannot materialise a parallel arc")
        return (lines[0], lines[1])

    def _dp(self, elems, cells, cyclic: bool):
        """Minimal passage count and argmin level vector along the elements."""
        n = len(elems)

        def options(i: int) -> List[int]:
            kind, payload = elems[i]
            return [0] if kind == "a" else list(range(self.levels_of(payload)))

        def gap_cost(i: int, li: int, lj: int) -> int:
            cell = cells[i]
            za = self._zone(cell, elems[i], li)
            zb = self._zone(cell, elems[(i + 1) % n], lj)
            return _tree_dist(za, zb)

        best = None
        first_options = options(0) if cyclic else [None]
        for first in first_options:
            states = ({first: (0, (first,))} if cyclic
                      else {lv: (0, (lv,)) for lv in options(0)})
            for i in range(1, n):
                nxt = {}
                for lv in options(i):
                    cand = None
                    for prev, (cost, path) in states.items():
                        entry = (cost + gap_cost(i - 1, prev, lv), path + (lv,))
                        if cand is None or entry < cand:
                            cand = entry
                    nxt[lv] = cand
                states = nxt
            for last, (cost, path) in states.items():
                total = cost + (gap_cost(n - 1, last, first) if cyclic else 0)
                entry = (total, path)
                if best is None or entry < best:
                    best = entry
        if best is None:
            raise CorridorError("passage DP found no states")
        return best

    def passages(self, comp) -> int:
        """Minimal intersection count of the component with the run."""
        out = None
        for elems, cells, cyclic in self._element_lists(comp):
            cost, _ = self._dp(elems, cells, cyclic)
            out = cost if out is None else min(out, cost)
        return out

    def passages_multicurve(self, mc: Multicurve) -> int:
        return sum(self.passages(comp) * mult for comp, mult in mc)

    # -- twisting ----------------------------------------------------------------

    def _run_left(self, cell, chord: int) -> Tuple[int, ...]:
        table = self.tables[cell]
        left = table.chord_left[chord]
        if self.parity[chord]:
            parent, child = table.chord_faces[chord]
            return child if left == parent else parent
        return left

    def _lap_word(self, chord: int, forward: bool, laps: int) -> List[Letter]:
        m = len(self.run)
        out: List[Letter] = []
        for _ in range(laps):
            if forward:
                out.extend(self.run[(chord + j) % m] for j in range(1, m + 1))
            else:
                out.extend(inverse_letter(self.run[(chord - j) % m]) for j in range(0, m))
        return out

    def _insertion(self, cell, chord: int, from_face, power: int) -> List[Letter]:
        left_to_right = (from_face == self._run_left(cell, chord))
        forward = (not left_to_right) if power > 0 else left_to_right
        return self._lap_word(chord, forward, abs(power))

    def twist(self, comp, power: int):
        """Image of a component under the corridor twist of the given power."""
        if power == 0:
            return comp
        best = None
        for variant_idx, (elems, cells, cyclic) in enumerate(self._element_lists(comp)):
            cost, path = self._dp(elems, cells, cyclic)
            entry = ((cost, variant_idx), (elems, cells, cyclic, path))
            if best is None or entry[0] < best[0]:
                best = entry
        elems, cells, cyclic, levels = best[1]
        n = len(elems)
        letters_in: Dict[int, Letter] = {}
        if isinstance(comp, Loop):
            letters_in = dict(enumerate(comp.word))
        elif isinstance(comp, Arc):
            letters_in = {i: comp.word[i - 1] for i in range(1, n - 1)}
        out: List[Letter] = []
        for i in range(n):
            if i in letters_in:
                out.append(letters_in[i])
            if not cyclic and i == n - 1:
                break
            cell = cells[i]
            za = self._zone(cell, elems[i], levels[i])
            zb = self._zone(cell, elems[(i + 1) % n], levels[(i + 1) % n])
            for chord, from_face, _ in _tree_path(za, zb):
                out.extend(self._insertion(cell, chord, from_face, power))
        if isinstance(comp, Loop):
            return canonical_loop(self.chart, out)
        if isinstance(comp, Arc):
            return canonical_arc(self.chart, comp.start, out, comp.end)
        lines = self._attachment_lines(comp.wall)
        cell = cells[0]
        return canonical_arc(self.chart, lines[0], out, lines[1],
                             start_cell=cell, end_cell=cell)

    def twist_multicurve(self, mc: Multicurve, power: int) -> Multicurve:
        return Multicurve.of([(self.twist(comp, power), mult) for comp, mult in mc])

    def core_loop(self) -> Loop:
        return canonical_loop(self.chart, self.run)
