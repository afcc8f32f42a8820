"""Chart combinatorics: walls, disk cells and their adjacency.

A chart describes how a shift-periodic surface is cut by walls into disk
cells, indexed by block.  All geometric questions the word calculus needs
are answered here: which cells flank a wall, the cyclic boundary walk of a
cell, which walls attach to which anchor lines, and the cyclic germ order
at interior weld vertices created by crosscap or handle gluings.

Boundary walks are stored as ``(kind, payload, direction)`` triples where
kind is ``"w"`` (wall) or ``"a"`` (anchor line segment) and direction
records whether the walk traverses the wall from its first end to its
second (+1) or backwards (-1).  A wall whose two incidences traverse it in
the same direction reverses transverse orientation (a flip wall).
"""

from typing import Dict, Iterable, List, Tuple

from .words import Line, Wall

Cell = Tuple[int, str]
BoundaryItem = Tuple[str, object, int]


class ChartBase:
    """Shared plumbing for block-indexed charts."""

    name: str = "chart"
    families: Tuple[str, ...] = ()

    def sides(self, wall: Wall) -> Tuple[Cell, Cell]:
        raise NotImplementedError

    def boundary_items(self, cell: Cell) -> Tuple[BoundaryItem, ...]:
        raise NotImplementedError

    def attaches(self, wall: Wall, line: Line) -> bool:
        raise NotImplementedError

    def block_of(self, wall: Wall) -> int:
        return wall[1]

    def boundary(self, cell: Cell) -> Tuple[Tuple[str, object], ...]:
        return tuple((kind, payload) for kind, payload, _ in self.boundary_items(cell))

    def cells_of_block(self, n: int) -> Tuple[Cell, ...]:
        return ((n, "W"), (n, "E"))

    def walls_of_block(self, n: int) -> Tuple[Wall, ...]:
        return tuple((f, n) for f in self.families)

    def orientation_flip(self, wall: Wall) -> bool:
        dirs = []
        for cell in self.sides(wall):
            for kind, payload, direction in self.boundary_items(cell):
                if kind == "w" and payload == wall:
                    dirs.append(direction)
        if len(dirs) != 2:
            raise ValueError(f"wall {wall} is not flanked by exactly two cell sides")
        return dirs[0] == dirs[1]

    def vertex_links(self, blocks: Iterable[int]) -> List[Tuple[Tuple[Wall, int], ...]]:
        """Germ lists of the interior weld vertices in the given blocks.

        Each link lists the wall-ends around one vertex in cyclic order,
        paired with the crossing sign that moves a strand one sector
        onward in that cyclic direction; the list read as a word is a
        contractible loop around the vertex.
        """
        return []

    def shift_wall(self, wall: Wall, step: int) -> Wall:
        return (wall[0], wall[1] + step)

    def shift_line(self, line: Line, step: int) -> Line:
        kind, idx = line
        if kind in ("top", "bottom"):
            return line
        return (kind, idx + step)

    def flip_wall(self, wall: Wall) -> Wall:
        raise NotImplementedError(f"{self.name} has no top-bottom symmetry")

    def flip_line(self, line: Line) -> Line:
        raise NotImplementedError(f"{self.name} has no top-bottom symmetry")

    def flip_sign(self, wall: Wall) -> int:
        return 1

    def validate_window(self, lo: int, hi: int) -> None:
        """Consistency checks over a block range; raises on structural bugs."""
        seen: Dict[Wall, List[int]] = {}
        for n in range(lo, hi + 1):
            for cell in self.cells_of_block(n):
                items = self.boundary_items(cell)
                walls_here = [p for k, p, _ in items if k == "w"]
                if len(set(walls_here)) != len(walls_here):
                    raise ValueError(f"cell {cell} repeats a wall on its boundary")
                for kind, payload, direction in items:
                    if kind == "w":
                        seen.setdefault(payload, []).append(direction)
                        a, b = self.sides(payload)
                        if cell not in (a, b):
                            raise ValueError(f"cell {cell} lists wall {payload} but does not flank it")
                        if a == b:
                            raise ValueError(f"wall {payload} has identical sides {a}")
        for wall, dirs in seen.items():
            if lo < self.block_of(wall) < hi and len(dirs) != 2:
                raise ValueError(f"wall {wall} appears on {len(dirs)} cell boundaries")


class StripChart(ChartBase):
    """One row of holes on a bi-infinite strip, one hole per block.

    With ``crosscap=True`` every hole is antipodally self-glued, replacing
    the hole circle by a one-sided seam wall ``W`` through a single interior
    vertex where the ``T`` and ``B`` walls meet.
    """

    def __init__(self, crosscap: bool = False):
        self.crosscap = crosscap
        self.families = ("T", "B", "J", "W") if crosscap else ("T", "B", "J")
        self.name = "strip-crosscap" if crosscap else "strip"

    def sides(self, wall: Wall) -> Tuple[Cell, Cell]:
        family, n = wall
        if family == "J":
            return ((n - 1, "E"), (n, "W"))
        if family in ("T", "B") or (family == "W" and self.crosscap):
            return ((n, "W"), (n, "E"))
        raise ValueError(f"unknown wall {wall}")

    def boundary_items(self, cell: Cell) -> Tuple[BoundaryItem, ...]:
        n, side = cell
        bottom = ("a", ("bottom", 0), 0)
        top = ("a", ("top", 0), 0)
        if side == "W":
            middle = (("w", ("W", n), +1),) if self.crosscap else (("a", ("hole", n), 0),)
            return (bottom, ("w", ("B", n), -1)) + middle + (
                ("w", ("T", n), -1), top, ("w", ("J", n), +1))
        if side == "E":
            middle = (("w", ("W", n), +1),) if self.crosscap else (("a", ("hole", n), 0),)
            return (bottom, ("w", ("J", n + 1), -1), top, ("w", ("T", n), +1)) + middle + (
                ("w", ("B", n), +1),)
        raise ValueError(f"unknown cell {cell}")

    def attaches(self, wall: Wall, line: Line) -> bool:
        family, n = wall
        if family == "J":
            return line in (("top", 0), ("bottom", 0))
        if family == "T":
            return line == ("top", 0) or (not self.crosscap and line == ("hole", n))
        if family == "B":
            return line == ("bottom", 0) or (not self.crosscap and line == ("hole", n))
        return False

    def vertex_links(self, blocks: Iterable[int]):
        if not self.crosscap:
            return []
        links = []
        for n in sorted(set(blocks)):
            # Germ order around the weld vertex: T, W-start, B, W-end.
            links.append(((("T", n), +1), (("W", n), -1), (("B", n), +1), (("W", n), -1)))
        return links

    def flip_wall(self, wall: Wall) -> Wall:
        family, n = wall
        swap = {"T": "B", "B": "T", "J": "J", "W": "W"}
        return (swap[family], n)

    def flip_line(self, line: Line) -> Line:
        kind, idx = line
        swap = {"top": "bottom", "bottom": "top", "hole": "hole"}
        return (swap[kind], idx)


class Strip2Chart(ChartBase):
    """Two stacked holes per block on a bi-infinite strip.

    With ``handle=True`` the two hole circles of each block are glued by an
    orientation-reversing circle map, producing an orientable handle whose
    seam splits into two walls ``WA``/``WB`` through interior vertices Q1
    (where ``T`` and ``M`` meet) and Q2 (where ``M`` and ``B`` meet).
    """

    def __init__(self, handle: bool = False):
        self.handle = handle
        self.families = ("T", "M", "B", "J") + (("WA", "WB") if handle else ())
        self.name = "strip2-handle" if handle else "strip2"

    def sides(self, wall: Wall) -> Tuple[Cell, Cell]:
        family, n = wall
        if family == "J":
            return ((n - 1, "E"), (n, "W"))
        if family in ("T", "M", "B") or (self.handle and family in ("WA", "WB")):
            return ((n, "W"), (n, "E"))
        raise ValueError(f"unknown wall {wall}")

    def boundary_items(self, cell: Cell) -> Tuple[BoundaryItem, ...]:
        n, side = cell
        bottom = ("a", ("bottom", 0), 0)
        top = ("a", ("top", 0), 0)
        if side == "W":
            if self.handle:
                stack = (("w", ("B", n), -1), ("w", ("WB", n), -1), ("w", ("M", n), -1),
                         ("w", ("WA", n), -1), ("w", ("T", n), -1))
            else:
                stack = (("w", ("B", n), -1), ("a", ("holeB", n), 0), ("w", ("M", n), -1),
                         ("a", ("holeT", n), 0), ("w", ("T", n), -1))
            return (bottom,) + stack + (top, ("w", ("J", n), +1))
        if side == "E":
            if self.handle:
                stack = (("w", ("T", n), +1), ("w", ("WB", n), +1), ("w", ("M", n), +1),
                         ("w", ("WA", n), +1), ("w", ("B", n), +1))
            else:
                stack = (("w", ("T", n), +1), ("a", ("holeT", n), 0), ("w", ("M", n), +1),
                         ("a", ("holeB", n), 0), ("w", ("B", n), +1))
            return (bottom, ("w", ("J", n + 1), -1), top) + stack
        raise ValueError(f"unknown cell {cell}")

    def attaches(self, wall: Wall, line: Line) -> bool:
        family, n = wall
        if family == "J":
            return line in (("top", 0), ("bottom", 0))
        if family == "T":
            return line == ("top", 0) or (not self.handle and line == ("holeT", n))
        if family == "M":
            return (not self.handle) and line in (("holeT", n), ("holeB", n))
        if family == "B":
            return line == ("bottom", 0) or (not self.handle and line == ("holeB", n))
        return False

    def vertex_links(self, blocks: Iterable[int]):
        if not self.handle:
            return []
        links = []
        for n in sorted(set(blocks)):
            # Q1 link: T, WB, M, WA;  Q2 link: B, WB, M, WA (derived from the
            # corner sectors of the two cell walks).
            links.append(((("T", n), +1), (("WB", n), -1), (("M", n), +1), (("WA", n), -1)))
            links.append(((("B", n), -1), (("WB", n), +1), (("M", n), -1), (("WA", n), +1)))
        return links

    def flip_wall(self, wall: Wall) -> Wall:
        family, n = wall
        swap = {"T": "B", "B": "T", "M": "M", "J": "J", "WA": "WB", "WB": "WA"}
        return (swap[family], n)

    def flip_line(self, line: Line) -> Line:
        kind, idx = line
        swap = {"top": "bottom", "bottom": "top", "holeT": "holeB", "holeB": "holeT"}
        return (swap[kind], idx)
