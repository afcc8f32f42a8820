"""End-periodic maps as primitive relabelings composed with corridor twists.

The primitive part translates the chart by whole blocks (optionally with a
top-bottom flip); Dehn twists are applied afterwards in listed order, so
``f = d_k ∘ ... ∘ d_1 ∘ t`` acts on a curve by relabeling its word and then
pushing it through each twist corridor.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .corridor import Corridor
from .words import (Arc, Letter, Line, Loop, Multicurve, ParallelArc, Wall, Word,
                    canonical_arc, canonical_loop)


@dataclass(frozen=True)
class StripShift:
    """Translate every block index by ``step``; flip the strip first if asked."""

    step: int = 1
    flip: bool = False

    def wall(self, chart, wall: Wall) -> Wall:
        if self.flip:
            wall = chart.flip_wall(wall)
        return chart.shift_wall(wall, self.step)

    def letter(self, chart, letter: Letter) -> Letter:
        family, idx, sign = letter
        if self.flip:
            sign *= chart.flip_sign((family, idx))
        w = self.wall(chart, (family, idx))
        return (w[0], w[1], sign)

    def line(self, chart, line: Line) -> Line:
        if self.flip:
            line = chart.flip_line(line)
        return chart.shift_line(line, self.step)

    def inverse(self) -> "StripShift":
        # A vertical flip commutes with horizontal translation.
        return StripShift(step=-self.step, flip=self.flip)


@dataclass(frozen=True)
class DehnTwist:
    """Twist specification: embedded closed run plus an integer power."""

    run: Word
    power: int


class EndPeriodicMap:
    """A homeomorphism acting on canonical curve words."""

    def __init__(self, chart, primitive, twists: Sequence[DehnTwist] = (), name: str = ""):
        self.chart = chart
        self.primitive = primitive
        self.twists = tuple(twists)
        self.name = name
        self.corridors = [Corridor(chart, t.run) for t in self.twists]

    # -- action ----------------------------------------------------------------

    def _primitive_component(self, comp, primitive):
        chart = self.chart
        if isinstance(comp, ParallelArc):
            return ParallelArc(primitive.wall(chart, comp.wall))
        if isinstance(comp, Loop):
            return canonical_loop(chart, [primitive.letter(chart, x) for x in comp.word])
        if isinstance(comp, Arc):
            return canonical_arc(chart,
                                 primitive.line(chart, comp.start),
                                 [primitive.letter(chart, x) for x in comp.word],
                                 primitive.line(chart, comp.end))
        raise TypeError(f"unsupported component {comp!r}")

    def apply(self, mc: Multicurve) -> Multicurve:
        out = Multicurve.of([(self._primitive_component(c, self.primitive), m) for c, m in mc])
        for corridor, spec in zip(self.corridors, self.twists):
            out = corridor.twist_multicurve(out, spec.power)
        return out

    def inverse_apply(self, mc: Multicurve) -> Multicurve:
        out = mc
        for corridor, spec in zip(reversed(self.corridors), reversed(self.twists)):
            out = corridor.twist_multicurve(out, -spec.power)
        inv = self.primitive.inverse()
        return Multicurve.of([(self._primitive_component(c, inv), m) for c, m in out])

    def apply_power(self, mc: Multicurve, k: int) -> Multicurve:
        step = self.apply if k >= 0 else self.inverse_apply
        for _ in range(abs(k)):
            mc = step(mc)
        return mc

    def iterates(self, mc: Multicurve, depth: int, sign: int = 1) -> List[Multicurve]:
        """[mc, f(mc), ..., f^depth(mc)] (or inverse iterates for sign < 0)."""
        out = [mc]
        for _ in range(depth):
            out.append(self.apply(out[-1]) if sign >= 0 else self.inverse_apply(out[-1]))
        return out

    # -- descriptive helpers -----------------------------------------------------

    def support_blocks(self) -> Tuple[int, int]:
        """Smallest block window containing every twist run (0, -1 if none)."""
        blocks = [x[1] for t in self.twists for x in t.run]
        if not blocks:
            return (0, -1)
        return (min(blocks), max(blocks))

    def twisted(self) -> bool:
        return bool(self.twists)
