"""Iterated-juncture limits as stabilized weighted branch systems.

Pushing a juncture forever in one direction accumulates on an invariant
curve system.  At the branch level the crossing weights eventually obey an
exact affine law ``w(n + p) = q * (w(n) - r) + r`` with a common rational
ratio ``q`` over one period ``p``; the coefficients split the limit into a
geometrically growing part (the measured part, contracting by ``1/λ`` per
step) and a persistent flat part (invariant curves and parking strands
that carry no measure).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .exact import fraction_str, nth_root
from .track import Branch, branch_weights, wall_weights
from .words import Loop, Multicurve, ParallelArc, Wall, reverse_word

ZERO = Fraction(0)
ONE = Fraction(1)


class LaminationError(ValueError):
    """The iterate window does not pin down a stabilized structure."""


# ---------------------------------------------------------------------------
# Affine law fitting.


@dataclass(frozen=True)
class BranchLaw:
    """Exact tail behaviour of one branch weight series.

    For iterate numbers ``n = rho + i*period >= start`` the weight equals
    ``a * ratio**i + r`` with ``(a, r) = terms[rho]``.
    """

    period: int
    ratio: Fraction
    terms: Tuple[Tuple[Fraction, Fraction], ...]
    start: int

    @property
    def growing(self) -> bool:
        return any(a > 0 for a, _ in self.terms)

    @property
    def persistent(self) -> bool:
        return (not self.growing) and any(r > 0 for _, r in self.terms)

    def value(self, n: int) -> Fraction:
        if n < self.start:
            raise ValueError(f"law only valid from iterate {self.start}")
        rho = n % self.period
        a, r = self.terms[rho]
        return a * self.ratio ** ((n - rho) // self.period) + r


def _fit_residue(s: Sequence[int]):
    """Tail law of one residue subseries: (kind, q, a, r, start) or None.

    kind is "const" (q free) or "geom" (q fixed); start is the first index
    of the subseries where the law already holds.
    """

    if len(s) < 3:
        return None
    if s[-1] == s[-2] == s[-3]:
        r = s[-1]
        start = len(s) - 1
        while start > 0 and s[start - 1] == r:
            start -= 1
        return ("const", None, ZERO, Fraction(r), start)
    d1, d2 = s[-2] - s[-3], s[-1] - s[-2]
    if d1 == 0 or d2 == 0:
        return None
    q = Fraction(d2, d1)
    if q <= 1:
        return None
    c = s[-1] - q * s[-2]
    r = c / (1 - q)
    start = len(s) - 1
    while start > 0 and s[start] == q * s[start - 1] + c:
        start -= 1
    if len(s) - start < 3:
        return None
    a = (Fraction(s[-1]) - r) / q ** (len(s) - 1)
    if a <= 0:
        return None
    return ("geom", q, a, r, start)


def fit_branch_law(series: Sequence[int], period: int) -> Optional[Tuple[Optional[Fraction], BranchLaw]]:
    """Fit an affine law of the given period; returns (ratio or None, law).

    The ratio is None when every residue class is eventually constant, in
    which case the law is compatible with any growth ratio.
    """

    fits = []
    for rho in range(period):
        fit = _fit_residue(series[rho::period])
        if fit is None:
            return None
        fits.append(fit)
    ratios = {q for kind, q, _, _, _ in fits if kind == "geom"}
    if len(ratios) > 1:
        return None
    q = ratios.pop() if ratios else None
    terms = tuple((a, r) for _, _, a, r, _ in fits)
    start = max(rho + start_i * period for rho, (_, _, _, _, start_i) in enumerate(fits))
    law = BranchLaw(period, q if q is not None else ONE, terms, start)
    return q, law


# ---------------------------------------------------------------------------
# The lamination object.


@dataclass
class Lamination:
    sign: int
    juncture: int
    depth: int
    period: int
    ratio: Fraction                      # growth over one period
    eigenvalue: Optional[Fraction]       # per-step growth, when rational
    laws: Dict[Branch, BranchLaw]
    approximants: List[Multicurve]
    window: Tuple[int, int]
    stabilized: bool
    core: Tuple[int, int] = (0, -1)
    notes: List[str] = field(default_factory=list)
    chart: Optional[object] = None

    @property
    def contraction(self) -> Optional[Fraction]:
        if not self.eigenvalue:
            return None
        return 1 / self.eigenvalue

    def growing_support(self) -> Set[Branch]:
        return {b for b, law in self.laws.items() if law.growing}

    def flat_support(self) -> Set[Branch]:
        """Persistent measure-zero branches in the interior.

        A juncture arc keeps its endpoints on the boundary anchors, so the
        chord germs at the anchors persist trivially; they are reported by
        ``tail_germs`` instead and excluded here.
        """

        return {b for b, law in self.laws.items()
                if law.persistent and b[0] == "chord" and _interior(b)}

    def tail_germs(self) -> Set[Branch]:
        return {b for b, law in self.laws.items()
                if law.persistent and not (b[0] == "chord" and _interior(b))}

    def flat_multiplicities(self) -> Dict[Branch, Fraction]:
        """Steady weight of each interior flat branch.

        A residue-dependent constant is reported as a half-integer so that
        downstream walkers treat the branch as non-circular.
        """

        out = {}
        for b in self.flat_support():
            rs = {r for _, r in self.laws[b].terms}
            out[b] = rs.pop() if len(rs) == 1 else Fraction(1, 2)
        return out

    @property
    def empty(self) -> bool:
        return not (self.growing_support() or self.flat_support())

    def coefficient(self, branch: Branch) -> Fraction:
        """Limit of weight/λ^n along the first residue where it grows."""

        law = self.laws.get(branch)
        if law is None or not law.growing:
            return ZERO
        if self.eigenvalue is None:
            raise LaminationError("growth ratio has no exact per-step root")
        rho = min(i for i, (a, _) in enumerate(law.terms) if a > 0)
        return law.terms[rho][0] / self.eigenvalue ** rho

    def measure(self, wall: Wall) -> Fraction:
        """Invariant transverse measure of a wall, in coefficient units.

        Every strand crossing the wall leaves one chord foot in each of the
        two flanking cells, so summing coefficients over feet double-counts.
        Only meaningful when both flanking cells lie inside the fit window;
        at the window edge half the feet are invisible.
        """

        total = ZERO
        for branch in self.growing_support():
            if branch[0] == "chord":
                for kind, payload in branch[2]:
                    if kind == "w" and payload == wall:
                        total += self.coefficient(branch)
        return total / 2

    def measure_table(self, count: int) -> List[Fraction]:
        """Normalized juncture measures 1, 1/λ, 1/λ², ... (exact)."""

        if self.eigenvalue is None:
            raise LaminationError("growth ratio has no exact per-step root")
        return [self.contraction ** n for n in range(count)]

    def minimal_sublaminations(self) -> List[Set[Branch]]:
        grow = self.growing_support()
        if self.chart is not None and self.eigenvalue is not None:
            weights = {b: self.coefficient(b) for b in grow if b[0] == "chord"}
            return _strand_components(self.chart, weights)
        return _wall_components(grow)


def _interior(branch: Branch) -> bool:
    return all(kind == "w" for kind, _ in branch[2])


def _wall_components(branches: Iterable[Branch]) -> List[Set[Branch]]:
    """Connected components of a branch set, glued along shared walls."""

    branches = [b for b in branches if b[0] == "chord"]
    by_wall: Dict[Wall, List[Branch]] = {}
    for b in branches:
        for kind, payload in b[2]:
            if kind == "w":
                by_wall.setdefault(payload, []).append(b)
    parent = {b: b for b in branches}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for group in by_wall.values():
        for other in group[1:]:
            parent[find(other)] = find(group[0])
    comps: Dict[Branch, Set[Branch]] = {}
    for b in branches:
        comps.setdefault(find(b), set()).add(b)
    return sorted(comps.values(), key=lambda c: sorted(c)[0])


def _strand_components(chart, weights: Dict[Branch, Fraction]) -> List[Set[Branch]]:
    """Components of a weighted family under strand continuation.

    Two branches are linked when their measure intervals overlap across a
    wall in the wall's intrinsic coordinate; a branch crossing a wall high
    up is never glued to one crossing the same wall far below it.  Walls
    whose two flanks carry different totals (the family leaks out of the
    window there) fall back to coarse gluing on that wall.
    """

    branches = [b for b in weights if b[0] == "chord" and weights[b] > 0]
    feet: Dict[Tuple[Wall, object], List[Tuple[int, Branch]]] = {}
    directions: Dict[Tuple[Wall, object], int] = {}
    for cell in {b[1] for b in branches}:
        items = chart.boundary_items(cell)
        index = {(kind, payload): i for i, (kind, payload, _) in enumerate(items)}
        for kind, payload, direction in items:
            if kind == "w":
                directions[(payload, cell)] = direction
        for b in (x for x in branches if x[1] == cell):
            (k1, p1), (k2, p2) = b[2]
            for wall_item, other_item in (((k1, p1), (k2, p2)), ((k2, p2), (k1, p1))):
                if wall_item[0] != "w":
                    continue
                pos = (index[other_item] - index[("w", wall_item[1])]) % len(items)
                feet.setdefault((wall_item[1], cell), []).append((-pos, b))

    parent = {b: b for b in branches}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    def intervals(key):
        total = ZERO
        spans = []
        for _, b in sorted(feet[key]):
            spans.append((total, total + weights[b], b))
            total += weights[b]
        if directions[key] == 1:
            return spans, total
        return [(total - e, total - s, b) for s, e, b in spans], total

    done = set()
    for wall, cell in feet:
        if wall in done:
            continue
        done.add(wall)
        other = _other_side(chart, wall, cell)
        if (wall, other) not in feet:
            continue
        a_spans, a_total = intervals((wall, cell))
        b_spans, b_total = intervals((wall, other))
        if a_total != b_total:
            for _, _, b in a_spans + b_spans:
                union(a_spans[0][2], b)
            continue
        for s1, e1, b1 in a_spans:
            for s2, e2, b2 in b_spans:
                if max(s1, s2) < min(e1, e2):
                    union(b1, b2)
    comps: Dict[Branch, Set[Branch]] = {}
    for b in branches:
        comps.setdefault(find(b), set()).add(b)
    return sorted(comps.values(), key=lambda c: sorted(c)[0])


# ---------------------------------------------------------------------------
# Computing a lamination from a map.


def default_junctures(emap) -> Tuple[int, int]:
    lo, hi = emap.support_blocks()
    if hi < lo:
        return (0, 1)
    return (lo, hi + 1)


def juncture_curve(index: int) -> Multicurve:
    return Multicurve.of([ParallelArc(("J", index))])


def compute_lamination(emap, sign: int, depth: int = 6, juncture: Optional[int] = None,
                       margin: int = 3, max_period: int = 3) -> Lamination:
    """Stabilized branch limit of juncture iterates in one direction.

    ``sign=+1`` pushes a juncture of the shrinking side forward; ``sign=-1``
    pulls one of the growing side backward.  Branch laws are fitted inside
    a window of ``margin`` blocks around the twist support; weights beyond
    it belong to the plain translation regime.
    """

    if depth < 4:
        raise LaminationError("need at least four iterates to fit a law")
    j_minus, j_plus = default_junctures(emap)
    if juncture is None:
        juncture = j_minus if sign >= 0 else j_plus
    lo, hi = emap.support_blocks()
    if hi < lo:  # pure translation: nothing accumulates
        approximants = emap.iterates(juncture_curve(juncture), depth, sign)
        return Lamination(sign, juncture, depth, 1, ONE, ONE, {}, approximants,
                          (0, -1), True, (0, -1), ["no twists: the juncture escapes"],
                          chart=emap.chart)
    # The pushed juncture's front crosses one block per iterate and leaves a
    # one-step weight bump behind; a block's series is only fittable once the
    # front is at least three iterates past it.  Clip the window on the travel
    # side accordingly, so shallow depths stay usable near the support.
    settled = max(depth - 3, 1)
    if sign >= 0:
        window = (lo - margin, min(hi + margin, juncture + settled))
    else:
        window = (max(lo - margin, juncture - settled), hi + margin)
    approximants = emap.iterates(juncture_curve(juncture), depth, sign)
    tables = [branch_weights(emap.chart, mc) for mc in approximants]
    keys = set()
    for table in tables:
        keys.update(table)
    series = {}
    for key in keys:
        blocks = _branch_blocks(key)
        if blocks and window[0] <= min(blocks) and max(blocks) <= window[1]:
            series[key] = [table.get(key, 0) for table in tables]
    notes: List[str] = []
    for period in range(1, max_period + 1):
        ratios = set()
        laws = {}
        ok = True
        for key, s in sorted(series.items()):
            fit = fit_branch_law(s, period)
            if fit is None:
                ok = False
                break
            q, law = fit
            if q is not None:
                ratios.add(q)
            if law.growing or law.persistent:
                laws[key] = law
        if not ok or len(ratios) > 1:
            continue
        ratio = ratios.pop() if ratios else ONE
        eigenvalue = nth_root(ratio, period) if ratio != 1 else ONE
        if eigenvalue is None:
            notes.append(f"period-{period} ratio {fraction_str(ratio)} has no rational root")
        return Lamination(sign, juncture, depth, period, ratio, eigenvalue,
                          laws, approximants, window, True, (lo, hi), notes,
                          chart=emap.chart)
    return Lamination(sign, juncture, depth, 0, ONE, None, {}, approximants,
                      window, False, (lo, hi),
                      [f"no affine law of period <= {max_period} fits within depth {depth}"],
                      chart=emap.chart)


def _branch_blocks(branch: Branch) -> List[int]:
    if branch[0] == "parallel":
        return [branch[1][1]]
    blocks = [branch[1][0]]
    for kind, payload in branch[2]:
        if kind == "w":
            blocks.append(payload[1])
    return blocks


# ---------------------------------------------------------------------------
# Flat components: invariant curves and lines in the measure-zero part.


def flat_components(chart, branches) -> List[Dict]:
    """Walk a branch family into closed cycles and open lines.

    ``branches`` is a set (unit weights) or a dict of integer multiplicities.
    Each component is reported as ``{"kind": "cycle"|"line", "branches",
    "loop"}`` where ``loop`` is the reconstructed closed curve for cycles.

    Strands are paired across a wall by their position along it.  Within a
    cell, non-crossing chords cross the wall in the reverse of the order in
    which their far endpoints appear along the boundary walk — that ordering
    is forced, so the reconstruction is exact for embeddable families.
    """

    if not isinstance(branches, dict):
        branches = {b: 1 for b in branches}
    out = []
    for comp in _strand_components(chart, branches):
        weights = {b: branches[b] for b in comp}
        anchored = any(kind == "a" for b in comp for kind, _ in b[2])
        if anchored or any(m < 1 or m != int(m) for m in weights.values()):
            out.append({"kind": "line", "branches": comp, "loop": None})
            continue
        loops = _walk_strands(chart, weights)
        if loops is None:
            out.append({"kind": "line", "branches": comp, "loop": None})
        else:
            for loop in loops:
                out.append({"kind": "cycle", "branches": comp, "loop": loop})
    return out


def _other_side(chart, wall: Wall, cell) -> object:
    a, b = chart.sides(wall)
    return b if cell == a else a


def _foot_lists(chart, weights: Dict[Branch, int]):
    """Ordered strand feet per (wall, cell), in the wall's own direction.

    Returns (feet, directions): ``feet[(w, c)]`` lists ``(branch, copy)`` in
    walk-local order along the wall; ``directions[(w, c)]`` is the walk
    direction of the wall in that cell (+1 keeps walk order intrinsic).
    """

    feet: Dict[Tuple[Wall, object], List[Tuple[Branch, int]]] = {}
    directions: Dict[Tuple[Wall, object], int] = {}
    cells = {b[1] for b in weights}
    for cell in cells:
        items = chart.boundary_items(cell)
        index = {(kind, payload): i for i, (kind, payload, _) in enumerate(items)}
        for kind, payload, direction in items:
            if kind == "w":
                directions[(payload, cell)] = direction
        local = [b for b in weights if b[1] == cell]
        for b in local:
            (k1, p1), (k2, p2) = b[2]
            for (wall_item, other_item) in (((k1, p1), (k2, p2)), ((k2, p2), (k1, p1))):
                if wall_item[0] != "w":
                    continue
                wall = wall_item[1]
                pos = (index[other_item] - index[("w", wall)]) % len(items)
                lst = feet.setdefault((wall, cell), [])
                lst.append((-pos, b))
    ordered = {}
    for key, lst in feet.items():
        lst.sort()  # increasing -pos == decreasing far-endpoint position
        expanded = []
        for _, b in lst:
            for copy in range(weights[b]):
                expanded.append((b, copy))
        ordered[key] = expanded
    return ordered, directions


def _walk_strands(chart, weights: Dict[Branch, int]) -> Optional[List[Loop]]:
    from .words import canonical_loop

    if any(len([1 for k, _ in b[2] if k == "w"]) != 2 for b in weights):
        return None
    feet, directions = _foot_lists(chart, weights)
    for (wall, cell), lst in feet.items():
        other = _other_side(chart, wall, cell)
        if len(feet.get((wall, other), ())) != len(lst):
            return None  # unbalanced: strands leak out of the window
    total = sum(2 * m for m in weights.values())
    todo = {(wall, cell, rank) for (wall, cell), lst in feet.items()
            for rank in range(len(lst))}
    loops = []
    while todo:
        start = min(todo)
        state = start
        word = []
        for _ in range(total + 1):
            wall, cell, walk_rank = state
            todo.discard(state)
            branch, copy = feet[(wall, cell)][walk_rank]
            # chords never have both feet on one wall, so the exit is:
            exit_item = [p for k, p in branch[2] if k == "w" and p != wall][0]
            exit_list = feet[(exit_item, cell)]
            block = [i for i, (b2, _) in enumerate(exit_list) if b2 == branch]
            exit_rank = block[0] + (weights[branch] - 1 - copy)
            neg, _pos = chart.sides(exit_item)
            sign = 1 if cell == neg else -1
            word.append((exit_item[0], exit_item[1], sign))
            # convert to the intrinsic coordinate, cross, convert back
            d_here = directions[(exit_item, cell)]
            intrinsic = exit_rank if d_here == 1 else len(exit_list) - 1 - exit_rank
            nxt_cell = _other_side(chart, exit_item, cell)
            nxt_list = feet[(exit_item, nxt_cell)]
            d_there = directions[(exit_item, nxt_cell)]
            nxt_rank = intrinsic if d_there == 1 else len(nxt_list) - 1 - intrinsic
            state = (exit_item, nxt_cell, nxt_rank)
            if state == start:
                break
        else:
            return None
        try:
            loops.append(canonical_loop(chart, tuple(word)))
        except ValueError:
            return None
    dedup = []
    for loop in loops:
        if loop not in dedup:
            dedup.append(loop)
    return dedup


def reducing_curves(emap, laminations: Sequence[Lamination]) -> List[Loop]:
    """Invariant closed curves found in the flat parts of the laminations."""

    seen = {}
    for lam in laminations:
        for comp in flat_components(emap.chart, lam.flat_multiplicities()):
            loop = comp["loop"]
            if loop is None:
                continue
            key = min(loop, loop.reversed())
            seen.setdefault(key, loop)
    out = []
    for _, loop in sorted(seen.items()):
        mc = Multicurve.of([loop])
        image = emap.apply(mc)
        back = emap.inverse_apply(mc)
        if _same_curve(image, mc) and _same_curve(back, mc):
            out.append(loop)
    return out


def _same_curve(a: Multicurve, b: Multicurve) -> bool:
    def normal(mc):
        comps = []
        for comp, mult in mc:
            if isinstance(comp, Loop):
                comp = min(comp, comp.reversed())
            comps.append((comp, mult))
        return sorted(comps, key=repr)

    return normal(a) == normal(b)


# ---------------------------------------------------------------------------
# Derived verdicts.


def support_cells(lam: Lamination) -> Set:
    cells = set()
    for b in lam.growing_support() | lam.flat_support():
        if b[0] == "chord":
            cells.add(b[1])
    return cells


def full_support(lam: Lamination, chart, blocks: Optional[Tuple[int, int]] = None) -> Optional[bool]:
    """Does the limit touch every cell over the given block range?

    The range defaults to the map's twist-support blocks; callers that know
    the compact core (the blocks between the two base junctures) should
    pass it explicitly.
    """

    lo, hi = blocks if blocks is not None else lam.core
    if hi < lo:
        return False
    cells = support_cells(lam)
    return all(cell in cells
               for n in range(lo, hi + 1)
               for cell in chart.cells_of_block(n))


def minimality(lam: Lamination) -> Tuple[Optional[bool], str]:
    """Is every half-leaf dense in the limit?

    Growth leaves persistent flat strands behind exactly when some leaf
    fails to return; without growth the limit is a finite leaf system,
    minimal just when it is a single component.
    """

    if not lam.stabilized:
        return None, "not stabilized"
    if lam.empty:
        return None, "empty limit"
    flat = lam.flat_support()
    if lam.ratio != 1:
        if flat:
            return False, f"{len(flat)} persistent measure-zero branches"
        return True, "every persistent branch grows"
    if lam.chart is not None:
        comps = _strand_components(lam.chart, lam.flat_multiplicities())
    else:
        comps = _wall_components(flat)
    if len(comps) == 1:
        return True, "a single finite leaf"
    return False, f"{len(comps)} finite leaves"


# ---------------------------------------------------------------------------
# Structural checks on the pair (map, laminations).


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str


@dataclass
class AxiomReport:
    checks: List[Check]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed_names(self) -> List[str]:
        return [c.name for c in self.checks if not c.ok]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def verify_axioms(emap, depth: int = 6, junctures: Optional[Tuple[int, int]] = None,
                  laminations: Optional[Tuple[Lamination, Lamination]] = None) -> AxiomReport:
    """Check the defining properties of the limit pair under the given map.

    When ``laminations`` are supplied they are tested against ``emap``
    as-is — feeding one map's limits to a different map is the intended
    way to demonstrate a wrong construction, and shows up here as failed
    invariance and measure-scaling checks.
    """

    if junctures is None:
        junctures = default_junctures(emap)
    j_minus, j_plus = junctures
    if laminations is None:
        laminations = (compute_lamination(emap, +1, depth, j_minus),
                       compute_lamination(emap, -1, depth, j_plus))
    checks: List[Check] = []
    chart = emap.chart
    lo, hi = emap.support_blocks()

    checks.append(Check("distinct_junctures", j_minus < j_plus,
                        f"base junctures J{j_minus}, J{j_plus}"))

    far = []
    for m in list(range(lo - 3, lo)) + list(range(hi + 1, hi + 4)):
        image = emap.apply(juncture_curve(m))
        far.append(image == juncture_curve(m + 1))
    checks.append(Check("translation_off_support", all(far),
                        f"junctures beyond blocks [{lo}, {hi}] translate by one"))

    inv_ok, inv_detail = True, []
    for lam in laminations:
        step = emap.apply if lam.sign > 0 else emap.inverse_apply
        for n in range(len(lam.approximants) - 1):
            if step(lam.approximants[n]) != lam.approximants[n + 1]:
                inv_ok = False
                inv_detail.append(f"sign {lam.sign:+d} iterate {n}")
                break
    checks.append(Check("invariance", inv_ok,
                        "map carries each approximant to the next" if inv_ok
                        else "mismatch at " + ", ".join(inv_detail)))

    stab = all(lam.stabilized for lam in laminations)
    eigs = {lam.eigenvalue for lam in laminations}
    checks.append(Check("stabilization", stab and len(eigs) == 1 and None not in eigs,
                        f"eigenvalues {sorted(fraction_str(e) for e in eigs if e)}"
                        if stab else "; ".join(n for lam in laminations for n in lam.notes)))

    grown = all(lam.growing_support() or lam.ratio == 1 for lam in laminations)
    balanced, bal_detail = _switch_balance(chart, laminations)
    checks.append(Check("positive_measure", grown and balanced,
                        bal_detail if not balanced else "growth present and wall-balanced"))

    scale_ok, scale_detail = _measure_scaling(emap, laminations)
    checks.append(Check("measure_scaling", scale_ok, scale_detail))

    closed = []
    for lam in laminations:
        if lam.ratio == 1:
            continue
        for comp in flat_components(chart, lam.growing_support()):
            if comp["kind"] == "cycle":
                closed.append(comp["loop"])
    checks.append(Check("no_closed_growing_leaf", not closed,
                        f"{len(closed)} closed growing components" if closed
                        else "growing part has no closed component"))
    return AxiomReport(checks)


def _switch_balance(chart, laminations) -> Tuple[bool, str]:
    for lam in laminations:
        if not lam.stabilized or lam.eigenvalue is None:
            continue
        by_side: Dict[Tuple[Wall, object], Fraction] = {}
        for b in lam.growing_support():
            if b[0] != "chord":
                continue
            for kind, payload in b[2]:
                if kind == "w":
                    key = (payload, b[1])
                    by_side[key] = by_side.get(key, ZERO) + lam.coefficient(b)
        lo, hi = lam.window
        for wall in {w for w, _ in by_side}:
            a, b_cell = chart.sides(wall)
            if not (lo < a[0] < hi and lo < b_cell[0] < hi):
                continue
            if by_side.get((wall, a), ZERO) != by_side.get((wall, b_cell), ZERO):
                return False, (f"sign {lam.sign:+d}: wall {wall} carries "
                               f"{fraction_str(by_side.get((wall, a), ZERO))} vs "
                               f"{fraction_str(by_side.get((wall, b_cell), ZERO))}")
    return True, ""


def _measure_scaling(emap, laminations) -> Tuple[bool, str]:
    """One more exact step: the given map must extend every branch law."""

    details = []
    for lam in laminations:
        if not lam.stabilized:
            return False, f"sign {lam.sign:+d} never stabilized"
        step = emap.apply if lam.sign > 0 else emap.inverse_apply
        nxt = step(lam.approximants[-1])
        table = branch_weights(emap.chart, nxt)
        n = len(lam.approximants)  # iterate number of nxt
        for b, law in sorted(lam.laws.items()):
            if law.start > n:
                continue
            predicted = law.value(n)
            actual = table.get(b, 0)
            if predicted != actual:
                details.append(f"sign {lam.sign:+d} branch {b}: "
                               f"law gives {fraction_str(predicted)}, map gives {actual}")
                if len(details) >= 3:
                    return False, "; ".join(details)
    if details:
        return False, "; ".join(details)
    return True, "weights follow the law one step past the window"
