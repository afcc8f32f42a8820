"""Block-periodic surface bookkeeping.

The surfaces here are assembled from a compact core and finitely many ends,
each end a half-infinite chain of copies of one repeating block separated by
junctures.  All of it is finite data: blocks carry the Euler characteristic
of their ribbon-graph spine, junctures carry their component structure, and
ends optionally carry a winding weight pair (m, n) describing how the end
winds past the two marked circle families A and D of its repeating block.

That is enough to truncate the surface to compact pieces, to compute Euler
characteristics, and to answer the separation question for winding ends:
how many consecutive fundamental domains must be grouped before the grouped
junctures actually separate a neighborhood of the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class SurfaceError(ValueError):
    """Raised for structurally invalid surface descriptions."""


@dataclass(frozen=True)
class Block:
    """One repeating block, recorded through its ribbon-graph spine.

    The block deformation-retracts to a graph with ``spine_vertices``
    vertices and ``spine_edges`` edges, so its Euler characteristic is
    V - E.  A strip block with one hole retracts to a circle (0), one
    with two holes or a handle to a wedge of two circles (-1).
    """

    name: str
    spine_vertices: int
    spine_edges: int

    def __post_init__(self) -> None:
        if self.spine_vertices < 1 or self.spine_edges < 0:
            raise SurfaceError(f"bad spine for block {self.name!r}")

    @property
    def chi(self) -> int:
        return self.spine_vertices - self.spine_edges


@dataclass(frozen=True)
class Juncture:
    """The multicurve separating consecutive blocks of one end.

    ``arcs`` components are properly embedded arcs (they contribute 1
    each to the Euler characteristic of the cut locus), ``circles`` are
    closed components (contributing 0).
    """

    arcs: int = 0
    circles: int = 0
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.arcs < 0 or self.circles < 0 or self.arcs + self.circles == 0:
            raise SurfaceError("juncture needs at least one component")
        if self.labels and len(self.labels) != self.arcs + self.circles:
            raise SurfaceError("juncture labels do not match component count")

    @property
    def component_count(self) -> int:
        return self.arcs + self.circles

    @property
    def chi(self) -> int:
        return self.arcs


@dataclass(frozen=True)
class End:
    """One end of the surface.

    ``sign`` is +1 for an end the map translates toward, -1 otherwise
    (the dynamical classification lives with the map; the sign here is
    the naming convention for juncture indices).  ``period`` is the
    number of map applications needed to advance this end's chain by
    one block (ends permuted in a cycle of length p have period p).
    ``frontier_index`` is the juncture index bounding the core on this
    end's side, so truncating to depth d exposes juncture
    frontier_index + sign*d.
    """

    name: str
    sign: int
    block: Block
    juncture: Juncture
    period: int = 1
    frontier_index: int = 0
    winding: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.sign not in (-1, 1):
            raise SurfaceError(f"end {self.name!r}: sign must be +1 or -1")
        if self.period < 1:
            raise SurfaceError(f"end {self.name!r}: period must be positive")
        if self.winding is not None and self.winding == (0, 0):
            raise SurfaceError(f"end {self.name!r}: winding weights (0, 0)")

    def frontier_label(self, depth: int) -> str:
        return f"J{self.frontier_index + self.sign * depth}"


@dataclass(frozen=True)
class PeriodicSurface:
    name: str
    core: Block
    ends: tuple[End, ...]
    boundary_circles: int = 0

    def __post_init__(self) -> None:
        if not self.ends:
            raise SurfaceError("a surface needs at least one end")
        names = [e.name for e in self.ends]
        if len(set(names)) != len(names):
            raise SurfaceError("duplicate end names")

    @property
    def end_names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.ends)


@dataclass(frozen=True)
class Truncation:
    """The compact piece between the depth-d junctures of every end."""

    surface_name: str
    depth: int
    frontier: tuple[tuple[str, str], ...]
    chi: int
    block_count: int

    def nests_inside(self, other: "Truncation") -> bool:
        return (
            self.surface_name == other.surface_name
            and self.depth <= other.depth
            and self.block_count <= other.block_count
        )


def truncate(surface: PeriodicSurface, depth: int) -> Truncation:
    """Cut the surface along each end's depth-d juncture.

    Depth 0 keeps the core alone.  Each further block is glued along one
    copy of the end's juncture, so it changes the Euler characteristic
    by chi(block) - chi(juncture).
    """

    if depth < 0:
        raise SurfaceError("truncation depth must be >= 0")
    chi = surface.core.chi
    blocks = 1
    frontier = []
    for end in surface.ends:
        chi += depth * (end.block.chi - end.juncture.chi)
        blocks += depth
        frontier.append((end.name, end.frontier_label(depth)))
    return Truncation(surface.name, depth, tuple(frontier), chi, blocks)


def validate(surface: PeriodicSurface) -> list[str]:
    """Collect diagnostics; an empty list means the description is sound."""

    problems = []
    if surface.boundary_circles < 0:
        problems.append("negative boundary circle count")
    for end in surface.ends:
        if end.block.chi > 0:
            problems.append(f"end {end.name!r}: block has positive characteristic")
        if end.winding is not None:
            m, n = end.winding
            if end.juncture.component_count != abs(m) + abs(n):
                problems.append(
                    f"end {end.name!r}: winding ({m}, {n}) needs a juncture "
                    f"with {abs(m) + abs(n)} components, "
                    f"found {end.juncture.component_count}"
                )
    signs = {end.sign for end in surface.ends}
    if signs == {1}:
        # Legal (one can cap one side), but worth flagging: the maps in
        # this package always translate from a repelling side.
        problems.append("no negative end: nothing repels")
    return problems


# ---------------------------------------------------------------------------
# Winding ends.
#
# An end with winding weights (m, n) tiles its neighborhood by fundamental
# domains X_0, X_1, ... where X_i shares its A-circle with X_{i+|m|} and its
# D-circle with X_{i+|n|}.  Removing a group of g consecutive domains (or,
# equivalently, cutting along the grouped juncture made of the |m| A-circles
# and |n| D-circles at one position) disconnects the chain exactly when no
# circle reaches across the group.


def winding_juncture_labels(m: int, n: int) -> tuple[str, ...]:
    """The circle labels of the grouped juncture at position 0."""

    if m == 0 and n == 0:
        raise SurfaceError("winding weights (0, 0) give no juncture")
    return tuple(f"A{i}" for i in range(abs(m))) + tuple(
        f"D{i}" for i in range(abs(n))
    )


def winding_graph(m: int, n: int, blocks: int) -> dict[int, set[int]]:
    """Adjacency of the fundamental domains X_0 .. X_{blocks-1}."""

    if m == 0 and n == 0:
        raise SurfaceError("winding weights (0, 0) glue nothing")
    if blocks < 1:
        raise SurfaceError("need at least one block")
    adj: dict[int, set[int]] = {i: set() for i in range(blocks)}
    for span in (abs(m), abs(n)):
        if span == 0:
            continue
        for i in range(blocks - span):
            adj[i].add(i + span)
            adj[i + span].add(i)
    return adj


def group_disconnects(m: int, n: int, start: int, size: int, blocks: int = 0) -> bool:
    """Does the boundary of X_start .. X_{start+size-1} separate the chain?

    Separation means what a juncture needs: after removing the group, no
    domain before it still reaches a domain after it.  (A cut that merely
    strands some middle domain while the two sides stay connected does not
    count — the end would still touch the base of the surface.)
    """

    if size < 1 or start < 0:
        raise SurfaceError("group must cover at least one block")
    if blocks <= 0:
        blocks = start + size + 2 * max(abs(m), abs(n), 1) + 2
    adj = winding_graph(m, n, blocks)
    removed = set(range(start, start + size))
    left = {i for i in range(start) if i not in removed}
    right = {i for i in range(start + size, blocks)}
    if not left or not right:
        return False
    seen = set(left)
    stack = list(left)
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen.isdisjoint(right)


def separating_group_size(m: int, n: int) -> int:
    """Minimal number of consecutive fundamental domains whose grouped
    juncture separates a neighborhood of a winding end with weights (m, n).
    """

    if m == 0 and n == 0:
        raise SurfaceError("winding weights (0, 0) describe no winding")
    limit = max(abs(m), abs(n)) + 1
    for size in range(1, limit + 1):
        # The chain is shift-periodic, so one interior position decides.
        if group_disconnects(m, n, limit, size):
            return size
    raise SurfaceError("no separating group found")  # pragma: no cover


def attracting_end_check(m: int, n: int, iterations: int = 4) -> bool:
    """Check f(U_i) = U_{i+1} on the fundamental-domain model.

    U_i is the union of the domains X_i, X_{i+1}, ...; the map shifts
    indices by one.  The check is finite: it compares index sets inside
    a window large enough to see every circle of the first `iterations`
    junctures.
    """

    window = (iterations + 2) * max(abs(m), abs(n), 1) + 4
    for i in range(iterations):
        u_i = {j for j in range(i, window)}
        image = {j + 1 for j in u_i if j + 1 < window}
        u_next = {j for j in range(i + 1, window)}
        if image != u_next:
            return False
    return True


# ---------------------------------------------------------------------------
# Serialization (surface-v1).


def surface_to_dict(surface: PeriodicSurface) -> dict:
    return {
        "schema": "surface-v1",
        "name": surface.name,
        "core": {
            "name": surface.core.name,
            "spine_vertices": surface.core.spine_vertices,
            "spine_edges": surface.core.spine_edges,
        },
        "boundary_circles": surface.boundary_circles,
        "ends": [
            {
                "name": end.name,
                "sign": end.sign,
                "period": end.period,
                "frontier_index": end.frontier_index,
                "winding": list(end.winding) if end.winding else None,
                "block": {
                    "name": end.block.name,
                    "spine_vertices": end.block.spine_vertices,
                    "spine_edges": end.block.spine_edges,
                },
                "juncture": {
                    "arcs": end.juncture.arcs,
                    "circles": end.juncture.circles,
                    "labels": list(end.juncture.labels),
                },
            }
            for end in surface.ends
        ],
    }


def _block_from_dict(data: dict) -> Block:
    return Block(data["name"], data["spine_vertices"], data["spine_edges"])


def build_surface(data: dict) -> PeriodicSurface:
    """Build and validate a surface from its surface-v1 description."""

    if data.get("schema") != "surface-v1":
        raise SurfaceError(f"unknown surface schema {data.get('schema')!r}")
    if not data.get("ends"):
        raise SurfaceError("a surface needs at least one end")
    ends = []
    for raw in data["ends"]:
        juncture = Juncture(
            arcs=raw["juncture"].get("arcs", 0),
            circles=raw["juncture"].get("circles", 0),
            labels=tuple(raw["juncture"].get("labels", ())),
        )
        winding = raw.get("winding")
        ends.append(
            End(
                name=raw["name"],
                sign=raw["sign"],
                block=_block_from_dict(raw["block"]),
                juncture=juncture,
                period=raw.get("period", 1),
                frontier_index=raw.get("frontier_index", 0),
                winding=tuple(winding) if winding else None,
            )
        )
    return PeriodicSurface(
        name=data["name"],
        core=_block_from_dict(data["core"]),
        ends=tuple(ends),
        boundary_circles=data.get("boundary_circles", 0),
    )
