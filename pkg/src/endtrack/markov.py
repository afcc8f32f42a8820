"""Rectangle dynamics: transition matrices and symbolic orbits.

A :class:`RectanglePresentation` records how two bands overlap in finitely
many rectangles, how the map carries one band onto the other, and where the
band edges land.  Everything downstream — crossing matrix, invariant
transverse measure, periodic word counts — is derived from that data by
exact integer/rational arithmetic.

Presentations are catalog data, not derived objects: the crossing
itineraries are recorded as read off a drawing and validated here against
band geometry (a band crossing a row of rectangles can only fold, never
skip) and against the designated-point and symmetry structure.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Sequence, Tuple

from . import exact

EDGE_LETTERS = ("alpha", "beta", "gamma", "delta")

# edge pieces that embed into the other band's long edges; the first two lie
# on the negative lamination, the last two on the positive one
_SMALL_EDGES = ("alpha+", "beta+", "gamma-", "delta-")
_HOST_EDGES = {
    "alpha+": ("alpha-", "beta-"),
    "beta+": ("alpha-", "beta-"),
    "gamma-": ("gamma+", "delta+"),
    "delta-": ("gamma+", "delta+"),
}
_FLIP_EMBEDDING = {
    "alpha+": "beta-",
    "beta+": "alpha-",
    "gamma-": "delta+",
    "delta-": "gamma+",
}


class MarkovError(ValueError):
    """Raised for structurally invalid presentations or matrices."""


@dataclass(frozen=True)
class MarkedPoint:
    """A designated periodic point, located by its symbolic word.

    ``chains`` names the (negative-side, positive-side) edge letters whose
    nested images pin the point; empty when the text makes no such claim.
    """

    name: str
    word: Tuple[str, ...]
    chains: Tuple[str, ...] = ()
    note: str = ""


@dataclass(frozen=True)
class RectanglePresentation:
    """Two overlapping bands, their common rectangles, and the band map.

    ``itineraries`` lists, for each rectangle, the rectangles its image
    crosses, in order along the image band and read against the drawn
    (unswapped) positions.  For ``symmetry == "flip"`` the map relabels
    rectangles by ``swap``; the honest crossing matrix composes that in.
    """

    rectangles: Tuple[str, ...]
    layout_neg: Tuple[Tuple[str, int], ...]
    layout_pos: Tuple[Tuple[str, int], ...]
    connectors_neg: Tuple[str, ...]
    connectors_pos: Tuple[str, ...]
    edge_map: Tuple[Tuple[str, str, int], ...]
    edge_embedding: Tuple[Tuple[str, str], ...]
    itineraries: Tuple[Tuple[str, Tuple[str, ...]], ...]
    symmetry: str = "none"
    swap: Tuple[Tuple[str, str], ...] = ()
    points: Tuple[MarkedPoint, ...] = ()

    def __post_init__(self):
        if not self.rectangles:
            raise MarkovError("presentation has no rectangles: the bands do not intersect")
        if len(set(self.rectangles)) != len(self.rectangles):
            raise MarkovError("duplicate rectangle names")
        names = set(self.rectangles)
        for label, layout in (("layout_neg", self.layout_neg), ("layout_pos", self.layout_pos)):
            seen = [r for r, _ in layout]
            if sorted(seen) != sorted(self.rectangles):
                raise MarkovError(f"{label} is not a permutation of the rectangle set")
            if any(o not in (1, -1) for _, o in layout):
                raise MarkovError(f"{label} has an orientation flag outside {{1, -1}}")
        if sorted(r for r, _ in self.itineraries) != sorted(self.rectangles):
            raise MarkovError("itineraries must cover each rectangle exactly once")
        for r, path in self.itineraries:
            bad = [s for s in path if s not in names]
            if bad:
                raise MarkovError(f"itinerary of {r} references unknown rectangles {bad}")
        if self.symmetry not in ("none", "flip"):
            raise MarkovError(f"unknown symmetry {self.symmetry!r}")
        if self.symmetry == "flip":
            m = dict(self.swap)
            if sorted(m) != sorted(self.rectangles) or sorted(m.values()) != sorted(self.rectangles):
                raise MarkovError("flip swap must permute the rectangle set")
            if any(m[m[a]] != a for a in m):
                raise MarkovError("flip swap must be an involution")
        elif self.swap:
            raise MarkovError("swap data requires symmetry == 'flip'")

    def index(self, name: str) -> int:
        return self.rectangles.index(name)

    def itinerary(self, name: str) -> Tuple[str, ...]:
        return dict(self.itineraries)[name]

    def resolve(self, name: str) -> str:
        """Drawn rectangle label -> label after the symmetry relabeling."""
        if self.symmetry == "flip":
            return dict(self.swap)[name]
        return name


def markov_rectangles(pres: RectanglePresentation) -> List[str]:
    """The ordered common rectangles; emptiness is rejected at construction."""
    return list(pres.rectangles)


@dataclass(frozen=True)
class TransitionMatrix:
    rectangles: Tuple[str, ...]
    entries: Tuple[Tuple[int, ...], ...]

    def power(self, k: int) -> Tuple[Tuple[int, ...], ...]:
        if k < 1:
            raise MarkovError("power expects k >= 1")
        mat = exact.mat_pow(exact.to_matrix(self.entries), k)
        return tuple(tuple(int(x) for x in row) for row in mat)

    def trace(self, k: int = 1) -> int:
        p = self.power(k)
        return sum(p[i][i] for i in range(len(p)))

    def __getitem__(self, pair):
        i, j = pair
        return self.entries[i][j]


def _band_positions(pres: RectanglePresentation, path: Sequence[str]) -> List[int]:
    order = {r: i for i, (r, _) in enumerate(pres.layout_pos)}
    return [order[r] for r in path]


def _valid_band_trace(positions: Sequence[int]) -> bool:
    """Can a single band crossing the rectangle row realise these positions?

    The image band sweeps the row monotonically, reversing only by folding,
    and a fold re-crosses the rectangle it just left: steps are +1/-1 runs
    separated by single 0 steps, with the run direction alternating.
    """
    steps = [b - a for a, b in zip(positions, positions[1:])]
    direction = 0
    previous_zero = False
    for s in steps:
        if s == 0:
            if previous_zero:
                return False
            previous_zero = True
            continue
        if s not in (1, -1):
            return False
        if previous_zero:
            if direction != 0 and s != -direction:
                return False
        elif direction != 0 and s != direction:
            return False
        direction = s
        previous_zero = False
    return True


def transition_matrix(pres: RectanglePresentation) -> TransitionMatrix:
    """Honest crossing counts: entry (i, j) = times the image of rectangle i
    crosses rectangle j, with any flip relabeling already composed in."""
    k = len(pres.rectangles)
    index = {r: i for i, r in enumerate(pres.rectangles)}
    rows = [[0] * k for _ in range(k)]
    for source, path in pres.itineraries:
        if path and not _valid_band_trace(_band_positions(pres, path)):
            raise MarkovError(
                f"itinerary of {source} is not a fold sequence in the layout order: {path}"
            )
        for drawn in path:
            rows[index[source]][index[pres.resolve(drawn)]] += 1
    return TransitionMatrix(pres.rectangles, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class InvariantMeasure:
    eigenvalue: Fraction
    vector: Tuple[Fraction, ...]
    exact: bool
    irreducible: bool


def perron(matrix: TransitionMatrix) -> InvariantMeasure:
    """Dominant eigenpair of the crossing matrix, sum-normalised and exact
    whenever the eigenvalue is rational (it is an integer for every catalog
    presentation)."""
    data = exact.perron(matrix.entries)
    return InvariantMeasure(
        eigenvalue=data["value"],
        vector=tuple(data["vector"]),
        exact=bool(data["exact"]),
        irreducible=bool(data["irreducible"]),
    )


def measure_scaling(pres: RectanglePresentation, n: int):
    """Transverse measure of the n-th image band: the eigenvalue to the -n.

    Exact Fraction for rational eigenvalues; otherwise a certified
    (lo, hi) interval around the same power.
    """
    m = perron(transition_matrix(pres))
    if m.exact:
        return m.eigenvalue ** (-n)
    tol = Fraction(1, 10**12)
    lo, hi = m.eigenvalue - tol, m.eigenvalue + tol
    if lo <= 0:
        raise MarkovError("certified interval does not bound the eigenvalue away from zero")
    bounds = sorted((lo ** (-n), hi ** (-n)))
    return (bounds[0], bounds[1])


def apply_symmetry(pres: RectanglePresentation, word: Sequence[str]) -> Tuple[str, ...]:
    """Relabel a symbolic word by the presentation's symmetry (an involution)."""
    if pres.symmetry == "flip":
        m = dict(pres.swap)
        return tuple(m[w] for w in word)
    return tuple(word)


def admissible(matrix: TransitionMatrix, word: Sequence[str]) -> bool:
    idx = {r: i for i, r in enumerate(matrix.rectangles)}
    if any(w not in idx for w in word):
        return False
    k = len(word)
    return all(matrix.entries[idx[word[i]]][idx[word[(i + 1) % k]]] >= 1 for i in range(k))


def periodic_points(pres: RectanglePresentation, period: int) -> Dict[str, object]:
    """Period-``period`` symbolic data for the rectangle dynamics.

    ``count`` is the trace of the matrix power (closed edge paths, so parallel
    crossings count separately); ``words`` lists the admissible vertex words
    with their edge multiplicities; ``points`` reports which designated
    points are realised at this period.
    """
    if period < 1:
        raise MarkovError("period must be a positive integer")
    tm = transition_matrix(pres)
    idx = {r: i for i, r in enumerate(tm.rectangles)}
    words = []
    for combo in product(tm.rectangles, repeat=period):
        mult = 1
        for i in range(period):
            mult *= tm.entries[idx[combo[i]]][idx[combo[(i + 1) % period]]]
            if mult == 0:
                break
        if mult:
            words.append((combo, mult))
    realised = {}
    for pt in pres.points:
        fits = period % len(pt.word) == 0
        repeated = pt.word * (period // len(pt.word)) if fits else ()
        realised[pt.name] = bool(fits and admissible(tm, repeated))
    return {
        "count": tm.trace(period),
        "words": tuple(sorted(words)),
        "points": realised,
    }


def reconstruct_check(pres: RectanglePresentation) -> Tuple[bool, Tuple[str, ...]]:
    """Do the edge data and layouts determine a consistent band map?

    Verifies that the four edge correspondences are a bijection, that each
    small edge lands on a long edge of the other band on the same
    lamination side, that connector counts fill the gaps, and that the
    landing pattern matches the symmetry: under a flip the two edge chains
    must interchange, while a designated fixed point forces its own chains
    to close up.  Diagnostics name the first violated relation.
    """
    diags: List[str] = []
    sources = [s for s, _, _ in pres.edge_map]
    targets = [t for _, t, _ in pres.edge_map]
    if sorted(sources) != sorted(EDGE_LETTERS) or sorted(targets) != sorted(EDGE_LETTERS):
        diags.append("edge_map is not a bijection on the four edge labels")
    if any(o not in (1, -1) for _, _, o in pres.edge_map):
        diags.append("edge_map orientation flags must be +1 or -1")
    emb = dict(pres.edge_embedding)
    if sorted(emb) != sorted(_SMALL_EDGES):
        diags.append(f"edge_embedding must place exactly {_SMALL_EDGES}")
        return (False, tuple(diags))
    for small, host in emb.items():
        if host not in _HOST_EDGES[small]:
            diags.append(f"{small} lies on {host}, which is on the wrong lamination side")
    k = len(pres.rectangles)
    for label, conn in (("negative", pres.connectors_neg), ("positive", pres.connectors_pos)):
        if len(conn) != k - 1:
            diags.append(
                f"{label} band needs {k - 1} connectors between {k} rectangles, got {len(conn)}"
            )
    if pres.symmetry == "flip":
        for small, host in _FLIP_EMBEDDING.items():
            if emb[small] != host:
                diags.append(f"{small} lies on {emb[small]}, expected {host} under the end swap")
    else:
        for pt in pres.points:
            if len(pt.chains) != 2 or len(pt.word) != 1:
                continue
            neg_letter, pos_letter = pt.chains
            want = f"{neg_letter}-"
            got = emb.get(f"{neg_letter}+")
            if got != want:
                diags.append(f"{neg_letter}+ lies on {got}, expected {want}")
            want = f"{pos_letter}+"
            got = emb.get(f"{pos_letter}-")
            if got != want:
                diags.append(f"{pos_letter}- lies on {got}, expected {want}")
    return (not diags, tuple(diags))


def presentation_to_dict(pres: RectanglePresentation) -> Dict[str, object]:
    return {
        "schema": "pres-v1",
        "rectangles": list(pres.rectangles),
        "layout_neg": [[r, o] for r, o in pres.layout_neg],
        "layout_pos": [[r, o] for r, o in pres.layout_pos],
        "connectors": {"neg": list(pres.connectors_neg), "pos": list(pres.connectors_pos)},
        "edge_map": [[a, b, o] for a, b, o in pres.edge_map],
        "edge_embedding": {small: host for small, host in pres.edge_embedding},
        "itineraries": {r: list(path) for r, path in pres.itineraries},
        "symmetry": pres.symmetry,
        "swap": {a: b for a, b in pres.swap},
        "points": [
            {"name": p.name, "word": list(p.word), "chains": list(p.chains), "note": p.note}
            for p in pres.points
        ],
    }


def build_presentation(data: Dict[str, object]) -> RectanglePresentation:
    if data.get("schema") != "pres-v1":
        raise MarkovError(f"unsupported presentation schema {data.get('schema')!r}")
    conn = data.get("connectors", {})
    return RectanglePresentation(
        rectangles=tuple(data["rectangles"]),
        layout_neg=tuple((r, int(o)) for r, o in data["layout_neg"]),
        layout_pos=tuple((r, int(o)) for r, o in data["layout_pos"]),
        connectors_neg=tuple(conn.get("neg", ())),
        connectors_pos=tuple(conn.get("pos", ())),
        edge_map=tuple((a, b, int(o)) for a, b, o in data["edge_map"]),
        edge_embedding=tuple(sorted(data["edge_embedding"].items())),
        itineraries=tuple(sorted((r, tuple(path)) for r, path in data["itineraries"].items())),
        symmetry=data.get("symmetry", "none"),
        swap=tuple(sorted(data.get("swap", {}).items())),
        points=tuple(
            MarkedPoint(
                name=p["name"],
                word=tuple(p["word"]),
                chains=tuple(p.get("chains", ())),
                note=p.get("note", ""),
            )
            for p in data.get("points", ())
        ),
    )
