"""Cubical subdivision: slice every cube into a p x ... x p grid.

A cell of the subdivided standard n-cube picks, per axis, either a unit
interval [a, a+1] of the order-p grid or one of its points.  Faces replace
an interval by its endpoints.  For a general complex, a cell is a pair
(base cube of K, cell of the subdivided standard cube); pairs whose cell
touches the outer boundary of the base cube are identified with pairs over
the base's faces, so the normal form keeps only interior points.  With the
points 0 and p excluded per axis, each base cube of dimension d contributes
exactly (2p - 1)^d named cells.

Subdividing by 1 changes nothing (up to the renaming isomorphism), and
subdividing twice composes: `sub_compose_iso` returns the isomorphism from
the p-fold subdivision of the q-fold subdivision onto the pq-fold one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import CubeId, PcsError, PcsMorphism, PrecubicalSet, standard_cube


@dataclass(frozen=True)
class Interval:
    """The grid interval [a, a+1]."""

    a: int


@dataclass(frozen=True)
class Point:
    """The grid point a."""

    a: int


Entry = Interval | Point


def entry_str(e: Entry) -> str:
    return f"{e.a}-{e.a + 1}" if isinstance(e, Interval) else f"{e.a}"


@dataclass(frozen=True)
class SubCube:
    """One cell of the order-`grid` subdivision of a standard cube: an
    Interval or Point per axis.  Dimension is the number of intervals."""

    entries: tuple[Entry, ...]
    grid: int

    def __post_init__(self) -> None:
        if self.grid < 1:
            raise PcsError(f"grid order must be >= 1, got {self.grid}")
        for e in self.entries:
            if isinstance(e, Interval):
                if not 0 <= e.a < self.grid:
                    raise PcsError(f"interval {e.a} out of range for grid {self.grid}")
            elif isinstance(e, Point):
                if not 0 <= e.a <= self.grid:
                    raise PcsError(f"point {e.a} out of range for grid {self.grid}")
            else:
                raise PcsError(f"bad cell entry {e!r}")

    @property
    def dim(self) -> int:
        return sum(1 for e in self.entries if isinstance(e, Interval))

    def face(self, j: int, alpha: int) -> "SubCube":
        """Replace the j-th interval (1-based) by its end alpha."""
        seen = 0
        for pos, e in enumerate(self.entries):
            if isinstance(e, Interval):
                seen += 1
                if seen == j:
                    new = self.entries[:pos] + (Point(e.a + alpha),) + self.entries[pos + 1 :]
                    return SubCube(new, self.grid)
        raise PcsError(f"cell has no axis {j}")

    def __str__(self) -> str:
        return ".".join(entry_str(e) for e in self.entries) if self.entries else "e"


@dataclass(frozen=True)
class SubPair:
    """A cell of the subdivided complex: a base cube of the original complex
    together with a cell of its subdivided standard cube.  Normal form: the
    cell has one entry per base axis and no boundary points (0 or grid)."""

    base: str
    cell: SubCube

    def name(self) -> str:
        if not self.cell.entries:
            return self.base
        return self.base + "." + str(self.cell)


def _is_normal(cell: SubCube) -> bool:
    return all(
        isinstance(e, Interval) or 0 < e.a < cell.grid for e in cell.entries
    )


def normalize_pair(K: PrecubicalSet, base: str, cell: SubCube) -> SubPair:
    """Rewrite a pair to normal form: each boundary point of the cell pairs
    the base with the face of the original cube on that side.

    The result does not depend on the rewriting order (the precubical
    identities of K make the deletions commute).
    """
    if len(cell.entries) != K.dim_of(base):
        raise PcsError(
            f"cell has {len(cell.entries)} entries for base {base!r} "
            f"of dimension {K.dim_of(base)}"
        )
    entries = list(cell.entries)
    while True:
        hit = next(
            (
                pos
                for pos, e in enumerate(entries)
                if isinstance(e, Point) and e.a in (0, cell.grid)
            ),
            None,
        )
        if hit is None:
            return SubPair(base, SubCube(tuple(entries), cell.grid))
        alpha = 0 if entries[hit].a == 0 else 1
        base = K.face(base, hit + 1, alpha)
        del entries[hit]


class Subdivision:
    """The result of subdividing: the new complex plus the pair decomposition
    of its cells.

    `pairs` maps each cell name of `complex` to its SubPair; `names` is the
    inverse.  Cell names are "<base>.<e1>.<e2>..." with intervals rendered
    "a-b" and points "a"; cells over a base vertex keep the bare base name,
    so the original vertices keep their names.
    """

    def __init__(self, source: PrecubicalSet, order: int, complex: PrecubicalSet,
                 pairs: dict[str, SubPair]):
        self.source = source
        self.order = order
        self.complex = complex
        self.pairs = pairs
        self.names = {pair: name for name, pair in pairs.items()}

    def __repr__(self) -> str:
        return f"Subdivision(order {self.order}, {len(self.complex)} cells)"


def _interior_entries(p: int) -> list[Entry]:
    return [Interval(a) for a in range(p)] + [Point(a) for a in range(1, p)]


def subdivide(K: PrecubicalSet, p: int) -> Subdivision:
    """Slice every cube of K into an order-p grid.

    K must be a valid precubical set.  Raises PcsError if the generated
    cell names collide with each other (possible only when cube names of K
    already look like subdivision names).
    """
    if p < 1:
        raise PcsError(f"subdivision order must be >= 1, got {p}")
    if p == 1:
        # The order-1 grid has a single interval per axis, so the complex is
        # unchanged; keep the original object and names instead of renaming
        # every cube.
        pairs = {
            c.name: SubPair(c.name, SubCube((Interval(0),) * c.dim, 1))
            for c in K.cubes()
        }
        return Subdivision(K, 1, K, pairs)
    pairs = {}
    per_axis = _interior_entries(p)
    for cube in K.cubes():
        for combo in itertools.product(per_axis, repeat=cube.dim):
            pair = SubPair(cube.name, SubCube(combo, p))
            name = pair.name()
            if name in pairs:
                raise PcsError(
                    f"subdivision name collision on {name!r}; rename the "
                    f"source cubes"
                )
            pairs[name] = pair
    names = {pair: name for name, pair in pairs.items()}
    dims = {name: pair.cell.dim for name, pair in pairs.items()}
    faces = {}
    for name, pair in pairs.items():
        for j in range(1, pair.cell.dim + 1):
            for alpha in (0, 1):
                raw = pair.cell.face(j, alpha)
                target = (
                    SubPair(pair.base, raw)
                    if _is_normal(raw)
                    else normalize_pair(K, pair.base, raw)
                )
                faces[(name, j, alpha)] = names[target]
    return Subdivision(K, p, PrecubicalSet(dims, faces), pairs)


def sub_standard(p: int, n: int) -> PrecubicalSet:
    """The subdivided standard n-cube, built directly on grid cells."""
    if p < 1:
        raise PcsError(f"subdivision order must be >= 1, got {p}")
    if n < 0:
        raise ValueError("dimension must be >= 0")
    per_axis = [Interval(a) for a in range(p)] + [Point(a) for a in range(p + 1)]
    dims = {}
    faces = {}
    cells = [
        SubCube(combo, p) for combo in itertools.product(per_axis, repeat=n)
    ]
    for cell in cells:
        dims[str(cell)] = cell.dim
    for cell in cells:
        for j in range(1, cell.dim + 1):
            for alpha in (0, 1):
                faces[(str(cell), j, alpha)] = str(cell.face(j, alpha))
    return PrecubicalSet(dims, faces)


def vertex_coordinates(K: PrecubicalSet, p: int, vertex: str) -> tuple[CubeId, tuple[Fraction, ...]]:
    """Locate a vertex of subdivide(K, p) inside its base cube: returns the
    base cube of K and exact coordinates in [0, 1]^dim.

    Original vertices of K map to themselves with empty coordinates.
    """
    sub = subdivide(K, p)
    pair = sub.pairs.get(vertex)
    if pair is None:
        raise PcsError(f"unknown cell {vertex!r}")
    if pair.cell.dim != 0:
        raise PcsError(f"{vertex!r} is not a vertex of the subdivision")
    base = CubeId(pair.base, K.dim_of(pair.base))
    return base, tuple(Fraction(e.a, p) for e in pair.cell.entries)


def sub_compose_iso(K: PrecubicalSet, p: int, q: int) -> PcsMorphism:
    """The isomorphism Sub_p(Sub_q(K)) -> Sub_pq(K).

    A cell of the left side refines an order-q cell by an order-p choice per
    axis; rescaling both into the order-pq grid (interval b + interval a at
    position b*p + a, and so on) lands on a normal-form cell with the same
    original base.
    """
    outer = subdivide(K, q)
    inner = subdivide(outer.complex, p)
    flat = subdivide(K, p * q)
    mapping = {}
    for name, pr in inner.pairs.items():
        base_pair = outer.pairs[pr.base]
        refined = iter(pr.cell.entries)
        entries: list[Entry] = []
        for e in base_pair.cell.entries:
            if isinstance(e, Interval):
                u = next(refined)
                if isinstance(u, Interval):
                    entries.append(Interval(e.a * p + u.a))
                else:
                    entries.append(Point(e.a * p + u.a))
            else:
                entries.append(Point(e.a * p))
        target = SubPair(base_pair.base, SubCube(tuple(entries), p * q))
        mapping[name] = flat.names[target]
    return PcsMorphism(inner.complex, flat.complex, mapping)
