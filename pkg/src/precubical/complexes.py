"""Per-vertex branching and merging complexes of a precubical set.

For a vertex v, the cubes of dimension >= 1 that start at v assemble into a
semi-simplicial set: an (k+1)-cube starting at v becomes a k-simplex whose
i-th face (0 <= i <= k) is the start face along axis i+1.  The precubical
identities make this well defined.  The merging complex is the same
construction on the time-reversed complex, so it collects the cubes that
finish at v.

The components of these complexes are what branching/merging homology sees
in low degrees, so `pi0_components` computes them directly on the cube data
with a union-find, independent of any chain-complex machinery.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import (
    MINUS,
    NAME_RE,
    PLUS,
    PcsError,
    PrecubicalSet,
    check_side,
    extremal_cubes,
    extremal_partition,
    standard_cube,
    time_reverse,
)


class UnionFind:
    """Disjoint sets over hashable items, with path compression."""

    def __init__(self, items: Iterable = ()):
        self._parent: dict = {}
        self.num_components = 0
        for x in items:
            self.add(x)

    def add(self, x) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self.num_components += 1

    def find(self, x):
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self._parent[ry] = rx
        self.num_components -= 1
        return True

    def components(self) -> list[frozenset]:
        classes: dict = {}
        for x in self._parent:
            classes.setdefault(self.find(x), []).append(x)
        return sorted(
            (frozenset(c) for c in classes.values()), key=lambda c: min(c)
        )


@dataclass(frozen=True)
class SimplexId:
    name: str
    dim: int


class SemiSimplicialSet:
    """A finite semi-simplicial set with named simplices.

    `dims` maps names to dimensions; `faces` maps (simplex, i) to the i-th
    face, 0 <= i <= dim.  Unlike PrecubicalSet, whose validator reports
    defects (users author those files by hand), instances here are built by
    library code, so the constructor simply refuses malformed data: every
    face must be present and the identities

        face(face(s, j), i) == face(face(s, i), j - 1)   for i < j

    must hold exhaustively.
    """

    __slots__ = ("_dims", "_faces", "_grades")

    def __init__(self, dims: Mapping[str, int], faces: Mapping[tuple[str, int], str]):
        self._dims = dict(dims)
        for name, d in self._dims.items():
            if not isinstance(name, str) or not NAME_RE.match(name):
                raise PcsError(f"bad simplex name {name!r}")
            if not isinstance(d, int) or d < 0:
                raise PcsError(f"bad dimension {d!r} for simplex {name!r}")
        self._faces = dict(faces)
        for (s, i), t in self._faces.items():
            if s not in self._dims or t not in self._dims:
                raise PcsError(f"face ({s!r}, {i}) involves unknown simplices")
            if not 0 <= i <= self._dims[s] or self._dims[s] == 0:
                raise PcsError(f"face index {i} out of range on {s!r}")
            if self._dims[t] != self._dims[s] - 1:
                raise PcsError(f"face ({s!r}, {i}) drops to wrong dimension")
        for s, d in self._dims.items():
            for i in range(d + 1):
                if d >= 1 and (s, i) not in self._faces:
                    raise PcsError(f"simplex {s!r} lacks face {i}")
        for s, d in self._dims.items():
            for j in range(d + 1):
                for i in range(j):
                    if d < 1:
                        continue
                    lhs = self._faces.get((self._faces[(s, j)], i))
                    rhs = self._faces.get((self._faces[(s, i)], j - 1))
                    if lhs != rhs:
                        raise PcsError(
                            f"simplicial identity fails on {s!r} at i={i}, j={j}"
                        )
        grades: dict[int, list[str]] = {}
        for name, d in self._dims.items():
            grades.setdefault(d, []).append(name)
        for names in grades.values():
            names.sort()
        self._grades = grades

    @property
    def dim(self) -> int:
        return max(self._grades, default=-1)

    def __len__(self) -> int:
        return len(self._dims)

    def __contains__(self, name: object) -> bool:
        return name in self._dims

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemiSimplicialSet):
            return NotImplemented
        return self._dims == other._dims and self._faces == other._faces

    def __hash__(self) -> int:
        return hash((frozenset(self._dims.items()), frozenset(self._faces.items())))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({len(self)} simplices, dim {self.dim})"

    def dim_of(self, name: str) -> int:
        try:
            return self._dims[name]
        except KeyError:
            raise PcsError(f"unknown simplex {name!r}") from None

    def simplices(self, dim: int | None = None) -> tuple[SimplexId, ...]:
        if dim is not None:
            return tuple(SimplexId(n, dim) for n in self._grades.get(dim, ()))
        out = []
        for d in sorted(self._grades):
            out.extend(SimplexId(n, d) for n in self._grades[d])
        return tuple(out)

    def counts(self) -> dict[int, int]:
        return {d: len(self._grades[d]) for d in sorted(self._grades)}

    def face(self, name: str, i: int) -> str:
        d = self.dim_of(name)
        if not 0 <= i <= d or d == 0:
            raise PcsError(f"face index {i} out of range on {name!r}")
        return self._faces[(name, i)]

    def components(self) -> tuple[frozenset[str], ...]:
        """Connected classes of the simplices, via union-find on the faces."""
        uf = UnionFind(self._dims)
        for (s, _), t in self._faces.items():
            uf.union(s, t)
        return tuple(uf.components())


class BranchingComplex(SemiSimplicialSet):
    """The branching (side '-') or merging (side '+') complex at one vertex."""

    __slots__ = ("vertex", "side")

    def __init__(self, dims, faces, vertex: str, side: str):
        super().__init__(dims, faces)
        self.vertex = vertex
        self.side = side

    def __repr__(self) -> str:
        kind = "branching" if self.side == MINUS else "merging"
        return f"BranchingComplex({kind} at {self.vertex!r}, {len(self)} simplices)"


def _assemble_at(R: PrecubicalSet, vertex: str, side: str,
                 members: frozenset[str]) -> BranchingComplex:
    dims = {c: R.dim_of(c) - 1 for c in members}
    faces = {}
    for c in members:
        m = R.dim_of(c)
        if m >= 2:
            for i in range(m):
                faces[(c, i)] = R.face(c, i + 1, 0)
    return BranchingComplex(dims, faces, vertex, side)


def branching_complex(K: PrecubicalSet, vertex: str, side: str = MINUS) -> BranchingComplex:
    """The complex of cubes branching out of (or merging into) a vertex.

    Simplex names are the cube names they come from.  K must be a valid
    precubical set; holes surface as MissingFaceError.
    """
    check_side(side)
    if K.dim_of(vertex) != 0:
        raise PcsError(f"{vertex!r} is not a vertex")
    R = time_reverse(K) if side == PLUS else K
    members = extremal_cubes(R, vertex, MINUS)
    return _assemble_at(R, vertex, side, members)


def assemble_all(K: PrecubicalSet, side: str = MINUS) -> dict[str, BranchingComplex]:
    """The branching (or merging) complex at every vertex, possibly empty.

    One pass groups the cubes by extremal vertex, so this is the cheap way
    to look at every vertex of a large complex.
    """
    check_side(side)
    R = time_reverse(K) if side == PLUS else K
    return {
        v: _assemble_at(R, v, side, members)
        for v, members in extremal_partition(R, MINUS).items()
    }


def _pi0_of_members(R: PrecubicalSet, members: frozenset[str]) -> tuple[frozenset[str], ...]:
    uf = UnionFind(members)
    for c in members:
        if R.dim_of(c) >= 2:
            for i in range(1, R.dim_of(c) + 1):
                uf.union(c, R.face(c, i, 0))
    return tuple(uf.components())


def pi0_components(K: PrecubicalSet, vertex: str, side: str = MINUS) -> tuple[frozenset[str], ...]:
    """Partition the cubes branching out of (merging into) a vertex into
    connected classes.

    Works directly on the cube data with a union-find, joining each cube of
    dimension >= 2 with its start faces (finish faces on side '+'); this
    stays independent of the chain-complex route to the same numbers.
    """
    check_side(side)
    R = time_reverse(K) if side == PLUS else K
    members = extremal_cubes(R, vertex, MINUS)
    return _pi0_of_members(R, members)


def nonempty_index(n: int, side: str = MINUS) -> frozenset[str]:
    """Vertices of the standard n-cube with a nonempty branching complex.

    Every vertex except the top one branches (except the bottom one, for
    merging); the 0-cube has no branching at all.  Returned as vertex names
    of standard_cube(n).
    """
    check_side(side)
    if n < 0:
        raise ValueError("dimension must be >= 0")
    if n == 0:
        return frozenset()
    omit = ("1" if side == MINUS else "0") * n
    return frozenset(
        v.name for v in standard_cube(n).cubes(0) if v.name != omit
    )
