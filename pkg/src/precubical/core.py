"""Finite precubical sets with named cubes and explicit face maps.

A precubical set is a graded family of cubes together with face maps:
every n-cube c has faces face(c, i, a) of dimension n - 1, one for each
axis i in 1..n and each end a in {0, 1}, subject to

    face(face(c, j, b), i, a) == face(face(c, i, a), j - 1, b)   for i < j.

Everything here is finite and explicit.  A complex is a table of named
cubes plus a table of faces; construction checks only structure (known
names, index ranges), while `validate` checks the axioms exhaustively and
returns every violation with a witness instead of raising.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping

NAME_RE = re.compile(r"[A-Za-z0-9_.\-]+\Z")

MINUS = "-"
PLUS = "+"
SIDES = (MINUS, PLUS)

FaceKey = tuple[str, int, int]


class PcsError(Exception):
    """Base class for all errors raised by this package."""


class UnknownCubeError(PcsError):
    """A cube name that is not present in the complex."""


class MissingFaceError(PcsError):
    """A face lookup on a cube whose face table has a hole."""


class MorphismError(PcsError):
    """A mapping between complexes that is not a morphism."""


def check_side(side: str) -> str:
    if side not in SIDES:
        raise ValueError(f"side must be '-' or '+', got {side!r}")
    return side


def check_end(alpha: int) -> int:
    if alpha not in (0, 1):
        raise ValueError(f"face end must be 0 or 1, got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class CubeId:
    """A cube reference: name plus dimension."""

    name: str
    dim: int


@dataclass(frozen=True)
class Violation:
    """One defect found by `validate`.

    kind is "missing-face", "dimension-mismatch", or "identity"; cube is the
    offending cube's name; where carries the witnessing indices:
      missing-face:        (i, alpha)
      dimension-mismatch:  (i, alpha, target, expected_dim, actual_dim)
      identity:            (i, j, alpha, beta, via_j_then_i, via_i_then_j)
    """

    kind: str
    cube: str
    where: tuple

    def __str__(self) -> str:
        w = self.where
        if self.kind == "missing-face":
            return f"{self.cube}: missing face ({w[0]}, {_end_str(w[1])})"
        if self.kind == "dimension-mismatch":
            return (
                f"{self.cube}: face ({w[0]}, {_end_str(w[1])}) -> {w[2]} "
                f"has dimension {w[4]}, expected {w[3]}"
            )
        if self.kind == "identity":
            i, j, a, b, lhs, rhs = w
            return (
                f"{self.cube}: identity fails for i={i}, j={j}, "
                f"alpha={_end_str(a)}, beta={_end_str(b)}: "
                f"face({j},{_end_str(b)}) then face({i},{_end_str(a)}) gives {lhs}, "
                f"face({i},{_end_str(a)}) then face({j - 1},{_end_str(b)}) gives {rhs}"
            )
        return f"{self.cube}: {self.kind} {w}"


def _end_str(alpha: int) -> str:
    return MINUS if alpha == 0 else PLUS


class PrecubicalSet:
    """An immutable finite precubical set.

    `dims` maps cube names to dimensions; `faces` maps (cube, axis, end)
    keys to target cube names, with axis in 1..dim(cube) and end in {0, 1}.
    Holes and wrong-dimension targets are representable (so that `validate`
    can report them); unknown names and out-of-range axes are not.
    """

    __slots__ = ("_dims", "_faces", "_grades")

    def __init__(self, dims: Mapping[str, int], faces: Mapping[FaceKey, str]):
        self._dims: dict[str, int] = {}
        for name, d in dims.items():
            if not isinstance(name, str) or not NAME_RE.match(name):
                raise PcsError(f"bad cube name {name!r}")
            if not isinstance(d, int) or d < 0:
                raise PcsError(f"bad dimension {d!r} for cube {name!r}")
            self._dims[name] = d
        self._faces: dict[FaceKey, str] = {}
        for key, target in faces.items():
            c, i, alpha = key
            if c not in self._dims:
                raise UnknownCubeError(f"face on unknown cube {c!r}")
            if target not in self._dims:
                raise UnknownCubeError(f"face of {c!r} targets unknown cube {target!r}")
            check_end(alpha)
            if not 1 <= i <= self._dims[c]:
                raise PcsError(
                    f"face axis {i} out of range 1..{self._dims[c]} on cube {c!r}"
                )
            self._faces[(c, i, alpha)] = target
        grades: dict[int, list[str]] = {}
        for name, d in self._dims.items():
            grades.setdefault(d, []).append(name)
        for names in grades.values():
            names.sort()
        self._grades = grades

    @property
    def dim(self) -> int:
        """Top dimension present; -1 for the empty complex."""
        return max(self._grades, default=-1)

    def __len__(self) -> int:
        return len(self._dims)

    def __contains__(self, name: object) -> bool:
        return name in self._dims

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrecubicalSet):
            return NotImplemented
        return self._dims == other._dims and self._faces == other._faces

    def __hash__(self) -> int:
        return hash((frozenset(self._dims.items()), frozenset(self._faces.items())))

    def __repr__(self) -> str:
        return f"PrecubicalSet({len(self)} cubes, dim {self.dim})"

    def dim_of(self, name: str) -> int:
        try:
            return self._dims[name]
        except KeyError:
            raise UnknownCubeError(f"unknown cube {name!r}") from None

    def cubes(self, dim: int | None = None) -> tuple[CubeId, ...]:
        """All cubes (or those of one dimension), sorted by (dim, name)."""
        if dim is not None:
            return tuple(CubeId(n, dim) for n in self._grades.get(dim, ()))
        out = []
        for d in sorted(self._grades):
            out.extend(CubeId(n, d) for n in self._grades[d])
        return tuple(out)

    def vertices(self) -> tuple[str, ...]:
        return tuple(self._grades.get(0, ()))

    def counts(self) -> dict[int, int]:
        """Number of cubes per dimension."""
        return {d: len(self._grades[d]) for d in sorted(self._grades)}

    def face(self, name: str, i: int, alpha: int) -> str:
        """The (i, alpha) face of a cube; raises if absent."""
        d = self.dim_of(name)
        check_end(alpha)
        if not 1 <= i <= d:
            raise PcsError(f"face axis {i} out of range 1..{d} on cube {name!r}")
        try:
            return self._faces[(name, i, alpha)]
        except KeyError:
            raise MissingFaceError(
                f"cube {name!r} has no face ({i}, {_end_str(alpha)})"
            ) from None

    def face_or_none(self, name: str, i: int, alpha: int) -> str | None:
        return self._faces.get((name, i, alpha))

    def faces_of(self, name: str) -> dict[tuple[int, int], str]:
        """All recorded faces of one cube, keyed by (axis, end)."""
        d = self.dim_of(name)
        out = {}
        for i in range(1, d + 1):
            for alpha in (0, 1):
                t = self._faces.get((name, i, alpha))
                if t is not None:
                    out[(i, alpha)] = t
        return out

    def face_items(self) -> Iterator[tuple[FaceKey, str]]:
        """All face entries, deterministically ordered."""
        keys = sorted(self._faces, key=lambda k: (self._dims[k[0]], k[0], k[1], k[2]))
        for k in keys:
            yield k, self._faces[k]

    def as_tables(self) -> tuple[dict[str, int], dict[FaceKey, str]]:
        """Copies of the underlying (dims, faces) tables."""
        return dict(self._dims), dict(self._faces)


EMPTY = PrecubicalSet({}, {})


def validate(K: PrecubicalSet) -> list[Violation]:
    """Check the precubical axioms; return every violation with a witness.

    Reports, in deterministic order: each missing face, each face whose
    target has the wrong dimension, and each failed instance of the identity
    face(face(c, j, b), i, a) == face(face(c, i, a), j - 1, b) for i < j.
    Identity instances are only checked when all four lookups land, since
    the holes involved are already reported.
    """
    out: list[Violation] = []
    for cube in K.cubes():
        c, n = cube.name, cube.dim
        for i in range(1, n + 1):
            for alpha in (0, 1):
                t = K.face_or_none(c, i, alpha)
                if t is None:
                    out.append(Violation("missing-face", c, (i, alpha)))
                elif K.dim_of(t) != n - 1:
                    out.append(
                        Violation(
                            "dimension-mismatch",
                            c,
                            (i, alpha, t, n - 1, K.dim_of(t)),
                        )
                    )
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for alpha in (0, 1):
                    for beta in (0, 1):
                        lhs = rhs = None
                        t = K.face_or_none(c, j, beta)
                        if t is not None and K.dim_of(t) == n - 1:
                            lhs = K.face_or_none(t, i, alpha)
                        u = K.face_or_none(c, i, alpha)
                        if u is not None and K.dim_of(u) == n - 1:
                            rhs = K.face_or_none(u, j - 1, beta)
                        if lhs is not None and rhs is not None and lhs != rhs:
                            out.append(
                                Violation("identity", c, (i, j, alpha, beta, lhs, rhs))
                            )
    return out


# -- standard cubes ---------------------------------------------------------
#
# Cubes of the standard n-cube are words of length n over {0, 1, x}: an x
# marks a free axis, so the word's dimension is its number of x's.  The
# (i, alpha) face replaces the i-th x (counting from 1) by alpha.  The empty
# word (the unique cube of the standard 0-cube) is named "e".

STAR = "x"
EMPTY_WORD_NAME = "e"


def word_name(word: str) -> str:
    return word if word else EMPTY_WORD_NAME


def word_face(word: str, i: int, alpha: int) -> str:
    """Replace the i-th free axis marker of a cube word by the end alpha."""
    check_end(alpha)
    seen = 0
    for pos, ch in enumerate(word):
        if ch == STAR:
            seen += 1
            if seen == i:
                return word[:pos] + str(alpha) + word[pos + 1 :]
    raise ValueError(f"word {word!r} has no axis {i}")


def _words(n: int) -> list[str]:
    words = [""]
    for _ in range(n):
        words = [w + ch for w in words for ch in ("0", "1", STAR)]
    return words


def standard_cube(n: int) -> PrecubicalSet:
    """The standard n-cube: one top cell, all faces, 3**n cubes in total."""
    if n < 0:
        raise ValueError("dimension must be >= 0")
    dims = {}
    faces = {}
    for w in _words(n):
        d = w.count(STAR)
        dims[word_name(w)] = d
        for i in range(1, d + 1):
            for alpha in (0, 1):
                faces[(word_name(w), i, alpha)] = word_name(word_face(w, i, alpha))
    return PrecubicalSet(dims, faces)


def truncate(K: PrecubicalSet, p: int) -> PrecubicalSet:
    """Discard every cube of dimension above p (and its face entries)."""
    dims, faces = K.as_tables()
    kept = {n: d for n, d in dims.items() if d <= p}
    kept_faces = {k: t for k, t in faces.items() if k[0] in kept}
    return PrecubicalSet(kept, kept_faces)


def boundary_cube(n: int) -> PrecubicalSet:
    """The boundary of the standard n-cube; empty for n = 0."""
    if n < 0:
        raise ValueError("dimension must be >= 0")
    return truncate(standard_cube(n), n - 1)


# -- extremal vertices and states -------------------------------------------


def extremal_vertex(K: PrecubicalSet, name: str, side: str = MINUS) -> str:
    """The initial (side '-') or final (side '+') vertex of a cube.

    Computed by iterating face(-, 1, end); the precubical identities make
    any other descent through faces land on the same vertex.
    """
    check_side(side)
    alpha = 0 if side == MINUS else 1
    while K.dim_of(name) > 0:
        name = K.face(name, 1, alpha)
    return name


def extremal_cubes(K: PrecubicalSet, vertex: str, side: str = MINUS) -> frozenset[str]:
    """All cubes of dimension >= 1 whose extremal vertex on `side` is `vertex`."""
    if K.dim_of(vertex) != 0:
        raise PcsError(f"{vertex!r} is not a vertex")
    out = []
    for cube in K.cubes():
        if cube.dim >= 1 and extremal_vertex(K, cube.name, side) == vertex:
            out.append(cube.name)
    return frozenset(out)


def extremal_partition(K: PrecubicalSet, side: str = MINUS) -> dict[str, frozenset[str]]:
    """Group the positive-dimensional cubes by extremal vertex, in one pass.

    Every vertex appears as a key, possibly with an empty group; the groups
    agree with extremal_cubes(K, v, side) for each v.
    """
    check_side(side)
    groups: dict[str, list[str]] = {v: [] for v in K.vertices()}
    for cube in K.cubes():
        if cube.dim >= 1:
            groups[extremal_vertex(K, cube.name, side)].append(cube.name)
    return {v: frozenset(members) for v, members in groups.items()}


def _states(K: PrecubicalSet, side: str) -> frozenset[str]:
    touched = set()
    for cube in K.cubes():
        if cube.dim >= 1:
            touched.add(extremal_vertex(K, cube.name, side))
    return frozenset(v for v in K.vertices() if v not in touched)


def final_states(K: PrecubicalSet) -> frozenset[str]:
    """Vertices that no positive-dimensional cube starts at."""
    return _states(K, MINUS)


def initial_states(K: PrecubicalSet) -> frozenset[str]:
    """Vertices that no positive-dimensional cube ends at."""
    return _states(K, PLUS)


# -- constructions -----------------------------------------------------------


def time_reverse(K: PrecubicalSet) -> PrecubicalSet:
    """Swap the two ends of every face map.  An involution."""
    dims, faces = K.as_tables()
    rev = {(c, i, 1 - alpha): t for (c, i, alpha), t in faces.items()}
    return PrecubicalSet(dims, rev)


def relabel(K: PrecubicalSet, mapping: Mapping[str, str]) -> PrecubicalSet:
    """Rename cubes.  Names absent from `mapping` are kept; the result must
    not collide."""
    dims, faces = K.as_tables()

    def m(name: str) -> str:
        return mapping.get(name, name)

    new_dims = {}
    for name, d in dims.items():
        new = m(name)
        if new in new_dims:
            raise PcsError(f"relabel collides on {new!r}")
        new_dims[new] = d
    new_faces = {(m(c), i, alpha): m(t) for (c, i, alpha), t in faces.items()}
    return PrecubicalSet(new_dims, new_faces)


def attach_cube(
    K: PrecubicalSet,
    n: int,
    boundary: Mapping[tuple[int, int], str],
    name: str | None = None,
) -> tuple[PrecubicalSet, str]:
    """Glue a fresh n-cube onto K along a boundary assignment.

    `boundary` sends each facet slot (i, alpha), 1 <= i <= n, to an existing
    (n-1)-cube of K.  The assignment must extend to a morphism from the
    boundary of the standard n-cube, i.e. the images of lower faces computed
    through different facets must agree; otherwise MorphismError is raised
    with the first conflict found.  For n = 0 the boundary is empty and the
    result is K plus a disjoint vertex.

    Alternatively `boundary` may name every cube of the boundary of the
    standard n-cube (keys are the proper face words); the facets then drive
    the same construction and every remaining entry is checked against the
    faces it must equal.

    Returns the enlarged complex and the new cube's name (the given `name`,
    or a deterministic fresh one).
    """
    if n < 0:
        raise ValueError("dimension must be >= 0")
    word_assignment = None
    if boundary and all(isinstance(key, str) for key in boundary):
        word_assignment = dict(boundary)
        expected = {w for w in _words(n) if w != STAR * n}
        if set(word_assignment) != expected:
            raise PcsError(
                f"word assignment must cover exactly the {len(expected)} "
                f"proper face words of the standard {n}-cube"
            )
        boundary = {
            (i, alpha): word_assignment[word_face(STAR * n, i, alpha)]
            for i in range(1, n + 1)
            for alpha in (0, 1)
        }
    slots = {(i, alpha) for i in range(1, n + 1) for alpha in (0, 1)}
    if set(boundary) != slots:
        raise PcsError(
            f"boundary assignment must cover exactly the {2 * n} facet slots"
        )
    for (i, alpha), t in boundary.items():
        if K.dim_of(t) != n - 1:
            raise PcsError(
                f"facet ({i}, {_end_str(alpha)}) image {t!r} has dimension "
                f"{K.dim_of(t)}, expected {n - 1}"
            )
    # Propagate the assignment down the face lattice of the standard cube,
    # failing on any disagreement between routes.
    full = STAR * n
    img: dict[str, str] = {}
    frontier: list[str] = []
    for (i, alpha), t in boundary.items():
        w = word_face(full, i, alpha)
        img[w] = t
        frontier.append(w)
    while frontier:
        w = frontier.pop()
        for i in range(1, w.count(STAR) + 1):
            for alpha in (0, 1):
                w2 = word_face(w, i, alpha)
                t2 = K.face(img[w], i, alpha)
                if w2 in img:
                    if img[w2] != t2:
                        raise MorphismError(
                            f"incompatible attachment: face word {w2} receives "
                            f"both {img[w2]!r} and {t2!r}"
                        )
                else:
                    img[w2] = t2
                    frontier.append(w2)
    if word_assignment is not None:
        for w, t in word_assignment.items():
            if img[w] != t:
                raise MorphismError(
                    f"incompatible attachment: word {w} assigned {t!r} but "
                    f"its facet faces give {img[w]!r}"
                )
    if name is None:
        k = 0
        while f"cube{k}" in K:
            k += 1
        name = f"cube{k}"
    elif name in K:
        raise PcsError(f"cube name {name!r} already in use")
    elif not NAME_RE.match(name):
        raise PcsError(f"bad cube name {name!r}")
    dims, faces = K.as_tables()
    dims[name] = n
    for (i, alpha), t in boundary.items():
        faces[(name, i, alpha)] = t
    return PrecubicalSet(dims, faces), name


@dataclass(frozen=True, eq=False)
class PcsMorphism:
    """A dimension- and face-preserving map between precubical sets.

    Validated on construction: `mapping` must cover every source cube,
    preserve dimension, and commute with every face recorded in the source
    (the corresponding target face must exist and match).
    """

    source: PrecubicalSet
    target: PrecubicalSet
    mapping: Mapping[str, str] = field(repr=False)

    def __post_init__(self) -> None:
        for cube in self.source.cubes():
            c = cube.name
            if c not in self.mapping:
                raise MorphismError(f"mapping undefined on {c!r}")
            fc = self.mapping[c]
            if fc not in self.target:
                raise MorphismError(f"{c!r} maps to unknown cube {fc!r}")
            if self.target.dim_of(fc) != cube.dim:
                raise MorphismError(
                    f"{c!r} (dim {cube.dim}) maps to {fc!r} "
                    f"(dim {self.target.dim_of(fc)})"
                )
        for (c, i, alpha), t in self.source.face_items():
            ft = self.target.face_or_none(self.mapping[c], i, alpha)
            if ft is None:
                raise MorphismError(
                    f"target cube {self.mapping[c]!r} lacks face "
                    f"({i}, {_end_str(alpha)}) needed by {c!r}"
                )
            if ft != self.mapping[t]:
                raise MorphismError(
                    f"face ({i}, {_end_str(alpha)}) of {c!r} maps to "
                    f"{self.mapping[t]!r} but face of image is {ft!r}"
                )

    def __call__(self, name: str) -> str:
        if name not in self.mapping:
            raise UnknownCubeError(f"unknown cube {name!r}")
        return self.mapping[name]

    @property
    def is_isomorphism(self) -> bool:
        """True when the mapping is bijective and its inverse is a morphism."""
        if len(self.source) != len(self.target):
            return False
        inv: dict[str, str] = {}
        for c, fc in self.mapping.items():
            if fc in inv:
                return False
            inv[fc] = c
        try:
            PcsMorphism(self.target, self.source, inv)
        except MorphismError:
            return False
        return True
