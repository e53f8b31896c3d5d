import itertools
import random
from fractions import Fraction
from math import comb

import pytest

from corpus import hollow_cube, hollow_square, l_shape
from precubical.complexes import branching_complex
from precubical.core import (
    CubeId,
    PcsError,
    PcsMorphism,
    PrecubicalSet,
    boundary_cube,
    standard_cube,
    time_reverse,
    validate,
)
from precubical.homology import branching_homology, graded_iso
from precubical.subdivision import (
    Interval,
    Point,
    SubCube,
    SubPair,
    normalize_pair,
    sub_compose_iso,
    sub_standard,
    subdivide,
    vertex_coordinates,
)


def test_subcube_basics():
    cell = SubCube((Interval(0), Point(1), Interval(2)), 3)
    assert cell.dim == 2
    assert str(cell) == "0-1.1.2-3"
    assert cell.face(1, 1) == SubCube((Point(1), Point(1), Interval(2)), 3)
    assert cell.face(2, 0) == SubCube((Interval(0), Point(1), Point(2)), 3)
    assert str(SubCube((), 2)) == "e"
    with pytest.raises(PcsError):
        cell.face(3, 0)
    with pytest.raises(PcsError):
        SubCube((Interval(3),), 3)
    with pytest.raises(PcsError):
        SubCube((Point(4),), 3)


def test_sub_standard_counts():
    for n in range(5):
        for p in range(1, 4):
            S = sub_standard(p, n)
            got = S.counts()
            for k in range(n + 1):
                assert got.get(k, 0) == comb(n, k) * p**k * (p + 1) ** (n - k)
            assert not validate(S)


def test_sub_standard_small():
    S = sub_standard(2, 1)
    assert S.counts() == {0: 3, 1: 2}
    assert S.face("0-1", 1, 1) == "1"
    assert S.face("1-2", 1, 0) == "1"


def test_subdivide_matches_sub_standard():
    # Once boundary cells are rewritten onto the cube's faces, the direct
    # grid construction and the pair construction agree cell by cell.
    for n in range(4):
        for p in (2, 3):
            K = standard_cube(n)
            sub = subdivide(K, p)
            S = sub_standard(p, n)
            full = "x" * n if n else "e"
            mapping = {}
            for combo in itertools.product(
                [Interval(a) for a in range(p)] + [Point(a) for a in range(p + 1)],
                repeat=n,
            ):
                cell = SubCube(combo, p)
                pair = normalize_pair(K, full, cell)
                mapping[str(cell)] = sub.names[pair]
            iso = PcsMorphism(S, sub.complex, mapping)
            assert iso.is_isomorphism


def test_subdivide_order_one_is_identity():
    for K in (standard_cube(2), hollow_square(), l_shape()):
        sub = subdivide(K, 1)
        assert sub.complex is K
        assert set(sub.pairs) == {c.name for c in K.cubes()}


def test_subdivide_total_counts():
    for K in (hollow_square(), l_shape(), hollow_cube()):
        for p in (2, 3):
            sub = subdivide(K, p)
            expected = sum((2 * p - 1) ** c.dim for c in K.cubes())
            assert len(sub.complex) == expected
            assert not validate(sub.complex)


def test_subdivide_keeps_original_vertices():
    K = l_shape()
    for p in (2, 3, 4):
        L = subdivide(K, p).complex
        for v in K.vertices():
            assert v in L and L.dim_of(v) == 0


def test_subdivided_edge_frozen():
    L = subdivide(standard_cube(1), 2).complex
    assert L.counts() == {0: 3, 1: 2}
    assert L.face("x.0-1", 1, 0) == "0"
    assert L.face("x.0-1", 1, 1) == "x.1"
    assert L.face("x.1-2", 1, 0) == "x.1"
    assert L.face("x.1-2", 1, 1) == "1"


def test_normalize_pair_frozen():
    K = standard_cube(2)
    pair = normalize_pair(K, "xx", SubCube((Point(0), Point(2)), 2))
    assert pair == SubPair("01", SubCube((), 2))
    pair = normalize_pair(K, "xx", SubCube((Interval(1), Point(2)), 2))
    assert pair == SubPair("x1", SubCube((Interval(1),), 2))
    pair = normalize_pair(K, "xx", SubCube((Point(1), Interval(0)), 2))
    assert pair == SubPair("xx", SubCube((Point(1), Interval(0)), 2))


def _all_reductions(K, base, entries, grid):
    hits = [
        pos
        for pos, e in enumerate(entries)
        if isinstance(e, Point) and e.a in (0, grid)
    ]
    if not hits:
        return {(base, tuple(entries))}
    out = set()
    for pos in hits:
        alpha = 0 if entries[pos].a == 0 else 1
        out |= _all_reductions(
            K,
            K.face(base, pos + 1, alpha),
            entries[:pos] + entries[pos + 1 :],
            grid,
        )
    return out


def test_normalize_pair_confluent():
    # Boundary entries may be rewritten in any order; every order must end
    # on the same pair.
    for n, p in ((2, 2), (2, 3), (3, 2)):
        K = standard_cube(n)
        full = "x" * n
        per_axis = [Interval(a) for a in range(p)] + [Point(a) for a in range(p + 1)]
        for combo in itertools.product(per_axis, repeat=n):
            results = _all_reductions(K, full, combo, p)
            assert len(results) == 1
            base, entries = results.pop()
            assert normalize_pair(K, full, SubCube(combo, p)) == SubPair(
                base, SubCube(entries, p)
            )


def test_subdivide_name_collision():
    dims = {"E.1": 0, "v": 0, "E": 1}
    faces = {("E", 1, 0): "E.1", ("E", 1, 1): "v"}
    K = PrecubicalSet(dims, faces)
    with pytest.raises(PcsError):
        subdivide(K, 2)


def test_vertex_coordinates():
    K = standard_cube(2)
    assert vertex_coordinates(K, 2, "xx.1.1") == (
        CubeId("xx", 2),
        (Fraction(1, 2), Fraction(1, 2)),
    )
    assert vertex_coordinates(K, 2, "00") == (CubeId("00", 0), ())
    assert vertex_coordinates(K, 2, "x0.1") == (CubeId("x0", 1), (Fraction(1, 2),))
    assert vertex_coordinates(standard_cube(1), 4, "x.3") == (
        CubeId("x", 1),
        (Fraction(3, 4),),
    )
    with pytest.raises(PcsError):
        vertex_coordinates(K, 2, "nope")
    with pytest.raises(PcsError):
        vertex_coordinates(K, 2, "xx.0-1.1")


def test_sub_compose_iso():
    iso = sub_compose_iso(standard_cube(1), 2, 3)
    assert len(iso.source) == 13 and len(iso.target) == 13
    assert iso.is_isomorphism
    for K in (standard_cube(2), hollow_square(), l_shape()):
        for p, q in ((2, 3), (3, 2), (1, 3), (3, 1), (2, 2)):
            iso = sub_compose_iso(K, p, q)
            assert iso.is_isomorphism
            assert len(iso.source) == len(subdivide(K, p * q).complex)


def test_subdivide_commutes_with_time_reverse():
    for K in (standard_cube(2), hollow_square(), l_shape()):
        for p in (2, 3):
            sub = subdivide(K, p)
            flipped_target = subdivide(time_reverse(K), p).complex
            mapping = {}
            for name, pair in sub.pairs.items():
                entries = tuple(
                    Interval(p - 1 - e.a) if isinstance(e, Interval) else Point(p - e.a)
                    for e in pair.cell.entries
                )
                mapping[name] = SubPair(pair.base, SubCube(entries, p)).name()
            iso = PcsMorphism(time_reverse(sub.complex), flipped_target, mapping)
            assert iso.is_isomorphism


def test_branching_complex_survives_subdivision():
    # Cells starting at an original vertex are exactly the all-low-interval
    # refinements of the cubes starting there, so the two complexes match
    # simplex for simplex.
    for K in (hollow_square(), l_shape(), boundary_cube(3)):
        for p in (2, 3):
            L = subdivide(K, p).complex
            for v in K.vertices():
                B = branching_complex(K, v, "-")
                BL = branching_complex(L, v, "-")
                rename = {}
                for s in B.simplices():
                    cell = SubCube((Interval(0),) * (s.dim + 1), p)
                    rename[s.name] = SubPair(s.name, cell).name()
                assert {rename[s.name] for s in B.simplices()} == {
                    s.name for s in BL.simplices()
                }
                for s in B.simplices():
                    if s.dim == 0:
                        continue
                    for i in range(s.dim + 1):
                        assert rename[B.face(s.name, i)] == BL.face(rename[s.name], i)


def test_subdivision_homology_smoke():
    K = hollow_square()
    for p in (2, 3):
        L = subdivide(K, p).complex
        assert graded_iso(branching_homology(K), branching_homology(L))


def test_random_complexes_subdivide_cleanly():
    rng = random.Random(7)
    from corpus import random_complex

    for _ in range(4):
        K = random_complex(rng)
        sub = subdivide(K, 2)
        assert not validate(sub.complex)
        assert len(sub.complex) == sum((2 * 2 - 1) ** c.dim for c in K.cubes())
