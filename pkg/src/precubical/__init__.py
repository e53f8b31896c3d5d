"""Finite precubical sets with branching analysis.

The package models finite precubical sets (cubes with start/finish faces),
computes per-vertex branching and merging complexes and their integral
homology, subdivides cubically, and carries an exact piecewise-linear model
of short natural directed paths.  The `pcs` command-line tool works on a
small text format for complexes; see `precubical.pcsfile`.
"""

from .complexes import (
    BranchingComplex,
    SemiSimplicialSet,
    SimplexId,
    UnionFind,
    assemble_all,
    branching_complex,
    nonempty_index,
    pi0_components,
)
from .core import (
    EMPTY,
    CubeId,
    MissingFaceError,
    MorphismError,
    PcsError,
    PcsMorphism,
    PrecubicalSet,
    UnknownCubeError,
    Violation,
    attach_cube,
    boundary_cube,
    extremal_cubes,
    extremal_partition,
    extremal_vertex,
    final_states,
    initial_states,
    relabel,
    standard_cube,
    time_reverse,
    truncate,
    validate,
)
from .dipath import (
    PathError,
    PLNaturalPath,
    convex_comb,
    diagonal_path,
    embed_face,
    extend_full,
    gamma_h,
    germ_equal,
    make_path,
    restrict,
    sample,
    standard_carrier,
    sup_distance,
    zero_set,
)
from .homology import (
    ChainComplex,
    GradedAbelianGroup,
    Matrix,
    branching_homology,
    chain_complex,
    direct_sum,
    graded_iso,
    group_str,
    homology_of,
    invariant_factors,
    merging_homology,
    rational_rank,
    smith_normal_form,
)
from .pcsfile import ParseError, PcsDocument, emit_pcs, parse_pcs, scan_pcs
from .subdivision import (
    Interval,
    Point,
    SubCube,
    Subdivision,
    SubPair,
    normalize_pair,
    sub_compose_iso,
    sub_standard,
    subdivide,
    vertex_coordinates,
)

__version__ = "0.1.0"

__all__ = [
    "BranchingComplex",
    "ChainComplex",
    "CubeId",
    "EMPTY",
    "GradedAbelianGroup",
    "Interval",
    "Matrix",
    "MissingFaceError",
    "MorphismError",
    "ParseError",
    "PathError",
    "PcsDocument",
    "PcsError",
    "PcsMorphism",
    "PLNaturalPath",
    "Point",
    "PrecubicalSet",
    "SemiSimplicialSet",
    "SimplexId",
    "SubCube",
    "SubPair",
    "Subdivision",
    "UnionFind",
    "UnknownCubeError",
    "Violation",
    "assemble_all",
    "attach_cube",
    "boundary_cube",
    "branching_complex",
    "branching_homology",
    "chain_complex",
    "convex_comb",
    "diagonal_path",
    "direct_sum",
    "embed_face",
    "emit_pcs",
    "extend_full",
    "extremal_cubes",
    "extremal_partition",
    "extremal_vertex",
    "final_states",
    "gamma_h",
    "germ_equal",
    "graded_iso",
    "group_str",
    "homology_of",
    "initial_states",
    "invariant_factors",
    "make_path",
    "merging_homology",
    "nonempty_index",
    "normalize_pair",
    "parse_pcs",
    "pi0_components",
    "rational_rank",
    "relabel",
    "restrict",
    "sample",
    "scan_pcs",
    "smith_normal_form",
    "standard_carrier",
    "standard_cube",
    "sub_compose_iso",
    "sub_standard",
    "subdivide",
    "sup_distance",
    "time_reverse",
    "truncate",
    "validate",
    "vertex_coordinates",
    "zero_set",
]
