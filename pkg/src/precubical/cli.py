"""The pcs command-line tool.

One subcommand per capability: validating and describing PCS files,
exporting per-vertex branching complexes, computing branching/merging
homology (text or JSON), subdividing, checking subdivision invariance, and
printing the convergent family of boundary-hugging paths.  Exit codes: 0 on
success, 1 when an analysis check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

from .complexes import assemble_all
from .core import (
    PcsError,
    PrecubicalSet,
    boundary_cube,
    final_states,
    initial_states,
    standard_cube,
    time_reverse,
    validate,
)
from .dipath import (
    PathError,
    diagonal_path,
    embed_face,
    gamma_h,
    germ_equal,
    make_path,
    restrict,
    standard_carrier,
    sup_distance,
    zero_set,
)
from .homology import (
    GradedAbelianGroup,
    branching_homology,
    graded_iso,
    group_str,
    merging_homology,
)
from .pcsfile import ParseError, emit_pcs, parse_pcs
from .subdivision import subdivide


def _read_complex(path: str, *, strict: bool = True) -> PrecubicalSet:
    with open(path, encoding="utf-8") as handle:
        return parse_pcs(handle.read(), validate=strict)


def _write_text(text: str, out, dest: str | None) -> None:
    if dest is None:
        out.write(text)
    else:
        with open(dest, "w", encoding="utf-8") as handle:
            handle.write(text)


def _side_name(merging: bool) -> str:
    return "merging" if merging else "branching"


def _cmd_validate(args, out, err) -> int:
    with open(args.file, encoding="utf-8") as handle:
        text = handle.read()
    K = parse_pcs(text, validate=False)
    problems = validate(K)
    if problems:
        for v in problems:
            print(f"violation: {v}", file=err)
        print(f"{args.file}: {len(problems)} violation(s)", file=err)
        return 2
    print(f"{args.file}: ok ({len(K)} cubes, dimension {K.dim})", file=out)
    return 0


def _cmd_info(args, out, err) -> int:
    K = _read_complex(args.file)
    counts = K.counts()
    print(f"dimension {K.dim}", file=out)
    for d in sorted(counts):
        print(f"cubes[{d}] {counts[d]}", file=out)
    print(f"total {len(K)}", file=out)
    print(f"initial {' '.join(sorted(initial_states(K))) or '-'}", file=out)
    print(f"final {' '.join(sorted(final_states(K))) or '-'}", file=out)
    return 0


def _cmd_complex(args, out, err) -> int:
    K = _read_complex(args.file)
    side = "+" if args.merging else "-"
    complexes = assemble_all(K, side)
    if args.vertex is not None:
        if args.vertex not in complexes:
            raise PcsError(f"unknown vertex {args.vertex!r}")
        complexes = {args.vertex: complexes[args.vertex]}
    for v in sorted(complexes):
        B = complexes[v]
        print(f"vertex {v} {_side_name(args.merging)}", file=out)
        for s in B.simplices():
            print(f"simplex {s.name} {s.dim}", file=out)
        for s in B.simplices():
            for i in range(s.dim + 1):
                if s.dim:
                    print(f"face {s.name} {i} {B.face(s.name, i)}", file=out)
    return 0


def _group_report(side: str, G: GradedAbelianGroup) -> dict:
    return {
        "side": side,
        "groups": [
            {"degree": k, "rank": rank, "torsion": list(torsion)}
            for k, (rank, torsion) in enumerate(G.groups)
        ],
    }


def _print_group(label: str, G: GradedAbelianGroup, out) -> None:
    if G.is_trivial():
        print(f"{label}: 0", file=out)
        return
    for k, (rank, torsion) in enumerate(G.groups):
        print(f"{label} H{k} = {group_str(rank, torsion)}", file=out)


def _cmd_homology(args, out, err) -> int:
    K = _read_complex(args.file)
    if args.merging:
        G = merging_homology(K)
    else:
        G = branching_homology(K)
    side = _side_name(args.merging)
    if args.json:
        print(json.dumps(_group_report(side, G), indent=2), file=out)
    else:
        _print_group(side, G, out)
    return 0


def _cmd_subdivide(args, out, err) -> int:
    K = _read_complex(args.file)
    sub = subdivide(K, args.p)
    _write_text(emit_pcs(sub.complex), out, args.output)
    return 0


def _cmd_check_sub(args, out, err) -> int:
    K = _read_complex(args.file)
    L = subdivide(K, args.p).complex
    ok = True
    for merging in (False, True):
        compute = merging_homology if merging else branching_homology
        G, GL = compute(K), compute(L)
        side = _side_name(merging)
        _print_group(f"{side} original", G, out)
        _print_group(f"{side} subdivided", GL, out)
        if not graded_iso(G, GL):
            ok = False
            print(f"{side} homology differs", file=out)
    if ok:
        print(f"subdivision by {args.p} preserves both homologies", file=out)
        return 0
    return 1


def _cmd_std_cube(args, out, err) -> int:
    _write_text(emit_pcs(standard_cube(args.n)), out, args.output)
    return 0


def _cmd_boundary(args, out, err) -> int:
    _write_text(emit_pcs(boundary_cube(args.n)), out, args.output)
    return 0


def _cmd_reverse(args, out, err) -> int:
    K = _read_complex(args.file)
    _write_text(emit_pcs(time_reverse(K)), out, args.output)
    return 0


def _cmd_demo_no_germs(args, out, err) -> int:
    eps = Fraction(args.epsilon)
    if not 0 < eps < 1:
        raise PathError(f"epsilon must be in (0, 1), got {eps}")
    first = int(1 / eps) + 1
    if args.steps < first:
        raise PathError(f"need at least {first} steps for epsilon {eps}")
    diagonal = diagonal_path(2, eps)
    edge = make_path(standard_carrier(1), eps, (0, eps), ((0,), (eps,)))
    boundary = embed_face(edge, 1, 0)
    print(f"family gamma_h in the square, eps = {eps}", file=out)
    print(
        "each path follows the boundary edge until h = 1/m, then heads "
        "diagonally",
        file=out,
    )
    for m in range(first, args.steps + 1):
        h = Fraction(1, m)
        g = gamma_h(h, eps)
        dist = sup_distance(g, diagonal)
        germ = germ_equal(g, boundary, h)
        print(
            f"m={m} h={h} sup-distance-to-diagonal={dist} "
            f"boundary-germ-at-h={'yes' if germ else 'no'}",
            file=out,
        )
    checks = [Fraction(1, 64), Fraction(1, 8), Fraction(1, 4)]
    checks = [c for c in checks if c <= eps]
    flags = ", ".join(
        f"zero_set@{c}={sorted(zero_set(restrict(diagonal, c))) or 'empty'}"
        for c in checks
    )
    print(f"diagonal restrictions: {flags}", file=out)
    print(
        "the family converges to the diagonal, yet every member shares a "
        "germ with a boundary path and the diagonal never does: no germ "
        "quotient can keep the boundary closed",
        file=out,
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcs",
        description="Analyze precubical sets stored in the PCS text format.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a PCS file against the axioms")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("info", help="print cube counts and states")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_info)

    p = sub.add_parser(
        "complex", help="list the per-vertex branching complexes"
    )
    p.add_argument("file")
    p.add_argument("--vertex", help="only this vertex")
    p.add_argument(
        "--merging", action="store_true", help="use the merging side"
    )
    p.set_defaults(handler=_cmd_complex)

    p = sub.add_parser("homology", help="branching or merging homology")
    p.add_argument("file")
    p.add_argument(
        "--merging", action="store_true", help="use the merging side"
    )
    p.add_argument("--json", action="store_true", help="machine-readable")
    p.set_defaults(handler=_cmd_homology)

    p = sub.add_parser("subdivide", help="emit the subdivided complex")
    p.add_argument("file")
    p.add_argument("-p", type=int, required=True, help="grid order (>= 1)")
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p.set_defaults(handler=_cmd_subdivide)

    p = sub.add_parser(
        "check-sub",
        help="verify homology is unchanged by subdivision",
    )
    p.add_argument("file")
    p.add_argument("-p", type=int, required=True, help="grid order (>= 1)")
    p.set_defaults(handler=_cmd_check_sub)

    p = sub.add_parser("std-cube", help="emit the standard n-cube")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p.set_defaults(handler=_cmd_std_cube)

    p = sub.add_parser("boundary", help="emit the boundary of the n-cube")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p.set_defaults(handler=_cmd_boundary)

    p = sub.add_parser("reverse", help="emit the time-reversed complex")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p.set_defaults(handler=_cmd_reverse)

    p = sub.add_parser(
        "demo-no-germs",
        help="print the boundary-hugging family converging to the diagonal",
    )
    p.add_argument(
        "--epsilon", default="1/2", help="natural length (rational, default 1/2)"
    )
    p.add_argument(
        "--steps", type=int, default=16, help="largest m in the table"
    )
    p.set_defaults(handler=_cmd_demo_no_germs)

    return parser


def run_command(argv, stdout=None, stderr=None) -> int:
    """Run one pcs command; returns the exit code.

    Streams default to the process streams; tests pass their own.
    """
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as stop:
        code = stop.code
        return code if isinstance(code, int) else 0
    try:
        return args.handler(args, out, err)
    except (ParseError, PcsError, PathError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
