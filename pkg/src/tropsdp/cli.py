"""Command line front end: membership, certification, decomposition,
hypergraph inspection, grid validation, and 2-D slice rasters.

Exit codes: 0 success (member / generic / zero failures), 1 negative
outcome (non-member / witness / failures), 2 any error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import PencilFormatError
from .hypergraphs import (
    Certificate,
    build_tangent_hypergraph,
    certify_generic_general,
    farkas_direction,
    find_circulation,
    result_to_obj,
)
from .oracle import cross_validate, default_grid, grid_points
from .pencils import (
    SigmaChoice,
    decompose,
    general_member,
    load_pencil,
    metzler_member,
    parse_point,
    pencil_to_obj,
)
from .signed import MINUS_INF, is_minus_inf


class CliError(Exception):
    pass


def _load(path):
    try:
        return load_pencil(path)
    except (OSError, PencilFormatError) as exc:
        raise CliError(f"cannot load pencil {path}: {exc}") from exc


def _point_for(pencil, homogeneous, text):
    try:
        x = parse_point(text)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    want = pencil.n if homogeneous else pencil.n - 1
    if len(x) != want:
        raise CliError(f"expected {want} coordinates, got {len(x)}")
    return x if homogeneous else (Fraction(0),) + x


def cmd_member(args) -> int:
    pencil, homogeneous = _load(args.file)
    x = _point_for(pencil, homogeneous, args.at)
    if pencil.is_metzler:
        verdict = metzler_member(pencil, x)
        predicate = "metzler"
    else:
        verdict = general_member(pencil, x)
        predicate = "general"
    print(json.dumps({"member": verdict, "predicate": predicate}))
    return 0 if verdict else 1


def cmd_generic(args) -> int:
    pencil, _ = _load(args.file)
    result = certify_generic_general(pencil, max_m=args.max_m, max_n=args.max_n)
    print(json.dumps(result_to_obj(result)))
    return 0 if isinstance(result, Certificate) else 1


def _parse_pairs(text):
    pairs = []
    if text:
        for piece in text.split(";"):
            piece = piece.strip()
            if not piece:
                continue
            try:
                i, j = (int(v) for v in piece.split(","))
            except ValueError as exc:
                raise CliError(f"bad pair {piece!r}") from exc
            pairs.append((i - 1, j - 1))
    return pairs


def cmd_decompose(args) -> int:
    pencil, _ = _load(args.file)
    sigma = _parse_pairs(args.sigma)
    diamond = {}
    if args.diamond:
        for piece in args.diamond.split(";"):
            piece = piece.strip()
            if not piece:
                continue
            try:
                pair, direction = piece.split(":")
                i, j = (int(v) for v in pair.split(","))
            except ValueError as exc:
                raise CliError(f"bad diamond entry {piece!r}") from exc
            if direction not in (">=", "<="):
                raise CliError(f"bad direction {direction!r}")
            diamond[(i - 1, j - 1)] = direction
    try:
        choice = SigmaChoice.make(pencil.m, sigma, diamond)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    piece = decompose(pencil, choice)
    print(json.dumps(pencil_to_obj(piece, homogeneous=True)))
    return 0


def cmd_hypergraph(args) -> int:
    pencil, homogeneous = _load(args.file)
    x = _point_for(pencil, homogeneous, args.at)
    if any(is_minus_inf(v) for v in x):
        raise CliError("tangent hypergraph requires a finite point")
    graph = build_tangent_hypergraph(pencil, x)
    circ = find_circulation(graph)
    eta = farkas_direction(graph)
    obj = {
        "vertices": graph.n_vertices,
        "edges": [{"tails": list(e.tails), "head": e.head} for e in graph.edges],
        "circulation": None
        if circ is None
        else {str(i): str(g) for i, g in enumerate(circ.gamma)},
        "direction": None if eta is None else [str(v) for v in eta],
    }
    print(json.dumps(obj))
    return 0


def cmd_validate(args) -> int:
    pencil, homogeneous = _load(args.file)
    free = pencil.n if homogeneous else pencil.n - 1
    if args.box:
        try:
            lo, hi = (Fraction(v) for v in args.box.split(","))
            step = Fraction(args.step)
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"bad box/step: {exc}") from exc
        if step <= 0:
            raise CliError("step must be positive")
        base = grid_points(free, lo, hi, step)
    else:
        base = default_grid(free)
    grid = base if homogeneous else [(Fraction(0),) + p for p in base]
    records = cross_validate(
        pencil, grid, max_m=args.max_m, max_n=args.max_n, psd_dim_bound=args.psd_bound
    )
    bad = 0
    for rec in records:
        print(json.dumps(rec.to_obj()))
        if not rec.ok:
            bad += 1
    print(f"{len(records)} points, {bad} failures", file=sys.stderr)
    return 0 if bad == 0 else 1


def cmd_slice(args) -> int:
    pencil, homogeneous = _load(args.file)
    fixed: dict[int, Fraction] = {}
    for spec_ in args.fix or []:
        try:
            name, value = spec_.split("=")
            if not name.startswith("x"):
                raise ValueError(f"bad variable {name!r}")
            k = int(name[1:])
            fixed[k] = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"bad --fix {spec_!r}: {exc}") from exc
    n_coords = pencil.n if homogeneous else pencil.n - 1
    if any(not 0 <= k < n_coords for k in fixed):
        raise CliError(f"--fix variable out of range x0..x{n_coords - 1}")
    free = [k for k in range(n_coords) if k not in fixed]
    if len(free) != 2:
        raise CliError(f"need exactly 2 free variables after fixing, got {len(free)}")
    try:
        lo, hi = (Fraction(v) for v in args.box.split(","))
        step = Fraction(args.step)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad box/step: {exc}") from exc
    if step <= 0:
        raise CliError("step must be positive")
    member = metzler_member if pencil.is_metzler else general_member
    print("x1,x2,member")
    for a, b in grid_points(2, lo, hi, step):
        coords = [MINUS_INF] * n_coords
        for k, v in fixed.items():
            coords[k] = v
        coords[free[0]] = a
        coords[free[1]] = b
        point = tuple(coords) if homogeneous else (Fraction(0), *coords)
        verdict = member(pencil, point)
        print(f"{a},{b},{1 if verdict else 0}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropsdp",
        description="Exact membership, genericity and oracle checks for "
        "tropical spectrahedra described by pencil JSON files.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("member", help="decide membership of a point")
    p.add_argument("file")
    p.add_argument("--at", required=True, help="comma-separated point, -inf allowed")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("generic", help="certify genericity or find a witness")
    p.add_argument("file")
    p.add_argument("--max-m", type=int, default=4)
    p.add_argument("--max-n", type=int, default=4)
    p.set_defaults(func=cmd_generic)

    p = sub.add_parser("decompose", help="emit one Metzler piece as pencil JSON")
    p.add_argument("file")
    p.add_argument("--sigma", default="", help='pairs "i,j;i,j" (1-based)')
    p.add_argument("--diamond", default="", help='entries "i,j:>=;i,j:<=" (1-based)')
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("hypergraph", help="tangent hypergraph at a point")
    p.add_argument("file")
    p.add_argument("--at", required=True)
    p.set_defaults(func=cmd_hypergraph)

    p = sub.add_parser("validate", help="cross-validate predicate vs PSD oracle")
    p.add_argument("file")
    p.add_argument("--box", default="", help='"lo,hi" (default [-2,2])')
    p.add_argument("--step", default="1/2")
    p.add_argument("--max-m", type=int, default=4)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--psd-bound", type=int, default=8)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("slice", help="CSV raster of a 2-D slice")
    p.add_argument("file")
    p.add_argument("--fix", action="append", help='e.g. "x0=0"; repeatable')
    p.add_argument("--box", required=True, help='"lo,hi"')
    p.add_argument("--step", required=True, help="positive rational")
    p.set_defaults(func=cmd_slice)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # contract: every failure exits 2 with a message
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
