"""Command-line interface for phase-plane work on the dipolar pair."""
from __future__ import annotations

import argparse
import sys
from typing import Iterable

from .dipolar import CouplingParams
from .scan import (
    BoundaryQuantity,
    DEFAULT_ROOT_TOL,
    GridSpec,
    GridTooLargeError,
    boundary_rows,
    dominant_map,
    dominant_rows,
    evaluate_point,
    scan_grid,
    scan_rows,
    trace_boundary,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _range_spec(text: str) -> tuple[float, float, int]:
    """Parse a min:max:count axis specification."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected min:max:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected min:max:count, got {text!r}")
    return lo, hi, count


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dipolepair",
        description=(
            "Entanglement, CHSH nonlocality and teleportation fidelity of a "
            "dipolar-coupled spin-1/2 pair at thermal equilibrium, over the "
            "dimensionless coupling plane (u, v) = (Delta/kT, eps/kT)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="evaluate a single coupling point")
    point.add_argument("--u", type=float, required=True, help="u = Delta/kT")
    point.add_argument("--v", type=float, required=True, help="v = eps/kT")
    point.add_argument(
        "--normalized-negativity",
        action="store_true",
        help="report negativity doubled, so a Bell state reads 1",
    )

    scan = sub.add_parser("scan", help="evaluate a rectangular grid")
    scan.add_argument("--u", type=_range_spec, required=True, metavar="MIN:MAX:COUNT")
    scan.add_argument("--v", type=_range_spec, required=True, metavar="MIN:MAX:COUNT")
    scan.add_argument("--out", help="write CSV here instead of stdout")
    scan.add_argument("--workers", type=int, default=1, help="worker processes")
    scan.add_argument("--normalized-negativity", action="store_true",
                      help="report negativity doubled, so a Bell state reads 1")

    boundary = sub.add_parser("boundary", help="trace a critical contour")
    boundary.add_argument(
        "--quantity",
        required=True,
        choices=[q.value for q in BoundaryQuantity],
        help="which boundary to trace: chsh=2, negativity onset, fidelity=2/3",
    )
    boundary.add_argument("--u", type=_range_spec, required=True, metavar="MIN:MAX:COUNT")
    boundary.add_argument("--v", type=_range_spec, required=True, metavar="MIN:MAX:COUNT")
    boundary.add_argument("--tol", type=float, default=DEFAULT_ROOT_TOL,
                          help="root residual tolerance")
    boundary.add_argument("--out", help="write CSV here instead of stdout")

    dominant = sub.add_parser("dominant", help="map the dominant Bell component")
    dominant.add_argument("--u", type=_range_spec, required=True, metavar="MIN:MAX:COUNT")
    dominant.add_argument("--v", type=_range_spec, required=True, metavar="MIN:MAX:COUNT")
    dominant.add_argument("--out", help="write CSV here instead of stdout")

    return parser


def _grid_from_args(args: argparse.Namespace) -> GridSpec:
    (u_min, u_max, nu) = args.u
    (v_min, v_max, nv) = args.v
    return GridSpec(u_min=u_min, u_max=u_max, v_min=v_min, v_max=v_max, nu=nu, nv=nv)


def _emit(lines: Iterable[str], out_path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _fuse_axis_values(argv: list[str]) -> list[str]:
    """Join --u/--v with their value so tokens like -10:10:81 are not
    mistaken for option flags."""
    fused = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--u", "--v") and i + 1 < len(argv):
            fused.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            fused.append(tok)
            i += 1
    return fused


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_fuse_axis_values(list(argv)))
    except SystemExit as exc:  # argparse handles usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        if args.command == "point":
            record = evaluate_point(CouplingParams(args.u, args.v))
            _emit(scan_rows([record], args.normalized_negativity), None)
        elif args.command == "scan":
            records = scan_grid(_grid_from_args(args), workers=args.workers)
            _emit(scan_rows(records, args.normalized_negativity), args.out)
        elif args.command == "boundary":
            polylines = trace_boundary(
                BoundaryQuantity(args.quantity), _grid_from_args(args), tol=args.tol
            )
            _emit(boundary_rows(polylines), args.out)
        elif args.command == "dominant":
            entries = dominant_map(_grid_from_args(args))
            _emit(dominant_rows(entries), args.out)
    except GridTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    raise SystemExit(run_cli())
