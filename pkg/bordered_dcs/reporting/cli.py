"""Command-line entry point.

Examples:
  bordered-dcs example pants-guo -o pants.json
  bordered-dcs metric -i pants.json -o report.json
  bordered-dcs verify -i pants.json --tol 1e-8 --seed 42
  bordered-dcs render -i pants.json --face 0 -o face0.svg

Exit codes: 0 success, 1 validation or verification failure (the report is
still written), 2 malformed input or I/O error. Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence

from dotenv import load_dotenv

from bordered_dcs.conformal.dcs import FamilySpec
from bordered_dcs.conformal.examples import EXAMPLES, emit_example
from bordered_dcs.conformal.surface import ParsedSurface, audit_families, compute_metric, parse
from bordered_dcs.errors import DcsError, InputError
from bordered_dcs.reporting.render import render_face
from bordered_dcs.reporting.report_paths import default_report_path
from bordered_dcs.reporting.tables import (
    boundary_records,
    center_records,
    check_records,
    dumps,
    edge_records,
    face_records,
    surface_header,
    write_workbook,
)
from bordered_dcs.settings import Settings, log, set_verbose
from bordered_dcs.verification.checks import CheckReport, fd_partial_suite, h_field_suite, run_verification
from bordered_dcs.verification.duckdb_store import record_run


Sheets = Dict[str, List[Dict[str, Any]]]


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", default=None, help="Output file (.json, .xlsx; default: stdout)")
    p.add_argument("--tol", type=float, default=None, help="Tolerance (default: env BORDERED_DCS_TOL or 1e-8)")
    p.add_argument("--seed", type=int, default=None, help="Random seed (default: env BORDERED_DCS_SEED or 42)")
    p.add_argument("--h", type=float, default=None, help="Stencil step (default: env BORDERED_DCS_H or 1e-5)")
    p.add_argument("--workers", type=int, default=None, help="Worker threads (default: env BORDERED_DCS_WORKERS or 1)")
    p.add_argument("--report-dir", default=None, help="Write to <dir>/<YYYYMMDD_HHMMSS>/<subcommand>.json when -o is omitted")
    p.add_argument("--duckdb", default=None, help="Append the emitted records to this DuckDB file")
    p.add_argument("-v", "--verbose", action="store_true", help="Per-edge and per-face tracing on stderr")


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("-i", "--input", required=True, help="Surface document (JSON; '-' reads stdin)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bordered-dcs",
        description="Discrete conformal structures on ideally triangulated surfaces with boundary.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("metric", help="Edge lengths, splits, face centers and boundary lengths")
    _add_input(p)
    _add_common(p)

    p = sub.add_parser("splits", help="Per-edge lengths and split values")
    _add_input(p)
    _add_common(p)

    p = sub.add_parser("centers", help="Poles, edge centers and face centers")
    _add_input(p)
    _add_common(p)
    p.add_argument("--face", type=int, default=None, help="Only this face")

    p = sub.add_parser("verify", help="Run every verification check on a surface")
    _add_input(p)
    _add_common(p)

    p = sub.add_parser("fdcheck", help="Seeded finite-difference certification of the six families")
    _add_common(p)
    p.add_argument("--draws", type=int, default=100, help="Draws per family (default: 100)")
    p.add_argument(
        "--family",
        action="append",
        default=[],
        choices=[f.value for f in FamilySpec],
        help="Restrict to this family (repeatable; default: all six)",
    )

    p = sub.add_parser("render", help="SVG of one face in the Klein disk")
    _add_input(p)
    _add_common(p)
    p.add_argument("--face", type=int, default=0, help="Face index (default: 0)")

    p = sub.add_parser("example", help="Write a bundled surface document")
    p.add_argument("name", choices=sorted(EXAMPLES), help="Example name")
    _add_common(p)
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    s = Settings.from_env()
    overrides: Dict[str, Any] = {}
    for key in ("tol", "seed", "h", "workers"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if getattr(args, "report_dir", None):
        overrides["reports_dir"] = args.report_dir
    if overrides.get("tol", 1.0) <= 0 or overrides.get("h", 1.0) <= 0:
        raise InputError("--tol and --h must be positive")
    if overrides.get("workers", 1) < 1:
        raise InputError("--workers must be at least 1")
    return replace(s, **overrides)


def _read_surface(path: str) -> ParsedSurface:
    if path == "-":
        raw = sys.stdin.buffer.read()
    else:
        raw = Path(path).read_bytes()
    return parse(raw)


def _header(args: argparse.Namespace, parsed: Optional[ParsedSurface], settings: Settings) -> Dict[str, Any]:
    extra = {
        "subcommand": args.subcommand,
        "input": getattr(args, "input", None),
        "seed": settings.seed,
        "tol": settings.tol,
        "h": settings.h,
    }
    if parsed is None:
        return extra
    return surface_header(parsed.tri, audit_families(parsed.tri, parsed.data), **extra)


def _with_input_edges(rows: List[Dict[str, Any]], parsed: ParsedSurface) -> List[Dict[str, Any]]:
    for row in rows:
        row["input_edge"] = parsed.input_edge_index[row["edge"]]
    return rows


def _emit(
    args: argparse.Namespace,
    settings: Settings,
    document: Mapping[str, Any],
    sheets: Sheets,
) -> None:
    """Write the report (JSON or xlsx) and append it to DuckDB when asked."""
    out = args.output
    if out is None and getattr(args, "report_dir", None):
        out = str(default_report_path(args.subcommand, base_dir=settings.reports_dir))
    if out is not None and out.lower().endswith(".xlsx"):
        write_workbook(Path(out), sheets)
        log(args.subcommand, f"wrote {out}")
    elif out is not None:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps(document), encoding="utf-8")
        log(args.subcommand, f"wrote {out}")
    else:
        sys.stdout.write(dumps(document))
        sys.stdout.flush()

    if args.duckdb:
        tables = {name.lower(): rows for name, rows in sheets.items()}
        record_run(Path(args.duckdb), subcommand=args.subcommand, input_path=getattr(args, "input", None), tables=tables)


def _cmd_metric(args: argparse.Namespace, settings: Settings) -> int:
    parsed = _read_surface(args.input)
    log("metric", f"faces={parsed.tri.n_faces} edges={parsed.tri.n_edges} workers={settings.workers}")
    report = compute_metric(parsed.tri, parsed.data, settings.tol, settings.workers)
    edges = _with_input_edges(edge_records(report), parsed)
    faces = face_records(report)
    boundaries = boundary_records(report)
    document = {
        "header": _header(args, parsed, settings),
        "edges": edges,
        "faces": faces,
        "boundaries": boundaries,
        "total_length": report.total_length,
        "valid": report.valid,
    }
    _emit(args, settings, document, {"Edges": edges, "Faces": faces, "Boundaries": boundaries})
    for fr in report.faces:
        if not fr.compatible:
            log("metric", f"face {fr.face}: {fr.problem}")
    return 0 if report.valid else 1


def _cmd_splits(args: argparse.Namespace, settings: Settings) -> int:
    parsed = _read_surface(args.input)
    report = compute_metric(parsed.tri, parsed.data, settings.tol, settings.workers)
    edges = _with_input_edges(edge_records(report), parsed)
    document = {"header": _header(args, parsed, settings), "edges": edges}
    _emit(args, settings, document, {"Edges": edges})
    virtual = [row["edge"] for row in edges if not row["real_split"]]
    if virtual:
        log("splits", f"edges without real split: {virtual}")
    return 0


def _check_face(face: Optional[int], parsed: ParsedSurface) -> None:
    if face is not None and not 0 <= face < parsed.tri.n_faces:
        raise InputError(f"--face {face} out of range (surface has {parsed.tri.n_faces} faces)")


def _cmd_centers(args: argparse.Namespace, settings: Settings) -> int:
    parsed = _read_surface(args.input)
    _check_face(args.face, parsed)
    report = compute_metric(parsed.tri, parsed.data, settings.tol, settings.workers)
    faces = center_records(report, args.face)
    document = {"header": _header(args, parsed, settings), "faces": faces}
    _emit(args, settings, document, {"Faces": faces})
    return 0 if all(row["face_center"] is not None for row in faces) else 1


def _checks_document(args: argparse.Namespace, parsed: Optional[ParsedSurface], settings: Settings, checks: Sequence[CheckReport]) -> Dict[str, Any]:
    return {
        "header": _header(args, parsed, settings),
        "checks": [c.to_record() for c in checks],
        "passed": all(c.passed for c in checks),
    }


def _log_checks(checks: Iterable[CheckReport]) -> None:
    for c in checks:
        log("verify", f"{c.name} max={c.max_residual:.3e} tol={c.tolerance:.1e} {'PASS' if c.passed else 'FAIL'}")


def _cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    parsed = _read_surface(args.input)
    checks = run_verification(
        parsed.tri,
        parsed.data,
        tol=settings.tol,
        h=settings.h,
        seed=settings.seed,
        workers=settings.workers,
    )
    _log_checks(checks)
    _emit(args, settings, _checks_document(args, parsed, settings, checks), {"Checks": check_records(checks)})
    return 0 if all(c.passed for c in checks) else 1


def _cmd_fdcheck(args: argparse.Namespace, settings: Settings) -> int:
    if args.draws < 1:
        raise InputError("--draws must be at least 1")
    families = [FamilySpec(f) for f in args.family] or list(FamilySpec)
    checks = [fd_partial_suite(settings.seed, args.draws, settings.h, families=families)]
    if not args.family:
        checks.append(h_field_suite(settings.seed, args.draws))
    _log_checks(checks)
    document = _checks_document(args, None, settings, checks)
    document["header"]["draws"] = args.draws
    _emit(args, settings, document, {"Checks": check_records(checks)})
    return 0 if all(c.passed for c in checks) else 1


def _cmd_render(args: argparse.Namespace, settings: Settings) -> int:
    parsed = _read_surface(args.input)
    _check_face(args.face, parsed)
    report = compute_metric(parsed.tri, parsed.data, settings.tol, settings.workers)
    fr = report.faces[args.face]
    svg = render_face(fr.realization, fr.centers, args.output, title=f"face {fr.face} corners {list(fr.corners)}")
    if args.output is None:
        sys.stdout.write(svg)
        sys.stdout.flush()
    else:
        log("render", f"wrote {args.output}")
    if not fr.compatible:
        log("render", f"face {fr.face}: {fr.problem}")
        return 1
    return 0


def _cmd_example(args: argparse.Namespace, settings: Settings) -> int:
    document = emit_example(args.name)
    text = dumps(document)
    if args.output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        path = Path(args.output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        log("example", f"wrote {args.name} to {path}")
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace, Settings], int]] = {
    "metric": _cmd_metric,
    "splits": _cmd_splits,
    "centers": _cmd_centers,
    "verify": _cmd_verify,
    "fdcheck": _cmd_fdcheck,
    "render": _cmd_render,
    "example": _cmd_example,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 on --help
        return int(exc.code or 0)

    if args.verbose:
        set_verbose(True)
    try:
        settings = _settings(args)
        return COMMANDS[args.subcommand](args, settings)
    except InputError as exc:
        log("error", f"{type(exc).__name__}: {exc}")
        return 2
    except OSError as exc:
        log("error", f"{type(exc).__name__}: {exc}")
        return 2
    except DcsError as exc:
        log("error", f"{type(exc).__name__}: {exc}")
        return 1
    finally:
        if args.verbose:
            set_verbose(None)


def main() -> None:
    load_dotenv()
    raise SystemExit(run())


if __name__ == "__main__":
    main()
