"""Command-line front door.

Subcommands:

    verify-proof   run every exact identity check and write a report
    example1       reproduce the quintic-cusp worked example end to end
    transform      apply legendre / fake:t=... to catalog or file data
    membership     classify a data triple (creative / fixed-point / generic)
    roundtrip      extract data from catalog frontals and rebuild them

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
Failure paths emit a one-line JSON error object on stderr.  Output files
carry no timestamps and use fixed float formatting, so identical configs
produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import catalog, dataio, plotting
from .frontal import (
    GridSpec,
    LegendrianData,
    NotCreativeError,
    creative_check,
    data_of_frontal,
    envelope_reconstruct,
)
from .involution import involution_check, membership, resolve_transform
from .proofs import MUTATIONS, run_all_checks
from .reporting import Report

FORMATS = ("json", "csv", "svg")


class UsageError(Exception):
    """Bad arguments or unreadable input; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise UsageError(message)


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([
                _fmt(cell) if isinstance(cell, float) else cell for cell in row
            ])


def _parse_grid(args, n_hint: int | None = None,
                fallback: GridSpec | None = None) -> GridSpec:
    specs = args.grid or []
    if not specs:
        if fallback is not None:
            if args.fd_step is not None:
                return GridSpec(fallback.box, fallback.counts, args.fd_step)
            return fallback
        raise UsageError("no --grid given and no default available")
    axes = []
    for spec in specs:
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError(f"bad --grid {spec!r}, expected lo:hi:count")
        try:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise UsageError(f"bad --grid {spec!r}: {exc}") from None
        axes.append(((lo, hi), count))
    if n_hint is not None and len(axes) == 1 and n_hint > 1:
        axes = axes * n_hint
    box = tuple(a[0] for a in axes)
    counts = tuple(a[1] for a in axes)
    step = args.fd_step if args.fd_step is not None else 1e-5
    try:
        return GridSpec(box, counts, step)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_formats(text: str) -> tuple[str, ...]:
    chosen = tuple(part.strip() for part in text.split(",") if part.strip())
    for fmt in chosen:
        if fmt not in FORMATS:
            raise UsageError(f"unknown format {fmt!r}; choose from {','.join(FORMATS)}")
    if not chosen:
        raise UsageError("empty --format list")
    return chosen


def _load_input(name: str) -> tuple[LegendrianData, GridSpec | None]:
    if name in catalog.data_names():
        return catalog.get_data(name), catalog.default_grid(name)
    path = Path(name)
    if path.exists():
        try:
            data = dataio.load_data(path)
        except dataio.DataFormatError as exc:
            raise UsageError(str(exc)) from None
        return data, data.grid
    raise UsageError(
        f"input {name!r} is neither a catalog data name {catalog.data_names()} "
        f"nor an existing file"
    )


def _print_reports(reports: list[Report]) -> None:
    width = max(len(r.check_name) for r in reports)
    for report in reports:
        detail = ""
        if report.residuals:
            detail = f"  residuals: {'; '.join(report.residuals[:2])}"
            if len(report.residuals) > 2:
                detail += f" (+{len(report.residuals) - 2} more)"
        print(f"{report.check_name:<{width}}  {report.status}{detail}")


def _emit_error(kind: str, detail: str, **extra) -> None:
    payload = {"error": kind, "detail": detail}
    payload.update(extra)
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


# ------------------------------------------------------------- subcommands


def _cmd_verify_proof(args) -> int:
    reports = run_all_checks(n=args.n, mutate=args.mutate)
    _print_reports(reports)
    all_pass = all(r.passed for r in reports)
    if "json" in args.formats:
        _write_json(Path(args.out) / "verify_proof.json", {
            "n": args.n,
            "mutate": args.mutate,
            "all_pass": all_pass,
            "checks": [r.to_dict() for r in reports],
        })
    if not all_pass:
        _emit_error(
            "verification-failure",
            "checks failed: " + ", ".join(r.check_name for r in reports if not r.passed),
        )
        return 1
    return 0


def _example1_rows(data: LegendrianData, grid: GridSpec):
    frontal = catalog.get_frontal("example1")
    rows = []
    worst = -1.0
    curve, normals, supports, recon = [], [], [], []
    for x in grid.points():
        phi = frontal.phi_at(x)
        nu = frontal.nu_at(x)
        theta = data.theta_at(x)
        a = data.a_at(x)
        b = data.b_at(x)
        rebuilt = envelope_reconstruct(data, x)
        residual = float(np.max(np.abs(rebuilt - phi)))
        worst = max(worst, residual)
        rows.append([
            float(x[0]), float(phi[0]), float(phi[1]), float(nu[0]), float(nu[1]),
            a, float(b[0]), float(theta[0]), float(rebuilt[0]), float(rebuilt[1]),
            residual,
        ])
        curve.append(phi)
        normals.append(nu)
        supports.append(a)
        recon.append(rebuilt)
    arrays = (np.array(curve), np.array(normals), np.array(supports), np.array(recon))
    return rows, worst, arrays


def _cmd_example1(args) -> int:
    grid = _parse_grid(args, fallback=catalog.default_grid("example1"))
    if args.pipeline == "closed":
        data = catalog.example1_data()
        tol = args.tol if args.tol is not None else 1e-9
    else:
        data = data_of_frontal(catalog.get_frontal("example1"), grid)
        tol = args.tol if args.tol is not None else 1e-6
    rows, worst, (curve, normals, supports, recon) = _example1_rows(data, grid)
    out = Path(args.out)
    if "csv" in args.formats:
        _write_csv(out / "example1.csv", [
            "x", "phi1", "phi2", "nu1", "nu2", "a", "b", "theta",
            "recon1", "recon2", "residual",
        ], rows)
    if "svg" in args.formats:
        plotting.save_envelope_figure(
            out / "example1.svg", curve, normals, supports, recon,
            title="quintic cusp and its tangent-line envelope",
        )
    status = "PASS" if worst <= tol else "FAIL"
    if "json" in args.formats:
        _write_json(out / "example1.json", {
            "pipeline": args.pipeline,
            "grid": grid.to_dict(),
            "max_residual": worst,
            "tol": tol,
            "status": status,
        })
    print(f"example1 [{args.pipeline}]  max residual {worst:.3e}  tol {tol:.1e}  {status}")
    if worst > tol:
        _emit_error("verification-failure", "reconstruction residual above tolerance",
                    max_residual=worst, tol=tol)
        return 1
    return 0


def _envelope_samples(data: LegendrianData, grid: GridSpec) -> np.ndarray:
    return np.array([envelope_reconstruct(data, x) for x in grid.points()])


def _cmd_transform(args) -> int:
    data, default = _load_input(args.input)
    grid = _parse_grid(args, n_hint=data.dim_n, fallback=default)
    check = creative_check(data, grid)
    if not check.passed:
        _emit_error("not-creative", "input violates the creative condition",
                    max_residual=check.data["max_residual"],
                    location=check.data["location"], tol=check.data["tol"])
        return 1
    try:
        transform, label = resolve_transform(args.transform)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        image = transform(data)
    except NotCreativeError as exc:
        _emit_error("not-creative", str(exc))
        return 1

    verdict_in = membership(data, grid, tol=args.tol)
    verdict_out = membership(image, grid, tol=args.tol)
    invol = involution_check(transform, data, grid,
                             tol=args.tol if args.tol is not None else 1e-9)

    out = Path(args.out)
    stem = f"{Path(args.input).stem}__{label.replace(':', '_').replace('/', '_')}"
    artifacts = {}
    if "json" in args.formats:
        data_path = out / f"{stem}.json"
        dataio.save_data(image, data_path, grid)
        artifacts["transformed_data"] = str(data_path)
        report_path = out / f"{stem}__report.json"
        _write_json(report_path, {
            "input": args.input,
            "transform": label,
            "grid": grid.to_dict(),
            "input_membership": verdict_in.to_dict(),
            "output_membership": verdict_out.to_dict(),
            "involution_check": invol.to_dict(),
        })
        artifacts["report"] = str(report_path)
    if "svg" in args.formats and data.dim_n == 1:
        figure_path = plotting.save_pair_figure(
            out / f"{stem}.svg",
            _envelope_samples(data, grid),
            _envelope_samples(image, grid),
            labels=("input envelope", f"{label} envelope"),
        )
        artifacts["figure"] = str(figure_path)

    print(f"transform {label} on {args.input}")
    print(f"  input : in_X={verdict_in.in_X} in_Y={verdict_in.in_Y} "
          f"in_GY={verdict_in.in_GY} genericity={verdict_in.in_GX.verdict}")
    print(f"  output: in_X={verdict_out.in_X} in_Y={verdict_out.in_Y} "
          f"in_GY={verdict_out.in_GY} genericity={verdict_out.in_GX.verdict}")
    print(f"  involution: {invol.status}")
    for kind, where in artifacts.items():
        print(f"  wrote {kind}: {where}")
    return 0


def _cmd_membership(args) -> int:
    data, default = _load_input(args.input)
    grid = _parse_grid(args, n_hint=data.dim_n, fallback=default)
    verdict = membership(data, grid, tol=args.tol)
    payload = {"input": args.input, "grid": grid.to_dict(),
               "verdict": verdict.to_dict()}
    print(json.dumps(payload, indent=2, sort_keys=True))
    if args.out is not None:
        _write_json(Path(args.out) / f"membership_{Path(args.input).stem}.json", payload)
    return 0


def _cmd_roundtrip(args) -> int:
    names = catalog.frontal_names() if args.catalog == "all" else [args.catalog]
    for name in names:
        if name not in catalog.frontal_names():
            raise UsageError(
                f"unknown catalog frontal {name!r}; choose from {catalog.frontal_names()}"
            )
    tol = args.tol if args.tol is not None else 1e-6
    out = Path(args.out)
    summary_rows = []
    results = []
    failed = False
    for name in names:
        frontal = catalog.get_frontal(name)
        grid = _parse_grid(args, n_hint=frontal.dim_n,
                           fallback=catalog.default_grid(name))
        data = data_of_frontal(frontal, grid)
        worst = incidence = tangency = -1.0
        h = grid.fd_step
        curve, recon = [], []
        for x in grid.points():
            phi = frontal.phi_at(x)
            nu = frontal.nu_at(x)
            rebuilt = envelope_reconstruct(data, x)
            worst = max(worst, float(np.max(np.abs(rebuilt - phi))))
            incidence = max(incidence, abs(float(np.dot(rebuilt, nu)) - data.a_at(x)))
            for axis in range(frontal.dim_n):
                step = np.zeros(frontal.dim_n)
                step[axis] = h
                derivative = (envelope_reconstruct(data, x + step)
                              - envelope_reconstruct(data, x - step)) / (2 * h)
                tangency = max(tangency, abs(float(np.dot(derivative, nu))))
            if frontal.dim_n == 1:
                curve.append(phi)
                recon.append(rebuilt)
        status = "PASS" if max(worst, incidence, tangency) <= tol else "FAIL"
        failed = failed or status == "FAIL"
        summary_rows.append([name, worst, incidence, tangency, status])
        results.append({
            "catalog": name, "grid": grid.to_dict(), "max_residual": worst,
            "hyperplane_incidence": incidence, "tangency": tangency,
            "tol": tol, "status": status,
        })
        print(f"roundtrip {name:<14} residual {worst:.3e}  incidence {incidence:.3e}  "
              f"tangency {tangency:.3e}  {status}")
        if "svg" in args.formats and frontal.dim_n == 1:
            plotting.save_pair_figure(
                out / f"roundtrip_{name}.svg", np.array(curve), np.array(recon),
                labels=("catalog curve", "reconstruction"),
                title=f"roundtrip: {name}",
            )
    if "csv" in args.formats:
        _write_csv(out / "roundtrip.csv",
                   ["catalog", "max_residual", "incidence", "tangency", "status"],
                   summary_rows)
    if "json" in args.formats:
        _write_json(out / "roundtrip.json", {"tol": tol, "results": results})
    if failed:
        _emit_error("verification-failure", "roundtrip residual above tolerance")
        return 1
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> _Parser:
    parser = _Parser(prog="frontaldual", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_formats=True):
        p.add_argument("--grid", action="append", metavar="LO:HI:COUNT",
                       help="sample axis (repeat per axis)")
        p.add_argument("--fd-step", type=float, default=None,
                       help="finite-difference step (default 1e-5)")
        p.add_argument("--tol", type=float, default=None,
                       help="override the default tolerance")
        p.add_argument("--out", default="out", help="output directory")
        if with_formats:
            p.add_argument("--format", default="json,csv,svg", dest="formats",
                           type=_parse_formats,
                           help="comma list from json,csv,svg")

    p_verify = sub.add_parser("verify-proof",
                              help="run every exact identity check")
    p_verify.add_argument("--n", type=int, default=1,
                          help="number of axes for the symbolic rings")
    p_verify.add_argument("--mutate", choices=MUTATIONS, default=None,
                          help="inject a known-bad claim as a checker control")
    p_verify.add_argument("--out", default="out")
    p_verify.add_argument("--format", default="json", dest="formats",
                          type=_parse_formats)
    p_verify.set_defaults(func=_cmd_verify_proof)

    p_ex1 = sub.add_parser("example1", help="reproduce the worked example")
    common(p_ex1)
    p_ex1.add_argument("--pipeline", choices=("closed", "fd"), default="closed",
                       help="closed-form data or the finite-difference pipeline")
    p_ex1.set_defaults(func=_cmd_example1)

    p_tr = sub.add_parser("transform", help="apply a data transform")
    p_tr.add_argument("input", help="catalog data name or data file path")
    p_tr.add_argument("transform", help="legendre or fake:t=T[,T2,...]")
    common(p_tr)
    p_tr.set_defaults(func=_cmd_transform)

    p_mem = sub.add_parser("membership", help="classify a data triple")
    p_mem.add_argument("input", help="catalog data name or data file path")
    p_mem.add_argument("--grid", action="append", metavar="LO:HI:COUNT")
    p_mem.add_argument("--fd-step", type=float, default=None)
    p_mem.add_argument("--tol", type=float, default=None)
    p_mem.add_argument("--out", default=None)
    p_mem.set_defaults(func=_cmd_membership)

    p_rt = sub.add_parser("roundtrip", help="extract data and rebuild the map")
    p_rt.add_argument("--catalog", default="all",
                      help="catalog frontal name or 'all'")
    common(p_rt)
    p_rt.set_defaults(func=_cmd_roundtrip)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        _emit_error("usage", str(exc))
        return 2
    except NotCreativeError as exc:
        _emit_error("not-creative", str(exc))
        return 1
    except (ValueError, KeyError) as exc:
        _emit_error("invalid-input", str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
