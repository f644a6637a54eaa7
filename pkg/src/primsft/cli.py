"""Command-line front end and report serialization.

Subcommands: ``analyze``, ``gamma``, ``poset``, ``cycles``, ``verify``.
Exit codes: 0 ok, 2 validation error, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .inverse_limit import format_point, gamma_pow, parse_point
from .prim_space import Angle, ApPoint, Bounds, CircleClass, NonUnitalError, PrimReport, prim_report, roots_of_unity
from .rep_oracle import verification_summary
from .sft import SftSystem, SystemConfigError, enumerate_cycles, parse_system

__all__ = ["main", "RunConfig", "report_to_dict", "report_to_json", "poset_dot", "parse_angles", "parse_bounds"]

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_MISMATCH = 3

DEFAULT_BOUNDS = "4,2"
DEFAULT_ANGLES = "roots:1"

log = logging.getLogger("primsft")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    system_path: Path
    command: str
    bounds: Bounds
    angle_spec: str
    angles: list[Angle]
    out: Path | None
    mode: str
    tol: float
    verify: bool = False


def parse_bounds(text: str) -> Bounds:
    try:
        a, b = (int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"bounds must look like L,B (got {text!r})") from None
    if a < 1:
        raise UsageError("max cycle length must be at least 1")
    if b < 0:
        raise UsageError("max bridge length must be nonnegative")
    return Bounds(a, b)


def parse_angles(spec: str) -> list[Angle]:
    kind, _, arg = spec.partition(":")
    if kind == "roots":
        try:
            d = int(arg)
        except ValueError:
            raise UsageError(f"bad angle spec {spec!r}") from None
        if d < 1:
            raise UsageError("roots:d needs d >= 1")
        return roots_of_unity(d)
    if kind == "file":
        try:
            lines = Path(arg).read_text().splitlines()
        except OSError as exc:
            raise UsageError(f"cannot read angle file: {exc}") from None
        out = []
        for line in lines:
            line = line.split("#", 1)[0].strip()
            if line:
                try:
                    out.append(Angle(Fraction(line)))
                except (ValueError, ZeroDivisionError):
                    raise UsageError(f"bad angle {line!r} in {arg}") from None
        return out
    raise UsageError(f"angle spec must be roots:d or file:path (got {spec!r})")


def load_system(path: Path) -> SftSystem:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read system file: {exc}") from None
    return parse_system(text)


def report_to_dict(report: PrimReport) -> dict:
    space = report.space
    index = {q: i for i, q in enumerate(space.orbits)}
    orbits = [
        {
            "id": i,
            "fingerprint": q.fingerprint,
            "representative": format_point(q.representative),
            "periodic": q.periodic,
            "isotropy": q.isotropy_period,
            "limit_cycles": sorted(c.word for c in q.closure.limit_cycles),
        }
        for i, q in enumerate(space.orbits)
    ]
    points = []
    for i, p in enumerate(report.points):
        points.append(
            {
                "id": i,
                "kind": "circle" if isinstance(p, CircleClass) else "point",
                "quasi_orbit": index[p.orbit],
                "angle_class": str(p.angle_class) if isinstance(p, CircleClass) else None,
                "label": p.label,
            }
        )
    return {
        "system": report.system.to_dict(),
        "bounds": {
            "max_cycle_len": report.bounds.max_cycle_len,
            "max_bridge_len": report.bounds.max_bridge_len,
        },
        "angles": report.angle_spec,
        "mode": report.mode,
        "tol": report.tol,
        "truncated": space.truncated,
        "counts": {
            "quasi_orbits": len(space.orbits),
            "periodic_families": sum(q.periodic for q in space.orbits),
            "aperiodic_points": sum(isinstance(p, ApPoint) for p in report.points),
            "prim_points": len(report.points),
        },
        "quasi_orbits": orbits,
        "preorder": [list(p) for p in space.preorder],
        "prim_points": points,
        "specialization": [list(p) for p in report.specialization],
        "verification": report.verification,
        "errors": list(report.errors),
    }


def report_to_json(report: PrimReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_dot(report: PrimReport) -> str:
    lines = ["digraph specialization {", "  rankdir=BT;"]
    for i, p in enumerate(report.points):
        lines.append(f"  p{i} [label={_dot_quote(p.label)}];")
    for i, j in report.specialization:
        if i != j:
            lines.append(f"  p{i} -> p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_output(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out = Path(out)
    fd, tmp = tempfile.mkstemp(dir=out.parent or ".", prefix=f".{out.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _error_doc(message: str, code: int) -> str:
    return json.dumps({"errors": [message], "exit_code": code}, indent=2) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", required=True, type=Path, help="TOML system description")
    common.add_argument("--bounds", default=DEFAULT_BOUNDS, help="max cycle length, max bridge length (L,B)")
    common.add_argument("--angles", default=DEFAULT_ANGLES, help="roots:d or file:path")
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--tol", type=float, default=None, help="float-mode tolerance (default 1e-12)")
    common.add_argument("--out", type=Path, default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="primsft", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    analyze = sub.add_parser("analyze", parents=[common], help="quasi-orbits, Prim points and specialization")
    analyze.add_argument("--verify", action="store_true", help="also run the representation checks")
    g = sub.add_parser("gamma", parents=[common], help="apply gamma^z to a point literal")
    g.add_argument("point", help="literal left^inf.bridge.right^inf@offset[stratum]")
    g.add_argument("z", type=int)
    sub.add_parser("poset", parents=[common], help="DOT graph of the specialization relation")
    cycles = sub.add_parser("cycles", parents=[common], help="list primitive cycles")
    cycles.add_argument("--max-len", type=int, default=None, help="defaults to L from --bounds")
    sub.add_parser("verify", parents=[common], help="representation checks and Williams partition check")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    mode = args.mode
    tol = args.tol if args.tol is not None else (1e-12 if mode == "float" else 0.0)
    if tol < 0:
        raise UsageError("tolerance must be nonnegative")
    return RunConfig(
        system_path=args.system,
        command=args.command,
        bounds=parse_bounds(args.bounds),
        angle_spec=args.angles,
        angles=parse_angles(args.angles),
        out=args.out,
        mode=mode,
        tol=tol,
        verify=getattr(args, "verify", False),
    )


def _run(args: argparse.Namespace) -> int:
    cfg = _config(args)
    system = load_system(cfg.system_path)
    if cfg.command == "gamma":
        try:
            x = parse_point(system, args.point)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        write_output(format_point(gamma_pow(x, args.z)) + "\n", cfg.out)
        return EXIT_OK
    if cfg.command == "cycles":
        n = args.max_len if args.max_len is not None else cfg.bounds.max_cycle_len
        if n < 1:
            raise UsageError("--max-len must be at least 1")
        write_output("".join(c.word + "\n" for c in enumerate_cycles(system, n)), cfg.out)
        return EXIT_OK
    if cfg.command == "verify":
        summary = verification_summary(system, cfg.angles, cfg.bounds.max_cycle_len, cfg.mode, cfg.tol)
        doc = {
            "system": system.to_dict(),
            "bounds": {"max_cycle_len": cfg.bounds.max_cycle_len},
            "angles": cfg.angle_spec,
            "mode": cfg.mode,
            "tol": cfg.tol,
            "verification": summary,
        }
        write_output(json.dumps(doc, indent=2) + "\n", cfg.out)
        return EXIT_OK if summary["passed"] else EXIT_MISMATCH
    report = prim_report(
        system,
        cfg.bounds,
        cfg.angles,
        angle_spec=cfg.angle_spec,
        verify=cfg.verify,
        mode=cfg.mode,
        tol=cfg.tol,
    )
    if cfg.command == "poset":
        write_output(poset_dot(report), cfg.out)
        return EXIT_OK
    write_output(report_to_json(report), cfg.out)
    if report.verification is not None and not report.verification["passed"]:
        return EXIT_MISMATCH
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return _run(args)
    except (UsageError, SystemConfigError, NonUnitalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.command in ("analyze", "verify"):
            try:
                write_output(_error_doc(str(exc), EXIT_VALIDATION), args.out)
            except OSError:
                pass
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
