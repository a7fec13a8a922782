#!/usr/bin/env python3
"""
Command line for the obstruction-ladder toolkit.

Usage examples:
  python cli.py build rational-partition --parts 2,1,1
  python cli.py build fat-point --r 3
  python cli.py tangent --family artinian-zr --r 3 --i 0,1,2
  python cli.py tangent --ideal-file node.json --i 1 --format table
  python cli.py verify rational --n 4..6 --jobs 3 --xlsx out/rational.xlsx --pdf out/rational.pdf
  python cli.py invariants elliptic-monomial --n 5
  python cli.py resolution --family fat-point --r 4
  python cli.py catalog --out catalog.json

Standard output carries only the requested document; diagnostics go to standard error.
Exit codes: 0 success, 2 invalid input, 3 resource cap, 4 verification disagreement.
"""
import argparse
import logging
import sys
from typing import List, Optional, Sequence

import catalog
import cotangent
import ladder
import reports
from core import (InvalidInput, LadderError, RunConfig, dim_value, dumps, job_clock, parse_field, read_json,
                  setup_logging, write_json_atomic)
from groebner import IdealPresentation, minimal_free_resolution

log = logging.getLogger(__name__)

RESOLUTION_LENGTH = 8


# =========================
# Argument helpers
# =========================
def parse_int_list(text: Optional[str], what: str) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        out = [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise InvalidInput(f"{what} must be a comma separated list of integers, got {text!r}") from None
    if not out:
        raise InvalidInput(f"{what} is empty")
    return out


def config_from_args(args) -> RunConfig:
    return RunConfig.from_env(
        field=parse_field(args.field) if args.field is not None else None,
        order=args.order,
        degree_cap=args.degree_cap,
        time_cap=args.time_cap,
        seed=args.seed,
        jobs=args.jobs,
        format=args.format,
        engine_max_n=args.engine_max,
        timings=args.timings or None,
        oracle=False if args.no_oracle else None,
    )


def descriptor_from_args(family: str, args, cfg: RunConfig) -> catalog.SingularityDescriptor:
    return catalog.SingularityDescriptor.from_args(
        family, parse_int_list(args.parts, "--parts"), args.r, args.n, cfg.seed)


def _with_order(I: IdealPresentation, order: str) -> IdealPresentation:
    if I.order == order:
        return I
    return IdealPresentation(I.ring, I.generators, order, dict(I.provenance))


def load_ideal(path: str, cfg: RunConfig) -> IdealPresentation:
    data = read_json(path, None)
    if data is None:
        raise InvalidInput(f"cannot read an ideal document from {path}")
    I = IdealPresentation.from_dict(data)
    if cfg.field and I.ring.field.p != cfg.field:
        I = I.with_field(cfg.field_obj())
    return _with_order(I, cfg.order)


def emit(text: str, out: Optional[str] = None, document=None) -> None:
    if out:
        if document is not None:
            write_json_atomic(out, document)
        else:
            with open(out, "w", encoding="utf-8") as f:
                f.write(text)
        log.info("[cli] wrote %s", out)
    else:
        sys.stdout.write(text)


# =========================
# Commands
# =========================
def do_build(args, cfg: RunConfig) -> int:
    d = descriptor_from_args(args.family, args, cfg)
    with job_clock(cfg):
        I = _with_order(catalog.build(d, cfg), cfg.order)
        doc = I.to_dict()
        doc["descriptor"] = d.to_dict()
        doc["quotient_dimension"] = dim_value(I.quotient_dimension())
    emit(dumps(doc) + "\n", args.out, doc if args.out else None)
    return 0


def do_tangent(args, cfg: RunConfig) -> int:
    indices = parse_int_list(args.i, "--i") or [1, 2]
    expected = None
    if args.ideal_file:
        I = load_ideal(args.ideal_file, cfg)
        label = args.ideal_file
    elif args.family:
        d = descriptor_from_args(args.family, args, cfg)
        with job_clock(cfg):
            I = _with_order(catalog.build(d, cfg), cfg.order)
        label = d.label
        expected = {i: v for i, v in catalog.expected_tangent(d).items() if i in indices}
    else:
        raise InvalidInput("tangent needs --family or --ideal-file")
    rep = cotangent.tangent_report(I, indices, label, expected, cfg)
    doc = rep.to_dict()
    emit(reports.render(reports.tangent_frame(rep), cfg.format, doc), args.out)
    return 0 if rep.status == "OK" else 4


def do_verify(args, cfg: RunConfig) -> int:
    ns = ladder.parse_n_range(args.n)
    reps = ladder.verify_family(args.family, ns, cfg)
    df = reports.ladder_frame(reps)
    docs = [r.to_dict() for r in reps]
    emit(reports.render(df, cfg.format, docs), args.out)
    if args.xlsx:
        reports.write_xlsx(df, args.xlsx)
    if args.pdf:
        reports.write_pdf(df, args.pdf, cfg.to_dict())
    return max((r.exit_code for r in reps), default=0)


def do_invariants(args, cfg: RunConfig) -> int:
    d = descriptor_from_args(args.family, args, cfg)
    with job_clock(cfg):
        inv = catalog.invariants(d, cfg.field_obj() if cfg.field else None)
    doc = {"descriptor": d.to_dict(), "invariants": inv.to_dict()}
    if cfg.format == "json":
        emit(dumps(doc) + "\n", args.out)
    else:
        import pandas as pd
        emit(reports.render(pd.DataFrame([{"label": d.label, **inv.to_dict()}]), cfg.format), args.out)
    return 0


def do_resolution(args, cfg: RunConfig) -> int:
    if args.ideal_file:
        I = load_ideal(args.ideal_file, cfg)
    elif args.family:
        I = catalog.build(descriptor_from_args(args.family, args, cfg), cfg)
    else:
        raise InvalidInput("resolution needs --family or --ideal-file")
    with job_clock(cfg):
        res = minimal_free_resolution(I, args.length)
        doc = res.to_dict()
        try:
            doc["eagon_northcott_ranks"] = catalog.eagon_northcott_for(I).ranks
        except InvalidInput:
            pass
    if cfg.format == "json":
        emit(dumps(doc) + "\n", args.out)
    else:
        emit(reports.render(reports.betti_frame(res.betti()).reset_index(names="i"), cfg.format), args.out)
    return 0


def do_catalog(args, cfg: RunConfig) -> int:
    manifest = catalog.catalog_manifest(cfg)
    if args.out:
        write_json_atomic(args.out, manifest)
        print(f"Saved → {args.out}", file=sys.stderr)
        return 0
    emit(reports.render(reports.catalog_frame(manifest), cfg.format, manifest))
    return 0


# =========================
# Parser
# =========================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None, help="'rational' (default) or a prime p > 2")
    common.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    common.add_argument("--degree-cap", type=int, default=None)
    common.add_argument("--time-cap", type=float, default=None, help="seconds per job")
    common.add_argument("--seed", type=int, default=1, help="seed for pseudo-generic constructions")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", default="json", choices=["json", "csv", "table"])
    common.add_argument("--timings", action="store_true", help="include wall-clock seconds in reports")
    common.add_argument("--engine-max", type=int, default=None, help="largest n computed by the engine in verify")
    common.add_argument("--no-oracle", action="store_true", help="skip the dense Artinian oracle")
    common.add_argument("--out", default=None, help="write the document to a file instead of standard output")
    common.add_argument("-v", "--verbose", action="count", default=0)

    family_args = argparse.ArgumentParser(add_help=False)
    family_args.add_argument("--parts", default=None, help="partition, e.g. 2,1,1")
    family_args.add_argument("--r", type=int, default=None)
    family_args.add_argument("--n", type=int, default=None)

    families = [f.value for f in catalog.Family]
    parser = argparse.ArgumentParser(description="Deformation and obstruction dimensions of singularities")
    sub = parser.add_subparsers(dest="cmd")

    p = sub.add_parser("build", parents=[common, family_args], help="Emit the ideal of a catalog singularity")
    p.add_argument("family", choices=families)

    p = sub.add_parser("tangent", parents=[common, family_args], help="Dimensions of T^i")
    p.add_argument("--family", choices=families, default=None)
    p.add_argument("--ideal-file", default=None)
    p.add_argument("--i", default="1,2", help="indices, e.g. 0,1,2")

    p = sub.add_parser("verify", parents=[common], help="Ladder, closed forms and engine side by side")
    p.add_argument("family", choices=[f.value for f in ladder.LadderFamily])
    p.add_argument("--n", required=True, help="range such as 4..6, or a list 4,5")
    p.add_argument("--xlsx", default=None)
    p.add_argument("--pdf", default=None)

    p = sub.add_parser("invariants", parents=[common, family_args], help="delta, mu, CM type and e of a curve")
    p.add_argument("family", choices=sorted(f.value for f in catalog.CURVE_FAMILIES))

    p = sub.add_parser("resolution", parents=[common, family_args], help="Betti table of the minimal resolution")
    p.add_argument("--family", choices=families, default=None)
    p.add_argument("--ideal-file", default=None)
    p.add_argument("--length", type=int, default=RESOLUTION_LENGTH)

    sub.add_parser("catalog", parents=[common], help="Manifest of all catalog entries")
    return parser


COMMANDS = {
    "build": do_build,
    "tangent": do_tangent,
    "verify": do_verify,
    "invariants": do_invariants,
    "resolution": do_resolution,
    "catalog": do_catalog,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.cmd:
        parser.print_help()
        return 0
    setup_logging(args.verbose)
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.cmd](args, cfg)
    except LadderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
