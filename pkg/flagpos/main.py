#!/usr/bin/env python3
from __future__ import annotations

import argparse
import sys
from typing import Callable, Dict, Optional, Tuple

from . import config
from .bruhat import (
    UNTWISTED,
    BruhatInterval,
    constituent_necklaces,
    envelope,
    interval_flag_matroid,
    interval_label,
    interval_summary,
    is_bruhat_interval_flag_matroid,
    twisted_bip_vertices,
)
from .matroid import coloops, is_flag_matroid, is_matroid_bases, loops
from .necklace import (
    is_grassmann_necklace,
    is_positroid,
    necklace_of,
    positroid_of,
    quotient_report,
)
from .output import RunReport, emit_output
from .polytope import (
    CertifierDisagreement,
    all_cells_flag_positroid,
    cell_to_flag_matroid,
    fvector,
    subdivision_from_mu,
)
from .properties import SUITES, run_properties
from .reproduce import TARGETS, reproduce
from .schema import (
    SchemaError,
    decode_flag_matroid,
    decode_flag_vector,
    decode_interval,
    decode_matroid,
    decode_matroid_sequence,
    decode_necklace,
    encode_matroid,
    encode_necklace,
    encode_point,
    encode_subset,
    load_document,
)
from .tropical import in_dressian, in_fldr_nonneg, pom_check, violated_relations
from .utils import log_error, log_info, set_verbose

Outcome = Tuple[Dict[str, object], bool]


def cmd_check_matroid(doc: object, args: argparse.Namespace) -> Outcome:
    M = decode_matroid(doc)
    ok = is_matroid_bases(M.n, M.bases)
    out: Dict[str, object] = {"matroid": ok}
    if ok:
        out["loops"] = encode_subset(loops(M))
        out["coloops"] = encode_subset(coloops(M))
    return out, ok


def cmd_check_positroid(doc: object, args: argparse.Namespace) -> Outcome:
    M = decode_matroid(doc)
    if not is_matroid_bases(M.n, M.bases):
        return {"matroid": False, "positroid": False}, False
    ok = is_positroid(M)
    return {"matroid": True, "positroid": ok, "necklace": encode_necklace(necklace_of(M))}, ok


def cmd_necklace(doc: object, args: argparse.Namespace) -> Outcome:
    """Матроид -> его ожерелье; ожерелье -> проверка аксиомы и базы позитроида."""
    if isinstance(doc, dict) and "sets" in doc:
        I = decode_necklace(doc)
        if not is_grassmann_necklace(I):
            return {"necklace": False}, False
        return {"necklace": True, "positroid": encode_matroid(positroid_of(I))}, True
    M = decode_matroid(doc)
    return {"necklace": encode_necklace(necklace_of(M)), "positroid": is_positroid(M)}, True


def cmd_quotient(doc: object, args: argparse.Namespace) -> Outcome:
    if not isinstance(doc, dict):
        raise SchemaError("", "expected an object with I/J necklaces or low/high matroids")
    if "I" in doc or "J" in doc:
        I = decode_necklace(doc.get("I"), "/I")
        J = decode_necklace(doc.get("J"), "/J")
    else:
        I = necklace_of(decode_matroid(doc.get("low"), "/low"))
        J = necklace_of(decode_matroid(doc.get("high"), "/high"))
    report = quotient_report(I, J)
    return report.as_dict(), report.quotient


def cmd_pom(doc: object, args: argparse.Namespace) -> Outcome:
    seq = decode_matroid_sequence(doc)
    ok = pom_check(seq)
    return {"pom": ok, "ranks": [M.rank for M in seq]}, ok


def cmd_fldr(doc: object, args: argparse.Namespace) -> Outcome:
    mu = decode_flag_vector(doc)
    consecutive = not args.nonconsecutive
    ok = in_fldr_nonneg(mu, consecutive=consecutive)
    out: Dict[str, object] = {"in_fldr_nonneg": ok, "ranks": list(mu.ranks)}
    if mu.is_consecutive():
        out["in_dressian"] = in_dressian(mu)
        out["violated"] = [rel.describe() for rel in violated_relations(mu)]
    else:
        out["experimental"] = True
    return out, ok


def cmd_subdivide(doc: object, args: argparse.Namespace) -> Outcome:
    mu = decode_flag_vector(doc)
    sub = subdivision_from_mu(mu)
    cells = []
    for cell in sub.cells:
        F = cell_to_flag_matroid(cell)
        cells.append({
            "vertices": sorted(encode_point(p) for p in cell.vertices),
            "bases": [[B.key() for B in M.sorted_bases()] for M in F.constituents],
        })
    out: Dict[str, object] = {"cells": cells, "fvector": list(fvector(sub))}
    ok = True
    if mu.is_consecutive():
        ok = all_cells_flag_positroid(sub, mu.ranks)
        out["positroidal"] = ok
        out["in_fldr_nonneg"] = in_fldr_nonneg(mu)
    return out, ok


def cmd_envelope(doc: object, args: argparse.Namespace) -> Outcome:
    """{"u", "v"} -> флаговый матроид интервала; составляющие -> оболочка и метка."""
    if isinstance(doc, dict) and "u" in doc:
        iv = decode_interval(doc)
        F = interval_flag_matroid(iv.u, iv.v)
        return {
            "interval": interval_summary(iv),
            "permutations": sorted(z.word() for z in iv.permutations()),
            "constituents": [encode_matroid(M) for M in F.constituents],
            "necklaces": [encode_necklace(I) for I in constituent_necklaces(iv.u, iv.v)],
            "twisted_vertices": sorted(encode_point(p) for p in twisted_bip_vertices(iv.u, iv.v)),
        }, True
    F = decode_flag_matroid(doc)
    if not is_flag_matroid(F.constituents):
        return {"flag_matroid": False}, False
    env: BruhatInterval = envelope(F)
    ok = is_bruhat_interval_flag_matroid(F)
    label = interval_label(F, args.convention)
    return {
        "flag_matroid": True,
        "envelope": interval_summary(env),
        "is_interval": ok,
        "label": interval_summary(label),
        "convention": args.convention,
    }, ok


COMMANDS: Dict[str, Tuple[Callable[[object, argparse.Namespace], Outcome], str]] = {
    "check-matroid": (cmd_check_matroid, "Check the basis-exchange axiom"),
    "check-positroid": (cmd_check_positroid, "Check whether a matroid is a positroid"),
    "necklace": (cmd_necklace, "Grassmann necklace of a matroid, or positroid of a necklace"),
    "quotient": (cmd_quotient, "Four-condition necklace quotient test"),
    "pom": (cmd_pom, "Positively oriented flag matroid test via the 0/inf embedding"),
    "fldr": (cmd_fldr, "Nonnegative flag Dressian membership"),
    "subdivide": (cmd_subdivide, "Regular subdivision of the flag polytope induced by a flag vector"),
    "envelope": (cmd_envelope, "Bruhat interval data or envelope of a complete flag matroid"),
}


def build_arg_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="in_file", default=None, help="Input JSON/YAML file (default: stdin)")
    common.add_argument("--out", dest="out_file", default=None, help="Write the JSON result here instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="Seed for randomized suites (default: FLAGPOS_SEED or 0)")
    common.add_argument("--jobs", type=int, default=None, help="Worker threads (default: FLAGPOS_JOBS or 1)")
    common.add_argument("--verbose", action="store_true", help="Verbose logs on stderr")

    p = argparse.ArgumentParser(prog="flagpos", description="Flag positroids, necklaces and positive tropical flag varieties")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if name == "fldr":
            sp.add_argument("--nonconsecutive", action="store_true", help="Experimental check for non-consecutive ranks")
        if name == "envelope":
            sp.add_argument("--convention", choices=[UNTWISTED, "twisted"], default=UNTWISTED, help="Cell label convention")

    rp = sub.add_parser("reproduce", parents=[common], help="Recompute published tables and examples against golden files")
    rp.add_argument("target", choices=TARGETS)

    pp = sub.add_parser("properties", parents=[common], help="Seeded randomized property suites")
    pp.add_argument("--count", type=int, default=10_000, help="Size of the cheapest suites (others scale down)")
    pp.add_argument("--suite", action="append", choices=sorted(SUITES), default=None, help="Run only this suite (repeatable)")
    return p


def _jobs(args: argparse.Namespace) -> int:
    jobs = args.jobs if args.jobs is not None else config.default_jobs()
    if jobs < 1:
        raise ValueError(f"--jobs must be >= 1, got {jobs}")
    return jobs


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    set_verbose(True if args.verbose else None)

    try:
        if args.command == "reproduce":
            report = reproduce(args.target, _jobs(args))
            emit_output(report.as_dict(), args.out_file, args.verbose)
            return 0 if report.ok else 1
        if args.command == "properties":
            seed = args.seed if args.seed is not None else config.default_seed()
            log_info(f"properties seed={seed}")
            report = run_properties(seed, args.count, args.suite, _jobs(args))
            emit_output(report.as_dict(), args.out_file, args.verbose)
            return 0 if report.ok else 1

        doc = load_document(args.in_file, sys.stdin)
        handler, _ = COMMANDS[args.command]
        report = RunReport.start(args.command, doc, seed=args.seed)
        results, ok = handler(doc, args)
        report.results = results
        emit_output(report.finish().as_dict(), args.out_file, args.verbose)
        return 0 if ok else 1
    except SchemaError as exc:
        log_error(f"invalid input at {exc.path}: {exc.message}")
        return 2
    except CertifierDisagreement as exc:
        log_error(f"internal inconsistency: {exc}")
        return 3
    except FileNotFoundError as exc:
        log_error(str(exc))
        return 2
    except (ValueError, RuntimeError) as exc:
        log_error(str(exc))
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
