"""Command-line front end.

Exit codes: 0 ok, 1 input error, 2 not a Lie algebra, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .algebra import PAIRS, StructureConstants, nonzero_entries
from .curvature import curvature_report, curvature_template_check, einstein_taxonomy
from .errors import AcbError, InputError, InvalidSpec, NotALieAlgebra, UnsupportedClass
from .families import (
    DEFAULT_GRID, FAMILY_IDS, ExampleSpec, FamilySpec, construct_class_family, construct_example, expected_curvature,
)
from .io import InputDocument, dump_report, emit_document, format_scalar, parse_document, parse_rational
from .structure import compute_F_closed_form, decompose, lee_forms, special_structures
from .verify import CHECK_NAMES, run_verification

EXIT_OK, EXIT_INPUT, EXIT_NOT_LIE, EXIT_VERIFY = 0, 1, 2, 3


def _entries(arr, tol) -> dict[str, object]:
    return {"".join(map(str, k)): v for k, v in nonzero_entries(arr, tol).items()}


def _r_entries(r, tol) -> dict[str, object]:
    # one representative per symmetry orbit: i<j, k<l, (i,j) <= (k,l)
    return {"".join(map(str, k)): v for k, v in nonzero_entries(r, tol).items()
            if k[0] < k[1] and k[2] < k[3] and k[:2] <= k[2:]}


def classification_report(doc: InputDocument) -> dict:
    tol = doc.effective_tolerance
    c = doc.structure_constants
    f = compute_F_closed_form(c, tol)
    dec = decompose(f, tol)
    lee = lee_forms(f)
    flags = special_structures(c, tol)
    return {
        "input": {"mode": doc.mode, "tolerance": tol,
                  "brackets": {f"{i}{j}": list(c.brackets()[(i, j)]) for i, j in PAIRS}},
        "jacobi": "ok",
        "F": _entries(f.f, tol),
        "lee_forms": {"theta": list(lee.theta), "theta_star": list(lee.theta_star), "omega": list(lee.omega)},
        "class_parameters": dec.params.as_dict(),
        "membership": sorted(dec.membership, key=lambda s: (len(s), s)),
        "special_structures": {name: {"definition": p.direct, "class_condition": p.by_class, "agree": p.agree}
                               for name, p in flags.items()},
    }


def curvature_suite(doc: InputDocument) -> dict:
    tol = doc.effective_tolerance
    c = doc.structure_constants
    out = classification_report(doc)
    rep = curvature_report(c, tol)
    dec = decompose(compute_F_closed_form(c, tol), tol)
    ein = einstein_taxonomy(rep.rho, tol)
    try:
        tc = curvature_template_check(dec, rep)
        template = {"class": tc.class_id, "R_defect": tc.r_defect, "rho_defect": tc.rho_defect}
    except UnsupportedClass as exc:
        template = {"skipped": str(exc)}
    out.update({
        "connection": _entries(rep.connection.gamma, tol),
        "curvature": {
            "R": _r_entries(rep.r, tol), "rho": _entries(rep.rho, tol), "rho_star": _entries(rep.rho_star, tol),
            "tau": rep.tau, "tau_star": rep.tau_star, "k01": rep.k01, "k02": rep.k02, "k12": rep.k12,
            "flat": rep.flat,
        },
        "einstein": {
            "coefficients": None if ein.coefficients is None else dict(zip(("lambda", "mu", "nu"), ein.coefficients)),
            "contact_coefficients": None if ein.contact is None else dict(zip(("lambda", "mu", "nu"), ein.contact)),
            "labels": sorted(ein.labels),
        },
        "defects": {"r3_identity": rep.r3_defect, "template": template, "kaehler": rep.kaehler_defect,
                    "R_symmetries": rep.symmetry_defects, "torsion": rep.connection.torsion_defect(c),
                    "metric": rep.connection.metric_defect()},
    })
    return out


# -- pretty printing --------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    s = format_scalar(v) if not isinstance(v, str) else v
    return str(s)


def _pretty(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, val in obj.items():
        if isinstance(val, dict):
            if not val:
                lines.append(f"{pad}{key}: (all zero)")
                continue
            lines.append(f"{pad}{key}:")
            lines.extend(_pretty(val, indent + 1))
        elif isinstance(val, (list, tuple)):
            lines.append(f"{pad}{key}: [{', '.join(_fmt(v) for v in val)}]")
        else:
            lines.append(f"{pad}{key}: {_fmt(val)}")
    return lines


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(dump_report(report))
    else:
        out.write("\n".join(_pretty(report)) + "\n")


# -- commands ---------------------------------------------------------------------

def _read_document(args) -> InputDocument:
    if args.construct:
        doc = InputDocument(_constructed(args))
    else:
        try:
            text = open(args.input, encoding="utf-8").read() if args.input else sys.stdin.read()
        except OSError as exc:
            raise InputError(f"cannot read input: {exc}") from exc
        doc = parse_document(text)
    mode = args.mode if args.mode_given else doc.mode
    if args.tolerance is not None and mode != "float":
        raise InputError("--tolerance is only allowed with --mode float")
    if mode == "float":
        c = doc.structure_constants
        c = StructureConstants(np.vectorize(float, otypes=[object])(c.c))
        doc = InputDocument(c, "float", args.tolerance if args.tolerance is not None else doc.tolerance)
    return doc


def _constructed(args):
    try:
        if args.construct == "example":
            return construct_example(ExampleSpec(parse_rational(args.a1 or "0", "--a1: "),
                                                 parse_rational(args.a2 or "0", "--a2: ")))
        return construct_class_family(FamilySpec(args.construct, parse_rational(args.alpha or "0", "--alpha: "),
                                                 parse_rational(args.beta or "0", "--beta: ")))
    except InputError as exc:
        raise InvalidSpec(str(exc)) from exc


def cmd_classify(args, out) -> int:
    _emit(classification_report(_read_document(args)), args.format, out)
    return EXIT_OK


def cmd_curvature(args, out) -> int:
    _emit(curvature_suite(_read_document(args)), args.format, out)
    return EXIT_OK


def cmd_construct(args, out) -> int:
    if not args.construct:
        raise InvalidSpec("construct needs a class id or 'example'")
    out.write(emit_document(InputDocument(_constructed(args))))
    return EXIT_OK


def _parse_grid(text: str | None):
    if not text:
        return DEFAULT_GRID
    return tuple(parse_rational(t.strip(), "--grid: ") for t in text.split(",") if t.strip())


def cmd_verify(args, out, expected=expected_curvature) -> int:
    only = [s.strip() for s in args.checks.split(",")] if args.checks else None
    if only and set(only) - set(CHECK_NAMES):
        raise InputError(f"unknown checks {sorted(set(only) - set(CHECK_NAMES))}; choose from {', '.join(CHECK_NAMES)}")
    rep = run_verification(_parse_grid(args.grid), args.seeds, args.seed, expected=expected, jobs=args.jobs,
                           only=only)
    if args.format == "json":
        out.write(json.dumps({
            "passed": rep.passed, "population": rep.population_size,
            "checks": [{"name": ch.name, "description": ch.description, "cases": ch.cases,
                        "failures": ch.failures} for ch in rep.checks],
            "documented-discrepancy": rep.discrepancies, "documented-ambiguity": rep.ambiguities,
            "first_failure": rep.first_failure(),
        }, indent=2) + "\n")
    else:
        out.write(f"population: {rep.population_size} algebras\n")
        width = max(len(ch.name) for ch in rep.checks) if rep.checks else 0
        for ch in rep.checks:
            status = "PASS" if ch.passed else f"FAIL ({len(ch.failures)} of {ch.cases})"
            out.write(f"  {ch.name:<{width}}  {status}\n")
        if rep.discrepancies:
            out.write("documented-discrepancy:\n" + "".join(f"  - {d}\n" for d in rep.discrepancies))
        if rep.ambiguities:
            out.write("documented-ambiguity:\n" + "".join(f"  - {d}\n" for d in rep.ambiguities))
        if not rep.passed:
            for ch in rep.checks:
                for msg in ch.failures[: args.show]:
                    out.write(f"failure [{ch.name}]: {msg}\n")
            out.write(f"first failure: {rep.first_failure()}\n")
        out.write("verify: " + ("ok" if rep.passed else "FAILED") + "\n")
    return EXIT_OK if rep.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="acblie", description=(
        "Classify and compute the curvature of 3-dimensional Lie algebras with an almost contact B-metric structure."))
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, input_opts=True):
        p.add_argument("--format", choices=("json", "pretty"), default="pretty")
        if input_opts:
            p.add_argument("--input", metavar="PATH", help="input document (default: standard input)")
            p.add_argument("--mode", choices=("exact", "float"), default=None)
            p.add_argument("--tolerance", type=float, default=None, help="zero threshold in float mode (default 1e-9)")
        return p

    def construct_opts(p, required=False):
        choices = FAMILY_IDS + ("example",)
        p.add_argument("--construct", choices=choices, required=required, metavar="CLASS",
                       help=f"build the input from a family: {', '.join(choices)}")
        for name in ("alpha", "beta", "a1", "a2"):
            p.add_argument(f"--{name}", default=None, metavar="P/Q")

    for name, helptext in (("classify", "F tensor, Lee forms, class membership"),
                           ("curvature", "classification plus connection and curvature suite")):
        construct_opts(common(sub.add_parser(name, help=helptext)))
    construct_opts(sub.add_parser("construct", help="emit an input document for a family"), required=True)

    v = common(sub.add_parser("verify", help="run the identity and reference-value suite"), input_opts=False)
    v.add_argument("--grid", default=None, help="comma-separated rationals (default -2,-1,-1/2,1/2,1,2)")
    v.add_argument("--seeds", type=int, default=100, help="number of random algebras")
    v.add_argument("--seed", type=int, default=0, help="first random seed")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--checks", default=None, help=f"comma-separated subset of: {', '.join(CHECK_NAMES)}")
    v.add_argument("--show", type=int, default=3, help="failures printed per check")
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if hasattr(args, "mode"):
        args.mode_given = args.mode is not None
        args.mode = args.mode or "exact"
    handlers = {"classify": cmd_classify, "curvature": cmd_curvature, "construct": cmd_construct,
                "verify": cmd_verify}
    try:
        return handlers[args.command](args, out)
    except NotALieAlgebra as exc:
        err.write(f"error: {exc}\n")
        return EXIT_NOT_LIE
    except (InputError, InvalidSpec) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except AcbError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()


__all__ = ["classification_report", "curvature_suite", "main", "build_parser"]
