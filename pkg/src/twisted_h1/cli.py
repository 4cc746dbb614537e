"""Command line front end.

Exit codes: 0 success, 2 argument errors, 3 domain errors (incompatible
orders, unsupported automorphisms, oversized enumerations, ...), 4
verification mismatches.  Rational coordinates are always printed as p/q
strings; identical queries produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import tables
from .alcove import (RationalCoweight, classify_automorphisms,
                     enumerate_alcove_points, enumerate_kac_coordinates,
                     kac_classes, parahoric_descriptor,
                     reduce_to_alcove_with_witness)
from .bundles import (all_bundle_labels, component_count, covering_exists,
                      covering_from_json, local_type_sets)
from .cohomology import h1_group, h1_torus, representative_coweight
from .errors import DomainError
from .folding import diagram_automorphism
from .oracle import brute_force_h1_group, brute_force_h1_torus
from .roots import Isogeny, SimpleType, build_root_datum, datum_to_json

LABEL_LISTING_CAP = 200


def _frac(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def _parse_fractions(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational vector {text!r}: {exc}")


def _parse_indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}: {exc}")


def _add_datum_args(p: argparse.ArgumentParser, with_order=True):
    p.add_argument("--type", required=True, choices=list("ABCDEFG"), help="simple family")
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--isogeny", default="sc", help="sc or adjoint")
    if with_order:
        p.add_argument("--tau-order", dest="tau_order", type=int, default=1,
                       help="order of the diagram automorphism (1, 2 or 3)")
    p.add_argument("--dump-datum", action="store_true",
                   help="print the canonical JSON of the root datum and exit")


def _add_format(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")


def _datum_of(args):
    st = SimpleType(args.type, args.rank)
    return build_root_datum(st, Isogeny.parse(args.isogeny))


def _automorphism_of(args):
    return diagram_automorphism(_datum_of(args), args.tau_order)


def _emit(args, doc: dict, text_lines, csv_rows):
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in csv_rows:
            writer.writerow(row)
        sys.stdout.write(buf.getvalue())
    else:
        for line in text_lines:
            print(line)


def _query_doc(args, **extra):
    doc = {"type": args.type, "rank": args.rank}
    if hasattr(args, "isogeny"):
        doc["isogeny"] = Isogeny.parse(args.isogeny).value
    if hasattr(args, "tau_order"):
        doc["tau_order"] = args.tau_order
    doc.update(extra)
    return doc


def _class_docs(cs):
    out = []
    for i in range(cs.cardinality):
        elem = representative_coweight(cs, i)
        out.append({
            "coweight": [_frac(c) for c in cs.classes[i].coords],
            "lambda": list(elem.lam_coords),
            "lambda_ambient": list(elem.lam_ambient),
            "m": elem.m,
        })
    return out


def _cmd_h1(args) -> int:
    da = _automorphism_of(args)
    cs = h1_group(da, args.m, args.method)
    if args.verify:
        bf = brute_force_h1_group(da, args.m)
        if bf.count != cs.cardinality:
            print(f"verification mismatch: enumerated {bf.count}, computed {cs.cardinality}",
                  file=sys.stderr)
            return 4
    classes = _class_docs(cs)
    doc = {"query": _query_doc(args, m=args.m), "method": cs.provenance,
           "cardinality": cs.cardinality, "caveat": cs.caveat, "classes": classes,
           "verified": bool(args.verify)}
    lines = [f"H1 classes for {args.type}{args.rank} ({doc['query']['isogeny']}), "
             f"tau order {args.tau_order}, m = {args.m} [{cs.provenance}]",
             f"cardinality: {cs.cardinality}"]
    for i, c in enumerate(classes):
        lines.append(f"  class {i}: lambda/m = ({', '.join(c['coweight'])}); "
                     f"lambda = {tuple(c['lambda_ambient'])}")
    if args.verify:
        lines.append("verified against brute-force enumeration")
    rows = [("index", "coweight", "lambda", "lambda_ambient", "m")]
    rows += [(i, " ".join(c["coweight"]), " ".join(map(str, c["lambda"])),
              " ".join(map(str, c["lambda_ambient"])), c["m"]) for i, c in enumerate(classes)]
    _emit(args, doc, lines, rows)
    return 0


def _cmd_h1_torus(args) -> int:
    da = _automorphism_of(args)
    group = h1_torus(da, args.m)
    if args.verify:
        bf = brute_force_h1_torus(da, args.m)
        if bf.count != group.cardinality:
            print(f"verification mismatch: enumerated {bf.count}, computed {group.cardinality}",
                  file=sys.stderr)
            return 4
    doc = {"query": _query_doc(args, m=args.m),
           "invariant_factors": list(group.invariant_factors),
           "cardinality": group.cardinality,
           "generators_ambient": [list(v) for v in group.lift_basis],
           "verified": bool(args.verify)}
    factors = " x ".join(f"Z/{d}" for d in group.invariant_factors) or "trivial"
    lines = [f"torus H1 for {args.type}{args.rank} ({doc['query']['isogeny']}), "
             f"tau order {args.tau_order}, m = {args.m}",
             f"invariant factors: {factors}",
             f"cardinality: {group.cardinality}"]
    rows = [("invariant_factor",)] + [(d,) for d in group.invariant_factors]
    _emit(args, doc, lines, rows)
    return 0


def _cmd_alcove(args) -> int:
    da = _automorphism_of(args)
    points = enumerate_alcove_points(da, args.m)
    doc = {"query": _query_doc(args, m=args.m), "count": len(points),
           "points": [[_frac(c) for c in p.coords] for p in points]}
    lines = [f"alcove points for {args.type}{args.rank}, tau order {args.tau_order}, "
             f"m = {args.m}: {len(points)}"]
    lines += ["  (" + ", ".join(_frac(c) for c in p.coords) + ")" for p in points]
    rows = [("index", "point")] + [(i, " ".join(_frac(c) for c in p.coords))
                                   for i, p in enumerate(points)]
    _emit(args, doc, lines, rows)
    return 0


def _cmd_kac(args) -> int:
    da = _automorphism_of(args)
    if args.classes:
        tuples = [kc.s for kc in kac_classes(da, args.m)]
        kind = "classes"
    else:
        tuples = [kc.s for kc in enumerate_kac_coordinates(da, args.m)]
        kind = "coordinates"
    doc = {"query": _query_doc(args, m=args.m), "kind": kind,
           "count": len(tuples), "tuples": [list(s) for s in tuples]}
    lines = [f"Kac {kind} for {args.type}{args.rank}, tau order {args.tau_order}, "
             f"m = {args.m}: {len(tuples)}"]
    lines += ["  " + str(s) for s in tuples]
    rows = [("index", "tuple")] + [(i, " ".join(map(str, s))) for i, s in enumerate(tuples)]
    _emit(args, doc, lines, rows)
    return 0


def _cmd_classify(args) -> int:
    da = _automorphism_of(args)
    descs = classify_automorphisms(da, args.m)
    doc = {"query": _query_doc(args, m=args.m), "count": len(descs),
           "descriptors": [{
               "kac": list(d.kac) if d.kac is not None else None,
               "lambda": list(d.lam_coords),
               "lambda_ambient": list(d.lam_ambient),
               "m": d.m,
               "tau_order": d.tau_order,
           } for d in descs]}
    lines = [f"order-{args.m} automorphism classes over the order-{args.tau_order} "
             f"diagram automorphism of {args.type}{args.rank}: {len(descs)}"]
    for d in descs:
        lines.append(f"  kac={d.kac} lambda={d.lam_ambient} (sigma = tau o Ad_t, "
                     f"t = zeta_{d.m}^lambda)")
    rows = [("index", "kac", "lambda_ambient")]
    rows += [(i, " ".join(map(str, d.kac)), " ".join(map(str, d.lam_ambient)))
             for i, d in enumerate(descs)]
    _emit(args, doc, lines, rows)
    return 0


def _cmd_reduce(args) -> int:
    da = _automorphism_of(args)
    x = RationalCoweight(args.point)
    red = reduce_to_alcove_with_witness(da, x)
    doc = {"query": _query_doc(args), "point": [_frac(c) for c in args.point],
           "reduced": [_frac(c) for c in red.point.coords],
           "weyl_witness": [list(row) for row in red.weyl],
           "translation_witness": list(red.translation)}
    lines = [f"reduce ({', '.join(_frac(c) for c in args.point)}) -> "
             f"({', '.join(_frac(c) for c in red.point.coords)})",
             f"weyl witness rows: {[list(r) for r in red.weyl]}",
             f"translation witness: {list(red.translation)}"]
    rows = [("point", "reduced"),
            (" ".join(_frac(c) for c in args.point),
             " ".join(_frac(c) for c in red.point.coords))]
    _emit(args, doc, lines, rows)
    return 0


def _cmd_parahoric(args) -> int:
    da = _automorphism_of(args)
    pd = parahoric_descriptor(da, RationalCoweight(args.theta))
    d = pd.descriptor
    doc = {"query": _query_doc(args), "theta": [_frac(c) for c in args.theta],
           "m_min": pd.m_min, "lambda": list(pd.lam),
           "descriptor": {"lambda": list(d.lam_coords),
                          "lambda_ambient": list(d.lam_ambient),
                          "m": d.m, "tau_order": d.tau_order}}
    lines = [f"theta = ({', '.join(_frac(c) for c in args.theta)})",
             f"m_min = {pd.m_min}",
             f"lambda = {list(pd.lam)}",
             f"canonical descriptor: sigma = tau o Ad_t, t = zeta_{d.m}^{tuple(d.lam_ambient)}"]
    rows = [("m_min", "lambda", "descriptor_lambda_ambient"),
            (pd.m_min, " ".join(map(str, pd.lam)), " ".join(map(str, d.lam_ambient)))]
    _emit(args, doc, lines, rows)
    return 0


def _cmd_components(args) -> int:
    with open(args.covering, "r", encoding="utf-8") as fh:
        cd = covering_from_json(fh.read())
    iso = Isogeny.parse(args.isogeny)
    count = component_count(cd, iso)
    sets = local_type_sets(cd, iso)
    doc = {"genus": cd.genus, "component_count": count,
           "orbit_class_counts": [s.cardinality for s in sets]}
    lines = [f"component count: {count}",
             "per-orbit class counts: " + ", ".join(str(s.cardinality) for s in sets)]
    if count <= LABEL_LISTING_CAP:
        labels = all_bundle_labels(cd, iso)
        doc["labels"] = list(labels)
        lines += ["  " + lab for lab in labels]
    else:
        doc["labels"] = None
        lines.append(f"(labels omitted: more than {LABEL_LISTING_CAP} components)")
    rows = [("component_count",), (count,)]
    _emit(args, doc, lines, rows)
    return 0


def _cmd_covering_exists(args) -> int:
    check = covering_exists(args.genus, args.indices)
    doc = {"genus": args.genus, "indices": list(args.indices),
           "exists": check.exists, "reason": check.reason}
    lines = [f"covering exists: {str(check.exists).lower()} ({check.reason})"]
    rows = [("exists", "reason"), (str(check.exists).lower(), check.reason)]
    _emit(args, doc, lines, rows)
    return 0


def _cmd_paper_tables(args) -> int:
    results = tables.run_reference_checks()
    failures = [r for r in results if not r.ok]
    doc = {"checks": [{"id": r.check_id, "criterion": r.criterion, "ok": r.ok,
                       "expected": str(r.expected), "computed": str(r.computed),
                       "source": r.source, "note": r.note} for r in results],
          "passed": len(results) - len(failures), "failed": len(failures)}
    lines = []
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        line = f"{status} [{r.check_id}] {r.source}: expected {r.expected}, computed {r.computed}"
        if r.note and not r.ok:
            line += f"  ({r.note})"
        lines.append(line)
    lines.append(f"{len(results) - len(failures)} passed, {len(failures)} failed")
    rows = [("id", "ok", "expected", "computed")]
    rows += [(r.check_id, r.ok, str(r.expected), str(r.computed)) for r in results]
    _emit(args, doc, lines, rows)
    return 0 if not failures else 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twisted-h1",
        description="Exact cohomology class sets, alcove and Kac coordinate "
                    "classifications, and equivariant bundle component counts "
                    "for simple algebraic groups with cyclic twists.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("h1", help="group cohomology class set")
    _add_datum_args(p)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--method", choices=("auto", "orbit", "alcove", "kac"), default="auto")
    p.add_argument("--verify", action="store_true",
                   help="cross-check against brute-force cocycle enumeration")
    _add_format(p)
    p.set_defaults(func=_cmd_h1)

    p = sub.add_parser("h1-torus", help="torus cohomology invariant factors")
    _add_datum_args(p)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--verify", action="store_true")
    _add_format(p)
    p.set_defaults(func=_cmd_h1_torus)

    p = sub.add_parser("alcove", help="rational points of the fundamental alcove")
    _add_datum_args(p)
    p.add_argument("--m", required=True, type=int)
    _add_format(p)
    p.set_defaults(func=_cmd_alcove)

    p = sub.add_parser("kac", help="Kac coordinate tuples or classes")
    _add_datum_args(p)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--classes", action="store_true",
                   help="quotient by the affine diagram symmetries (adjoint only)")
    _add_format(p)
    p.set_defaults(func=_cmd_kac)

    p = sub.add_parser("classify-autos", help="finite-order automorphism descriptors")
    _add_datum_args(p)
    p.add_argument("--m", required=True, type=int)
    _add_format(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("reduce", help="reduce a rational coweight into the alcove")
    _add_datum_args(p)
    p.add_argument("--point", required=True, type=_parse_fractions,
                   help="comma-separated rationals in the invariant basis, e.g. 1/2,3/4")
    _add_format(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("parahoric", help="minimal (m, lambda) descriptor of a rational point")
    _add_datum_args(p)
    p.add_argument("--theta", required=True, type=_parse_fractions)
    _add_format(p)
    p.set_defaults(func=_cmd_parahoric)

    p = sub.add_parser("components", help="component count of the bundle moduli")
    p.add_argument("--covering", required=True, help="path to a covering JSON document")
    p.add_argument("--isogeny", default="sc")
    _add_format(p)
    p.set_defaults(func=_cmd_components)

    p = sub.add_parser("covering-exists", help="covering existence with prescribed indices")
    p.add_argument("--genus", required=True, type=int)
    p.add_argument("--indices", required=True, type=_parse_indices)
    _add_format(p)
    p.set_defaults(func=_cmd_covering_exists)

    p = sub.add_parser("paper-tables",
                       help="recompute every embedded reference table and count")
    _add_format(p)
    p.set_defaults(func=_cmd_paper_tables)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "dump_datum", False):
            print(datum_to_json(_datum_of(args)))
            return 0
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
