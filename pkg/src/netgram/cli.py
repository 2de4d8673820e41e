"""Command-line front end.

Exit status: 0 when every check passes, 1 when violations or law failures
were found, 2 for usage, parse, endpoint or enumeration-cap problems.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import definiteness as dfn
from .errors import EndpointMismatch, InvalidSubnetwork, NetgramError, NotInvertible, OracleInfeasible, ParseError
from .formats import Document, parse_document, render_report, serialize_hom, serialize_network
from .generators import GenConfig
from .hommodel import compose_homs, invert_hom, restrict_hom, validate_homomorphism
from .netmodel import Network, gluing_parts, induce_gluing, validate_network
from .relcore import DEFAULT_ORACLE_CAP, minimal_rel_function_oracle, is_minimal_rel_function, inverse
from .report import Violation, ViolationReport

OK, FOUND, ERROR = 0, 1, 2
LITERAL_ROW_CAP = 14


class UsageError(Exception):
    pass


def status(report: ViolationReport) -> int:
    if report.infeasible:
        return ERROR
    return FOUND if report.violations else OK


def _caps(args) -> tuple[int, int]:
    cap = args.max_enum
    if cap is None:
        cap = dfn.default_cap()
    if cap is None:
        return dfn.DEFAULT_ROW_CAP, DEFAULT_ORACLE_CAP
    return cap, cap


def _load(paths, extra=()) -> Document:
    """Parse every file into one document; later files may use earlier networks."""
    merged = Document()
    for path in [*extra, *paths]:
        text = Path(path).read_text(encoding="utf-8")
        try:
            doc = parse_document(text, merged.networks)
        except ParseError as exc:
            raise ParseError(exc.line, f"{path}: {exc.message}") from None
        merged.networks.update(doc.networks)
        merged.homs.update(doc.homs)
    return merged


def _pick_network(doc: Document, name: str | None) -> Network:
    if name:
        if name not in doc.networks:
            raise UsageError(f"no network named {name!r}")
        return doc.networks[name]
    if len(doc.networks) != 1:
        raise UsageError(f"file defines {len(doc.networks)} networks; choose one with --network")
    return next(iter(doc.networks.values()))


def _pick_hom(doc: Document, name: str | None):
    if name:
        if name not in doc.homs:
            raise UsageError(f"no hom named {name!r}")
        return doc.homs[name]
    if not doc.homs:
        raise UsageError("file defines no hom")
    return next(iter(doc.homs.values()))


def _emit(report: ViolationReport, fmt: str) -> int:
    sys.stdout.write(render_report(report, fmt))
    return status(report)


# -- oracle cross-checks ------------------------------------------------------------------


def _oracle_axioms(net: Network, cap: int) -> ViolationReport:
    parts = gluing_parts(net)
    out, infeasible = [], []
    for code, rel, letter in (("N3.H", parts.g_h, "A"), ("N3.K", parts.g_k, "C"),
                              ("N3.E-F", parts.g_e, "F"), ("N3.E-S", parts.g_e, "S")):
        f = net.fn(letter)
        for r in (rel, inverse(rel)):
            try:
                slow = minimal_rel_function_oracle(r, f, cap)
            except OracleInfeasible as exc:
                infeasible.append(("ORACLE.N3", f"{code}: {exc}"))
                continue
            if slow != is_minimal_rel_function(r, f):
                out.append(Violation("ORACLE.N3", (), f"{code}: fast and brute-force verdicts differ"))
    return ViolationReport.of(out, infeasible)


def _oracle_network(net: Network, level: str, row_cap: int, cap: int) -> ViolationReport:
    out, infeasible = [], []
    try:
        fast, slow = dfn.minimality_agreement(net, cap)
        if fast != slow:
            out.append(Violation("ORACLE.6", (), f"fast says {fast}, enumeration says {slow}"))
    except OracleInfeasible as exc:
        infeasible.append(("ORACLE.6", str(exc)))
    if level == "semi-definite":
        try:
            reduced = dfn.row_condition_witness(net, row_cap)
            literal = dfn.row_condition_literal(net, LITERAL_ROW_CAP)
            if (reduced is None) != (literal is None):
                out.append(Violation("ORACLE.8a", (), "reduced and literal row checks disagree"))
        except OracleInfeasible as exc:
            infeasible.append(("ORACLE.8a", str(exc)))
    return ViolationReport.of(out, infeasible)


# -- commands ---------------------------------------------------------------------------------


def cmd_check(args) -> int:
    doc = _load([args.file])
    net = _pick_network(doc, args.network)
    row_cap, cap = _caps(args)
    report = validate_network(net)
    valid = report.ok
    if args.oracle and valid:
        report = report.merged(_oracle_axioms(net, cap))
    if valid:
        if args.level == "semi-definite":
            report = report.merged(dfn.check_semidefinite(net, row_cap, cap))
        elif args.level == "definite":
            report = report.merged(dfn.check_definite(net, cap))
        if args.oracle and args.level != "axioms":
            report = report.merged(_oracle_network(net, args.level, row_cap, cap))
    code = _emit(report, args.format)
    print(f"{net.name}: {args.level}: {'ok' if code == OK else 'failed'}", file=sys.stderr)
    return code


def cmd_hom(args) -> int:
    if args.action == "check":
        doc = _load(args.files, args.net)
        if not doc.homs:
            raise UsageError("no hom blocks found")
        report = ViolationReport()
        for h in doc.homs.values():
            report = report.merged(validate_homomorphism(h))
        return _emit(report, args.format)
    if args.action == "compose":
        if len(args.files) != 2:
            raise UsageError("compose takes OUTER INNER")
        outer = _pick_hom(_load([args.files[0]], args.net), None)
        inner = _pick_hom(_load([args.files[1]], args.net), None)
        h = compose_homs(outer, inner)
        sys.stdout.write(serialize_hom(h, name=f"{outer.name}_{inner.name}",
                                       source=inner.source.name, target=outer.target.name))
        return OK
    if args.action == "invert":
        h = _pick_hom(_load(args.files, args.net), None)
        inv = invert_hom(h)
        sys.stdout.write(serialize_hom(inv, name=f"{h.name}_inv", source=h.target.name, target=h.source.name))
        return OK
    if len(args.files) != 2:
        raise UsageError("restrict takes HOMFILE SUBNETFILE")
    h = _pick_hom(_load([args.files[0]], args.net), None)
    sub = _pick_network(parse_document(Path(args.files[1]).read_text(encoding="utf-8")), None)
    r = restrict_hom(h, sub)
    sys.stdout.write(serialize_network(sub) + "\n" + serialize_hom(r, name=f"{h.name}_restricted",
                                                                    source=sub.name, target=h.target.name))
    return OK


def cmd_subnet(args) -> int:
    from .subnet import extract_subnetwork

    net = _pick_network(_load([args.file]), args.network)
    try:
        seed = [net.by_name[i] for i in args.ids]
    except KeyError as exc:
        raise UsageError(f"unknown identifier {exc.args[0]!r}") from None
    sys.stdout.write(serialize_network(extract_subnetwork(net, seed), f"{net.name}_sub"))
    return OK


def cmd_induce(args) -> int:
    net = _pick_network(_load([args.file]), args.network)
    pairs = []
    for item in args.pairs:
        a, sep, b = item.partition(",")
        if not sep or a not in net.by_name or b not in net.by_name:
            raise UsageError(f"bad facet pair {item!r}; expected k1,k2 with known facets")
        pairs.append((net.by_name[a], net.by_name[b]))
    try:
        g = induce_gluing(net, pairs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(serialize_network(net.with_gluing(g)))
    return OK


def cmd_laws(args) -> int:
    from .laws import run_law_suite

    size = args.max_size
    cfg = GenConfig(seed=args.seed, cases=args.cases)
    if size is not None:
        cfg = GenConfig(seed=args.seed, cases=args.cases, max_symbols=size, max_nodes=max(size - 1, 0),
                        max_hooks=size + 1, max_edges=size, max_facets=max(size - 1, 0))
    results = run_law_suite(cfg, args.law or None)
    failed = 0
    print(f"{'law':8s}\t{'cases':>5s}\t{'hyp':>5s}\t{'rate':>5s}\tresult")
    for r in results:
        print(f"{r.law:8s}\t{r.cases:5d}\t{r.satisfied:5d}\t{r.rate:5.2f}\t{'pass' if r.passed else 'FAIL'}")
        if not r.passed:
            failed += 1
            print(f"# counterexample for {r.law}:", file=sys.stderr)
            sys.stderr.write(r.counterexample)
    return FOUND if failed else OK


def cmd_certificate(args) -> int:
    doc = _load([args.file], args.net)
    h = _pick_hom(doc, args.hom)
    row_cap, cap = _caps(args)
    report = dfn.check_thm23_certificate(h, row_cap, cap)
    if args.oracle and report.ok:
        try:
            literal = dfn.part_count_literal(h.source, row_cap)
            if literal is not None:
                report = report.merged(ViolationReport.of(
                    [Violation("ORACLE.T23-a", tuple(sorted(literal)), "subset enumeration finds a failing set")]))
        except OracleInfeasible as exc:
            report = report.merged(ViolationReport(infeasible=(("ORACLE.T23-a", str(exc)),)))
    code = _emit(report, args.format)
    if code != OK:
        return code
    definite = dfn.check_definite(h.source, cap)
    if not definite.ok:
        sys.stdout.write(render_report(definite, args.format))
        print("definite: NOT confirmed (certificate passed but the source fails the definite check)")
        return FOUND
    print("definite: confirmed")
    return OK


# -- parser -------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="netgram", description="Check and transform networks and homomorphisms.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, oracle=True):
        p.add_argument("--format", choices=("tabular", "structured"), default="tabular")
        p.add_argument("--max-enum", type=int, default=None,
                       help="cap for brute-force enumerations (default: $NETGRAM_MAX_ENUM, else built-in caps)")
        if oracle:
            p.add_argument("--oracle", action="store_true", help="cross-check fast paths against brute force")

    p = sub.add_parser("check", help="validate a network at a chosen level")
    p.add_argument("file")
    p.add_argument("--level", choices=("axioms", "semi-definite", "definite"), default="axioms")
    p.add_argument("--network", help="network to check when the file holds several")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hom", help="check or transform homomorphisms")
    p.add_argument("action", choices=("check", "compose", "invert", "restrict"))
    p.add_argument("files", nargs="+")
    p.add_argument("--net", action="append", default=[], help="extra file with networks referenced by the homs")
    common(p, oracle=False)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("subnet", help="extract the subnetwork generated by some elements")
    p.add_argument("file")
    p.add_argument("ids", nargs="*")
    p.add_argument("--network")
    p.set_defaults(func=cmd_subnet)

    p = sub.add_parser("induce", help="install the gluing generated by facet pairs")
    p.add_argument("file")
    p.add_argument("pairs", nargs="*", metavar="K1,K2")
    p.add_argument("--network")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("laws", help="run the randomized law suite")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=None, help="bound on symbols per generated network")
    p.add_argument("--law", action="append", help="run only this law (repeatable)")
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("certificate", help="check the sufficient conditions for a definite source")
    p.add_argument("file")
    p.add_argument("--hom", help="hom to check when the file holds several")
    p.add_argument("--net", action="append", default=[])
    common(p)
    p.set_defaults(func=cmd_certificate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else OK
    try:
        return args.func(args)
    except (ParseError, UsageError, EndpointMismatch, NotInvertible, InvalidSubnetwork, OracleInfeasible) as exc:
        print(f"netgram: {exc}", file=sys.stderr)
        return ERROR
    except (OSError, NetgramError, KeyError, ValueError) as exc:
        print(f"netgram: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
