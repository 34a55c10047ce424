"""Command-line front end.

Exit statuses: 0 ok, 1 self-check failure, 2 oracle disagreement,
3 undecided orbit search, 64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from collections import Counter

from . import chainfill, grouppres, pretzel, selfcheck
from .chainfill import DEFAULT_BUDGET, Exceptional, FillingTuple, Hyperbolic, LinkKind, Undecided
from .classify import CASE_LABELS, UnknotError, classify, cross_check, hyperbolic_oracle, prop31_nonhyperbolic
from .extrat import format_slope, parse_slope

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_MISMATCH = 2
EXIT_UNDECIDED = 3
EXIT_USAGE = 64
EXIT_IO = 74

FORMAT_VERSION = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def _decision_json(d) -> dict:
    out = {"verdict": d.verdict}
    if isinstance(d, Exceptional):
        out["pattern"] = chainfill.format_pattern(d.pattern)
        out["witness"] = [str(op) for op in d.witness]
    elif isinstance(d, Hyperbolic):
        out["orbit"] = d.orbit_size
    else:
        out["states"] = d.states_explored
    return out


def _oracle_agrees(triple, decision):
    """True/False against the closed form; None when not comparable."""
    if isinstance(decision, Undecided) or pretzel.is_unknot(*triple):
        return None
    return isinstance(decision, Exceptional) == prop31_nonhyperbolic(*triple)


def output_record(triple, *, oracle=None, polys=False) -> dict:
    res = classify(*triple)
    record = {
        "format": FORMAT_VERSION,
        "input": list(triple),
        "knot": str(res.params),
        "case": res.case_label,
        "tori": res.tori_count,
        "pieces": [p.to_json() for p in res.pieces],
    }
    if oracle is not None:
        record["oracle"] = _decision_json(oracle)
        agrees = _oracle_agrees(triple, oracle)
        if agrees is not None:
            record["oracle"]["agrees"] = agrees
    if polys:
        record["alexander"] = pretzel.alexander(*triple).to_json()
        record["jones"] = pretzel.jones(*triple).to_json()
    return record


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(args) -> int:
    triple = (args.p, args.q, args.r)
    oracle = hyperbolic_oracle(*triple, budget=args.budget) if args.with_oracle else None
    if args.json:
        print(_dumps(output_record(triple, oracle=oracle, polys=args.polys)))
    else:
        res = classify(*triple)
        tori = "torus" if res.tori_count == 1 else "tori"
        print(f"{res.params}  (p,q,r) = {triple}")
        print(f"case {res.case_label}: {res.tori_count} JSJ {tori}")
        for piece in res.pieces:
            print(f"  - {piece.describe()}")
        if args.polys:
            print(f"alexander: {pretzel.alexander(*triple)}")
            print(f"jones: {pretzel.jones(*triple)}")
        if oracle is not None:
            print("oracle: " + _describe_decision(oracle))
    if oracle is None:
        return EXIT_OK
    if isinstance(oracle, Undecided):
        return EXIT_UNDECIDED
    if _oracle_agrees(triple, oracle) is False:
        print("oracle DISAGREES with the closed form", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _describe_decision(d) -> str:
    if isinstance(d, Exceptional):
        ops = " ".join(str(op) for op in d.witness) or "(none)"
        return (f"exceptional, pattern={chainfill.format_pattern(d.pattern)}, "
                f"witness length {len(d.witness)}: {ops}")
    if isinstance(d, Hyperbolic):
        return f"hyperbolic, orbit={d.orbit_size}"
    return f"undecided after {d.states_explored} states"


def _pieces_cell(res) -> str:
    return ";".join(p.short() for p in res.pieces)


def cmd_scan(args) -> int:
    bound = args.range
    report = cross_check(bound, args.budget, args.jobs) if args.check_oracle else None
    counts = Counter()
    rows = []
    for triple in selfcheck._cube(bound):
        res = classify(*triple)
        counts[res.case_label] += 1
        oracle = ""
        if report is not None:
            oracle = "unknot" if pretzel.is_unknot(*triple) else report.verdicts[triple].verdict
        rows.append([*triple, res.case_label, res.tori_count, _pieces_cell(res), oracle])

    if args.csv:
        try:
            with open(args.csv, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["p", "q", "r", "case", "tori", "pieces", "oracle"])
                writer.writerows(rows)
        except OSError as exc:
            print(f"cannot write {args.csv}: {exc}", file=sys.stderr)
            return EXIT_IO

    print(f"{len(rows)} triples in [-{bound},{bound}]^3")
    for label in CASE_LABELS:
        print(f"  {label}: {counts[label]}")
    if report is None:
        return EXIT_OK
    print(f"{len(report.mismatches)} mismatches, {len(report.undecided)} undecided "
          f"({report.checked} checked, {report.unknots_skipped} unknots skipped)")
    for t in report.mismatches:
        print(f"  mismatch at {t}")
    if report.mismatches:
        return EXIT_MISMATCH
    if report.undecided:
        return EXIT_UNDECIDED
    return EXIT_OK


_LINKS = {"5chain": LinkKind.CHAIN5, "4chain": LinkKind.CHAIN4, "3chain": LinkKind.CHAIN3}


def cmd_fill(args, parser) -> int:
    kind = _LINKS[args.link]
    try:
        slopes = tuple(parse_slope(s) for s in args.slopes.split(","))
        t = FillingTuple(kind, slopes)
    except (ValueError, TypeError) as exc:
        parser.error(str(exc))
    d = chainfill.orbit_decide(t, args.budget)
    if isinstance(d, Exceptional):
        ops = " ".join(str(op) for op in d.witness) or "-"
        print(f"EXCEPTIONAL {kind.link_name} {t} pattern={chainfill.format_pattern(d.pattern)} "
              f"witness_length={len(d.witness)} witness={ops} reached={d.reached}")
        return EXIT_OK
    if isinstance(d, Hyperbolic):
        print(f"HYPERBOLIC {kind.link_name} {t} orbit={d.orbit_size}")
        return EXIT_OK
    print(f"UNDECIDED {kind.link_name} {t} states={d.states_explored}")
    return EXIT_UNDECIDED


def cmd_polys(args) -> int:
    triple = (args.p, args.q, args.r)
    alex = pretzel.alexander(*triple)
    fox = grouppres.fox_alexander(grouppres.lin_presentation(*triple))
    agrees = "agrees" if fox.equal_up_to_units(alex) else f"DIFFERS: {fox}"
    jones = pretzel.jones(*triple)
    unknot = "yes" if pretzel.is_unknot(*triple) else "no"
    print(f"{pretzel.PretzelParams(*triple)}")
    print(f"alexander: {alex} (fox: {agrees})")
    print(f"jones: {jones} (unknot: {unknot})")
    return EXIT_OK if fox.equal_up_to_units(alex) else EXIT_MISMATCH


def cmd_group(args) -> int:
    triple = (args.p, args.q, args.r)
    for label, build in (("knot group", grouppres.lin_presentation),
                         ("0-surgery", grouppres.zero_surgery_presentation),
                         ("cut manifold", grouppres.cut_manifold_presentation),
                         ("5-chain filling", grouppres.xpqr_presentation)):
        P = build(*triple)
        print(f"{label}: {P}")
        print(f"{label} H1: {grouppres.abelian_invariants(P)}")
    names = ("X+", "Y+", "X-", "Y-")
    for name, w in zip(names, grouppres.peripheral_words(*triple)):
        print(f"peripheral {name}: {w}")
    same = grouppres.relabel_xpqr_to_cut(*triple) == grouppres.cut_manifold_presentation(*triple).relators[0]
    print(f"relabel A->b, C->a matches cut-manifold relator: {'yes' if same else 'no'}")
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    results = selfcheck.run_all(args.range, args.budget, args.jobs)
    for res in results:
        print(res.line())
    undecided = sum(r.undecided for r in results)
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} sections passed, {undecided} undecided")
    if undecided:
        return EXIT_UNDECIDED
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pretzeljsj",
                     description="JSJ decompositions of 0-surgeries on genus-one pretzel knots.")
    sub = parser.add_subparsers(dest="command", required=True)

    def triple(p):
        p.add_argument("p", type=int)
        p.add_argument("q", type=int)
        p.add_argument("r", type=int)

    c = sub.add_parser("classify", help="JSJ decomposition for one triple")
    triple(c)
    c.add_argument("--json", action="store_true", help="one-line structured record")
    c.add_argument("--with-oracle", action="store_true", help="also run the 5-chain orbit search")
    c.add_argument("--polys", action="store_true", help="include Alexander and Jones polynomials")
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    s = sub.add_parser("scan", help="classify every triple in a cube")
    s.add_argument("--range", type=int, required=True, metavar="B")
    s.add_argument("--check-oracle", action="store_true")
    s.add_argument("--csv", metavar="PATH")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--jobs", type=int, default=1)

    f = sub.add_parser("fill", help="decide one chain-link filling")
    f.add_argument("--link", choices=sorted(_LINKS), required=True)
    f.add_argument("--slopes", required=True, help="comma separated: a/b, n, inf, phi")
    f.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    for name, help_ in (("polys", "Alexander and Jones polynomials"),
                        ("group", "presentations and abelian invariants")):
        triple(sub.add_parser(name, help=help_))

    k = sub.add_parser("selfcheck", help="run the verification suite")
    k.add_argument("--range", type=int, default=None, help="override every scan bound")
    k.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    k.add_argument("--jobs", type=int, default=1)
    return parser


def _glue_negative_values(argv):
    # "--slopes -2,1/3" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--slopes":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--slopes={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(sys.argv[1:] if argv is None else argv))
    for name in ("budget", "range", "jobs"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            parser.error(f"--{name} must be >= 1")
    if args.command == "classify":
        return cmd_classify(args)
    if args.command == "scan":
        return cmd_scan(args)
    if args.command == "fill":
        return cmd_fill(args, parser)
    if args.command == "polys":
        return cmd_polys(args)
    if args.command == "group":
        return cmd_group(args)
    return cmd_selfcheck(args)


if __name__ == "__main__":
    sys.exit(main())
