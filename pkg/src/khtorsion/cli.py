"""Command-line front end.

Subcommands: `table` (integer Khovanov homology in the two-variable
grid), `certify` (order-two torsion certificates from the ladder
patterns), `grid` (the torsion-class grid of a monocircular diagram)
and `bound` (family lower bounds).  All JSON payloads carry
"schema": 1 and are deterministic.

Exit codes: 0 success or report, 2 parse/usage error, 3 hypothesis
rejection, 4 size guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import diagram as dg
from .homology import SizeGuardError, khovanov_table
from .ladders import check_hypotheses, detect_ladders, ladder_first_permutation
from .smoothing import signed_state, state_A
from .torsion import (HypothesisRejected, TorsionError, admissible_classes,
                      all_even_tuples, certify_torsion, family_lower_bound,
                      grid as torsion_grid, rational_torsion_exists)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_REJECTED = 3
EXIT_GUARD = 4


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}")


def _add_diagram_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pd", metavar="FILE", help="PD code file")
    g.add_argument("--pd-inline", metavar="STR", help="PD code string")
    g.add_argument("--pretzel", type=_int_list, metavar="A1,A2,...")
    g.add_argument("--monocircular", type=_int_list, metavar="H1,H2")
    g.add_argument("--braid3", type=_int_list, metavar="A1,A2,...")
    g.add_argument("--rational", type=_int_list, metavar="A1,A2,...")
    p.add_argument("--mirror", action="store_true",
                   help="mirror the diagram after construction")
    p.add_argument("--order", choices=("input", "ladder-first"),
                   default="input",
                   help="crossing order (ladder-first reorders along the "
                        "all-A ladders)")


def _build_diagram(args) -> dg.Diagram:
    if args.pd:
        with open(args.pd) as fh:
            d = dg.parse_pd(fh.read())
    elif args.pd_inline:
        d = dg.parse_pd(args.pd_inline)
    elif args.pretzel:
        d = dg.pretzel(args.pretzel)
    elif args.monocircular:
        if len(args.monocircular) != 2:
            raise dg.DiagramError("--monocircular takes exactly two heights")
        d = dg.monocircular(*args.monocircular)
    elif args.braid3:
        d = dg.braid3_closure(args.braid3)
    else:
        d = dg.rational(args.rational)
    if args.mirror:
        d = d.mirror()
    if args.order == "ladder-first":
        ladders = detect_ladders(d, 0)
        d = dg.reorder_crossings(d, ladder_first_permutation(d, ladders))
    return d


def _state_mask(d: dg.Diagram, spec: str) -> int:
    if spec == "sA":
        return state_A(d)
    if spec == "signed":
        if d.family_negative is not None:
            return d.family_negative
        return signed_state(d)
    try:
        return int(spec, 16)
    except ValueError:
        raise dg.DiagramError(
            f"--state must be sA, signed or a hex mask; got {spec!r}")


def cmd_table(args) -> int:
    d = _build_diagram(args)
    table = khovanov_table(d, limit=args.limit)
    if args.json:
        print(json.dumps(table.to_json(), indent=2, sort_keys=True))
    else:
        p, n, w = d.stats()
        print(f"# {d.n_total} crossings, p={p}, n={n}, w={w}")
        print(table.render_text())
    return EXIT_OK


def cmd_certify(args) -> int:
    d = _build_diagram(args)
    s0 = _state_mask(d, args.state)
    if args.all_even:
        report = check_hypotheses(d, s0)
        if report.route == "rejected":
            raise HypothesisRejected(report)
        if report.route == "theorem":
            heights = report.heights()
        else:
            heights = tuple(l.height for l in report.ladders
                            if l.periphery_number == 1)
        mus = all_even_tuples(heights)
    elif args.mu:
        mus = [tuple(args.mu)]
    else:
        raise dg.DiagramError("certify needs --mu or --all-even")
    out = []
    for mu in mus:
        cert = certify_torsion(d, s0, mu, verify_even=args.verify_even,
                               oracle=args.verify_oracle)
        out.append(cert)
    if args.json:
        print(json.dumps({"schema": 1,
                          "certificates": [c.to_json() for c in out]},
                         indent=2, sort_keys=True))
    else:
        for c in out:
            flags = ", ".join(f"{k}={v}" for k, v in sorted(c.flags.items()))
            print(f"mu={list(c.mu)} route={c.route} order=2 "
                  f"(i,j)=({c.i},{c.j}) (h,q)=({c.h},{c.q}) [{flags}]")
    return EXIT_OK


def cmd_grid(args) -> int:
    g = torsion_grid(args.h1, args.h2)
    if args.json:
        print(json.dumps(g.to_json(), indent=2, sort_keys=True))
    else:
        print(g.render_text())
    return EXIT_OK


def cmd_bound(args) -> int:
    if args.pretzel:
        family, params = "pretzel", args.pretzel
    elif args.braid3:
        family, params = "braid3", args.braid3
    else:
        family, params = "rational", args.rational
    report = family_lower_bound(family, params)
    payload = report.to_json()
    if report.applicable:
        if family == "pretzel":
            d = dg.pretzel(params)
        elif family == "braid3":
            d = dg.braid3_closure(params)
        else:
            d = dg.rational(params)
        s0 = d.family_negative if d.family_negative is not None else 0
        rep = check_hypotheses(d, s0)
        if rep.route != "rejected":
            if rep.route == "theorem":
                heights = rep.heights()
            else:
                heights = tuple(l.height for l in rep.ladders
                                if l.periphery_number == 1)
            classes = admissible_classes(heights)
            payload["admissible_classes"] = len(classes)
            payload["class_representatives"] = [list(c[0]) for c in classes]
    if family == "rational":
        payload["torsion_exists"] = rational_torsion_exists(params).to_json()
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        if report.applicable:
            print(f"{family}{tuple(report.params)}: at least {report.bound} "
                  "distinct Z2 torsion subgroups "
                  f"(product over qualifying entries {list(report.qualifying)})")
            if "admissible_classes" in payload:
                print(f"exhaustive admissible count: "
                      f"{payload['admissible_classes']} distinct classes")
        else:
            print(f"{family}{tuple(report.params)}: bound not applicable")
            for f in report.failures:
                print(" -", f)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="khtorsion",
        description="Integer Khovanov homology and explicit order-two "
                    "torsion certificates from ladder patterns.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="integer Khovanov homology table")
    _add_diagram_args(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--limit", type=int, default=18,
                   help="crossing guard for full enumeration (default 18)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("certify", help="order-two torsion certificates")
    _add_diagram_args(p)
    p.add_argument("--state", default="sA",
                   help="initial Kauffman state: sA (default), signed, or a "
                        "hex B-mask")
    p.add_argument("--mu", type=_int_list,
                   help="subset sizes, one per periphery-one ladder")
    p.add_argument("--all-even", action="store_true",
                   help="emit certificates for every all-even admissible "
                        "tuple")
    p.add_argument("--verify-oracle", action="store_true",
                   help="confirm the order through the integral exactness "
                        "oracle")
    p.add_argument("--verify-even", action="store_true",
                   help="brute-force the evenness of the certificate module")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("grid", help="torsion-class grid of D(h1,h2)")
    p.add_argument("h1", type=int)
    p.add_argument("h2", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("bound", help="family lower bounds on Z2 subgroups")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pretzel", type=_int_list, metavar="A1,A2,...")
    g.add_argument("--braid3", type=_int_list, metavar="A1,A2,...")
    g.add_argument("--rational", type=_int_list, metavar="A1,A2,...")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)
    return ap


_LIST_FLAGS = ("--pretzel", "--monocircular", "--braid3", "--rational", "--mu")


def _merge_list_flags(argv: list[str]) -> list[str]:
    """Fold `--pretzel -1,3` into `--pretzel=-1,3` so argparse does not
    mistake a leading-minus value for an option."""
    out = []
    k = 0
    while k < len(argv):
        tok = argv[k]
        if tok in _LIST_FLAGS and k + 1 < len(argv):
            out.append(f"{tok}={argv[k + 1]}")
            k += 2
        else:
            out.append(tok)
            k += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = ap.parse_args(_merge_list_flags(list(argv)))
    try:
        return args.func(args)
    except HypothesisRejected as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except SizeGuardError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (dg.DiagramError, TorsionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
