"""Command-line front end.

Exit codes: 0 success, 2 invalid or non-L-space input, 3 oracle mismatch, 4 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import cw_oracle, invariants
from .errors import LSKError
from .h_engine import (
    KnotHFunction,
    LinkHFunction2,
    b_invariants,
    blowdown_h,
    nu_plus,
    validate,
)
from .inputs import FAMILIES, load
from .invariants import beta_from_alexander
from .surgery_d import (
    canonical_residue,
    d_knot_surgery,
    d_link_surgery,
    format_rational,
    phi,
    spinc_labels,
)

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH, EXIT_USAGE = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, human: str, data):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(human)


def _need_link(obj, command) -> LinkHFunction2:
    if not isinstance(obj, LinkHFunction2):
        raise UsageError(f"{command} needs a two-component link")
    return obj


def _display_radius(obj, requested):
    if requested is not None:
        return requested
    if isinstance(obj, KnotHFunction):
        return max(2, obj.radius)
    return max(2, obj.stable_radius() + 1)


def cmd_hfun(args, obj):
    r = _display_radius(obj, args.window)
    report = validate(obj)
    kind = "h" if args.h else "H"
    if isinstance(obj, KnotHFunction):
        f = obj.h if args.h else obj
        svals = list(range(-r, r + 1))
        vals = [f(s) for s in svals]
        width = max(len(str(x)) for x in svals + vals)
        human = "\n".join([
            "s " + " ".join(str(s).rjust(width) for s in svals),
            kind + " " + " ".join(str(v).rjust(width) for v in vals),
            f"validation: {report}",
        ])
        data = {"type": "knot", "radius": r, "s": svals, kind: vals, "valid": report.ok}
    else:
        rows = obj.rows(r, kind)
        width = max(len(str(x)) for row in rows for x in row)
        width = max(width, len(str(-r)))
        header = " " * (width + 1) + " ".join(str(s).rjust(width) for s in range(-r, r + 1))
        lines = [f"{kind}(s1, s2): rows s2 = {r}..{-r}, columns s1 = {-r}..{r}", header]
        for s2, row in zip(range(r, -r - 1, -1), rows):
            lines.append(str(s2).rjust(width) + " " + " ".join(str(v).rjust(width) for v in row))
        lines.append(f"validation: {report}")
        human = "\n".join(lines)
        data = {"type": "link2", "radius": r, kind: rows, "valid": report.ok,
                "h_support": [[a, b, v] for (a, b), v in sorted(obj.h_support().items())]}
    _emit(args, human, data)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_dinv(args, obj):
    ps = args.p
    if isinstance(obj, KnotHFunction):
        if len(ps) != 1:
            raise UsageError("knot input takes a single framing -p P")
        p = ps[0]
        if p <= 0:
            raise UsageError("knot surgery d is only computed for positive framings")
        labels = args.label if args.label else sorted({canonical_residue(p, s) for s in range(p)})
        rows = [(i, d_knot_surgery(obj, p, i)) for i in labels]
        human = "\n".join(f"{i} {format_rational(d)}" for i, d in rows)
        data = [{"label": [i], "d": format_rational(d)} for i, d in rows]
        _emit(args, human, data)
        return EXIT_OK

    L = _need_link(obj, "dinv")
    if len(ps) != 2:
        raise UsageError("link input takes two framings -p P1 P2")
    p1, p2 = ps
    if args.label:
        if len(args.label) != 2:
            raise UsageError("--label takes two integers for a link")
        labels = [tuple(args.label)]
    else:
        labels = spinc_labels(p1, p2)
    status = EXIT_OK
    lines, data = [], []
    for label in labels:
        d = d_link_surgery(L, p1, p2, label)
        line = f"{label[0]} {label[1]} {format_rational(d)}"
        entry = {"label": list(label), "d": format_rational(d)}
        if args.oracle:
            diff = cw_oracle.oracle_difference(L, p1, p2, label)
            od = diff + phi(p1, label[0]) + phi(p2, label[1])
            entry["oracle"] = format_rational(od)
            if od != d:
                status = EXIT_MISMATCH
                line += f"  MISMATCH oracle={format_rational(od)}"
                print(f"oracle mismatch at {label}: formula {d}, oracle {od}", file=sys.stderr)
        lines.append(line)
        data.append(entry)
    _emit(args, "\n".join(lines), data)
    return status


def cmd_region(args, obj):
    region = invariants.lspace_region(_need_link(obj, "region"))
    _emit(args, region.describe(), region.to_json())
    return EXIT_OK


def cmd_casson(args, obj):
    if isinstance(obj, KnotHFunction):
        vals = {"+": invariants.casson_knot_pm1(obj, 1, args.lspace_knot),
                "-": invariants.casson_knot_pm1(obj, -1, args.lspace_knot)}
    else:
        vals = invariants.casson_table(obj)
    _emit(args, "\n".join(f"{k} {v}" for k, v in vals.items()), vals)
    return EXIT_OK


def cmd_beta(args, obj):
    L = _need_link(obj, "beta")
    beta = invariants.sato_levine(L)
    data = {"beta": beta}
    status = EXIT_OK
    if L.alexander_tilde is not None:
        alt = beta_from_alexander(L.alexander_tilde)
        data["beta_from_alexander"] = alt
        if alt != beta:
            print(f"Sato-Levine mismatch: h-function gives {beta}, Alexander polynomial gives {alt}",
                  file=sys.stderr)
            status = EXIT_MISMATCH
    _emit(args, str(beta), data)
    return status


def cmd_genus(args, obj):
    rep = invariants.genus_lower_bound(_need_link(obj, "genus"), args.cap)
    total = "none within cap" if rep.min_total is None else str(rep.min_total)
    excl = " ".join(f"({a},{b})" for a, b in sorted(rep.excluded)) or "none"
    _emit(args, f"genus lower bound: {total}\nexcluded: {excl}", rep.to_json())
    return EXIT_OK


def cmd_nuplus(args, obj):
    if isinstance(obj, KnotHFunction):
        v = nu_plus(obj)
        _emit(args, str(v), {"nu_plus": v})
        return EXIT_OK
    L = obj
    which = [args.blowdown] if args.blowdown else [1, 2]
    data, lines = {}, []
    b = b_invariants(L) if L.h(0, 0) > 0 else None
    for k in which:
        v = nu_plus(blowdown_h(L, k))
        data[f"blowdown{k}"] = v
        line = f"component {k} after blowing down component {3 - k}: nu+ = {v}"
        if b is not None:
            data[f"b{k}+1"] = b[k - 1] + 1
            line += f" (b{k} + 1 = {b[k - 1] + 1})"
        lines.append(line)
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


def cmd_oracle_check(args, obj):
    L = _need_link(obj, "oracle-check")
    pmax = args.pmax
    if pmax is None:
        try:
            pmax = int(os.environ.get("LSK_PMAX_DEFAULT", "3"))
        except ValueError:
            raise UsageError("LSK_PMAX_DEFAULT must be an integer") from None
    if pmax < 1:
        raise UsageError("--pmax must be positive")
    rep = cw_oracle.check_against_formula(L, pmax)
    lines = [f"cases: {rep.cases}", f"mismatches: {len(rep.mismatches)}"]
    for m in rep.mismatches[:20]:
        lines.append(f"  p=({m.p1},{m.p2}) label=({m.label[0]},{m.label[1]}) "
                     f"oracle={m.oracle} formula={format_rational(m.formula)} {m.note}")
    data = {"pmax": pmax, "cases": rep.cases,
            "mismatches": [{"p": [m.p1, m.p2], "label": list(m.label), "oracle": m.oracle,
                            "formula": format_rational(m.formula), "note": m.note}
                           for m in rep.mismatches]}
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_report(args, obj):
    data = invariants.report(_need_link(obj, "report"), args.cap)
    human = "\n".join([
        f"beta: {data['beta']}",
        "casson: " + " ".join(f"{k}={v}" for k, v in data["casson"].items()),
        f"lspace_region: {data['lspace_region']}",
        f"genus_lower_bound: {data['genus_lower_bound']}",
    ])
    _emit(args, human, data)
    return EXIT_OK


def cmd_cells(args, obj):
    L = _need_link(obj, "cells")
    p1, p2 = args.p
    cx = cw_oracle.build_complex(L, p1, p2, tuple(args.label), args.b)
    if args.json:
        print(json.dumps({"case": cx.case, "b": cx.b, "relative_d": cw_oracle.relative_d(cx),
                          "cells": [c._asdict() for c in cx.cells()]}, sort_keys=True))
    else:
        sys.stdout.write(cx.dump_tsv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lsk", description="d-invariants and H-functions of L-space knots and links")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--family", help=f"named input: {', '.join(FAMILIES)}")
        src.add_argument("--inline", metavar="JSON", help="input as a JSON string")
        src.add_argument("--file", metavar="PATH", help="input JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("hfun", cmd_hfun, "print the H-function table and validation verdict")
    p.add_argument("--window", type=int, help="display radius")
    p.add_argument("--h", action="store_true", help="print h = H - H_O instead of H")

    p = add("dinv", cmd_dinv, "d-invariants of integral surgery")
    p.add_argument("-p", type=int, nargs="+", required=True, metavar="P", help="framing(s)")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--label", type=int, nargs="+", metavar="I", help="Spin^c label")
    grp.add_argument("--all", action="store_true", help="all labels (default)")
    p.add_argument("--oracle", action="store_true", help="also recompute with the cell-complex oracle")

    add("region", cmd_region, "L-space surgery region")
    p = add("casson", cmd_casson, "Casson invariants of +-1 surgeries")
    p.add_argument("--lspace-knot", action="store_true",
                   help="assert the knot is an L-space knot (needed for knot input)")
    add("beta", cmd_beta, "Sato-Levine invariant")
    p = add("genus", cmd_genus, "four-genus lower bound")
    p.add_argument("--cap", type=int, default=4)
    p = add("nuplus", cmd_nuplus, "nu+ of a knot or of the blow-downs of a link")
    p.add_argument("--blowdown", type=int, choices=(1, 2))
    p = add("oracle-check", cmd_oracle_check, "compare closed formulas with the cell-complex oracle")
    p.add_argument("--pmax", type=int, default=None)
    p = add("report", cmd_report, "summary of link invariants")
    p.add_argument("--cap", type=int, default=4)
    p = add("cells", cmd_cells, "dump the truncated cell complex as TSV")
    p.add_argument("-p", type=int, nargs=2, required=True, metavar="P")
    p.add_argument("--label", type=int, nargs=2, default=[0, 0], metavar="I")
    p.add_argument("--b", type=int, default=None, help="truncation radius")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        obj = load(args.family, args.inline, args.file)
        return args.func(args, obj)
    except UsageError as exc:
        print(f"lsk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LSKError as exc:
        print(f"lsk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
