"""Command line front end.

Verbs: count, verify, verify-bijection, whirl-tree, series, oeis, generate,
report.  Exit codes: 0 pass, 1 mismatch/failure, 2 usage, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .bijection import TABLE_ROWS, check_translation, delta_inv, row_patterns
from .generators import (
    OracleLimitError, gen_all_rectangulations, gen_class, whirl_tree,
    ORACLE_DEFAULT_CEILING,
)
from .geometry import render_ascii
from .oeis import (
    ROW_SEQUENCES, EXTRA_SEQUENCES, KNOWN_SEQUENCES, HttpTransport,
    SnapshotTransport, compare,
)
from .patterns import parse_pattern_set, pattern_profile, VORTEX_ROW
from .permutations import count_avoiders, generate_separable
from .series import (
    catalan, load_cases, solve_system, whirl_pipeline, QSeries,
)
from .verify import SUITES

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

VALID_ROWS = tuple(TABLE_ROWS) + (VORTEX_ROW,)


def read_config(path):
    """Simple key=value config file; '#' starts a comment."""
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            k, _, v = line.partition("=")
            out[k.strip()] = v.strip()
    return out


def make_transport(network, cache_dir=None):
    if network == "fetch":
        return HttpTransport(cache_dir=cache_dir)
    return SnapshotTransport()


def emit_table(rows, header, fmt, out=sys.stdout):
    if fmt == "json":
        out.write(json.dumps([dict(zip(header, r)) for r in rows], indent=2))
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out)
        w.writerow(header)
        w.writerows(rows)
    else:
        widths = [max(len(str(h)), max((len(str(r[i])) for r in rows), default=0))
                  for i, h in enumerate(header)]
        out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _row_counts(row, n_max, methods, ceiling):
    """(rows, agree) for cmd_count."""
    table = []
    per_n = {}

    def record(method, n, count):
        table.append((n, count, method))
        per_n.setdefault(n, {})[method] = count

    if "gf" in methods:
        if row == VORTEX_ROW:
            V = whirl_pipeline(n_max)["V"]
            for n in range(1, n_max + 1):
                record("gf", n, int(V.coeff(n)))
        else:
            case = {c.row: c for c in load_cases().values()}[row]
            F = solve_system(case, n_max)["F"]
            for n in range(1, n_max + 1):
                record("gf", n, int(F.coeff(n)))
    if "perm" in methods:
        if row == VORTEX_ROW:
            raise ValueError("the vortex row has no permutation route")
        _, vinc = row_patterns(row)
        for n in range(1, n_max + 1):
            record("perm", n, count_avoiders(n, vinc))
    if "geom" in methods:
        if row == VORTEX_ROW:
            raise ValueError("the vortex row has no bijective route")
        geo, _ = row_patterns(row)
        for n in range(1, n_max + 1):
            cnt = sum(1 for p in generate_separable(n)
                      if not (pattern_profile(delta_inv(p)) & geo))
            record("geom", n, cnt)
    if "oracle" in methods:
        avoid = parse_pattern_set(row)
        for n in range(1, n_max + 1):
            classes = gen_all_rectangulations(n, ceiling)
            cnt = sum(1 for d in classes.values()
                      if not (pattern_profile(d) & avoid))
            record("oracle", n, cnt)
    agree = all(len(set(v.values())) == 1 for v in per_n.values())
    table.sort(key=lambda r: (r[0], r[2]))
    return table, agree


def cmd_count(args):
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    try:
        table, agree = _row_counts(args.row, args.n_max, methods, args.oracle_ceiling)
    except OracleLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    emit_table(table, ["n", "count", "method"], args.format)
    if not agree:
        print("methods disagree", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    kwargs = {}
    if args.order is not None:
        kwargs_map = {
            "theorem1": {"order": args.order},
            "funceq": {"order_closed": args.order},
            "pipeline": {"order": args.order},
        }
    else:
        kwargs_map = {}
    if args.n is not None:
        kwargs_map = {**kwargs_map,
                      "translation": {"n_max": args.n},
                      "guillotine": {"n_max": args.n},
                      "nesting": {"n_max": args.n}}
    results = []
    ok = True
    for name in names:
        fn = SUITES[name]
        res = fn(**kwargs_map.get(name, {}))
        results.append(res)
        ok &= res["pass"]
    print(json.dumps(results, indent=2, default=str))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify_bijection(args):
    from .verify import suite_bijection, suite_translation
    res = suite_bijection(n_geo=min(args.n, 7), n_perm=args.n)
    results = [res]
    if args.row:
        n = args.n
        classes = [(delta_inv(p), p) for p in generate_separable(n)]
        ok, witness = check_translation(args.row, n, classes)
        results.append({"suite": f"translation:{args.row}", "pass": ok,
                        "details": witness or {"n": n}})
    print(json.dumps(results, indent=2, default=str))
    return EXIT_OK if all(r["pass"] for r in results) else EXIT_MISMATCH


def cmd_whirl_tree(args):
    levels = whirl_tree(args.depth)
    rows = []
    for k, lv in enumerate(levels):
        sigs = ";".join(f"{'.'.join(map(str, s))}x{c}"
                        for s, c in sorted(lv["signatures"].items()))
        rows.append((k, lv["count"], sigs if args.signatures else ""))
    header = ["depth", "count", "signatures"] if args.signatures else ["depth", "count", ""]
    emit_table([r[:3 if args.signatures else 2] for r in rows],
               header[:3 if args.signatures else 2], args.format)
    return EXIT_OK


def cmd_series(args):
    N = args.order
    if args.case is not None:
        case = load_cases()[args.case]
        sol = solve_system(case, N)
        rows = [(k, str(int(sol["F"].coeff(k)))) for k in range(N + 1)]
        emit_table(rows, ["k", "coefficient"], args.format)
        return EXIT_OK
    name = args.gf
    if name == "catalan":
        s = catalan(N)
    elif name == "F4":
        s = (QSeries.t(N) ** 5) * catalan(N) ** 4
    else:
        s = whirl_pipeline(N)[name]
    rows = [(k, str(s.coeff(k))) for k in range(N + 1)]
    emit_table(rows, ["k", "coefficient"], args.format)
    return EXIT_OK


def cmd_oeis(args):
    transport = make_transport(args.network, args.cache_dir)
    if args.sequence:
        seqs = [args.sequence]
    elif args.row:
        seqs = [ROW_SEQUENCES[args.row]]
    else:
        seqs = KNOWN_SEQUENCES
    from .verify import suite_oeis
    rep = suite_oeis(transport=transport)
    results = {k: v for k, v in rep["details"].items()
               if k in seqs or (isinstance(v, dict) and v.get("row") and
                                ROW_SEQUENCES.get(v["row"]) in seqs)}
    picked = {seq: rep["details"][seq] for seq in seqs if seq in rep["details"]}
    print(json.dumps(picked or results, indent=2, default=str))
    ok = all(v.get("match") for v in (picked or results).values())
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_generate(args):
    try:
        if args.avoid:
            avoid = parse_pattern_set(args.avoid)
            stream = gen_class(args.n, avoid, ceiling=args.oracle_ceiling)
        else:
            stream = iter(gen_all_rectangulations(args.n, args.oracle_ceiling).values())
    except OracleLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    count = 0
    try:
        for d in stream:
            count += 1
            if args.format == "jsonl":
                print(d.to_json())
            elif args.format == "ascii":
                print(render_ascii(d))
                print()
    except OracleLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if args.format == "count":
        print(count)
    return EXIT_OK


def cmd_report(args):
    from .report import write_report
    files = write_report(args.out, n_max=args.n_max, oracle_n=args.gallery_n)
    for f in files:
        print(f)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="rectlab",
        description="exact enumeration of pattern-avoiding rectangulations")
    ap.add_argument("--config", help="key=value config file")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count classes avoiding a table row's patterns")
    p.add_argument("--row", required=True, choices=VALID_ROWS)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--methods", default="gf,perm",
                   help="comma list from gf,perm,geom,oracle")
    p.add_argument("--format", default="text", choices=("text", "csv", "json"))
    p.add_argument("--oracle-ceiling", type=int, default=ORACLE_DEFAULT_CEILING)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", choices=("all",) + tuple(SUITES))
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-bijection", help="bijection and translation checks")
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--row", choices=tuple(TABLE_ROWS), default=None)
    p.set_defaults(func=cmd_verify_bijection)

    p = sub.add_parser("whirl-tree", help="generating tree levels")
    p.add_argument("--depth", type=int, default=9)
    p.add_argument("--signatures", action="store_true")
    p.add_argument("--format", default="text", choices=("text", "csv", "json"))
    p.set_defaults(func=cmd_whirl_tree)

    p = sub.add_parser("series", help="coefficient tables")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--case", type=int, choices=range(1, 11))
    g.add_argument("--gf", choices=("catalan", "V", "P", "W", "Z", "F4"))
    p.add_argument("--order", type=int, default=20)
    p.add_argument("--format", default="csv", choices=("text", "csv", "json"))
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("oeis", help="compare computed counts with OEIS snapshots")
    p.add_argument("--sequence", default=None)
    p.add_argument("--row", choices=tuple(ROW_SEQUENCES), default=None)
    p.add_argument("--network", default="offline", choices=("offline", "fetch"))
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=cmd_oeis)

    p = sub.add_parser("generate", help="stream class representatives")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--avoid", default=None,
                   help="pattern digits, e.g. 1234 or 1345678")
    p.add_argument("--format", default="jsonl", choices=("jsonl", "count", "ascii"))
    p.add_argument("--oracle-ceiling", type=int, default=ORACLE_DEFAULT_CEILING)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("report", help="write CSV tables and figures")
    p.add_argument("--out", required=True)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--gallery-n", type=int, default=6)
    p.set_defaults(func=cmd_report)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.config:
        cfg = read_config(args.config)
        for key, value in cfg.items():
            attr = key.replace("-", "_")
            if hasattr(args, attr) and getattr(args, attr) in (None, ""):
                setattr(args, attr, value)
    try:
        return args.func(args)
    except OracleLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
