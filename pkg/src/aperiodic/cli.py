"""Command-line surface: tables, closure reports, families, optimization,
search, and the reversal/product experiments.

Every command renders a list of row records as aligned text, JSON or CSV;
values are exact decimal strings (never scientific notation).  The exit code
is 0 only when every requested check passed; failures are listed in the
output so scripts can consume them.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from . import combinatorics as comb
from .automata import is_minimal, parse_dfa, product_dfa, transition_semigroup
from .experiments import family_products, reversal_experiment, reversal_record
from .families import (
    build_family,
    parse_distribution,
    parse_structure,
)
from .optimizer import max_sctree, max_unitary, UiDpTable, SctiDpTable
from .rng import SplitMix64
from .search import max_aperiodic
from .semigroups import DEFAULT_ELEMENT_BUDGET, is_aperiodic

TABLE_CLASSES = (
    "monotonic",
    "part-mon",
    "near-mon",
    "finite",
    "j-trivial",
    "r-trivial",
    "comp-unitary-1",
    "sc-tree-1",
    "aperiodic",
)

UI_CAP = 1000
SCTI_CAP = 500
SEARCH_CAP = 4
TABLE_SEARCH_PRODUCTS = 200_000
TABLE_SEARCH_SECONDS = 15.0


def default_budget() -> int:
    raw = os.environ.get("APERIODIC_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise SystemExit(f"APERIODIC_BUDGET must be an integer, got {raw!r}")
    return DEFAULT_ELEMENT_BUDGET


def _render(rows, fmt: str, columns) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in columns})
        return buf.getvalue()
    # text: aligned columns
    table = [[str("" if row.get(c) is None else row.get(c)) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in table)) if table else len(c)
              for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for r in table:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _emit(args, rows, columns, failures, extra=None):
    if args.format == "json":
        payload = {"command": args.command, "rows": rows, "failures": failures}
        if extra:
            payload.update(extra)
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(_render(rows, args.format, columns))
        for failure in failures:
            sys.stderr.write(f"FAIL: {failure}\n")
    return 1 if failures else 0


def _table_value(cls: str, n: int, ui_table, scti_table):
    """(value, witness, provenance) for one table cell; '-' and '?' literal."""
    if cls == "monotonic":
        return str(comb.monotonic_size(n)), None, "formula"
    if cls == "part-mon":
        if n < 2:
            return "-", None, "formula"
        return str(comb.partially_monotonic_size(n)), None, "formula"
    if cls == "near-mon":
        if n < 2:
            return "-", None, "formula"
        return str(comb.nearly_monotonic_size(n)), None, "formula"
    if cls == "finite":
        return str(comb.finite_language_size(n)), None, "formula"
    if cls == "j-trivial":
        return str(comb.j_trivial_size(n)), None, "formula"
    if cls == "r-trivial":
        return str(comb.r_trivial_size(n)), None, "formula"
    if cls == "comp-unitary-1":
        if n < 2:
            return "-", None, "dp"
        if n > UI_CAP:
            return "?", None, "dp"
        return str(ui_table.values[n]), str(ui_table.witness(n)), "dp"
    if cls == "sc-tree-1":
        if n < 2:
            return "-", None, "dp"
        if n > SCTI_CAP:
            return "?", None, "dp"
        return str(scti_table.value(n)), str(scti_table.witness(n)), "dp"
    if cls == "aperiodic":
        if n > SEARCH_CAP:
            return "?", None, "search"
        result = max_aperiodic(n, max_products=TABLE_SEARCH_PRODUCTS,
                               max_seconds=TABLE_SEARCH_SECONDS)
        return str(result.size), None, "search"
    raise ValueError(f"unknown class {cls!r}")


def cmd_table(args) -> int:
    if not (1 <= args.min <= args.max <= UI_CAP):
        raise SystemExit(f"need 1 <= min <= max <= {UI_CAP}")
    classes = TABLE_CLASSES if args.classes is None else tuple(args.classes.split(","))
    for cls in classes:
        if cls not in TABLE_CLASSES:
            raise SystemExit(f"unknown class {cls!r}; choose from {', '.join(TABLE_CLASSES)}")
    ui_table = UiDpTable.compute(min(args.max, UI_CAP)) if "comp-unitary-1" in classes else None
    scti_table = (SctiDpTable.compute(min(args.max, SCTI_CAP))
                  if "sc-tree-1" in classes else None)
    rows = []
    failures = []
    for n in range(args.min, args.max + 1):
        for cls in classes:
            try:
                value, witness, provenance = _table_value(cls, n, ui_table, scti_table)
            except Exception as exc:  # report per-row, keep going
                rows.append({"class": cls, "n": n, "value": "?", "witness": None,
                             "provenance": "error"})
                failures.append(f"{cls} n={n}: {exc}")
                continue
            rows.append({"class": cls, "n": n, "value": value,
                         "witness": witness, "provenance": provenance})
    return _emit(args, rows, ("class", "n", "value", "witness", "provenance"), failures)


def cmd_closure(args) -> int:
    with open(args.dfa, encoding="utf-8") as fh:
        d = parse_dfa(fh.read())
    s = transition_semigroup(d, element_budget=args.budget or default_budget())
    failures = []
    if s.truncated:
        failures.append(f"closure truncated at {len(s)} elements (budget)")
        aperiodic = None
    else:
        aperiodic = is_aperiodic(s)
    report = is_minimal(d)
    row = {
        "file": args.dfa,
        "n": d.n,
        "letters": len(d.alphabet),
        "size": len(s),
        "truncated": s.truncated,
        "aperiodic": aperiodic,
        "minimal": report.minimal,
        "witness": (f"unreachable state {report.unreachable}" if report.unreachable is not None
                    else f"equivalent pair {report.equivalent}" if report.equivalent else None),
        "provenance": "closure",
    }
    rows = [row]
    if args.elements and not s.truncated:
        for t in s.elements:
            rows.append({"file": args.dfa, "element": str(t)})
    columns = ("file", "n", "letters", "size", "truncated", "aperiodic",
               "minimal", "witness", "element")
    return _emit(args, rows, columns, failures)


def _parse_family_spec(kind: str, spec: str):
    if kind in ("u", "ui"):
        return parse_distribution(spec)
    return parse_structure(spec)


def cmd_family(args) -> int:
    spec = _parse_family_spec(args.kind, args.spec)
    failures = []
    row = {"family": args.kind, "spec": str(spec), "n": spec.n}
    if args.emit_dfa:
        d = build_family(args.kind, spec)
        text = d.to_text()
        if args.emit_dfa == "-":
            sys.stdout.write(text)
        else:
            with open(args.emit_dfa, "w", encoding="utf-8") as fh:
                fh.write(text)
        row["emitted"] = args.emit_dfa
        row["provenance"] = "closure"
    if args.size or args.verify or not args.emit_dfa:
        if args.kind in ("u", "ui"):
            value = comb.unitary_family_size(spec)
            if args.kind == "u":
                value -= 1  # the identity is not a product of unitaries
        else:
            value = comb.sctree_size(spec)
            if args.kind == "sct":
                value -= 1
        row["value"] = str(value)
        row["provenance"] = "formula"
    if args.verify:
        d = build_family(args.kind, spec)
        s = transition_semigroup(d, element_budget=args.budget or default_budget())
        if s.truncated:
            failures.append("closure truncated; raise the budget")
        row["closure"] = len(s)
        row["aperiodic"] = None if s.truncated else is_aperiodic(s)
        row["minimal"] = is_minimal(d).minimal
        row["provenance"] = "closure"
        if not s.truncated and int(row["value"]) != len(s):
            failures.append(f"formula {row['value']} != closure {len(s)}")
    columns = ("family", "spec", "n", "value", "closure", "aperiodic",
               "minimal", "emitted", "provenance")
    return _emit(args, [row], columns, failures)


def cmd_optimize(args) -> int:
    if args.kind == "ui":
        if args.n > UI_CAP:
            raise SystemExit(f"optimize ui is capped at n = {UI_CAP}")
        t0 = time.monotonic()
        value, witness = max_unitary(args.n)
    else:
        if args.n > SCTI_CAP:
            raise SystemExit(f"optimize scti is capped at n = {SCTI_CAP}")
        t0 = time.monotonic()
        value, witness = max_sctree(args.n)
    elapsed = time.monotonic() - t0
    row = {
        "kind": args.kind,
        "n": args.n,
        "value": str(value),
        "witness": str(witness),
        "provenance": "dp",
        "seconds": round(elapsed, 3),
    }
    return _emit(args, [row],
                 ("kind", "n", "value", "witness", "provenance", "seconds"), [])


def cmd_search(args) -> int:
    t0 = time.monotonic()
    result = max_aperiodic(
        args.n,
        max_products=args.max_products,
        max_seconds=args.max_seconds,
        seed_with_family=not args.no_seed,
        checkpoint_path=args.checkpoint,
    )
    row = {
        "n": args.n,
        "value": str(result.size),
        "witness": " ".join(str(g) for g in result.generators),
        "exhaustive": result.exhaustive,
        "distinct_maxima": result.distinct_maxima,
        "products": result.products_used,
        "provenance": "search",
        "seconds": round(time.monotonic() - t0, 3),
    }
    return _emit(args, [row],
                 ("n", "value", "witness", "exhaustive", "distinct_maxima",
                  "products", "provenance", "seconds"), [])


def cmd_reversal(args) -> int:
    failures = []
    rows = []
    if args.dfa:
        with open(args.dfa, encoding="utf-8") as fh:
            d = parse_dfa(fh.read())
        records = [reversal_record(d, SplitMix64(args.seed), args.words)]
    else:
        ns = (args.n,) if args.n else (2, 3, 4, 5, 6)
        records = reversal_experiment(args.seed, args.count, ns, args.words)
    for i, rec in enumerate(records):
        rows.append({
            "instance": i,
            "n": rec.n,
            "letters": rec.letters,
            "complexity": rec.complexity,
            "bound": rec.bound,
            "within_bound": rec.within_bound,
            "complement_identity": rec.complement_ok,
            "complement_unreached": rec.complement_unreached,
        })
        if not rec.within_bound:
            failures.append(f"instance {i}: complexity {rec.complexity} > bound {rec.bound}")
        if not rec.complement_ok:
            failures.append(f"instance {i}: complement identity violated")
        if not rec.complement_unreached:
            failures.append(f"instance {i}: complement of F reached from F")
    extra = {"seed": args.seed, "violations": len(failures)}
    columns = ("instance", "n", "letters", "complexity", "bound", "within_bound",
               "complement_identity", "complement_unreached")
    code = _emit(args, rows, columns, failures, extra)
    if args.format != "json":
        sys.stdout.write(f"seed: {args.seed}  violations: {len(failures)}\n")
    return code


def cmd_product(args) -> int:
    failures = []
    rows = []
    if args.files:
        k_path, l_path = args.files
        with open(k_path, encoding="utf-8") as fh:
            k_dfa = parse_dfa(fh.read())
        with open(l_path, encoding="utf-8") as fh:
            l_dfa = parse_dfa(fh.read())
        result = product_dfa(k_dfa, l_dfa)
        row = {"k": k_path, "l": l_path, "m": k_dfa.n, "complexity": result.n}
        if l_dfa.n == 2 and len(l_dfa.finals) == 1:
            final_state = next(iter(l_dfa.finals))
            bound = 2 * k_dfa.n + 1 if final_state == 1 else 3 * k_dfa.n - 2
            row["bound"] = bound
            row["within_bound"] = result.n <= bound
            if not row["within_bound"]:
                failures.append(f"complexity {result.n} > bound {bound}")
        rows.append(row)
        columns = ("k", "l", "m", "complexity", "bound", "within_bound")
    else:
        records = family_products(ms=(args.m,), final_states=(args.fl,))
        for rec in records:
            rows.append({
                "family": rec.family,
                "spec": rec.spec,
                "m": rec.m,
                "variant": "+".join(rec.variant),
                "fl": rec.final_state,
                "complexity": rec.complexity,
                "bound": rec.bound,
                "within_bound": rec.within_bound,
            })
            if not rec.within_bound:
                failures.append(
                    f"{rec.family}{rec.spec} x {rec.variant} FL={rec.final_state}: "
                    f"complexity {rec.complexity} > bound {rec.bound}"
                )
        columns = ("family", "spec", "m", "variant", "fl", "complexity",
                   "bound", "within_bound")
    extra = {"violations": len(failures)}
    code = _emit(args, rows, columns, failures, extra)
    if args.format != "json" and not args.files:
        top = max((r["complexity"] for r in rows), default=0)
        sys.stdout.write(f"max observed complexity: {top}  violations: {len(failures)}\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aperiodic",
        description="Aperiodic transition semigroups: tables, closure, families, "
                    "optimization, search, and complexity experiments.",
    )
    parser.add_argument("--threads", type=int, default=1,
                        help="cap on worker threads (the implementation is "
                             "single-threaded; accepted for compatibility)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("table", help="size table per class and n")
    p.add_argument("--min", type=int, default=1)
    p.add_argument("--max", type=int, default=13)
    p.add_argument("--classes", help="comma-separated class list "
                                     f"(default all: {','.join(TABLE_CLASSES)})")
    add_format(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("closure", help="transition semigroup of a DFA file")
    p.add_argument("dfa")
    p.add_argument("--elements", action="store_true", help="dump the elements")
    p.add_argument("--budget", type=int, help="element budget override")
    add_format(p)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("family", help="build or measure a DFA family")
    p.add_argument("kind", choices=("u", "ui", "sct", "scti"))
    p.add_argument("spec", help="distribution (u/ui) or structure tree (sct/scti)")
    p.add_argument("--size", action="store_true", help="formula size (default)")
    p.add_argument("--verify", action="store_true",
                   help="cross-check the formula against the closure")
    p.add_argument("--emit-dfa", metavar="FILE", help="write the DFA text format ('-' = stdout)")
    p.add_argument("--budget", type=int)
    add_format(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("optimize", help="maximal family size by dynamic program")
    p.add_argument("kind", choices=("ui", "scti"))
    p.add_argument("n", type=int)
    add_format(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("search", help="bounded exhaustive search for the aperiodic maximum")
    p.add_argument("n", type=int)
    p.add_argument("--max-products", type=int, default=1_000_000_000)
    p.add_argument("--max-seconds", type=float, default=3600.0)
    p.add_argument("--checkpoint", help="resume file (one explored prefix per line)")
    p.add_argument("--no-seed", action="store_true",
                   help="do not seed the search with the best scti family")
    add_format(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("reversal", help="reversal complexity experiment")
    p.add_argument("--dfa", help="run on one DFA file instead of random sampling")
    p.add_argument("--random", action="store_true", help="sample random aperiodic DFAs")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n", type=int, help="fix the state count (default: mix of 2..6)")
    p.add_argument("--words", type=int, default=100)
    add_format(p)
    p.set_defaults(func=cmd_reversal)

    p = sub.add_parser("product", help="concatenation complexity experiment")
    p.add_argument("--m", type=int, help="left-operand family size (2..5)")
    p.add_argument("--fl", type=int, choices=(0, 1), help="final state of the 2-state right operand")
    p.add_argument("--files", nargs=2, metavar=("K", "L"), help="two DFA files over one alphabet")
    add_format(p)
    p.set_defaults(func=cmd_product)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "product" and not args.files and (args.m is None or args.fl is None):
        raise SystemExit("product needs either --files K L or both --m and --fl")
    if args.command == "reversal" and args.dfa and args.random:
        raise SystemExit("choose either --dfa or --random")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
