"""Command-line front end.

Polynomials are printed as coefficient lists, lowest degree first.
Ground-set elements in circuit-hyperplane files are 1-based.

Exit codes: 0 ok, 2 bad input, 3 verification mismatch, 4 resource cap.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import bounds, sparse_paving, tableaux, verify
from .errors import DomainError, ResourceCapError
from .exactmath import IntPolynomial
from .sparse_paving import SparsePavingMatroid

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MISMATCH = 3
EXIT_CAP = 4


class Mismatch(Exception):
    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


# -- circuit-hyperplane documents ---------------------------------------------


def parse_ch_document(text: str) -> SparsePavingMatroid:
    """JSON ``{"m": .., "d": .., "ch": [[1-based elements], ...]}`` to a validated matroid."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DomainError("document must be a JSON object with fields m, d, ch")
    missing = [k for k in ("m", "d") if k not in doc]
    if missing:
        raise DomainError(f"missing field(s): {', '.join(missing)}")
    m, d, ch = doc["m"], doc["d"], doc.get("ch", [])
    for name, v in (("m", m), ("d", d)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise DomainError(f"{name} must be an integer, got {v!r}")
    if not isinstance(ch, list) or not all(isinstance(C, list) for C in ch):
        raise DomainError("ch must be a list of lists of integers")
    for C in ch:
        for e in C:
            if not isinstance(e, int) or isinstance(e, bool):
                raise DomainError(f"ch entries must be integers, got {e!r}")
            if e < 1:
                raise DomainError(f"ground-set elements are 1-based, got {e}")
    return sparse_paving.validate(m, d, ch)


def dump_ch_document(M: SparsePavingMatroid) -> str:
    return json.dumps({"m": M.m, "d": M.d, "ch": M.ch_lists()})


def _load_ch_file(path: str) -> SparsePavingMatroid:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    return parse_ch_document(text)


def _resolve_c(args) -> tuple[int, int, int, SparsePavingMatroid | None]:
    if args.ch_file:
        M = _load_ch_file(args.ch_file)
        return M.m, M.d, M.c, M
    if args.m is None or args.d is None or args.c is None:
        raise DomainError("give --m, --d and --c, or --ch-file")
    return args.m, args.d, args.c, None


# -- commands -------------------------------------------------------------------


def cmd_coeff(args) -> dict:
    m, d, c, M = _resolve_c(args)
    inputs = {"m": m, "d": d, "c": c}
    if M is not None:
        inputs["ch"] = M.ch_lists()
    if args.i is not None:
        inputs["i"] = args.i
        value = sparse_paving.kl_coefficient(m, d, c, args.i, unchecked=args.unchecked)
        return {"inputs": inputs, "results": {"coefficient": value}}
    poly = sparse_paving.kl_polynomial(m, d, c, unchecked=args.unchecked)
    return {"inputs": inputs, "results": {"kl_polynomial": poly.to_list()}}


def cmd_poly(args) -> dict:
    m, d, c, M = _resolve_c(args)
    inputs = {"m": m, "d": d, "c": c}
    if M is not None:
        inputs["ch"] = M.ch_lists()
    kl = sparse_paving.kl_polynomial(m, d, c, unchecked=args.unchecked)
    chi = sparse_paving.characteristic_polynomial(m, d, c, unchecked=args.unchecked)
    return {
        "inputs": inputs,
        "results": {"kl_polynomial": kl.to_list(), "characteristic_polynomial": chi.to_list()},
    }


def _skyt_count(method: str, a: int, i: int, b: int, bar: bool) -> int:
    if bar:
        if method == "alt":
            return tableaux.count_bar_skyt_alternating(i, b)
        return tableaux.count_bar_skyt(i, b)
    if method == "alt" or i == 0 or a < 2 or b < 2:
        return tableaux.count_skyt(a, i, b)
    return tableaux.count_skyt_positive(a, i, b)


def cmd_skyt(args) -> dict:
    a, i, b = args.a, args.i, args.b
    if min(i, b) < 0 or (not args.bar and a < 0):
        raise DomainError(f"arguments must be non-negative, got a={a}, i={i}, b={b}")
    if args.cap > tableaux.DEFAULT_CELL_CAP:
        print(
            f"warning: cell cap raised to {args.cap}; enumeration time grows quickly",
            file=sys.stderr,
        )
    inputs = {"a": 2 if args.bar else a, "i": i, "b": b, "bar": args.bar, "method": args.method}
    methods = ["alt", "positive"] if args.method == "both" else [args.method]
    counts = {meth: _skyt_count(meth, a, i, b, args.bar) for meth in methods}
    results: dict = {"counts": counts}
    values = set(counts.values())
    if args.enumerate or args.list:
        shape_a = 2 if args.bar else a
        if i >= 1 and shape_a >= 2 and b >= 2:
            if args.bar:
                fillings = tableaux.enumerate_bar_skyt(i, b, cap=args.cap)
            else:
                fillings = tableaux.enumerate_skyt(shape_a, i, b, cap=args.cap)
            results["enumerated"] = len(fillings)
            if args.list:
                results["fillings"] = [list(f.entries) for f in fillings]
                results["pictures"] = ["\n".join(f.rows()) for f in fillings]
        else:
            results["enumerated"] = counts[methods[0]]
        values.add(results["enumerated"])
    results["count"] = counts[methods[0]]
    report = {"inputs": inputs, "results": results}
    if len(values) != 1:
        raise Mismatch(f"counting methods disagree: {sorted(values)}", report)
    return report


def _fault_formula(m: int, d: int, c: int) -> IntPolynomial:
    # deliberately wrong: charges one circuit-hyperplane too many
    return sparse_paving.kl_polynomial(m, d, c + 1, unchecked=True)


def cmd_verify(args) -> dict:
    if args.max_ground > verify.ORACLE_GROUND:
        print(
            f"warning: --max-ground {args.max_ground} clamped to {verify.ORACLE_GROUND}",
            file=sys.stderr,
        )
    formula = _fault_formula if args.inject_fault else None
    result = verify.sweep(args.max_ground, args.samples, args.seed, kl_formula=formula)
    inputs = {
        "max_ground": min(args.max_ground, verify.ORACLE_GROUND),
        "samples": args.samples,
        "seed": args.seed,
    }
    results = {
        "checked": result.checked,
        "per_ground": {str(k): v for k, v in sorted(result.per_ground.items())},
    }
    report = {"inputs": inputs, "results": results}
    if not result.passed:
        results["counterexample"] = result.mismatch.to_dict()
        raise Mismatch(f"{result.mismatch.what} mismatch", report)
    return report


def cmd_bounds(args) -> dict:
    report = bounds.bound_report(args.m, args.d, exact=args.exact)
    return {"inputs": {"m": args.m, "d": args.d, "exact": args.exact}, "results": report.to_dict()}


def _parse_range(text: str) -> range:
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
        else:
            lo = hi = int(text)
    except ValueError:
        raise DomainError(f"range must look like LO:HI, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise DomainError(f"bad range {text!r}")
    return range(lo, hi + 1)


def _table_c(policy: str, m: int, d: int) -> int:
    if policy == "zero":
        return 0
    if policy == "max-bound":
        return bounds.best_bound(m, d)
    if policy == "refined":
        return bounds.refined_bound(m, d)
    try:
        return int(policy)
    except ValueError:
        raise DomainError(f"--c must be zero, max-bound, refined or an integer, got {policy!r}") from None


def cmd_table(args) -> dict:
    rows = []
    for m in _parse_range(args.m_range):
        for d in _parse_range(args.d_range):
            c = _table_c(args.c, m, d)
            poly = sparse_paving.kl_polynomial(m, d, c, unchecked=args.unchecked)
            for i, value in enumerate(poly.to_list() if d else [1]):
                rows.append({"m": m, "d": d, "c": c, "i": i, "coefficient": value})
    negative = [r for r in rows if r["coefficient"] < 0]
    results = {
        "columns": ["m", "d", "c", "i", "coefficient"],
        "rows": rows,
        "negative_entries": negative,
    }
    return {
        "inputs": {"m_range": args.m_range, "d_range": args.d_range, "c": args.c},
        "results": results,
    }


# -- output ---------------------------------------------------------------------


def _csv_text(report: dict) -> str:
    buf = io.StringIO()
    results = report.get("results", {})
    if "rows" in results:
        writer = csv.DictWriter(buf, fieldnames=results["columns"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(results["rows"])
        return buf.getvalue()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key, value in _flatten(results):
        writer.writerow([key, value])
    writer.writerow(["status", report["status"]])
    return buf.getvalue()


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    else:
        key = prefix.rstrip(".")
        yield key, json.dumps(obj) if isinstance(obj, list) else obj


def _text(report: dict) -> str:
    results = report.get("results", {})
    lines = []
    if "rows" in results:
        lines.append("   m   d     c   i  coefficient")
        for r in results["rows"]:
            lines.append(f"{r['m']:4d}{r['d']:4d}{r['c']:6d}{r['i']:4d}  {r['coefficient']}")
        if results["negative_entries"]:
            lines.append(f"negative entries: {len(results['negative_entries'])}")
    else:
        for key, value in _flatten(results):
            if key.startswith("pictures"):
                continue
            lines.append(f"{key}: {value}")
        for pic in results.get("pictures", []):
            lines.append("")
            lines.append(pic)
    lines.append(f"status: {report['status']} ({report['timing']['seconds']:.3f}s)")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        return _csv_text(report)
    return _text(report)


# -- parser ---------------------------------------------------------------------


def _add_global(p: argparse.ArgumentParser, defaults: bool) -> None:
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--format", choices=["json", "csv", "text"], **({"default": "text"} if defaults else kw))
    p.add_argument("--seed", type=int, **({"default": 0} if defaults else kw))
    p.add_argument(
        "--unchecked",
        action="store_true",
        help="allow |CH| above the upper bound (the formula is still evaluated)",
        **({"default": False} if defaults else kw),
    )


def _add_matroid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, help="corank (ground set has m + d elements)")
    p.add_argument("--d", type=int, help="rank")
    p.add_argument("--c", type=int, help="number of circuit-hyperplanes")
    p.add_argument("--ch-file", help='JSON file {"m": .., "d": .., "ch": [[1-based elements], ...]}')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparsekl",
        description="Kazhdan-Lusztig polynomials of sparse paving matroids. "
        "Polynomials print as coefficient lists, lowest degree first.",
    )
    _add_global(parser, defaults=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, func):
        p = sub.add_parser(name, help=help_text, description=help_text)
        _add_global(p, defaults=False)
        p.set_defaults(func=func)
        return p

    p = add("coeff", "one KL coefficient (with --i) or all of them", cmd_coeff)
    _add_matroid_args(p)
    p.add_argument("--i", type=int, help="coefficient index")

    p = add("poly", "KL and characteristic polynomials", cmd_poly)
    _add_matroid_args(p)

    p = add("skyt", "count skew tableaux Skyt(a, i, b)", cmd_skyt)
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--bar", action="store_true", help="count bar-Skyt(i, b) instead (a is ignored)")
    p.add_argument("--method", choices=["alt", "positive", "both"], default="both")
    p.add_argument("--enumerate", action="store_true", help="also count by listing every filling")
    p.add_argument("--list", action="store_true", help="print the fillings (implies --enumerate)")
    p.add_argument("--cap", type=int, default=tableaux.DEFAULT_CELL_CAP, help="largest shape to enumerate")

    p = add("verify", "check the formula against the brute-force oracle", cmd_verify)
    p.add_argument("--max-ground", type=int, default=verify.EXHAUSTIVE_GROUND)
    p.add_argument("--samples", type=int, default=50, help="random families per (m, d) above size 7")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = add("bounds", "upper bounds on the number of circuit-hyperplanes", cmd_bounds)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="also solve the independence number exactly")

    p = add("table", "grid of KL coefficients", cmd_table)
    p.add_argument("--m-range", default="1:6", help="LO:HI, inclusive")
    p.add_argument("--d-range", default="1:6", help="LO:HI, inclusive")
    p.add_argument("--c", default="zero", help="zero, max-bound, refined, or an integer")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    code = EXIT_OK
    try:
        report = args.func(args)
        report["status"] = "pass"
    except Mismatch as exc:
        report = exc.report
        report["status"] = "fail"
        report["error"] = {"kind": "mismatch", "message": str(exc)}
        code = EXIT_MISMATCH
    except ResourceCapError as exc:
        report = {"status": "error", "error": {"kind": "resource_cap", "message": str(exc)}}
        code = EXIT_CAP
    except DomainError as exc:
        report = {"status": "error", "error": {"kind": "validation", "message": str(exc)}}
        code = EXIT_INPUT
    report = {"command": [args.command] + argv[argv.index(args.command) + 1:], **report}
    report["timing"] = {"seconds": time.perf_counter() - start}
    if code in (EXIT_INPUT, EXIT_CAP):
        print(json.dumps(report["error"]), file=sys.stderr)
        if args.format == "json":
            sys.stdout.write(render(report, "json"))
        return code
    if code == EXIT_MISMATCH:
        print(f"error: {report['error']['message']}", file=sys.stderr)
        witness = report.get("results", {}).get("counterexample", {}).get("witness")
        if witness is not None:
            print(json.dumps(witness), file=sys.stderr)
    sys.stdout.write(render(report, args.format))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
