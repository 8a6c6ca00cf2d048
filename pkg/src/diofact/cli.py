"""Command-line front end.

Subcommands: solve, scan-brocard, construct, audit, bhargava, prune-test.
Exit codes: 0 complete, 2 usage or configuration error, 3 budget exhausted
(partial output was written and flagged), 4 internal invariant violation.

A key=value config file at $DIOFACT_CONFIG_DIR/config supplies defaults for
the common knobs (workers, witnesses, chunk-size, format, out, budgets);
command-line flags win.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys

from . import arith, audit
from .bhargava import SetSpec, bhargava_factorial
from .errors import DiofactError, ParseError
from .model import BinaryForm, BivariatePoly, Equation, UnivariatePoly, parse_equation
from .presets import PRESETS, preset_equation
from .solver import (SearchBounds, SearchResult, scan_brocard,
                     construct_power_family, corollary_family,
                     search_binary_form, search_power, search_thue_mahler_form,
                     solve_bivariate, solve_univariate)
from .solver.brocard import ScanState, new_scan_state, advance_scan, \
    confirm_candidates, _rejection_samples
from .solver.types import TupleSpace
from . import kernels

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4

_CONFIG_KEYS = {"workers", "witnesses", "chunk-size", "format", "out",
                "budget-seconds", "budget-nodes"}


def _json_line(data: dict) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def load_config_file() -> dict:
    directory = os.environ.get("DIOFACT_CONFIG_DIR")
    if not directory:
        return {}
    path = os.path.join(directory, "config")
    if not os.path.exists(path):
        return {}
    out = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ValueError(f"unknown config key: {key!r}")
            out[key] = value.strip()
    return out


def _effective(args, name: str, config: dict, default, cast):
    value = getattr(args, name.replace("-", "_"), None)
    if value is not None:
        return value
    if name in config:
        return cast(config[name])
    return default


# ---------------------------------------------------------------------------
# output writing with byte-accurate checkpointing


class OutputWriter:
    """Line writer that tracks byte offsets so a resume can truncate back."""

    def __init__(self, path: str | None, resume_bytes: int = 0):
        self.path = path
        self.bytes_written = resume_bytes
        if path is None:
            self.handle = None
        elif resume_bytes:
            handle = open(path, "r+b")
            handle.truncate(resume_bytes)
            handle.seek(resume_bytes)
            self.handle = handle
        else:
            self.handle = open(path, "wb")

    def write_line(self, text: str):
        data = (text + "\n").encode("utf-8")
        if self.handle is None:
            sys.stdout.write(text + "\n")
        else:
            self.handle.write(data)
        self.bytes_written += len(data)

    def close(self):
        if self.handle is not None:
            self.handle.close()


class Checkpoint:
    def __init__(self, path: str | None):
        self.path = path

    def save(self, data: dict):
        if self.path is None:
            return
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as handle:
            handle.write(_json_line(data) + "\n")
        os.replace(tmp, self.path)

    def load(self) -> dict | None:
        if self.path is None or not os.path.exists(self.path):
            return None
        with open(self.path, encoding="utf-8") as handle:
            return json.loads(handle.read())


# ---------------------------------------------------------------------------
# solve


def _parse_bounds(pairs) -> dict:
    ranges = {}
    for pair in pairs or ():
        if "=" not in pair or ".." not in pair:
            raise ValueError(f"bound must look like VAR=LO..HI, got {pair!r}")
        var, _, span = pair.partition("=")
        lo_text, _, hi_text = span.partition("..")
        ranges[var.strip()] = (int(lo_text), int(hi_text))
    return ranges


def _load_equation(args) -> Equation:
    if getattr(args, "preset", None):
        eq = preset_equation(args.preset)
    elif getattr(args, "eq", None):
        eq = parse_equation(args.eq)
    else:
        raise ValueError("need --eq TEXT or --preset NAME")
    if getattr(args, "coprime", False):
        eq = Equation(eq.lhs, eq.rhs, coprime_xy=True)
    return eq


def _product_form_shape(form: BinaryForm):
    """Detect x^(2s) y^s + sign * y^(2s) x^s; returns (s, sign) or None."""
    d = form.degree
    if d % 3 != 0:
        return None
    s = d // 3
    nonzero = [(d - i, c) for i, c in enumerate(form.coefficients) if c != 0]
    if len(nonzero) != 2:
        return None
    (i1, c1), (i2, c2) = nonzero
    if (i1, i2) != (2 * s, s) or c1 != 1 or c2 not in (1, -1):
        return None
    return s, c2


def classify_equation(eq: Equation, method: str = "auto"):
    """Choose the solver: returns (kind, extra)."""
    rhs = eq.rhs
    if isinstance(rhs, UnivariatePoly):
        if rhs.degree >= 1 and rhs.is_monomial() and rhs.leading == 1 \
                and not eq.lhs.prime_power_terms:
            return "power", rhs.degree
        if rhs.degree < 1:
            raise ValueError("constant right side cannot be solved")
        return "univariate", None
    if isinstance(rhs, BinaryForm):
        if method == "auto":
            shape = _product_form_shape(rhs)
            if shape is not None:
                return "product-form", shape
        return "binary-form", None
    return "bivariate", None


def _search_dispatch(eq: Equation, kind: str, extra, bounds: SearchBounds,
                     prune: bool, tuple_range) -> SearchResult:
    if kind == "power":
        return search_power(eq.lhs, extra, bounds, prune=prune,
                            tuple_range=tuple_range)
    if kind == "univariate":
        return solve_univariate(eq, bounds, tuple_range=tuple_range)
    if kind == "product-form":
        s, sign = extra
        return search_thue_mahler_form(eq.lhs, s, sign, bounds,
                                       tuple_range=tuple_range)
    if kind == "binary-form":
        return search_binary_form(eq, bounds, prune=prune,
                                  tuple_range=tuple_range)
    return solve_bivariate(eq, bounds, tuple_range=tuple_range)


def _solve_worker(payload):
    (text, coprime, ranges, kind, extra, prune, lo, hi) = payload
    eq = parse_equation(text)
    if coprime:
        eq = Equation(eq.lhs, eq.rhs, coprime_xy=True)
    bounds = SearchBounds(ranges)
    return _search_dispatch(eq, kind, extra, bounds, prune, (lo, hi))


def _equation_hash(eq: Equation, ranges: dict, kind: str, extra, prune) -> str:
    blob = _json_line({"equation": eq.text(), "coprime": eq.coprime_xy,
                       "ranges": {k: list(v) for k, v in sorted(ranges.items())},
                       "kind": kind, "extra": str(extra), "prune": prune})
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _emit_records(writer: OutputWriter, records, fmt: str, variables):
    for record in records:
        if fmt == "jsonl":
            writer.write_line(_json_line(record.to_json_dict()))
        else:
            row = [record.equation.replace(",", ";")]
            row += [str(record.assignment.get(v, "")) for v in variables]
            row.append("true" if record.verified else "false")
            row.append(json.dumps(record.certificate, sort_keys=True)
                       .replace(",", ";"))
            writer.write_line(",".join(row))


def cmd_solve(args, config) -> int:
    import time as _time

    eq = _load_equation(args)
    ranges = _parse_bounds(args.bound)
    prune = not args.no_prune
    kind, extra = classify_equation(eq, args.method)
    bounds = SearchBounds(ranges)
    space = TupleSpace(eq.variables(), bounds)

    workers = _effective(args, "workers", config, 1, int)
    chunk_size = _effective(args, "chunk-size", config, 512, int)
    fmt = _effective(args, "format", config, "jsonl", str)
    out_path = _effective(args, "out", config, None, str)
    budget_nodes = _effective(args, "budget-nodes", config, None, int)
    budget_seconds = _effective(args, "budget-seconds", config, None, float)
    if fmt not in ("jsonl", "csv"):
        raise ValueError(f"unknown format {fmt!r}")

    checkpoint = Checkpoint(args.checkpoint)
    eq_hash = _equation_hash(eq, ranges, kind, extra, prune)
    next_index = 0
    resume_bytes = 0
    counters = {"found": 0, "pruned": 0, "nodes": 0}
    if args.resume:
        state = checkpoint.load()
        if state is None:
            raise ValueError("--resume given but no checkpoint found")
        if state.get("equation_sha256") != eq_hash:
            raise ValueError("checkpoint does not match this run (refusing resume)")
        next_index = state["next_index"]
        resume_bytes = state["bytes_written"]
        counters = state["counters"]
    if args.checkpoint and out_path is None:
        raise ValueError("--checkpoint needs --out FILE")

    writer = OutputWriter(out_path, resume_bytes)
    variables = eq.variables() + ["x", "y"]
    if fmt == "csv" and next_index == 0:
        writer.write_line(",".join(["equation"] + variables
                                   + ["verified", "certificate"]))
    deadline = None
    if budget_seconds is not None:
        deadline = _time.monotonic() + budget_seconds

    pool = None
    if workers > 1:
        import multiprocessing
        pool = multiprocessing.get_context("fork").Pool(workers)
    exit_code = EXIT_OK
    try:
        while next_index < space.total:
            batch = []
            lo = next_index
            for _ in range(max(1, workers)):
                if lo >= space.total:
                    break
                hi = min(lo + chunk_size, space.total)
                batch.append((eq.text(), eq.coprime_xy, ranges, kind, extra,
                              prune, lo, hi))
                lo = hi
            if pool is not None:
                results = pool.map(_solve_worker, batch)
            else:
                results = [_solve_worker(p) for p in batch]
            for result in results:
                _emit_records(writer, result.records, fmt, variables)
                counters["found"] += result.found
                counters["pruned"] += result.pruned_count
                counters["nodes"] += result.nodes
            next_index = batch[-1][-1]
            checkpoint.save({
                "schema": "diofact.checkpoint.v1", "command": "solve",
                "equation_sha256": eq_hash, "next_index": next_index,
                "bytes_written": writer.bytes_written, "counters": counters,
            })
            over_nodes = budget_nodes is not None and counters["nodes"] >= budget_nodes
            over_time = deadline is not None and _time.monotonic() > deadline
            if (over_nodes or over_time) and next_index < space.total:
                exit_code = EXIT_BUDGET
                break
    except KeyboardInterrupt:
        exit_code = EXIT_BUDGET
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    complete = next_index >= space.total
    summary = {
        "schema": "diofact.summary.v1", "command": "solve",
        "equation": eq.text(), "found": counters["found"],
        "pruned": counters["pruned"],
        "exhausted": counters["nodes"] - counters["pruned"],
        "nodes": counters["nodes"], "total": space.total,
        "complete": complete,
    }
    if fmt == "jsonl" and complete:
        writer.write_line(_json_line(summary))
    writer.close()
    print(_json_line(summary), file=sys.stderr)
    return exit_code if not complete else EXIT_OK


# ---------------------------------------------------------------------------
# scan-brocard


def cmd_scan_brocard(args, config) -> int:
    import time as _time

    limit = args.limit
    witnesses = _effective(args, "witnesses", config, 25, int)
    workers = _effective(args, "workers", config, 1, int)
    chunk_size = _effective(args, "chunk-size", config, 100_000, int)
    out_path = _effective(args, "out", config, None, str)
    budget_seconds = _effective(args, "budget-seconds", config, None, float)
    if limit < 2:
        raise ValueError("limit must be >= 2")

    checkpoint = Checkpoint(args.checkpoint)
    scan_hash = hashlib.sha256(
        _json_line({"limit": limit, "witnesses": witnesses}).encode()).hexdigest()
    state = None
    if args.resume:
        stored = checkpoint.load()
        if stored is None:
            raise ValueError("--resume given but no checkpoint found")
        if stored.get("scan_sha256") != scan_hash:
            raise ValueError("checkpoint does not match this scan (refusing resume)")
        state = ScanState.from_json_dict(stored["state"])
    if state is None:
        state = new_scan_state(limit, witnesses)

    deadline = None
    if budget_seconds is not None:
        deadline = _time.monotonic() + budget_seconds
    exit_code = EXIT_OK
    try:
        while state.n_done < state.limit:
            advance_scan(state, min(state.limit, state.n_done + chunk_size),
                         workers=workers)
            checkpoint.save({
                "schema": "diofact.checkpoint.v1", "command": "scan-brocard",
                "scan_sha256": scan_hash, "state": state.to_json_dict(),
            })
            if deadline is not None and _time.monotonic() > deadline \
                    and state.n_done < state.limit:
                exit_code = EXIT_BUDGET
                break
    except KeyboardInterrupt:
        exit_code = EXIT_BUDGET

    if exit_code == EXIT_BUDGET:
        print(_json_line({"schema": "diofact.summary.v1",
                          "command": "scan-brocard", "complete": False,
                          "n_done": state.n_done}), file=sys.stderr)
        return exit_code

    candidates = sorted(set(state.candidates))
    report = {
        "schema": "diofact.scan.v1",
        "limit": state.limit,
        "witness_count": len(state.witnesses),
        "witnesses": list(state.witnesses),
        "candidates": candidates,
        "confirmed": confirm_candidates(candidates),
        "rejection_sample": [[n, p] for n, p in
                             _rejection_samples(state.limit, state.witnesses)],
        "backend": kernels.backend_for(state.witnesses),
    }
    writer = OutputWriter(out_path)
    writer.write_line(_json_line(report))
    writer.close()
    print(_json_line({"schema": "diofact.summary.v1", "command": "scan-brocard",
                      "confirmed": report["confirmed"], "complete": True}),
          file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# construct


def cmd_construct(args, config) -> int:
    bases = [int(v) for v in args.bases.split(",")] if args.bases else [1] * args.r
    if len(bases) != args.r:
        raise ValueError(f"--bases must list exactly r={args.r} values")
    if args.form:
        eq = parse_equation(f"1 * n! = {args.form}", as_form=True)
        if not isinstance(eq.rhs, BinaryForm):
            raise ValueError("--form must be a homogeneous polynomial in x, y")
        record = corollary_family(eq.rhs, args.b, bases, args.side, args.t)
    else:
        record = construct_power_family(args.b, bases, args.d, args.t)
    out_path = _effective(args, "out", config, None, str)
    writer = OutputWriter(out_path)
    writer.write_line(_json_line(record.to_json_dict()))
    writer.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# audit


def _read_lines(path: str):
    if path == "-":
        return sys.stdin.read().splitlines()
    with open(path, encoding="utf-8") as handle:
        return handle.read().splitlines()


def _parse_triple(line: str):
    line = line.strip()
    if not line:
        return None
    if line.startswith("{"):
        data = json.loads(line)
        return int(data["a"]), int(data["b"]), int(data["c"])
    parts = [p for p in line.replace(",", " ").split() if p]
    if len(parts) != 3:
        raise ValueError(f"triple line needs three integers: {line!r}")
    return int(parts[0]), int(parts[1]), int(parts[2])


def cmd_audit(args, config) -> int:
    out_path = _effective(args, "out", config, None, str)
    writer = OutputWriter(out_path)
    limit = args.limit
    try:
        if args.kind == "triples":
            for line in _read_lines(args.infile):
                triple = _parse_triple(line)
                if triple is None:
                    continue
                a, b, c = triple
                try:
                    report = audit.abc_quality(audit.AbcTriple(a, b, c)).to_json_dict()
                except ValueError as exc:
                    report = {"kind": "abc-quality",
                              "inputs": {"a": a, "b": b, "c": c},
                              "metrics": {}, "holds": None, "error": str(exc)}
                writer.write_line(_json_line(report))
        elif args.kind == "records":
            for line in _read_lines(args.infile):
                line = line.strip()
                if not line or not line.startswith("{"):
                    continue
                data = json.loads(line)
                if data.get("schema") != "diofact.solution.v1":
                    continue
                eq = parse_equation(data["equation"])
                from .solver.types import SolutionRecord
                record = SolutionRecord(data["equation"], data["assignment"],
                                        data["verified"], data["certificate"])
                if not isinstance(eq.rhs, UnivariatePoly) or eq.rhs.degree < 2 \
                        or "x" not in record.assignment:
                    writer.write_line(_json_line(
                        {"kind": "instrument", "inputs": {"equation": data["equation"]},
                         "metrics": {}, "holds": None,
                         "error": "right side not univariate of degree >= 2"}))
                    continue
                writer.write_line(_json_line(audit.instrument_solution(eq, record)))
        elif args.kind == "finsler":
            if limit is None:
                raise ValueError("--limit required for the finsler sweep")
            writer.write_line(_json_line(audit.finsler_sweep(limit).to_json_dict()))
        elif args.kind == "stirling":
            if limit is None:
                raise ValueError("--limit required for the stirling sweep")
            r = args.r
            violations = [n for n in range(1, limit + 1)
                          if not audit.check_stirling_bound([n] * r)[0]]
            threshold = audit.stirling_validity_threshold(r, limit)
            writer.write_line(_json_line({
                "kind": "stirling-sweep",
                "inputs": {"r": r, "n_max": limit},
                "metrics": {"violations": violations[:50],
                            "violation_count": len(violations),
                            "valid_from": threshold},
                "holds": not violations,
            }))
        elif args.kind == "littleo":
            if limit is None or not args.lhs:
                raise ValueError("littleo needs --lhs TEXT and --limit")
            eq = parse_equation(args.lhs + " = x" if "=" not in args.lhs else args.lhs)
            writer.write_line(_json_line(
                audit.radical_littleo_report(eq.lhs, limit).to_json_dict()))
        else:
            raise ValueError(f"unknown audit kind {args.kind!r}")
    finally:
        writer.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# bhargava


def cmd_bhargava(args, config) -> int:
    spec = SetSpec.parse(args.set)
    n_values = [args.n] if args.n is not None else list(range(0, args.n_max + 1))
    fmt = _effective(args, "format", config, "table", str)
    out_path = _effective(args, "out", config, None, str)
    writer = OutputWriter(out_path)
    for n in n_values:
        value = bhargava_factorial(spec, n)
        if fmt == "jsonl":
            writer.write_line(_json_line({"set": str(spec), "n": n, "value": value}))
        else:
            writer.write_line(f"{n}\t{value}")
    writer.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# prune-test


def cmd_prune_test(args, config) -> int:
    eq = _load_equation(args)
    ranges = _parse_bounds(args.bound)
    bounds_a = SearchBounds(dict(ranges))
    bounds_b = SearchBounds(dict(ranges))
    kind, extra = classify_equation(eq, "enumerate")
    if kind == "power":
        pruned = search_power(eq.lhs, extra, bounds_a, prune=True)
        plain = search_power(eq.lhs, extra, bounds_b, prune=False)
    elif kind == "binary-form":
        pruned = search_binary_form(eq, bounds_a, prune=True)
        plain = search_binary_form(eq, bounds_b, prune=False)
    else:
        raise ValueError("prune-test applies to x^d or binary-form equations")
    same = [r.assignment for r in pruned.records] == \
           [r.assignment for r in plain.records]
    report = {
        "kind": "prune-test", "equation": eq.text(),
        "inputs": {k: list(v) for k, v in sorted(ranges.items())},
        "metrics": {"found": pruned.found, "pruned": pruned.pruned_count,
                    "nodes": plain.nodes},
        "holds": same,
    }
    print(_json_line(report))
    return EXIT_OK if same else EXIT_INVARIANT


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diofact",
        description="search, construct and audit polynomial-factorial "
                    "diophantine equations")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, checkpointed=True):
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=("jsonl", "csv"))
        p.add_argument("--workers", type=int)
        p.add_argument("--chunk-size", type=int, dest="chunk_size")
        p.add_argument("--budget-seconds", type=float, dest="budget_seconds")
        p.add_argument("--budget-nodes", type=int, dest="budget_nodes")
        if checkpointed:
            p.add_argument("--checkpoint", help="checkpoint file path")
            p.add_argument("--resume", action="store_true")

    p = sub.add_parser("solve", help="search an equation over bounded tuples")
    p.add_argument("--eq", help="equation DSL text")
    p.add_argument("--preset", help="named preset equation")
    p.add_argument("--bound", action="append", metavar="VAR=LO..HI")
    p.add_argument("--coprime", action="store_true",
                   help="restrict to gcd(x, y) = 1")
    p.add_argument("--no-prune", action="store_true", dest="no_prune")
    p.add_argument("--method", choices=("auto", "enumerate"), default="auto")
    add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("scan-brocard", help="quadratic-residue scan of n!+1 = x^2")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--witnesses", type=int)
    add_common(p)
    p.set_defaults(func=cmd_scan_brocard)

    p = sub.add_parser("construct", help="emit a verified family member")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--bases", help="comma-separated bases A_1..A_r")
    p.add_argument("--form", help="homogeneous f(x, y) for the contracted family")
    p.add_argument("--side", choices=("auto", "diagonal", "x=sy", "y=sx"),
                   default="auto")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("audit", help="radical metrics and inequality sweeps")
    p.add_argument("--kind", required=True,
                   choices=("triples", "records", "finsler", "stirling", "littleo"))
    p.add_argument("--in", dest="infile", default="-",
                   help="input file of triples or solution records ('-' = stdin)")
    p.add_argument("--limit", type=int)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--lhs", help="left side text for the littleo series")
    p.add_argument("--out")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("bhargava", help="generalized factorial table")
    p.add_argument("--set", required=True, help="Z, AP(A,b) or {e1,e2,...}")
    p.add_argument("--n", type=int)
    p.add_argument("--n-max", type=int, dest="n_max", default=10)
    p.add_argument("--format", choices=("table", "jsonl"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_bhargava)

    p = sub.add_parser("prune-test",
                       help="verify pruned and unpruned searches agree")
    p.add_argument("--eq")
    p.add_argument("--preset")
    p.add_argument("--bound", action="append", metavar="VAR=LO..HI")
    p.add_argument("--coprime", action="store_true")
    p.set_defaults(func=cmd_prune_test)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        config = load_config_file()
        return args.func(args, config)
    except (ParseError, ValueError, DiofactError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
