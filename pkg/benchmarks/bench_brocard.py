#!/usr/bin/env python3
"""Benchmark the scan kernel backends against each other.

Runs the incremental factorial-residue + quadratic-residue test over the
same witness set with the compiled extension and the pure-Python twin,
checks they agree, and prints throughput.

    python benchmarks/bench_brocard.py --limit 200000 --witnesses 25
"""

import argparse
import time

from diofact import arith
from diofact import _brocard_py

try:
    from diofact import _brocard as compiled
except ImportError:
    compiled = None


def run(kernel, witnesses, limit, chunk=100_000):
    residues = [1] * len(witnesses)
    candidates = []
    start = time.perf_counter()
    n = 1
    while n <= limit:
        stop = min(limit + 1, n + chunk)
        residues, cands, _ = kernel(witnesses, residues, n, stop, 0)
        candidates.extend(cands)
        n = stop
    return time.perf_counter() - start, candidates


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--limit", type=int, default=200_000)
    parser.add_argument("--witnesses", type=int, default=25)
    args = parser.parse_args()

    witnesses = arith.next_primes_above(args.limit, args.witnesses)
    print(f"limit {args.limit}, {len(witnesses)} witnesses "
          f"in [{witnesses[0]}, {witnesses[-1]}]")

    pure_time, pure_cands = run(_brocard_py.scan_chunk, witnesses, args.limit)
    print(f"pure-python: {pure_time:8.3f} s   "
          f"({args.limit / pure_time / 1e6:.2f} Mn/s)   candidates {pure_cands}")

    if compiled is None:
        print("compiled:    not built (pip install -e . builds it)")
        return

    comp_time, comp_cands = run(compiled.scan_chunk, witnesses, args.limit)
    print(f"compiled:    {comp_time:8.3f} s   "
          f"({args.limit / comp_time / 1e6:.2f} Mn/s)   candidates {comp_cands}")
    if comp_cands != pure_cands:
        raise SystemExit("BACKEND MISMATCH: kernels disagree")
    print(f"speedup:     {pure_time / comp_time:8.1f}x   (outputs identical)")


if __name__ == "__main__":
    main()
