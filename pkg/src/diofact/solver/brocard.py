"""Quadratic-residue sieve scan for n! + 1 = x^2.

Witness primes p sit just above the scan limit, so n! never vanishes mod p.
For each n the scan maintains n! mod p incrementally and tests whether
n! + 1 is a quadratic residue modulo every witness (Euler's criterion); a
true square passes every witness, a non-square survives each one with
probability about 1/2. Survivors are confirmed with an exact big-integer
square test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .. import arith, kernels

DEFAULT_WITNESSES = 25
SAMPLE_HORIZON = 200      # n-range of the reported rejection samples


@dataclass
class ScanState:
    """Resumable scan position: residues are n_done! mod each witness."""

    limit: int
    witnesses: list
    n_done: int
    residues: list
    candidates: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {"limit": self.limit, "witnesses": list(self.witnesses),
                "n_done": self.n_done, "residues": list(self.residues),
                "candidates": list(self.candidates)}

    @staticmethod
    def from_json_dict(data: dict) -> "ScanState":
        return ScanState(data["limit"], list(data["witnesses"]), data["n_done"],
                         list(data["residues"]), list(data["candidates"]))


@dataclass
class BrocardScanReport:
    limit: int
    witnesses: list
    candidates: list           # passed every witness
    confirmed: list            # exact square check on n! + 1
    rejection_sample: list     # (n, first rejecting witness) for small n
    backend: str

    def to_json_dict(self) -> dict:
        return {
            "schema": "diofact.scan.v1",
            "limit": self.limit,
            "witness_count": len(self.witnesses),
            "witnesses": list(self.witnesses),
            "candidates": list(self.candidates),
            "confirmed": list(self.confirmed),
            "rejection_sample": [[n, p] for n, p in self.rejection_sample],
            "backend": self.backend,
        }


def new_scan_state(limit: int, witness_count: int = DEFAULT_WITNESSES) -> ScanState:
    if limit < 2:
        raise ValueError("limit must be >= 2")
    if witness_count < 1:
        raise ValueError("need at least one witness prime")
    witnesses = arith.next_primes_above(limit, witness_count)
    return ScanState(limit, witnesses, 0, [1] * witness_count)


def advance_scan(state: ScanState, n_stop: int, *, workers: int = 1) -> ScanState:
    """Run the sieve from state.n_done + 1 up to n_stop inclusive.

    Workers split the witness list; a candidate must pass every witness, so
    per-worker pass sets are intersected. Output is identical for any worker
    count.
    """
    n_stop = min(n_stop, state.limit)
    if n_stop <= state.n_done:
        return state
    start, end = state.n_done + 1, n_stop + 1
    groups = _witness_groups(state, workers)
    if len(groups) == 1:
        results = [_scan_group(groups[0], start, end)]
    else:
        import multiprocessing

        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(len(groups)) as pool:
            results = pool.starmap(
                _scan_group, [(g, start, end) for g in groups])
    passed = None
    new_residues = list(state.residues)
    for (indices, _, _), (res, cands) in zip(groups, results):
        for idx, value in zip(indices, res):
            new_residues[idx] = value
        cand_set = set(cands)
        passed = cand_set if passed is None else passed & cand_set
    state.residues = new_residues
    state.candidates.extend(sorted(passed))
    state.n_done = n_stop
    return state


def _witness_groups(state: ScanState, workers: int):
    count = len(state.witnesses)
    groups = max(1, min(workers, count))
    out = []
    for g in range(groups):
        indices = list(range(g, count, groups))
        out.append((indices,
                    [state.witnesses[i] for i in indices],
                    [state.residues[i] for i in indices]))
    return out


def _scan_group(group, start, end):
    _, witnesses, residues = group
    kernel = kernels.scan_chunk_for(witnesses)
    res, cands, _ = kernel(witnesses, residues, start, end, 0)
    return res, cands


def _rejection_samples(limit: int, witnesses: list) -> list:
    """First rejecting witness for every rejected n up to a fixed horizon.

    Recomputed sequentially over a tiny range so the report does not depend
    on chunking or worker count.
    """
    horizon = min(limit, SAMPLE_HORIZON)
    samples = []
    residues = [1] * len(witnesses)
    for n in range(1, horizon + 1):
        reject = 0
        for i, p in enumerate(witnesses):
            residues[i] = residues[i] * n % p
        for p, r in zip(witnesses, residues):
            t = r + 1
            if t == p:
                continue
            if pow(t, (p - 1) >> 1, p) != 1:
                reject = p
                break
        if reject:
            samples.append((n, reject))
    return samples


def confirm_candidates(candidates) -> list:
    """Exact big-integer test of n! + 1 being a perfect square."""
    confirmed = []
    for n in candidates:
        value = math.factorial(n) + 1
        root = math.isqrt(value)
        if root * root == value:
            confirmed.append(n)
    return confirmed


def scan_brocard(limit: int, witness_count: int = DEFAULT_WITNESSES, *,
                 workers: int = 1, chunk: int = 100_000,
                 state: ScanState | None = None,
                 checkpoint_cb=None) -> BrocardScanReport:
    """Scan n <= limit for n! + 1 = x^2; report candidates and confirmations.

    ``state`` resumes a previous partial scan; ``checkpoint_cb`` is invoked
    with the ScanState after every chunk. Resuming from any checkpoint yields
    a report identical to an uninterrupted run.
    """
    if state is None:
        state = new_scan_state(limit, witness_count)
    while state.n_done < state.limit:
        advance_scan(state, min(state.limit, state.n_done + chunk),
                     workers=workers)
        if checkpoint_cb is not None:
            checkpoint_cb(state)
    candidates = sorted(set(state.candidates))
    return BrocardScanReport(
        limit=state.limit,
        witnesses=list(state.witnesses),
        candidates=candidates,
        confirmed=confirm_candidates(candidates),
        rejection_sample=_rejection_samples(state.limit, state.witnesses),
        backend=kernels.backend_for(state.witnesses),
    )
