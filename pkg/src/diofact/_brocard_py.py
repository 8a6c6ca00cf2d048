"""Pure-Python twin of the compiled scan kernel.

Semantics must match diofact._brocard.scan_chunk exactly; the backends are
interchangeable and compared by the benchmark and the test suite.
"""

from __future__ import annotations


def scan_chunk(witnesses, residues, n_start, n_end, sample_budget=0):
    """Advance factorial residues over [n_start, n_end) and QR-test n! + 1.

    On entry residues[i] == (n_start - 1)! mod witnesses[i]. Returns
    (new_residues, candidates, samples): candidates are the n for which
    n! + 1 is a quadratic residue (or zero) modulo every witness, samples the
    first rejections as (n, rejecting_prime), at most sample_budget of them.
    """
    res = list(residues)
    width = len(res)
    candidates = []
    samples = []
    for n in range(n_start, n_end):
        for i in range(width):
            res[i] = res[i] * n % witnesses[i]
        reject = 0
        for i in range(width):
            p = witnesses[i]
            t = res[i] + 1
            if t == p:
                continue                      # n! + 1 divisible by p: passes
            if pow(t, (p - 1) >> 1, p) != 1:
                reject = p
                break
        if reject == 0:
            candidates.append(n)
        elif len(samples) < sample_budget:
            samples.append((n, reject))
    return res, candidates, samples
