# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernel: incremental n! residues + Euler-criterion tests.

Semantics must match diofact._brocard_py.scan_chunk exactly. Witness primes
must stay below 2^32 so that products fit in 64 bits; the dispatcher in
solver.brocard falls back to the pure kernel beyond that.
"""

from libc.stdlib cimport free, malloc


cdef inline unsigned long long _modpow(unsigned long long base,
                                       unsigned long long exp,
                                       unsigned long long mod) nogil:
    cdef unsigned long long result = 1
    base %= mod
    while exp:
        if exp & 1:
            result = result * base % mod
        base = base * base % mod
        exp >>= 1
    return result


def scan_chunk(witnesses, residues, long long n_start, long long n_end,
               long long sample_budget=0):
    """See diofact._brocard_py.scan_chunk."""
    cdef Py_ssize_t width = len(witnesses)
    cdef unsigned long long *ps = <unsigned long long *> malloc(
        width * sizeof(unsigned long long))
    cdef unsigned long long *rs = <unsigned long long *> malloc(
        width * sizeof(unsigned long long))
    if ps == NULL or rs == NULL:
        free(ps)
        free(rs)
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(width):
        ps[i] = witnesses[i]
        rs[i] = residues[i]
        if ps[i] >> 32:
            free(ps)
            free(rs)
            raise ValueError("witness prime too large for the compiled kernel")

    candidates = []
    samples = []
    cdef long long n
    cdef unsigned long long p, t, reject
    cdef long long taken = 0
    try:
        for n in range(n_start, n_end):
            for i in range(width):
                rs[i] = rs[i] * (<unsigned long long> n) % ps[i]
            reject = 0
            for i in range(width):
                p = ps[i]
                t = rs[i] + 1
                if t == p:
                    continue
                if _modpow(t, (p - 1) >> 1, p) != 1:
                    reject = p
                    break
            if reject == 0:
                candidates.append(n)
            elif taken < sample_budget:
                samples.append((n, reject))
                taken += 1
        out = [rs[i] for i in range(width)]
    finally:
        free(ps)
        free(rs)
    return out, candidates, samples
