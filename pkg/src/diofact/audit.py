"""Empirical instrumentation of the conjectural inequalities.

Nothing here proves anything: these routines measure radical-based metrics
on concrete triples, solutions and sequences. All comparisons that decide a
boolean are exact big-integer comparisons; logarithms appear only in the
reported real-valued margins and are taken of exact integers (never of
floating-point factorials).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import arith
from .model import UnivariatePoly, depress_polynomial, eval_lhs

_LOG2 = math.log(2)


def log_int(n: int) -> float:
    """log |n| for integers of any size, via top-bits extraction."""
    n = abs(n)
    if n <= 0:
        raise ValueError("log of a nonpositive integer")
    bits = n.bit_length()
    if bits <= 53:
        return math.log(n)
    top = n >> (bits - 53)
    return math.log(top) + (bits - 53) * _LOG2


@dataclass(frozen=True)
class AbcTriple:
    """Coprime nonzero integers with a + b = c."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if 0 in (self.a, self.b, self.c):
            raise ValueError("triple entries must be nonzero")
        if self.a + self.b != self.c:
            raise ValueError("need a + b = c")
        if math.gcd(self.a, self.b) != 1 or math.gcd(self.a, self.c) != 1 \
                or math.gcd(self.b, self.c) != 1:
            raise ValueError("triple entries must be pairwise coprime")

    def canonical(self) -> "AbcTriple":
        """The equivalent triple with 0 < a <= b < c.

        a + b = c stays true under negating all three and under moving the
        largest magnitude to c; metrics are invariant under both.
        """
        values = sorted((abs(self.a), abs(self.b), abs(self.c)))
        return AbcTriple(values[0], values[1], values[2])


@dataclass(frozen=True)
class QualityReport:
    triple: AbcTriple
    radical: int
    quality: float
    szpiro: float

    def to_json_dict(self) -> dict:
        return {
            "kind": "abc-quality",
            "inputs": {"a": self.triple.a, "b": self.triple.b, "c": self.triple.c},
            "metrics": {"radical": self.radical, "quality": self.quality,
                        "szpiro": self.szpiro},
            "holds": None,
        }


def abc_quality(t: AbcTriple) -> QualityReport:
    """Radical of abc plus the two standard exponents.

    quality = log max(|a|,|b|,|c|) / log N(abc);
    szpiro  = log |abc| / log N(abc).
    """
    t = t.canonical()
    n_rad = arith.radical(t.a * t.b * t.c)
    if n_rad < 2:
        raise ValueError("radical 1: metrics undefined")
    log_n = log_int(n_rad)
    return QualityReport(
        triple=t,
        radical=n_rad,
        quality=log_int(t.c) / log_n,
        szpiro=log_int(t.a * t.b * t.c) / log_n,
    )


def szpiro_exponent(t: AbcTriple) -> float:
    """Minimal s with |abc| <= N(abc)^s, i.e. log |abc| / log N(abc)."""
    t = t.canonical()
    n_rad = arith.radical(t.a * t.b * t.c)
    if n_rad < 2:
        raise ValueError("radical 1: exponent undefined")
    return log_int(t.a * t.b * t.c) / log_int(n_rad)


# ---------------------------------------------------------------------------
# instrumenting verified solutions of b * F = f(x)


def instrument_solution(eq, record) -> dict:
    """Split a verified solution into the additive triple behind the
    conjectural bound and measure it.

    With Q the depressed polynomial, z the image of x and j the largest index
    with a nonzero low coefficient, the identity Q(z) = c * F becomes

        z^j / D + R1(z) / D = c * F / (z^(d-j) D),      D = gcd(z^j, R1(z)),

    an exact A + B = C of coprime integers. The report carries the summands,
    their abc metrics, and the gap |d log|z| - log F|.
    """
    rhs = eq.rhs
    if not isinstance(rhs, UnivariatePoly) or rhs.degree < 2:
        raise ValueError("instrumentation needs a univariate right side of degree >= 2")
    if not record.verified:
        raise ValueError("record must be verified")
    x = record.assignment["x"]
    depressed = depress_polynomial(rhs, eq.lhs.b)
    z = depressed.z_of(x)
    d = rhs.degree
    report = {
        "kind": "instrument",
        "inputs": {"equation": record.equation,
                   "assignment": dict(sorted(record.assignment.items()))},
        "metrics": {"z": z, "scale": depressed.c},
        "holds": None,
    }
    factorial_value = eval_lhs(eq.lhs, {k: v for k, v in record.assignment.items()
                                        if k != "x"}) // eq.lhs.b
    if abs(z) <= 1:
        report["metrics"]["degenerate"] = "|z| <= 1: logarithmic gap undefined"
        return report
    gap = abs(d * log_int(z) - log_int(factorial_value))
    report["metrics"]["log_gap"] = gap

    low_indices = [i for i in range(2, d + 1) if depressed.q.coefficient(d - i) != 0]
    if not low_indices:
        report["metrics"]["degenerate"] = "no low terms: right side is a scaled power"
        return report
    j = max(low_indices)
    # Q = X^d + R with R = z^(d-j) * R1; R1 has the last nonzero c_j as constant
    r1 = sum(depressed.q.coefficient(d - i) * z ** (j - i) for i in range(2, j + 1))
    if r1 == 0:
        report["metrics"]["degenerate"] = "R1(z) = 0: triple undefined"
        return report
    z_pow = z ** j
    d_gcd = math.gcd(z_pow, r1)
    c_f = depressed.c * factorial_value
    if c_f % (z ** (d - j) * d_gcd) != 0:
        raise AssertionError("summand division must be exact")
    a_part = z_pow // d_gcd
    b_part = r1 // d_gcd
    c_part = c_f // (z ** (d - j) * d_gcd)
    if a_part + b_part != c_part:
        raise AssertionError("instrumented summands must balance exactly")
    report["metrics"]["triple"] = [a_part, b_part, c_part]
    report["metrics"]["j"] = j
    report["metrics"]["gcd"] = d_gcd
    try:
        quality = abc_quality(AbcTriple(a_part, b_part, c_part))
        report["metrics"]["quality"] = quality.quality
        report["metrics"]["szpiro"] = quality.szpiro
        report["metrics"]["radical"] = quality.radical
    except ValueError as exc:
        report["metrics"]["degenerate"] = str(exc)
    return report


# ---------------------------------------------------------------------------
# factorial lower bound and primorial upper bound


def check_stirling_bound(ns) -> tuple[bool, float]:
    """Test 4^r * prod((n_i / e)^{n_i}) <= prod(n_i!) in log space.

    Returns (holds, margin) with margin = log RHS - log LHS. The displayed
    bound fails for small n_i (see stirling_validity_threshold).
    """
    ns = list(ns)
    if any(n < 0 for n in ns):
        raise ValueError("entries must be >= 0")
    r = len(ns)
    log_lhs = r * math.log(4.0)
    log_rhs = 0.0
    for n in ns:
        if n > 0:
            log_lhs += n * (math.log(n) - 1.0)
        log_rhs += log_int(math.factorial(n))
    margin = log_rhs - log_lhs
    return margin >= 0, margin


def stirling_validity_threshold(r: int, n_max: int = 2000) -> int | None:
    """Smallest n0 such that the bound holds on every diagonal tuple
    (n, ..., n) with n0 <= n <= n_max, or None if it keeps failing."""
    threshold = None
    for n in range(n_max, 0, -1):
        holds, _ = check_stirling_bound([n] * r)
        if holds:
            threshold = n
        else:
            break
    return threshold


def primorial(n: int) -> int:
    """Product of the primes <= n."""
    out = 1
    for p in arith.sieve_primes(n) if n >= 2 else ():
        out *= p
    return out


def check_finsler(n: int) -> tuple[bool, float]:
    """Exact comparison prod(p <= n) < 4^n, margin in log space."""
    if n < 1:
        raise ValueError("n must be >= 1")
    prim = primorial(n)
    holds = prim < (1 << (2 * n))
    return holds, 2 * n * _LOG2 - log_int(prim)


@dataclass(frozen=True)
class FinslerSweep:
    n_max: int
    all_hold: bool
    first_violation: int | None
    min_margin: float

    def to_json_dict(self) -> dict:
        return {"kind": "finsler-sweep",
                "inputs": {"n_max": self.n_max},
                "metrics": {"min_margin": self.min_margin,
                            "first_violation": self.first_violation},
                "holds": self.all_hold}


def finsler_sweep(n_max: int) -> FinslerSweep:
    """Exact primorial-vs-4^n comparison for every n <= n_max.

    The running primorial is compared through bit lengths (4^n = 2^(2n)),
    with an exact big-integer comparison in the single ambiguous case, so the
    sweep stays exact at any scale.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    table = set(arith.sieve_primes(n_max).primes)
    prim = 1
    first_violation = None
    min_margin = math.inf
    for n in range(1, n_max + 1):
        if n in table:
            prim *= n
        bits = prim.bit_length()
        if bits <= 2 * n:
            holds = True
        elif bits == 2 * n + 1:
            holds = prim < (1 << (2 * n))
        else:
            holds = False
        if not holds and first_violation is None:
            first_violation = n
        margin = 2 * n * _LOG2 - log_int(prim)
        if margin < min_margin:
            min_margin = margin
    return FinslerSweep(n_max, first_violation is None, first_violation, min_margin)


# ---------------------------------------------------------------------------
# radical decay N(F)/F


@dataclass(frozen=True)
class LittleOReport:
    entries: list              # (n, exact ratio, float approximation)
    nonincreasing_from: int | None
    final_ratio: float

    def to_json_dict(self) -> dict:
        return {"kind": "radical-decay",
                "inputs": {"n_max": self.entries[-1][0] if self.entries else 0},
                "metrics": {
                    "series": [[n, str(ratio), approx]
                               for n, ratio, approx in self.entries],
                    "nonincreasing_from": self.nonincreasing_from,
                },
                "holds": None}


def radical_littleo_report(lhs, n_max: int) -> LittleOReport:
    """Exact series N(F)/F along the diagonal assignment n_i = n, z_j = n.

    Needs full-integer or progression set specs: then the radical of F is the
    primorial of n times the primes of the fixed constants, no factorization
    of F itself required.
    """
    for _, spec, _ in lhs.factorial_terms:
        if spec.variant == "explicit":
            raise ValueError("closed-form radicals need progression set specs")
    if not lhs.factorial_terms:
        raise ValueError("left side has no factorial part")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    constant = abs(lhs.b)
    for _, spec, base in lhs.factorial_terms:
        step = spec.step if spec.variant == "ap" else 1
        constant *= step * base
    for p, _ in lhs.prime_power_terms:
        constant *= p
    constant_primes = [p for p, _ in arith.factorize(constant).factors]

    entries = []
    ratios = []
    for n in range(1, n_max + 1):
        assignment = {var: n for var in lhs.variables()}
        value = eval_lhs(lhs, assignment)
        rad = primorial(n)
        for p in constant_primes:
            if p > n:
                rad *= p
        ratio = Fraction(rad, abs(value))
        entries.append((n, ratio, math.exp(log_int(rad) - log_int(abs(value)))))
        ratios.append(ratio)

    nonincreasing_from = None
    for i in range(len(ratios)):
        if all(ratios[j + 1] <= ratios[j] for j in range(i, len(ratios) - 1)):
            nonincreasing_from = i + 1
            break
    return LittleOReport(entries, nonincreasing_from, entries[-1][2])
