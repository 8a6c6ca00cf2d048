"""Sound tuple-elimination certificates.

Both pruners reason about the p-adic valuation of the left side, computed in
closed form, and never about candidate x, y values. A certificate therefore
proves that no solution exists at that tuple; searches may skip it.
"""

from __future__ import annotations

from .. import arith


def _effective_bases(lhs) -> list[int]:
    """Constants whose primes could interfere with the interval prime."""
    out = [abs(lhs.b)]
    for _, spec, base in lhs.factorial_terms:
        step = spec.step if spec.variant == "ap" else 1
        out.append(step * base)
    for p, _ in lhs.prime_power_terms:
        out.append(p)
    return out


def prune_bertrand(lhs, assignment: dict, d: int) -> dict | None:
    """Certificate that lhs(assignment) is not a d-th power, or None.

    Looks for a prime q strictly between n*/2 and n* (n* the largest
    factorial value). Such a q exceeds every base and |b| once n* is past
    twice their maximum, so its exponent in the product counts only the
    factorials; if that exponent is not a multiple of d the product cannot
    be x^d. The smallest qualifying q is reported, for reproducibility.
    """
    if d < 2:
        return None
    values = [assignment[v] for v, _, _ in lhs.factorial_terms if v in assignment]
    if not values:
        return None
    n_star = max(values)
    limit = max(_effective_bases(lhs))
    if n_star <= 2 * limit:
        return None
    for q in range(n_star // 2 + 1, n_star):
        if q <= limit or not arith.is_prime(q):
            continue
        v = arith.factorial_product_valuation(lhs, assignment, q)
        if v >= 1 and v % d != 0:
            return {"kind": "prune", "rule": "interval-prime",
                    "q": q, "valuation": v, "degree": d}
    return None


def prune_no_root_mod_q(form, q: int, v: int) -> dict | None:
    """Certificate that a value N with v_q(N) == v is not represented, or None.

    Requires: q odd prime, q does not divide the leading coefficient nor the
    (denominator-cleared) modified discriminant, f(x, 1) has no root mod q,
    and 1 <= v < d. Then q | f(x, y) forces q | y (no root mod q), hence
    q | x (leading term), hence q^d | f(x, y); a value divisible by q but
    not by q^d cannot be represented.
    """
    d = form.degree
    if d < 2 or q == 2 or not arith.is_prime(q):
        return None
    if not (1 <= v < d):
        return None
    lead = form.coefficients[0]
    if lead % q == 0:
        return None
    try:
        delta = arith.modified_discriminant(form)
    except ValueError:
        return None
    if delta == 0 or (delta.numerator * delta.denominator) % q == 0:
        return None
    dehom = form.dehomogenized()
    if any(dehom(x) % q == 0 for x in range(q)):
        return None
    return {"kind": "prune", "rule": "no-root-mod-q",
            "q": q, "valuation": v, "degree": d}
