"""Perfect-power equations lhs = x^d: bounded search and the explicit
infinite families for d <= r.
"""

from __future__ import annotations

import math
from collections import Counter

from .. import arith
from ..bhargava import SetSpec
from ..model import BinaryForm, FactorialProductLHS, eval_lhs
from .prune import prune_bertrand
from .types import BudgetClock, SearchBounds, SearchResult, SolutionRecord, TupleSpace

# direct big-integer re-evaluation of constructed members is skipped above this
_DIRECT_VERIFY_M = 2000


def _power_roots(value: int, d: int) -> list[int]:
    """All integers x with x^d == value, ascending."""
    if value < 0:
        if d % 2 == 0:
            return []
        root, exact = arith.integer_nth_root(-value, d)
        return [-root] if exact else []
    root, exact = arith.integer_nth_root(value, d)
    if not exact:
        return []
    if value == 0:
        return [0]
    return [-root, root] if d % 2 == 0 else [root]


def search_power(lhs: FactorialProductLHS, d: int, bounds: SearchBounds, *,
                 prune: bool = True, tuple_range=None) -> SearchResult:
    """All tuples in bounds whose product value is a d-th power.

    Tuples eliminated by prune_bertrand are skipped and recorded as prune
    events; the remaining ones are decided exactly by integer root
    extraction. For d == 1 every tuple is trivially a solution and the result
    carries a warning that the family is infinite beyond the bounds.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    variables = [v for v, _, _ in lhs.factorial_terms] + \
                [v for _, v in lhs.prime_power_terms]
    space = TupleSpace(variables, bounds)
    clock = BudgetClock(bounds)
    out = SearchResult(total=space.total)
    text = f"{lhs} = x^{d}" if d > 1 else f"{lhs} = x"
    if d == 1:
        out.warnings.append(
            "degree 1: every tuple is a solution; family is infinite")
    start, stop = tuple_range or (0, space.total)
    for _, assignment in space.iterate(start, stop):
        if not clock.tick():
            out.complete = False
            out.warnings.append("budget exhausted; results are partial")
            break
        if prune and d >= 2:
            certificate = prune_bertrand(lhs, assignment, d)
            if certificate is not None:
                out.pruned.append(SolutionRecord(text, dict(assignment),
                                                 False, certificate))
                continue
        value = eval_lhs(lhs, assignment)
        for x in _power_roots(value, d):
            record = dict(assignment)
            record["x"] = x
            out.records.append(SolutionRecord(
                text, record, True, {"kind": "exact-equality"}))
    out.nodes = clock.nodes
    return out


# ---------------------------------------------------------------------------
# explicit families


def _prime_counter(n: int) -> Counter:
    return Counter(dict(arith.factorize(n).factors)) if n > 1 else Counter()


def _scaled(counter: Counter, k: int) -> Counter:
    return Counter({p: e * k for p, e in counter.items()})


def _family_text(b: int, bases, rhs_text: str, var_names) -> str:
    parts = [str(b)]
    for name, base in zip(var_names, bases):
        parts.append(f"{name}!")
        if base > 1:
            parts.append(f"{base}^{name}")
    return " * ".join(parts) + f" = {rhs_text}"


def construct_power_family(b: int, bases, d: int, t: int) -> SolutionRecord:
    """One member of the infinite family solving b * prod(n_i! A_i^{n_i}) = x^d.

    Setting n_1 = ... = n_{d-1} = m, n_d = m + 1 and the remaining variables
    to 1 turns the product into (A_1..A_d)^{m-d+1} (m!)^d R d (s+1) with
    R = |b| (A_1..A_d)^{d-1} A_d A_{d+1}..A_r and m + 1 = d(s + 1); the
    choice s = (Rd)^{td-1} - 1 makes everything a d-th power. For b < 0 the
    sign is carried by x, which needs d and t odd.

    The returned record is verified: by direct evaluation when m is small,
    and always by an exact identity check on factored exponents (the tuple
    can be far beyond anything evaluable).
    """
    bases = list(bases)
    r = len(bases)
    if d < 2:
        raise ValueError("d must be >= 2")
    if d > r:
        raise ValueError("need d <= r for the constructive family")
    if t < 1:
        raise ValueError("t must be >= 1")
    if any(a < 1 for a in bases):
        raise ValueError("bases must be positive")
    if b == 0:
        raise ValueError("b must be nonzero")
    if b < 0:
        if d % 2 == 0:
            raise ValueError("b < 0 with even d has no solutions")
        if t % 2 == 0:
            raise ValueError("b < 0 needs odd t")

    head = math.prod(bases[:d])
    tail = math.prod(bases[d:])
    r_const = abs(b) * head ** (d - 1) * bases[d - 1] * tail
    s = (r_const * d) ** (t * d - 1) - 1
    m = d * (s + 1) - 1
    if not _verify_family_exponents(abs(b), bases, d, t, r_const, s, m):
        raise AssertionError("construction identity failed")

    var_names = [f"n{i + 1}" for i in range(r)]
    assignment = {var_names[i]: m for i in range(d - 1)}
    assignment[var_names[d - 1]] = m + 1
    for i in range(d, r):
        assignment[var_names[i]] = 1

    sign = -1 if b < 0 else 1
    if m <= _DIRECT_VERIFY_M:
        x_value = sign * head ** s * math.factorial(m) * (r_const * d) ** t
        lhs = FactorialProductLHS(
            b,
            tuple((var_names[i], SetSpec.integers(), bases[i]) for i in range(r)),
            ())
        if eval_lhs(lhs, assignment) != x_value ** d:
            raise AssertionError("construction failed direct verification")
        assignment["x"] = x_value
    else:
        prefix = "-" if sign < 0 else ""
        assignment["x_formula"] = \
            f"{prefix}{head}^{s} * {m}! * {r_const * d}^{t}"

    text = _family_text(b, bases, f"x^{d}", var_names)
    certificate = {"kind": "construction", "t": t, "R": r_const, "s": s, "m": m}
    return SolutionRecord(text, assignment, True, certificate)


def _verify_family_exponents(b_abs: int, bases, d: int, t: int,
                             r_const: int, s: int, m: int) -> bool:
    """Check x^d == |b| * prod(n_i! A_i^{n_i}) on factored exponents.

    Both sides share (m!)^d; the remaining parts are products of small
    constants raised to huge exponents, compared prime by prime.
    """
    head = _prime_counter(math.prod(bases[:d]))
    lhs_primes = _scaled(head, d * s)
    lhs_primes.update(_scaled(_prime_counter(r_const * d), d * t))

    rhs_primes = _prime_counter(b_abs)
    rhs_primes.update(_prime_counter(d))                        # m + 1 = d(s+1)
    rhs_primes.update(_scaled(_prime_counter(r_const * d), t * d - 1))
    rhs_primes.update(_scaled(head, m))
    rhs_primes.update(_prime_counter(bases[d - 1]))
    for a in bases[d:]:
        rhs_primes.update(_prime_counter(a))
    return lhs_primes == rhs_primes


def corollary_family(form: BinaryForm, b: int, bases, side: str = "auto",
                     t: int = 1) -> SolutionRecord:
    """A verified member of an infinite family for b * prod = f(x, y), d <= r.

    Contracts the form to one variable: along x = y when the coefficient sum
    is positive, else x = s*y (leading coefficient positive) or y = s*x
    (trailing coefficient positive) with the smallest s >= 1 making the
    contracted coefficient e = f(s, 1) resp. f(1, s) positive. The equation
    e * w^d = b * prod is then solved like the power family, with s + 1
    enlarged by e^{d+1} so that e folds into the d-th power.
    """
    bases = list(bases)
    r = len(bases)
    d = form.degree
    if b <= 0:
        raise ValueError("b must be positive")
    if d < 2:
        raise ValueError("form degree must be >= 2")
    if d > r:
        raise ValueError("need d <= r")
    if t < 1:
        raise ValueError("t must be >= 1")
    if any(a < 1 for a in bases):
        raise ValueError("bases must be positive")

    coeff_sum = sum(form.coefficients)
    lead, trail = form.coefficients[0], form.coefficients[-1]
    choice = None
    if side in ("auto", "diagonal") and coeff_sum > 0:
        choice = ("diagonal", 1, coeff_sum)
    elif side in ("auto", "x=sy") and lead > 0:
        s_mult = 1
        while form(s_mult, 1) <= 0:
            s_mult += 1
        choice = ("x=sy", s_mult, form(s_mult, 1))
    elif side in ("auto", "y=sx") and trail > 0:
        s_mult = 1
        while form(1, s_mult) <= 0:
            s_mult += 1
        choice = ("y=sx", s_mult, form(1, s_mult))
    if choice is None:
        raise ValueError(
            "no admissible direction: need positive coefficient sum, leading "
            "or trailing coefficient")
    side_name, s_mult, e = choice

    head_int = math.prod(bases[:d])
    tail = math.prod(bases[d:])
    r_const = b * head_int ** (d - 1) * bases[d - 1] * tail
    s = e ** (d + 1) * (r_const * d) ** (t * d - 1) - 1
    m = d * (s + 1) - 1
    if not _verify_contracted_exponents(b, bases, d, e, r_const, s, m, t):
        raise AssertionError("construction identity failed")

    var_names = [f"n{i + 1}" for i in range(r)]
    assignment = {var_names[i]: m for i in range(d - 1)}
    assignment[var_names[d - 1]] = m + 1
    for i in range(d, r):
        assignment[var_names[i]] = 1

    if m <= _DIRECT_VERIFY_M:
        w = head_int ** s * math.factorial(m) * e * (r_const * d) ** t
        if side_name == "diagonal":
            x_val, y_val = w, w
        elif side_name == "x=sy":
            x_val, y_val = s_mult * w, w
        else:
            x_val, y_val = w, s_mult * w
        product = b
        for i in range(r):
            n_i = assignment[var_names[i]]
            product *= math.factorial(n_i) * bases[i] ** n_i
        if form(x_val, y_val) != product:
            raise AssertionError("construction failed direct verification")
        assignment["x"] = x_val
        assignment["y"] = y_val
    else:
        w_formula = f"{head_int}^{s} * {m}! * {e * (r_const * d) ** t}"
        if side_name == "diagonal":
            assignment["x_formula"] = assignment["y_formula"] = w_formula
        elif side_name == "x=sy":
            assignment["x_formula"] = f"{s_mult} * ({w_formula})"
            assignment["y_formula"] = w_formula
        else:
            assignment["x_formula"] = w_formula
            assignment["y_formula"] = f"{s_mult} * ({w_formula})"

    text = _family_text(b, bases, str(form), var_names)
    certificate = {"kind": "construction", "t": t, "R": r_const, "s": s, "m": m,
                   "side": side_name, "scale": s_mult, "coefficient": e}
    return SolutionRecord(text, assignment, True, certificate)


def _verify_contracted_exponents(b, bases, d, e, r_const, s, m, t) -> bool:
    """Check e * w^d == b * prod(n_i! A_i^{n_i}) on factored exponents, with
    w = head^s * m! * e * (Rd)^t and the (m!)^d parts already cancelled."""
    head = _prime_counter(math.prod(bases[:d]))
    lhs_primes = _prime_counter(e)
    lhs_primes.update(_scaled(head, d * s))
    lhs_primes.update(_scaled(_prime_counter(e), d))
    lhs_primes.update(_scaled(_prime_counter(r_const * d), d * t))

    rhs_primes = _prime_counter(b)
    rhs_primes.update(_prime_counter(d))                     # m + 1 = d(s+1)
    rhs_primes.update(_scaled(_prime_counter(e), d + 1))     # from s + 1
    rhs_primes.update(_scaled(_prime_counter(r_const * d), t * d - 1))
    rhs_primes.update(_scaled(head, m))
    rhs_primes.update(_prime_counter(bases[d - 1]))
    for a in bases[d:]:
        rhs_primes.update(_prime_counter(a))
    return lhs_primes == rhs_primes
