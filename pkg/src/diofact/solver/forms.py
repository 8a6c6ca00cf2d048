"""Searches with two unknowns: general binary forms, the product shapes
x^s y^s (x^s +- y^s), and arbitrary bivariate right sides.
"""

from __future__ import annotations

import math
from itertools import product as iter_product

from .. import arith
from ..errors import FactorBudgetError
from ..model import BinaryForm, BivariatePoly, eval_lhs
from .prune import prune_no_root_mod_q
from .types import BudgetClock, SearchBounds, SearchResult, SolutionRecord, TupleSpace
from .univariate import integer_poly_solutions

# odd primes tried per tuple when pruning binary-form searches
PRUNE_PRIME_POOL = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _lhs_space(lhs, bounds) -> TupleSpace:
    variables = [v for v, _, _ in lhs.factorial_terms] + \
                [v for _, v in lhs.prime_power_terms]
    return TupleSpace(variables, bounds)


def search_binary_form(eq, bounds: SearchBounds, *, coprime_only: bool = False,
                       prune: bool = True, tuple_range=None) -> SearchResult:
    """All (tuple, x, y) in bounds with lhs(tuple) = f(x, y).

    x runs over its bound; for each x the form becomes a polynomial in y and
    is solved exactly, so the y bound only filters. Tuples carrying a
    no-root-mod-q certificate are skipped with the certificate recorded.
    """
    form = eq.rhs
    if not isinstance(form, BinaryForm):
        raise ValueError("equation right side is not a binary form")
    if form.degree < 2:
        raise ValueError("form degree must be >= 2")
    coprime_only = coprime_only or eq.coprime_xy
    space = _lhs_space(eq.lhs, bounds)
    clock = BudgetClock(bounds)
    out = SearchResult(total=space.total)
    x_lo, x_hi = bounds.range_of("x")
    y_lo, y_hi = bounds.range_of("y")
    start, stop = tuple_range or (0, space.total)
    text = eq.text()
    for _, assignment in space.iterate(start, stop):
        if not clock.tick():
            out.complete = False
            out.warnings.append("budget exhausted; results are partial")
            break
        if prune:
            certificate = _form_prune(eq.lhs, assignment, form)
            if certificate is not None:
                out.pruned.append(SolutionRecord(text, dict(assignment),
                                                 False, certificate))
                continue
        target = eval_lhs(eq.lhs, assignment)
        pairs = []
        for x in range(x_lo, x_hi + 1):
            poly_y = form.poly_in_y(x)
            if poly_y.degree == 0:
                if poly_y.coefficients[0] == target:
                    pairs.extend((x, y) for y in range(y_lo, y_hi + 1))
                continue
            pairs.extend((x, y) for y in
                         integer_poly_solutions(poly_y, target, y_lo, y_hi))
        for x, y in sorted(pairs):
            if coprime_only and math.gcd(x, y) != 1:
                continue
            record = dict(assignment)
            record["x"], record["y"] = x, y
            out.records.append(SolutionRecord(
                text, record, True, {"kind": "exact-equality"}))
    out.nodes = clock.nodes
    return out


def _form_prune(lhs, assignment, form) -> dict | None:
    for q in PRUNE_PRIME_POOL:
        v = arith.factorial_product_valuation(lhs, assignment, q)
        certificate = prune_no_root_mod_q(form, q, v)
        if certificate is not None:
            return certificate
    return None


# ---------------------------------------------------------------------------
# product shapes x^s y^s (x^s +- y^s) via coprime divisor partitions


def xy_product_solutions(value: int, s: int, sign: int) -> list[tuple[int, int]]:
    """All coprime integer pairs with x^s * y^s * (x^s + sign*y^s) == value.

    For coprime x, y the three factors are pairwise coprime, so each prime
    power of value lands wholly in one of them: enumerate the 3^omega
    assignments, demand two parts be exact s-th powers, and check the full
    identity. Complete whenever value can be factored.
    """
    if value == 0:
        raise ValueError("value must be nonzero")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if s < 1:
        raise ValueError("s must be >= 1")
    factors = arith.factorize(value).factors
    prime_powers = [p ** e for p, e in factors]
    found: set[tuple[int, int]] = set()
    for split in iter_product((0, 1, 2), repeat=len(prime_powers)):
        parts = [1, 1, 1]
        for bucket, pp in zip(split, prime_powers):
            parts[bucket] *= pp
        xs = _signed_power_roots(parts[0], s)
        if not xs:
            continue
        ys = _signed_power_roots(parts[1], s)
        for x in xs:
            for y in ys:
                if math.gcd(x, y) != 1:
                    continue
                if x ** s * y ** s * (x ** s + sign * y ** s) == value:
                    found.add((x, y))
    return sorted(found)


def _signed_power_roots(magnitude: int, s: int) -> list[int]:
    """Integers x with |x|^s == magnitude (both signs; s even keeps both too,
    the final identity check disambiguates)."""
    root, exact = arith.integer_nth_root(magnitude, s)
    if not exact:
        return []
    return [root, -root] if root else [0]


def search_special_form_xy(sign: int, lhs, bounds: SearchBounds, *,
                           tuple_range=None) -> SearchResult:
    """All coprime (x, y) with x*y*(x + sign*y) = lhs(tuple), via divisor
    partitions; falls back to a bounded grid when factoring gives up."""
    return search_thue_mahler_form(lhs, 1, sign, bounds, tuple_range=tuple_range)


def search_thue_mahler_form(lhs, s: int, sign: int, bounds: SearchBounds, *,
                            tuple_range=None) -> SearchResult:
    """All coprime (x, y) with x^s y^s (x^s + sign*y^s) = lhs(tuple).

    Prime-power exponent variables of the left side enumerate with the
    factorial variables. Results are complete per tuple; x/y bounds, when
    present, only filter. If factoring a value exceeds its budget the tuple
    is handled by a grid search over the x/y bounds instead (flagged,
    and an error if no bounds were given).
    """
    space = _lhs_space(lhs, bounds)
    clock = BudgetClock(bounds)
    out = SearchResult(total=space.total)
    x_range = bounds.range_of("x") if bounds.has("x") else None
    y_range = bounds.range_of("y") if bounds.has("y") else None
    start, stop = tuple_range or (0, space.total)
    op = "+" if sign > 0 else "-"
    if s == 1:
        rhs_text = f"x*y*(x {op} y)"
    else:
        rhs_text = f"x^{s}*y^{s}*(x^{s} {op} y^{s})"
    text = f"{lhs} = {rhs_text}"
    for _, assignment in space.iterate(start, stop):
        if not clock.tick():
            out.complete = False
            out.warnings.append("budget exhausted; results are partial")
            break
        value = eval_lhs(lhs, assignment)
        try:
            pairs = xy_product_solutions(value, s, sign)
        except FactorBudgetError:
            pairs = _grid_pairs(value, s, sign, x_range, y_range)
            flag = "factoring budget exceeded; grid fallback used"
            if flag not in out.warnings:
                out.warnings.append(flag)
        for x, y in pairs:
            if x_range and not x_range[0] <= x <= x_range[1]:
                continue
            if y_range and not y_range[0] <= y <= y_range[1]:
                continue
            record = dict(assignment)
            record["x"], record["y"] = x, y
            out.records.append(SolutionRecord(
                text, record, True, {"kind": "exact-equality"}))
    out.nodes = clock.nodes
    return out


def _grid_pairs(value, s, sign, x_range, y_range):
    if x_range is None or y_range is None:
        raise ValueError("grid fallback needs x and y bounds")
    pairs = []
    for x in range(x_range[0], x_range[1] + 1):
        for y in range(y_range[0], y_range[1] + 1):
            if math.gcd(x, y) != 1:
                continue
            if x ** s * y ** s * (x ** s + sign * y ** s) == value:
                pairs.append((x, y))
    return sorted(pairs)


# ---------------------------------------------------------------------------
# general bivariate right sides


def solve_bivariate(eq, bounds: SearchBounds, *, tuple_range=None) -> SearchResult:
    """Bounded enumeration for a general f(x, y) right side.

    For each fixed y in its bound the equation reduces to an exact univariate
    solve in x; a y-slice whose x-part degenerates to a constant matches
    either every x in the x bound or none.
    """
    rhs = eq.rhs
    if not isinstance(rhs, BivariatePoly):
        raise ValueError("equation right side is not a general bivariate polynomial")
    space = _lhs_space(eq.lhs, bounds)
    clock = BudgetClock(bounds)
    out = SearchResult(total=space.total)
    y_lo, y_hi = bounds.range_of("y")
    x_range = bounds.range_of("x") if bounds.has("x") else None
    start, stop = tuple_range or (0, space.total)
    text = eq.text()
    for _, assignment in space.iterate(start, stop):
        if not clock.tick():
            out.complete = False
            out.warnings.append("budget exhausted; results are partial")
            break
        target = eval_lhs(eq.lhs, assignment)
        pairs = []
        for y in range(y_lo, y_hi + 1):
            poly_x = rhs.substitute_y(y)
            if poly_x.degree == 0:
                if poly_x.coefficients[0] == target:
                    if x_range is None:
                        raise ValueError(
                            "x bound required: right side is constant in x "
                            f"at y={y}")
                    pairs.extend((x, y) for x in range(x_range[0], x_range[1] + 1))
                continue
            lo, hi = x_range if x_range else (None, None)
            pairs.extend((x, y) for x in integer_poly_solutions(poly_x, target, lo, hi))
        for x, y in sorted(pairs):
            if eq.coprime_xy and math.gcd(x, y) != 1:
                continue
            record = dict(assignment)
            record["x"], record["y"] = x, y
            out.records.append(SolutionRecord(
                text, record, True, {"kind": "exact-equality"}))
    out.nodes = clock.nodes
    return out
