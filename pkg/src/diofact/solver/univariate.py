"""Complete integer solving of f(x) = M by monotone-piece bisection.

The real line is cut at integer breakpoints bracketing every real root of
f', so f is strictly monotone between consecutive breakpoints. Each piece
holds at most one solution, found by exact integer bisection (galloping
first on the two unbounded pieces). No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from ..model import UnivariatePoly, eval_lhs
from .types import BudgetClock, SearchBounds, SearchResult, SolutionRecord, TupleSpace


# ---------------------------------------------------------------------------
# Sturm chains over rationals (for isolating the roots of f')


def _poly_trim(c: list[Fraction]) -> list[Fraction]:
    i = 0
    while i < len(c) - 1 and c[i] == 0:
        i += 1
    return c[i:]


def _poly_is_zero(c: list[Fraction]) -> bool:
    return all(v == 0 for v in c)


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    rem = list(a)
    db, lb = len(b) - 1, b[0]
    while len(rem) - 1 >= db and len(rem) > 1:
        if rem[0] != 0:
            factor = rem[0] / lb
            for i in range(1, len(b)):
                rem[i] -= factor * b[i]
        rem.pop(0)
    if len(rem) - 1 >= db and rem[0] != 0:   # db == 0
        return [Fraction(0)]
    return _poly_trim(rem) if rem else [Fraction(0)]


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while not _poly_is_zero(b):
        a, b = b, _poly_rem(a, b)
    return a


def _poly_div_exact(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    rem = list(a)
    db, lb = len(b) - 1, b[0]
    out: list[Fraction] = []
    while len(rem) - 1 >= db:
        factor = rem[0] / lb
        out.append(factor)
        for i in range(1, len(b)):
            rem[i] -= factor * b[i]
        rem.pop(0)
    return out or [Fraction(0)]


def _poly_eval(c: list[Fraction], x) -> Fraction:
    out = Fraction(0)
    for v in c:
        out = out * x + v
    return out


def _sturm_chain(c: list[Fraction]) -> list[list[Fraction]]:
    chain = [list(c)]
    deriv = [v * (len(c) - 1 - i) for i, v in enumerate(c[:-1])]
    if deriv:
        chain.append(_poly_trim(deriv))
    while len(chain[-1]) > 1:
        rem = _poly_rem(chain[-2], chain[-1])
        if _poly_is_zero(rem):
            break
        chain.append([-v for v in rem])
    return chain


def _sign_variations(chain, x) -> int:
    signs = []
    for poly in chain:
        v = _poly_eval(poly, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _root_count(chain, lo, hi) -> int:
    """Number of distinct real roots in (lo, hi]."""
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def _critical_breakpoints(f: UnivariatePoly) -> list[int]:
    """Sorted integers bracketing every real root of f' at unit resolution.

    Between consecutive returned integers that are more than one apart, f'
    keeps one sign, so f is strictly monotone there.
    """
    fp = f.derivative()
    if fp.degree == 0:
        return []
    coeffs = [Fraction(c) for c in fp.coefficients]
    deriv2 = [v * (len(coeffs) - 1 - i) for i, v in enumerate(coeffs[:-1])]
    g = _poly_gcd(coeffs, deriv2)
    if len(g) > 1:
        coeffs = _poly_div_exact(coeffs, g)    # squarefree part
    if len(coeffs) <= 1:
        return []
    lead = abs(coeffs[0])
    bound = 1 + max(abs(v) / lead for v in coeffs)
    hi = int(bound) + 2
    lo = -hi
    chain = _sturm_chain(coeffs)
    marks: set[int] = set()
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = _root_count(chain, Fraction(a), Fraction(b))
        if n == 0:
            continue
        if b - a == 1:
            marks.add(a)
            marks.add(b)
            continue
        mid = (a + b) // 2
        stack.append((a, mid))
        stack.append((mid, b))
    return sorted(marks)


# ---------------------------------------------------------------------------
# monotone bisection


def _bisect_piece(f: UnivariatePoly, lo: int | None, hi: int | None,
                  target: int) -> int | None:
    """Unique integer solution of f(x) == target on a monotone piece, if any.

    ``lo``/``hi`` may be None for the unbounded pieces; f must be strictly
    monotone on the whole piece.
    """
    if lo is not None and hi is not None:
        if lo > hi:
            return None
        increasing = f(lo) <= f(hi)
    elif lo is None and hi is not None:
        increasing = f(hi - 1) < f(hi)
        v_hi = f(hi)
        if (target > v_hi) if increasing else (target < v_hi):
            return None
        step, a = 1, hi
        while (f(a) > target) if increasing else (f(a) < target):
            a = hi - step
            step *= 2
        lo = a
    elif hi is None and lo is not None:
        increasing = f(lo) < f(lo + 1)
        v_lo = f(lo)
        if (target < v_lo) if increasing else (target > v_lo):
            return None
        step, b = 1, lo
        while (f(b) < target) if increasing else (f(b) > target):
            b = lo + step
            step *= 2
        hi = b
    else:
        increasing = f(0) < f(1)
        step, a = 1, 0
        while (f(a) > target) if increasing else (f(a) < target):
            a = -step
            step *= 2
        step, b = 1, 0
        while (f(b) < target) if increasing else (f(b) > target):
            b = step
            step *= 2
        lo, hi = a, b
    a, b = lo, hi
    while a <= b:
        mid = (a + b) // 2
        v = f(mid)
        if v == target:
            return mid
        if (v < target) == increasing:
            a = mid + 1
        else:
            b = mid - 1
    return None


def integer_poly_solutions(f: UnivariatePoly, target: int,
                           lo: int | None = None, hi: int | None = None) -> list[int]:
    """All integers x with f(x) == target, ascending; optional range filter."""
    d = f.degree
    if d == 0:
        raise ValueError("cannot solve a constant polynomial for x")
    if d == 1:
        a, b = f.coefficients
        num = target - b
        sols = [num // a] if num % a == 0 else []
    else:
        marks = _critical_breakpoints(f)
        found: set[int] = set()
        if not marks:
            x = _bisect_piece(f, None, None, target)
            if x is not None:
                found.add(x)
        else:
            x = _bisect_piece(f, None, marks[0], target)
            if x is not None:
                found.add(x)
            for a, b in zip(marks, marks[1:]):
                if b - a == 1:
                    for cand in (a, b):
                        if f(cand) == target:
                            found.add(cand)
                else:
                    x = _bisect_piece(f, a, b, target)
                    if x is not None:
                        found.add(x)
            x = _bisect_piece(f, marks[-1], None, target)
            if x is not None:
                found.add(x)
        sols = sorted(found)
    if lo is not None:
        sols = [x for x in sols if x >= lo]
    if hi is not None:
        sols = [x for x in sols if x <= hi]
    return sols


# ---------------------------------------------------------------------------
# tuple-space driver


def solve_univariate(eq, bounds: SearchBounds, *, tuple_range=None) -> SearchResult:
    """All integer solutions (tuple, x) of lhs(tuple) = f(x) within bounds.

    Complete per tuple: every integer x is found, then filtered by an
    optional ``x`` bound. ``tuple_range`` restricts the flat tuple indices
    (used by workers and checkpoint resume).
    """
    if not isinstance(eq.rhs, UnivariatePoly):
        raise ValueError("equation right side is not univariate")
    if eq.rhs.degree < 1:
        raise ValueError("right side degree must be >= 1")
    space = TupleSpace(eq.variables(), bounds)
    clock = BudgetClock(bounds)
    out = SearchResult(total=space.total)
    x_lo = x_hi = None
    if bounds.has("x"):
        x_lo, x_hi = bounds.range_of("x")
    start, stop = tuple_range or (0, space.total)
    text = eq.text()
    for _, assignment in space.iterate(start, stop):
        if not clock.tick():
            out.complete = False
            out.warnings.append("budget exhausted; results are partial")
            break
        target = eval_lhs(eq.lhs, assignment)
        for x in integer_poly_solutions(eq.rhs, target, x_lo, x_hi):
            record = dict(assignment)
            record["x"] = x
            out.records.append(SolutionRecord(
                text, record, True, {"kind": "exact-equality"}))
    out.nodes = clock.nodes
    return out
