"""Generalized factorials n!_S over integer subsets.

The factorial of a subset S of Z is defined through p-orderings: greedily
pick elements of S so that each new element minimizes the p-adic valuation of
the product of differences with the elements already chosen. The minimal
valuations w_p(k) do not depend on the greedy choices, and
n!_S = prod over p of p^(w_p(n)).

Arithmetic progressions admit the closed form n!_S = A^n * n! (for step A),
which this module uses directly; the greedy algorithm remains available for
cross-checking and for explicit finite truncations of other sets.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from . import arith
from .errors import InstabilityError

_AP_RE = re.compile(r"^AP\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")


@dataclass(frozen=True)
class SetSpec:
    """One of: all integers, an arithmetic progression, a finite truncation."""

    variant: str                       # "integers" | "ap" | "explicit"
    step: int = 1                      # progression step A (>= 1)
    offset: int = 0                    # progression offset, normalized to [0, step)
    elements: tuple[int, ...] = ()     # explicit variant only, strictly increasing

    @staticmethod
    def integers() -> "SetSpec":
        return SetSpec("integers")

    @staticmethod
    def ap(step: int, offset: int = 0) -> "SetSpec":
        if step < 1:
            raise ValueError("progression step must be >= 1")
        # factorials of S are translation invariant; normalize the offset
        return SetSpec("ap", step=step, offset=offset % step)

    @staticmethod
    def explicit(elements) -> "SetSpec":
        elems = tuple(sorted(set(int(e) for e in elements)))
        if len(elems) < 2:
            raise ValueError("explicit truncation needs >= 2 distinct elements")
        return SetSpec("explicit", elements=elems)

    @staticmethod
    def parse(text: str) -> "SetSpec":
        text = text.strip()
        if text == "Z":
            return SetSpec.integers()
        m = _AP_RE.match(text)
        if m:
            return SetSpec.ap(int(m.group(1)), int(m.group(2)))
        if text.startswith("{") and text.endswith("}"):
            return SetSpec.explicit(int(t) for t in text[1:-1].split(","))
        raise ValueError(f"unrecognized set spec {text!r}")

    def __str__(self):
        if self.variant == "integers":
            return "Z"
        if self.variant == "ap":
            return f"AP({self.step},{self.offset})"
        return "{" + ",".join(str(e) for e in self.elements) + "}"


@dataclass(frozen=True)
class POrdering:
    """Greedy p-ordering prefix: chosen elements and their minimal valuations.

    valuations[k] == v_p(prod_{i<k}(chosen[k] - chosen[i])), minimal over all
    candidate elements at step k; valuations[0] == 0.
    """

    p: int
    chosen: tuple[int, ...]
    valuations: tuple[int, ...]


def _min_valuation_class(p: int, elems: list[int]) -> tuple[int, int, int]:
    """Exact min over all integers t of sum(v_p(t - e) for e in elems).

    Returns (minimum, residue, modulus): every integer congruent to
    ``residue`` modulo ``modulus`` and distinct from the elements achieves the
    minimum. Recursion on p-adic digits: fixing t = c (mod p) costs one for
    each element in that class and recurses on (e - c) / p.
    """
    if not elems:
        return 0, 0, 1
    by_digit: dict[int, list[int]] = {}
    for e in elems:
        by_digit.setdefault(e % p, []).append(e)
    if len(by_digit) < p:
        c = min(d for d in range(p) if d not in by_digit)
        return 0, c, p
    best = None
    for c in range(p):
        sub = by_digit[c]
        cost, res, mod = _min_valuation_class(p, [(e - c) // p for e in sub])
        cost += len(sub)
        if best is None or cost < best[0]:
            best = (cost, c + p * res, p * mod)
    return best


def _first_in_class(residue: int, modulus: int) -> int:
    """Earliest index in the enumeration 0, 1, -1, 2, -2, ... hitting the class."""
    r = residue % modulus
    if r == 0:
        return 0
    neg = r - modulus
    return r if r <= -neg else neg


def p_ordering(s: SetSpec, p: int, k: int) -> POrdering:
    """Greedy p-ordering of S of length k + 1.

    For Z and arithmetic progressions the argmin over the infinite set is
    found exactly by digit recursion (differences reduce to index space);
    explicit truncations are searched element by element.
    """
    if not arith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 0:
        raise ValueError("k must be >= 0")

    if s.variant == "explicit":
        if len(s.elements) < k + 1:
            raise ValueError(
                f"truncation of size {len(s.elements)} too short for k={k}")
        return _p_ordering_finite(list(s.elements), p, k)

    step = s.step if s.variant == "ap" else 1
    offset = s.offset if s.variant == "ap" else 0
    vp_step = arith.valuation(step, p) if step > 1 else 0

    indices: list[int] = []
    chosen: list[int] = []
    valuations: list[int] = []
    for j in range(k + 1):
        if j == 0:
            idx, w = 0, 0
        else:
            w_idx, res, mod = _min_valuation_class(p, indices)
            idx = _first_in_class(res, mod)
            w = w_idx + j * vp_step
        indices.append(idx)
        chosen.append(offset + step * idx)
        valuations.append(w)
    return POrdering(p, tuple(chosen), tuple(valuations))


def _p_ordering_finite(elements: list[int], p: int, k: int) -> POrdering:
    chosen: list[int] = []
    valuations: list[int] = []
    remaining = list(elements)
    for j in range(k + 1):
        best = None
        for e in remaining:
            total = 0
            for c in chosen:
                total += arith.valuation(e - c, p)
            if best is None or total < best[0]:
                best = (total, e)
        w, e = best
        chosen.append(e)
        remaining.remove(e)
        valuations.append(w)
    return POrdering(p, tuple(chosen), tuple(valuations))


def _factorial_from_orderings(s: SetSpec, n: int, elements: list[int]) -> int:
    diameter = max(elements) - min(elements)
    out = 1
    for p in arith.sieve_primes(diameter):
        w = _p_ordering_finite(elements, p, n).valuations[n]
        out *= p ** w
    return out


def bhargava_factorial(s: SetSpec, n: int) -> int:
    """n!_S: closed form for Z and progressions, p-orderings otherwise.

    Explicit truncations stand in for an infinite S, so the value is computed
    twice: from the first half of the truncation and from all of it. Any
    disagreement (or a half too short to cover n+1 elements) raises
    InstabilityError: the truncation does not determine n!_S.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if s.variant == "integers":
        return math.factorial(n)
    if s.variant == "ap":
        return s.step ** n * math.factorial(n)

    elements = list(s.elements)
    if len(elements) < n + 1:
        raise ValueError(
            f"truncation of size {len(elements)} too short for n={n}")
    half = elements[: (len(elements) + 1) // 2]
    if len(half) < n + 1:
        raise InstabilityError(
            f"truncation of size {len(elements)} too short to stability-check n={n}")
    value_half = _factorial_from_orderings(s, n, half)
    value_full = _factorial_from_orderings(s, n, elements)
    if value_half != value_full:
        raise InstabilityError(
            f"enlarging the truncation changed {n}!_S from {value_half} to {value_full}")
    return value_full


def double_factorial(n: int) -> int:
    """n!! = n (n-2) (n-4) ...; empty product for n in {0, 1}."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out
