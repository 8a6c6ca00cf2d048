"""Generalized factorial tests. The greedy p-ordering is checked against a
brute-force window argmin and against the progression closed forms."""

import math

import pytest

from diofact import arith
from diofact.bhargava import (POrdering, SetSpec, bhargava_factorial,
                              double_factorial, p_ordering)
from diofact.errors import InstabilityError


def window_step_minimum(chosen, p, window=300):
    """Brute-force minimal valuation of prod(a - c) over a in [-window, window]."""
    best = None
    for a in range(-window, window + 1):
        if a in chosen:
            continue
        total = 0
        for c in chosen:
            total += arith.valuation(a - c, p)
        best = total if best is None else min(best, total)
    return best


# ---------------------------------------------------------------------------
# set specs


def test_set_spec_parse_and_print():
    assert str(SetSpec.parse("Z")) == "Z"
    assert str(SetSpec.parse("AP(2,0)")) == "AP(2,0)"
    assert str(SetSpec.parse("{0, 1, 4, 9}")) == "{0,1,4,9}"
    assert str(SetSpec.ap(2, -3)) == "AP(2,1)"      # offsets normalize
    with pytest.raises(ValueError):
        SetSpec.parse("AP(0,1)")
    with pytest.raises(ValueError):
        SetSpec.explicit([5])
    with pytest.raises(ValueError):
        SetSpec.parse("Q")


# ---------------------------------------------------------------------------
# p-orderings


def test_p_ordering_trivial_prefix():
    for spec in (SetSpec.integers(), SetSpec.ap(3, 1), SetSpec.explicit([0, 2, 5])):
        ordering = p_ordering(spec, 2, 0)
        assert ordering.valuations == (0,)
        assert len(ordering.chosen) == 1


def test_p_ordering_full_integers():
    ordering = p_ordering(SetSpec.integers(), 2, 4)
    assert ordering.valuations[4] == 3              # v_2(4!)
    # each valuation equals the valuation of the realized difference product
    for k in range(1, 5):
        product = 1
        for i in range(k):
            product *= ordering.chosen[k] - ordering.chosen[i]
        assert arith.valuation(product, 2) == ordering.valuations[k]


def test_p_ordering_progression_identity():
    ordering = p_ordering(SetSpec.ap(2, 0), 2, 3)
    assert ordering.valuations[3] == 4              # v_2(2^3 * 3!)


def test_p_ordering_minimality_bruteforce():
    for spec in (SetSpec.integers(), SetSpec.ap(3, 2)):
        for p in (2, 3, 5):
            ordering = p_ordering(spec, p, 6)
            for k in range(1, 7):
                chosen = set(ordering.chosen[:k])
                oracle = window_step_minimum(chosen, p)
                step = spec.step if spec.variant == "ap" else 1
                realized = ordering.valuations[k] - k * arith.valuation(step, p) \
                    if step > 1 else ordering.valuations[k]
                # oracle works in element space; divide out the step part
                if step > 1:
                    chosen_idx = {(c - spec.offset) // step for c in ordering.chosen[:k]}
                    oracle = window_step_minimum(chosen_idx, p)
                assert realized == oracle


def test_p_ordering_truncation_too_short():
    with pytest.raises(ValueError):
        p_ordering(SetSpec.explicit([0, 1, 4]), 2, 3)


def test_p_ordering_rejects_composite():
    with pytest.raises(ValueError):
        p_ordering(SetSpec.integers(), 4, 2)


# ---------------------------------------------------------------------------
# factorials


def test_factorial_full_integers():
    for n in range(0, 51):
        assert bhargava_factorial(SetSpec.integers(), n) == math.factorial(n)


def test_factorial_progression_closed_form():
    assert bhargava_factorial(SetSpec.ap(2, 1), 3) == 48
    assert bhargava_factorial(SetSpec.ap(3, 0), 2) == 18
    for a in range(1, 6):
        for b in range(-3, 4):
            for n in range(0, 13):
                assert bhargava_factorial(SetSpec.ap(a, b), n) \
                    == a ** n * math.factorial(n)


def test_factorial_progression_matches_orderings():
    for a in range(1, 6):
        for n in range(0, 13):
            spec = SetSpec.ap(a, 1)
            value = 1
            for p in arith.sieve_primes(max(2, n, a)):
                value *= p ** p_ordering(spec, p, n).valuations[n]
            assert value == bhargava_factorial(spec, n)


def test_plain_factorial_divides_generalized():
    specs = [SetSpec.ap(2, 0), SetSpec.ap(5, 3),
             SetSpec.explicit(list(range(0, 40, 3)))]
    for spec in specs:
        for n in range(0, 6):
            assert bhargava_factorial(spec, n) % math.factorial(n) == 0


def test_progression_binomial_integrality():
    spec = SetSpec.ap(3, 1)
    for m in range(0, 11):
        for n in range(0, 11):
            total = bhargava_factorial(spec, m + n)
            assert total % (bhargava_factorial(spec, m)
                            * bhargava_factorial(spec, n)) == 0


def test_explicit_truncation_squares():
    # frozen from the greedy oracle: w_2(3)=3, w_3(3)=2, w_5(3)=1 over the
    # first seven squares, stable between the 4- and 7-element truncations
    spec = SetSpec.explicit([0, 1, 4, 9, 16, 25, 36])
    assert bhargava_factorial(spec, 3) == 360


def test_explicit_truncation_instability():
    # half {0, 4} gives w_2(1) = 2, the full list reaches v_2(6 - 0) = 1
    spec = SetSpec.explicit([0, 4, 6, 8])
    with pytest.raises(InstabilityError):
        bhargava_factorial(spec, 1)


def test_explicit_truncation_too_short():
    spec = SetSpec.explicit([0, 1, 4, 9])
    with pytest.raises(ValueError):
        bhargava_factorial(spec, 5)            # not even n+1 elements
    with pytest.raises(InstabilityError):
        bhargava_factorial(spec, 3)            # half cannot cover n+1


# ---------------------------------------------------------------------------
# double factorial


def test_double_factorial_values():
    assert double_factorial(0) == 1
    assert double_factorial(1) == 1
    assert double_factorial(7) == 105
    assert double_factorial(8) == 384


def test_double_factorial_product_identity():
    for n in range(1, 31):
        assert double_factorial(n) * double_factorial(n - 1) == math.factorial(n)


def test_even_double_factorial_is_progression_factorial():
    for n in range(0, 15):
        assert double_factorial(2 * n) == bhargava_factorial(SetSpec.ap(2, 0), n)
