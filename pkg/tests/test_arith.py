"""Integer kernel tests: every derived value is recomputed by an independent
oracle (trial division, exhaustive enumeration, bracketing) inside the test."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diofact import arith
from diofact.errors import BudgetExceededError, FactorBudgetError
from diofact.model import BinaryForm, FactorialProductLHS, UnivariatePoly
from diofact.bhargava import SetSpec


def trial_division_primes(limit):
    return [n for n in range(2, limit + 1)
            if all(n % d for d in range(2, int(math.isqrt(n)) + 1))]


# ---------------------------------------------------------------------------
# sieve / primality


def test_sieve_small():
    assert arith.sieve_primes(1).primes == ()
    assert arith.sieve_primes(10).primes == (2, 3, 5, 7)


def test_sieve_against_trial_division():
    table = arith.sieve_primes(100)
    oracle = trial_division_primes(100)
    assert list(table.primes) == oracle
    assert len(table) == 25


def test_sieve_budget():
    with pytest.raises(BudgetExceededError):
        arith.sieve_primes(10 ** 6, max_limit=10 ** 5)
    with pytest.raises(ValueError):
        arith.sieve_primes(-1)


def test_is_prime_matches_sieve():
    oracle = set(trial_division_primes(2000))
    for n in range(2000):
        assert arith.is_prime(n) == (n in oracle)


def test_is_prime_large():
    assert arith.is_prime(2 ** 61 - 1)
    assert not arith.is_prime(2 ** 67 - 1)      # 193707721 * 761838257287


def test_prime_in_interval_examples():
    assert arith.prime_in_interval(3, 6) == 5
    assert arith.prime_in_interval(8, 10) is None
    assert arith.prime_in_interval(50, 100) == 53
    with pytest.raises(ValueError):
        arith.prime_in_interval(6, 6)


def test_prime_in_interval_is_smallest():
    primes = trial_division_primes(500)
    for lo in range(0, 120, 7):
        for hi in range(lo + 1, lo + 40, 11):
            expected = next((p for p in primes if lo < p < hi), None)
            assert arith.prime_in_interval(lo, hi) == expected


def test_bertrand_interval_never_empty():
    # n = 1 is the lone exception: the open interval (1, 2) holds no integer
    assert arith.prime_in_interval(1, 2) is None
    for n in range(2, 3000):
        assert arith.prime_in_interval(n, 2 * n) is not None


def test_bertrand_up_to_1e5_via_sieve():
    primes = arith.sieve_primes(2 * 10 ** 5).primes
    idx = 0
    for n in range(2, 10 ** 5 + 1):
        while primes[idx] <= n:
            idx += 1
        assert primes[idx] < 2 * n


# ---------------------------------------------------------------------------
# valuations


def test_legendre_examples():
    assert arith.legendre_valuation(5, 7) == 0
    # oracle: factor 10! = 3628800 directly
    value, count = 3628800, 0
    while value % 2 == 0:
        value //= 2
        count += 1
    assert count == 8
    assert arith.legendre_valuation(10, 2) == 8
    # oracle: count multiples of 5, 25 below 100
    assert sum(100 // 5 ** i for i in (1, 2)) == 24
    assert arith.legendre_valuation(100, 5) == 24


def test_legendre_rejects_composite():
    with pytest.raises(ValueError):
        arith.legendre_valuation(10, 6)


def test_legendre_against_direct_factorials():
    for n in range(0, 60):
        fact = math.factorial(n)
        for p in (2, 3, 5, 7, 11):
            count = 0
            value = fact
            while value % p == 0:
                value //= p
                count += 1
            assert arith.legendre_valuation(n, p) == count


# ---------------------------------------------------------------------------
# factorization / radical


def test_factorize_examples():
    assert arith.factorize(1) == arith.Factorization(1, ())
    assert arith.factorize(-1) == arith.Factorization(-1, ())
    assert arith.factorize(-12) == arith.Factorization(-1, ((2, 2), (3, 1)))
    assert arith.factorize(5041) == arith.Factorization(1, ((71, 2),))
    with pytest.raises(ValueError):
        arith.factorize(0)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=-10 ** 6, max_value=10 ** 6).filter(lambda m: m != 0))
def test_factorize_roundtrip(m):
    assert arith.factorize(m).value() == m


def test_factorize_large_semiprime():
    p, q = 1_000_003, 1_000_033
    fz = arith.factorize(p * q)
    assert fz.factors == ((p, 1), (q, 1))


def test_factorize_budget_error():
    p = 2 ** 89 - 1
    q = 2 ** 107 - 1
    with pytest.raises(FactorBudgetError) as info:
        arith.factorize(p * q, rho_budget=10)
    assert info.value.cofactor > 1
    assert (p * q) % info.value.cofactor == 0


def test_radical_examples():
    assert arith.radical(1) == 1
    assert arith.radical(-1) == 1
    assert arith.radical(1024) == 2
    assert arith.radical(12) == 6


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=30000),
       st.integers(min_value=1, max_value=30000))
def test_radical_multiplicative_when_coprime(a, b):
    if math.gcd(a, b) == 1:
        assert arith.radical(a * b) == arith.radical(a) * arith.radical(b)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10 ** 6),
       st.integers(min_value=1, max_value=4))
def test_radical_divides_and_power_invariant(a, k):
    rad = arith.radical(a)
    assert a % rad == 0
    assert arith.radical(a ** k) == rad


# ---------------------------------------------------------------------------
# roots


def test_nth_root_examples():
    for d in (1, 2, 3, 7):
        assert arith.integer_nth_root(1, d) == (1, True)
    assert arith.integer_nth_root(144, 2) == (12, True)
    assert arith.integer_nth_root(145, 2) == (12, False)
    assert arith.integer_nth_root(0, 5) == (0, True)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 40),
       st.integers(min_value=1, max_value=9))
def test_nth_root_bracketing(m, d):
    root, exact = arith.integer_nth_root(m, d)
    assert root ** d <= m < (root + 1) ** d
    assert exact == (root ** d == m)


# ---------------------------------------------------------------------------
# discriminants


def test_discriminant_closed_forms():
    assert arith.discriminant([1, 0, -1]) == 4             # x^2 - 1
    assert arith.discriminant([1, 1, 1]) == -3             # x^2 + x + 1
    assert arith.discriminant([1, 0, -1, 0]) == 4          # x^3 - x
    assert arith.discriminant([3, 1]) == 1                 # linear convention
    for a in range(1, 5):
        for b in range(-4, 5):
            for c in range(-4, 5):
                assert arith.discriminant([a, b, c]) == b * b - 4 * a * c
    for p in range(-5, 6):
        for q in range(-5, 6):
            assert arith.discriminant([1, 0, p, q]) == -4 * p ** 3 - 27 * q ** 2


def test_discriminant_rejects_bad_input():
    with pytest.raises(ValueError):
        arith.discriminant([5])
    with pytest.raises(ValueError):
        arith.discriminant([])
    with pytest.raises(ValueError):
        arith.discriminant(UnivariatePoly([0]))


def test_modified_discriminant_examples():
    assert arith.modified_discriminant(BinaryForm([1, 0, 1])) == -4
    assert arith.modified_discriminant(BinaryForm([2, 0, -2])) == 4
    assert arith.modified_discriminant(BinaryForm([1, 0, -1])) == 4
    with pytest.raises(ValueError):
        arith.modified_discriminant(BinaryForm([0, 0, 1]))  # f(x,1) constant


# ---------------------------------------------------------------------------
# closed-form valuation of the product


def _lhs(b=1, terms=(), primes=()):
    return FactorialProductLHS(b, tuple(terms), tuple(primes))


def test_product_valuation_examples():
    lhs = _lhs(terms=[("n", SetSpec.integers(), 3)])
    # oracle: factor 9! * 3^9 directly
    value = math.factorial(9) * 3 ** 9
    count = 0
    while value % 3 == 0:
        value //= 3
        count += 1
    assert count == 13
    assert arith.factorial_product_valuation(lhs, {"n": 9}, 3) == 13

    lhs = _lhs(terms=[("n", SetSpec.integers(), 1)])
    assert arith.factorial_product_valuation(lhs, {"n": 11}, 7) == 1
    assert arith.factorial_product_valuation(lhs, {"n": 0}, 5) == 0


def test_product_valuation_matches_expansion():
    lhs = _lhs(b=6, terms=[("n", SetSpec.ap(2, 1), 3), ("m", SetSpec.integers(), 1)],
               primes=[(7, "z")])
    for n in range(0, 9):
        for m in range(0, 7):
            for z in range(0, 3):
                value = 6 * 2 ** n * math.factorial(n) * 3 ** n \
                    * math.factorial(m) * 7 ** z
                assert value <= 10 ** 18
                fz = arith.factorize(value)
                for p in (2, 3, 5, 7, 11):
                    assert arith.factorial_product_valuation(
                        lhs, {"n": n, "m": m, "z": z}, p) == fz.exponent_of(p)


def test_product_valuation_errors():
    lhs = _lhs(terms=[("n", SetSpec.explicit([0, 1, 4, 9]), 1)])
    with pytest.raises(ValueError):
        arith.factorial_product_valuation(lhs, {"n": 2}, 3)
    lhs = _lhs(terms=[("n", SetSpec.integers(), 1)])
    with pytest.raises(ValueError):
        arith.factorial_product_valuation(lhs, {}, 3)
    with pytest.raises(ValueError):
        arith.factorial_product_valuation(lhs, {"n": 3}, 6)
