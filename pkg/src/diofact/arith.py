"""Exact integer kernels: primes, valuations, radicals, roots, discriminants.

Everything here is big-integer exact; no floating point enters any result.
These routines are the shared substrate for the equation model, the searches
and the audit metrics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceededError, FactorBudgetError

# Memory guard for the byte sieve (bytes allocated == limit + 1).
SIEVE_MAX_LIMIT = 1 << 27

# Factoring strategy: trial division by sieved primes up to this bound, then
# a deterministic Brent-rho fallback with a bounded iteration budget.
TRIAL_DIVISION_BOUND = 100_000
RHO_ITERATION_BUDGET = 3_000_000

# Deterministic Miller-Rabin witness set, valid below ~3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_EXTRA_WITNESSES = (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
                       101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151)


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit``, ascending. Immutable and shareable."""

    limit: int
    primes: tuple[int, ...]

    def __len__(self):
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)


def sieve_primes(limit: int, *, max_limit: int = SIEVE_MAX_LIMIT) -> PrimeTable:
    """Complete prime table up to ``limit`` by a byte sieve of Eratosthenes."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    if limit > max_limit:
        raise BudgetExceededError(
            f"sieve limit {limit} exceeds memory budget {max_limit}")
    if limit < 2:
        return PrimeTable(limit, ())
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i:: i] = bytearray(len(range(i * i, limit + 1, i)))
    return PrimeTable(limit, tuple(i for i in range(limit + 1) if sieve[i]))


_small_primes_cache: PrimeTable | None = None


def _small_primes() -> PrimeTable:
    global _small_primes_cache
    if _small_primes_cache is None:
        _small_primes_cache = sieve_primes(TRIAL_DIVISION_BOUND)
    return _small_primes_cache


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test, deterministic below ~3.3e24.

    Above that bound the fixed extra witness set makes the test a strong
    probable-prime check; nothing in this package routinely reaches it.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    witnesses = _MR_WITNESSES
    if n >= _MR_DETERMINISTIC_BOUND:
        witnesses = _MR_WITNESSES + _MR_EXTRA_WITNESSES
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_in_interval(lo: int, hi: int) -> int | None:
    """Smallest prime p with lo < p < hi (open interval), or None."""
    if lo >= hi:
        raise ValueError("need lo < hi")
    for p in range(max(lo, 1) + 1, hi):
        if is_prime(p):
            return p
    return None


def next_primes_above(limit: int, count: int) -> list[int]:
    """The ``count`` smallest primes strictly greater than ``limit``."""
    if count < 0:
        raise ValueError("count must be >= 0")
    out: list[int] = []
    p = limit
    while len(out) < count:
        p += 1
        if is_prime(p):
            out.append(p)
    return out


def legendre_valuation(n: int, p: int) -> int:
    """p-adic valuation of n!, computed as sum of floor(n / p^i)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def valuation(m: int, p: int) -> int:
    """Exponent of p in a nonzero integer m."""
    if m == 0:
        raise ValueError("valuation of 0 is undefined")
    m = abs(m)
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


@dataclass(frozen=True)
class Factorization:
    """sign * product(p^e) == the original integer; primes strictly increase."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p ** e
        return out

    def radical(self) -> int:
        out = 1
        for p, _ in self.factors:
            out *= p
        return out

    def exponent_of(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def _brent_rho(n: int, budget: list[int]) -> int | None:
    """One nontrivial factor of composite odd n, or None when budget runs out.

    Deterministic: constants and restart sequence are fixed, so repeated runs
    factor identically.
    """
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget[0] -= min(m, r - k)
                if budget[0] <= 0:
                    return None
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                budget[0] -= 1
                if budget[0] <= 0:
                    return None
        if g != n:
            return g
    return None


def factorize(m: int, *, rho_budget: int = RHO_ITERATION_BUDGET) -> Factorization:
    """Exact prime factorization of a nonzero integer.

    Trial division by the sieved small primes first, then perfect-power
    splitting and Brent rho. Raises FactorBudgetError with the unfactored
    cofactor when the work budget is exhausted.
    """
    if m == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if m > 0 else -1
    n = abs(m)
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
        if n == 1:
            break
    if n > 1 and n <= _small_primes().limit * _small_primes().limit:
        # cofactor below the square of the trial bound is prime
        found[n] = found.get(n, 0) + 1
        n = 1

    budget = [rho_budget]
    stack = [n] if n > 1 else []
    while stack:
        n = stack.pop()
        if n == 1:
            continue
        if is_prime(n):
            found[n] = found.get(n, 0) + 1
            continue
        split = None
        for d in range(2, n.bit_length()):
            root, exact = integer_nth_root(n, d)
            if exact and root > 1:
                split = [root] * d
                break
        if split is None:
            g = _brent_rho(n, budget)
            if g is None:
                partial = tuple(sorted(found.items()))
                raise FactorBudgetError(
                    f"factoring budget exhausted on cofactor {n}", partial, n)
            split = [g, n // g]
        stack.extend(split)

    return Factorization(sign, tuple(sorted(found.items())))


def radical(m: int) -> int:
    """Product of the distinct primes dividing |m|; radical(+-1) == 1."""
    if m == 0:
        raise ValueError("radical of 0 is undefined")
    return factorize(m).radical()


def integer_nth_root(m: int, d: int) -> tuple[int, bool]:
    """(floor(m ** (1/d)), exactness flag) for m >= 0, d >= 1."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1 or m in (0, 1):
        return m, True
    if d == 2:
        r = math.isqrt(m)
        return r, r * r == m
    # Newton iteration on integers, seeded from the bit length.
    x = 1 << ((m.bit_length() + d - 1) // d)
    while True:
        y = ((d - 1) * x + m // x ** (d - 1)) // d
        if y >= x:
            break
        x = y
    while x ** d > m:
        x -= 1
    while (x + 1) ** d <= m:
        x += 1
    return x, x ** d == m


def _coefficients(f) -> list[int]:
    """Leading-first integer coefficient list from a poly-like object."""
    coeffs = list(getattr(f, "coefficients", f))
    if not coeffs:
        raise ValueError("zero polynomial rejected")
    out = []
    for c in coeffs:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError("integer coefficients required")
            c = c.numerator
        out.append(int(c))
    while out and out[0] == 0:
        out.pop(0)
    if not out:
        raise ValueError("zero polynomial rejected")
    return out


def _resultant(f: list[int], g: list[int]) -> int:
    """Resultant of two integer polynomials via fraction-free elimination.

    Bareiss on the Sylvester matrix: all intermediate values stay integers,
    divisions are exact.
    """
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        raise ValueError("zero polynomial rejected")
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    mat = [[0] * size for _ in range(size)]
    for i in range(n):
        for j, c in enumerate(f):
            mat[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(g):
            mat[n + i][i + j] = c
    sign = 1
    prev = 1
    for k in range(size - 1):
        if mat[k][k] == 0:
            for i in range(k + 1, size):
                if mat[i][k] != 0:
                    mat[k], mat[i] = mat[i], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[size - 1][size - 1]


def discriminant(f) -> int:
    """Discriminant of an integer polynomial of degree >= 1.

    Sign convention: (-1)^(d(d-1)/2) * Res(f, f') / lead(f). Linear
    polynomials get the conventional discriminant 1.
    """
    coeffs = _coefficients(f)
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d == 1:
        return 1
    deriv = [c * (d - i) for i, c in enumerate(coeffs[:-1])]
    res = _resultant(coeffs, deriv)
    lead = coeffs[0]
    if res % lead != 0:
        raise AssertionError("resultant not divisible by leading coefficient")
    return (-1) ** (d * (d - 1) // 2) * (res // lead)


def modified_discriminant(form) -> Fraction:
    """Discriminant of f(x, 1) divided by gcd(coefficients)^(2n-2).

    ``form`` carries the full coefficient list a_n..a_0 of a degree-n binary
    form; n >= 2 required. The result is an exact rational.
    """
    coeffs = [int(c) for c in form.coefficients]
    n = len(coeffs) - 1
    if n < 2:
        raise ValueError("form degree must be >= 2")
    dehom = list(coeffs)
    while dehom and dehom[0] == 0:
        dehom.pop(0)
    if len(dehom) <= 1:
        raise ValueError("degenerate form: f(x, 1) is constant")
    g = math.gcd(*coeffs)
    return Fraction(discriminant(dehom), g ** (2 * n - 2))


def factorial_product_valuation(lhs, assignment: dict, p: int) -> int:
    """p-adic valuation of b * prod(n_i!_{S_i} * A_i^{n_i}) * prod(p_j^{z_j}).

    Closed-form: no block of the product is ever expanded. Only full-integer
    and arithmetic-progression set specs are supported (their generalized
    factorials have closed valuations).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    total = valuation(lhs.b, p)
    for var, spec, base in lhs.factorial_terms:
        if var not in assignment:
            raise ValueError(f"unbound variable {var!r}")
        n = assignment[var]
        if n < 0:
            raise ValueError(f"factorial variable {var!r} must be >= 0")
        variant = getattr(spec, "variant", "integers")
        if variant == "integers":
            step = 1
        elif variant == "ap":
            step = spec.step
        else:
            raise ValueError(
                "closed-form valuation needs an arithmetic-progression set")
        total += legendre_valuation(n, p) + n * (valuation(step, p) if step > 1 else 0)
        if base > 1:
            total += n * valuation(base, p)
    for q, var in lhs.prime_power_terms:
        if var not in assignment:
            raise ValueError(f"unbound variable {var!r}")
        z = assignment[var]
        if z < 0:
            raise ValueError(f"exponent variable {var!r} must be >= 0")
        if q == p:
            total += z
    return total
