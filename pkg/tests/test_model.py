"""Equation model tests: DSL round trips, exact evaluation, depression."""

import json
import math
import random

import pytest

from diofact.errors import ParseError
from diofact.model import (BinaryForm, BivariatePoly, Equation,
                           FactorialProductLHS, UnivariatePoly,
                           depress_polynomial, equation_to_json, eval_lhs,
                           eval_rhs, parse_equation)
from diofact.bhargava import SetSpec
from diofact.presets import PRESETS


# ---------------------------------------------------------------------------
# parsing


def test_parse_brocard():
    eq = parse_equation("1 * n! = x^2 - 1")
    assert eq.rhs_kind == "univariate"
    assert eq.lhs.b == 1
    assert eq.lhs.factorial_terms == (("n", SetSpec.integers(), 1),)
    assert eq.rhs.coefficients == (1, 0, -1)


def test_parse_progression_power():
    eq = parse_equation("1 * n!*AP(2,0) = x^2")
    (var, spec, base), = eq.lhs.factorial_terms
    assert (var, base) == ("n", 1)
    assert spec == SetSpec.ap(2, 0)


def test_parse_prime_power_and_form():
    eq = parse_equation("7^m * n! = x^2*y + y^2*x")
    assert eq.lhs.b == 1
    assert eq.lhs.prime_power_terms == ((7, "m"),)
    assert eq.rhs_kind == "binary_form"
    assert eq.rhs.coefficients == (0, 1, 1, 0)


def test_parse_base_folds_into_factorial():
    eq = parse_equation("1 * n! * 2^n = x^2")
    (var, spec, base), = eq.lhs.factorial_terms
    assert (var, base) == ("n", 2)
    eq = parse_equation("1 * 2^n * n! = x^2")      # order independent
    assert eq.lhs.factorial_terms[0][2] == 2


def test_parse_rational_coefficients_cleared():
    eq = parse_equation("1 * n! = 1/2*x^2 + 1/3*x")
    assert eq.lhs.b == 6
    assert eq.rhs.coefficients == (3, 2, 0)


def test_parse_parenthesized_products():
    eq = parse_equation("1 * n! * m! = x^4*y^4*(x - y)^3")
    assert eq.rhs_kind == "binary_form"
    assert str(eq.rhs) == "x^7*y^4 - 3*x^6*y^5 + 3*x^5*y^6 - x^4*y^7"


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        parse_equation("1 * n! = x^2 +* 3")
    assert info.value.position > 0
    with pytest.raises(ParseError):
        parse_equation("1 * n! * n! = x^2")            # duplicate variable
    with pytest.raises(ParseError):
        parse_equation("1 * 6^m = x^2")                # composite free base
    with pytest.raises(ParseError):
        parse_equation("1 * x! = x^2")                 # reserved name
    with pytest.raises(ParseError):
        parse_equation("0 * n! = x^2")                 # zero b
    with pytest.raises(ParseError):
        parse_equation("1 * n! = x^2 + y", as_form=True)
    with pytest.raises(ParseError):
        parse_equation("1 * n! = z^2")                 # unknown variable


def test_print_parse_identity_on_presets():
    for preset in PRESETS.values():
        eq = preset.equation()
        assert parse_equation(eq.text()).text() == eq.text()
        assert eq.text() == preset.text


def test_equation_json_rendering():
    eq = parse_equation("7^m * n! = x^2*y + y^2*x")
    data = json.loads(equation_to_json(eq))
    assert set(data) == {"lhs", "rhs", "constraints"}
    assert data["lhs"]["prime_powers"] == [{"prime": 7, "var": "m"}]
    assert data["rhs"]["kind"] == "binary_form"


# ---------------------------------------------------------------------------
# evaluation


def test_eval_lhs_examples():
    lhs = FactorialProductLHS(2, (("a", SetSpec.integers(), 1),
                                  ("b", SetSpec.integers(), 1),
                                  ("c", SetSpec.integers(), 1)), ())
    assert eval_lhs(lhs, {"a": 2, "b": 2, "c": 2}) == 16
    lhs = FactorialProductLHS(1, (("n", SetSpec.integers(), 3),), ())
    assert eval_lhs(lhs, {"n": 3}) == 162
    lhs = FactorialProductLHS(1, (("n", SetSpec.integers(), 1),), ())
    assert eval_lhs(lhs, {"n": 7}) == 5040
    with pytest.raises(ValueError):
        eval_lhs(lhs, {})


def test_eval_lhs_multiplicative_across_terms():
    lhs = FactorialProductLHS(3, (("n", SetSpec.integers(), 2),
                                  ("m", SetSpec.ap(3, 0), 1)), ((5, "z"),))
    for n in range(4):
        for m in range(4):
            for z in range(3):
                expected = 3 * math.factorial(n) * 2 ** n \
                    * 3 ** m * math.factorial(m) * 5 ** z
                assert eval_lhs(lhs, {"n": n, "m": m, "z": z}) == expected


def test_eval_rhs_examples():
    assert eval_rhs(UnivariatePoly([1, 0, -1]), 71) == 5040
    assert eval_rhs(BinaryForm([1, 0, 1]), 0, 0) == 0
    assert eval_rhs(BinaryForm([0, 1, 1, 0]), 1, 1) == 2
    with pytest.raises(ValueError):
        eval_rhs(UnivariatePoly([1, 0]), 1, 2)
    with pytest.raises(ValueError):
        eval_rhs(BinaryForm([1, 0, 1]), 1)


def test_bivariate_substitution():
    poly = BivariatePoly({(2, 0): 1, (0, 2): 1, (0, 0): -1})
    assert poly(3, 4) == 24
    slice_poly = poly.substitute_y(2)
    assert slice_poly.coefficients == (1, 0, 3)


# ---------------------------------------------------------------------------
# depression transform


def test_depress_examples():
    dep = depress_polynomial(UnivariatePoly([1, 0, -1]), 1)
    assert dep.q.coefficients == (1, 0, -4)
    assert (dep.c, dep.alpha, dep.beta) == (4, 2, 0)

    dep = depress_polynomial(UnivariatePoly([1, 2, 0]), 1)
    assert dep.q.coefficients == (1, 0, -4)
    assert (dep.c, dep.alpha, dep.beta) == (4, 2, 2)

    dep = depress_polynomial(UnivariatePoly([1, 0, 0, 0]), 1)
    assert dep.q.coefficients == (1, 0, 0, 0)
    assert dep.c == 27


def test_depress_scales_with_b():
    dep = depress_polynomial(UnivariatePoly([1, 0, -1]), 5)
    assert dep.c == 20 and dep.poly_scale == 4


def test_depress_requires_quadratic():
    with pytest.raises(ValueError):
        depress_polynomial(UnivariatePoly([2, 1]), 1)


def test_depress_random_correspondence():
    rng = random.Random(20240817)
    for _ in range(300):
        degree = rng.randint(2, 5)
        coeffs = [rng.randint(-9, 9) for _ in range(degree + 1)]
        if coeffs[0] == 0:
            coeffs[0] = rng.choice([-3, -1, 1, 2, 7])
        f = UnivariatePoly(coeffs)
        dep = depress_polynomial(f, 1)
        assert dep.q.leading == 1
        assert dep.q.coefficient(degree - 1) == 0
        for _ in range(3):
            x = rng.randint(-1000, 1000)
            assert dep.q(dep.z_of(x)) == dep.poly_scale * f(x)
