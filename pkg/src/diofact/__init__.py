"""Toolkit for polynomial-factorial diophantine equations.

Search, construct and audit integer solutions of equations whose left side
is a product b * n_1!_{S_1} A_1^{n_1} ... p_1^{z_1} ... and whose right side
is a polynomial f(x) or f(x, y).
"""

from .arith import (Factorization, PrimeTable, discriminant, factorize,
                    factorial_product_valuation, integer_nth_root,
                    legendre_valuation, modified_discriminant,
                    prime_in_interval, radical, sieve_primes)
from .bhargava import POrdering, SetSpec, bhargava_factorial, double_factorial, p_ordering
from .model import (BinaryForm, BivariatePoly, DepressedForm, Equation,
                    FactorialProductLHS, UnivariatePoly, depress_polynomial,
                    eval_lhs, eval_rhs, parse_equation)
from .audit import (AbcTriple, QualityReport, abc_quality, check_finsler,
                    check_stirling_bound, finsler_sweep, instrument_solution,
                    radical_littleo_report, szpiro_exponent)
from .presets import PRESETS, preset_equation
from . import solver

__version__ = "0.1.0"

__all__ = [
    "Factorization", "PrimeTable", "discriminant", "factorize",
    "factorial_product_valuation", "integer_nth_root", "legendre_valuation",
    "modified_discriminant", "prime_in_interval", "radical", "sieve_primes",
    "POrdering", "SetSpec", "bhargava_factorial", "double_factorial", "p_ordering",
    "BinaryForm", "BivariatePoly", "DepressedForm", "Equation",
    "FactorialProductLHS", "UnivariatePoly", "depress_polynomial",
    "eval_lhs", "eval_rhs", "parse_equation",
    "AbcTriple", "QualityReport", "abc_quality", "check_finsler",
    "check_stirling_bound", "finsler_sweep", "instrument_solution",
    "radical_littleo_report", "szpiro_exponent",
    "PRESETS", "preset_equation", "solver",
]
