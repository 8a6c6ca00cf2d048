"""Equation data model: product-of-factorials left sides, polynomial right
sides, a small text DSL, exact evaluation and the depression transform.

Grammar of the DSL (LL(1) with one token of lookahead after integers):

    equation  := [int] ('*'? term)* '=' poly
    term      := NAME '!' ['*' setspec]      factorial variable, optional set
               | INT '^' NAME                base^variable
    setspec   := 'Z' | 'AP(' int ',' int ')' | '{' int (',' int)* '}'
    poly      := polynomial in x, y with integer or rational coefficients,
                 operators + - * ^ and parentheses

A ``base^var`` term whose variable also appears as ``var!`` folds the base
into that factorial term (the A of n! * A^n); otherwise the base must be a
prime and the term becomes a free prime power. Rational right-side
coefficients are cleared at parse time by scaling the leading integer.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import arith
from .bhargava import SetSpec, bhargava_factorial
from .errors import ParseError


# ---------------------------------------------------------------------------
# polynomial types


def _strip_leading(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs.pop(0)
    return coeffs


@dataclass(frozen=True)
class UnivariatePoly:
    """Dense polynomial in one variable, coefficients leading-first."""

    coefficients: tuple[int, ...]

    def __init__(self, coefficients):
        coeffs = _strip_leading(int(c) for c in coefficients)
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[0]

    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    def __call__(self, x: int) -> int:
        out = 0
        for c in self.coefficients:
            out = out * x + c
        return out

    def derivative(self) -> "UnivariatePoly":
        d = self.degree
        if d == 0:
            return UnivariatePoly([0])
        return UnivariatePoly([c * (d - i) for i, c in enumerate(self.coefficients[:-1])])

    def shifted(self, h: int) -> "UnivariatePoly":
        """Coefficients of p(x + h), exact (synthetic division)."""
        coeffs = list(self.coefficients)
        n = len(coeffs)
        for i in range(1, n):
            for j in range(1, n - i + 1):
                coeffs[j] += h * coeffs[j - 1]
        return UnivariatePoly(coeffs)

    def coefficient(self, power: int) -> int:
        if power < 0 or power > self.degree:
            return 0
        return self.coefficients[self.degree - power]

    def is_monomial(self) -> bool:
        return all(c == 0 for c in self.coefficients[1:])

    def __str__(self):
        return _poly_text({(self.degree - i, 0): c
                           for i, c in enumerate(self.coefficients) if c != 0})


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous f(x, y) = a_d x^d + a_{d-1} x^{d-1} y + ... + a_0 y^d."""

    coefficients: tuple[int, ...]      # a_d .. a_0, x-degree descending

    def __init__(self, coefficients):
        coeffs = [int(c) for c in coefficients]
        if len(coeffs) < 2 or all(c == 0 for c in coeffs):
            raise ValueError("binary form must have degree >= 1 and not vanish")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: int, y: int) -> int:
        d = self.degree
        out = 0
        for i, c in enumerate(self.coefficients):
            if c:
                out += c * x ** (d - i) * y ** i
        return out

    def dehomogenized(self) -> UnivariatePoly:
        """f(x, 1) as a univariate polynomial."""
        return UnivariatePoly(self.coefficients)

    def poly_in_y(self, x0: int) -> UnivariatePoly:
        """f(x0, y) as a polynomial in y (leading-first in y)."""
        d = self.degree
        return UnivariatePoly([c * x0 ** (d - i)
                               for i, c in reversed(list(enumerate(self.coefficients)))])

    def __str__(self):
        d = self.degree
        return _poly_text({(d - i, i): c
                           for i, c in enumerate(self.coefficients) if c != 0})


@dataclass(frozen=True)
class BivariatePoly:
    """Sparse polynomial in x, y: terms maps (x-power, y-power) to coefficient."""

    terms: tuple[tuple[tuple[int, int], int], ...]

    def __init__(self, terms: dict):
        cleaned = {k: int(v) for k, v in terms.items() if v != 0}
        object.__setattr__(self, "terms",
                           tuple(sorted(cleaned.items(), key=_term_order)))

    def __call__(self, x: int, y: int) -> int:
        return sum(c * x ** i * y ** j for (i, j), c in self.terms)

    def substitute_y(self, y0: int) -> UnivariatePoly:
        deg_x = max((i for (i, _), _ in self.terms), default=0)
        coeffs = [0] * (deg_x + 1)
        for (i, j), c in self.terms:
            coeffs[deg_x - i] += c * y0 ** j
        return UnivariatePoly(coeffs)

    def x_degree(self) -> int:
        return max((i for (i, _), _ in self.terms), default=0)

    def y_degree(self) -> int:
        return max((j for (_, j), _ in self.terms), default=0)

    def __str__(self):
        return _poly_text(dict(self.terms))


def _term_order(item):
    (i, j), _ = item
    return (-(i + j), -i)


def _poly_text(terms: dict) -> str:
    """Canonical rendering: total degree descending, x-degree descending."""
    if not terms:
        return "0"
    parts = []
    for (i, j), c in sorted(terms.items(), key=_term_order):
        if c == 0:
            continue
        names = []
        if i:
            names.append("x" if i == 1 else f"x^{i}")
        if j:
            names.append("y" if j == 1 else f"y^{j}")
        mag = abs(c)
        if names:
            body = "*".join(names) if mag == 1 else "*".join([str(mag)] + names)
        else:
            body = str(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# left-hand side


@dataclass(frozen=True)
class FactorialProductLHS:
    """b * prod(n_i!_{S_i} * A_i^{n_i}) * prod(p_j^{z_j}) with variable slots."""

    b: int
    factorial_terms: tuple[tuple[str, SetSpec, int], ...]   # (var, set, base A)
    prime_power_terms: tuple[tuple[int, str], ...]          # (prime, var)

    def __post_init__(self):
        if self.b == 0:
            raise ValueError("b must be nonzero")
        names = [v for v, _, _ in self.factorial_terms]
        names += [v for _, v in self.prime_power_terms]
        if len(set(names)) != len(names):
            raise ValueError("variable names must be pairwise distinct")
        primes = [p for p, _ in self.prime_power_terms]
        if len(set(primes)) != len(primes):
            raise ValueError("prime bases must be distinct")
        for _, spec, base in self.factorial_terms:
            if base < 1:
                raise ValueError("factorial term base must be >= 1")

    def variables(self) -> list[str]:
        return [v for v, _, _ in self.factorial_terms] + \
               [v for _, v in self.prime_power_terms]

    def evaluate(self, assignment: dict) -> int:
        out = self.b
        for var, spec, base in self.factorial_terms:
            if var not in assignment:
                raise ValueError(f"unbound variable {var!r}")
            n = assignment[var]
            if n < 0:
                raise ValueError(f"factorial variable {var!r} must be >= 0")
            out *= bhargava_factorial(spec, n)
            if base > 1:
                out *= base ** n
        for p, var in self.prime_power_terms:
            if var not in assignment:
                raise ValueError(f"unbound variable {var!r}")
            z = assignment[var]
            if z < 0:
                raise ValueError(f"exponent variable {var!r} must be >= 0")
            out *= p ** z
        return out

    def __str__(self):
        parts = [str(self.b)]
        for var, spec, base in self.factorial_terms:
            text = f"{var}!"
            if spec.variant != "integers":
                text += f"*{spec}"
            parts.append(text)
            if base > 1:
                parts.append(f"{base}^{var}")
        for p, var in self.prime_power_terms:
            parts.append(f"{p}^{var}")
        return " * ".join(parts)


def eval_lhs(lhs: FactorialProductLHS, assignment: dict) -> int:
    """Exact big-integer value of the left side under a full assignment."""
    return lhs.evaluate(assignment)


def eval_rhs(rhs, x: int, y: int | None = None):
    """Exact evaluation of any right-side kind; arity checked."""
    if isinstance(rhs, UnivariatePoly):
        if y is not None:
            raise ValueError("univariate right side takes one argument")
        return rhs(x)
    if y is None:
        raise ValueError("bivariate right side needs x and y")
    return rhs(x, y)


# ---------------------------------------------------------------------------
# equation


@dataclass(frozen=True)
class Equation:
    lhs: FactorialProductLHS
    rhs: object                    # UnivariatePoly | BinaryForm | BivariatePoly
    coprime_xy: bool = False

    @property
    def rhs_kind(self) -> str:
        if isinstance(self.rhs, UnivariatePoly):
            return "univariate"
        if isinstance(self.rhs, BinaryForm):
            return "binary_form"
        return "bivariate"

    def text(self) -> str:
        return f"{self.lhs} = {self.rhs}"

    def variables(self) -> list[str]:
        return self.lhs.variables()

    def to_json_dict(self) -> dict:
        lhs = {
            "b": self.lhs.b,
            "factorial_terms": [
                {"var": v, "set": str(s), "base": a}
                for v, s, a in self.lhs.factorial_terms
            ],
            "prime_powers": [
                {"prime": p, "var": v} for p, v in self.lhs.prime_power_terms
            ],
        }
        if isinstance(self.rhs, UnivariatePoly):
            rhs = {"kind": "univariate", "coefficients": list(self.rhs.coefficients)}
        elif isinstance(self.rhs, BinaryForm):
            rhs = {"kind": "binary_form", "coefficients": list(self.rhs.coefficients)}
        else:
            rhs = {"kind": "bivariate",
                   "terms": [[i, j, c] for (i, j), c in self.rhs.terms]}
        return {"lhs": lhs, "rhs": rhs,
                "constraints": {"coprime_xy": self.coprime_xy}}


# ---------------------------------------------------------------------------
# DSL tokenizer / parser

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        if m.group(1) is not None:
            tokens.append(("INT", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("NAME", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "*^!(){},=+-/":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("EOF", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, ahead=0):
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.i]
        if self.i < len(self.tokens) - 1:
            self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def fail(self, message):
        raise ParseError(message, self.peek()[2])

    # ---- left side

    def parse_equation(self) -> Equation:
        b, raw_terms = self.parse_lhs()
        self.expect("=")
        poly = self.parse_poly_expr()
        self.expect("EOF")
        return _assemble(b, raw_terms, poly, self)

    def parse_lhs(self):
        b = 1
        raw_terms = []
        sign = 1
        if self.peek()[0] == "-":
            self.next()
            sign = -1
        if self.peek()[0] == "INT" and self.peek(1)[0] != "^":
            b = sign * self.next()[1]
            if b == 0:
                self.fail("leading integer b must be nonzero")
        elif sign == -1:
            b = -1
        first = True
        while self.peek()[0] != "=":
            if not first or self.peek()[0] == "*":
                self.expect("*")
            first = False
            raw_terms.append(self.parse_lhs_term())
        return b, raw_terms

    def parse_lhs_term(self):
        tok = self.peek()
        if tok[0] == "INT":
            base_tok = self.next()
            self.expect("^")
            var = self.expect("NAME")
            return ("power", base_tok[1], var[1], var[2])
        if tok[0] == "NAME":
            name = self.next()
            if name[1] in ("x", "y"):
                raise ParseError("x and y are reserved for the right side", name[2])
            self.expect("!")
            spec = SetSpec.integers()
            if self.peek()[0] == "*" and self.peek(1)[0] in ("NAME", "{") \
                    and (self.peek(1)[0] == "{" or self.peek(1)[1] in ("AP", "Z")):
                self.next()
                spec = self.parse_set_spec()
            return ("factorial", name[1], spec, name[2])
        raise ParseError(f"expected a term, found {tok[1]!r}", tok[2])

    def parse_set_spec(self) -> SetSpec:
        tok = self.next()
        if tok[0] == "NAME" and tok[1] == "Z":
            return SetSpec.integers()
        if tok[0] == "NAME" and tok[1] == "AP":
            self.expect("(")
            step = self.parse_int()
            self.expect(",")
            offset = self.parse_int()
            self.expect(")")
            if step < 1:
                raise ParseError("progression step must be >= 1", tok[2])
            return SetSpec.ap(step, offset)
        if tok[0] == "{":
            elems = [self.parse_int()]
            while self.peek()[0] == ",":
                self.next()
                elems.append(self.parse_int())
            self.expect("}")
            if len(set(elems)) < 2:
                raise ParseError("explicit set needs >= 2 distinct elements", tok[2])
            return SetSpec.explicit(elems)
        raise ParseError(f"expected a set spec, found {tok[1]!r}", tok[2])

    def parse_int(self) -> int:
        sign = 1
        if self.peek()[0] == "-":
            self.next()
            sign = -1
        return sign * self.expect("INT")[1]

    # ---- right side, a standard precedence-climbing expression parser
    # producing {(x-power, y-power): Fraction}

    def parse_poly_expr(self):
        acc = self.parse_poly_term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.parse_poly_term()
            acc = _poly_add(acc, rhs, -1 if op == "-" else 1)
        return acc

    def parse_poly_term(self):
        acc = self.parse_poly_factor()
        while self.peek()[0] == "*":
            self.next()
            acc = _poly_mul(acc, self.parse_poly_factor())
        return acc

    def parse_poly_factor(self):
        base = self.parse_poly_atom()
        while self.peek()[0] == "^":
            tok = self.next()
            exp = self.expect("INT")[1]
            if exp < 0:
                raise ParseError("exponent must be >= 0", tok[2])
            base = _poly_pow(base, exp)
        return base

    def parse_poly_atom(self):
        tok = self.next()
        if tok[0] == "-":
            return _poly_scale(self.parse_poly_factor(), -1)
        if tok[0] == "INT":
            value = Fraction(tok[1])
            if self.peek()[0] == "/":
                self.next()
                den = self.expect("INT")
                if den[1] == 0:
                    raise ParseError("zero denominator", den[2])
                value = Fraction(tok[1], den[1])
            return {(0, 0): value}
        if tok[0] == "NAME":
            if tok[1] == "x":
                return {(1, 0): Fraction(1)}
            if tok[1] == "y":
                return {(0, 1): Fraction(1)}
            raise ParseError("only x and y may appear on the right side", tok[2])
        if tok[0] == "(":
            inner = self.parse_poly_expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def _poly_add(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + sign * v
    return {k: v for k, v in out.items() if v != 0}


def _poly_mul(a, b):
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, Fraction(0)) + c1 * c2
    return {k: v for k, v in out.items() if v != 0}


def _poly_pow(a, e):
    out = {(0, 0): Fraction(1)}
    for _ in range(e):
        out = _poly_mul(out, a)
    return out


def _poly_scale(a, s):
    return {k: v * s for k, v in a.items()}


def _assemble(b, raw_terms, poly, parser) -> Equation:
    factorials: dict[str, tuple[SetSpec, int, int]] = {}   # var -> (spec, base, pos)
    powers: list[tuple[int, str, int]] = []                # (base, var, pos)
    order: list[str] = []
    for term in raw_terms:
        if term[0] == "factorial":
            _, var, spec, pos = term
            if var in factorials:
                raise ParseError(f"duplicate factorial variable {var!r}", pos)
            factorials[var] = (spec, 1, pos)
            order.append(var)
        else:
            _, base, var, pos = term
            powers.append((base, var, pos))

    prime_terms: list[tuple[int, str]] = []
    for base, var, pos in powers:
        if var in factorials:
            if base < 1:
                raise ParseError("base of a factorial power must be >= 1", pos)
            spec, acc, fpos = factorials[var]
            factorials[var] = (spec, acc * base, fpos)
        else:
            if not arith.is_prime(base):
                raise ParseError(
                    f"base {base} of a free exponent variable must be prime", pos)
            if any(p == base for p, _ in prime_terms):
                raise ParseError(f"duplicate prime base {base}", pos)
            if any(v == var for _, v in prime_terms):
                raise ParseError(f"duplicate exponent variable {var!r}", pos)
            if var in ("x", "y"):
                raise ParseError("x and y are reserved for the right side", pos)
            prime_terms.append((base, var))

    # clear rational coefficients by scaling b
    denom_lcm = 1
    for c in poly.values():
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    cleared = {k: int(v * denom_lcm) for k, v in poly.items()}
    b *= denom_lcm

    rhs = _classify_rhs(cleared, parser)
    fact_tuple = tuple((var, factorials[var][0], factorials[var][1]) for var in order)
    lhs = FactorialProductLHS(b, fact_tuple, tuple(prime_terms))
    return Equation(lhs, rhs)


def _classify_rhs(terms: dict, parser):
    if not terms:
        parser.fail("right side must not be the zero polynomial")
    uses_y = any(j for (_, j) in terms)
    if not uses_y:
        deg = max(i for (i, _) in terms)
        coeffs = [0] * (deg + 1)
        for (i, _), c in terms.items():
            coeffs[deg - i] = c
        return UnivariatePoly(coeffs)
    degrees = {i + j for (i, j) in terms}
    if len(degrees) == 1:
        d = degrees.pop()
        coeffs = [0] * (d + 1)
        for (i, j), c in terms.items():
            coeffs[d - i] = c
        return BinaryForm(coeffs)
    return BivariatePoly(terms)


def parse_equation(text: str, *, as_form: bool = False) -> Equation:
    """Parse the equation DSL; see the module docstring for the grammar.

    With ``as_form`` a bivariate right side must be homogeneous, otherwise a
    ParseError is raised.
    """
    eq = _Parser(text).parse_equation()
    if as_form and eq.rhs_kind == "bivariate":
        raise ParseError("right side was declared a form but is not homogeneous", 0)
    return eq


def equation_to_json(eq: Equation) -> str:
    return json.dumps(eq.to_json_dict(), sort_keys=True)


# ---------------------------------------------------------------------------
# depression transform


@dataclass(frozen=True)
class DepressedForm:
    """Monic integer polynomial Q with no subleading term, plus the exact
    affine substitution that relates it to the source polynomial.

    With f of degree d, leading coefficient a0 and second coefficient a1,
    the substitution is z = (a0 * d) * x + a1 and

        Q(z) == poly_scale * f(x)        for every integer x,

    where poly_scale = d^d * a0^(d-1). For the equation b * F = f(x) this
    reads Q(z) == c * F with c = b * poly_scale.
    """

    q: UnivariatePoly
    c: int
    poly_scale: int
    alpha: int
    beta: int

    def z_of(self, x: int) -> int:
        return self.alpha * x + self.beta

    def low_terms(self) -> UnivariatePoly:
        """Q minus its leading monomial (the R part of Q = X^d + R)."""
        coeffs = list(self.q.coefficients)
        coeffs[0] = 0
        return UnivariatePoly(coeffs)


def depress_polynomial(f: UnivariatePoly, b: int) -> DepressedForm:
    """Scale and shift f into a monic integer polynomial with zero
    coefficient in degree d-1.

    Multiplying f by d^d * a0^(d-1) makes y = a0*d*x the natural variable,
    and the further shift z = y + a1 removes the subleading monomial. Both
    maps send integers to integers.
    """
    if f.degree < 2:
        raise ValueError("degree must be >= 2")
    if b == 0:
        raise ValueError("b must be nonzero")
    d = f.degree
    a0 = f.leading
    a1 = f.coefficient(d - 1)
    poly_scale = d ** d * a0 ** (d - 1)
    # coefficients of P(y) = poly_scale * f(y / (a0 d)): b_i = d^i a_i a0^(i-1)
    p_coeffs = [1]
    for i in range(1, d + 1):
        p_coeffs.append(d ** i * f.coefficient(d - i) * a0 ** (i - 1))
    q = UnivariatePoly(p_coeffs).shifted(-a1)     # Q(z) = P(z - a1)
    if q.coefficient(d - 1) != 0:
        raise AssertionError("depression left a subleading term")
    return DepressedForm(q, b * poly_scale, poly_scale, a0 * d, a1)
