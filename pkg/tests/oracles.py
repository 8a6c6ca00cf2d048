"""Independent brute-force oracles shared by the solver and acceptance tests.

These deliberately avoid the library's search strategies: plain vectorized
grids and直 direct enumeration, so agreement is meaningful.
"""

import math

import numpy as np


def grid_form_solutions(coefficients, value, bound, coprime=True):
    """All (x, y) with |x|,|y| <= bound and form(x, y) == value, by meshgrid.

    ``coefficients`` are a_d..a_0 of a binary form (x-degree descending).
    """
    side = np.arange(-bound, bound + 1, dtype=np.int64)
    xs, ys = np.meshgrid(side, side, indexing="ij")
    d = len(coefficients) - 1
    total = np.zeros_like(xs)
    for i, c in enumerate(coefficients):
        if c:
            total += c * xs ** (d - i) * ys ** i
    hits = np.argwhere(total == value)
    out = []
    for ix, iy in hits:
        x, y = int(side[ix]), int(side[iy])
        if coprime and math.gcd(x, y) != 1:
            continue
        out.append((x, y))
    return sorted(out)


def grid_product_solutions(value, s, sign, bound, coprime=True):
    """All (x, y) in the grid with x^s y^s (x^s + sign y^s) == value."""
    side = np.arange(-bound, bound + 1, dtype=np.int64)
    xs, ys = np.meshgrid(side, side, indexing="ij")
    xp = xs ** s
    yp = ys ** s
    total = xp * yp * (xp + sign * yp)
    hits = np.argwhere(total == value)
    out = []
    for ix, iy in hits:
        x, y = int(side[ix]), int(side[iy])
        if coprime and math.gcd(x, y) != 1:
            continue
        out.append((x, y))
    return sorted(out)
