"""Named equation corpus.

Each preset is canonical DSL text plus default constraints; they cover the
classical families the toolkit reproduces. Texts are in canonical printer
form, so parse and print round-trip on them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Equation, parse_equation


@dataclass(frozen=True)
class Preset:
    name: str
    text: str
    coprime_xy: bool = False
    note: str = ""

    def equation(self) -> Equation:
        eq = parse_equation(self.text)
        if self.coprime_xy:
            eq = Equation(eq.lhs, eq.rhs, coprime_xy=True)
        return eq


_PRESETS = [
    Preset("brocard", "1 * n! = x^2 - 1",
           note="n! + 1 a perfect square; solutions believed to be n = 4, 5, 7"),
    Preset("ramanujan-nagell", "1 * 2^n = x^2 + 7",
           note="x^2 + 7 = 2^n; solutions n = 3, 4, 5, 7, 15"),
    Preset("erdos-oblath-sum", "1 * n! = x^3 + y^3",
           note="factorial as a sum of two cubes"),
    Preset("erdos-oblath-diff", "1 * n! = x^3 - y^3",
           note="factorial as a difference of two cubes"),
    Preset("dabrowski", "1 * n! = x^2 + y^2 - 1",
           note="n! + A = x^2 + y^2 with A = 1; general A via the DSL"),
    Preset("binary-sum-squares", "1 * n! = x^2 + y^2",
           note="factorial represented by the quadratic form x^2 + y^2"),
    Preset("binary-quadratic", "1 * n! = x^2 + x*y + y^2",
           note="factorial represented by x^2 + xy + y^2"),
    Preset("ulas-2nn-square", "1 * n! * 2^n = x^2",
           note="2^n n! a perfect square; equals n!_S for the even numbers"),
    Preset("ulas-doublefact", "1 * n! * 2^n = x^2 - 1",
           note="x^2 - 1 = (2n)!! via (2n)!! = 2^n n!"),
    Preset("special-xy-plus", "1 * n! = x^2*y + x*y^2",
           note="n! = xy(x + y), coprime x, y", coprime_xy=True),
    Preset("special-xy-minus", "1 * n! = x^2*y - x*y^2",
           note="n! = xy(x - y), coprime x, y", coprime_xy=True),
    Preset("thue-mahler-7m-plus", "1 * n! * 7^m = x^2*y + x*y^2",
           note="xy(x + y) = 7^m n!, coprime x, y", coprime_xy=True),
    Preset("thue-mahler-7m-minus", "1 * n! * 7^m = x^2*y - x*y^2",
           note="xy(x - y) = 7^m n!, coprime x, y", coprime_xy=True),
    Preset("quartic-3m-plus", "1 * m! * 3^m * n! = x^4*y^2 + x^2*y^4",
           note="x^4 y^2 + y^4 x^2 = 3^m m! n!, coprime x, y", coprime_xy=True),
    Preset("quartic-3m-minus", "1 * m! * 3^m * n! = x^4*y^2 - x^2*y^4",
           note="x^4 y^2 - y^4 x^2 = 3^m m! n!, coprime x, y", coprime_xy=True),
    Preset("reducible-x4y4", "1 * n! * m! = x^7*y^4 - 3*x^6*y^5 + 3*x^5*y^6 - x^4*y^7",
           note="(xy)^4 (x - y)^3 = n! m!, expanded"),
]

PRESETS = {p.name: p for p in _PRESETS}


def preset_equation(name: str) -> Equation:
    try:
        return PRESETS[name].equation()
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; known: "
                         + ", ".join(sorted(PRESETS))) from None
