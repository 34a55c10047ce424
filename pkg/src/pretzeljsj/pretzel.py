"""Genus-one pretzel knots P(2p+1, 2q+1, 2r+1).

A knot is named by the integer triple (p, q, r); every triple is a knot
because all three tangle parameters are odd.
"""

from __future__ import annotations

from collections import Counter
from typing import NamedTuple

from .laurent import LaurentPoly

__all__ = [
    "PretzelParams", "cyclic_permute", "mirror", "is_unknot", "is_trefoil",
    "alexander", "jones", "alexander_coefficient", "JONES_DENOMINATOR",
]


class PretzelParams(NamedTuple):
    p: int
    q: int
    r: int

    @property
    def twists(self) -> tuple[int, int, int]:
        """The odd pretzel parameters (2p+1, 2q+1, 2r+1)."""
        return (2 * self.p + 1, 2 * self.q + 1, 2 * self.r + 1)

    def __str__(self):
        l, m, n = self.twists
        return f"P({l},{m},{n})"


def _params(args) -> PretzelParams:
    if len(args) == 1:
        return PretzelParams(*args[0])
    return PretzelParams(*args)


def cyclic_permute(*args) -> PretzelParams:
    p, q, r = _params(args)
    return PretzelParams(q, r, p)


def mirror(*args) -> PretzelParams:
    """Mirror image: every odd parameter 2k+1 becomes -(2k+1) = 2(-k-1)+1."""
    p, q, r = _params(args)
    return PretzelParams(-p - 1, -q - 1, -r - 1)


def is_unknot(*args) -> bool:
    return {-1, 0} <= set(_params(args))


_TREFOILS = [Counter(t) for t in ((-1, 1, 1), (-1, -1, -1), (0, 0, 0), (0, -2, -2))]


def is_trefoil(*args) -> bool:
    return Counter(_params(args)) in _TREFOILS


def alexander_coefficient(*args) -> int:
    p, q, r = _params(args)
    return (p + 1) * (q + 1) * (r + 1) - p * q * r


def alexander(*args) -> LaurentPoly:
    """c t - (2c - 1) + c t^-1 with c = (p+1)(q+1)(r+1) - pqr."""
    c = alexander_coefficient(*args)
    return LaurentPoly({1: c, 0: -(2 * c - 1), -1: c})


# t + 2 + t^-1
JONES_DENOMINATOR = LaurentPoly({1: 1, 0: 2, -1: 1})


def jones_numerator(*args) -> LaurentPoly:
    p, q, r = _params(args)
    s = p + q + r
    bracket = LaurentPoly()
    for exponent, sign in (
        (-2 * (s + 2), -1),
        (-2 * (s + 1), -1),
        (-2 * (p + q + 1), 1),
        (-2 * (q + r + 1), 1),
        (-2 * (r + p + 1), 1),
    ):
        bracket = bracket + LaurentPoly.monomial(exponent, sign)
    return LaurentPoly({1: 1, 0: 1, -1: 1}) * bracket + 1


def jones(*args) -> LaurentPoly:
    """Closed-form Jones polynomial; the division by t + 2 + t^-1 is exact."""
    return jones_numerator(*args).exact_div(JONES_DENOMINATOR)
