"""Integer Laurent polynomials in one variable t.

Stored sparsely as ``{exponent: coefficient}`` with zero coefficients
dropped, so structural equality is polynomial equality.

>>> t = LaurentPoly.t()
>>> print(7 * t - 13 + 7 * t ** -1)
7t - 13 + 7t^-1
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


class InexactDivision(ArithmeticError):
    """Polynomial division left a nonzero remainder."""


class LaurentPoly:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = {int(e): int(c) for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def t(cls) -> LaurentPoly:
        return cls({1: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> LaurentPoly:
        return cls({exponent: coefficient})

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @staticmethod
    def _coerce(other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    # -- basic accessors ----------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no valuation")
        return min(self._terms)

    def coefficient(self, e: int) -> int:
        return self._terms.get(e, 0)

    def leading(self) -> int:
        return self._terms[self.degree()]

    def __call__(self, value):
        """Evaluate at a number (int, Fraction, float, complex)."""
        if isinstance(value, int):
            value = Fraction(value)
        return sum(c * value ** e for e, c in self._terms.items())

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials are invertible")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials are invertible")
            return LaurentPoly({e * n: 1 if n % 2 == 0 else c})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, divisor: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """Division with both sides shifted to start at t^0.

        Returns (quotient, remainder) with ``self == quotient * divisor +
        remainder`` and the remainder's degree span shorter than the
        divisor's.  Stops early (leaving a larger remainder) if a leading
        coefficient is not divisible over the integers.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly(), LaurentPoly()
        dshift, nshift = divisor.valuation(), self.valuation()
        d = divisor.shifted(-dshift)._terms
        dtop = max(d)
        dlead = d[dtop]
        rem = self.shifted(-nshift)._terms
        quo: dict[int, int] = {}
        while rem and max(rem) >= dtop:
            top = max(rem)
            if rem[top] % dlead:
                break
            q = rem[top] // dlead
            k = top - dtop
            quo[k] = q
            for e, dc in d.items():
                v = rem.get(e + k, 0) - q * dc
                if v:
                    rem[e + k] = v
                else:
                    rem.pop(e + k, None)
        return (LaurentPoly(quo).shifted(nshift - dshift),
                LaurentPoly(rem).shifted(nshift))

    def exact_div(self, divisor: LaurentPoly) -> LaurentPoly:
        quo, rem = self.divmod(divisor)
        if not rem.is_zero():
            raise InexactDivision(f"({self}) / ({divisor}) leaves remainder {rem}")
        return quo

    def shifted(self, k: int) -> LaurentPoly:
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def invert_variable(self) -> LaurentPoly:
        """Substitute t -> t^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def is_symmetric(self) -> bool:
        return self == self.invert_variable()

    def normalized_symmetric(self) -> LaurentPoly:
        """The unit multiple +-t^k p that is symmetric with p(1) > 0.

        Raises ValueError when no such multiple exists.
        """
        if self.is_zero():
            raise ValueError("zero polynomial cannot be normalized")
        span = self.degree() + self.valuation()
        if span % 2:
            raise ValueError(f"{self} has odd span; no symmetric unit multiple")
        p = self.shifted(-span // 2)
        if p(1) < 0 or (p(1) == 0 and p.leading() < 0):
            p = -p
        if not p.is_symmetric():
            raise ValueError(f"{self} is not symmetric up to units")
        return p

    def equal_up_to_units(self, other: LaurentPoly) -> bool:
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        k = other.valuation() - self.valuation()
        moved = self.shifted(k)
        return moved == other or -moved == other

    # -- comparison / display --------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"LaurentPoly({dict(sorted(self._terms.items()))})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                coeff = "" if mag == 1 else str(mag)
                power = "t" if e == 1 else f"t^{e}"
                body = coeff + power
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict[str, int]:
        """Exponent -> coefficient map with string keys, ascending exponent."""
        return {str(e): self._terms[e] for e in sorted(self._terms)}
