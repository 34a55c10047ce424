"""Finitely presented groups attached to a genus-one pretzel knot.

Four presentations are built from (p, q, r):

* the knot group in Lin's form, generators a, b, t;
* the group of the 0-surgery, which adds the longitude relator;
* the group of the 0-surgery cut open along the capped-off Seifert torus,
  a one-relator group on a, b;
* the one-relator group on A, C read off the 5-chain surgery picture.

Abelianization goes through :func:`smith_normal_form`, and
:func:`fox_alexander` recomputes the Alexander polynomial from the Lin
presentation by free differential calculus.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping, Sequence

from .laurent import LaurentPoly

__all__ = [
    "Word", "Presentation", "AbelianInvariants", "DegenerateFoxMatrix",
    "lin_presentation", "zero_surgery_presentation", "cut_manifold_presentation",
    "xpqr_presentation", "peripheral_words", "relabel_xpqr_to_cut",
    "smith_normal_form", "abelian_invariants", "exponent_sum_matrix",
    "fox_derivative", "fox_alexander",
]


class Word:
    """A word in the free group: a tuple of (generator, +-1) letters.

    The constructor freely reduces its input.
    """

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[str, int]] = ()):
        out: list[tuple[str, int]] = []
        for g, e in letters:
            if e not in (1, -1):
                raise ValueError(f"letter exponent must be +-1, got {e}")
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
        self.letters = tuple(out)

    @classmethod
    def gen(cls, g: str) -> Word:
        return cls([(g, 1)])

    @classmethod
    def parse(cls, text: str) -> Word:
        """Parse space-separated tokens such as ``"a b^2 t^-1"``; ``1`` is the identity."""
        letters = []
        for token in text.replace("*", " ").split():
            if token == "1":
                continue
            name, _, exp = token.partition("^")
            k = int(exp) if exp else 1
            letters.extend(cls.gen(name) ** k)
        return cls(letters)

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def inverse(self) -> Word:
        return Word((g, -e) for g, e in reversed(self.letters))

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def relabel(self, mapping: Mapping[str, str]) -> Word:
        return Word((mapping.get(g, g), e) for g, e in self.letters)

    def exponent_sum(self, g: str) -> int:
        return sum(e for h, e in self.letters if h == g)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def __str__(self):
        if not self.letters:
            return "1"
        # compress runs: a a a -> a^3
        parts = []
        i = 0
        while i < len(self.letters):
            g, e = self.letters[i]
            j = i
            while j < len(self.letters) and self.letters[j] == (g, e):
                j += 1
            n = (j - i) * e
            parts.append(g if n == 1 else f"{g}^{n}")
            i = j
        return " ".join(parts)


def _g(name: str) -> Word:
    return Word.gen(name)


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple
    name: str = ""

    def __post_init__(self):
        gens = set(self.generators)
        for rel in self.relators:
            for g, _ in rel:
                if g not in gens:
                    raise ValueError(f"relator {rel} uses undeclared generator {g!r}")

    @classmethod
    def from_equations(cls, generators: Sequence[str], equations, name: str = "") -> Presentation:
        """Relators given as Words or (lhs, rhs) pairs, stored as lhs rhs^-1."""
        relators = []
        for eq in equations:
            if isinstance(eq, Word):
                relators.append(eq)
            else:
                lhs, rhs = eq
                relators.append(lhs * rhs.inverse())
        return cls(tuple(generators), tuple(relators), name)

    def __str__(self):
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.rank == 1:
            parts.insert(0, "Z")
        elif self.rank > 1:
            parts.insert(0, f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# the presentation families

def _x_plus(p, q, r) -> Word:
    return _g("a") ** (r + 1) * (_g("b") * _g("a")) ** q * _g("b")


def _y_plus(p, q, r) -> Word:
    return _g("b") ** (p + 1) * (_g("a") * _g("b")) ** q


def _x_minus(p, q, r) -> Word:
    return _g("a") ** (r + 1) * (_g("b") * _g("a")) ** q


def _y_minus(p, q, r) -> Word:
    return _g("b") ** (p + 1) * (_g("a") * _g("b")) ** q * _g("a")


def peripheral_words(p: int, q: int, r: int) -> tuple[Word, Word, Word, Word]:
    """Images of the boundary-torus generators: (X+, Y+, X-, Y-)."""
    return _x_plus(p, q, r), _y_plus(p, q, r), _x_minus(p, q, r), _y_minus(p, q, r)


def _longitude_equation(p, q, r) -> tuple[Word, Word]:
    a, b = _g("a"), _g("b")
    lhs = b ** p * (b * a) ** (q + 1) * a ** r
    rhs = a ** r * (a * b) ** (q + 1) * b ** p
    return lhs, rhs


def lin_presentation(p: int, q: int, r: int) -> Presentation:
    t = _g("t")
    xp, yp, xm, ym = peripheral_words(p, q, r)
    return Presentation.from_equations(
        ("a", "b", "t"),
        [(t * xp * t.inverse(), xm), (t * yp * t.inverse(), ym)],
        "knot group (Lin)",
    )


def zero_surgery_presentation(p: int, q: int, r: int) -> Presentation:
    lin = lin_presentation(p, q, r)
    lhs, rhs = _longitude_equation(p, q, r)
    return Presentation(lin.generators, lin.relators + (lhs * rhs.inverse(),), "0-surgery")


def cut_manifold_presentation(p: int, q: int, r: int) -> Presentation:
    return Presentation.from_equations(("a", "b"), [_longitude_equation(p, q, r)], "cut manifold")


def xpqr_presentation(p: int, q: int, r: int) -> Presentation:
    A, C = _g("A"), _g("C")
    lhs = A ** p * (A * C) ** (q + 1) * C ** r
    rhs = C ** r * (C * A) ** (q + 1) * A ** p
    return Presentation.from_equations(("A", "C"), [(lhs, rhs)], "5-chain filling")


def relabel_xpqr_to_cut(p: int, q: int, r: int) -> Word:
    """The 5-chain relator after A -> b, C -> a."""
    (rel,) = xpqr_presentation(p, q, r).relators
    return rel.relabel({"A": "b", "C": "a"})


# ---------------------------------------------------------------------------
# abelianization

def exponent_sum_matrix(P: Presentation) -> list[list[int]]:
    return [[rel.exponent_sum(g) for g in P.generators] for rel in P.relators]


def smith_normal_form(M: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Returns min(rows, cols) nonnegative entries d1 | d2 | ... (zeros last).
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    for k in range(min(m, n)):
        # pivot: smallest nonzero |entry| in the remaining block
        while True:
            pivot = None
            for i in range(k, m):
                for j in range(k, n):
                    if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                diag.extend([0] * (min(m, n) - k))
                return _fix_divisibility(diag)
            i, j = pivot
            A[k], A[i] = A[i], A[k]
            for row in A:
                row[k], row[j] = row[j], row[k]
            piv = A[k][k]
            clean = True
            for i in range(k + 1, m):
                f = A[i][k] // piv
                if f:
                    A[i] = [x - f * y for x, y in zip(A[i], A[k])]
                if A[i][k]:
                    clean = False
            for j in range(k + 1, n):
                f = A[k][j] // piv
                if f:
                    for row in A:
                        row[j] -= f * row[k]
                if A[k][j]:
                    clean = False
            if not clean:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(k + 1, m) for j in range(k + 1, n)
                        if A[i][j] % piv), None)
            if bad is None:
                break
            A[k] = [x + y for x, y in zip(A[k], A[bad[0]])]
        diag.append(abs(A[k][k]))
    return _fix_divisibility(diag)


def _fix_divisibility(diag: list[int]) -> list[int]:
    # the loop above already yields a divisibility chain; this only
    # moves zeros to the end and re-sorts defensively
    nonzero = sorted(d for d in diag if d)
    for i in range(len(nonzero)):
        for j in range(i + 1, len(nonzero)):
            a, b = nonzero[i], nonzero[j]
            g = gcd(a, b)
            nonzero[i], nonzero[j] = g, a * b // g
    return nonzero + [0] * (len(diag) - len(nonzero))


def abelian_invariants(P: Presentation) -> AbelianInvariants:
    ngens = len(P.generators)
    if not P.relators:
        return AbelianInvariants(ngens)
    diag = smith_normal_form(exponent_sum_matrix(P))
    nonzero = [d for d in diag if d]
    return AbelianInvariants(ngens - len(nonzero), tuple(d for d in nonzero if d > 1))


# ---------------------------------------------------------------------------
# Fox calculus

class DegenerateFoxMatrix(ArithmeticError):
    """The Fox minor vanished, so no Alexander polynomial can be read off."""


def _letter_image(g: str, e: int, abelianizer: Mapping[str, int]) -> int:
    return e * abelianizer.get(g, 0)


def fox_derivative(w: Word, x: str, abelianizer: Mapping[str, int]) -> LaurentPoly:
    """d w / d x pushed into Z[t, t^-1] by g -> t^abelianizer[g]."""
    out: dict[int, int] = {}
    prefix = 0  # t-exponent of the prefix read so far
    for g, e in w:
        if g == x:
            if e == 1:
                out[prefix] = out.get(prefix, 0) + 1
            else:
                k = prefix - abelianizer.get(g, 0)
                out[k] = out.get(k, 0) - 1
        prefix += _letter_image(g, e, abelianizer)
    return LaurentPoly(out)


def fox_alexander(P: Presentation, abelianizer: Mapping[str, int] | None = None,
                  meridian: str = "t") -> LaurentPoly:
    """Alexander polynomial of a deficiency-one presentation.

    Takes the Fox Jacobian, drops the meridian's column (whose image is t,
    so no (t - 1) correction is needed) and normalizes the square minor to
    the symmetric representative with positive value at t = 1.
    """
    if abelianizer is None:
        abelianizer = {g: (1 if g == meridian else 0) for g in P.generators}
    if abelianizer.get(meridian) != 1:
        raise ValueError("meridian must map to t")
    cols = [g for g in P.generators if g != meridian]
    if len(cols) != len(P.relators):
        raise ValueError("presentation is not deficiency one")
    J = [[fox_derivative(rel, g, abelianizer) for g in cols] for rel in P.relators]
    det = _det(J)
    if det.is_zero():
        raise DegenerateFoxMatrix(f"Fox minor vanishes for {P}")
    return det.normalized_symmetric()


def _det(M: list[list[LaurentPoly]]) -> LaurentPoly:
    n = len(M)
    if n == 1:
        return M[0][0]
    total = LaurentPoly()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total
