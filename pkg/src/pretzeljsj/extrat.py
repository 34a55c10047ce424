"""Exact arithmetic on the rational projective line Q u {oo}.

Finite points are plain :class:`fractions.Fraction` values, which are
already kept in lowest terms with a positive denominator.  The point at
infinity is the singleton :data:`INF`, and :data:`PHI` marks an unfilled
cusp in a filling tuple.  A *slope* is either an ExtRat or ``PHI``.

>>> moebius_apply(F1_5CHAIN, normalize(0, 1))
inf
>>> sorted(anharmonic_orbit(Fraction(-1), CHAIN5_MAPS), key=sort_key)
[Fraction(-1, 1), Fraction(1, 2), Fraction(2, 1)]
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "INF", "PHI", "Fraction", "ExtRat", "Slope", "MoebiusMap", "OrbitOverflow",
    "normalize", "moebius_apply", "slope_apply", "anharmonic_orbit",
    "parse_slope", "format_slope", "sort_key", "is_extrat",
    "IDENTITY", "CHAIN5_MAPS", "CHAIN4_MAPS",
]


class _Infinity:
    """The unique point at infinity.  Unsigned; ``-INF is INF``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __neg__(self):
        return self

    def __hash__(self):
        return hash("ExtRat.inf")


class _Unfilled:
    """Marker for a cusp left unfilled."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "phi"

    def __reduce__(self):
        return (_Unfilled, ())

    def __hash__(self):
        return hash("Slope.phi")


INF = _Infinity()
PHI = _Unfilled()

ExtRat = Union[Fraction, _Infinity]
Slope = Union[Fraction, _Infinity, _Unfilled]


def is_extrat(x) -> bool:
    return x is INF or isinstance(x, Fraction)


def normalize(num: int, den: int) -> ExtRat:
    """Canonical point for the homogeneous pair ``(num : den)``.

    Raises ValueError for the indeterminate pair (0, 0).
    """
    if num == 0 and den == 0:
        raise ValueError("0/0 is not a point of the projective line")
    if den == 0:
        return INF
    return Fraction(num, den)


def _homogeneous(x: ExtRat) -> tuple[int, int]:
    if x is INF:
        return 1, 0
    return x.numerator, x.denominator


@dataclass(frozen=True)
class MoebiusMap:
    """x -> (a*x + b) / (c*x + d) with integer entries and ad - bc != 0."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det == 0:
            raise ValueError(f"singular Moebius map {self.matrix}")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __call__(self, x: Slope) -> Slope:
        return slope_apply(self, x)

    def __matmul__(self, other: MoebiusMap) -> MoebiusMap:
        """``self @ other`` is "apply other, then self"."""
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> MoebiusMap:
        # adjugate; projectively the same as the true inverse
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def same_map(self, other: MoebiusMap) -> bool:
        """Projective equality: matrices agree up to a nonzero scalar."""
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        # proportional iff all 2x2 cross products vanish
        return all(
            mine[i] * theirs[j] == mine[j] * theirs[i]
            for i in range(4) for j in range(i + 1, 4)
        )


def moebius_apply(m: MoebiusMap, x: ExtRat) -> ExtRat:
    num, den = _homogeneous(x)
    return normalize(m.a * num + m.b * den, m.c * num + m.d * den)


def slope_apply(m: MoebiusMap, s: Slope) -> Slope:
    if s is PHI:
        return PHI
    return moebius_apply(m, s)


class OrbitOverflow(RuntimeError):
    """Orbit closure grew past the configured cap."""

    def __init__(self, cap: int, partial: frozenset):
        super().__init__(f"orbit exceeded {cap} elements")
        self.cap = cap
        self.partial = partial


def anharmonic_orbit(x: ExtRat, maps: Iterable[MoebiusMap], cap: int = 1000) -> frozenset:
    """Closure of ``{x}`` under the given maps.

    Raises :class:`OrbitOverflow` once more than ``cap`` points are seen.
    """
    maps = list(maps)
    if not maps:
        raise ValueError("need at least one map")
    seen = {x}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for m in maps:
            z = moebius_apply(m, y)
            if z not in seen:
                seen.add(z)
                if len(seen) > cap:
                    raise OrbitOverflow(cap, frozenset(seen))
                queue.append(z)
    return frozenset(seen)


def sort_key(s: Slope) -> tuple:
    """Total order on slopes: finite values ascending, then inf, then phi."""
    if s is PHI:
        return (2, 0)
    if s is INF:
        return (1, 0)
    return (0, s)


def parse_slope(text: str) -> Slope:
    """Parse ``"a/b"``, an integer, ``"inf"`` or ``"phi"``."""
    token = text.strip().lower()
    if token in ("inf", "infinity", "oo"):
        return INF
    if token in ("phi", "-", "unfilled"):
        return PHI
    if "/" in token:
        num, _, den = token.partition("/")
        try:
            return normalize(int(num), int(den))
        except ValueError as exc:
            raise ValueError(f"bad slope {text!r}") from exc
    try:
        return Fraction(int(token))
    except ValueError as exc:
        raise ValueError(f"bad slope {text!r}") from exc


def format_slope(s: Slope) -> str:
    if s is PHI:
        return "phi"
    if s is INF:
        return "inf"
    if s.denominator == 1:
        return str(s.numerator)
    return f"{s.numerator}/{s.denominator}"


IDENTITY = MoebiusMap(1, 0, 0, 1)

# entry maps of the 5-chain moves: 1/x, 1-x, x/(x-1)
F1_5CHAIN = MoebiusMap(0, 1, 1, 0)
F2_5CHAIN = MoebiusMap(-1, 1, 0, 1)
F3_5CHAIN = MoebiusMap(1, 0, 1, -1)
CHAIN5_MAPS = (F1_5CHAIN, F2_5CHAIN, F3_5CHAIN)

# entry maps of the 4-chain moves: (x-2)/(x-1), 2-x, x/(x-1)
F1_4CHAIN = MoebiusMap(1, -2, 1, -1)
F2_4CHAIN = MoebiusMap(-1, 2, 0, 1)
F3_4CHAIN = MoebiusMap(1, 0, 1, -1)
CHAIN4_MAPS = (F1_4CHAIN, F2_4CHAIN, F3_4CHAIN)
