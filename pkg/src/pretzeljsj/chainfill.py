"""Exceptional Dehn fillings of the minimally twisted chain links.

The three links handled here are the 5-chain L10n113 and the links L8n7
and L6a5 obtained from it by (-1)-filling one and two components.  A
filling is a tuple of slopes, one per component, with ``PHI`` for a cusp
left open.  Martelli, Petronio and Roukema list, for each link, a set of
moves that preserve the filled manifold together with a finite list of
"base" patterns; a filling is exceptional iff some tuple in its orbit
under the moves contains one of the base patterns.

:func:`orbit_decide` runs that orbit as a breadth-first search, storing
states up to the dihedral symmetry of the chain.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .extrat import INF, PHI, MoebiusMap, Slope, format_slope, slope_apply, sort_key

__all__ = [
    "LinkKind", "FillingTuple", "OpId", "Op", "UnknownOpError",
    "Exceptional", "Hyperbolic", "Undecided", "Decision",
    "apply_op", "ops_for", "matches_exceptional", "orbit_decide",
    "one_filling_3chain_exceptional", "replay", "exceptional_patterns", "format_pattern",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 100_000


class LinkKind(enum.Enum):
    CHAIN5 = "5chain"
    CHAIN4 = "4chain"
    CHAIN3 = "3chain"

    @property
    def arity(self) -> int:
        return {"5chain": 5, "4chain": 4, "3chain": 3}[self.value]

    @property
    def link_name(self) -> str:
        return {"5chain": "L10n113", "4chain": "L8n7", "3chain": "L6a5"}[self.value]


def _slope_key(slopes):
    return tuple(sort_key(s) for s in slopes)


@dataclass(frozen=True)
class FillingTuple:
    kind: LinkKind
    slopes: tuple

    def __post_init__(self):
        slopes = tuple(self.slopes)
        if len(slopes) != self.kind.arity:
            raise ValueError(
                f"{self.kind.link_name} needs {self.kind.arity} slopes, got {len(slopes)}"
            )
        for s in slopes:
            if not (s is INF or s is PHI or isinstance(s, Fraction)):
                raise TypeError(f"not a slope: {s!r}")
        object.__setattr__(self, "slopes", slopes)

    @classmethod
    def of(cls, kind: LinkKind, *slopes) -> FillingTuple:
        """Convenience constructor; ints are promoted to Fractions."""
        return cls(kind, tuple(Fraction(s) if isinstance(s, int) else s for s in slopes))

    def __str__(self):
        return "(" + ", ".join(format_slope(s) for s in self.slopes) + ")"

    def dihedral_images(self) -> list[FillingTuple]:
        return [FillingTuple(self.kind, tuple(self.slopes[i] for i in perm))
                for perm, _ in _dihedral(self.kind)]

    def canonical(self) -> FillingTuple:
        """Lexicographically least dihedral image (finite < inf < phi)."""
        return FillingTuple(self.kind, _canonical_slopes(self.kind, self.slopes))


@dataclass(frozen=True)
class OpId:
    kind: LinkKind
    name: str
    inverse: bool = False

    def __str__(self):
        return f"{self.name}^-1" if self.inverse else self.name


class UnknownOpError(ValueError):
    """An op was applied to a tuple of the wrong link kind."""


# ---------------------------------------------------------------------------
# move tables

Action = Callable[[tuple], tuple]
Guard = Callable[[tuple], bool]


@dataclass(frozen=True)
class Op:
    id: OpId
    action: Action
    guard: Optional[Guard] = None
    # index map for pure permutations: new[i] = old[perm[i]]
    perm: Optional[tuple] = None

    @property
    def guarded(self) -> bool:
        return self.guard is not None


def _m(a, b, c, d) -> MoebiusMap:
    return MoebiusMap(a, b, c, d)


def _permutation(kind, name, perm) -> Op:
    return Op(OpId(kind, name), lambda s, perm=perm: tuple(s[i] for i in perm), perm=perm)


def _entrywise(kind, name, maps, guard=None, inverse=False) -> Op:
    if inverse:
        maps = [None if m is None else m.inverse() for m in maps]

    def action(s, maps=tuple(maps)):
        return tuple(x if m is None else slope_apply(m, x) for m, x in zip(maps, s))

    return Op(OpId(kind, name, inverse), action, guard)


def _is(value) -> Callable[[Slope], bool]:
    return lambda x: x is not PHI and x is not INF and x == value


def _prefix_guard(*values) -> Guard:
    checks = [_is(Fraction(v)) for v in values]
    return lambda s: all(c(x) for c, x in zip(checks, s))


SHIFT_UP = _m(1, 1, 0, 1)
SHIFT_DOWN = _m(1, -1, 0, 1)
INVERT = _m(0, 1, 1, 0)
ONE_MINUS = _m(-1, 1, 0, 1)
X_OVER_XM1 = _m(1, 0, 1, -1)


def _chain5_ops() -> list[Op]:
    k = LinkKind.CHAIN5

    def mobius(s):
        return (slope_apply(INVERT, s[1]), slope_apply(INVERT, s[0]),
                slope_apply(ONE_MINUS, s[2]), slope_apply(X_OVER_XM1, s[3]),
                slope_apply(ONE_MINUS, s[4]))

    def slide(s):
        return (s[0], slope_apply(SHIFT_DOWN, s[2]), s[3], slope_apply(SHIFT_UP, s[4]), s[1])

    def slide_inv(s):
        return (s[0], s[4], slope_apply(SHIFT_UP, s[1]), s[2], slope_apply(SHIFT_DOWN, s[3]))

    minus_one = _prefix_guard(-1)
    return [
        _permutation(k, "rotate", (4, 0, 1, 2, 3)),
        _permutation(k, "reflect", (4, 3, 2, 1, 0)),
        Op(OpId(k, "mobius"), mobius),
        Op(OpId(k, "slide"), slide, minus_one),
        Op(OpId(k, "slide", True), slide_inv, minus_one),
        _entrywise(k, "tail", [None] * 4 + [_m(-1, -6, 0, 1)], _prefix_guard(-1, -2, -2, -2)),
    ]


def _chain4_ops() -> list[Op]:
    k = LinkKind.CHAIN4

    def slide(s):
        return (s[0], slope_apply(SHIFT_DOWN, s[2]), slope_apply(SHIFT_UP, s[1]), s[3])

    def slide_inv(s):
        # the move is its own inverse; kept as a separate OpId regardless
        return (s[0], slope_apply(SHIFT_DOWN, s[2]), slope_apply(SHIFT_UP, s[1]), s[3])

    f1 = _m(1, -2, 1, -1)
    two_minus = _m(-1, 2, 0, 1)
    minus_one = _prefix_guard(-1)
    return [
        _permutation(k, "rotate", (3, 0, 1, 2)),
        _permutation(k, "reflect", (3, 2, 1, 0)),
        _entrywise(k, "mobius_all", [f1] * 4),
        _entrywise(k, "mobius_alt", [two_minus, X_OVER_XM1, two_minus, X_OVER_XM1]),
        Op(OpId(k, "slide"), slide, minus_one),
        Op(OpId(k, "slide", True), slide_inv, minus_one),
        _entrywise(k, "tail", [None] * 3 + [_m(-1, -4, 0, 1)], _prefix_guard(-1, -2, -2)),
    ]


def _chain3_ops() -> list[Op]:
    k = LinkKind.CHAIN3
    half, three_halves, five_halves = Fraction(1, 2), Fraction(3, 2), Fraction(5, 2)
    five = [None, _m(1, -3, 1, -2), _m(2, -3, 1, -1)]
    return [
        _permutation(k, "reflect", (2, 1, 0)),
        _permutation(k, "swap", (1, 0, 2)),
        _entrywise(k, "at_half", [None, _m(-1, 4, 0, 1), _m(-1, 4, 0, 1)], _prefix_guard(half)),
        _entrywise(k, "at_three_halves", [None, _m(2, -5, 1, -2), _m(2, -5, 1, -2)],
                   _prefix_guard(three_halves)),
        _entrywise(k, "at_five_halves", five, _prefix_guard(five_halves)),
        _entrywise(k, "at_five_halves", five, _prefix_guard(five_halves), inverse=True),
        _entrywise(k, "at_four", [None, _m(1, -2, 1, -1), _m(1, -2, 1, -1)], _prefix_guard(4)),
        _entrywise(k, "tail", [None, None, _m(-1, -2, 0, 1)], _prefix_guard(-1, -2)),
        _entrywise(k, "invert_tail", [None, None, INVERT], _prefix_guard(-1, 4)),
    ]


_OPS: dict[LinkKind, list[Op]] = {
    LinkKind.CHAIN5: _chain5_ops(),
    LinkKind.CHAIN4: _chain4_ops(),
    LinkKind.CHAIN3: _chain3_ops(),
}
_OP_INDEX: dict[OpId, Op] = {op.id: op for ops in _OPS.values() for op in ops}


def ops_for(kind: LinkKind) -> list[Op]:
    return list(_OPS[kind])


def _compose(p, q):
    # apply p then q: new[i] = (p applied)[q[i]] = old[p[q[i]]]
    return tuple(p[i] for i in q)


_DIHEDRAL_CACHE: dict[LinkKind, list] = {}


def _dihedral(kind: LinkKind) -> list[tuple[tuple, tuple]]:
    """All index permutations generated by the kind's permutation moves,
    each with a shortest word (tuple of OpIds) realising it."""
    if kind not in _DIHEDRAL_CACHE:
        gens = [op for op in _OPS[kind] if op.perm is not None]
        ident = tuple(range(kind.arity))
        found = {ident: ()}
        queue = deque([ident])
        while queue:
            p = queue.popleft()
            for g in gens:
                q = _compose(p, g.perm)
                if q not in found:
                    found[q] = found[p] + (g.id,)
                    queue.append(q)
        _DIHEDRAL_CACHE[kind] = sorted(found.items(), key=lambda kv: (len(kv[1]), kv[0]))
    return _DIHEDRAL_CACHE[kind]


def _canonical_slopes(kind: LinkKind, slopes: tuple) -> tuple:
    images = [tuple(slopes[i] for i in perm) for perm, _ in _dihedral(kind)]
    return min(images, key=_slope_key)


def apply_op(t: FillingTuple, op: OpId) -> Optional[FillingTuple]:
    """Apply one move; None when its guard does not hold."""
    if op.kind is not t.kind or op not in _OP_INDEX:
        raise UnknownOpError(f"{op} is not a move of {t.kind.link_name}")
    move = _OP_INDEX[op]
    if move.guard is not None and not move.guard(t.slopes):
        return None
    return FillingTuple(t.kind, move.action(t.slopes))


def replay(t: FillingTuple, witness: Sequence[OpId]) -> FillingTuple:
    for op in witness:
        nxt = apply_op(t, op)
        if nxt is None:
            raise ValueError(f"guard of {op} fails at {t}")
        t = nxt
    return t


# ---------------------------------------------------------------------------
# base patterns

def _pat(*entries) -> tuple:
    return tuple(INF if e == "inf" else Fraction(e) for e in entries)


_PATTERNS: dict[LinkKind, list[tuple]] = {
    LinkKind.CHAIN5: [
        _pat("inf"),
        _pat(-1, -2, -2, -1),
        _pat(-2, "-1/2", 3, 3, "-1/2"),
        _pat(-1, -2, -2, -3, -5),
        _pat(-1, -2, -3, -2, -4),
        _pat(-1, -3, -2, -2, -3),
        _pat(-2, -2, -2, -2, -2),
    ],
    LinkKind.CHAIN4: [
        _pat(0), _pat("inf"),
        _pat(-1, -2, -1),
        _pat(-2, -2, -2, -2),
        _pat(-1, -3, -2, -3),
        _pat(-1, -2, -3, -4),
    ],
    LinkKind.CHAIN3: [
        _pat(0), _pat(1), _pat(2), _pat(3), _pat("inf"),
        _pat(-1, -1),
        _pat(-1, -3, -3),
        _pat(-2, -2, -2),
        _pat("2/3", 4, 4),
    ],
}


def exceptional_patterns(kind: LinkKind) -> list[tuple]:
    return list(_PATTERNS[kind])


def _same(x: Slope, y: Slope) -> bool:
    if x is PHI or y is PHI:
        return False
    if x is INF or y is INF:
        return x is y
    return x == y


def matches_exceptional(t: FillingTuple) -> Optional[tuple]:
    """First base pattern occurring in ``t``, else None.

    A pattern of length k matches k cyclically consecutive entries read in
    either direction; single-entry patterns therefore match any entry.
    """
    n = t.kind.arity
    s = t.slopes
    for pattern in _PATTERNS[t.kind]:
        k = len(pattern)
        for start in range(n):
            for step in (1, -1):
                if all(_same(s[(start + step * i) % n], pattern[i]) for i in range(k)):
                    return pattern
    return None


def format_pattern(pattern: tuple) -> str:
    if len(pattern) == 1:
        return format_slope(pattern[0])
    return "(" + ",".join(format_slope(x) for x in pattern) + ")"


# ---------------------------------------------------------------------------
# decisions

@dataclass(frozen=True)
class Exceptional:
    witness: tuple
    pattern: tuple
    reached: FillingTuple
    states_explored: int = 0
    guard_hits: int = 0

    verdict = "exceptional"


@dataclass(frozen=True)
class Hyperbolic:
    orbit_size: int
    guard_hits: int = 0

    verdict = "hyperbolic"


@dataclass(frozen=True)
class Undecided:
    states_explored: int
    guard_hits: int = 0

    verdict = "undecided"


Decision = Union[Exceptional, Hyperbolic, Undecided]


def orbit_decide(t: FillingTuple, budget: int = DEFAULT_BUDGET) -> Decision:
    """Breadth-first search of the orbit of ``t`` under all moves.

    Returns Exceptional as soon as a base pattern shows up, Hyperbolic once
    the (dihedrally reduced) orbit is exhausted without one, and Undecided
    if more than ``budget`` canonical states would be needed.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    kind = t.kind
    perms = _dihedral(kind)
    moves = [op for op in _OPS[kind] if op.perm is None]

    start = _canonical_slopes(kind, t.slopes)
    # canonical key -> (tuple actually reached, op path from t)
    paths = {start: (t.slopes, ())}
    queue = deque([start])
    guard_hits = 0
    while queue:
        state = queue.popleft()
        slopes, path = paths[state]
        pattern = matches_exceptional(FillingTuple(kind, slopes))
        if pattern is not None:
            return Exceptional(path, pattern, FillingTuple(kind, slopes), len(paths), guard_hits)
        for perm, perm_word in perms:
            image = tuple(slopes[i] for i in perm)
            for move in moves:
                if move.guard is not None:
                    if not move.guard(image):
                        continue
                    guard_hits += 1
                new = move.action(image)
                key = _canonical_slopes(kind, new)
                if key in paths:
                    continue
                if len(paths) >= budget:
                    return Undecided(len(paths), guard_hits)
                paths[key] = (new, path + perm_word + (move.id,))
                queue.append(key)
    return Hyperbolic(len(paths), guard_hits)


def one_filling_3chain_exceptional(a) -> bool:
    """Closed-form answer for the one-cusp fillings (a, phi, phi) of L6a5."""
    if a is INF:
        return True
    return a in (0, 1, 2, 3)
