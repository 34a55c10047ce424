"""JSJ decomposition of the 0-surgery on a genus-one pretzel knot.

:func:`classify` walks the seven cases of the classification in order and
returns the number of decomposing tori and the pieces.  The cut manifold
(0-surgery minus the capped-off Seifert torus) is hyperbolic exactly when
:func:`prop31_nonhyperbolic` is false; :func:`hyperbolic_oracle` checks
that closed form against the 5-chain filling engine.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .chainfill import (
    DEFAULT_BUDGET, Decision, Exceptional, FillingTuple, Hyperbolic, LinkKind,
    Undecided, orbit_decide,
)
from .extrat import INF, PHI, normalize
from .pretzel import PretzelParams, cyclic_permute, is_trefoil, is_unknot

__all__ = [
    "PieceKind", "Chirality", "JsjPiece", "JsjResult", "classify",
    "prop31_nonhyperbolic", "cut_manifold_tuple", "reduced_tuples",
    "hyperbolic_oracle", "cross_check", "CrossCheckReport", "UnknotError",
    "CASE_LABELS",
]

CASE_LABELS = ("1.1.1", "1.1.2", "1.1.3", "1.1.4", "1.1.5", "1.1.6", "1.1.7")


class PieceKind(enum.Enum):
    SEIFERT_ANNULUS = "seifert_annulus"
    # figure-eight only: annulus base, every fibre regular (T^2 x I)
    SEIFERT_ANNULUS_REGULAR = "seifert_annulus_regular"
    SIGMA03_X_S1 = "sigma03_x_s1"
    TREFOIL_COMPLEMENT = "trefoil_complement"
    TORUS_BUNDLE_PERIOD6 = "torus_bundle_period6"
    S2_X_S1 = "s2_x_s1"
    HYPERBOLIC = "hyperbolic"


class Chirality(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    def flipped(self) -> Chirality:
        return Chirality.RIGHT if self is Chirality.LEFT else Chirality.LEFT


_DESCRIPTIONS = {
    PieceKind.SEIFERT_ANNULUS: "Seifert fibred over the annulus, one exceptional fibre of order {order}",
    PieceKind.SEIFERT_ANNULUS_REGULAR: "Seifert fibred over the annulus, no exceptional fibre (T^2 x I)",
    PieceKind.SIGMA03_X_S1: "Sigma_{{0,3}} x S^1",
    PieceKind.TREFOIL_COMPLEMENT: "{chirality}-handed trefoil complement",
    PieceKind.TORUS_BUNDLE_PERIOD6: "torus bundle over S^1 with periodic monodromy of order 6",
    PieceKind.S2_X_S1: "S^2 x S^1",
    PieceKind.HYPERBOLIC: "hyperbolic",
}


@dataclass(frozen=True)
class JsjPiece:
    kind: PieceKind
    order: Optional[int] = None
    chirality: Optional[Chirality] = None

    def __post_init__(self):
        if self.kind is PieceKind.SEIFERT_ANNULUS:
            if self.order is None or self.order < 2:
                raise ValueError("an exceptional fibre has order >= 2")
        elif self.order is not None:
            raise ValueError(f"{self.kind.value} carries no order")
        if (self.kind is PieceKind.TREFOIL_COMPLEMENT) != (self.chirality is not None):
            raise ValueError("chirality belongs to trefoil complements only")

    def sort_key(self) -> tuple:
        return (self.kind.value, self.order or 0, self.chirality.value if self.chirality else "")

    def describe(self) -> str:
        return _DESCRIPTIONS[self.kind].format(
            order=self.order, chirality=self.chirality.value if self.chirality else "")

    def mirrored(self) -> JsjPiece:
        if self.chirality is None:
            return self
        return JsjPiece(self.kind, chirality=self.chirality.flipped())

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.order is not None:
            out["order"] = self.order
        if self.chirality is not None:
            out["chirality"] = self.chirality.value
        return out

    def short(self) -> str:
        if self.order is not None:
            return f"{self.kind.value}({self.order})"
        if self.chirality is not None:
            return f"{self.kind.value}({self.chirality.value})"
        return self.kind.value


@dataclass(frozen=True)
class JsjResult:
    params: PretzelParams
    case_label: str
    tori_count: int
    pieces: tuple
    trace: tuple = ()

    def __post_init__(self):
        if self.case_label not in CASE_LABELS:
            raise ValueError(f"unknown case {self.case_label}")
        if not self.pieces:
            raise ValueError("a JSJ decomposition has at least one piece")
        object.__setattr__(self, "pieces", tuple(sorted(self.pieces, key=JsjPiece.sort_key)))

    def piece_multiset(self) -> Counter:
        return Counter(self.pieces)


class UnknotError(ValueError):
    """The triple names the unknot, for which the question is vacuous."""


# ---------------------------------------------------------------------------
# the case machine

def _rotations(t: PretzelParams):
    yield t, ()
    t1 = cyclic_permute(t)
    yield t1, ("cyclic_permute",)
    yield cyclic_permute(t1), ("cyclic_permute", "cyclic_permute")


def _rotate_to_q(t: PretzelParams, value: int):
    for rot, trace in _rotations(t):
        if rot.q == value:
            return rot, trace
    return None, None


def _annulus_pieces(orders) -> list[JsjPiece]:
    return [JsjPiece(PieceKind.SEIFERT_ANNULUS, order=o) for o in orders if o >= 2]


def _family_orders(t: PretzelParams):
    """Fibre orders of the two annulus pieces when -1 or 0 is a parameter.

    With q rotated to -1 the orders are |p| and |r|; with q rotated to 0
    they are |p + 1| and |r + 1|.
    """
    rot, trace = _rotate_to_q(t, -1)
    if rot is not None:
        return (abs(rot.p), abs(rot.r)), trace + ("q=-1",)
    rot, trace = _rotate_to_q(t, 0)
    if rot is not None:
        return (abs(rot.p + 1), abs(rot.r + 1)), trace + ("q=0",)
    return None, None


def _is_one_fibre_family(t: PretzelParams) -> bool:
    # {-1, eps, k} or {0, eps - 1, k - 1}
    values = Counter(t)
    for distinguished, shift in ((-1, 0), (0, 1)):
        if values[distinguished]:
            rest = list((values - Counter([distinguished])).elements())
            if any(v + shift in (1, -1) for v in rest):
                return True
    return False


def classify(*args) -> JsjResult:
    """JSJ decomposition of the 0-surgery on P(2p+1, 2q+1, 2r+1)."""
    t = PretzelParams(*(args[0] if len(args) == 1 else args))
    values = set(t)
    ms = sorted(t)

    if {-1, 0} <= values:
        return JsjResult(t, "1.1.1", 0, (JsjPiece(PieceKind.S2_X_S1),))
    if is_trefoil(t):
        return JsjResult(t, "1.1.2", 0, (JsjPiece(PieceKind.TORUS_BUNDLE_PERIOD6),))
    if -1 in values or 0 in values:
        orders, trace = _family_orders(t)
        pieces = _annulus_pieces(orders)
        if _is_one_fibre_family(t):
            if not pieces:
                # figure-eight: |k| = 1, no exceptional fibre survives
                pieces = [JsjPiece(PieceKind.SEIFERT_ANNULUS_REGULAR)]
            return JsjResult(t, "1.1.3", 1, tuple(pieces), trace)
        return JsjResult(t, "1.1.4", 2, tuple(pieces), trace)
    if {-2, 1} <= values:
        return JsjResult(t, "1.1.5", 1, (JsjPiece(PieceKind.SEIFERT_ANNULUS, order=2),))
    if ms == [-2, 2, 2]:
        return JsjResult(t, "1.1.6", 2, (
            JsjPiece(PieceKind.SIGMA03_X_S1),
            JsjPiece(PieceKind.TREFOIL_COMPLEMENT, chirality=Chirality.LEFT)))
    if ms == [-3, -3, 1]:
        return JsjResult(t, "1.1.6", 2, (
            JsjPiece(PieceKind.SIGMA03_X_S1),
            JsjPiece(PieceKind.TREFOIL_COMPLEMENT, chirality=Chirality.RIGHT)))
    return JsjResult(t, "1.1.7", 1, (JsjPiece(PieceKind.HYPERBOLIC),))


def prop31_nonhyperbolic(p: int, q: int, r: int) -> bool:
    """Closed-form test: is the cut manifold non-hyperbolic?"""
    if is_unknot(p, q, r):
        raise UnknotError(f"({p}, {q}, {r}) is the unknot")
    values = {p, q, r}
    ms = sorted((p, q, r))
    return (-1 in values or 0 in values or {-2, 1} <= values
            or ms == [-2, 2, 2] or ms == [-3, -3, 1])


# ---------------------------------------------------------------------------
# filling-engine cross-check

def cut_manifold_tuple(p: int, q: int, r: int) -> FillingTuple:
    """The cut manifold as a filling (-r, 1/(q+1), -p, phi, phi) of L10n113."""
    return FillingTuple(LinkKind.CHAIN5,
                        (Fraction(-r), normalize(1, q + 1), Fraction(-p), PHI, PHI))


def reduced_tuples(p: int, q: int, r: int) -> Optional[FillingTuple]:
    """Smaller-link description available when r = 1, else None."""
    if r != 1:
        return None
    if p == 1:
        return FillingTuple(LinkKind.CHAIN3, (normalize(2 * q + 3, q + 1), PHI, PHI))
    if q == -3:
        return FillingTuple(LinkKind.CHAIN3, (Fraction(p + 3), PHI, PHI))
    if p == -3:
        return FillingTuple(LinkKind.CHAIN3, (PHI, PHI, Fraction(q + 3)))
    return FillingTuple(LinkKind.CHAIN4, (normalize(q + 2, q + 1), Fraction(-p), PHI, PHI))


def hyperbolic_oracle(p: int, q: int, r: int, budget: int = DEFAULT_BUDGET) -> Decision:
    return orbit_decide(cut_manifold_tuple(p, q, r), budget)


@dataclass
class CrossCheckReport:
    bound: int
    checked: int = 0
    unknots_skipped: int = 0
    mismatches: list = field(default_factory=list)
    undecided: list = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.undecided


def _check_one(args):
    triple, budget = args
    decision = hyperbolic_oracle(*triple, budget=budget)
    return triple, decision


def cross_check(bound: int, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> CrossCheckReport:
    """Compare the closed form with the orbit search on [-bound, bound]^3."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    report = CrossCheckReport(bound)
    work = []
    for triple in itertools.product(range(-bound, bound + 1), repeat=3):
        if is_unknot(*triple):
            report.unknots_skipped += 1
        else:
            work.append((triple, budget))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_one, work, chunksize=16))
    else:
        results = [_check_one(w) for w in work]
    for triple, decision in sorted(results, key=lambda item: item[0]):
        report.checked += 1
        report.verdicts[triple] = decision
        if isinstance(decision, Undecided):
            report.undecided.append(triple)
        elif isinstance(decision, Exceptional) != prop31_nonhyperbolic(*triple):
            report.mismatches.append(triple)
    return report
