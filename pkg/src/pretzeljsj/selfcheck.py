"""End-to-end verification runs.

Each ``check_*`` function returns a :class:`CheckResult`; the CLI's
``selfcheck`` subcommand and ``tests/test_acceptance.py`` both run them.
All comparisons are exact.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import chainfill, extrat, grouppres, pretzel
from .chainfill import DEFAULT_BUDGET, FillingTuple, LinkKind, Undecided
from .classify import classify, cross_check, hyperbolic_oracle, prop31_nonhyperbolic
from .extrat import INF, PHI

DEFAULT_RANGES = {
    "oracle": 4,
    "remark": 20,
    "dormancy": 6,
    "polynomials": 10,
    "fox": 6,
    "homology": 6,
    "classification": 10,
}


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    undecided: int = 0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.name}: {self.detail}"


def _cube(bound):
    return itertools.product(range(-bound, bound + 1), repeat=3)


def check_oracle_equivalence(bound=4, budget=DEFAULT_BUDGET, jobs=1) -> CheckResult:
    rep = cross_check(bound, budget, jobs)
    detail = (f"{rep.checked} triples in [-{bound},{bound}]^3, "
              f"{len(rep.mismatches)} mismatches, {len(rep.undecided)} undecided, "
              f"{rep.unknots_skipped} unknots skipped")
    return CheckResult("oracle equivalence", rep.ok, detail, len(rep.undecided),
                       rep.mismatches + rep.undecided)


def remark_slopes(bound=20):
    """All reduced a/b with |a|, |b| <= bound, plus inf."""
    slopes = {INF}
    for a in range(-bound, bound + 1):
        for b in range(1, bound + 1):
            if gcd(a, b) == 1:
                slopes.add(Fraction(a, b))
    return sorted(slopes, key=extrat.sort_key)


def check_one_filling_3chain(bound=20, budget=DEFAULT_BUDGET) -> CheckResult:
    failures, undecided = [], 0
    slopes = remark_slopes(bound)
    for a in slopes:
        d = chainfill.orbit_decide(FillingTuple(LinkKind.CHAIN3, (a, PHI, PHI)), budget)
        if isinstance(d, Undecided):
            undecided += 1
            failures.append(a)
        elif isinstance(d, chainfill.Exceptional) != chainfill.one_filling_3chain_exceptional(a):
            failures.append(a)
    exceptional = sorted((a for a in slopes if chainfill.one_filling_3chain_exceptional(a)),
                         key=extrat.sort_key)
    detail = (f"{len(slopes)} slopes, exceptional set "
              f"{{{', '.join(extrat.format_slope(a) for a in exceptional)}}}, "
              f"{len(failures)} disagreements")
    return CheckResult("3-chain one-cusp fillings", not failures, detail, undecided, failures)


def check_orbit_tables() -> CheckResult:
    F = Fraction
    expected = [
        ("5-chain orbit of -1", F(-1), extrat.CHAIN5_MAPS, {F(-1), F(1, 2), F(2)}),
        ("5-chain orbit of inf", INF, extrat.CHAIN5_MAPS, {F(0), F(1), INF}),
        ("4-chain orbit of -1", F(-1), extrat.CHAIN4_MAPS, {F(-1), F(1, 2), F(3, 2), F(3)}),
        ("4-chain orbit of 0", F(0), extrat.CHAIN4_MAPS, {F(0), F(2)}),
        ("4-chain orbit of inf", INF, extrat.CHAIN4_MAPS, {F(1), INF}),
    ]
    failures = [name for name, x, maps, want in expected
                if set(extrat.anharmonic_orbit(x, maps)) != want]
    return CheckResult("orbit tables", not failures,
                       f"{len(expected) - len(failures)}/{len(expected)} orbits exact", 0, failures)


def _avoids_small(t):
    return not ({-2, -1, 0, 1} & set(t))


def check_guard_dormancy(bound=6, budget=DEFAULT_BUDGET) -> CheckResult:
    failures, undecided, n = [], 0, 0
    for t in _cube(bound):
        if not _avoids_small(t):
            continue
        n += 1
        d = hyperbolic_oracle(*t, budget=budget)
        if isinstance(d, Undecided):
            undecided += 1
        if d.guard_hits or not isinstance(d, chainfill.Hyperbolic):
            failures.append(t)
    detail = f"{n} triples avoiding -2,-1,0,1; {len(failures)} with guarded moves or non-hyperbolic"
    return CheckResult("guard dormancy", not failures, detail, undecided, failures)


def check_polynomials(bound=10, fox_bound=6) -> CheckResult:
    failures = []
    for t in _cube(bound):
        a = pretzel.alexander(*t)
        if not a.is_symmetric() or a(1) != 1:
            failures.append(("alexander", t))
        try:
            j = pretzel.jones(*t)
        except ArithmeticError:
            failures.append(("jones division", t))
            continue
        if (j == 1) != pretzel.is_unknot(*t):
            failures.append(("jones unknot", t))
    for t in _cube(fox_bound):
        fox = grouppres.fox_alexander(grouppres.lin_presentation(*t))
        if not fox.equal_up_to_units(pretzel.alexander(*t)):
            failures.append(("fox", t))
    detail = f"[-{bound},{bound}]^3 closed forms, [-{fox_bound},{fox_bound}]^3 Fox; {len(failures)} failures"
    return CheckResult("polynomial identities", not failures, detail, 0, failures)


def _int_det(M):
    """Determinant by fraction-free Gaussian elimination (Bareiss)."""
    A = [list(row) for row in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def determinantal_divisors(M):
    """d_k = gcd of all k x k minors; SNF entries are d_k / d_{k-1}."""
    m, n = len(M), len(M[0])
    out = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, _int_det([[M[i][j] for j in cols] for i in rows]))
        if g == 0:
            out.extend([0] * (min(m, n) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


def check_homology(bound=6, samples=200, seed=20261018) -> CheckResult:
    failures = []
    z1, z2 = grouppres.AbelianInvariants(1), grouppres.AbelianInvariants(2)
    for t in _cube(bound):
        for build, want in ((grouppres.lin_presentation, z1),
                            (grouppres.zero_surgery_presentation, z1),
                            (grouppres.cut_manifold_presentation, z2),
                            (grouppres.xpqr_presentation, z2)):
            if grouppres.abelian_invariants(build(*t)) != want:
                failures.append((build.__name__, t))
    rng = random.Random(seed)
    for _ in range(samples):
        m, n = rng.randint(1, 4), rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        if grouppres.smith_normal_form(M) != determinantal_divisors(M):
            failures.append(("snf", M))
    detail = f"[-{bound},{bound}]^3 presentations + {samples} random SNF; {len(failures)} failures"
    return CheckResult("homology", not failures, detail, 0, failures)


def _signature(res):
    return res.case_label, res.tori_count, Counter(res.pieces)


def check_classification(bound=10) -> CheckResult:
    failures = []
    counts = Counter()
    for t in _cube(bound):
        res = classify(*t)
        counts[res.case_label] += 1
        sig = _signature(res)
        rot = pretzel.cyclic_permute(*t)
        if _signature(classify(rot)) != sig or _signature(classify(pretzel.cyclic_permute(rot))) != sig:
            failures.append(("cyclic", t))
        mres = classify(pretzel.mirror(*t))
        expected = (res.case_label, res.tori_count, Counter(p.mirrored() for p in res.pieces))
        if _signature(mres) != expected:
            failures.append(("mirror", t))
        if not pretzel.is_unknot(*t):
            if (res.case_label == "1.1.7") == prop31_nonhyperbolic(*t):
                failures.append(("prop31", t))
    total = sum(counts.values())
    if total != (2 * bound + 1) ** 3:
        failures.append(("totality", total))
    detail = f"{total} triples, cases {dict(sorted(counts.items()))}, {len(failures)} failures"
    return CheckResult("classification totality/symmetry", not failures, detail, 0, failures)


SPOT_VALUES = [
    ((-1, 0, 9), "1.1.1", 0, ["s2_x_s1"]),
    ((-1, 1, 5), "1.1.3", 1, ["seifert_annulus(5)"]),
    ((2, -1, 3), "1.1.4", 2, ["seifert_annulus(2)", "seifert_annulus(3)"]),
    ((-2, 1, 7), "1.1.5", 1, ["seifert_annulus(2)"]),
    ((2, -2, 2), "1.1.6", 2, ["sigma03_x_s1", "trefoil_complement(left)"]),
    ((1, 1, 1), "1.1.7", 1, ["hyperbolic"]),
    # the remaining special pieces named by the classification
    ((-3, -3, 1), "1.1.6", 2, ["sigma03_x_s1", "trefoil_complement(right)"]),
    ((3, 0, 4), "1.1.4", 2, ["seifert_annulus(4)", "seifert_annulus(5)"]),
]


def check_spot_values() -> CheckResult:
    failures = []
    for t, case, tori, pieces in SPOT_VALUES:
        res = classify(*t)
        got = (res.case_label, res.tori_count, sorted(p.short() for p in res.pieces))
        if got != (case, tori, sorted(pieces)):
            failures.append((t, got))
    return CheckResult("classification spot values", not failures,
                       f"{len(SPOT_VALUES) - len(failures)}/{len(SPOT_VALUES)} exact", 0, failures)


def run_all(range_override=None, budget=DEFAULT_BUDGET, jobs=1):
    """Run every check; ``range_override`` replaces every scan bound."""
    r = dict(DEFAULT_RANGES)
    if range_override is not None:
        r = {k: range_override for k in r}
    return [
        check_oracle_equivalence(r["oracle"], budget, jobs),
        check_one_filling_3chain(r["remark"], budget),
        check_orbit_tables(),
        check_guard_dormancy(r["dormancy"], budget),
        check_polynomials(r["polynomials"], r["fox"]),
        check_homology(r["homology"]),
        check_classification(r["classification"]),
        check_spot_values(),
    ]
