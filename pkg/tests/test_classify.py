import itertools
from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from pretzeljsj import pretzel
from pretzeljsj.chainfill import Exceptional, FillingTuple, Hyperbolic, LinkKind, orbit_decide
from pretzeljsj.classify import (
    CASE_LABELS, Chirality, JsjPiece, PieceKind, UnknotError, classify, cross_check,
    cut_manifold_tuple, hyperbolic_oracle, prop31_nonhyperbolic, reduced_tuples,
)
from pretzeljsj.extrat import PHI
from pretzeljsj.selfcheck import SPOT_VALUES

params = st.integers(-15, 15)


@pytest.mark.parametrize("triple, case, tori, pieces", SPOT_VALUES)
def test_spot_values(triple, case, tori, pieces):
    res = classify(*triple)
    assert res.case_label == case
    assert res.tori_count == tori
    assert sorted(p.short() for p in res.pieces) == sorted(pieces)


def test_trefoil_parameters_give_torus_bundle():
    res = classify(0, 0, 0)
    assert (res.case_label, res.tori_count) == ("1.1.2", 0)
    assert res.pieces == (JsjPiece(PieceKind.TORUS_BUNDLE_PERIOD6),)


def test_accepts_tuple_or_three_ints():
    assert classify((2, -1, 3)) == classify(2, -1, 3)


def test_piece_validation():
    with pytest.raises(ValueError):
        JsjPiece(PieceKind.SEIFERT_ANNULUS)
    with pytest.raises(ValueError):
        JsjPiece(PieceKind.TREFOIL_COMPLEMENT, order=3)
    assert JsjPiece(PieceKind.TREFOIL_COMPLEMENT, chirality=Chirality.LEFT).mirrored().chirality \
        is Chirality.RIGHT


def _sig(res):
    return res.case_label, res.tori_count, Counter(res.pieces)


@given(params, params, params)
def test_total_and_consistent(p, q, r):
    res = classify(p, q, r)
    assert res.case_label in CASE_LABELS
    assert res.pieces and 0 <= res.tori_count <= 2
    assert len(res.pieces) <= res.tori_count + 1
    is_hyp = [x.kind is PieceKind.HYPERBOLIC for x in res.pieces]
    assert any(is_hyp) == (res.case_label == "1.1.7")


@given(params, params, params)
def test_cyclic_invariance(p, q, r):
    base = _sig(classify(p, q, r))
    assert _sig(classify(pretzel.cyclic_permute(p, q, r))) == base


@given(params, params, params)
def test_mirror_flips_chirality_only(p, q, r):
    res = classify(p, q, r)
    m = classify(pretzel.mirror(p, q, r))
    assert _sig(m) == (res.case_label, res.tori_count, Counter(x.mirrored() for x in res.pieces))


@given(params, params, params)
def test_hyperbolic_case_matches_closed_form(p, q, r):
    if pretzel.is_unknot(p, q, r):
        return
    assert (classify(p, q, r).case_label == "1.1.7") == (not prop31_nonhyperbolic(p, q, r))


def test_prop31_examples():
    assert prop31_nonhyperbolic(2, 2, -1)
    assert prop31_nonhyperbolic(0, 0, 0)
    assert not prop31_nonhyperbolic(1, 1, 1)
    assert not prop31_nonhyperbolic(2, 2, 2)
    with pytest.raises(UnknotError):
        prop31_nonhyperbolic(-1, 0, 4)


def test_cut_manifold_tuple():
    assert cut_manifold_tuple(2, 2, 2) == FillingTuple.of(LinkKind.CHAIN5, -2, F(1, 3), -2, PHI, PHI)
    assert cut_manifold_tuple(5, 5, 1) == FillingTuple.of(LinkKind.CHAIN5, -1, F(1, 6), -5, PHI, PHI)


@pytest.mark.parametrize("triple, expected", [
    ((5, 5, 1), FillingTuple.of(LinkKind.CHAIN4, F(7, 6), -5, PHI, PHI)),
    ((1, 5, 1), FillingTuple.of(LinkKind.CHAIN3, F(13, 6), PHI, PHI)),
    ((5, -3, 1), FillingTuple.of(LinkKind.CHAIN3, 8, PHI, PHI)),
    ((2, 2, 2), None),
])
def test_reduced_tuples(triple, expected):
    assert reduced_tuples(*triple) == expected


def test_reduced_tuples_agree_with_closed_form():
    for p, q in itertools.product(range(-6, 7), repeat=2):
        if pretzel.is_unknot(p, q, 1):
            continue
        d = orbit_decide(reduced_tuples(p, q, 1))
        assert isinstance(d, (Exceptional, Hyperbolic)), (p, q)
        assert isinstance(d, Exceptional) == prop31_nonhyperbolic(p, q, 1), (p, q)


def test_oracle_examples():
    assert isinstance(hyperbolic_oracle(2, 2, 2), Hyperbolic)
    assert hyperbolic_oracle(2, 2, 2).orbit_size == 4
    assert isinstance(hyperbolic_oracle(2, -1, 3), Exceptional)
    assert hyperbolic_oracle(2, -1, 3).witness == ()
    assert isinstance(hyperbolic_oracle(2, 2, -1), Exceptional)


def test_cross_check_small():
    rep = cross_check(2)
    assert rep.ok
    assert rep.checked + rep.unknots_skipped == 125
    assert not rep.mismatches and not rep.undecided


@settings(deadline=None, max_examples=1)
@given(st.just(2))
def test_cross_check_parallel_matches_serial(bound):
    serial, parallel = cross_check(bound), cross_check(bound, jobs=2)
    assert {t: d.verdict for t, d in serial.verdicts.items()} == \
        {t: d.verdict for t, d in parallel.verdicts.items()}
