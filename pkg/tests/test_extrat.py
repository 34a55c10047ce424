from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pretzeljsj.extrat import (
    CHAIN4_MAPS, CHAIN5_MAPS, F1_5CHAIN, F2_5CHAIN, F3_5CHAIN, IDENTITY, INF, PHI,
    MoebiusMap, OrbitOverflow, anharmonic_orbit, format_slope, moebius_apply,
    normalize, parse_slope, slope_apply,
)


def test_normalize_examples():
    assert normalize(6, -4) == Fraction(-3, 2)
    assert normalize(6, -4).denominator == 2
    assert normalize(5, 0) is INF
    assert normalize(-5, 0) is INF
    z = normalize(0, 7)
    assert (z.numerator, z.denominator) == (0, 1)


def test_normalize_rejects_indeterminate():
    with pytest.raises(ValueError):
        normalize(0, 0)


def test_moebius_examples():
    assert moebius_apply(F1_5CHAIN, Fraction(0)) is INF
    assert moebius_apply(F3_5CHAIN, Fraction(-1)) == Fraction(1, 2)
    assert moebius_apply(F2_5CHAIN, INF) is INF
    assert moebius_apply(F1_5CHAIN, INF) == 0


def test_slope_apply_examples():
    assert slope_apply(F1_5CHAIN, PHI) is PHI
    assert slope_apply(F2_5CHAIN, Fraction(-1)) == 2
    assert slope_apply(IDENTITY, Fraction(5)) == 5


def test_singular_map_rejected():
    with pytest.raises(ValueError):
        MoebiusMap(1, 2, 2, 4)


def test_orbit_tables():
    F = Fraction
    assert anharmonic_orbit(F(-1), CHAIN5_MAPS) == {F(-1), F(1, 2), F(2)}
    assert anharmonic_orbit(INF, CHAIN5_MAPS) == {F(0), F(1), INF}
    assert anharmonic_orbit(F(-1), CHAIN4_MAPS) == {F(-1), F(1, 2), F(3, 2), F(3)}
    assert anharmonic_orbit(F(0), CHAIN4_MAPS) == {F(0), F(2)}
    assert anharmonic_orbit(INF, CHAIN4_MAPS) == {F(1), INF}


def test_orbit_overflow_is_signalled():
    shift = MoebiusMap(1, 1, 0, 1)
    with pytest.raises(OrbitOverflow) as info:
        anharmonic_orbit(Fraction(0), [shift], cap=50)
    assert info.value.cap == 50
    assert len(info.value.partial) == 51


def test_orbit_needs_maps():
    with pytest.raises(ValueError):
        anharmonic_orbit(Fraction(0), [])


@pytest.mark.parametrize("text, value", [
    ("3", Fraction(3)), ("-7/2", Fraction(-7, 2)), ("4/-6", Fraction(-2, 3)),
    ("inf", INF), ("phi", PHI), ("1/0", INF),
])
def test_parse_slope(text, value):
    assert parse_slope(text) == value
    if value is not PHI:
        assert parse_slope(format_slope(value)) == value


@pytest.mark.parametrize("text", ["", "x", "1/2/3", "0/0", "1.5"])
def test_parse_slope_rejects(text):
    with pytest.raises(ValueError):
        parse_slope(text)


# -- properties -----------------------------------------------------------------

ints = st.integers(-50, 50)
extrats = st.one_of(
    st.just(INF),
    st.builds(lambda n, d: Fraction(n, d), ints, st.integers(1, 50)),
)
maps = st.tuples(ints, ints, ints, ints).filter(
    lambda t: t[0] * t[3] - t[1] * t[2] != 0).map(lambda t: MoebiusMap(*t))


@given(maps, extrats)
def test_round_trip_through_inverse(m, x):
    assert moebius_apply(m.inverse(), moebius_apply(m, x)) == x


@given(maps, maps, extrats)
def test_composition_is_matrix_product(m1, m2, x):
    assert moebius_apply(m2, moebius_apply(m1, x)) == moebius_apply(m2 @ m1, x)


@given(ints, st.integers(-50, 50).filter(bool))
def test_normalize_idempotent(n, d):
    x = normalize(n, d)
    assert normalize(x.numerator, x.denominator) == x
    assert x.denominator > 0


@given(maps, st.integers(-5, 5).filter(bool))
def test_projective_equality(m, k):
    scaled = MoebiusMap(k * m.a, k * m.b, k * m.c, k * m.d)
    assert m.same_map(scaled)
    assert (m @ m.inverse()).same_map(IDENTITY)
