import pytest
from hypothesis import given, strategies as st

from pretzeljsj import pretzel
from pretzeljsj.grouppres import (
    AbelianInvariants, Word, abelian_invariants, cut_manifold_presentation,
    exponent_sum_matrix, fox_alexander, fox_derivative, lin_presentation,
    peripheral_words, relabel_xpqr_to_cut, smith_normal_form, xpqr_presentation,
    zero_surgery_presentation,
)
from pretzeljsj.laurent import LaurentPoly
from pretzeljsj.selfcheck import determinantal_divisors

small = st.integers(-5, 5)


def test_lin_presentation_of_trefoil_parameters():
    P = lin_presentation(0, 0, 0)
    assert P.generators == ("a", "b", "t")
    assert [str(w) for w in P.relators] == ["t a b t^-1 a^-1", "t b t^-1 a^-1 b^-1"]


def test_peripheral_words():
    assert tuple(map(str, peripheral_words(0, 0, 0))) == ("a b", "b", "a", "b a")


def test_zero_surgery_can_kill_a_relator():
    P = zero_surgery_presentation(0, -1, 0)
    assert str(P.relators[-1]) == "1"
    assert abelian_invariants(P) == AbelianInvariants(1)


def test_exponent_sums():
    M = exponent_sum_matrix(lin_presentation(1, 2, 3))
    assert all(row[2] == 0 for row in M)


def test_relabel_matches_cut_manifold():
    for t in [(0, 0, 0), (1, 2, 3), (-3, 2, -1), (4, -4, 0)]:
        assert relabel_xpqr_to_cut(*t) == cut_manifold_presentation(*t).relators[0]


@pytest.mark.parametrize("build, rank", [
    (lin_presentation, 1), (zero_surgery_presentation, 1),
    (cut_manifold_presentation, 2), (xpqr_presentation, 2),
])
def test_first_homology(build, rank):
    for t in [(0, 0, 0), (1, 1, 1), (-2, 3, 5), (2, -1, 3)]:
        assert abelian_invariants(build(*t)) == AbelianInvariants(rank)


def test_snf_examples():
    assert smith_normal_form([[2, 4], [6, 8]]) == [2, 4]
    assert smith_normal_form([[1, 0], [0, 1]]) == [1, 1]
    assert smith_normal_form([[0, 0, 0]]) == [0]
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]


@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n),
                       min_size=m, max_size=m))))
def test_snf_matches_determinantal_divisors(M):
    snf = smith_normal_form(M)
    assert snf == determinantal_divisors(M)
    nonzero = [d for d in snf if d]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def test_word_reduction():
    w = Word.parse("a b b^-1 a^-1 t")
    assert str(w) == "t"
    assert Word.parse("a^3") == Word.gen("a") ** 3
    assert str(Word.parse("a a a b^-1 b^-1")) == "a^3 b^-2"


words = st.lists(st.tuples(st.sampled_from("abt"), st.sampled_from([1, -1])), max_size=12).map(
    lambda xs: Word.parse(" ".join(g if e == 1 else f"{g}^-1" for g, e in xs)))


@given(words, words)
def test_word_group_laws(u, v):
    assert Word.parse(str(u)) == u
    assert u * u.inverse() == Word.parse("")
    assert (u * v).inverse() == v.inverse() * u.inverse()


@given(words, st.integers(0, 4))
def test_negative_powers(u, k):
    assert u ** -k == (u ** k).inverse()


def test_fox_derivative_examples():
    ab = {"a": 0, "b": 0, "t": 1}
    t = LaurentPoly.t()
    # d/dt (t a t^-1) = 1 - t a t^-1 t^-1 -> 1 - 1 under a -> 1
    assert fox_derivative(Word.parse("t a t^-1"), "t", ab) == LaurentPoly.const(0)
    assert fox_derivative(Word.parse("t a t^-1"), "a", ab) == t


@given(small, small, small)
def test_fox_agrees_with_closed_form(p, q, r):
    fox = fox_alexander(lin_presentation(p, q, r))
    assert fox.equal_up_to_units(pretzel.alexander(p, q, r))
