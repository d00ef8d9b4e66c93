import pytest
from hypothesis import given, strategies as st

from engelkit.errors import SeriesError
from engelkit.services.magnus import (
    LcsPlacement,
    ReducedSeries,
    TruncSeries,
    coefficient,
    delete_repeated,
    expand,
    lcs_degree,
    reduced_expand,
    series_inverse,
    series_mul,
)
from engelkit.services.words import Word, commutator, conjugate, invert, left_normed, multiply


def gen(i: int, sign: int = 1) -> Word:
    return Word.generator(i, sign)


words = st.lists(st.tuples(st.integers(1, 3), st.sampled_from((1, -1))), max_size=8).map(Word)


class TestExpand:
    """Tests for truncated Magnus expansions."""

    def test_generator(self):
        assert expand(gen(1), 3).terms == {(): 1, (1,): 1}

    def test_inverse_generator(self):
        assert expand(gen(1, -1), 3).terms == {(): 1, (1,): -1, (1, 1): 1, (1, 1, 1): -1}

    def test_identity_is_one(self):
        assert expand(Word.identity(), 4).is_one

    def test_commutator_starts_in_degree_two(self):
        series = expand(commutator(gen(1), gen(2)), 2)
        assert series.terms == {(): 1, (1, 2): 1, (2, 1): -1}

    def test_exclude_maps_to_one(self):
        assert expand(commutator(gen(1), gen(2)), 3, exclude=[2]).is_one

    def test_degree_must_be_positive(self):
        with pytest.raises(SeriesError):
            expand(gen(1), 0)

    @given(words, words)
    def test_homomorphism(self, u, v):
        assert expand(multiply(u, v), 4) == series_mul(expand(u, 4), expand(v, 4))

    @given(words)
    def test_inverse_law(self, u):
        assert expand(invert(u), 4) == series_inverse(expand(u, 4))


class TestSeriesArithmetic:
    """Tests for series operations and their guards."""

    def test_non_unit_has_no_inverse(self):
        with pytest.raises(SeriesError):
            series_inverse(TruncSeries(3, {(): 2}))

    def test_mixing_degrees_fails(self):
        with pytest.raises(SeriesError):
            series_mul(TruncSeries.one(3), TruncSeries.one(4))

    def test_mixing_kinds_fails(self):
        with pytest.raises(SeriesError):
            TruncSeries.one(3) + ReducedSeries.one(3)

    def test_to_text(self):
        assert expand(commutator(gen(1), gen(2)), 2).to_text() == "1 + X1X2 - X2X1"

    def test_to_model(self):
        dump = expand(gen(2), 2).to_model()
        assert dump.D == 2
        assert dump.reduced is False
        assert [term.mono for term in dump.terms] == [[], [2]]


class TestReducedExpand:
    """Tests for the distinct-index expansion."""

    def test_repeated_index_commutator_vanishes(self):
        w = commutator(gen(1), conjugate(gen(1), gen(2)))
        assert reduced_expand(w, 2).is_one

    def test_relator_death_coefficient(self):
        w = commutator(commutator(gen(1), gen(2)), commutator(gen(3), gen(4)))
        assert coefficient(reduced_expand(w, 4), (1, 2, 3, 4)) == 1

    def test_matches_delete_repeated(self):
        w = left_normed([gen(1), gen(2, -1), gen(3)])
        assert reduced_expand(w, 3) == delete_repeated(expand(w, 3), 3)

    def test_generator_outside_n(self):
        with pytest.raises(SeriesError):
            reduced_expand(gen(3), 2)

    @given(words, words)
    def test_homomorphism(self, u, v):
        assert reduced_expand(multiply(u, v), 3) == series_mul(reduced_expand(u, 3), reduced_expand(v, 3))


class TestLcsDegree:
    """Tests for lower-central placement."""

    def test_generator(self):
        assert lcs_degree(gen(1), 2, 4) == LcsPlacement(1, True)

    def test_commutator(self):
        assert lcs_degree(commutator(gen(1), gen(2)), 2, 4) == LcsPlacement(2, True)

    def test_beyond_cap_is_a_lower_bound(self):
        placement = lcs_degree(left_normed([gen(1), gen(2), gen(1), gen(2)]), 2, 3)
        assert placement == LcsPlacement(4, False)
        assert str(placement) == ">=4"

    def test_identity(self):
        assert lcs_degree(Word.identity(), 1, 2) == LcsPlacement(3, False)
