import pytest
from hypothesis import given, strategies as st

from engelkit.errors import UnknownGeneratorError
from engelkit.services.milnor import MilnorContext, equal_mf, is_trivial_mf, milnor_class_probe
from engelkit.services.words import Word, commutator, conjugate, invert, left_normed, multiply


def m(i: int) -> Word:
    return Word.generator(i)


class TestWordProblem:
    """Tests for triviality and equality in the free Milnor group."""

    def test_generator_commutes_with_its_conjugate(self):
        assert is_trivial_mf(commutator(m(1), conjugate(m(1), m(2))), 2)

    def test_distinct_commutator_survives(self):
        assert not is_trivial_mf(commutator(m(1), m(2)), 2)

    def test_repeated_index_commutator_dies(self):
        assert is_trivial_mf(left_normed([m(1), m(2), m(2)]), 2)

    def test_free_nontrivial_yet_milnor_trivial(self):
        w = left_normed([m(1), m(2), m(2), m(3)])
        assert not w.is_identity
        assert is_trivial_mf(w, 3)

    def test_equality_modulo_conjugation_by_own_meridian_class(self):
        u = multiply(m(1), m(2))
        v = multiply(m(2), m(1))
        assert not equal_mf(u, v, 2)
        assert equal_mf(u, multiply(u, left_normed([m(1), m(2), m(1)])), 2)

    def test_generator_outside_context(self):
        with pytest.raises(UnknownGeneratorError):
            is_trivial_mf(m(3), 2)

    def test_context_needs_a_generator(self):
        with pytest.raises(UnknownGeneratorError):
            MilnorContext.standard(0)


letters = st.lists(st.tuples(st.integers(1, 3), st.sampled_from((1, -1))), max_size=8)


class TestConjugationInvariance:
    """Property tests: Milnor triviality and equality survive conjugation."""

    @given(letters, letters)
    def test_triviality_under_conjugation(self, raw, by):
        w, g = Word(raw), Word(by)
        assert is_trivial_mf(conjugate(w, g), 3) == is_trivial_mf(w, 3)

    @given(letters, letters)
    def test_commutator_with_conjugate_is_trivial(self, raw, by):
        w, g = Word(raw), Word(by)
        relator = commutator(conjugate(m(1), g), conjugate(m(1), w))
        assert is_trivial_mf(relator, 3)
        assert is_trivial_mf(multiply(w, relator), 3) == is_trivial_mf(w, 3)

    @given(letters, letters, letters)
    def test_equality_under_conjugation(self, left, right, by):
        u, v, g = Word(left), Word(right), Word(by)
        assert equal_mf(conjugate(u, g), conjugate(v, g), 3) == equal_mf(u, v, 3)
        assert equal_mf(u, v, 3) == is_trivial_mf(multiply(u, invert(v)), 3)


class TestClassProbe:
    """Tests for the nilpotency-class probe."""

    @pytest.mark.parametrize("n", [2, 3])
    def test_exhaustive_probe(self, n):
        report = milnor_class_probe(n)
        assert report.exhaustive
        assert report.checked == n ** (n + 1)
        assert report.witness_coefficient == 1
        assert report.passed

    def test_sampled_probe(self):
        report = milnor_class_probe(4, samples=20, seed=1)
        assert not report.exhaustive
        assert report.checked == 20
        assert report.passed
        assert report.witness == "[m1,m2,m3,m4]"
