import random

import pytest
from hypothesis import given, settings, strategies as st

from engelkit.errors import DecompositionError
from engelkit.services.decomp import (
    ElementaryCommutator,
    GenusProfile,
    attach_curve_handles,
    attach_curve_word,
    commutator_pieces,
    correction_check,
    decomposition_service,
    elementary_commutators,
    meridian_context,
    parse_profile,
    product_word,
    profiles_with_meridians,
    top_degree_image,
)
from engelkit.services.magnus import lcs_degree
from engelkit.services.parser import parse_word
from engelkit.services.words import Word, commutator, conjugate, invert, multiply, product


def m(i: int) -> Word:
    return Word.generator(i)


GAMMA = commutator(commutator(m(1), m(2)), commutator(m(3), m(4)))


class TestElementaryCommutators:
    """Tests for the enumeration of elementary Engel commutators."""

    def test_count_and_distinct_words(self):
        found = elementary_commutators(4)
        assert len(found) == 120
        assert len({c.word() for c in found}) == 120

    def test_figure_patterns_present(self):
        found = set(elementary_commutators(4))
        assert ElementaryCommutator(((1,), (2, 3), (2, 3), (4,))) in found
        assert ElementaryCommutator(((2, 3), (1,), (2, 3), (4,))) in found

    def test_shape(self):
        for c in elementary_commutators(4):
            products = [slot for slot in c.slots if len(slot) == 2]
            assert len(products) == 2 and products[0] == products[1]
            assert c.support == (1, 2, 3, 4)

    def test_words_lie_in_fourth_term(self):
        for c in elementary_commutators(4)[:30]:
            assert not lcs_degree(c.word(), 4, 3).exact

    def test_blocks_for_five_generators(self):
        assert len(elementary_commutators(5)) == 5 * 120

    def test_needs_four_generators(self):
        with pytest.raises(DecompositionError):
            elementary_commutators(3)

    def test_top_degree_linearity(self):
        rng = random.Random(11)
        found = elementary_commutators(4)
        for _ in range(5):
            picks = [(rng.choice(found), rng.choice((-2, -1, 1, 2))) for _ in range(3)]
            total: dict = {}
            for c, e in picks:
                for mono, coef in top_degree_image(c.word(), 4).items():
                    total[mono] = total.get(mono, 0) + e * coef
            expected = {mono: coef for mono, coef in total.items() if coef}
            assert top_degree_image(product_word(picks), 4) == expected


class TestProfiles:
    """Tests for grope attaching curves."""

    def test_parse(self):
        assert parse_profile("(2;1,1,1,1)") == GenusProfile(2, (1, 1, 1, 1))
        assert parse_profile("1;1,1") == GenusProfile(1, (1, 1))

    def test_genus_one(self):
        word, n = attach_curve_word(GenusProfile(1, (1, 1)))
        assert word == GAMMA
        assert n == 4

    def test_genus_two(self):
        word, n = attach_curve_word(GenusProfile(2, (1, 1, 1, 1)))
        assert n == 8
        assert lcs_degree(word, n, 4).degree == 4

    @pytest.mark.parametrize("text", ["", "(1)", "(a;1,1)"])
    def test_unreadable(self, text):
        with pytest.raises(DecompositionError):
            parse_profile(text)

    def test_wrong_second_stage_count(self):
        with pytest.raises(DecompositionError):
            attach_curve_word(GenusProfile(1, (1,)))

    def test_meridian_limit(self):
        with pytest.raises(DecompositionError):
            attach_curve_word(GenusProfile(2, (2, 1, 1, 1)))

    def test_profiles_with_meridians(self):
        assert profiles_with_meridians(4) == [GenusProfile(1, (1, 1))]
        assert profiles_with_meridians(6) == [GenusProfile(1, (1, 2)), GenusProfile(1, (2, 1))]
        assert GenusProfile(2, (1, 1, 1, 1)) in profiles_with_meridians(8)
        assert profiles_with_meridians(5) == []

    def test_handles_multiply_to_the_attaching_curve(self):
        profile = GenusProfile(1, (2, 2))
        handles, n = attach_curve_handles(profile)
        word, _ = attach_curve_word(profile)
        assert product(commutator(product(a), product(b)) for a, b in handles) == word
        assert n == 8

    def test_commutator_pieces_multiply_back(self):
        (a, b), = attach_curve_handles(GenusProfile(1, (2, 2)))[0]
        pieces = commutator_pieces(a, b)
        assert len(pieces) == 4
        rebuilt = product(conjugate(commutator(u, v), invert(g)) for g, u, v in pieces)
        assert rebuilt == commutator(product(a), product(b))


class TestDecomposition:
    """Tests for decompose_gamma and the correction check."""

    def test_commutator_of_commutators(self):
        certificate = decomposition_service.decompose_gamma(GAMMA, 4)
        assert certificate.verified
        assert certificate.correction_trivial_in_mf
        assert certificate.terms
        terms = [(ElementaryCommutator(tuple(tuple(s) for s in t.slots)), t.exp) for t in certificate.terms]
        assert correction_check(GAMMA, product_word(terms), 4)

    def test_single_elementary_commutator(self):
        c = ElementaryCommutator(((1,), (2, 3), (2, 3), (4,)))
        certificate = decomposition_service.decompose_gamma(c.word(), 4)
        assert len(certificate.terms) == 1
        assert certificate.terms[0].exp == 1
        assert certificate.correction_word == "1"

    def test_empty_word(self):
        certificate = decomposition_service.decompose_gamma(Word.identity(), 4)
        assert certificate.terms == []
        assert certificate.correction_word == "1"

    def test_genus_two_profile(self):
        word, n = attach_curve_word(GenusProfile(2, (1, 1, 1, 1)))
        certificate = decomposition_service.decompose_gamma(word, n)
        assert certificate.verified
        for term in certificate.terms:
            support = {g for slot in term.slots for g in slot}
            assert support <= {1, 2, 3, 4} or support <= {5, 6, 7, 8}

    def test_word_outside_fourth_term(self):
        with pytest.raises(DecompositionError):
            decomposition_service.decompose_gamma(commutator(m(1), m(2)), 4)

    def test_needs_four_meridians(self):
        with pytest.raises(DecompositionError):
            decomposition_service.decompose_gamma(Word.identity(), 3)

    def test_correction_check(self):
        assert correction_check(GAMMA, GAMMA, 4)
        assert not correction_check(GAMMA, Word.identity(), 4)

    @pytest.mark.parametrize("second", [(2, 1), (1, 2), (2, 2), (3, 1)])
    def test_higher_second_stage_genus(self, second):
        word, n = attach_curve_word(GenusProfile(1, second))
        certificate = decomposition_service.decompose_gamma(word, n)
        assert certificate.verified
        assert certificate.correction_trivial_in_mf
        assert any(term.conjugator != "1" for term in certificate.terms)
        ctx = meridian_context(n)
        terms = [
            (ElementaryCommutator(tuple(tuple(s) for s in t.slots)), t.exp, parse_word(t.conjugator, ctx))
            for t in certificate.terms
        ]
        assert correction_check(word, product_word(terms), n)

    def test_unrecognized_word_with_higher_content(self):
        word, _ = attach_curve_word(GenusProfile(1, (2, 1)))
        with pytest.raises(DecompositionError):
            decomposition_service.decompose_gamma(multiply(word, GAMMA), 6)

    @settings(max_examples=10, deadline=None)
    @given(st.permutations(elementary_commutators(4)))
    def test_stable_under_candidate_order(self, candidates):
        certificate = decomposition_service.decompose_gamma(GAMMA, 4, candidates=candidates)
        assert certificate.verified
        terms = [(ElementaryCommutator(tuple(tuple(s) for s in t.slots)), t.exp) for t in certificate.terms]
        assert correction_check(GAMMA, product_word(terms), 4)
