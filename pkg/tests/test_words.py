import random

import pytest
from hypothesis import given, strategies as st

from engelkit.errors import UnknownGeneratorError, WordSyntaxError
from engelkit.services.parser import parse_with_context, parse_word
from engelkit.services.words import (
    GeneratorContext,
    Word,
    commutator,
    conjugate,
    delete_generators,
    exponent_sum,
    infer_context,
    invert,
    left_normed,
    multiply,
    random_word,
    reduced_words,
    substitute,
)

X = GeneratorContext.standard("x", 4)


def gen(i: int, sign: int = 1) -> Word:
    return Word.generator(i, sign)


letters = st.lists(st.tuples(st.integers(1, 3), st.sampled_from((1, -1))), max_size=12)


class TestWordBasics:
    """Tests for free reduction and the group operations."""

    def test_free_reduction(self):
        assert Word([(1, 1), (2, 1), (2, -1), (1, -1)]).is_identity
        assert Word([(1, 1), (1, 1)]).letters == ((1, 1), (1, 1))

    def test_commutator_convention(self):
        assert commutator(gen(1), gen(2)).to_text(X) == "x1*x2*x1^-1*x2^-1"

    def test_conjugate_convention(self):
        assert conjugate(gen(1), gen(2)).to_text(X) == "x2^-1*x1*x2"

    def test_left_normed(self):
        a, b, c = gen(1), gen(2), gen(3)
        assert left_normed([a, b, c]) == commutator(commutator(a, b), c)

    def test_identity_prints_as_one(self):
        assert Word.identity().to_text(X) == "1"

    def test_unknown_generator_id(self):
        with pytest.raises(UnknownGeneratorError):
            gen(9).to_text(X)

    def test_delete_generators(self):
        assert delete_generators(commutator(gen(1), gen(2)), [2]).is_identity

    def test_exponent_sum(self):
        w = multiply(gen(1), multiply(gen(2), gen(1)))
        assert exponent_sum(w, 1) == 2
        assert exponent_sum(commutator(gen(1), gen(2)), 1) == 0

    def test_reduced_words_count(self):
        # 2n (2n - 1)^(k - 1) reduced words of length k
        assert len(reduced_words(2, 3)) == 4 * 3 * 3
        assert len(reduced_words(2, 3, positive=True)) == 8

    def test_random_word_is_reduced(self):
        rng = random.Random(3)
        w = random_word(3, 20, rng)
        assert len(w) == 20
        assert Word(list(w.letters)) == w

    @given(letters)
    def test_inverse_cancels(self, raw):
        w = Word(raw)
        assert multiply(w, invert(w)).is_identity
        assert multiply(invert(w), w).is_identity

    @given(letters, letters)
    def test_substitute_is_a_homomorphism(self, left, right):
        u, v = Word(left), Word(right)
        mapping = {1: commutator(gen(2), gen(3)), 3: gen(1, -1)}
        assert substitute(multiply(u, v), mapping) == multiply(substitute(u, mapping), substitute(v, mapping))


class TestParser:
    """Tests for word expressions."""

    def test_parse_commutator(self):
        word, ctx = parse_with_context("[x1,x2]")
        assert word.to_text(ctx) == "x1*x2*x1^-1*x2^-1"

    def test_nested_and_spaces(self):
        word, ctx = parse_with_context("[m1, m1^m2]")
        assert word == commutator(gen(1), conjugate(gen(1), gen(2)))
        assert ctx.names == ("m1", "m2")

    def test_left_normed_brackets(self):
        word, _ = parse_with_context("[x1,x2,x3]")
        assert word == left_normed([gen(1), gen(2), gen(3)])

    def test_powers_and_products(self):
        ctx = GeneratorContext.standard("x", 2)
        assert parse_word("x1^2 * x2^-1", ctx) == Word([(1, 1), (1, 1), (2, -1)])
        assert parse_word("(x1*x2)^-1", ctx) == invert(multiply(gen(1), gen(2)))

    def test_identity_literal(self):
        assert parse_word("1", X).is_identity

    def test_indexed_names_pad_to_largest(self):
        _, ctx = parse_with_context("[m1,m3]")
        assert ctx.names == ("m1", "m2", "m3")

    def test_n_extends_indexed_context(self):
        _, ctx = parse_with_context("m1", 4)
        assert ctx.size == 4

    def test_plain_names_keep_order(self):
        _, ctx = parse_with_context("[x,y,y,w]")
        assert ctx.names == ("x", "y", "w")

    def test_index_above_n(self):
        with pytest.raises(UnknownGeneratorError):
            parse_with_context("[m1,m3]", 2)

    def test_too_many_names_for_n(self):
        with pytest.raises(UnknownGeneratorError):
            infer_context(["a", "b", "c"], 2)

    def test_unknown_name_in_fixed_context(self):
        with pytest.raises(UnknownGeneratorError):
            parse_word("y1", X)

    @pytest.mark.parametrize("text", ["[x1,", "x1 x2", "x1^", "[x1]", ")"])
    def test_syntax_errors_carry_position(self, text):
        with pytest.raises(WordSyntaxError) as info:
            parse_with_context(text)
        assert info.value.position >= 0
        assert "position" in str(info.value)


class TestWordLaws:
    """Property tests for printing, multiplication and free reduction."""

    @given(letters)
    def test_printed_form_parses_back(self, raw):
        w = Word(raw)
        assert parse_word(w.to_text(X), X) == w

    @given(letters, letters, letters)
    def test_multiplication_is_associative(self, a, b, c):
        u, v, w = Word(a), Word(b), Word(c)
        assert multiply(multiply(u, v), w) == multiply(u, multiply(v, w))

    @given(letters, st.integers(0, 12))
    def test_reduction_is_confluent(self, raw, cut):
        cut = min(cut, len(raw))
        whole = Word(raw)
        assert multiply(Word(raw[:cut]), Word(raw[cut:])) == whole
        assert Word(list(reversed([(g, -s) for g, s in raw]))) == invert(whole)
        assert Word(list(whole.letters)) == whole
