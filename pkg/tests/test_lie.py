import pytest

from engelkit.errors import EngelError
from engelkit.services.lie import (
    bracket,
    from_coordinates,
    is_lyndon,
    lie_coordinates,
    lyndon_bracket_text,
    lyndon_polynomial,
    lyndon_words,
    standard_factorization,
)


class TestLyndonWords:
    """Tests for the Lyndon basis."""

    @pytest.mark.parametrize(
        "n, degree, count",
        [(2, 1, 2), (2, 2, 1), (2, 3, 2), (2, 4, 3), (3, 3, 8), (3, 4, 18), (4, 4, 60)],
    )
    def test_witt_counts(self, n, degree, count):
        assert len(lyndon_words(n, degree)) == count

    def test_order_and_shape(self):
        words = lyndon_words(2, 3)
        assert words == ((1, 1, 2), (1, 2, 2))
        assert all(is_lyndon(w) for w in words)

    def test_standard_factorization(self):
        assert standard_factorization((1, 1, 2)) == ((1,), (1, 2))
        assert lyndon_bracket_text((1, 1, 2)) == "[1,[1,2]]"

    def test_leading_monomial(self):
        for word in lyndon_words(3, 4):
            poly = lyndon_polynomial(word)
            assert min(poly) == word
            assert poly[word] == 1


class TestLieCoordinates:
    """Tests for triangular elimination into Lyndon coordinates."""

    def test_bracket_of_generators(self):
        poly = bracket({(1,): 1}, {(2,): 1})
        assert lie_coordinates(poly, 2, 2) == [1]
        assert lie_coordinates(bracket({(2,): 1}, {(1,): 1}), 2, 2) == [-1]

    def test_round_trip_on_basis_combination(self):
        coords = [3, 0, -2, 1, 0, 0, 5, 0]
        assert lie_coordinates(from_coordinates(coords, 3, 3), 3, 3) == coords

    def test_jacobi_identity(self):
        x, y, z = {(1,): 1}, {(2,): 1}, {(3,): 1}
        total = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for mono, coef in bracket(a, bracket(b, c)).items():
                total[mono] = total.get(mono, 0) + coef
        assert lie_coordinates(total, 3, 3) == [0] * 8

    def test_non_lie_element(self):
        with pytest.raises(EngelError):
            lie_coordinates({(1, 2): 1}, 2, 2)

    def test_wrong_degree(self):
        with pytest.raises(EngelError):
            lie_coordinates({(1, 2, 1): 1}, 2, 2)
