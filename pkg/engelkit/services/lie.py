"""Lyndon basis of the free Lie ring, used as the basic-commutator basis.

Each Lyndon word w of length >= 2 has the standard factorization w = u v with
v its longest proper Lyndon suffix, and bracket P_w = [P_u, P_v] realized as
the associative polynomial P_u P_v - P_v P_u. The lexicographically smallest
monomial of P_w is w itself with coefficient 1, so Lie coordinates follow by
triangular elimination over the integers.
"""
import logging
from functools import lru_cache

from engelkit.errors import EngelError

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]
Poly = dict[Monomial, int]


@lru_cache(maxsize=None)
def lyndon_words(n: int, degree: int) -> tuple[Monomial, ...]:
    """Lyndon words of exactly the given length over 1..n, in lexicographic order (Duval)."""
    if n < 1 or degree < 1:
        return ()
    found = []
    w = [0]
    while w:
        w[-1] += 1
        if len(w) == degree:
            found.append(tuple(w))
        m = len(w)
        while len(w) < degree:
            w.append(w[len(w) - m])
        while w and w[-1] == n:
            w.pop()
    return tuple(found)


def is_lyndon(word: Monomial) -> bool:
    return all(word < word[i:] for i in range(1, len(word)))


def standard_factorization(word: Monomial) -> tuple[Monomial, Monomial]:
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise EngelError(f"{word} has no standard factorization")


def bracket(a: Poly, b: Poly) -> Poly:
    """Commutator ab - ba of homogeneous polynomials."""
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            ab = ma + mb
            ba = mb + ma
            out[ab] = out.get(ab, 0) + ca * cb
            out[ba] = out.get(ba, 0) - ca * cb
    return {mono: coef for mono, coef in out.items() if coef}


@lru_cache(maxsize=None)
def _lyndon_polynomial(word: Monomial) -> tuple[tuple[Monomial, int], ...]:
    if len(word) == 1:
        return ((word, 1),)
    u, v = standard_factorization(word)
    return tuple(sorted(bracket(lyndon_polynomial(u), lyndon_polynomial(v)).items()))


def lyndon_polynomial(word: Monomial) -> Poly:
    """Associative expansion of the standard bracketing of a Lyndon word."""
    return dict(_lyndon_polynomial(tuple(word)))


def lyndon_bracket_text(word: Monomial) -> str:
    """Bracketed form, e.g. [1,[1,2]]."""
    if len(word) == 1:
        return str(word[0])
    u, v = standard_factorization(word)
    return f"[{lyndon_bracket_text(u)},{lyndon_bracket_text(v)}]"


def lie_coordinates(poly: Poly, n: int, degree: int) -> list[int]:
    """Coordinates of a homogeneous Lie element in the Lyndon basis.

    Raises EngelError when the polynomial is not a Lie element of that degree.
    """
    basis = lyndon_words(n, degree)
    index = {word: i for i, word in enumerate(basis)}
    residual = {mono: coef for mono, coef in poly.items() if coef}
    for mono in residual:
        if len(mono) != degree:
            raise EngelError(f"monomial {mono} is not of degree {degree}")
    coords = [0] * len(basis)
    while residual:
        lead = min(residual)
        if lead not in index:
            raise EngelError(f"not a Lie element: leading monomial {lead} is not a Lyndon word")
        c = residual[lead]
        coords[index[lead]] += c
        for mono, coef in lyndon_polynomial(lead).items():
            value = residual.get(mono, 0) - c * coef
            if value:
                residual[mono] = value
            else:
                residual.pop(mono, None)
    return coords


def from_coordinates(coords: list[int], n: int, degree: int) -> Poly:
    out: Poly = {}
    for c, word in zip(coords, lyndon_words(n, degree)):
        if not c:
            continue
        for mono, coef in lyndon_polynomial(word).items():
            out[mono] = out.get(mono, 0) + c * coef
    return {mono: coef for mono, coef in out.items() if coef}


def bracket_with_generator(poly: Poly, gen: int) -> Poly:
    """[poly, X_gen]."""
    return bracket(poly, {(gen,): 1})


def doubled_lie_part(r3: Poly, r4: Poly) -> Poly:
    """2 R4 + D(R3), with D doubling each letter of a monomial in turn.

    For an element of the third lower central term with Magnus parts R3 and
    R4 this is twice the degree-4 term of its group-like expansion, hence an
    integral Lie element.
    """
    out: Poly = {mono: 2 * coef for mono, coef in r4.items()}
    for mono, coef in r3.items():
        for i in range(len(mono)):
            doubled = mono[: i + 1] + mono[i:]
            out[doubled] = out.get(doubled, 0) + coef
    return {mono: coef for mono, coef in out.items() if coef}
