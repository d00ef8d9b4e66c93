"""Truncated noncommutative integer power series and Magnus expansions.

A series is a sparse map from monomials (tuples of generator ids, the empty
tuple being the unit) to nonzero integers. ``TruncSeries`` drops every
monomial above its truncation degree; ``ReducedSeries`` additionally drops
every monomial with a repeated index, which is the model of the free Milnor
group used throughout the toolkit.
"""
import logging
from typing import Iterable, Mapping, NamedTuple, Optional

from engelkit.errors import SeriesError
from engelkit.models.series import SeriesDump, SeriesTerm
from engelkit.services import metrics
from engelkit.services.words import Word

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]


def _has_repeat(mono: Monomial) -> bool:
    return len(set(mono)) != len(mono)


class TruncSeries:
    """Integer series truncated above a fixed degree."""

    __slots__ = ("degree", "terms")

    reduced = False

    def __init__(self, degree: int, terms: Optional[Mapping[Monomial, int]] = None):
        if degree < 0:
            raise SeriesError(f"truncation degree must be nonnegative, got {degree}")
        self.degree = degree
        self.terms: dict[Monomial, int] = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(mono)
            if coef and self._admits(mono):
                self.terms[mono] = self.terms.get(mono, 0) + coef
        self.terms = {mono: coef for mono, coef in self.terms.items() if coef}

    def _admits(self, mono: Monomial) -> bool:
        return len(mono) <= self.degree

    def _new(self, terms: dict[Monomial, int]) -> "TruncSeries":
        series = object.__new__(type(self))
        series.degree = self.degree
        series.terms = {mono: coef for mono, coef in terms.items() if coef}
        return series

    @classmethod
    def one(cls, degree: int) -> "TruncSeries":
        return cls(degree, {(): 1})

    def _check(self, other: "TruncSeries") -> None:
        if type(other) is not type(self) or other.degree != self.degree:
            raise SeriesError(
                f"incompatible series: {type(self).__name__}(D={self.degree}) "
                f"and {type(other).__name__}(D={other.degree})"
            )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TruncSeries)
            and type(other) is type(self)
            and other.degree == self.degree
            and other.terms == self.terms
        )

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.degree, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(D={self.degree}, {self.to_text()})"

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        terms = dict(self.terms)
        for mono, coef in other.terms.items():
            terms[mono] = terms.get(mono, 0) + coef
        return self._new(terms)

    def __neg__(self) -> "TruncSeries":
        return self._new({mono: -coef for mono, coef in self.terms.items()})

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        return series_mul(self, other)

    def __pow__(self, k: int) -> "TruncSeries":
        return series_pow(self, k)

    def scale(self, factor: int) -> "TruncSeries":
        return self._new({mono: factor * coef for mono, coef in self.terms.items()})

    @property
    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def constant(self) -> int:
        return self.terms.get((), 0)

    def homogeneous(self, d: int) -> dict[Monomial, int]:
        """Degree-d part as a monomial map."""
        return {mono: coef for mono, coef in self.terms.items() if len(mono) == d}

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0]))

    def to_text(self, names: Optional[Mapping[int, str]] = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coef in self.sorted_terms():
            if not mono:
                parts.append(str(coef))
                continue
            body = "".join(f"X{names[g]}" if names else f"X{g}" for g in mono)
            if coef == 1:
                parts.append(body)
            elif coef == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coef}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_model(self) -> SeriesDump:
        return SeriesDump(
            D=self.degree,
            reduced=self.reduced,
            terms=[SeriesTerm(mono=list(mono), coef=str(coef)) for mono, coef in self.sorted_terms()],
        )


class ReducedSeries(TruncSeries):
    """Series in which every stored monomial has pairwise-distinct indices."""

    __slots__ = ()

    reduced = True

    def _admits(self, mono: Monomial) -> bool:
        return len(mono) <= self.degree and not _has_repeat(mono)


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    a._check(b)
    degree = a.degree
    reduced = a.reduced
    terms: dict[Monomial, int] = {}
    for ma, ca in a.terms.items():
        room = degree - len(ma)
        seen = set(ma) if reduced else None
        for mb, cb in b.terms.items():
            if len(mb) > room:
                continue
            if reduced and not seen.isdisjoint(mb):
                continue
            mono = ma + mb
            terms[mono] = terms.get(mono, 0) + ca * cb
    return a._new(terms)


def series_inverse(a: TruncSeries) -> TruncSeries:
    """Inverse of a series with constant term +1 or -1."""
    c0 = a.constant()
    if c0 not in (1, -1):
        raise SeriesError(f"series with constant term {c0} is not invertible over the integers")
    # a = c0 * (1 + r); a^-1 = c0 * sum (-r)^k
    minus_r = type(a).one(a.degree) - a.scale(c0)
    total = type(a).one(a.degree)
    term = type(a).one(a.degree)
    for _ in range(a.degree):
        term = series_mul(term, minus_r)
        if not term.terms:
            break
        total = total + term
    return total.scale(c0)


def series_pow(a: TruncSeries, k: int) -> TruncSeries:
    base = a if k >= 0 else series_inverse(a)
    result = type(a).one(a.degree)
    k = abs(k)
    while k:
        if k & 1:
            result = series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


def coefficient(a: TruncSeries, mono: Iterable[int]) -> int:
    return a.terms.get(tuple(mono), 0)


def lowest_degree(a: TruncSeries) -> Optional[int]:
    """Smallest degree >= 1 with a nonzero coefficient; None for the series 1."""
    degrees = [len(mono) for mono in a.terms if mono]
    return min(degrees) if degrees else None


def _append_letter(terms: dict[Monomial, int], gen: int, sign: int, degree: int, reduced: bool) -> dict[Monomial, int]:
    out = dict(terms)
    for mono, coef in terms.items():
        if len(mono) >= degree:
            continue
        if reduced:
            if gen in mono:
                continue
            key = mono + (gen,)
            out[key] = out.get(key, 0) + sign * coef
            continue
        key = mono
        value = coef
        for _ in range(1 if sign > 0 else degree - len(mono)):
            key = key + (gen,)
            value = value if sign > 0 else -value
            out[key] = out.get(key, 0) + value
    return {mono: coef for mono, coef in out.items() if coef}


def _expand(w: Word, degree: int, reduced: bool, exclude: Iterable[int]) -> dict[Monomial, int]:
    skip = set(exclude)
    terms: dict[Monomial, int] = {(): 1}
    for gen, sign in w.letters:
        if gen in skip:
            continue
        terms = _append_letter(terms, gen, sign, degree, reduced)
    return terms


def expand(w: Word, degree: int, exclude: Iterable[int] = ()) -> TruncSeries:
    """Magnus image of w truncated at the given degree.

    x -> 1 + X and x^-1 -> 1 - X + X^2 - ...; generators in ``exclude`` map to 1.
    """
    if degree < 1:
        raise SeriesError(f"truncation degree must be positive, got {degree}")
    metrics.EXPANSIONS_COMPUTED.labels(kind="full").inc()
    series = TruncSeries(degree)
    series.terms = _expand(w, degree, False, exclude)
    return series


def reduced_expand(w: Word, n: int, exclude: Iterable[int] = (), max_degree: Optional[int] = None) -> ReducedSeries:
    """Magnus image of w with every repeated-index monomial deleted.

    The truncation degree is n; ``max_degree`` drops higher terms as well,
    which leaves every stored coefficient unchanged.
    """
    if w.max_generator() > n:
        raise SeriesError(f"word uses generator {w.max_generator()} but n = {n}")
    metrics.EXPANSIONS_COMPUTED.labels(kind="reduced").inc()
    degree = n if max_degree is None else min(n, max_degree)
    series = ReducedSeries(n)
    series.terms = _expand(w, degree, True, exclude)
    return series


def delete_repeated(a: TruncSeries, n: int) -> ReducedSeries:
    """Reduce a full series to the distinct-index model on n generators."""
    return ReducedSeries(n, {mono: coef for mono, coef in a.terms.items() if len(mono) <= n})


class LcsPlacement(NamedTuple):
    """Lower-central placement: ``degree`` is exact, or a lower bound when ``exact`` is False."""

    degree: int
    exact: bool

    def __str__(self) -> str:
        return str(self.degree) if self.exact else f">={self.degree}"


def lcs_degree(w: Word, n: int, cap: int) -> LcsPlacement:
    """Lowest nonvanishing degree of expand(w, cap).

    A result of k means w lies in the k-th lower central term and, when exact,
    not in the next one. If nothing survives up to the cap, w lies at least in
    term cap + 1.
    """
    if cap < 1:
        raise SeriesError(f"cap must be positive, got {cap}")
    if w.max_generator() > n:
        raise SeriesError(f"word uses generator {w.max_generator()} but n = {n}")
    low = lowest_degree(expand(w, cap))
    if low is None:
        return LcsPlacement(cap + 1, False)
    return LcsPlacement(low, True)
