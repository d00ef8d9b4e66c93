"""Word-level link models, doubling constructions and link-homotopy classification.

Component i has meridian m_i (generator id i). A longitude is a word in all
meridians; only its image with the own meridian deleted matters for the
distinct-index invariants computed here.

Doubling rules (all 0-framed, lk(Hopf) = +1):

    bing(L, i):  new component b = k+1 next to a = i.
                 m_i -> [m_a, m_b] in every other longitude,
                 lam = that substitution applied to l_i,
                 l_a = [m_b, lam],  l_b = [lam, m_a].
    whd(L, i, e): lam = l_i with m_i deleted,
                 m_i -> [[m_i, lam], m_i]^e in every other longitude,
                 l_i = [[lam, m_i], lam]^e.
    par(L, i):   new component i' = k+1,
                 m_i -> m_i * m_i' in every longitude, then l_i' = l_i.
"""
import itertools
import logging
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from engelkit.config import get_settings
from engelkit.errors import LinkConstructionError
from engelkit.models.links import (
    Classification,
    ClassificationReport,
    ComponentDump,
    LinkDump,
    MuBarValue,
)
from engelkit.services import metrics
from engelkit.services.magnus import ReducedSeries, coefficient, reduced_expand
from engelkit.services.words import (
    GeneratorContext,
    Word,
    commutator,
    conjugate,
    delete_generators,
    exponent_sum,
    multiply,
    power,
    relabel,
    substitute,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Component:
    """A link component: its longitude word and framing."""

    longitude: Word
    framing: int = 0


@dataclass(frozen=True)
class LinkModel:
    """Ordered components; component i has meridian generator i."""

    components: tuple[Component, ...]
    provenance: str = field(default="", compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def size(self) -> int:
        return len(self.components)

    @property
    def context(self) -> GeneratorContext:
        return GeneratorContext.standard("m", self.size)

    def longitude(self, i: int) -> Word:
        self.check_index(i)
        return self.components[i - 1].longitude

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.size:
            raise LinkConstructionError(f"component {i} out of range 1..{self.size}")

    def reduced_longitude(self, i: int) -> ReducedSeries:
        """Reduced expansion of l_i with m_i deleted, cached per model."""
        key = ("reduced", i)
        if key not in self._cache:
            word = self.longitude(i)
            self._cache[key] = reduced_expand(word, self.size, exclude=(i,))
        return self._cache[key]

    def to_model(self) -> LinkDump:
        ctx = self.context
        return LinkDump(
            provenance=self.provenance,
            components=[
                ComponentDump(meridian=ctx.name_of(i), longitude=c.longitude.to_text(ctx), framing=c.framing)
                for i, c in enumerate(self.components, start=1)
            ],
        )


def check_longitude_lengths(longitudes: Sequence[Word]) -> None:
    limit = get_settings().max_longitude_length
    for i, word in enumerate(longitudes, start=1):
        if len(word) > limit:
            raise LinkConstructionError(
                f"longitude {i} has {len(word)} letters, above the limit of {limit}"
            )


def _make(longitudes: Sequence[Word], provenance: str) -> LinkModel:
    check_longitude_lengths(longitudes)
    return LinkModel(tuple(Component(w) for w in longitudes), provenance)


def _m(i: int) -> Word:
    return Word.generator(i)


def hopf() -> LinkModel:
    return _make([_m(2), _m(1)], "hopf")


def unlink(k: int) -> LinkModel:
    if k < 1:
        raise LinkConstructionError(f"unlink needs at least one component, got {k}")
    return _make([Word.identity()] * k, f"unlink({k})")


def bing(link: LinkModel, i: int) -> LinkModel:
    link.check_index(i)
    b = link.size + 1
    sigma = {i: commutator(_m(i), _m(b))}
    lam = substitute(link.longitude(i), sigma)
    longitudes = []
    for j in range(1, link.size + 1):
        if j == i:
            longitudes.append(commutator(_m(b), lam))
        else:
            longitudes.append(substitute(link.longitude(j), sigma))
    longitudes.append(commutator(lam, _m(i)))
    return _make(longitudes, f"bing({link.provenance},{i})")


def _sign_text(sign: int) -> str:
    return "+" if sign > 0 else "-"


def whd(link: LinkModel, i: int, sign: int = 1) -> LinkModel:
    link.check_index(i)
    if sign not in (1, -1):
        raise LinkConstructionError(f"Whitehead sign must be +1 or -1, got {sign}")
    lam = delete_generators(link.longitude(i), [i])
    pattern = power(commutator(commutator(_m(i), lam), _m(i)), sign)
    longitudes = []
    for j in range(1, link.size + 1):
        if j == i:
            longitudes.append(power(commutator(commutator(lam, _m(i)), lam), sign))
        else:
            longitudes.append(substitute(link.longitude(j), {i: pattern}))
    return _make(longitudes, f"whd({link.provenance},{i},{_sign_text(sign)})")


def whitehead_link(sign: int = 1) -> LinkModel:
    model = whd(hopf(), 2, sign)
    return replace(model, provenance=f"wh({_sign_text(sign)})", _cache={})


def par(link: LinkModel, i: int) -> LinkModel:
    link.check_index(i)
    copy = link.size + 1
    sigma = {i: multiply(_m(i), _m(copy))}
    longitudes = [substitute(c.longitude, sigma) for c in link.components]
    longitudes.append(longitudes[i - 1])
    return _make(longitudes, f"par({link.provenance},{i})")


def ram(link: LinkModel, i: int, r: int) -> LinkModel:
    """r parallel copies of component i in total."""
    link.check_index(i)
    if r < 1:
        raise LinkConstructionError(f"ramification must be at least 1, got {r}")
    result = link
    for _ in range(r - 1):
        result = par(result, i)
    return replace(result, provenance=f"ram({link.provenance},{i},{r})", _cache={})


def delete_component(link: LinkModel, i: int) -> LinkModel:
    """Set m_i = 1 everywhere, drop component i and renumber the rest."""
    link.check_index(i)
    shift = {j: j - 1 for j in range(i + 1, link.size + 1)}
    longitudes = [
        relabel(delete_generators(c.longitude, [i]), shift)
        for j, c in enumerate(link.components, start=1)
        if j != i
    ]
    return LinkModel(tuple(Component(w) for w in longitudes), f"delete({link.provenance},{i})")


def sublink(link: LinkModel, keep: Iterable[int]) -> LinkModel:
    """Keep the listed components, in their original order."""
    kept = sorted(set(keep))
    for i in kept:
        link.check_index(i)
    result = link
    for i in sorted(set(range(1, link.size + 1)) - set(kept), reverse=True):
        result = delete_component(result, i)
    return replace(result, provenance=f"sub({link.provenance},{','.join(map(str, kept))})", _cache={})


def conjugate_longitude(link: LinkModel, i: int, by: Word) -> LinkModel:
    link.check_index(i)
    longitudes = [c.longitude for c in link.components]
    longitudes[i - 1] = conjugate(longitudes[i - 1], by)
    return _make(longitudes, link.provenance)


def linking_number(link: LinkModel, i: int, j: int) -> int:
    if i == j:
        raise LinkConstructionError("linking number needs two distinct components")
    link.check_index(j)
    return exponent_sum(link.longitude(j), i)


def mu_bar(link: LinkModel, indices: Sequence[int]) -> MuBarValue:
    """Coefficient of X_i1...X_i(r-1) in the reduced expansion of l_ir.

    The value is flagged valid when every proper subsequence of the indices
    ending in i_r (length >= 2) has vanishing invariant.
    """
    indices = tuple(indices)
    if len(indices) < 2:
        raise LinkConstructionError("mu-bar needs at least two indices")
    if len(set(indices)) != len(indices):
        raise LinkConstructionError(f"mu-bar indices must be distinct, got {list(indices)}")
    for i in indices:
        link.check_index(i)
    last = indices[-1]
    head = indices[:-1]
    series = link.reduced_longitude(last)
    value = coefficient(series, head)
    valid = True
    for size in range(1, len(head)):
        for sub in itertools.combinations(head, size):
            if coefficient(series, sub):
                valid = False
                break
        if not valid:
            break
    return MuBarValue(indices=list(indices), value=value, valid=valid)


def first_nonvanishing(link: LinkModel) -> Optional[MuBarValue]:
    """Shortest, then lexicographically first, nonzero distinct-index invariant."""
    best: Optional[tuple[int, tuple[int, ...]]] = None
    for last in range(1, link.size + 1):
        for mono, coef in link.reduced_longitude(last).terms.items():
            if not mono or not coef:
                continue
            key = (len(mono), mono + (last,))
            if best is None or key < best:
                best = key
    if best is None:
        return None
    return mu_bar(link, best[1])


def is_h_trivial(link: LinkModel) -> bool:
    """True when every distinct-index invariant vanishes."""
    return all(link.reduced_longitude(i).is_one for i in range(1, link.size + 1))


def linking_numbers_zero(link: LinkModel) -> bool:
    return all(
        linking_number(link, i, j) == 0
        for i in range(1, link.size + 1)
        for j in range(1, link.size + 1)
        if i != j
    )


class LinkClassifier:
    """h-essential / h-trivial-not-plus / h-trivial-plus classification."""

    def classify(self, link: LinkModel) -> Classification:
        return self.report(link).classification

    def report(self, link: LinkModel) -> ClassificationReport:
        obstruction = first_nonvanishing(link)
        failures: list[int] = []
        if obstruction is not None:
            verdict = Classification.ESSENTIAL
        else:
            failures = [i for i in range(1, link.size + 1) if not is_h_trivial(par(link, i))]
            verdict = Classification.TRIVIAL_NOT_PLUS if failures else Classification.TRIVIAL_PLUS
        metrics.LINKS_CLASSIFIED.labels(verdict=verdict.value).inc()
        logger.info(f"Classified {link.provenance}: {verdict.value}")
        return ClassificationReport(
            provenance=link.provenance,
            components=link.size,
            classification=verdict,
            obstruction=obstruction,
            plus_failures=failures,
            linking_numbers_zero=linking_numbers_zero(link),
        )


# Global instance
link_classifier = LinkClassifier()
