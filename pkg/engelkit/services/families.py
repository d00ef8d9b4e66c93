"""Parametrized doubling families Wh(Bing(Hopf)) and Wh(Bing(Wh)).

A member is built in three steps: ramify every seed component, apply the
Bing steps in order (each step ramifies one component and Bing-doubles every
copy), then Whitehead-double every component at once. The link before the
last step is the companion; the classifier verdict of the companion is what
tells the two families apart.
"""
import logging
from dataclasses import dataclass, replace
from typing import Optional

from engelkit.errors import LinkConstructionError
from engelkit.models.links import FamilyMember
from engelkit.services import links
from engelkit.services.links import Component, LinkModel, link_classifier
from engelkit.services.words import Word, commutator, delete_generators, power

logger = logging.getLogger(__name__)

SEEDS = ("hopf", "wh")


@dataclass(frozen=True)
class FamilySpec:
    """Recipe for one family member.

    ``bing_steps`` holds (component, ramification) pairs; component indices
    refer to the link as it stands when the step runs.
    """

    seed: str = "hopf"
    bing_steps: tuple[tuple[int, int], ...] = ()
    seed_ramification: int = 1
    whitehead_ramification: int = 1
    signs: Optional[tuple[int, ...]] = None
    seed_sign: int = 1

    def describe(self) -> str:
        steps = ",".join(f"{i}x{r}" for i, r in self.bing_steps) or "none"
        return f"{self.seed}[r={self.seed_ramification}] bing[{steps}] wh[r={self.whitehead_ramification}]"


def _seed(spec: FamilySpec) -> LinkModel:
    if spec.seed == "hopf":
        if not spec.bing_steps:
            raise LinkConstructionError("the Hopf family needs at least one Bing step")
        return links.hopf()
    if spec.seed == "wh":
        return links.whitehead_link(spec.seed_sign)
    raise LinkConstructionError(f"unknown seed {spec.seed!r}, expected one of {', '.join(SEEDS)}")


def _ramify_all(link: LinkModel, r: int) -> LinkModel:
    if r < 1:
        raise LinkConstructionError(f"ramification must be at least 1, got {r}")
    result = link
    for i in range(1, link.size + 1):
        result = links.ram(result, i, r)
    return result


def _bing_step(link: LinkModel, i: int, r: int) -> LinkModel:
    link.check_index(i)
    before = link.size
    result = links.ram(link, i, r)
    copies = [i] + list(range(before + 1, before + r))
    for copy in copies:
        result = links.bing(result, copy)
    return result


def family_companion(spec: FamilySpec) -> LinkModel:
    """The link L of the member Wh(L)."""
    link = _ramify_all(_seed(spec), spec.seed_ramification)
    for i, r in spec.bing_steps:
        link = _bing_step(link, i, r)
    return link


def whitehead_all(link: LinkModel, signs: Optional[tuple[int, ...]] = None) -> LinkModel:
    """Whitehead-double every component simultaneously.

    Each new longitude is the clasp [[lam, m_i], lam]^e built from the
    companion longitude lam (own meridian deleted), read in the new meridians.
    This is a surrogate for k sequential `links.whd` calls: the pattern
    substitution m_j -> [[m_j, lam_j], m_j] into the other longitudes is
    skipped; sequential longitudes grow exponentially in k. The surrogate
    keeps the component count, the first clasp and vanishing
    linking numbers, which is all a family report reads from the member.
    """
    signs = signs if signs is not None else (1,) * link.size
    if len(signs) != link.size:
        raise LinkConstructionError(f"{len(signs)} Whitehead signs for {link.size} components")
    if any(s not in (1, -1) for s in signs):
        raise LinkConstructionError(f"Whitehead signs must be +1 or -1, got {list(signs)}")
    longitudes = []
    for i, sign in enumerate(signs, start=1):
        lam = delete_generators(link.longitude(i), [i])
        m = Word.generator(i)
        longitudes.append(power(commutator(commutator(lam, m), lam), sign))
    links.check_longitude_lengths(longitudes)
    text = "".join("+" if s > 0 else "-" for s in signs)
    return LinkModel(tuple(Component(w) for w in longitudes), f"wh_all({link.provenance},{text})")


def family(spec: FamilySpec) -> LinkModel:
    companion = family_companion(spec)
    doubled = _ramify_all(companion, spec.whitehead_ramification)
    member = whitehead_all(doubled, spec.signs)
    logger.debug(f"Family member {spec.describe()} has {member.size} components")
    return replace(member, provenance=f"family({spec.describe()})", _cache={})


@dataclass(frozen=True)
class SweepEntry:
    name: str
    spec: FamilySpec


def family_sweep() -> list[SweepEntry]:
    """Deterministic member list covering both families and the ramified case."""
    hopf_steps = [((1, 1),), ((1, 1), (2, 1)), ((1, 2),), ((1, 1), (3, 1)), ((2, 1),)]
    wh_steps = [((1, 1),), ((2, 1),), ((1, 1), (2, 1))]
    entries = [SweepEntry(f"hopf-{k}", FamilySpec("hopf", steps)) for k, steps in enumerate(hopf_steps, start=1)]
    entries += [SweepEntry(f"wh-{k}", FamilySpec("wh", steps)) for k, steps in enumerate(wh_steps, start=1)]
    entries += [
        SweepEntry(f"wh-ramified-{k}", FamilySpec("wh", steps, seed_ramification=2))
        for k, steps in enumerate(wh_steps[:2], start=1)
    ]
    return entries


def family_report(entry: SweepEntry) -> FamilyMember:
    spec = entry.spec
    companion = family_companion(spec)
    member = family(spec)
    return FamilyMember(
        name=entry.name,
        seed=spec.seed,
        ramified=spec.seed_ramification >= 2,
        companion=link_classifier.report(companion),
        member_components=member.size,
        member_linking_numbers_zero=links.linking_numbers_zero(member),
    )
