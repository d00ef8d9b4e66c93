"""Acceptance checks run by ``reproduce``, in criterion order."""
import itertools
import logging
import random
import time
from typing import Callable, Iterable, Optional

from engelkit.config import get_settings
from engelkit.errors import EngelkitError, InvariantViolation
from engelkit.models.links import Classification
from engelkit.models.reproduce import CriterionResult, ReproductionReport
from engelkit.services import links
from engelkit.services.decomp import attach_curve_word, decomposition_service, elementary_commutators, parse_profile
from engelkit.services.engel import engel_service, verify_certificate
from engelkit.services.families import family_report, family_sweep
from engelkit.services.link_dsl import build, random_construction
from engelkit.services.magnus import coefficient, expand, reduced_expand, series_inverse
from engelkit.services.milnor import milnor_class_probe
from engelkit.services.slides import (
    Curve,
    DiagramState,
    SlideMove,
    engel_slide_property,
    engel_state,
    parse_slots,
    reverse,
    slide,
    wndl_cases,
)
from engelkit.services.words import GeneratorContext, Word, commutator, conjugate, invert, multiply, random_word
from engelkit.services.zlattice import invariant_factors, minor_gcd_factors

logger = logging.getLogger(__name__)

Check = tuple[bool, str]

PROPERTY_SEED = 7
MAGNUS_CASES = 1000
LINK_CASES = 200
MATRIX_CASES = 500
SLIDE_CASES = 200


def _m(i: int) -> Word:
    return Word.generator(i)


def check_relator_death() -> Check:
    rng = random.Random(PROPERTY_SEED)
    for i in range(1, 5):
        for _ in range(50):
            y = random_word(4, rng.randint(1, 6), rng)
            if not reduced_expand(commutator(_m(i), conjugate(_m(i), y)), 4).is_one:
                return False, f"[m{i}, m{i}^y] survives for y = {y.to_text(GeneratorContext.standard('m', 4))}"
    gamma = commutator(commutator(_m(1), _m(2)), commutator(_m(3), _m(4)))
    coef = coefficient(reduced_expand(gamma, 4), (1, 2, 3, 4))
    return coef == 1, f"200 relators die; coefficient of X1X2X3X4 in [[m1,m2],[m3,m4]] is {coef}"


def check_class_probe() -> Check:
    details = []
    for n in (2, 3, 4):
        report = milnor_class_probe(n)
        if not report.passed:
            return False, f"n={n}: witness coefficient {report.witness_coefficient}, failures {report.failures[:3]}"
        details.append(f"n={n}: {report.checked} checked")
    return True, "; ".join(details)


def check_class3() -> Check:
    details = []
    for n in (2, 3, 4):
        report = engel_service.certify_class3(n)
        if not report.sufficient:
            return False, f"n={n}: no certificate for {report.missing[:3]}"
        if not all(c.verified and verify_certificate(c) for c in report.certificates):
            return False, f"n={n}: a certificate failed re-verification"
        details.append(f"n={n}: {len(report.certificates)} certificates")
    return True, "; ".join(details)


def check_decomposition() -> Check:
    gamma = commutator(commutator(_m(1), _m(2)), commutator(_m(3), _m(4)))
    first = decomposition_service.decompose_gamma(gamma, 4)
    higher, n = attach_curve_word(parse_profile("(2;1,1,1,1)"))
    second = decomposition_service.decompose_gamma(higher, n)
    passed = all(c.verified and c.correction_trivial_in_mf for c in (first, second))
    return passed, f"genus 1: {len(first.terms)} terms; profile (2;1,1,1,1), n={n}: {len(second.terms)} terms"


def check_taxonomy() -> Check:
    wh = links.whitehead_link(1)
    expected = [
        ("Wh", wh, Classification.TRIVIAL_PLUS),
        ("par(Wh,1)", links.par(wh, 1), Classification.TRIVIAL_NOT_PLUS),
        ("par(par(Wh,1),2)", links.par(links.par(wh, 1), 2), Classification.ESSENTIAL),
    ]
    for name, link, verdict in expected:
        found = links.link_classifier.classify(link)
        if found != verdict:
            return False, f"{name} classified {found.value}, expected {verdict.value}"
    return True, "Wh, par(Wh,1), par(par(Wh,1),2) as expected"


def check_families() -> Check:
    members = [family_report(entry) for entry in family_sweep()]
    for member in members:
        verdict = member.companion.classification
        if not member.member_linking_numbers_zero:
            return False, f"{member.name}: nonzero linking number"
        if member.seed == "hopf" and verdict != Classification.ESSENTIAL:
            return False, f"{member.name}: companion {verdict.value}, expected h-essential"
        if member.ramified and verdict != Classification.ESSENTIAL:
            return False, f"{member.name}: ramified companion {verdict.value}, expected h-essential"
        if member.seed == "wh" and not member.ramified and verdict != Classification.TRIVIAL_PLUS:
            return False, f"{member.name}: Bing(Wh) companion {verdict.value}, expected h-trivial-plus"
    return True, f"{len(members)} members"


def check_slide_property() -> Check:
    states = [engel_state(*parse_slots(text)) for text in ("x,y*z,y*z,w", "y*z,x,y*z,w")]
    states += [engel_state(c) for c in elementary_commutators(4)]
    for state in states:
        report = engel_slide_property(state)
        if not report.holds:
            return False, f"fails for {report.pattern}: split={report.split_unknot}, rest={report.rest_h_trivial}"
    return True, f"{len(states)} elementary Engel states"


def check_wndl() -> Check:
    cases = wndl_cases()
    for case in cases:
        if case.result.instance != case.in_product_slot:
            return False, f"deleting {case.deleted} from {case.commutator}: {case.result.model_dump()}"
    instances = sum(case.result.instance for case in cases)
    return True, f"{len(cases)} deletions, {instances} instances"


def _random_state(rng: random.Random) -> DiagramState:
    k = rng.randint(2, 5)
    ctx = GeneratorContext.standard("c", k)
    curves = []
    for i, name in enumerate(ctx.names, start=1):
        word = random_word(k, rng.randint(0, 6), rng)
        curves.append(Curve(name, i, word))
    return DiagramState(ctx, frozenset(), tuple(curves))


def check_properties() -> Check:
    rng = random.Random(PROPERTY_SEED)
    for _ in range(MAGNUS_CASES):
        u = random_word(3, rng.randint(0, 8), rng)
        v = random_word(3, rng.randint(0, 8), rng)
        if expand(multiply(u, v), 4) != expand(u, 4) * expand(v, 4):
            return False, f"homomorphism law fails for {u!r}, {v!r}"
        if expand(invert(u), 4) != series_inverse(expand(u, 4)):
            return False, f"inverse law fails for {u!r}"

    for _ in range(LINK_CASES):
        expr = random_construction(rng)
        link = build(expr)
        i = rng.randint(1, link.size)
        g = random_word(link.size, rng.randint(1, 5), rng)
        moved = links.conjugate_longitude(link, i, g)
        for indices in _index_sequences(link.size):
            value = links.mu_bar(link, indices)
            if value.valid and value.value != links.mu_bar(moved, indices).value:
                return False, f"conjugation changes mu-bar{indices} of {link.provenance}"
        if link.size >= 3:
            drop = rng.randint(1, link.size)
            sub = links.delete_component(link, drop)
            for indices in _index_sequences(sub.size):
                ambient = tuple(j if j < drop else j + 1 for j in indices)
                if links.mu_bar(sub, indices).value != links.mu_bar(link, ambient).value:
                    return False, f"sublink mismatch for {link.provenance} without {drop}"

    for _ in range(MATRIX_CASES):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        if invariant_factors(A) != minor_gcd_factors(A):
            return False, f"invariant factors disagree with minor gcds for {A}"

    for _ in range(SLIDE_CASES):
        state = _random_state(rng)
        slid, over = rng.sample([c.name for c in state.curves], 2)
        band = random_word(state.ctx.size, rng.randint(0, 3), rng)
        move = SlideMove(slid, over, band, rng.choice((1, -1)))
        if slide(slide(state, move), reverse(move)) != state:
            return False, f"slide {slid} over {over} is not undone by its reverse"
    return True, (
        f"{MAGNUS_CASES} series pairs, {LINK_CASES} links, "
        f"{MATRIX_CASES} matrices, {SLIDE_CASES} slides"
    )


def _index_sequences(size: int, longest: int = 3) -> Iterable[tuple[int, ...]]:
    for r in range(2, min(size, longest) + 1):
        yield from itertools.permutations(range(1, size + 1), r)


CRITERIA: list[tuple[int, str, Callable[[], Check]]] = [
    (1, "Milnor relators die, gamma survives", check_relator_death),
    (2, "Free Milnor class probe", check_class_probe),
    (3, "2-Engel groups have class at most 3", check_class3),
    (4, "Attaching-curve decomposition", check_decomposition),
    (5, "Link-homotopy taxonomy", check_taxonomy),
    (6, "Doubling family dichotomy", check_families),
    (7, "Elementary Engel slide property", check_slide_property),
    (8, "Weak null disk hypotheses", check_wndl),
    (9, "Randomized property suites", check_properties),
]


class ReproductionService:
    """Runs the acceptance checks and collects a report."""

    def run(self, only: Optional[Iterable[int]] = None) -> ReproductionReport:
        wanted = set(only) if only else None
        results = []
        for number, name, check in CRITERIA:
            if wanted is not None and number not in wanted:
                continue
            started = time.perf_counter()
            try:
                passed, detail = check()
            except InvariantViolation:
                raise
            except EngelkitError as exc:
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            elapsed = time.perf_counter() - started
            logger.info(f"Criterion {number} ({name}): {'pass' if passed else 'FAIL'} in {elapsed:.2f}s")
            results.append(CriterionResult(number=number, name=name, passed=passed, detail=detail, seconds=elapsed))
        results.sort(key=lambda r: r.number)
        report = ReproductionReport(passed=all(r.passed for r in results), criteria=results)
        logger.info(f"Reproduction with depth {get_settings().depth}: {'pass' if report.passed else 'FAIL'}")
        return report


# Global instance
reproduction_service = ReproductionService()
