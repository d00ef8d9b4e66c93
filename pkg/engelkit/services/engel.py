"""2-Engel relator lattices and class-3 certificates.

Everything here works modulo the fifth lower central term. Engel instances
[w, w^v] lie in the third term, so their Magnus images (R3, R4) in degrees 3
and 4 are additive under multiplication and conjugation by x_i only adds
[R3, X_i] to R4.

R3 is a Lie element but R4 in general is not: under x -> 1 + X only the
lowest degree of M(w) - 1 is Lie. Substituting X -> exp(X) - 1 turns the
expansion into the group-like one, whose degree-4 term for an element of the
third term is R4 + D(R3)/2, with D doubling each letter of a monomial in
turn. The lattice therefore stores Lyndon coordinates of R3 followed by
Lyndon coordinates of 2 R4 + D(R3). That map is linear and injective on
(R3, R4), so membership questions are unchanged. The rows whose pivots fall
in degree-4 columns form the degree-4 sublattice left after degree-3 content
is eliminated.

Instances are added in stages: positive words of length 1, all words of
length 1, positive words of length 2, and so on up to the requested depth.
"""
import itertools
import logging
import time
from dataclasses import dataclass
from typing import Optional

from engelkit.config import get_settings
from engelkit.errors import EngelError, InvariantViolation
from engelkit.models.engel import (
    CertificateFactor,
    Class3Report,
    EngelCertificate,
    EngelCheckResult,
    EngelVerdict,
    ExponentThreeCase,
    ExponentThreeReport,
    InstanceList,
    WitnessTerm,
)
from engelkit.services import metrics
from engelkit.services.lie import (
    bracket_with_generator,
    doubled_lie_part,
    lie_coordinates,
    lyndon_bracket_text,
    lyndon_words,
)
from engelkit.services.magnus import TruncSeries, expand, series_mul, series_pow
from engelkit.services.parser import parse_word
from engelkit.services.words import (
    GeneratorContext,
    Word,
    commutator,
    conjugate,
    left_normed,
    reduced_words,
)
from engelkit.services.zlattice import IntMatrix, LatticeBasis, hnf

logger = logging.getLogger(__name__)

TOP_DEGREE = 4


def engel_context(n: int) -> GeneratorContext:
    return GeneratorContext.standard("x", n)


def engel_instance(w: Word, v: Word) -> Word:
    """[w, w^v]."""
    return commutator(w, conjugate(w, v))


def words_up_to(n: int, length: int, positive: bool = False) -> list[Word]:
    words: list[Word] = []
    for k in range(1, length + 1):
        words.extend(reduced_words(n, k, positive))
    return words


def engel_instances(n: int, depth: int) -> list[Word]:
    """All distinct nontrivial [w, w^v] with 1 <= |w|, |v| <= depth, in shortlex order of (w, v)."""
    if depth < 1:
        raise EngelError(f"depth must be at least 1, got {depth}")
    words = words_up_to(n, depth)
    seen: set[Word] = set()
    instances: list[Word] = []
    for w in words:
        for v in words:
            instance = engel_instance(w, v)
            if instance.is_identity or instance in seen:
                continue
            seen.add(instance)
            instances.append(instance)
    return instances


@dataclass(frozen=True)
class Stage:
    """Instances with w and v of length <= length, positive letters only when positive."""

    length: int
    positive: bool

    def __str__(self) -> str:
        return f"{'positive' if self.positive else 'all'} words of length <= {self.length}"


def stages_for(depth: int) -> list[Stage]:
    return [Stage(k, positive) for k in range(1, depth + 1) for positive in (True, False)]


@dataclass(frozen=True)
class RowLabel:
    """A conjugated instance instance^(x_conjugator); conjugator 0 means none."""

    instance: Word
    conjugator: int

    def word(self) -> Word:
        if not self.conjugator:
            return self.instance
        return conjugate(self.instance, Word.generator(self.conjugator))


class GradedPresentation:
    """Lyndon bases in degrees 1..4 and the Engel relation lattice in degrees 3 and 4."""

    def __init__(self, n: int):
        if n < 1:
            raise EngelError(f"need at least one generator, got {n}")
        self.n = n
        self.ctx = engel_context(n)
        self.bases = {d: lyndon_words(n, d) for d in range(1, TOP_DEGREE + 1)}
        self.split = len(self.bases[3])
        self.dim = self.split + len(self.bases[4])
        self.labels: list[RowLabel] = []
        self.stages: list[Stage] = []
        self._lattice = LatticeBasis(self.dim)
        self._snapshots: list[LatticeBasis] = []
        self._seen_instances: set[Word] = set()

    @classmethod
    def build(cls, n: int, depth: int) -> "GradedPresentation":
        presentation = cls(n)
        presentation.ensure_stages(len(stages_for(depth)))
        return presentation

    def basis_text(self, degree: int) -> list[str]:
        return [lyndon_bracket_text(word) for word in self.bases[degree]]

    def coordinates(self, series: TruncSeries) -> list[int]:
        """Lattice coordinates of an element of the third term."""
        for d in (1, 2):
            if series.homogeneous(d):
                raise EngelError(f"element has nonzero degree-{d} part")
        r3 = series.homogeneous(3)
        return lie_coordinates(r3, self.n, 3) + lie_coordinates(
            doubled_lie_part(r3, series.homogeneous(4)), self.n, 4
        )

    def _add_instance(self, instance: Word) -> None:
        series = expand(instance, TOP_DEGREE)
        r3 = series.homogeneous(3)
        r4 = series.homogeneous(4)
        c3 = lie_coordinates(r3, self.n, 3)
        for conjugator in range(self.n + 1):
            if conjugator:
                if not any(c3):
                    break
                shifted = dict(r4)
                for mono, coef in bracket_with_generator(r3, conjugator).items():
                    shifted[mono] = shifted.get(mono, 0) + coef
            else:
                shifted = r4
            vec = c3 + lie_coordinates(doubled_lie_part(r3, shifted), self.n, 4)
            self.labels.append(RowLabel(instance, conjugator))
            self._lattice.add(vec, len(self.labels) - 1)

    def ensure_stages(self, count: int) -> None:
        """Build stages until ``count`` of them exist."""
        plan = stages_for((count + 1) // 2)
        while len(self.stages) < count:
            stage = plan[len(self.stages)]
            started = time.perf_counter()
            words = words_up_to(self.n, stage.length, stage.positive)
            added = 0
            for w in words:
                for v in words:
                    instance = engel_instance(w, v)
                    if instance.is_identity or instance in self._seen_instances:
                        continue
                    self._seen_instances.add(instance)
                    self._add_instance(instance)
                    added += 1
            self.stages.append(stage)
            self._snapshots.append(self._lattice.copy())
            logger.info(
                f"Engel lattice n={self.n}: stage '{stage}' added {added} instances, "
                f"rank {self._lattice.rank}/{self.dim} in {time.perf_counter() - started:.2f}s"
            )

    def snapshot(self, index: int) -> LatticeBasis:
        self.ensure_stages(index + 1)
        return self._snapshots[index]

    def relation_hnf(self, degree: int, stage_index: Optional[int] = None) -> IntMatrix:
        """Hermite form of the degree-3 relation lattice or the degree-4 sublattice.

        Degree-4 rows are in the coordinates of 2 R4 + D(R3).
        """
        if degree not in (3, 4):
            return []
        index = len(self.stages) - 1 if stage_index is None else stage_index
        if index < 0:
            return []
        lattice = self.snapshot(index)
        if degree == 3:
            rows = [row[: self.split] for row, p in zip(lattice.rows, lattice.pivots) if p < self.split]
            width = self.split
        else:
            rows = [row[self.split:] for row, p in zip(lattice.rows, lattice.pivots) if p >= self.split]
            width = self.dim - self.split
        if not rows:
            return []
        H, _ = hnf(rows, width)
        return [row for row in H if any(row)]


def _factor_product(factors: list[CertificateFactor], ctx: GeneratorContext, degree: int) -> TruncSeries:
    total = TruncSeries.one(degree)
    cache: dict[tuple[str, str], TruncSeries] = {}
    for factor in factors:
        key = (factor.instance, factor.conjugator)
        if key not in cache:
            word = conjugate(parse_word(factor.instance, ctx), parse_word(factor.conjugator, ctx))
            cache[key] = expand(word, degree)
        total = series_mul(total, series_pow(cache[key], factor.exp))
    return total


def verify_certificate(certificate: EngelCertificate) -> bool:
    """Re-multiply a certificate from its texts and compare with the target at degree 4."""
    ctx = engel_context(certificate.n)
    target = expand(parse_word(certificate.target, ctx), TOP_DEGREE)
    return _factor_product(certificate.factors, ctx, TOP_DEGREE) == target


class EngelService:
    """Caches graded presentations and issues certificates."""

    def __init__(self):
        self._presentations: dict[int, GradedPresentation] = {}

    def presentation(self, n: int) -> GradedPresentation:
        if n not in self._presentations:
            self._presentations[n] = GradedPresentation(n)
        return self._presentations[n]

    def _certificate(self, target: Word, n: int, depth: int, stage: Optional[Stage], combo: dict[int, int]) -> EngelCertificate:
        presentation = self.presentation(n)
        ctx = presentation.ctx
        factors = []
        for index in sorted(combo):
            label = presentation.labels[index]
            conjugator = Word.generator(label.conjugator) if label.conjugator else Word.identity()
            factors.append(CertificateFactor(
                instance=label.instance.to_text(ctx),
                conjugator=conjugator.to_text(ctx),
                exp=combo[index],
            ))
        certificate = EngelCertificate(
            target=target.to_text(ctx),
            n=n,
            depth=depth,
            stage=str(stage) if stage else None,
            factors=factors,
        )
        if not verify_certificate(certificate):
            metrics.CERTIFICATES_ISSUED.labels(kind="engel", outcome="violation").inc()
            raise InvariantViolation(f"Engel certificate for {certificate.target} failed re-multiplication")
        certificate.verified = True
        certificate.transcript = [
            f"target {certificate.target} expanded at degree {TOP_DEGREE}",
            f"product of {len(factors)} conjugated instances expanded at degree {TOP_DEGREE}",
            "all coefficients agree",
        ]
        metrics.CERTIFICATES_ISSUED.labels(kind="engel", outcome="verified").inc()
        return certificate

    def certify(self, target: Word, n: int, depth: Optional[int] = None) -> Optional[EngelCertificate]:
        """Certificate for a target in the third lower central term, or None if the depth is insufficient."""
        depth = get_settings().depth if depth is None else depth
        if depth < 1:
            raise EngelError(f"depth must be at least 1, got {depth}")
        if target.max_generator() > n:
            raise EngelError(f"target uses generator {target.max_generator()} but n = {n}")
        series = expand(target, TOP_DEGREE)
        if series.is_one:
            return self._certificate(target, n, depth, None, {})
        presentation = self.presentation(n)
        vec = presentation.coordinates(series)
        for index, stage in enumerate(stages_for(depth)):
            combo = presentation.snapshot(index).express(vec)
            if combo is not None:
                return self._certificate(target, n, depth, stage, combo)
        metrics.CERTIFICATES_ISSUED.labels(kind="engel", outcome="insufficient").inc()
        logger.warning(f"No Engel certificate for {target.to_text(presentation.ctx)} at depth {depth}")
        return None

    def certify_class3(self, n: int, depth: Optional[int] = None) -> Class3Report:
        """Certificates for every left-normed [x_a, x_b, x_c, x_d]."""
        depth = get_settings().depth if depth is None else depth
        ctx = engel_context(n)
        gens = ctx.generators()
        certificates = []
        missing = []
        for indices in itertools.product(range(1, n + 1), repeat=4):
            target = left_normed([gens[i - 1] for i in indices])
            text = "[" + ",".join(ctx.name_of(i) for i in indices) + "]"
            certificate = self.certify(target, n, depth)
            if certificate is None:
                missing.append(text)
            else:
                certificate.target = text
                certificates.append(certificate)
        logger.info(f"Class-3 certificates n={n} depth={depth}: {len(certificates)} issued, {len(missing)} missing")
        return Class3Report(n=n, depth=depth, sufficient=not missing, certificates=certificates, missing=missing)

    def is_trivial_engel(self, w: Word, n: int, depth: Optional[int] = None) -> EngelCheckResult:
        depth = get_settings().depth if depth is None else depth
        presentation = self.presentation(n)
        ctx = presentation.ctx
        text = w.to_text(ctx)
        series = expand(w, TOP_DEGREE)
        for d in (1, 2):
            part = series.homogeneous(d)
            if part:
                witness = [
                    WitnessTerm(basis="".join(f"X{g}" for g in mono), coefficient=coef)
                    for mono, coef in sorted(part.items())
                ]
                return EngelCheckResult(
                    word=text, n=n, depth=depth, verdict=EngelVerdict.NONTRIVIAL, degree=d, witness=witness
                )

        certificate = self.certify(w, n, depth)
        if certificate is not None:
            return EngelCheckResult(
                word=text, n=n, depth=depth, verdict=EngelVerdict.CERTIFIED_TRIVIAL, certificate=certificate
            )

        # The degree-3 relation lattice is complete once positive words of length 2 are in.
        if depth >= 2:
            vec = presentation.coordinates(series)
            lattice = presentation.snapshot(len(stages_for(depth)) - 1)
            residual = lattice.residual(vec, upto=presentation.split)[: presentation.split]
            if any(residual):
                names = presentation.basis_text(3)
                witness = [
                    WitnessTerm(basis=names[i], coefficient=c) for i, c in enumerate(residual) if c
                ]
                return EngelCheckResult(
                    word=text, n=n, depth=depth, verdict=EngelVerdict.NONTRIVIAL, degree=3, witness=witness
                )
        return EngelCheckResult(word=text, n=n, depth=depth, verdict=EngelVerdict.UNKNOWN)

    def minimal_depth(self, w: Word, n: int, max_depth: Optional[int] = None) -> Optional[int]:
        """Smallest depth at which a certificate exists, searched up to max_depth."""
        max_depth = get_settings().max_depth if max_depth is None else max_depth
        for depth in range(1, max_depth + 1):
            if self.certify(w, n, depth) is not None:
                return depth
        return None

    def exponent_three_check(self, n: int) -> ExponentThreeReport:
        """Three times every degree-3 Lyndon bracket lies in the degree-3 relation lattice."""
        presentation = self.presentation(n)
        lattice = presentation.snapshot(len(stages_for(2)) - 2)
        cases = []
        for i, name in enumerate(presentation.basis_text(3)):
            vec = [0] * presentation.dim
            vec[i] = 3
            residual = lattice.residual(vec, upto=presentation.split)[: presentation.split]
            cases.append(ExponentThreeCase(basis=name, in_lattice=not any(residual)))
        return ExponentThreeReport(n=n, cases=cases)

    def instance_list(self, n: int, depth: int) -> InstanceList:
        ctx = engel_context(n)
        instances = [w.to_text(ctx) for w in engel_instances(n, depth)]
        return InstanceList(n=n, depth=depth, count=len(instances), instances=instances)


# Global instance
engel_service = EngelService()
