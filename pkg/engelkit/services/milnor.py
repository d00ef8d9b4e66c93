"""Word problems in the free Milnor group.

Equality in the free Milnor group on n generators is decided by equality of
reduced Magnus expansions. A "trivial" answer is a statement about that
representation; a "nontrivial" answer is exact in the Milnor group itself.
"""
import itertools
import logging
import random
from dataclasses import dataclass
from typing import Optional

from engelkit.config import get_settings
from engelkit.errors import UnknownGeneratorError
from engelkit.models.milnor import ProbeCase, ClassProbeReport
from engelkit.services.magnus import ReducedSeries, coefficient, reduced_expand
from engelkit.services.words import GeneratorContext, Word, invert, left_normed, multiply

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MilnorContext:
    """Generator count plus display names for the free Milnor group."""

    n: int
    generators: GeneratorContext

    @classmethod
    def standard(cls, n: int, prefix: str = "m") -> "MilnorContext":
        if n < 1:
            raise UnknownGeneratorError(f"Milnor context needs n >= 1, got {n}")
        return cls(n, GeneratorContext.standard(prefix, n))


def milnor_image(w: Word, n: int) -> ReducedSeries:
    """Raw reduced expansion backing every decision in this module."""
    if w.max_generator() > n:
        raise UnknownGeneratorError(f"word uses generator {w.max_generator()} but n = {n}")
    return reduced_expand(w, n)


def is_trivial_mf(w: Word, n: int) -> bool:
    return milnor_image(w, n).is_one


def equal_mf(u: Word, v: Word, n: int) -> bool:
    return is_trivial_mf(multiply(u, invert(v)), n)


def _commutator_text(indices: tuple[int, ...], ctx: GeneratorContext) -> str:
    names = [ctx.name_of(i) for i in indices]
    return names[0] if len(names) == 1 else "[" + ",".join(names) + "]"


def milnor_class_probe(n: int, samples: Optional[int] = None, seed: Optional[int] = None) -> ClassProbeReport:
    """Check that the free Milnor group on n generators has class exactly n.

    The n-fold commutator of distinct generators must survive; (n+1)-fold
    left-normed generator commutators must die. These are enumerated
    exhaustively for n <= 3 and sampled with a fixed seed above.
    """
    settings = get_settings()
    ctx = MilnorContext.standard(n).generators
    gens = ctx.generators()

    witness_indices = tuple(range(1, n + 1))
    witness = left_normed([gens[i - 1] for i in witness_indices])
    witness_coef = coefficient(milnor_image(witness, n), witness_indices)

    all_sequences = itertools.product(range(1, n + 1), repeat=n + 1)
    exhaustive = n <= 3
    if exhaustive:
        sequences = list(all_sequences)
    else:
        rng = random.Random(settings.probe_seed if seed is None else seed)
        count = settings.probe_samples if samples is None else samples
        sequences = [tuple(rng.randint(1, n) for _ in range(n + 1)) for _ in range(count)]

    cases = []
    for indices in sequences:
        word = left_normed([gens[i - 1] for i in indices])
        cases.append(ProbeCase(commutator=_commutator_text(indices, ctx), trivial=is_trivial_mf(word, n)))

    report = ClassProbeReport(
        n=n,
        witness=_commutator_text(witness_indices, ctx),
        witness_coefficient=witness_coef,
        witness_nontrivial=witness_coef != 0,
        exhaustive=exhaustive,
        checked=len(cases),
        all_trivial=all(case.trivial for case in cases),
        failures=[case.commutator for case in cases if not case.trivial],
    )
    logger.info(
        f"Class probe n={n}: witness coefficient {witness_coef}, "
        f"{report.checked} commutators checked, all trivial={report.all_trivial}"
    )
    return report
