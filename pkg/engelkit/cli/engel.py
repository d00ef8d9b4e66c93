from typing import Optional

import click

from engelkit.cli.common import emit, finish, parse_argument
from engelkit.config import get_settings
from engelkit.models.engel import EngelCheckResult, EngelVerdict, MinimalDepth
from engelkit.services.engel import engel_context, engel_service
from engelkit.services.words import Word


def _target(text: str, n: int) -> Word:
    word, _ = parse_argument(text, n)
    return word


@click.group("engel")
def engel_group() -> None:
    """Certificates in the free 2-Engel group modulo its fifth lower central term."""


@engel_group.command("certify")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Number of generators.")
@click.option("--depth", type=click.IntRange(min=1), default=None, help="Instance enumeration depth.")
@click.option("--word", "text", default=None, help="Certify one target instead of every 4-fold commutator.")
@click.pass_context
def certify_command(ctx: click.Context, n: int, depth: Optional[int], text: Optional[str]) -> None:
    """Write 4-fold commutators as products of conjugated Engel instances."""
    depth = get_settings().depth if depth is None else depth
    if text is not None:
        target = _target(text, n)
        certificate = engel_service.certify(target, n, depth)
        if certificate is None:
            result = EngelCheckResult(
                word=target.to_text(engel_context(n)), n=n, depth=depth, verdict=EngelVerdict.UNKNOWN
            )
            emit(ctx, result, f"no certificate at depth {depth}")
            finish(ctx, False)
        lines = [f"{f.instance} ^ {f.conjugator} ^ {f.exp}" for f in certificate.factors]
        emit(ctx, certificate, "\n".join([f"certified {certificate.target} ({certificate.stage})"] + lines))
        finish(ctx, True)

    report = engel_service.certify_class3(n, depth)
    lines = [f"{c.target}: {len(c.factors)} factors, stage {c.stage}" for c in report.certificates]
    lines += [f"{target}: no certificate" for target in report.missing]
    emit(ctx, report, "\n".join(lines))
    finish(ctx, report.sufficient)


@engel_group.command("check")
@click.argument("text")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Number of generators.")
@click.option("--depth", type=click.IntRange(min=1), default=None, help="Instance enumeration depth.")
@click.pass_context
def check_command(ctx: click.Context, text: str, n: int, depth: Optional[int]) -> None:
    """Decide triviality in the free 2-Engel group modulo the fifth term."""
    result = engel_service.is_trivial_engel(_target(text, n), n, depth)
    lines = [result.verdict.value]
    lines += [f"  {term.basis}: {term.coefficient}" for term in result.witness]
    emit(ctx, result, "\n".join(lines))
    finish(ctx, result.verdict == EngelVerdict.CERTIFIED_TRIVIAL)


@engel_group.command("instances")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Number of generators.")
@click.option("--depth", type=click.IntRange(min=1), default=None, help="Maximum word length.")
@click.pass_context
def instances_command(ctx: click.Context, n: int, depth: Optional[int]) -> None:
    """List the distinct Engel relator instances [w, w^v]."""
    depth = get_settings().depth if depth is None else depth
    listing = engel_service.instance_list(n, depth)
    emit(ctx, listing, "\n".join(listing.instances))


@engel_group.command("min-depth")
@click.argument("text")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Number of generators.")
@click.option("--max-depth", type=click.IntRange(min=1), default=None, help="Largest depth to try.")
@click.pass_context
def min_depth_command(ctx: click.Context, text: str, n: int, max_depth: Optional[int]) -> None:
    """Smallest enumeration depth that certifies a target."""
    max_depth = get_settings().max_depth if max_depth is None else max_depth
    target = _target(text, n)
    depth = engel_service.minimal_depth(target, n, max_depth)
    result = MinimalDepth(word=target.to_text(engel_context(n)), n=n, max_depth=max_depth, depth=depth)
    emit(ctx, result, str(depth) if depth is not None else f"none up to {max_depth}")
    finish(ctx, depth is not None)


@engel_group.command("exponent-three")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Number of generators.")
@click.pass_context
def exponent_three_command(ctx: click.Context, n: int) -> None:
    """Check that three times each degree-3 bracket is a relation."""
    report = engel_service.exponent_three_check(n)
    lines = [f"{case.basis}: {'yes' if case.in_lattice else 'no'}" for case in report.cases]
    emit(ctx, report, "\n".join(lines))
    finish(ctx, report.passed)
