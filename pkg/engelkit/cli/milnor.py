from typing import Optional

import click

from engelkit.cli.common import emit, finish, parse_argument
from engelkit.errors import UnknownGeneratorError
from engelkit.models.milnor import EqualityResult, TrivialityResult
from engelkit.services.magnus import lowest_degree
from engelkit.services.milnor import equal_mf, milnor_class_probe, milnor_image
from engelkit.services.parser import evaluate, names_in, parse_expr
from engelkit.services.words import infer_context


@click.group("milnor")
def milnor_group() -> None:
    """Word problems in the free Milnor group."""


@milnor_group.command("trivial")
@click.argument("text")
@click.option("--n", "n", type=int, default=None, help="Number of generators.")
@click.pass_context
def trivial_command(ctx: click.Context, text: str, n: Optional[int]) -> None:
    """Decide whether a word is trivial in the free Milnor group."""
    word, gens = parse_argument(text, n)
    image = milnor_image(word, gens.size)
    result = TrivialityResult(
        word=word.to_text(gens),
        n=gens.size,
        trivial=image.is_one,
        lowest_degree=lowest_degree(image),
    )
    emit(ctx, result, "trivial" if result.trivial else f"nontrivial (degree {result.lowest_degree})")
    finish(ctx, result.trivial)


@milnor_group.command("equal")
@click.argument("left")
@click.argument("right")
@click.option("--n", "n", type=int, default=None, help="Number of generators.")
@click.pass_context
def equal_command(ctx: click.Context, left: str, right: str, n: Optional[int]) -> None:
    """Decide whether two words are equal in the free Milnor group."""
    u_expr, v_expr = parse_expr(left), parse_expr(right)
    try:
        gens = infer_context(list(dict.fromkeys(names_in(u_expr) + names_in(v_expr))), n)
    except UnknownGeneratorError as exc:
        raise click.BadParameter(str(exc)) from None
    u, v = evaluate(u_expr, gens), evaluate(v_expr, gens)
    result = EqualityResult(left=u.to_text(gens), right=v.to_text(gens), n=gens.size, equal=equal_mf(u, v, gens.size))
    emit(ctx, result, "equal" if result.equal else "different")
    finish(ctx, result.equal)


@milnor_group.command("probe")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Number of generators.")
@click.option("--samples", type=int, default=None, help="Sample size above n = 3.")
@click.option("--seed", type=int, default=None, help="Sampling seed.")
@click.pass_context
def probe_command(ctx: click.Context, n: int, samples: Optional[int], seed: Optional[int]) -> None:
    """Check that the free Milnor group on n generators has class n."""
    report = milnor_class_probe(n, samples, seed)
    text = (
        f"witness {report.witness}: coefficient {report.witness_coefficient}\n"
        f"{report.checked} commutators of length {n + 1} checked"
        f"{' (exhaustive)' if report.exhaustive else ''}: "
        f"{'all trivial' if report.all_trivial else ', '.join(report.failures)}"
    )
    emit(ctx, report, text)
    finish(ctx, report.passed)
