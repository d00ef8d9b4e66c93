from typing import Optional

import click

from engelkit.cli.common import emit, parse_argument
from engelkit.models.series import WordDump
from engelkit.services.magnus import expand, reduced_expand


@click.command("word")
@click.argument("text")
@click.option("--n", "n", type=int, default=None, help="Pad the generator context to n generators.")
@click.pass_context
def word_command(ctx: click.Context, text: str, n: Optional[int]) -> None:
    """Parse a word expression and print its free reduction."""
    word, gens = parse_argument(text, n)
    dump = WordDump(word=word.to_text(gens), length=len(word), generators=list(gens.names))
    emit(ctx, dump, dump.word)


@click.command("magnus")
@click.argument("text")
@click.option("--degree", "-d", type=click.IntRange(min=1), required=True, help="Truncation degree.")
@click.option("--reduced", is_flag=True, help="Delete monomials with repeated indices.")
@click.option("--n", "n", type=int, default=None, help="Number of generators.")
@click.pass_context
def magnus_command(ctx: click.Context, text: str, degree: int, reduced: bool, n: Optional[int]) -> None:
    """Print the truncated Magnus expansion of a word."""
    word, gens = parse_argument(text, n)
    if reduced:
        series = reduced_expand(word, gens.size, max_degree=degree)
    else:
        series = expand(word, degree)
    emit(ctx, series.to_model(), series.to_text())
