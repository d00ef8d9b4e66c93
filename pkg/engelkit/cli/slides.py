from typing import Optional

import click

from engelkit.cli.common import emit, finish, parse_argument
from engelkit.services.slides import run_script, wndl_check


@click.command("slide")
@click.option("--script", "script", type=click.File("r"), required=True, help="Slide script, - for stdin.")
@click.pass_context
def slide_command(ctx: click.Context, script) -> None:
    """Run a slide script and print its reports."""
    result = run_script(script.read())
    lines = [f"{result.slides} slides applied"]
    for report in result.reports:
        lines.append(f"line {report.line}: h-trivial={str(report.h_trivial).lower()}")
        lines.extend(f"  {c.name} [{c.role.value}]: {c.word}" for c in report.state.curves)
        if report.state.dotted:
            lines.append(f"  dotted: {', '.join(report.state.dotted)}")
        if report.split_curves:
            lines.append(f"  split: {', '.join(report.split_curves)}")
        lines.append(f"  note: {report.note}")
    emit(ctx, result, "\n".join(lines))


@click.command("wndl")
@click.option("--gamma", "gamma_text", required=True, help="Boundary word.")
@click.option("--n", "n", type=int, default=None, help="Number of generators.")
@click.pass_context
def wndl_command(ctx: click.Context, gamma_text: str, n: Optional[int]) -> None:
    """Check the hypotheses of the weak null disk lemma for a boundary word."""
    gamma, gens = parse_argument(gamma_text, n)
    result = wndl_check(gamma, gens.size)
    text = (
        f"free_trivial={str(result.free_trivial).lower()} "
        f"milnor_trivial={str(result.milnor_trivial).lower()}"
    )
    emit(ctx, result, text)
    finish(ctx, result.instance)
