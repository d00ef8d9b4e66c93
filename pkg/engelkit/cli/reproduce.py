import click

from engelkit.cli.common import emit, finish
from engelkit.services.reproduce import CRITERIA, reproduction_service


@click.command("reproduce-paper")
@click.option(
    "--only",
    "only",
    type=click.IntRange(1, len(CRITERIA)),
    multiple=True,
    help="Run only the given criterion numbers (repeatable).",
)
@click.pass_context
def reproduce_command(ctx: click.Context, only: tuple[int, ...]) -> None:
    """Run every acceptance check and print a pass/fail table."""
    report = reproduction_service.run(only or None)
    width = max(len(r.name) for r in report.criteria)
    lines = [
        f"{r.number:>2}  {r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.seconds:7.2f}s  {r.detail}"
        for r in report.criteria
    ]
    emit(ctx, report, "\n".join(lines))
    finish(ctx, report.passed)
