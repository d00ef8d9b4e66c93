from typing import Optional

import click

from engelkit.cli.common import emit, parse_indices
from engelkit.models.links import FamilySweep
from engelkit.services.families import FamilySpec, SweepEntry, family_report, family_sweep
from engelkit.services.link_dsl import build_text
from engelkit.services.links import link_classifier, mu_bar


@click.group("link")
def link_group() -> None:
    """Word-level link models and link-homotopy classification."""


@link_group.command("build")
@click.argument("expression")
@click.pass_context
def build_command(ctx: click.Context, expression: str) -> None:
    """Build a link model from a construction expression."""
    dump = build_text(expression).to_model()
    lines = [f"{c.meridian}: {c.longitude}" for c in dump.components]
    emit(ctx, dump, "\n".join([dump.provenance] + lines))


@link_group.command("classify")
@click.argument("expression")
@click.pass_context
def classify_command(ctx: click.Context, expression: str) -> None:
    """Classify a link as h-essential, h-trivial-not-plus or h-trivial-plus."""
    report = link_classifier.report(build_text(expression))
    emit(ctx, report, report.classification.value)


@link_group.command("mu")
@click.argument("expression")
@click.option("--index", "index_text", required=True, help="Distinct component indices, e.g. 1,2,3.")
@click.pass_context
def mu_command(ctx: click.Context, expression: str, index_text: str) -> None:
    """Distinct-index Milnor invariant; the last index names the longitude."""
    value = mu_bar(build_text(expression), parse_indices(index_text))
    emit(ctx, value, f"{value.value}{'' if value.valid else ' (not yet well defined)'}")


def _step(text: str) -> tuple[int, int]:
    component, _, ramification = text.partition(":")
    try:
        return int(component), int(ramification or 1)
    except ValueError:
        raise click.BadParameter(f"expected component[:ramification], got {text!r}") from None


@link_group.command("family")
@click.option("--seed", type=click.Choice(["hopf", "wh"]), default=None, help="Seed link; omit to run the sweep.")
@click.option("--step", "steps", multiple=True, help="Bing step component[:ramification], repeatable.")
@click.option("--seed-ramification", type=click.IntRange(min=1), default=1)
@click.option("--wh-ramification", type=click.IntRange(min=1), default=1)
@click.option("--sign", "signs", type=click.Choice(["+", "-"]), multiple=True, help="Whitehead sign per component.")
@click.pass_context
def family_command(
    ctx: click.Context,
    seed: Optional[str],
    steps: tuple[str, ...],
    seed_ramification: int,
    wh_ramification: int,
    signs: tuple[str, ...],
) -> None:
    """Generate members of the Wh(Bing(Hopf)) and Wh(Bing(Wh)) families."""
    if seed is None:
        entries = family_sweep()
    else:
        spec = FamilySpec(
            seed=seed,
            bing_steps=tuple(_step(s) for s in steps),
            seed_ramification=seed_ramification,
            whitehead_ramification=wh_ramification,
            signs=tuple(1 if s == "+" else -1 for s in signs) or None,
        )
        entries = [SweepEntry(spec.describe(), spec)]
    sweep = FamilySweep(members=[family_report(entry) for entry in entries])
    lines = [
        f"{m.name}: companion {m.companion.classification.value}, "
        f"{m.member_components} components, linking numbers zero: {m.member_linking_numbers_zero}"
        for m in sweep.members
    ]
    emit(ctx, sweep, "\n".join(lines))
