import logging
from dataclasses import dataclass
from typing import Optional

import click
from pydantic import BaseModel

from engelkit.errors import EngelkitError, InvariantViolation, UnknownGeneratorError
from engelkit.models import VersionedModel
from engelkit.services.parser import parse_with_context
from engelkit.services.words import GeneratorContext, Word

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3


@dataclass
class CliState:
    """Options shared by every command."""

    json_output: bool = False
    indent: Optional[int] = None


class EngelkitGroup(click.Group):
    """Click group that turns domain errors into exit codes."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except InvariantViolation as exc:
            logger.error(f"Internal check failed: {exc}")
            click.echo(f"{exc.module}: internal check failed: {exc}", err=True)
            ctx.exit(EXIT_INVARIANT)
        except EngelkitError as exc:
            click.echo(f"{exc.module}: {exc}", err=True)
            ctx.exit(EXIT_USAGE)


def state(ctx: click.Context) -> CliState:
    return ctx.find_object(CliState) or CliState()


def emit(ctx: click.Context, model: BaseModel, text: str) -> None:
    """Print JSON when --json is set, the text rendering otherwise."""
    options = state(ctx)
    if options.json_output:
        if isinstance(model, VersionedModel):
            click.echo(model.to_json(options.indent))
        else:
            click.echo(model.model_dump_json(indent=options.indent))
    else:
        click.echo(text)


def finish(ctx: click.Context, positive: bool) -> None:
    """Exit 0 for a true or successful answer and 1 for a negative one."""
    ctx.exit(EXIT_OK if positive else EXIT_NEGATIVE)


def parse_indices(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None


def parse_argument(text: str, n: Optional[int]) -> tuple[Word, GeneratorContext]:
    """Parse a word argument; generators beyond --n are a bad parameter."""
    try:
        return parse_with_context(text, n)
    except UnknownGeneratorError as exc:
        raise click.BadParameter(str(exc)) from None
