import logging
import sys
from typing import Optional

import click

from engelkit.cli.common import CliState, EngelkitGroup
from engelkit.cli.decomp import decompose_command
from engelkit.cli.engel import engel_group
from engelkit.cli.links import link_group
from engelkit.cli.milnor import milnor_group
from engelkit.cli.reproduce import reproduce_command
from engelkit.cli.slides import slide_command, wndl_command
from engelkit.cli.words import magnus_command, word_command
from engelkit.config import get_settings
from engelkit.services import metrics

settings = get_settings()

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


@click.group(cls=EngelkitGroup)
@click.option("--json", "json_output", is_flag=True, help="Emit versioned JSON documents instead of text.")
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Log level for stderr; defaults to ENGELKIT_LOG_LEVEL.")
@click.version_option(settings.app_version, prog_name=settings.app_name)
@click.pass_context
def cli(ctx: click.Context, json_output: bool, log_level: Optional[str]) -> None:
    """Free Milnor groups, 2-Engel certificates, link homotopy and handle slides."""
    logging.basicConfig(
        level=(log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    ctx.obj = CliState(json_output=json_output, indent=settings.json_indent)
    ctx.call_on_close(lambda: metrics.export(settings.metrics_textfile))


# Register commands
cli.add_command(word_command)
cli.add_command(magnus_command)
cli.add_command(milnor_group)
cli.add_command(engel_group)
cli.add_command(decompose_command)
cli.add_command(link_group)
cli.add_command(slide_command)
cli.add_command(wndl_command)
cli.add_command(reproduce_command)
cli.add_command(reproduce_command, "reproduce")


def main() -> None:
    cli(prog_name=settings.app_name)


if __name__ == "__main__":
    main()
