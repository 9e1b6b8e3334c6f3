"""Command-line entry point.

    python cli.py resolve --input catalog:band2x2-one --length 3
    python cli.py transfer --construction cs-descend --input catalog:rees-z2-normal --length 2

Exit codes: 0 every verification passed, 1 a verification failed (the report
is still written), 2 unreadable input, 3 any other algebraic error.
"""
import logging
import sys
from typing import Optional, Tuple

import click
from pydantic import ValidationError

from algebra.errors import AlgebraError, ParseError, UnknownCatalogEntry
from models.schema import RunConfig
from runner import run
from toolkit_config import settings

EXIT_OK, EXIT_FAILED, EXIT_BAD_INPUT, EXIT_ERROR = 0, 1, 2, 3

COMMANDS = ("analyze", "resolve", "transfer", "fp1", "pipeline", "semilattice", "bi")
CONSTRUCTIONS = ("phi", "ideal", "cs-descend", "left-group", "pipeline")


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def invoke(command: str, inputs: Tuple[str, ...], length: Optional[int], construction: Optional[str],
           out: Optional[str], fmt: str, cap: Optional[int], use_opposite: bool) -> int:
    try:
        config = RunConfig(
            command=command, inputs=list(inputs),
            length=settings.default_length if length is None else length,
            construction=construction, out=out, format=fmt,
            cap=settings.search_cap if cap is None else cap, opposite=use_opposite,
        )
    except ValidationError as e:
        click.echo(f"error: {e.errors()[0]['msg']}", err=True)
        return EXIT_BAD_INPUT
    try:
        outcome = run(config)
    except (ParseError, UnknownCatalogEntry) as e:
        click.echo(f"error: {e.message}", err=True)
        return EXIT_BAD_INPUT
    except AlgebraError as e:
        click.echo(f"error [{e.code}]: {e.message}", err=True)
        return EXIT_ERROR
    if not out:
        click.echo(outcome.output, nl=False)
    return outcome.exit_code


def command_options(fn):
    options = [
        click.option("--input", "inputs", multiple=True, required=True,
                     help="spec file or catalog:<name>; repeatable"),
        click.option("--length", type=int, default=None, help="resolution length budget"),
        click.option("--out", type=click.Path(dir_okay=False), default=None, help="report file"),
        click.option("--format", "fmt", type=click.Choice(["json", "text", "dot"]), default="json"),
        click.option("--cap", type=int, default=None, help="subset search cap"),
        click.option("--opposite", "use_opposite", is_flag=True, help="run on the opposite semigroup"),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


@click.group()
@click.option("--verbose", is_flag=True, help="debug logging")
def cli(verbose: bool) -> None:
    """Finite semigroup resolutions and their transfer constructions."""
    configure_logging(verbose)


def _make(name: str):
    @command_options
    def handler(inputs, length, out, fmt, cap, use_opposite):
        sys.exit(invoke(name, inputs, length, None, out, fmt, cap, use_opposite))

    handler.__doc__ = f"Run {name} on each input."
    return cli.command(name)(handler)


for _name in COMMANDS:
    if _name != "transfer":
        _make(_name)


@cli.command("transfer")
@click.option("--construction", type=click.Choice(CONSTRUCTIONS), required=True)
@command_options
def transfer_command(construction, inputs, length, out, fmt, cap, use_opposite):
    """Run one transfer construction on each input."""
    sys.exit(invoke("transfer", inputs, length, construction, out, fmt, cap, use_opposite))


if __name__ == "__main__":
    cli()
