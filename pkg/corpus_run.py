"""Run the acceptance suite over the built-in catalog plus a directory of spec files.

    python corpus_run.py specs/ --out summary.json
"""
import logging
import os
from typing import List, Optional, Tuple

import click
from pydantic import ValidationError

from algebra import catalog
from algebra.errors import AlgebraError
from algebra.formats import corpus_table, dump_json
from algebra.semigroup import is_completely_simple, monoid_completion
from models.schema import CaseResult, CorpusSummary, SemilatticeSpec
from runner import Loaded, execute, load, passed, write_atomic
from toolkit_config import settings

logger = logging.getLogger(__name__)

SPEC_EXTENSIONS = (".txt", ".tbl", ".json", ".rees", ".ssl")


def commands_for(item: Loaded) -> List[str]:
    """The command suite appropriate to an input's kind."""
    commands = ["analyze", "resolve"]
    if monoid_completion(item.semigroup).order <= settings.search_cap:
        commands.append("fp1")
    if is_completely_simple(item.semigroup):
        commands.append("pipeline")
    if isinstance(item.spec, SemilatticeSpec):
        commands.append("semilattice")
    return commands


def run_case(item: Loaded, command: str, length: int) -> CaseResult:
    case = f"{item.name}/{command}"
    try:
        report = execute(command, item, length, settings.search_cap)
    except AlgebraError as e:
        logger.warning("%s raised %s", case, e.code)
        return CaseResult(name=item.name, command=command, passed=False, error=f"{e.code}: {e.message}")
    return CaseResult(name=item.name, command=command, passed=passed(report))


def corpus_refs(directory: Optional[str]) -> List[Tuple[str, str]]:
    """(case name, reference) pairs: catalog entries first, then directory files."""
    refs = [(f"catalog:{name}", f"{catalog.CATALOG_PREFIX}{name}") for name in catalog.catalog_names()]
    if directory:
        for entry in sorted(os.listdir(directory)):
            path = os.path.join(directory, entry)
            if os.path.isfile(path) and entry.endswith(SPEC_EXTENSIONS) and entry != "catalog.json":
                refs.append((entry, path))
    return refs


def corpus_run(directory: Optional[str] = None, length: int = 2) -> CorpusSummary:
    cases: List[CaseResult] = []
    for name, ref in corpus_refs(directory):
        try:
            item = load(ref)
        except (AlgebraError, ValidationError) as e:
            error = f"{e.code}: {e.message}" if isinstance(e, AlgebraError) else str(e.errors()[0]["msg"])
            cases.append(CaseResult(name=name, command="load", passed=False, error=error))
            continue
        item = Loaded(name, item.spec, item.semigroup)
        for command in commands_for(item):
            cases.append(run_case(item, command, length))
    cases.sort(key=lambda c: (c.name, c.command))
    ok = sum(c.passed for c in cases)
    summary = CorpusSummary(cases=cases, total=len(cases), passed=ok, failed=len(cases) - ok)
    logger.info("corpus: %d of %d cases passed", ok, len(cases))
    return summary


@click.command()
@click.argument("directory", required=False, type=click.Path(exists=True, file_okay=False))
@click.option("--length", type=int, default=2, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@click.option("--verbose", is_flag=True)
def main(directory: Optional[str], length: int, out: Optional[str], fmt: str, verbose: bool) -> None:
    """Exit status is 0 only when every case passes."""
    logging.basicConfig(level=logging.DEBUG if verbose else getattr(logging, settings.log_level),
                        format="%(levelname)s %(name)s: %(message)s")
    summary = corpus_run(directory, length)
    text = dump_json(summary) if fmt == "json" else corpus_table(summary) + "\n"
    if out:
        write_atomic(out, text)
    else:
        click.echo(text, nl=False)
    raise SystemExit(0 if summary.failed == 0 else 1)


if __name__ == "__main__":
    main()
