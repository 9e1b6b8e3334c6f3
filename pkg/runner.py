"""Command implementations shared by the CLI, the HTTP routers and the corpus driver."""
import logging
import os
import tempfile
from dataclasses import dataclass
from typing import Dict, List, Optional

from pydantic import BaseModel

from algebra import catalog
from algebra.errors import HypothesisViolation, VerificationFailed
from algebra.formats import (
    cayley_dot,
    dump_json,
    eggbox_dot,
    report_text,
    semigroup_from_input,
    semilattice_from_spec,
)
from algebra.fp1 import bi_fp_report, fp1_report, semilattice_fp_report
from algebra.rees import StrongSemilatticeData
from algebra.resolution import standard_resolution, summarize
from algebra.semigroup import (
    FiniteSemigroup,
    green_classes,
    idempotents,
    is_clifford,
    is_completely_simple,
    is_group,
    is_regular,
    is_simple,
    minimal_ideal,
    monoid_completion,
    opposite,
    subsemigroup,
    zero_element,
)
from algebra.transfer import (
    completely_simple_pipeline,
    cs_descend,
    decomposition_context,
    ideal_identity,
    ideal_lift,
    left_group_context,
    left_group_lift,
    maximal_subgroup_restrict,
)
from models.schema import (
    AnalysisReport,
    GreenClassesModel,
    InputSpec,
    RunConfig,
    SemilatticeSpec,
)
from toolkit_config import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Loaded:
    name: str
    spec: InputSpec
    semigroup: FiniteSemigroup
    opposite: bool = False


def load_spec(spec: InputSpec, name: str, use_opposite: bool = False) -> Loaded:
    S = semigroup_from_input(spec)
    return Loaded(name, spec, opposite(S) if use_opposite else S, use_opposite)


def load(ref: str, use_opposite: bool = False) -> Loaded:
    """``catalog:<name>`` or a path; the name is the entry name or file stem."""
    spec = catalog.resolve_ref(ref)
    if catalog.is_catalog_ref(ref):
        name = ref[len(catalog.CATALOG_PREFIX):]
    else:
        name = os.path.splitext(os.path.basename(ref))[0]
    return load_spec(spec, name, use_opposite)


# === Commands ===

def analyze(S: FiniteSemigroup) -> AnalysisReport:
    green = green_classes(S)
    J = minimal_ideal(S)
    zero = zero_element(S)

    def named(classes):
        return [S.names_of(c) for c in classes]

    return AnalysisReport(
        order=S.order,
        identity=S.name(S.identity) if S.identity is not None else None,
        zero=S.name(zero) if zero is not None else None,
        idempotents=S.names_of(sorted(idempotents(S))),
        is_group=is_group(S), is_simple=is_simple(S),
        is_completely_simple=is_completely_simple(S),
        is_regular=is_regular(S), is_clifford=is_clifford(S),
        r_class_count=len(green.r_classes), l_class_count=len(green.l_classes),
        h_class_count=len(green.h_classes), d_class_count=len(green.d_classes),
        minimal_ideal=S.names_of(sorted(J)),
        minimal_ideal_completely_simple=is_completely_simple(subsemigroup(S, J)[0]),
        green=GreenClassesModel(
            r_classes=named(green.r_classes), l_classes=named(green.l_classes),
            h_classes=named(green.h_classes), d_classes=named(green.d_classes),
            group_h_classes=list(green.group_flags),
        ),
    )


def resolve(S: FiniteSemigroup, n: int, name: str) -> BaseModel:
    return summarize(standard_resolution(monoid_completion(S), n), name)


def transfer(S: FiniteSemigroup, n: int, construction: str, name: str) -> BaseModel:
    """Run one construction; its report (or the failing report) is returned."""
    samples, seed = settings.samples, settings.seed
    if construction == "pipeline":
        return completely_simple_pipeline(S, n, samples=samples, seed=seed, name=name)
    if construction == "cs-descend":
        ctx = decomposition_context(S)
        res = standard_resolution(ctx.S, n, generator_scalars=ctx.T)
        return cs_descend(res, ctx, samples=samples, seed=seed).report
    if construction == "left-group":
        ctx = left_group_context(S)
        return left_group_lift(standard_resolution(ctx.S, n, scalars=ctx.H), ctx).report
    M = monoid_completion(S)
    J = sorted(minimal_ideal(M))
    if construction == "phi":
        e = min(x for x in J if M.mul(x, x) == x)
        return maximal_subgroup_restrict(standard_resolution(M, n), M, e).report
    if construction == "ideal":
        ideal_identity(M, J)
        return ideal_lift(standard_resolution(M, n, scalars=J), M, J).report
    raise HypothesisViolation("construction", f"unknown construction {construction}")


def fp1(S: FiniteSemigroup, cap: int, name: str) -> BaseModel:
    return fp1_report(S, cap, name=name, order_cap=settings.search_cap)


def pipeline(S: FiniteSemigroup, n: int, name: str) -> BaseModel:
    return transfer(S, n, "pipeline", name)


def semilattice_data(loaded: Loaded) -> StrongSemilatticeData:
    if not isinstance(loaded.spec, SemilatticeSpec):
        raise HypothesisViolation("input-kind", f"{loaded.name} is not a semilattice spec")
    data = semilattice_from_spec(loaded.spec)
    if loaded.opposite:
        components = {a: opposite(C) for a, C in data.components.items()}
        data = StrongSemilatticeData(data.indices, data.order, components, data.homs)
    return data


def semilattice(loaded: Loaded, n: int) -> BaseModel:
    return semilattice_fp_report(semilattice_data(loaded), n)


def bi(S: FiniteSemigroup, n: int, cap: int, name: str) -> BaseModel:
    return bi_fp_report(S, n, cap, name=name, order_cap=settings.search_cap)


def execute(command: str, loaded: Loaded, length: int, cap: int,
            construction: Optional[str] = None) -> BaseModel:
    """One command on one input; a failed verification yields its report."""
    S, name = loaded.semigroup, loaded.name
    try:
        if command == "analyze":
            return analyze(S)
        if command == "resolve":
            return resolve(S, length, name)
        if command == "transfer":
            return transfer(S, length, construction, name)
        if command == "fp1":
            return fp1(S, cap, name)
        if command == "pipeline":
            return pipeline(S, length, name)
        if command == "semilattice":
            return semilattice(loaded, length)
        if command == "bi":
            return bi(S, length, cap, name)
    except VerificationFailed as e:
        if e.report is None:
            raise
        logger.warning("%s on %s failed verification: %s", command, name, e.message)
        return e.report
    raise HypothesisViolation("command", f"unknown command {command}")


# === Output ===

def write_atomic(path: str, text: str) -> None:
    """Write through a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.splitext(path)[1])
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def render(reports: Dict[str, BaseModel], loaded: List[Loaded], fmt: str) -> str:
    if fmt == "json":
        if len(reports) == 1:
            return dump_json(next(iter(reports.values())))
        return dump_json({k: r.model_dump(by_alias=True, mode="json") for k, r in reports.items()})
    if fmt == "text":
        return "\n".join(f"== {k} ==\n{report_text(r)}" for k, r in reports.items())
    blocks = []
    for item in loaded:
        blocks.append(eggbox_dot(item.semigroup, name=item.name))
        genset = getattr(reports[item.name], "minimal_genset", None)
        if genset is not None and genset.witness is not None:
            M = monoid_completion(item.semigroup)
            A = [M.names.index(w) for w in genset.witness]
            blocks.append(cayley_dot(M, A, name=f"{item.name}_cayley"))
    return "\n".join(blocks)


@dataclass(frozen=True)
class RunOutcome:
    exit_code: int
    reports: Dict[str, BaseModel]
    output: str


def passed(report: BaseModel) -> bool:
    return bool(getattr(report, "passed", True))


def run(config: RunConfig) -> RunOutcome:
    """Execute the configured command on every input; exit 0 iff every report passes."""
    loaded: List[Loaded] = []
    for ref in config.inputs:
        item = load(ref, config.opposite)
        if any(other.name == item.name for other in loaded):
            item = Loaded(f"{item.name}-{len(loaded) + 1}", item.spec, item.semigroup, item.opposite)
        loaded.append(item)
    reports: Dict[str, BaseModel] = {}
    for item in loaded:
        logger.info("%s on %s (order %d)", config.command, item.name, item.semigroup.order)
        reports[item.name] = execute(config.command, item, config.length, config.cap, config.construction)
    output = render(reports, loaded, config.format)
    if config.out:
        write_atomic(config.out, output)
        logger.info("report written to %s", config.out)
    code = 0 if all(passed(r) for r in reports.values()) else 1
    return RunOutcome(code, reports, output)
