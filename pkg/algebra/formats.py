"""Input files, JSON shapes and text/DOT renderings.

Table text::

    # comments run to the end of the line
    3
    1 2 3
    2 3 1
    3 1 2
    identity = 1
    names = e a b

Rees text: ``group`` then a table block, ``I = m``, ``Omega = n``, ``P`` then
n rows of m group-element names. Semilattice text: ``semilattice a b``,
``order a <= b`` lines, ``component a`` plus a table block per index and
``hom a b`` followed by one line of 1-based images.
"""
import json
import logging
import os
from typing import Any, Dict, List, Optional, Sequence, Tuple

import graphviz
import pandas as pd
from pydantic import ValidationError

from algebra.errors import ParseError
from algebra.rees import ReesMatrixData, ReesSemigroup, StrongSemilatticeData, make_rees, make_strong_semilattice
from algebra.semigroup import FiniteSemigroup, green_classes, idempotents, make_semigroup, right_cayley_graph
from models.schema import (
    CorpusSummary,
    ExactnessReport,
    HomSpec,
    InputSpec,
    ReesSpec,
    SemilatticeSpec,
    TableSpec,
)

logger = logging.getLogger(__name__)

Line = Tuple[int, str]


# === Text parsing ===

def _lines(text: str) -> List[Line]:
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            out.append((number, content))
    return out


def _ints(line: Line, what: str) -> List[int]:
    number, content = line
    try:
        return [int(tok) for tok in content.split()]
    except ValueError:
        raise ParseError(number, f"expected integers in {what}, got '{content}'")


def _setting(line: Line) -> Optional[Tuple[str, str]]:
    key, sep, value = line[1].partition("=")
    if not sep:
        return None
    return key.strip(), value.strip()


def _table_block(lines: Sequence[Line], pos: int) -> Tuple[TableSpec, int]:
    """Parse ``n``, n rows and optional identity/names settings from lines[pos:]."""
    if pos >= len(lines):
        raise ParseError(lines[-1][0] if lines else 1, "missing table order")
    number = lines[pos][0]
    header = _ints(lines[pos], "the table order")
    if len(header) != 1 or header[0] < 1:
        raise ParseError(number, "first line of a table must be a single positive order")
    n = header[0]
    pos += 1
    rows = []
    for r in range(n):
        if pos >= len(lines):
            raise ParseError(number, f"table ends after {r} of {n} rows")
        row = _ints(lines[pos], f"row {r + 1}")
        if len(row) != n:
            raise ParseError(lines[pos][0], f"row {r + 1} has {len(row)} entries, expected {n}")
        if any(not 1 <= x <= n for x in row):
            raise ParseError(lines[pos][0], f"entries must lie between 1 and {n}")
        rows.append(row)
        pos += 1
    identity, names = None, None
    while pos < len(lines):
        setting = _setting(lines[pos])
        if setting is None or setting[0] not in ("identity", "names"):
            break
        key, value = setting
        if key == "identity":
            try:
                identity = int(value)
            except ValueError:
                raise ParseError(lines[pos][0], f"identity must be an integer, got '{value}'")
            if not 1 <= identity <= n:
                raise ParseError(lines[pos][0], f"identity must lie between 1 and {n}")
        else:
            names = value.split()
            if len(names) != n or len(set(names)) != n:
                raise ParseError(lines[pos][0], f"names needs {n} distinct entries")
        pos += 1
    return TableSpec(order=n, table=rows, identity=identity, names=names), pos


def parse_table_text(text: str) -> TableSpec:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty input")
    spec, pos = _table_block(lines, 0)
    if pos != len(lines):
        raise ParseError(lines[pos][0], f"unexpected line '{lines[pos][1]}'")
    return spec


def _expect_setting(lines: Sequence[Line], pos: int, key: str) -> int:
    if pos >= len(lines):
        raise ParseError(lines[-1][0], f"missing '{key} = ...'")
    setting = _setting(lines[pos])
    if setting is None or setting[0] != key:
        raise ParseError(lines[pos][0], f"expected '{key} = ...'")
    try:
        value = int(setting[1])
    except ValueError:
        raise ParseError(lines[pos][0], f"{key} must be an integer")
    if value < 1:
        raise ParseError(lines[pos][0], f"{key} must be positive")
    return value


def parse_rees_text(text: str) -> ReesSpec:
    lines = _lines(text)
    if not lines or lines[0][1] != "group":
        raise ParseError(lines[0][0] if lines else 1, "a Rees spec starts with 'group'")
    group, pos = _table_block(lines, 1)
    i_count = _expect_setting(lines, pos, "I")
    omega_count = _expect_setting(lines, pos + 1, "Omega")
    pos += 2
    if pos >= len(lines) or lines[pos][1] != "P":
        raise ParseError(lines[min(pos, len(lines) - 1)][0], "expected 'P'")
    pos += 1
    P = []
    for w in range(omega_count):
        if pos >= len(lines):
            raise ParseError(lines[-1][0], f"P has {w} of {omega_count} rows")
        row = lines[pos][1].split()
        if len(row) != i_count:
            raise ParseError(lines[pos][0], f"P row {w + 1} has {len(row)} entries, expected {i_count}")
        P.append(row)
        pos += 1
    if pos != len(lines):
        raise ParseError(lines[pos][0], f"unexpected line '{lines[pos][1]}'")
    return ReesSpec(group=group, i_count=i_count, omega_count=omega_count, P=P)


def parse_semilattice_text(text: str) -> SemilatticeSpec:
    lines = _lines(text)
    if not lines or lines[0][1].split()[0] != "semilattice":
        raise ParseError(lines[0][0] if lines else 1, "a semilattice spec starts with 'semilattice'")
    indices = lines[0][1].split()[1:]
    if not indices:
        raise ParseError(lines[0][0], "no indices given")
    order: List[Tuple[str, str]] = []
    components: Dict[str, TableSpec] = {}
    homs: List[HomSpec] = []
    pos = 1
    while pos < len(lines):
        number, content = lines[pos]
        words = content.split()
        if words[0] == "order":
            if len(words) != 4 or words[2] != "<=":
                raise ParseError(number, "expected 'order a <= b'")
            order.append((words[1], words[3]))
            pos += 1
        elif words[0] == "component":
            if len(words) != 2 or words[1] not in indices:
                raise ParseError(number, "expected 'component <index>'")
            if words[1] in components:
                raise ParseError(number, f"component {words[1]} given twice")
            components[words[1]], pos = _table_block(lines, pos + 1)
        elif words[0] == "hom":
            if len(words) != 3:
                raise ParseError(number, "expected 'hom a b'")
            if pos + 1 >= len(lines):
                raise ParseError(number, "hom line without images")
            homs.append(HomSpec(source=words[1], target=words[2], images=_ints(lines[pos + 1], "hom images")))
            pos += 2
        else:
            raise ParseError(number, f"unknown keyword '{words[0]}'")
    missing = [a for a in indices if a not in components]
    if missing:
        raise ParseError(lines[-1][0], f"no component for {', '.join(missing)}")
    return SemilatticeSpec(indices=indices, order=order, components=components, homs=homs)


def parse_json(text: str) -> InputSpec:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.lineno, e.msg)
    if not isinstance(payload, dict):
        raise ParseError(1, "top-level JSON value must be an object")
    kind = payload.get("kind", "table")
    model = {"table": TableSpec, "rees": ReesSpec, "semilattice": SemilatticeSpec}.get(kind)
    if model is None:
        raise ParseError(1, f"unknown kind '{kind}'")
    try:
        return model.model_validate(payload)
    except ValidationError as e:
        raise ParseError(1, str(e.errors()[0]["msg"]))


def parse_text(text: str, extension: str) -> InputSpec:
    extension = extension.lower()
    if extension == ".json":
        return parse_json(text)
    if extension == ".rees":
        return parse_rees_text(text)
    if extension == ".ssl":
        return parse_semilattice_text(text)
    return parse_table_text(text)


def load_input(path: str) -> InputSpec:
    """Read a spec file, dispatching on its extension."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise ParseError(0, f"cannot read {path}: {e.strerror}")
    spec = parse_text(text, os.path.splitext(path)[1])
    logger.debug("loaded %s spec from %s", spec.kind, path)
    return spec


# === Spec conversion ===

def semigroup_from_table(spec: TableSpec) -> FiniteSemigroup:
    table = [[x - 1 for x in row] for row in spec.table]
    hint = spec.identity - 1 if spec.identity is not None else None
    return make_semigroup(table, identity_hint=hint, names=spec.names)


def table_spec_of(S: FiniteSemigroup) -> TableSpec:
    return TableSpec(
        order=S.order, table=[[x + 1 for x in row] for row in S.rows],
        identity=S.identity + 1 if S.identity is not None else None, names=list(S.names),
    )


def rees_from_spec(spec: ReesSpec) -> Tuple[ReesMatrixData, ReesSemigroup]:
    G = semigroup_from_table(spec.group)
    position = {name: i for i, name in enumerate(G.names)}
    try:
        P = [[position[name] for name in row] for row in spec.P]
    except KeyError as e:
        raise ParseError(0, f"P entry {e.args[0]} is not a group element")
    data = ReesMatrixData.build(G, spec.i_count, spec.omega_count, P)
    return data, make_rees(data)


def semilattice_from_spec(spec: SemilatticeSpec) -> StrongSemilatticeData:
    components = {a: semigroup_from_table(t) for a, t in spec.components.items()}
    homs = {(h.source, h.target): tuple(x - 1 for x in h.images) for h in spec.homs}
    return StrongSemilatticeData(tuple(spec.indices), frozenset(spec.order), components, homs)


def semigroup_from_input(spec: InputSpec) -> FiniteSemigroup:
    """Any input shape, flattened to its multiplication table."""
    if isinstance(spec, TableSpec):
        return semigroup_from_table(spec)
    if isinstance(spec, ReesSpec):
        return rees_from_spec(spec)[1].semigroup
    return make_strong_semilattice(semilattice_from_spec(spec)).semigroup


def table_text(S: FiniteSemigroup) -> str:
    lines = [str(S.order)]
    lines.extend(" ".join(str(x + 1) for x in row) for row in S.rows)
    if S.identity is not None:
        lines.append(f"identity = {S.identity + 1}")
    lines.append("names = " + " ".join(S.names))
    return "\n".join(lines) + "\n"


# === DOT ===

def eggbox_dot(S: FiniteSemigroup, name: str = "eggbox") -> str:
    """One HTML-table node per D-class: rows are R-classes, columns L-classes."""
    green = green_classes(S)
    idem = idempotents(S)
    dot = graphviz.Digraph(name, node_attr={"shape": "plaintext"})
    for d, members in enumerate(green.d_classes):
        inside = set(members)
        rows = [r for r in green.r_classes if r[0] in inside]
        cols = [c for c in green.l_classes if c[0] in inside]
        cells = []
        for r in rows:
            tds = []
            for c in cols:
                h = sorted(set(r) & set(c))
                marked = [S.name(x) + ("*" if x in idem else "") for x in h]
                tds.append(f"<TD>{' '.join(marked)}</TD>")
            cells.append("<TR>" + "".join(tds) + "</TR>")
        label = '<<TABLE BORDER="0" CELLBORDER="1" CELLSPACING="0">' + "".join(cells) + "</TABLE>>"
        dot.node(f"D{d}", label=label)
    return dot.source


def cayley_dot(S: FiniteSemigroup, A: Sequence[int], name: str = "cayley") -> str:
    g = right_cayley_graph(S, A)
    dot = graphviz.Digraph(name)
    for x in S.elements:
        dot.node(str(x), label=S.name(x))
    for src, a, dst in g.arcs:
        dot.edge(str(src), str(dst), label=S.name(a))
    return dot.source


# === Tables ===

def exactness_table(report: ExactnessReport) -> str:
    frame = pd.DataFrame(
        [d.model_dump() for d in report.degrees],
        columns=["degree", "rank", "dimension", "kernel_generators", "image_rank", "kernel_rank", "exact"],
    )
    return frame.to_string(index=False)


def corpus_table(summary: CorpusSummary) -> str:
    frame = pd.DataFrame([c.model_dump() for c in summary.cases], columns=["name", "command", "passed", "error"])
    return frame.fillna("").to_string(index=False)


def report_text(report) -> str:
    """Plain text form of any report: its exactness tables when it has them."""
    blocks: List[str] = []

    def walk(value, path: str) -> None:
        if isinstance(value, ExactnessReport):
            blocks.append(f"{path or 'exactness'}:\n{exactness_table(value)}")
        elif hasattr(value, "model_fields"):
            for key in type(value).model_fields:
                walk(getattr(value, key), f"{path}.{key}" if path else key)

    walk(report, "")
    verdict = f"passed: {getattr(report, 'passed', True)}"
    return "\n\n".join(blocks + [verdict]) + "\n"


def dump_json(report: Any) -> str:
    """Deterministic JSON: sorted keys, two-space indentation."""
    payload = report.model_dump(by_alias=True, mode="json") if hasattr(report, "model_dump") else report
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
