from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

SCHEMA_VERSION = 1


# --- Base Models ---
class Report(BaseModel):
    """Every report serialises its schema version as ``"schema"``."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, serialization_alias="schema")


# --- Input Shapes ---
class TableSpec(BaseModel):
    """A multiplication table with 1-based entries."""

    kind: Literal["table"] = "table"
    order: int = Field(..., ge=1)
    table: List[List[int]]
    identity: Optional[int] = Field(None, description="1-based identity hint")
    names: Optional[List[str]] = None

    @model_validator(mode="after")
    def check_square(self):
        if len(self.table) != self.order or any(len(row) != self.order for row in self.table):
            raise ValueError(f"table must be {self.order} x {self.order}")
        if self.names is not None and len(self.names) != self.order:
            raise ValueError("one name per element is required")
        return self


class ReesSpec(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    kind: Literal["rees"] = "rees"
    group: TableSpec
    i_count: int = Field(..., ge=1, alias="I")
    omega_count: int = Field(..., ge=1, alias="Omega")
    P: List[List[str]] = Field(..., description="Omega rows of I group-element names")


class HomSpec(BaseModel):
    source: str
    target: str
    images: List[int] = Field(..., description="1-based images of the source elements")


class SemilatticeSpec(BaseModel):
    kind: Literal["semilattice"] = "semilattice"
    indices: List[str]
    order: List[Tuple[str, str]] = Field(default_factory=list, description="pairs (lower, upper)")
    components: Dict[str, TableSpec]
    homs: List[HomSpec] = Field(default_factory=list)


InputSpec = Union[TableSpec, ReesSpec, SemilatticeSpec]


# --- Catalog Models ---
class CatalogEntry(BaseModel):
    """Exactly one of file, family, base (the latter with a transform)."""

    name: str
    file: Optional[str] = None
    family: Optional[str] = None
    args: List[Union[int, str]] = Field(default_factory=list)
    base: Optional[str] = None
    transform: Optional[Literal["adjoin_zero", "adjoin_identity", "opposite"]] = None
    note: Optional[str] = None

    @model_validator(mode="after")
    def check_one_source(self):
        if sum(x is not None for x in (self.file, self.family, self.base)) != 1:
            raise ValueError(f"catalog entry {self.name} needs exactly one of file, family, base")
        if (self.base is None) != (self.transform is None):
            raise ValueError(f"catalog entry {self.name}: base and transform go together")
        return self


class CatalogIndex(Report):
    entries: List[CatalogEntry]


# --- Request Models ---
class SemigroupRequest(BaseModel):
    spec: Optional[TableSpec] = None
    rees: Optional[ReesSpec] = None
    catalog: Optional[str] = Field(None, description="name of a catalog entry")
    opposite: bool = False

    @model_validator(mode="after")
    def check_one_source(self):
        if sum(x is not None for x in (self.spec, self.rees, self.catalog)) != 1:
            raise ValueError("give exactly one of spec, rees, catalog")
        return self


class ResolveRequest(SemigroupRequest):
    length: Optional[int] = Field(None, ge=0)


class TransferRequest(ResolveRequest):
    pass


class Fp1Request(SemigroupRequest):
    cap: Optional[int] = Field(None, ge=0)


class PipelineRequest(ResolveRequest):
    pass


class SemilatticeRequest(BaseModel):
    spec: Optional[SemilatticeSpec] = None
    catalog: Optional[str] = None
    length: Optional[int] = Field(None, ge=0)

    @model_validator(mode="after")
    def check_one_source(self):
        if (self.spec is None) == (self.catalog is None):
            raise ValueError("give exactly one of spec, catalog")
        return self


# --- Semigroup Reports ---
class GreenClassesModel(BaseModel):
    r_classes: List[List[str]]
    l_classes: List[List[str]]
    h_classes: List[List[str]]
    d_classes: List[List[str]]
    group_h_classes: List[bool]


class AnalysisReport(Report):
    order: int
    identity: Optional[str] = None
    zero: Optional[str] = None
    idempotents: List[str]
    is_group: bool
    is_simple: bool
    is_completely_simple: bool
    is_regular: bool
    is_clifford: bool
    r_class_count: int
    l_class_count: int
    h_class_count: int
    d_class_count: int
    minimal_ideal: List[str]
    minimal_ideal_completely_simple: bool
    green: GreenClassesModel
    passed: bool = True


# --- Resolution Reports ---
class DegreeVerdict(BaseModel):
    degree: int
    rank: int
    dimension: int
    kernel_generators: Optional[int] = Field(None, description="|X_k| when recorded")
    composition_zero: bool
    image_rank: int
    kernel_rank: Optional[int] = Field(None, description="rank of ker of the map one degree down")
    exact: bool


class ExactnessReport(Report):
    monoid_order: int
    scalar_count: int
    length: int
    degrees: List[DegreeVerdict]
    exact: bool
    first_failure: Optional[int] = None


class ResolutionReport(Report):
    semigroup: str
    length: int
    ranks: List[int]
    kernel_generator_counts: List[int]
    exactness: ExactnessReport
    passed: bool


# --- Transfer Reports ---
class BundleDegree(BaseModel):
    degree: int
    rank_in: Optional[int] = None
    rank_out: int
    exact: bool
    y_size: Optional[int] = None
    lemma_checks: Dict[str, bool] = Field(default_factory=dict)


class BundleReport(Report):
    construction: str
    context: Dict[str, Any] = Field(default_factory=dict)
    degrees: List[BundleDegree]
    exactness: ExactnessReport
    passed: bool
    notes: List[str] = Field(default_factory=list)

    @property
    def failed_checks(self) -> List[str]:
        out = [f"degree {d.degree}: {name}" for d in self.degrees for name, ok in sorted(d.lemma_checks.items()) if not ok]
        out.extend(f"degree {d.degree}: exact" for d in self.degrees if not d.exact)
        return out


class PipelineReport(Report):
    semigroup: str
    length: int
    r_class_count: int
    l_class_count: int
    group_order: int
    idempotent_count: int
    group_resolution: ExactnessReport
    left_group_lift: BundleReport
    descent: BundleReport
    subgroup_restriction: BundleReport
    passed: bool


# --- FP1 Reports ---
class KobayashiReport(Report):
    subset: List[str]
    connected: bool
    closure_is_all: bool
    closure: List[str]
    passed: bool


class GensetReport(Report):
    cap: int
    order: int
    size: Optional[int] = None
    witness: Optional[List[str]] = None
    passed: bool


class RelativeRankReport(Report):
    group_order: int
    subgroup: List[str]
    rank: int
    witness: List[str]


class CsFp1Report(Report):
    r_class_count: int = Field(..., description="R-classes, i.e. principal right ideals")
    l_class_count: int
    group_order: int
    normalized_P: List[List[str]]
    subgroup_order: int
    relative_rank: int
    relative_rank_witness: List[str]
    F: List[str]
    witness: List[str]
    witness_size: int
    kobayashi: KobayashiReport
    passed: bool


class WitnessTransferReport(Report):
    construction: str
    ideal: List[str]
    given: List[str]
    produced: List[str]
    kobayashi: KobayashiReport
    passed: bool


class Fp1Report(Report):
    semigroup: str
    order: int
    minimal_genset: Optional[GensetReport] = None
    completely_simple: Optional[CsFp1Report] = None
    ideal_lift: Optional[WitnessTransferReport] = None
    minimal_ideal_transfer: Optional[WitnessTransferReport] = None
    passed: bool


class Fp1EquivalenceReport(Report):
    semigroup: str
    left: GensetReport
    right: GensetReport
    relative_rank: Optional[RelativeRankReport] = None
    minimal_ideal: List[str]
    passed: bool


class SemilatticeReport(Report):
    indices: List[str]
    minimum: Optional[str]
    order: int
    component_order: int
    length: int
    component_resolution: ExactnessReport
    lift: Optional[BundleReport] = None
    direct: ExactnessReport
    agrees: bool
    passed: bool


class BiReport(Report):
    semigroup: str
    length: int
    commutative: bool
    left: ResolutionReport
    right: ResolutionReport
    left_genset: Optional[GensetReport] = None
    right_genset: Optional[GensetReport] = None
    bi_fp: bool
    passed: bool


# --- Run Models ---
Command = Literal["analyze", "resolve", "transfer", "fp1", "pipeline", "semilattice", "bi"]
Construction = Literal["phi", "ideal", "cs-descend", "left-group", "pipeline"]
OutputFormat = Literal["json", "text", "dot"]


class RunConfig(BaseModel):
    command: Command
    inputs: List[str] = Field(..., min_length=1)
    length: int = Field(..., ge=0)
    construction: Optional[Construction] = None
    out: Optional[str] = None
    format: OutputFormat = "json"
    cap: int = Field(..., ge=0)
    opposite: bool = False

    @model_validator(mode="after")
    def check_command_inputs(self):
        if self.command == "transfer" and self.construction is None:
            raise ValueError("transfer needs --construction")
        if self.command != "transfer" and self.construction is not None:
            raise ValueError("--construction only applies to transfer")
        return self


class CaseResult(BaseModel):
    name: str
    command: str
    passed: bool
    error: Optional[str] = None


class CorpusSummary(Report):
    cases: List[CaseResult]
    total: int
    passed: int
    failed: int
