"""Pydantic models for bound reports, corpus records and sharpness findings."""

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from girthguard.config import REPORT_SCHEMA_VERSION

GAMMA_BOUND_NAMES = ("general_g7", "mindeg2_g7", "girth12", "girth12_tf")
BOUND_NAMES = GAMMA_BOUND_NAMES + ("lemma1",)

PartitionVerdict = Literal["ok", "violations", "refuted", "skipped"]
RefutationOutcome = Literal["partition", "refuted", "skipped"]


class BoundEntry(BaseModel):
    """One bound evaluated on one graph.

    For the four domination bounds ``valid`` means gamma >= value - tolerance and
    ``slack`` is gamma - value. For ``lemma1`` (an upper bound on the edge count)
    ``valid`` means m <= value + tolerance, ``slack`` is value - m and ``derived``
    holds the tighter n(n-1)/(g-1).
    """

    model_config = ConfigDict(frozen=True)

    applicable: bool
    value: Optional[float] = None
    ceil_value: Optional[int] = None
    slack: Optional[float] = None
    valid: Optional[bool] = None
    tight: Optional[bool] = None
    derived: Optional[float] = None
    note: Optional[str] = None


class BoundReport(BaseModel):
    """Structure facts plus every bound entry for one graph."""

    model_config = ConfigDict(frozen=True)

    n: int
    m: int
    girth: int | Literal["acyclic"]
    l: Optional[int] = None
    min_degree: int
    connected: bool
    is_star: bool
    gamma: Optional[int] = None
    bounds: Dict[str, BoundEntry]
    notes: List[str] = Field(default_factory=list)

    def gamma_entries(self) -> List[BoundEntry]:
        return [self.bounds[name] for name in GAMMA_BOUND_NAMES]

    def tight_bounds(self) -> List[str]:
        return [
            name
            for name in GAMMA_BOUND_NAMES
            if self.bounds[name].applicable and self.bounds[name].tight
        ]

    def invalid_bounds(self) -> List[str]:
        return [
            name
            for name in BOUND_NAMES
            if self.bounds[name].applicable and self.bounds[name].valid is False
        ]


class CorpusRecord(BaseModel):
    """Everything the corpus runner learned about one input graph."""

    model_config = ConfigDict(frozen=True)

    graph: str
    n: int
    m: int
    girth: int | Literal["acyclic"]
    min_degree: int
    gamma: Optional[int] = None
    gamma_method: Optional[str] = None
    certificate: Optional[List[int]] = None
    bounds: Optional[BoundReport] = None
    partition_verdict: PartitionVerdict = "skipped"
    violations: List[str] = Field(default_factory=list)
    smaller_certificate: Optional[List[int]] = None
    refutation: RefutationOutcome = "skipped"
    errors: List[str] = Field(default_factory=list)
    timings: Optional[Dict[str, float]] = None

    @property
    def failed(self) -> bool:
        if self.errors or self.violations:
            return True
        if self.partition_verdict in ("violations", "refuted"):
            return True
        return bool(self.bounds and self.bounds.invalid_bounds())


class BoundTally(BaseModel):
    applicable: int = 0
    valid: int = 0
    tight: int = 0


class CorpusReport(BaseModel):
    """Per-graph records plus aggregate counts for a whole corpus run."""

    schema_version: int = REPORT_SCHEMA_VERSION
    generated_at: Optional[str] = None
    records: List[CorpusRecord] = Field(default_factory=list)
    aggregates: Dict[str, BoundTally] = Field(default_factory=dict)
    tight: List[List[str]] = Field(default_factory=list)
    failures: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


class SharpInstance(BaseModel):
    """A graph on which an applicable bound equals the domination number."""

    model_config = ConfigDict(frozen=True)

    graph: str
    n: int
    m: int
    girth: int | Literal["acyclic"]
    gamma: int
    bound: str
    value: float
