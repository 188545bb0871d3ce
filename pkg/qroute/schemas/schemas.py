from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class RouterKind(str, Enum):
    comet = "comet"
    baseline = "baseline"


class InitialKind(str, Enum):
    identity = "identity"
    random = "random"
    reverse_traversal = "reverse-traversal"


class DeadlockPolicy(str, Enum):
    forced_swap = "forced-swap"
    error = "error"


class SelectPolicy(str, Enum):
    best = "best"
    final = "final"


class ArchitectureDocument(BaseModel):
    """On-disk architecture description (YAML or JSON)."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field("custom", description="Architecture identifier.")
    num_qubits: int = Field(..., ge=1, description="Number of physical qubits N_P.")
    edges: List[Tuple[int, int]] = Field(..., description="Undirected coupling pairs.")
    grid: Optional[List[Tuple[int, int, int]]] = Field(
        None, description="Lattice coordinates as [qubit, row, col] triples."
    )
    durations: Optional[Dict[str, int]] = Field(
        None, description="Gate kind -> cycles. Missing kinds take the default map."
    )


class RouterOptions(BaseModel):
    use_fine: bool = Field(True, description="Break h_basic ties with the grid-balance priority.")
    deadlock: DeadlockPolicy = Field(DeadlockPolicy.forced_swap, description="What to do when no swap helps.")
    iteration_budget: Optional[int] = Field(
        None, description="Loop iteration limit. Defaults to 10 * |gates| * N_P."
    )
    deadlock_patience: int = Field(
        4, ge=1, description="Forced swaps without a launch before switching to committed routing."
    )

    @field_validator("iteration_budget")
    def check_budget_positive(cls, value):
        if value is not None and value <= 0:
            raise ValueError("iteration_budget must be positive")
        return value


class BaselineOptions(BaseModel):
    extended_set_size: int = Field(20, ge=0, description="Two-qubit gates in the lookahead window.")
    extended_set_weight: float = Field(0.5, ge=0.0, description="Weight of the lookahead term.")
    delta: float = Field(0.001, ge=0.0, description="Decay increment applied to swapped qubits.")
    decay_reset_interval: int = Field(5, ge=1, description="Swaps between decay resets.")


class InitialMappingOptions(BaseModel):
    kind: InitialKind = Field(InitialKind.reverse_traversal, description="Initial mapping strategy.")
    rounds: int = Field(3, description="Forward/reverse rounds per restart.")
    restarts: int = Field(12, description="Random starting mappings tried.")
    seed: Optional[int] = Field(None, description="RNG seed; None draws fresh entropy.")
    select: SelectPolicy = Field(SelectPolicy.best, description="Score every round (best) or only the last (final).")

    @model_validator(mode="after")
    def check_counts(self):
        if self.rounds < 1:
            raise ValueError("rounds must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        return self


class RouteReport(BaseModel):
    schema_version: int = Field(1, description="Report schema version.")
    benchmark: str
    architecture: str
    router: RouterKind
    seed: Optional[int] = None
    original_depth: int = Field(..., ge=0, description="T_o: weighted depth of the unrouted circuit.")
    weighted_depth: int = Field(..., ge=0)
    swap_count: int = Field(..., ge=0)
    total_gates: int = Field(..., ge=0, description="Gates in the emitted circuit.")
    cx_count: int = Field(..., ge=0, description="CX gates in the emitted circuit.")
    wall_clock_ms: Optional[float] = Field(None, ge=0.0)
    initial_mapping: List[int]
    final_mapping: List[int]
    stats: Dict[str, int] = Field(default_factory=dict)


class CompareRow(BaseModel):
    benchmark: str
    architecture: str
    num_logical: Optional[int] = None
    original_depth: Optional[int] = None
    comet_depth: Optional[int] = Field(None, description="T_C")
    baseline_depth: Optional[int] = Field(None, description="T_S")
    comet_swaps: Optional[int] = None
    baseline_swaps: Optional[int] = None
    ratio: Optional[float] = Field(None, description="T_S / T_C")
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.ratio is not None


class CompareReport(BaseModel):
    schema_version: int = 1
    seed: Optional[int] = None
    rt_rounds: int = 3
    rt_restarts: int = 12
    rows: List[CompareRow] = Field(default_factory=list)
    arithmetic_mean: Optional[float] = None
    geometric_mean: Optional[float] = None
    comet_not_worse: int = Field(0, description="Rows with T_C <= T_S.")
    failures: int = 0


class CompareJob(BaseModel):
    """One (benchmark x architecture) unit of `compare`, as sent to a worker."""

    benchmark: str = Field(..., description="Path of the .qasm file.")
    architecture: str = Field(..., description="Bundled or parameterized architecture name.")
    architecture_file: Optional[str] = Field(None, description="Architecture document path; wins over the name.")
    durations: Optional[str] = Field(None, description="`default`, `preset:<name>` or a duration file.")
    seed: Optional[int] = 42
    rt_rounds: int = Field(3, ge=1)
    rt_restarts: int = Field(12, ge=1)
    router: RouterOptions = Field(default_factory=RouterOptions)
    baseline: BaselineOptions = Field(default_factory=BaselineOptions)
