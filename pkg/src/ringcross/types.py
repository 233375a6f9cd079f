"""
Pydantic models and enumerations shared across the ringcross package.
"""

from enum import Enum
from typing import FrozenSet, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import ProtocolDefaults

SEED_MAX = 2**64 - 1


class FunctionId(str, Enum):
    """Benchmark function identifiers."""
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    F5 = "F5"
    F6 = "F6"


class CrossoverKind(str, Enum):
    """Two-parent crossover operators."""
    SPC = "spc"
    TPC = "tpc"
    IC = "ic"
    HC = "hc"
    AC = "ac"
    RC = "rc"


class SchwefelVariant(str, Enum):
    """Scaling of the Schwefel objective (F4)."""
    NORMALIZED = "normalized"
    RAW = "raw"


class RepairMode(str, Enum):
    """How out-of-box genes are brought back inside the bounds."""
    CLAMP = "clamp"
    REFLECT = "reflect"
    RESAMPLE = "resample"


class MutationMode(str, Enum):
    """Granularity at which the mutation probability applies."""
    GENE = "gene"
    INDIVIDUAL = "individual"


class Bounds(BaseModel):
    """Closed box [lower, upper] applied to every gene."""
    model_config = ConfigDict(frozen=True)

    lower: float = Field(description="Lower bound in function units")
    upper: float = Field(description="Upper bound in function units")

    @model_validator(mode="after")
    def validate_order(self) -> "Bounds":
        """Require a non-degenerate interval."""
        if not self.lower < self.upper:
            raise ValueError(f"lower ({self.lower}) must be below upper ({self.upper})")
        return self

    @property
    def width(self) -> float:
        return self.upper - self.lower


class FunctionSpec(BaseModel):
    """A benchmark function at a fixed dimension, with its known optimum."""
    model_config = ConfigDict(frozen=True)

    id: FunctionId = Field(description="Benchmark function identifier")
    dimension: int = Field(ge=1, description="Number of genes D")
    bounds: Bounds = Field(description="Per-gene search box")
    optimum_point: float = Field(description="Optimum coordinate, repeated D times")
    optimum_value: float = Field(description="Objective value at the optimum")


class CrossoverParams(BaseModel):
    """Ratios of the intermediate and heuristic operators."""
    model_config = ConfigDict(frozen=True)

    ic_ratio: float = Field(
        default=ProtocolDefaults.IC_RATIO,
        ge=0.0,
        description="Intermediate crossover Ratio"
    )
    hc_ratio: float = Field(
        default=ProtocolDefaults.HC_RATIO,
        gt=0.0,
        description="Heuristic crossover Ratio"
    )
    ic_scalar: bool = Field(
        default=False,
        description="Draw one IC weight per mating instead of one per gene"
    )


class GaConfig(BaseModel):
    """Configuration of a single GA run."""
    model_config = ConfigDict(frozen=True)

    population_size: int = Field(
        default=ProtocolDefaults.POPULATION_SIZE,
        ge=2,
        description="Population size N"
    )
    dimension: int = Field(
        default=ProtocolDefaults.DIMENSION,
        ge=1,
        description="Genome length D"
    )
    crossover_rate: float = Field(
        default=ProtocolDefaults.CROSSOVER_RATE,
        ge=0.0,
        le=1.0,
        description="Probability p_c that a mating applies crossover"
    )
    mutation_rate: float = Field(
        default=ProtocolDefaults.MUTATION_RATE,
        ge=0.0,
        le=1.0,
        description="Probability p_m of Gaussian mutation"
    )
    mutation_sigma_fraction: float = Field(
        default=ProtocolDefaults.SIGMA_FRACTION,
        gt=0.0,
        description="Mutation sigma as a fraction of the bound width"
    )
    mutation_mode: MutationMode = Field(
        default=MutationMode.GENE,
        description="Whether p_m applies per gene or per individual"
    )
    elite_count: int = Field(
        default=ProtocolDefaults.ELITE_COUNT,
        ge=0,
        description="Best individuals copied unchanged each generation"
    )
    eval_budget: int = Field(
        default=ProtocolDefaults.EVAL_BUDGET,
        ge=1,
        description="Total objective evaluations allowed, initialization included"
    )
    selection_pressure: float = Field(
        default=ProtocolDefaults.SELECTION_PRESSURE,
        ge=1.0,
        le=2.0,
        description="Linear-ranking selection pressure"
    )
    crossover: CrossoverKind = Field(
        default=CrossoverKind.RC,
        description="Crossover operator"
    )
    crossover_params: CrossoverParams = Field(
        default_factory=CrossoverParams,
        description="Operator ratios"
    )
    repair: RepairMode = Field(
        default=RepairMode.CLAMP,
        description="Bound repair applied after mutation"
    )
    schwefel_variant: SchwefelVariant = Field(
        default=SchwefelVariant.NORMALIZED,
        description="F4 scaling"
    )
    seed: int = Field(
        default=ProtocolDefaults.MASTER_SEED,
        ge=0,
        le=SEED_MAX,
        description="64-bit seed of the run's random stream"
    )

    @model_validator(mode="after")
    def validate_sizes(self) -> "GaConfig":
        """Elites must leave room for offspring; the budget must cover initialization."""
        if self.elite_count >= self.population_size:
            raise ValueError(
                f"elite_count ({self.elite_count}) must be below population_size ({self.population_size})"
            )
        if self.eval_budget < self.population_size:
            raise ValueError(
                f"eval_budget ({self.eval_budget}) must be at least population_size ({self.population_size})"
            )
        return self


class RunResult(BaseModel):
    """Outcome of a single GA run."""

    function: FunctionId = Field(description="Objective that was minimized")
    crossover: CrossoverKind = Field(description="Operator used")
    best_value: float = Field(description="Best objective value ever seen")
    best_genome: List[float] = Field(description="Genome achieving best_value")
    best_by_generation: List[float] = Field(
        description="Best-ever value after initialization and after each generation"
    )
    population_best_by_generation: List[float] = Field(
        description="Best value inside each generation's population"
    )
    evaluations_used: int = Field(ge=0, description="Objective calls made")
    generations: int = Field(ge=0, description="Generations completed")
    seed: int = Field(ge=0, le=SEED_MAX, description="Seed of the run")


class ExperimentPlan(BaseModel):
    """A function x operator grid of repeated, seeded runs."""

    functions: List[FunctionId] = Field(description="Benchmark functions, in output order")
    operators: List[CrossoverKind] = Field(description="Operators, in output order")
    runs_per_cell: int = Field(
        default=ProtocolDefaults.RUNS_PER_CELL,
        ge=1,
        description="Independent runs per (function, operator) cell"
    )
    base_config: GaConfig = Field(
        default_factory=GaConfig,
        description="Run configuration; crossover and seed are overridden per trial"
    )
    master_seed: int = Field(
        default=ProtocolDefaults.MASTER_SEED,
        ge=0,
        le=SEED_MAX,
        description="Seed every trial seed is derived from"
    )
    n_jobs: int = Field(
        default=1,
        ge=1,
        description="Parallel workers; never changes results"
    )


class CellStats(BaseModel):
    """Best / worst / average of the final best values of one grid cell."""

    function: FunctionId = Field(description="Benchmark function")
    operator: CrossoverKind = Field(description="Crossover operator")
    best: float = Field(description="Minimum over runs")
    worst: float = Field(description="Maximum over runs")
    average: float = Field(description="Arithmetic mean over runs")
    all_bests: List[float] = Field(min_length=1, description="Final best value of every run")

    @model_validator(mode="after")
    def validate_order(self) -> "CellStats":
        """Statistics must satisfy best <= average <= worst."""
        if not self.best <= self.average <= self.worst:
            raise ValueError(
                f"Inconsistent statistics: best={self.best}, average={self.average}, worst={self.worst}"
            )
        return self


class OffspringSet(BaseModel):
    """Distinct children an operator can produce from two symbolic parents."""
    model_config = ConfigDict(frozen=True)

    operator: CrossoverKind = Field(description="Structural operator enumerated")
    parent_length: int = Field(ge=1, description="Parent length d")
    children: FrozenSet[Tuple[int, ...]] = Field(description="Distinct child genomes")
    raw_count: int = Field(ge=0, description="Children enumerated before deduplication")

    @model_validator(mode="after")
    def validate_counts(self) -> "OffspringSet":
        """Deduplication can only shrink the enumeration."""
        if len(self.children) > self.raw_count:
            raise ValueError("distinct children cannot outnumber raw enumerations")
        return self
