"""
ringcross - a real-coded genetic algorithm library built around ring crossover.

Provides six two-parent crossover operators, six benchmark functions, a
generational GA engine with stochastic universal sampling, a multi-run
experiment harness and an exhaustive offspring-variety enumerator.
"""

from .benchmarks import evaluate, spec_of
from .crossover import arithmetic, heuristic, intermediate, ring, spc, tpc
from .engine import run
from .errors import (
    BudgetExhaustedError,
    InvalidParameterError,
    MissingCellError,
    RingCrossError,
)
from .experiment import emit_csv, emit_table, run_experiment
from .types import (
    Bounds,
    CellStats,
    CrossoverKind,
    CrossoverParams,
    ExperimentPlan,
    FunctionId,
    FunctionSpec,
    GaConfig,
    RunResult,
)
from .variety import enumerate_offspring, variety_report

__version__ = "1.0.0"

__all__ = [
    "Bounds",
    "BudgetExhaustedError",
    "CellStats",
    "CrossoverKind",
    "CrossoverParams",
    "ExperimentPlan",
    "FunctionId",
    "FunctionSpec",
    "GaConfig",
    "InvalidParameterError",
    "MissingCellError",
    "RingCrossError",
    "RunResult",
    "arithmetic",
    "emit_csv",
    "emit_table",
    "enumerate_offspring",
    "evaluate",
    "heuristic",
    "intermediate",
    "ring",
    "run",
    "run_experiment",
    "spc",
    "spec_of",
    "tpc",
    "variety_report",
]
