"""
Multi-run experiment harness: repeated seeded runs per (function, operator)
cell, aggregated to best / worst / average and rendered as CSV or as a
plain-text table.
"""

import csv
import io
import logging
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from .config import BUDGET_ACCOUNTING, PRNG_NAME, SEED_SCHEME
from .engine import run
from .errors import InvalidParameterError, MissingCellError
from .genome import derive_seed
from .types import CellStats, CrossoverKind, ExperimentPlan, FunctionId, GaConfig

logger = logging.getLogger(__name__)

CSV_HEADER = ("function", "operator", "best", "worst", "average", "runs", "seed_scheme")
TABLE_ROWS = ("Best", "Worst", "Average")


class CsvRow(NamedTuple):
    """One parsed CSV row."""
    function: FunctionId
    operator: CrossoverKind
    best: float
    worst: float
    average: float
    runs: int
    seed_scheme: str


def trial_config(plan: ExperimentPlan, function: FunctionId, operator: CrossoverKind, trial: int) -> GaConfig:
    """Configuration of one trial; its seed depends only on the cell and trial index."""
    seed = derive_seed(plan.master_seed, function, operator, trial)
    return plan.base_config.model_copy(update={"crossover": operator, "seed": seed})


def _final_best(cfg: GaConfig, function: FunctionId) -> float:
    return run(cfg, function).best_value


def cell_stats(function: FunctionId, operator: CrossoverKind, bests: Sequence[float]) -> CellStats:
    """Aggregate the final best values of a cell's runs."""
    values = np.asarray(bests, dtype=np.float64)
    best = float(values.min())
    worst = float(values.max())
    # the float mean can round a hair outside [min, max]
    average = min(max(float(values.mean()), best), worst)
    return CellStats(
        function=function,
        operator=operator,
        best=best,
        worst=worst,
        average=average,
        all_bests=values.tolist(),
    )


def run_experiment(plan: ExperimentPlan) -> List[CellStats]:
    """
    Execute every cell of the plan.

    Cells come back function-major, operator-minor, in plan order, whatever
    the number of parallel workers.

    Args:
        plan: Functions, operators, repetitions, base configuration and master seed

    Returns:
        One CellStats per (function, operator) pair

    Raises:
        InvalidParameterError: If the plan has no functions or no operators
    """
    functions = list(dict.fromkeys(plan.functions))
    operators = list(dict.fromkeys(plan.operators))
    if not functions:
        raise InvalidParameterError("Experiment plan lists no functions")
    if not operators:
        raise InvalidParameterError("Experiment plan lists no operators")

    logger.info(
        f"Running {len(functions)}x{len(operators)} cells, {plan.runs_per_cell} runs each, "
        f"master seed {plan.master_seed}, {plan.n_jobs} job(s)"
    )
    stats: List[CellStats] = []
    with Parallel(n_jobs=plan.n_jobs) as parallel:
        for function in functions:
            for operator in operators:
                bests = parallel(
                    delayed(_final_best)(trial_config(plan, function, operator, k), function)
                    for k in range(plan.runs_per_cell)
                )
                cell = cell_stats(function, operator, bests)
                stats.append(cell)
                logger.info(
                    f"Cell {function.value}/{operator.name} done: best={cell.best:.4g} "
                    f"worst={cell.worst:.4g} average={cell.average:.4g}"
                )
    return stats


def format_real(value: float) -> str:
    """Six significant digits, trailing zeros kept."""
    return f"{value:#.6g}"


def emit_csv(stats: Sequence[CellStats], seed_scheme: str = SEED_SCHEME) -> str:
    """
    Render cell statistics as CSV.

    Raises:
        InvalidParameterError: If stats is empty
    """
    if not stats:
        raise InvalidParameterError("No cell statistics to write")

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for cell in stats:
        writer.writerow([
            cell.function.value,
            cell.operator.name,
            format_real(cell.best),
            format_real(cell.worst),
            format_real(cell.average),
            len(cell.all_bests),
            seed_scheme,
        ])
    return buffer.getvalue()


def parse_csv(text: str) -> List[CsvRow]:
    """Read back ``emit_csv`` output; ``#`` header lines are skipped."""
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    reader = csv.DictReader(lines)
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise InvalidParameterError(f"Unexpected CSV header: {reader.fieldnames}")
    return [
        CsvRow(
            function=FunctionId(row["function"]),
            operator=CrossoverKind[row["operator"]],
            best=float(row["best"]),
            worst=float(row["worst"]),
            average=float(row["average"]),
            runs=int(row["runs"]),
            seed_scheme=row["seed_scheme"],
        )
        for row in reader
    ]


def emit_table(stats: Sequence[CellStats]) -> str:
    """
    Render a Best/Worst/Average block per function, one column per operator.

    Raises:
        MissingCellError: If any (function, operator) pair of the grid is absent
    """
    if not stats:
        raise InvalidParameterError("No cell statistics to tabulate")

    functions = list(dict.fromkeys(cell.function for cell in stats))
    operators = list(dict.fromkeys(cell.operator for cell in stats))
    cells: Dict[Tuple[FunctionId, CrossoverKind], CellStats] = {
        (cell.function, cell.operator): cell for cell in stats
    }
    for function in functions:
        for operator in operators:
            if (function, operator) not in cells:
                raise MissingCellError(function.value, operator.name)

    label_width = max(len(label) for label in ("Function", *TABLE_ROWS)) + 2
    column_width = 12
    lines = []
    for function in functions:
        header = f"{function.value:<{label_width}}" + "".join(
            f"{operator.name:>{column_width}}" for operator in operators
        )
        lines.append(header)
        for label in TABLE_ROWS:
            attribute = label.lower()
            row = f"{label:<{label_width}}" + "".join(
                f"{getattr(cells[(function, operator)], attribute):>{column_width}.4g}"
                for operator in operators
            )
            lines.append(row)
        lines.append("")
    return "\n".join(lines)


def experiment_metadata(plan: ExperimentPlan) -> Dict[str, str]:
    """Everything needed to re-run ``plan`` exactly."""
    config = plan.base_config.model_dump(mode="json", exclude={"seed", "crossover"})
    return {
        "master_seed": str(plan.master_seed),
        "prng": PRNG_NAME,
        "seed_scheme": SEED_SCHEME,
        "functions": " ".join(f.value for f in plan.functions),
        "operators": " ".join(op.name for op in plan.operators),
        "runs_per_cell": str(plan.runs_per_cell),
        "f4_variant": plan.base_config.schwefel_variant.value,
        "budget_accounting": BUDGET_ACCOUNTING,
        "config": " ".join(f"{key}={value}" for key, value in _flatten(config)),
    }


def _flatten(values: dict, prefix: str = ""):
    for key, value in values.items():
        if isinstance(value, dict):
            yield from _flatten(value, f"{prefix}{key}.")
        else:
            yield f"{prefix}{key}", value


def render_header(metadata: Dict[str, str]) -> str:
    """``# key: value`` lines that open every output file."""
    return "".join(f"# {key}: {value}\n" for key, value in metadata.items())
