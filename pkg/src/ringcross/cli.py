"""
Command-line entry point.

    ringcross run --function F5 --operator rc --seed 1
    ringcross bench --seed 7 --out results.csv
    ringcross variety --dmin 2 --dmax 8
    ringcross list

Flags may also come from a ``key = value`` config file given with
``--config``; flags on the command line win over file values, which win over
the protocol defaults.
"""

import argparse
import logging
import sys
from pathlib import Path
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from .benchmarks import FUNCTION_CATALOG, optimum_value, spec_of
from .config import (
    BUDGET_ACCOUNTING,
    LOG_LEVELS,
    PRNG_NAME,
    ProtocolDefaults,
    Settings,
    load_config_file,
    normalize_key,
)
from .engine import run
from .errors import RingCrossError
from .experiment import emit_csv, emit_table, experiment_metadata, render_header, run_experiment
from .types import (
    SEED_MAX,
    CrossoverKind,
    CrossoverParams,
    ExperimentPlan,
    FunctionId,
    GaConfig,
    MutationMode,
    RepairMode,
    RunResult,
    SchwefelVariant,
)
from .variety import variety_report

logger = logging.getLogger(__name__)


class CliCommand(str, Enum):
    """Subcommands; exactly one per invocation."""
    RUN = "run"
    BENCH = "bench"
    VARIETY = "variety"
    LIST = "list"


# Value converters shared by flags and config-file keys

def _probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is outside [0, 1]")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"{text} must be positive")
    return value


def _nonnegative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} must not be negative")
    return value


def _pressure(text: str) -> float:
    value = _positive_float(text)
    if not 1.0 <= value <= 2.0:
        raise argparse.ArgumentTypeError(f"{text} is outside [1, 2]")
    return value


def _int_at_least(minimum: int) -> Callable[[str], int]:
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"{text} must be >= {minimum}")
        return value
    return convert


def _int_between(minimum: int, maximum: int) -> Callable[[str], int]:
    def convert(text: str) -> int:
        value = _int_at_least(minimum)(text)
        if value > maximum:
            raise argparse.ArgumentTypeError(f"{text} must be <= {maximum}")
        return value
    return convert


def _log_level(text: str) -> str:
    try:
        return Settings(log_level=text).log_level
    except ValidationError:
        raise argparse.ArgumentTypeError(
            f"unknown level {text!r} (choose from {', '.join(LOG_LEVELS)})"
        ) from None


def _seed(text: str) -> int:
    value = _int_at_least(0)(text)
    if value > SEED_MAX:
        raise argparse.ArgumentTypeError(f"{text} does not fit in 64 bits")
    return value


def _choice(enum_type, by_name: bool = False) -> Callable[[str], Any]:
    def convert(text: str):
        token = text.strip()
        for member in enum_type:
            if token.lower() in (member.value.lower(), member.name.lower()):
                return member
        allowed = ", ".join(m.name if by_name else m.value for m in enum_type)
        raise argparse.ArgumentTypeError(f"unknown value {text!r} (choose from {allowed})")
    return convert


def _format(text: str) -> str:
    token = text.strip().lower()
    if token not in ("csv", "table"):
        raise argparse.ArgumentTypeError(f"unknown format {text!r} (choose from csv, table)")
    return token


def _bool(text: str) -> bool:
    token = text.strip().lower()
    if token in ("1", "true", "yes", "on"):
        return True
    if token in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {text!r}")


OPTIONS: Dict[str, Callable[[str], Any]] = {
    "function": _choice(FunctionId),
    "operator": _choice(CrossoverKind),
    "pop": _int_at_least(2),
    "dim": _int_at_least(1),
    "budget": _int_at_least(1),
    "pc": _probability,
    "pm": _probability,
    "sigma_frac": _positive_float,
    "elite": _int_at_least(0),
    "runs": _int_at_least(1),
    "seed": _seed,
    "out": str,
    "format": _format,
    "jobs": _int_at_least(1),
    "variant": _choice(SchwefelVariant),
    "repair": _choice(RepairMode),
    "selection_pressure": _pressure,
    "mutation_mode": _choice(MutationMode),
    "ic_ratio": _nonnegative_float,
    "hc_ratio": _positive_float,
    "dmin": _int_between(ProtocolDefaults.VARIETY_MIN_LENGTH, ProtocolDefaults.VARIETY_MAX_LENGTH),
    "dmax": _int_between(ProtocolDefaults.VARIETY_MIN_LENGTH, ProtocolDefaults.VARIETY_MAX_LENGTH),
    "trace": _bool,
}

DEFAULTS: Dict[str, Any] = {
    "function": None,
    "operator": None,
    "pop": ProtocolDefaults.POPULATION_SIZE,
    "dim": ProtocolDefaults.DIMENSION,
    "budget": ProtocolDefaults.EVAL_BUDGET,
    "pc": ProtocolDefaults.CROSSOVER_RATE,
    "pm": ProtocolDefaults.MUTATION_RATE,
    "sigma_frac": ProtocolDefaults.SIGMA_FRACTION,
    "elite": ProtocolDefaults.ELITE_COUNT,
    "runs": ProtocolDefaults.RUNS_PER_CELL,
    "seed": ProtocolDefaults.MASTER_SEED,
    "out": None,
    "format": "csv",
    "jobs": None,
    "variant": SchwefelVariant.NORMALIZED,
    "repair": RepairMode.CLAMP,
    "selection_pressure": ProtocolDefaults.SELECTION_PRESSURE,
    "mutation_mode": MutationMode.GENE,
    "ic_ratio": ProtocolDefaults.IC_RATIO,
    "hc_ratio": ProtocolDefaults.HC_RATIO,
    "dmin": 2,
    "dmax": 8,
    "trace": False,
}

# GaConfig fields reported back under the flag that sets them
FIELD_FLAGS = {
    "population_size": "--pop",
    "dimension": "--dim",
    "eval_budget": "--budget",
    "crossover_rate": "--pc",
    "mutation_rate": "--pm",
    "mutation_sigma_fraction": "--sigma-frac",
    "elite_count": "--elite",
    "seed": "--seed",
    "selection_pressure": "--selection-pressure",
}

# keys that may name several values (repeated flag, or comma list in a config file)
LIST_OPTIONS = ("function", "operator")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per CLI command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="keyed text config file (key = value per line)")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--log-level", dest="log_level", type=_log_level, help="logging level on stderr")

    ga = argparse.ArgumentParser(add_help=False)
    ga.add_argument("--function", action="append", type=OPTIONS["function"], help="F1..F6")
    ga.add_argument("--operator", action="append", type=OPTIONS["operator"], help="spc|tpc|ic|hc|ac|rc")
    ga.add_argument("--pop", type=OPTIONS["pop"], help="population size")
    ga.add_argument("--dim", type=OPTIONS["dim"], help="genome length")
    ga.add_argument("--budget", type=OPTIONS["budget"], help="evaluations per run")
    ga.add_argument("--pc", type=OPTIONS["pc"], help="crossover rate")
    ga.add_argument("--pm", type=OPTIONS["pm"], help="mutation rate")
    ga.add_argument("--sigma-frac", dest="sigma_frac", type=OPTIONS["sigma_frac"], help="mutation sigma / bound width")
    ga.add_argument("--elite", type=OPTIONS["elite"], help="elite count")
    ga.add_argument("--seed", type=OPTIONS["seed"], help="run or master seed")
    ga.add_argument("--variant", type=OPTIONS["variant"], help="F4 scaling: normalized|raw")
    ga.add_argument("--repair", type=OPTIONS["repair"], help="clamp|reflect|resample")
    ga.add_argument("--selection-pressure", dest="selection_pressure", type=OPTIONS["selection_pressure"])
    ga.add_argument("--mutation-mode", dest="mutation_mode", type=OPTIONS["mutation_mode"], help="gene|individual")
    ga.add_argument("--ic-ratio", dest="ic_ratio", type=OPTIONS["ic_ratio"])
    ga.add_argument("--hc-ratio", dest="hc_ratio", type=OPTIONS["hc_ratio"])

    parser = argparse.ArgumentParser(
        prog="ringcross",
        description="Real-coded GA with ring crossover: runs, benchmarks and variety reports",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="{run,bench,variety,list}")

    run_parser = commands.add_parser("run", parents=[common, ga], help="single GA run")
    run_parser.add_argument("--trace", action="store_const", const=True, help="print the per-generation trace")

    bench_parser = commands.add_parser("bench", parents=[common, ga], help="function x operator experiment grid")
    bench_parser.add_argument("--runs", type=OPTIONS["runs"], help="runs per cell")
    bench_parser.add_argument("--format", type=OPTIONS["format"], help="csv|table")
    bench_parser.add_argument("--jobs", type=OPTIONS["jobs"], help="parallel workers")

    variety_parser = commands.add_parser("variety", parents=[common], help="offspring variety report")
    variety_parser.add_argument("--dmin", type=OPTIONS["dmin"], help="smallest parent length")
    variety_parser.add_argument("--dmax", type=OPTIONS["dmax"], help="largest parent length")

    commands.add_parser("list", parents=[common], help="catalog of functions and operators")
    return parser


def resolve_options(parser: argparse.ArgumentParser, args: argparse.Namespace) -> Dict[str, Any]:
    """Merge protocol defaults, config-file values and flags, in that order."""
    options = dict(DEFAULTS)

    if args.config:
        try:
            file_values = load_config_file(args.config)
        except OSError as e:
            parser.error(f"--config: {e}")
        for key, text in file_values.items():
            if key not in OPTIONS:
                parser.error(f"unknown config key {key!r} in {args.config}")
            try:
                if key in LIST_OPTIONS:
                    value = [OPTIONS[key](token) for token in text.split(",") if token.strip()]
                else:
                    value = OPTIONS[key](text)
            except argparse.ArgumentTypeError as e:
                parser.error(f"config key {key!r}: {e}")
            options[key] = value

    for key, value in vars(args).items():
        if value is not None and normalize_key(key) in OPTIONS:
            options[normalize_key(key)] = value
    return options


def parse_args(
    argv: Optional[Sequence[str]] = None,
    parser: Optional[argparse.ArgumentParser] = None,
) -> Tuple["CliCommand", Dict[str, Any]]:
    """
    Parse ``argv`` into the command and its fully resolved options.

    Usage errors (unknown flags, out-of-range values, unknown tags, bad
    config files) exit with status 2 and name the offending token.
    """
    parser = parser or build_parser()
    args = parser.parse_args(argv)
    options = resolve_options(parser, args)
    options["log_level"] = args.log_level
    command = CliCommand(args.command)
    if command == CliCommand.RUN:
        for key in LIST_OPTIONS:
            if options[key] and len(options[key]) > 1:
                parser.error(f"--{key}: run takes a single value, got {len(options[key])}")
    return command, options


def _last(values: Optional[List[Any]], fallback: Any) -> Any:
    return values[-1] if values else fallback


def build_config(parser: argparse.ArgumentParser, options: Dict[str, Any]) -> GaConfig:
    """Validated GaConfig from resolved options; errors name the offending flag."""
    try:
        return GaConfig(
            population_size=options["pop"],
            dimension=options["dim"],
            crossover_rate=options["pc"],
            mutation_rate=options["pm"],
            mutation_sigma_fraction=options["sigma_frac"],
            mutation_mode=options["mutation_mode"],
            elite_count=options["elite"],
            eval_budget=options["budget"],
            selection_pressure=options["selection_pressure"],
            crossover=_last(options["operator"], CrossoverKind.RC),
            crossover_params=CrossoverParams(
                ic_ratio=options["ic_ratio"],
                hc_ratio=options["hc_ratio"],
            ),
            repair=options["repair"],
            schwefel_variant=options["variant"],
            seed=options["seed"],
        )
    except ValidationError as e:
        problems = []
        for error in e.errors():
            field = error["loc"][0] if error["loc"] else ""
            flag = FIELD_FLAGS.get(field, "--pop/--elite/--budget" if not field else f"--{field}")
            problems.append(f"{flag}: {error['msg']}")
        parser.error("; ".join(problems))


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _run_metadata(cfg: GaConfig, function: FunctionId) -> Dict[str, str]:
    return {
        "command": "run",
        "function": function.value,
        "operator": cfg.crossover.name,
        "seed": str(cfg.seed),
        "prng": PRNG_NAME,
        "f4_variant": cfg.schwefel_variant.value,
        "budget_accounting": BUDGET_ACCOUNTING,
        "config": " ".join(
            f"{key}={value}"
            for key, value in cfg.model_dump(mode="json", exclude={"crossover_params"}).items()
        ) + f" ic_ratio={cfg.crossover_params.ic_ratio} hc_ratio={cfg.crossover_params.hc_ratio}",
    }


def format_run(result: RunResult, trace: bool = False) -> str:
    """Human-readable summary of a single run."""
    lines = [
        f"function: {result.function.value}",
        f"operator: {result.crossover.name}",
        f"best_value: {result.best_value:.10g}",
        f"evaluations_used: {result.evaluations_used}",
        f"generations: {result.generations}",
        "best_genome: " + " ".join(f"{g:.6g}" for g in result.best_genome),
    ]
    if trace:
        lines.append("generation,best_ever,population_best")
        lines.extend(
            f"{i},{best:.10g},{current:.10g}"
            for i, (best, current) in enumerate(
                zip(result.best_by_generation, result.population_best_by_generation)
            )
        )
    return "\n".join(lines) + "\n"


def format_catalog() -> str:
    """Functions with bounds and optima, then the operator set."""
    lines = ["functions:"]
    for function_id, entry in FUNCTION_CATALOG.items():
        spec = spec_of(function_id, max(entry.min_dimension, ProtocolDefaults.DIMENSION))
        lines.append(
            f"  {function_id.value}  {entry.name:<30} bounds [{spec.bounds.lower:g}, {spec.bounds.upper:g}]"
            f"  optimum x={entry.optimum_point:g} f={optimum_value(spec):g}  {entry.modality}"
            f"{', separable' if entry.separable else ''}"
        )
    lines.append("operators:")
    names = {
        CrossoverKind.SPC: "single point crossover",
        CrossoverKind.TPC: "two point crossover",
        CrossoverKind.IC: "intermediate crossover",
        CrossoverKind.HC: "heuristic crossover",
        CrossoverKind.AC: "arithmetic crossover",
        CrossoverKind.RC: "ring crossover",
    }
    for kind in CrossoverKind:
        lines.append(f"  {kind.value:<4}{kind.name:<5}{names[kind]}")
    return "\n".join(lines) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse ``argv``, execute the command and write its output.

    Returns:
        Process exit status: 0 on success, 1 on runtime failure. Usage errors
        exit with status 2 through argparse.
    """
    parser = build_parser()
    command, options = parse_args(argv, parser)
    try:
        settings = Settings.from_env()
    except ValidationError as e:
        parser.error(f"environment: {e}")

    level = (options["log_level"] or settings.log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        if command == CliCommand.LIST:
            _write(format_catalog(), options["out"])

        elif command == CliCommand.VARIETY:
            report = variety_report(options["dmin"], options["dmax"])
            header = render_header({"command": "variety", "dmin": str(options["dmin"]), "dmax": str(options["dmax"])})
            _write(header + report, options["out"])

        elif command == CliCommand.RUN:
            cfg = build_config(parser, options)
            function = _last(options["function"], FunctionId.F1)
            result = run(cfg, function)
            header = render_header(_run_metadata(cfg, function))
            _write(header + format_run(result, trace=bool(options["trace"])), options["out"])

        elif command == CliCommand.BENCH:
            cfg = build_config(parser, options)
            plan = ExperimentPlan(
                functions=options["function"] or list(FunctionId),
                operators=options["operator"] or list(CrossoverKind),
                runs_per_cell=options["runs"],
                base_config=cfg,
                master_seed=options["seed"],
                n_jobs=options["jobs"] or settings.jobs,
            )
            stats = run_experiment(plan)
            body = emit_csv(stats) if options["format"] == "csv" else emit_table(stats)
            _write(render_header({"command": "bench", **experiment_metadata(plan)}) + body, options["out"])

    except (RingCrossError, ValidationError, OSError) as e:
        print(f"ringcross {command.value}: {e}", file=sys.stderr)
        return 1
    return 0


def run_cli() -> None:
    """Console-script entry point."""
    sys.exit(main())
