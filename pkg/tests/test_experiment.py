import pytest

from ringcross.errors import InvalidParameterError, MissingCellError
from ringcross.experiment import (
    CSV_HEADER,
    cell_stats,
    emit_csv,
    emit_table,
    experiment_metadata,
    parse_csv,
    render_header,
    run_experiment,
    trial_config,
)
from ringcross.types import CellStats, CrossoverKind, ExperimentPlan, FunctionId, GaConfig


def _plan(small_config, functions, operators, runs=3, seed=11, jobs=1):
    return ExperimentPlan(
        functions=functions,
        operators=operators,
        runs_per_cell=runs,
        base_config=small_config,
        master_seed=seed,
        n_jobs=jobs,
    )


def _cell(function, operator, best=1.0, worst=3.0, average=2.0):
    return CellStats(
        function=function,
        operator=operator,
        best=best,
        worst=worst,
        average=average,
        all_bests=[best, average, worst],
    )


def test_single_run_cell_collapses(small_config):
    stats = run_experiment(_plan(small_config, [FunctionId.F1], [CrossoverKind.RC], runs=1))

    assert len(stats) == 1
    cell = stats[0]
    assert cell.best == cell.worst == cell.average
    assert (cell.function, cell.operator) == (FunctionId.F1, CrossoverKind.RC)


def test_experiment_is_deterministic(small_config):
    plan = _plan(small_config, [FunctionId.F1, FunctionId.F5], [CrossoverKind.RC, CrossoverKind.SPC])
    first = run_experiment(plan)
    second = run_experiment(plan)

    assert [c.model_dump() for c in first] == [c.model_dump() for c in second]
    assert [(c.function, c.operator) for c in first] == [
        (FunctionId.F1, CrossoverKind.RC),
        (FunctionId.F1, CrossoverKind.SPC),
        (FunctionId.F5, CrossoverKind.RC),
        (FunctionId.F5, CrossoverKind.SPC),
    ]


def test_cells_do_not_depend_on_plan_composition(small_config):
    full = run_experiment(
        _plan(small_config, [FunctionId.F1, FunctionId.F5], [CrossoverKind.RC, CrossoverKind.AC])
    )
    subset = run_experiment(_plan(small_config, [FunctionId.F5], [CrossoverKind.AC]))

    assert subset[0].all_bests == full[3].all_bests


def test_parallel_workers_do_not_change_results(small_config):
    functions = [FunctionId.F2, FunctionId.F6]
    operators = [CrossoverKind.HC, CrossoverKind.RC]
    serial = run_experiment(_plan(small_config, functions, operators, jobs=1))
    parallel = run_experiment(_plan(small_config, functions, operators, jobs=2))

    assert [c.all_bests for c in serial] == [c.all_bests for c in parallel]


def test_empty_plan_is_rejected(small_config):
    with pytest.raises(InvalidParameterError):
        run_experiment(_plan(small_config, [], [CrossoverKind.RC]))
    with pytest.raises(InvalidParameterError):
        run_experiment(_plan(small_config, [FunctionId.F1], []))


def test_trial_seeds_are_distinct_and_override_operator(small_config):
    plan = _plan(small_config, [FunctionId.F1], [CrossoverKind.TPC], runs=5)
    configs = [trial_config(plan, FunctionId.F1, CrossoverKind.TPC, k) for k in range(5)]

    assert len({cfg.seed for cfg in configs}) == 5
    assert all(cfg.crossover == CrossoverKind.TPC for cfg in configs)
    assert all(cfg.population_size == small_config.population_size for cfg in configs)


def test_cell_stats_aggregates():
    cell = cell_stats(FunctionId.F3, CrossoverKind.IC, [4.0, 1.0, 7.0])
    assert (cell.best, cell.worst, cell.average) == (1.0, 7.0, 4.0)
    assert cell.all_bests == [4.0, 1.0, 7.0]


def test_cell_stats_reject_inconsistent_order():
    with pytest.raises(ValueError):
        _cell(FunctionId.F1, CrossoverKind.RC, best=2.0, worst=3.0, average=1.0)


# CSV

def test_csv_sample_row():
    cell = CellStats(
        function=FunctionId.F1,
        operator=CrossoverKind.RC,
        best=0.0027,
        worst=6.163,
        average=0.3299,
        all_bests=[0.0027, 6.163],
    )
    lines = emit_csv([cell]).splitlines()

    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1].startswith("F1,RC,0.00270000,6.16300,0.329900,2,")


def test_csv_is_byte_stable():
    stats = [_cell(FunctionId.F1, CrossoverKind.RC), _cell(FunctionId.F2, CrossoverKind.RC)]
    assert emit_csv(stats) == emit_csv(stats)


def test_csv_rejects_empty_input():
    with pytest.raises(InvalidParameterError):
        emit_csv([])


def test_parse_csv_skips_header_lines():
    stats = [
        _cell(FunctionId.F4, CrossoverKind.SPC, best=-418.9, worst=-300.5, average=-350.25),
        _cell(FunctionId.F6, CrossoverKind.HC, best=0.001, worst=0.5, average=0.1),
    ]
    text = render_header({"master_seed": "0"}) + emit_csv(stats)

    rows = parse_csv(text)

    assert [(r.function, r.operator) for r in rows] == [
        (FunctionId.F4, CrossoverKind.SPC),
        (FunctionId.F6, CrossoverKind.HC),
    ]
    assert rows[0].average == pytest.approx(-350.25)
    assert rows[1].runs == 3


def test_parse_csv_rejects_foreign_header():
    with pytest.raises(InvalidParameterError):
        parse_csv("a,b,c\n1,2,3\n")


# Table

def test_table_single_cell():
    blocks = [b for b in emit_table([_cell(FunctionId.F1, CrossoverKind.RC)]).split("\n\n") if b]

    assert len(blocks) == 1
    lines = blocks[0].splitlines()
    assert lines[0].split() == ["F1", "RC"]
    assert [line.split()[0] for line in lines[1:]] == ["Best", "Worst", "Average"]
    assert all(len(line.split()) == 2 for line in lines[1:])


def test_table_full_grid_layout():
    stats = [_cell(f, op) for f in FunctionId for op in CrossoverKind]
    blocks = [b for b in emit_table(stats).split("\n\n") if b.strip()]

    assert len(blocks) == 6
    for block, function in zip(blocks, FunctionId):
        lines = block.splitlines()
        assert lines[0].split() == [function.value] + [op.name for op in CrossoverKind]
        assert len(lines) == 4
        assert all(len(line.split()) == 7 for line in lines[1:])


def test_table_names_missing_cell():
    stats = [
        _cell(FunctionId.F1, CrossoverKind.RC),
        _cell(FunctionId.F1, CrossoverKind.HC),
        _cell(FunctionId.F3, CrossoverKind.RC),
    ]
    with pytest.raises(MissingCellError, match="F3/HC"):
        emit_table(stats)


def test_metadata_ignores_worker_count(small_config):
    plan = _plan(small_config, [FunctionId.F1], [CrossoverKind.RC], jobs=1)
    wider = plan.model_copy(update={"n_jobs": 4})

    assert experiment_metadata(plan) == experiment_metadata(wider)
    assert experiment_metadata(plan)["master_seed"] == "11"
    assert render_header({"a": "1", "b": "x y"}) == "# a: 1\n# b: x y\n"


@pytest.mark.slow
def test_ring_crossover_ranks_ahead_where_gaps_are_large():
    def mean_by_operator(function, operators):
        plan = ExperimentPlan(
            functions=[function],
            operators=operators,
            runs_per_cell=30,
            base_config=GaConfig(),
            master_seed=0,
            n_jobs=4,
        )
        return {cell.operator: cell.average for cell in run_experiment(plan)}

    for function in (FunctionId.F1, FunctionId.F5):
        means = mean_by_operator(function, [CrossoverKind.RC, CrossoverKind.SPC, CrossoverKind.IC])
        assert means[CrossoverKind.RC] < means[CrossoverKind.SPC]
        assert means[CrossoverKind.RC] < means[CrossoverKind.IC]

    means = mean_by_operator(FunctionId.F2, [CrossoverKind.RC, CrossoverKind.AC])
    assert means[CrossoverKind.RC] < means[CrossoverKind.AC]
