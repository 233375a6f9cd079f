import pytest

from ringcross.cli import CliCommand, main, parse_args
from ringcross.experiment import parse_csv
from ringcross.types import CrossoverKind, FunctionId

SMALL = ["--pop", "10", "--dim", "5", "--budget", "200"]


def _body(text):
    return [line for line in text.splitlines() if line and not line.startswith("#")]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("RINGCROSS_LOG_LEVEL", raising=False)
    monkeypatch.delenv("RINGCROSS_JOBS", raising=False)


def test_list_shows_catalog(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out

    for function in FunctionId:
        assert f"  {function.value}  " in out
    for kind in CrossoverKind:
        assert f"{kind.name} " in out
    assert "bounds [-500, 500]" in out
    assert "f=-418.983" in out


def test_run_prints_summary(capsys):
    assert main(["run", "--function", "F5", "--operator", "rc", "--seed", "1", *SMALL]) == 0
    out = capsys.readouterr().out

    assert "# seed: 1" in out
    assert "function: F5" in out
    assert "operator: RC" in out
    assert "evaluations_used: 200" in out


def test_run_trace_has_one_line_per_generation(capsys):
    assert main(["run", "--trace", "--seed", "2", *SMALL]) == 0
    body = _body(capsys.readouterr().out)

    start = body.index("generation,best_ever,population_best")
    generations = int(next(line for line in body if line.startswith("generations:")).split()[1])
    assert len(body) - start - 1 == generations + 1


def test_out_of_range_rate_names_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["run", "--pc", "1.5"])

    assert excinfo.value.code == 2
    assert "--pc" in capsys.readouterr().err


def test_unknown_operator_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["bench", "--operator", "xover"])

    assert excinfo.value.code == 2
    assert "xover" in capsys.readouterr().err


def test_inconsistent_sizes_name_flags(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["run", "--pop", "4", "--elite", "4"])

    assert excinfo.value.code == 2
    err = capsys.readouterr().err
    assert "--elite" in err or "--pop" in err


def test_variety_report(capsys):
    assert main(["variety", "--dmin", "2", "--dmax", "8"]) == 0
    body = _body(capsys.readouterr().out)

    assert body[0].split() == ["d", "SPC", "TPC", "RC", "RC/SPC"]
    assert len(body) == 8


def test_bench_output_is_reproducible(tmp_path):
    args = ["bench", "--function", "F1", "--function", "F6", "--operator", "rc", "--operator", "ac",
            "--runs", "2", "--seed", "7", *SMALL]
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"

    assert main([*args, "--out", str(first)]) == 0
    assert main([*args, "--out", str(second)]) == 0

    assert first.read_bytes() == second.read_bytes()
    rows = parse_csv(first.read_text())
    assert [(r.function, r.operator) for r in rows] == [
        (FunctionId.F1, CrossoverKind.RC),
        (FunctionId.F1, CrossoverKind.AC),
        (FunctionId.F6, CrossoverKind.RC),
        (FunctionId.F6, CrossoverKind.AC),
    ]
    assert all(r.runs == 2 for r in rows)


def test_bench_table_format(capsys):
    assert main(["bench", "--function", "F2", "--operator", "hc", "--runs", "1", "--format", "table", *SMALL]) == 0
    body = _body(capsys.readouterr().out)

    assert body[0].split() == ["F2", "HC"]
    assert [line.split()[0] for line in body[1:]] == ["Best", "Worst", "Average"]


def test_flags_override_config_file(tmp_path, capsys):
    config = tmp_path / "ringcross.conf"
    config.write_text("pop=12\nseed=5\noperator=hc\nbudget=120\ndim=4\n")

    assert main(["run", "--config", str(config), "--seed", "9"]) == 0
    out = capsys.readouterr().out

    assert "# seed: 9" in out
    assert "population_size=12" in out
    assert "operator: HC" in out
    assert "evaluations_used: 120" in out


def test_unknown_config_key_is_rejected(tmp_path, capsys):
    config = tmp_path / "bad.conf"
    config.write_text("mutation=0.5\n")

    with pytest.raises(SystemExit) as excinfo:
        main(["run", "--config", str(config)])

    assert excinfo.value.code == 2
    assert "mutation" in capsys.readouterr().err


def test_missing_config_file(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        main(["list", "--config", str(tmp_path / "absent.conf")])
    assert excinfo.value.code == 2


def test_invalid_environment_setting(monkeypatch):
    monkeypatch.setenv("RINGCROSS_JOBS", "0")
    with pytest.raises(SystemExit) as excinfo:
        main(["list"])
    assert excinfo.value.code == 2


def test_unwritable_output_returns_failure(tmp_path, capsys):
    target = tmp_path / "missing-dir" / "out.txt"
    assert main(["list", "--out", str(target)]) == 1
    assert "ringcross list" in capsys.readouterr().err


def test_parse_args_applies_protocol_defaults():
    command, options = parse_args(["bench", "--seed", "7"])

    assert command == CliCommand.BENCH
    assert options["seed"] == 7
    assert (options["pop"], options["dim"], options["budget"]) == (20, 30, 10_000)
    assert (options["pc"], options["pm"], options["runs"]) == (0.8, 0.01, 30)
    assert options["function"] is None
    assert options["operator"] is None


def test_parse_args_collects_repeated_tags():
    command, options = parse_args(["bench", "--function", "f2", "--operator", "RC", "--operator", "tpc"])

    assert command == CliCommand.BENCH
    assert options["function"] == [FunctionId.F2]
    assert options["operator"] == [CrossoverKind.RC, CrossoverKind.TPC]


@pytest.mark.parametrize("flag, value", [("--dmax", "13"), ("--dmin", "0")])
def test_variety_length_outside_range_names_flag(flag, value, capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["variety", flag, value])

    assert excinfo.value.code == 2
    assert flag in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["run", "--operator", "rc", "--operator", "spc"],
    ["run", "--function", "F1", "--function", "F2"],
])
def test_run_rejects_several_values(argv, capsys):
    with pytest.raises(SystemExit) as excinfo:
        main([*argv, *SMALL])

    assert excinfo.value.code == 2
    assert "run takes a single value" in capsys.readouterr().err


def test_run_rejects_operator_list_from_config_file(tmp_path, capsys):
    config = tmp_path / "grid.conf"
    config.write_text("operator=rc,spc\n")

    with pytest.raises(SystemExit) as excinfo:
        main(["run", "--config", str(config), *SMALL])

    assert excinfo.value.code == 2
    assert "--operator" in capsys.readouterr().err


def test_unknown_log_level_names_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["list", "--log-level", "LOUD"])

    assert excinfo.value.code == 2
    err = capsys.readouterr().err
    assert "--log-level" in err
    assert "LOUD" in err


def test_log_level_is_case_insensitive():
    _, options = parse_args(["list", "--log-level", "debug"])
    assert options["log_level"] == "DEBUG"
