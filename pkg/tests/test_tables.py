import json

import jsonschema
import pytest

from scoresig.errors import ParseError
from scoresig.sim import TABLE_JSON_SCHEMA, ExperimentConfig, emit_plot_data, emit_statistics, emit_table
from scoresig.sim import read_table_csv, run_type1_experiment, run_type2_experiment
from scoresig.sim.presets import NORMAL


@pytest.fixture(scope="module")
def table():
    config = ExperimentConfig(
        dist_a=NORMAL,
        dist_b=NORMAL,
        sample_sizes=(5, 6),
        num_simulations_aso=10,
        num_simulations_other=20,
        thresholds=(0.05, 0.2),
        aso_bootstrap=50,
        num_resamples=100,
        seed=2,
    )
    return run_type1_experiment(config)


def _one_row_table():
    config = ExperimentConfig(
        dist_a=NORMAL, dist_b=NORMAL, sample_sizes=(5,), num_simulations_other=10, tests=("student_t",)
    )
    return run_type1_experiment(config)


def test_one_row_csv():
    text = emit_table(_one_row_table(), "csv")
    assert text.splitlines()[0] == "size,threshold,student_t"
    assert len(text.splitlines()) == 2


def test_csv_round_trip(table):
    assert read_table_csv(emit_table(table, "csv")) == table.rows


def test_csv_round_trip_mean_difference():
    config = ExperimentConfig(
        dist_a=NORMAL,
        dist_b=NORMAL,
        num_simulations_other=10,
        tests=("mann_whitney",),
        mean_differences=(0.25, 1.0),
    )
    t = run_type2_experiment(config, "by_mean_difference")
    assert read_table_csv(emit_table(t, "csv")) == t.rows


def test_read_bad_csv():
    with pytest.raises(ParseError):
        read_table_csv("")
    with pytest.raises(ParseError):
        read_table_csv("size,threshold,anova\n5,0.05,0.1\n")
    with pytest.raises(ParseError):
        read_table_csv("size,threshold,aso\n5,0.05\n")


def test_json_validates(table):
    data = json.loads(emit_table(table, "json"))
    jsonschema.validate(data, TABLE_JSON_SCHEMA)
    assert data["config"]["dist_a"] == {"family": "normal", "params": [0.0, 1.5]}
    assert "num_jobs" not in data["config"]


def test_latex_layout(table):
    latex = emit_table(table, "latex")
    lines = latex.splitlines()
    assert lines[0] == r"\begin{tabular}{llrrrrrr}"
    assert lines[2].startswith("Sample Size & Threshold & ASO & Student's t")
    assert lines[4].startswith("5 & 0.05 & ")
    assert lines[5].startswith(" & 0.20 & ")
    assert latex.count(r"\midrule") == 2
    assert lines[-1] == r"\end{tabular}"


def test_plot_data_pairs_aso_with_tau(table):
    lines = emit_plot_data(table, 0.05, 0.2).splitlines()
    assert lines[0] == "x,test,rate"
    assert len(lines) == 1 + 2 * 6
    aso_rows = [l for l in lines if ",aso," in l]
    assert aso_rows[0] == f"5,aso,{table.rate(5, 0.2, 'aso')!r}"


def test_statistics_dump(table):
    lines = emit_statistics(table).splitlines()
    assert lines[0] == "x,test,simulation,statistic"
    assert len(lines) == 1 + 2 * (10 + 5 * 20)


def test_unknown_format(table):
    with pytest.raises(ValueError):
        emit_table(table, "xlsx")
