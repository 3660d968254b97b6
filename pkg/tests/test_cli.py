import json
import os

import numpy as np
import pytest
from click.testing import CliRunner

from cobra.cli import main
from cobra.documents import read_document, strip_volatile


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def tiny_csv(tmp_path):
    rng = np.random.default_rng(0)
    lines = ["f0,f1,kind"]
    for c, (cx, cy) in enumerate([(0.0, 0.0), (30.0, 30.0)]):
        for _ in range(10):
            x, y = rng.normal(cx, 1.0), rng.normal(cy, 1.0)
            lines.append(f"{x:.6f},{y:.6f},k{c}")
    path = tmp_path / "tiny.csv"
    path.write_text("\n".join(lines) + "\n")
    return str(path)


class TestCluster:
    def test_writes_result_and_log(self, runner, tiny_csv, tmp_path):
        out = str(tmp_path / "r.json")
        result = runner.invoke(
            main,
            ["cluster", "--data", tiny_csv, "--label-column", "kind",
             "--n-super", "4", "--seed", "1", "--out", out],
        )
        assert result.exit_code == 0, result.output
        assert "oracle queries:" in result.output
        assert "query bounds" in result.output
        doc = read_document(out)
        assert doc["n_clusters_found"] == 2
        assert os.path.exists(out + ".log")
        with open(out + ".log") as fh:
            for line in fh:
                record = json.loads(line)
                assert record["answer"] in ("must-link", "cannot-link")

    def test_replay_reproduces_document(self, runner, tiny_csv, tmp_path):
        first = str(tmp_path / "first.json")
        result = runner.invoke(
            main,
            ["cluster", "--data", tiny_csv, "--label-column", "kind",
             "--n-super", "4", "--seed", "7", "--out", first],
        )
        assert result.exit_code == 0, result.output
        second = str(tmp_path / "second.json")
        result = runner.invoke(
            main,
            ["cluster", "--data", tiny_csv, "--label-column", "kind",
             "--n-super", "4", "--seed", "7",
             "--oracle", "replay", "--replay", first + ".log", "--out", second],
        )
        assert result.exit_code == 0, result.output
        assert strip_volatile(read_document(first)) == strip_volatile(
            read_document(second)
        )

    def test_label_oracle_requires_label_column(self, runner, tiny_csv):
        result = runner.invoke(
            main, ["cluster", "--data", tiny_csv, "--n-super", "4"]
        )
        assert result.exit_code == 2
        assert "--label-column" in result.output

    def test_replay_oracle_requires_log(self, runner, tiny_csv):
        result = runner.invoke(
            main,
            ["cluster", "--data", tiny_csv, "--n-super", "4", "--oracle", "replay"],
        )
        assert result.exit_code == 2

    def test_n_super_minimum(self, runner, tiny_csv):
        result = runner.invoke(
            main,
            ["cluster", "--data", tiny_csv, "--label-column", "kind", "--n-super", "1"],
        )
        assert result.exit_code == 2

    def test_missing_file_is_data_error(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["cluster", "--data", str(tmp_path / "nope.csv"),
             "--label-column", "kind", "--n-super", "4"],
        )
        assert result.exit_code == 3

    def test_bad_cell_is_data_error(self, runner, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,kind\n1,2,x\noops,4,y\n")
        result = runner.invoke(
            main,
            ["cluster", "--data", str(path), "--label-column", "kind", "--n-super", "2"],
        )
        assert result.exit_code == 3
        assert "row 2, column 1" in result.output

    def test_divergent_replay_is_exit_4(self, runner, tiny_csv, tmp_path):
        out = str(tmp_path / "r.json")
        result = runner.invoke(
            main,
            ["cluster", "--data", tiny_csv, "--label-column", "kind",
             "--n-super", "4", "--seed", "1", "--out", out],
        )
        assert result.exit_code == 0
        # a different seed reshapes the super-instances, so the recorded
        # answers stop matching the pairs being asked about
        result = runner.invoke(
            main,
            ["cluster", "--data", tiny_csv, "--label-column", "kind",
             "--n-super", "4", "--seed", "2",
             "--oracle", "replay", "--replay", out + ".log",
             "--out", str(tmp_path / "d.json")],
        )
        assert result.exit_code == 4

    def test_env_var_override(self, runner, tiny_csv, tmp_path):
        out = str(tmp_path / "env.json")
        result = runner.invoke(
            main,
            ["cluster", "--data", tiny_csv, "--label-column", "kind", "--out", out],
            env={"COBRA_CLUSTER_N_SUPER": "4"},
        )
        assert result.exit_code == 0, result.output
        assert len(read_document(out)["super_instances"]) == 4


class TestBench:
    def test_report_and_table(self, runner, tiny_csv, tmp_path):
        out = str(tmp_path / "report.json")
        result = runner.invoke(
            main,
            ["bench", "--data", tiny_csv, "--label-column", "kind",
             "--n-super", "3", "--n-super", "5", "--folds", "3", "--out", out],
        )
        assert result.exit_code == 0, result.output
        assert "n_super" in result.output
        report = read_document(out)
        assert [row["n_super"] for row in report["rows"]] == [3, 5]
        for row in report["rows"]:
            assert len(row["folds"]) == 3
            for fold in row["folds"]:
                assert -1.0 <= fold["ari_test"] <= 1.0

    def test_determinism_modulo_wall_time(self, runner, tiny_csv, tmp_path):
        outs = []
        for name in ("r1.json", "r2.json"):
            out = str(tmp_path / name)
            result = runner.invoke(
                main,
                ["bench", "--data", tiny_csv, "--label-column", "kind",
                 "--n-super", "4", "--folds", "3", "--seed", "5", "--out", out],
            )
            assert result.exit_code == 0, result.output
            outs.append(read_document(out))
        assert strip_volatile(outs[0]) == strip_volatile(outs[1])

    def test_requires_label_column(self, runner, tiny_csv):
        result = runner.invoke(main, ["bench", "--data", tiny_csv])
        assert result.exit_code == 2

    def test_rejects_bad_folds(self, runner, tiny_csv):
        result = runner.invoke(
            main,
            ["bench", "--data", tiny_csv, "--label-column", "kind", "--folds", "1"],
        )
        assert result.exit_code == 2


class TestBaseline:
    def test_full_strategy(self, runner, tiny_csv, tmp_path):
        out = str(tmp_path / "base.json")
        result = runner.invoke(
            main,
            ["baseline", "--data", tiny_csv, "--label-column", "kind",
             "--strategy", "full", "--out", out],
        )
        assert result.exit_code == 0, result.output
        doc = read_document(out)
        assert doc["oracle_count"] == 20 * 19 // 2
        assert doc["ari"] == 1.0

    def test_closure_strategies_beat_full(self, runner, tiny_csv):
        counts = {}
        for strategy in ("full", "closure-random", "closure-closest"):
            result = runner.invoke(
                main,
                ["baseline", "--data", tiny_csv, "--label-column", "kind",
                 "--strategy", strategy, "--seed", "3"],
            )
            assert result.exit_code == 0, result.output
            line = next(
                l for l in result.output.splitlines() if l.startswith("oracle queries:")
            )
            counts[strategy] = int(line.split()[2])
        assert counts["closure-random"] <= counts["full"]
        assert counts["closure-closest"] <= counts["full"]

    def test_unknown_strategy_rejected(self, runner, tiny_csv):
        result = runner.invoke(
            main,
            ["baseline", "--data", tiny_csv, "--label-column", "kind",
             "--strategy", "psychic"],
        )
        assert result.exit_code == 2
