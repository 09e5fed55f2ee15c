import json

import pytest

from incclust.cli import build_config, load_config_file, main, make_parser
from incclust.dataset import Metric

SMALL_CONFIG_TOML = """\
base_size = 30
sizes = [30, 40, 50]
increments = [10, 20]
trials = 1
warmup = 0
seed = 3
dim = 2
n_blobs = 2
blob_spread = 1.0
outlier_fraction = 0.1
k = 2
eps = 6.0
min_pts = 3
metric = "manhattan"
"""


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "bench.toml"
    path.write_text(SMALL_CONFIG_TOML)
    return path


class TestConfigLoading:
    def test_file_values(self, config_file):
        values = load_config_file(config_file)
        assert values["base_size"] == 30
        assert values["batch_sizes"] == [30, 40, 50]
        assert values["increment_sizes"] == [10, 20]
        assert values["metric"] is Metric.MANHATTAN

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text("volume = 11\n")
        with pytest.raises(ValueError, match="unknown config key"):
            load_config_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_config_file(tmp_path / "nope.toml")

    def test_flags_win_over_file(self, config_file):
        args = make_parser().parse_args(
            ["batch", "--config", str(config_file), "--trials", "4", "--metric", "euclidean"]
        )
        config = build_config(args)
        assert config.trials == 4
        assert config.metric is Metric.EUCLIDEAN
        assert config.base_size == 30  # still from the file

    def test_defaults_without_file(self):
        args = make_parser().parse_args(["compare"])
        config = build_config(args)
        assert config.base_size == 500


class TestSubcommands:
    def test_batch_writes_csv(self, config_file, tmp_path, capsys):
        out = tmp_path / "out"
        rc = main(
            ["batch", "--config", str(config_file), "--algorithm", "kmeans", "--out", str(out)]
        )
        assert rc == 0
        csv = out / "kmeans_batch_timings.csv"
        assert csv.exists()
        assert csv.read_text().count("\n") == 4  # header + three sizes
        assert "median_ms" in capsys.readouterr().out

    def test_incremental_respects_csv_flag(self, config_file, tmp_path):
        target = tmp_path / "custom.csv"
        rc = main(
            [
                "incremental", "--config", str(config_file),
                "--algorithm", "dbscan", "--out", str(tmp_path / "out"),
                "--csv", str(target),
            ]
        )
        assert rc == 0
        assert target.exists()
        assert target.read_text().startswith("algorithm,mode,")

    def test_compare_full_run(self, config_file, tmp_path, capsys):
        out = tmp_path / "cmp"
        rc = main(["compare", "--config", str(config_file), "--out", str(out)])
        assert rc == 0
        assert (out / "comparison_report.csv").exists()
        assert (out / "kmeans_crossover.json").exists()
        doc = json.loads((out / "dbscan_crossover.json").read_text())
        assert "threshold_percent" in doc
        stdout = capsys.readouterr().out
        assert "== kmeans ==" in stdout and "== dbscan ==" in stdout

    def test_flag_overrides_drive_the_run(self, tmp_path):
        out = tmp_path / "flags"
        rc = main(
            [
                "batch", "--algorithm", "dbscan", "--out", str(out),
                "--sizes", "25,35", "--increments", "10", "--base-size", "25",
                "--trials", "1", "--warmup", "0", "--seed", "9",
                "--eps", "6.0", "--min-pts", "3", "--k", "2", "--metric", "manhattan",
            ]
        )
        assert rc == 0
        lines = (out / "dbscan_batch_timings.csv").read_text().rstrip().split("\n")
        assert len(lines) == 3
        assert lines[1].startswith("dbscan,batch,25,")

    def test_error_exit_nonzero_with_diagnostic(self, tmp_path, capsys):
        rc = main(
            ["batch", "--algorithm", "kmeans", "--out", str(tmp_path),
             "--sizes", "30", "--increments", "10", "--base-size", "30"]
        )
        assert rc == 1
        assert "matching batch size" in capsys.readouterr().err

    def test_bad_flag_value_exits_nonzero(self):
        with pytest.raises(SystemExit) as exc:
            main(["batch", "--sizes", "ten,twenty"])
        assert exc.value.code != 0

    def test_missing_subcommand_exits_nonzero(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code != 0
