"""End-to-end runs of the command-line surface."""

import json

import pytest

from g2ml.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCount:
    def test_published_value(self, capsys):
        code, out, _ = run(capsys, "count", "--weights", "1,2,3,5",
                           "--h", "2")
        assert code == 0 and out.strip() == "24862"

    def test_even_weights(self, capsys):
        code, out, _ = run(capsys, "count", "--weights", "2,4,6,10",
                           "--h", "2")
        assert code == 0 and out.strip() == "39251668"

    def test_general_upper_bound_notes(self, capsys):
        code, out, err = run(capsys, "count", "--weights", "1,2", "--h", "3")
        assert code == 0
        assert "upper bound" in err


class TestEnumerate:
    def test_writes_artifact_and_sidecar(self, capsys, tmp_path):
        out_path = tmp_path / "h1.jsonl"
        code, out, _ = run(capsys, "enumerate", "--h", "1",
                           "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        header = json.loads(lines[0])
        assert header["metadata"]["tool"]["name"] == "g2ml"
        assert len(lines) == 1 + 54
        sidecar = json.loads((tmp_path / "h1.jsonl.summary.json").read_text())
        assert sidecar["report"]["classes"] == 27

    def test_rerun_is_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run(capsys, "enumerate", "--h", "1", "--out", str(a))
        run(capsys, "enumerate", "--h", "1", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()


class TestScan:
    def test_strict_below_threshold_is_empty(self, capsys, tmp_path):
        out_path = tmp_path / "l2.jsonl"
        code, _, _ = run(capsys, "scan-l2", "--h", "3/2", "--strict",
                         "--out", str(out_path))
        assert code == 0
        assert len(out_path.read_text().splitlines()) == 1  # header only


class TestGen:
    def test_deterministic_l5(self, capsys, tmp_path):
        a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        run(capsys, "gen", "l5", "--n", "6", "--seed", "7", "--out", str(a))
        run(capsys, "gen", "l5", "--n", "6", "--seed", "7", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_l3_records_carry_provenance(self, capsys, tmp_path):
        out_path = tmp_path / "l3.jsonl"
        run(capsys, "gen", "l3", "--n", "4", "--seed", "2",
            "--out", str(out_path))
        lines = out_path.read_text().splitlines()[1:]
        recs = [json.loads(line) for line in lines]
        assert len(recs) == 4
        assert all(r["provenance"] == "l3-param" for r in recs)
        assert all(r["inL3"] is True and r["fine"] is True for r in recs)


class TestDatasetPipeline:
    def test_build_features_audit_plot(self, capsys, tmp_path):
        data = tmp_path / "d.jsonl"
        code, out, _ = run(capsys, "dataset", "build", "--seed", "5",
                           "--n-l2", "30", "--n-l3", "30", "--n-other", "30",
                           "--out", str(data))
        assert code == 0

        csv = tmp_path / "f.csv"
        code, out, _ = run(capsys, "dataset", "features", str(data),
                           "--out", str(csv))
        assert code == 0
        assert csv.read_text().startswith("J2,J4,J6,J10,class\n")

        code, out, _ = run(capsys, "dataset", "audit", str(data))
        assert code == 0 and "0 problems" in out

        merged = tmp_path / "m.jsonl"
        code, out, _ = run(capsys, "dataset", "merge", str(data), str(data),
                           "--out", str(merged))
        assert code == 0 and "90 records" in out

        fig = tmp_path / "fig.svg"
        code, out, _ = run(capsys, "plot", "--data", str(data),
                           "--out", str(fig))
        assert code == 0
        head = fig.read_text()[:600]
        assert "<svg" in head and "SVG 1.1" in head

    def test_four_class_scheme_includes_l5(self, capsys, tmp_path):
        data = tmp_path / "d.jsonl"
        run(capsys, "dataset", "build", "--seed", "6", "--n-l2", "25",
            "--n-l3", "25", "--n-l5", "25", "--n-other", "25",
            "--out", str(data))
        csv = tmp_path / "f.csv"
        code, out, _ = run(capsys, "dataset", "features", str(data),
                           "--out", str(csv), "--scheme", "4class")
        assert code == 0
        classes = {line.rsplit(",", 1)[1]
                   for line in csv.read_text().splitlines()[1:]}
        assert classes == {"L2", "L3", "L5", "other"}
        code, out, _ = run(capsys, "ml", "train", "--data", str(csv),
                           "--model", "forest", "--seed", "2")
        assert code == 0 and "Accuracy" in out

    def test_ml_train_eval_cluster(self, capsys, tmp_path):
        data = tmp_path / "d.jsonl"
        run(capsys, "dataset", "build", "--seed", "5", "--n-l2", "40",
            "--n-l3", "40", "--n-other", "40", "--out", str(data))
        csv = tmp_path / "f.csv"
        run(capsys, "dataset", "features", str(data), "--out", str(csv))

        model = tmp_path / "knn.json"
        metrics = tmp_path / "m.json"
        code, out, _ = run(capsys, "ml", "train", "--data", str(csv),
                           "--model", "knn", "--out", str(model),
                           "--metrics", str(metrics), "--seed", "3")
        assert code == 0
        assert "Accuracy" in out
        payload = json.loads(metrics.read_text())
        assert payload["metrics"]["accuracy"] >= 0.5

        code, out, _ = run(capsys, "ml", "eval", "--model", str(model),
                           "--data", str(csv))
        assert code == 0 and "Weighted Avg" in out

        code, out, _ = run(capsys, "ml", "cluster", "--data", str(csv),
                           "--algorithm", "kmeans", "--k", "3",
                           "--seed", "2")
        assert code == 0 and "ARI=" in out


class TestConfigFileFlag:
    def test_config_file_feeds_defaults_and_flags_override(self, capsys,
                                                           tmp_path):
        conf = tmp_path / "run.conf"
        conf.write_text("seed=11\nnumerator_bound=9\n")
        out_path = tmp_path / "g.jsonl"
        code, _, _ = run(capsys, "gen", "l5", "--n", "3",
                         "--config", str(conf), "--out", str(out_path))
        assert code == 0
        header = json.loads(out_path.read_text().splitlines()[0])
        assert header["metadata"]["config"]["seed"] == 11
        assert header["metadata"]["config"]["numerator_bound"] == 9

        code, _, _ = run(capsys, "gen", "l5", "--n", "3", "--seed", "5",
                         "--config", str(conf), "--out", str(out_path))
        header = json.loads(out_path.read_text().splitlines()[0])
        assert header["metadata"]["config"]["seed"] == 5  # flag wins


class TestReport:
    def test_quick_tables(self, capsys, tmp_path):
        out_dir = tmp_path / "report"
        code, out, _ = run(capsys, "report", "tables", "--parallelism", "2",
                           "--out", str(out_dir))
        assert code == 0
        assert "counts: PASS" in out
        assert "height-1-classes: PASS" in out
        assert "l2-points: AUDIT" in out
        assert "l3-audit: AUDIT" in out
        tsv = (out_dir / "table-checks.tsv").read_text().splitlines()
        assert tsv[0] == "name\tstatus\tsummary"
        assert len(tsv) == 5
        assert (out_dir / "counts.svg").exists()


class TestErrors:
    def test_usage_error_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["count", "--weights", "1,2,3,5"])  # missing --h
        assert exc.value.code == 2
        err = capsys.readouterr().err
        assert json.loads(err.splitlines()[0])["error"]["code"] == "usage"

    def test_computation_error_exit_1(self, capsys, tmp_path):
        code, _, err = run(capsys, "enumerate", "--h", "0",
                           "--out", str(tmp_path / "x.jsonl"))
        assert code == 1
        assert "error" in json.loads(err.splitlines()[0])

    def test_missing_file_exit_1(self, capsys):
        code, _, err = run(capsys, "dataset", "audit", "/nonexistent.jsonl")
        assert code == 1
        assert json.loads(err.splitlines()[0])["error"]["code"]
