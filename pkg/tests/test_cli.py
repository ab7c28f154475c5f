import json
import math

import pandas as pd
import pytest

from docsim.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, execute
from docsim.config import RunConfig


def _run(capsys, argv):
    code = execute([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTheory:

    def test_required_n(self, capsys):
        code, out, _ = _run(capsys, ["theory", "required-n", "--d", "0.21", "--m", "10"])
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["ceil"] == math.ceil(payload["value"]) == 4155588
        assert abs(payload["value"] - 4155587) <= 1

    def test_nn_distance(self, capsys):
        code, out, _ = _run(capsys, ["theory", "nn-distance", "--m", "1", "--n", "1"])
        assert code == EXIT_OK
        assert json.loads(out)["value"] == pytest.approx(0.5)

    def test_underflowing_distance_exits_cleanly(self, capsys):
        code, out, err = _run(capsys, ["theory", "required-n", "--d", "1e-200", "--m", "2"])
        assert code == EXIT_USAGE
        assert out == ""
        assert "float" in err

    def test_invalid_value_is_usage_error(self, capsys):
        code, out, err = _run(capsys, ["theory", "required-n", "--d", "1.5", "--m", "3"])
        assert code == EXIT_USAGE
        assert out == ""
        assert err


class TestSweep:

    @pytest.fixture
    def sweep_args(self, mini_train_path, mini_test_path, tmp_path):
        def make(out_name="report.csv", jobs=1, extra=()):
            return [
                "sweep", "--train", mini_train_path, "--test", mini_test_path,
                "--norm", "l2", "--dims", "40,80,1000", "--metrics", "ed,cs",
                "--out", tmp_path / out_name, "--jobs", jobs, *extra,
            ]
        return make

    def test_l2_rows_match(self, capsys, sweep_args, tmp_path):
        code, out, err = _run(capsys, sweep_args())
        assert code == EXIT_OK
        assert out == ""
        assert "✅" in err

        frame = pd.read_csv(tmp_path / "report.csv")
        assert list(frame.columns) == ["metric", "dimension", "normalization", "accuracy", "n_queries", "n_zero_vectors"]
        ed = frame[frame.metric == "ed"].set_index("dimension")["accuracy"]
        cs = frame[frame.metric == "cs"].set_index("dimension")["accuracy"]
        assert len(ed) == 3
        assert ed.to_dict() == cs.to_dict()
        assert (frame.n_queries == 15).all()

    def test_provenance_echoes_config(self, capsys, sweep_args, tmp_path):
        _run(capsys, sweep_args())
        prov = json.loads((tmp_path / "report.json").read_text(encoding="utf-8"))
        echoed = RunConfig.from_toml(prov["config_echo"])
        assert echoed.dims == (40, 80, 1000)
        assert echoed.norm == ("l2",)
        assert echoed.metrics == ("ed", "cs")
        assert RunConfig.from_toml(echoed.to_toml()) == echoed
        assert prov["train"]["n_docs"] == 45
        assert len(prov["stopword_hash"]) == 64
        assert prov["stopword_source"]["file"] == "bundled"

    def test_byte_identical_across_runs_and_jobs(self, capsys, sweep_args, tmp_path):
        for name, jobs in (("a.csv", 1), ("b.csv", 1), ("c.csv", 3)):
            assert _run(capsys, sweep_args(name, jobs))[0] == EXIT_OK
        a = (tmp_path / "a.csv").read_bytes()
        assert a == (tmp_path / "b.csv").read_bytes() == (tmp_path / "c.csv").read_bytes()

    def test_details_file(self, capsys, sweep_args, tmp_path):
        code, *_ = _run(capsys, sweep_args(extra=["--details", tmp_path / "details.csv", "--beta", "2"]))
        assert code == EXIT_OK
        frame = pd.read_csv(tmp_path / "details.csv")
        assert set(frame.label) == {"sport", "finance", "science"}
        assert len(frame) == 2 * 3 * 3

    def test_config_file_and_split(self, capsys, mini_train_path, tmp_path):
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            f'train = "{mini_train_path.as_posix()}"\ndims = [20]\nmetrics = ["cs"]\ntest_fraction = 0.2\n',
            encoding="utf-8",
        )
        code, _, err = _run(capsys, ["sweep", "--config", cfg, "--out", tmp_path / "r.csv"])
        assert code == EXIT_OK, err
        prov = json.loads((tmp_path / "r.json").read_text(encoding="utf-8"))
        assert prov["split"] == {"seed": 7, "test_fraction": 0.2}
        assert (prov["train"]["n_docs"], prov["test"]["n_docs"]) == (36, 9)

    def test_unknown_config_key(self, capsys, mini_train_path, tmp_path):
        cfg = tmp_path / "bad.toml"
        cfg.write_text("colour = 1\n", encoding="utf-8")
        code, _, err = _run(capsys, ["sweep", "--config", cfg, "--train", mini_train_path, "--out", tmp_path / "r.csv"])
        assert code == EXIT_USAGE
        assert "colour" in err

    def test_missing_corpus_is_data_error(self, capsys, tmp_path):
        code, _, err = _run(capsys, ["sweep", "--train", tmp_path / "none.jsonl", "--out", tmp_path / "r.csv"])
        assert code == EXIT_DATA
        assert "❌" in err

    def test_missing_out(self, capsys, mini_train_path):
        assert _run(capsys, ["sweep", "--train", mini_train_path])[0] == EXIT_USAGE


class TestFeaturizeAndQuery:

    @pytest.fixture
    def space_dir(self, capsys, mini_train_path, tmp_path):
        out = tmp_path / "space"
        code, _, err = _run(capsys, ["featurize", "--train", mini_train_path, "--out", out])
        assert code == EXIT_OK, err
        return out

    def test_self_match_scores_zero(self, capsys, space_dir, mini_train_path):
        doc = json.loads(mini_train_path.read_text(encoding="utf-8").splitlines()[6])
        code, out, _ = _run(capsys, ["query", "--space", space_dir, "--metric", "tsss", "--text", doc["text"]])
        assert code == EXIT_OK
        assert json.loads(out) == {"case_id": doc["id"], "label": doc["label"], "score": 0.0, "metric": "ts_ss"}

    def test_query_from_file(self, capsys, space_dir, tmp_path):
        q = tmp_path / "q.txt"
        q.write_text("The telescope found a new galaxy full of molecules.", encoding="utf-8")
        code, out, _ = _run(capsys, ["query", "--space", space_dir, "--metric", "cs", "--file", q])
        assert code == EXIT_OK
        assert json.loads(out)["label"] == "science"

    def test_query_is_deterministic(self, capsys, space_dir):
        argv = ["query", "--space", space_dir, "--metric", "ed", "--text", "mortgage lender inflation"]
        assert _run(capsys, argv)[1] == _run(capsys, argv)[1]

    def test_reduced_dimension(self, capsys, mini_train_path, tmp_path):
        out = tmp_path / "small"
        code, *_ = _run(capsys, ["featurize", "--train", mini_train_path, "--out", out, "--dim", "12", "--norm", "l2"])
        assert code == EXIT_OK
        header = json.loads((out / "space.json").read_text(encoding="utf-8"))
        assert len(header["selected"]) == 12
        assert header["norm_mode"] == "l2"

    def test_unknown_metric(self, capsys, space_dir):
        code, *_ = _run(capsys, ["query", "--space", space_dir, "--metric", "jaccard", "--text", "x"])
        assert code == EXIT_USAGE

    def test_missing_space(self, capsys, tmp_path):
        code, *_ = _run(capsys, ["query", "--space", tmp_path / "nope", "--metric", "cs", "--text", "x"])
        assert code == EXIT_DATA


class TestUsage:

    @pytest.mark.parametrize("argv", [
        [],
        ["frobnicate"],
        ["sweep", "--bogus"],
        ["theory"],
        ["query", "--space", "x", "--metric", "cs"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, out, err = _run(capsys, argv)
        assert code == EXIT_USAGE
        assert out == ""
        assert err

    def test_help(self, capsys):
        code, out, _ = _run(capsys, ["--help"])
        assert code == EXIT_OK
        assert "sweep" in out
