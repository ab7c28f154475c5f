import json

import numpy as np
import pandas as pd
import pytest

from docsim.evaluation import (
    DETAIL_COLUMNS,
    REPORT_COLUMNS,
    ConfusionMatrix,
    SweepReport,
    SweepRow,
    accuracy,
    confusion,
    precision_recall_fbeta,
    provenance_path,
)


class TestAccuracy:

    def test_all_correct(self):
        assert accuracy(["a", "b"], ["a", "b"]) == 1.0

    def test_none_correct(self):
        assert accuracy(["a", "b"], ["b", "a"]) == 0.0

    def test_three_of_four(self):
        assert accuracy(["a", "a", "b", "b"], ["a", "a", "b", "a"]) == 0.75

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            accuracy(["a"], ["a", "b"])

    def test_empty(self):
        with pytest.raises(ValueError):
            accuracy([], [])

    def test_equals_confusion_trace(self, rng):
        labels = ["x", "y", "z"]
        for _ in range(50):
            n = int(rng.integers(1, 40))
            preds = list(rng.choice(labels, n))
            truths = list(rng.choice(labels, n))
            cm = confusion(preds, truths, labels)
            assert accuracy(preds, truths) == cm.trace / cm.total


class TestConfusion:

    def test_perfect_is_diagonal(self):
        cm = confusion(["a", "b", "b"], ["a", "b", "b"], ["a", "b"])
        np.testing.assert_array_equal(cm.counts, [[1, 0], [0, 2]])

    def test_single_miss(self):
        cm = confusion(["b"], ["a"], ["a", "b"])
        assert cm["a", "b"] == 1
        assert cm.total == 1 and cm.trace == 0

    def test_unknown_label(self):
        with pytest.raises(ValueError):
            confusion(["c"], ["a"], ["a", "b"])


class TestPrecisionRecall:

    def test_diagonal(self):
        cm = ConfusionMatrix(["a", "b"], np.array([[3, 0], [0, 2]]))
        for s in precision_recall_fbeta(cm).values():
            assert (s.precision, s.recall, s.f_beta) == (1.0, 1.0, 1.0)

    def test_unused_label_is_zero(self):
        cm = ConfusionMatrix(["a", "b", "c"], np.array([[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
        s = precision_recall_fbeta(cm)["c"]
        assert (s.precision, s.recall, s.f_beta, s.support) == (0.0, 0.0, 0.0, 0)

    def test_two_by_two(self):
        cm = ConfusionMatrix(["a", "b"], np.array([[2, 1], [1, 2]]))
        for s in precision_recall_fbeta(cm, beta=1.0).values():
            assert s.precision == pytest.approx(2 / 3)
            assert s.recall == pytest.approx(2 / 3)
            assert s.f_beta == pytest.approx(2 / 3)
            assert s.support == 3

    def test_beta_weights_recall(self):
        # P = 1/2, R = 1 -> F2 = 5·0.5 / (4·0.5 + 1) = 5/6
        cm = ConfusionMatrix(["a", "b"], np.array([[1, 0], [1, 0]]))
        assert precision_recall_fbeta(cm, beta=2.0)["a"].f_beta == pytest.approx(5 / 6)

    def test_beta_must_be_positive(self):
        with pytest.raises(ValueError):
            precision_recall_fbeta(ConfusionMatrix(["a"], np.array([[1]])), beta=0)


class TestSweepReport:

    @pytest.fixture
    def report(self):
        return SweepReport(
            rows=[
                SweepRow("ed", 10, "none", 0.5, 4, 1, 2),
                SweepRow("cs", 10, "none", 0.75, 4, 1, 3),
                SweepRow("ed", 20, "none", None, 4, 4),
            ],
            provenance={"b": 1, "a": [1, 2]},
            details=[{"metric": "ed", "dimension": 10, "normalization": "none", "label": "x",
                      "precision": 1.0, "recall": 0.5, "f_beta": 2 / 3, "support": 2}],
        )

    def test_frame_columns(self, report):
        frame = report.to_frame()
        assert list(frame.columns) == REPORT_COLUMNS
        assert len(frame) == 3

    def test_lookup(self, report):
        assert report.accuracy_of("cs", 10, "none") == 0.75
        with pytest.raises(KeyError):
            report.accuracy_of("tsss", 10, "none")

    def test_csv_layout(self, report, tmp_path):
        out = tmp_path / "r.csv"
        report.write_csv(out)
        text = out.read_text(encoding="utf-8")
        assert "\r" not in text
        lines = text.splitlines()
        assert lines[0] == ",".join(REPORT_COLUMNS)
        assert lines[1] == "ed,10,none,0.5,4,1"
        # označený řádek má prázdnou přesnost
        assert lines[3] == "ed,20,none,,4,4"

    def test_csv_is_byte_stable(self, report, tmp_path):
        report.write_csv(tmp_path / "a.csv")
        report.write_csv(tmp_path / "b.csv")
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_provenance_sorted(self, report, tmp_path):
        out = tmp_path / "r.json"
        report.write_provenance(out)
        assert list(json.loads(out.read_text(encoding="utf-8"))) == ["a", "b"]

    def test_details(self, report, tmp_path):
        out = tmp_path / "d.csv"
        report.write_details(out)
        frame = pd.read_csv(out)
        assert list(frame.columns) == DETAIL_COLUMNS
        assert frame.loc[0, "recall"] == 0.5


def test_provenance_path():
    assert provenance_path("out/report.csv").name == "report.json"
