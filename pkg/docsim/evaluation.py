import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

REPORT_COLUMNS = ["metric", "dimension", "normalization", "accuracy", "n_queries", "n_zero_vectors"]
DETAIL_COLUMNS = ["metric", "dimension", "normalization", "label", "precision", "recall", "f_beta", "support"]


# ---------------------------
# Skóre
# ---------------------------

def accuracy(predictions: Sequence[str], truths: Sequence[str]) -> float:
    if len(predictions) != len(truths):
        raise ValueError(f"Různé délky predikcí a pravd: {len(predictions)} != {len(truths)}")
    if not truths:
        raise ValueError("Přesnost z prázdného seznamu nelze spočítat.")
    correct = sum(1 for p, t in zip(predictions, truths) if p == t)
    return correct / len(truths)


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    labels: List[str]
    counts: np.ndarray  # řádky = pravda, sloupce = predikce

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def trace(self) -> int:
        return int(np.trace(self.counts))

    def __getitem__(self, key):
        t, p = key
        return int(self.counts[self.labels.index(t), self.labels.index(p)])


def confusion(predictions: Sequence[str], truths: Sequence[str], labels: Sequence[str]) -> ConfusionMatrix:
    if len(predictions) != len(truths):
        raise ValueError(f"Různé délky predikcí a pravd: {len(predictions)} != {len(truths)}")
    labels = list(labels)
    pos = {lab: i for i, lab in enumerate(labels)}
    counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for p, t in zip(predictions, truths):
        if t not in pos or p not in pos:
            unknown = t if t not in pos else p
            raise ValueError(f"Neznámý label: {unknown!r}")
        counts[pos[t], pos[p]] += 1
    return ConfusionMatrix(labels, counts)


class LabelScores(NamedTuple):
    precision: float
    recall: float
    f_beta: float
    support: int


def _ratio(a: float, b: float) -> float:
    return a / b if b else 0.0


def precision_recall_fbeta(cm: ConfusionMatrix, beta: float = 1.0) -> Dict[str, LabelScores]:
    """Pro každý label (P, R, F_β); 0/0 se bere jako 0."""
    if beta <= 0:
        raise ValueError(f"beta musí být > 0, je {beta}")
    b2 = beta * beta
    col = cm.counts.sum(axis=0)
    row = cm.counts.sum(axis=1)
    out: Dict[str, LabelScores] = {}
    for i, lab in enumerate(cm.labels):
        tp = float(cm.counts[i, i])
        p = _ratio(tp, float(col[i]))
        r = _ratio(tp, float(row[i]))
        f = _ratio((1 + b2) * p * r, b2 * p + r)
        out[lab] = LabelScores(p, r, f, int(row[i]))
    return out


# ---------------------------
# Report sweepu
# ---------------------------

@dataclass(frozen=True)
class SweepRow:
    metric: str
    dimension: int
    normalization: str
    accuracy: Optional[float]  # None = řádek označen (prázdný slovník)
    n_queries: int
    n_zero_vectors: int
    correct: int = 0


@dataclass
class SweepReport:
    rows: List[SweepRow] = field(default_factory=list)
    provenance: Dict[str, Any] = field(default_factory=dict)
    details: List[Dict[str, Any]] = field(default_factory=list)
    # (metrika, M, normalizace) -> id nejbližších případů v pořadí dotazů
    retrievals: Dict[Tuple[str, int, str], List[str]] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        records = [{k: asdict(r)[k] for k in REPORT_COLUMNS} for r in self.rows]
        return pd.DataFrame.from_records(records, columns=REPORT_COLUMNS)

    def accuracy_of(self, metric: str, dimension: int, normalization: str) -> Optional[float]:
        for r in self.rows:
            if (r.metric, r.dimension, r.normalization) == (metric, dimension, normalization):
                return r.accuracy
        raise KeyError((metric, dimension, normalization))

    def write_csv(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        # repr floatů je deterministický -> bitově stejné CSV
        self.to_frame().to_csv(path, index=False, lineterminator="\n")

    def write_provenance(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.provenance, ensure_ascii=False, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    def write_details(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame = pd.DataFrame.from_records(self.details, columns=DETAIL_COLUMNS)
        frame.to_csv(path, index=False, lineterminator="\n")


def provenance_path(csv_path: Union[str, Path]) -> Path:
    return Path(csv_path).with_suffix(".json")
