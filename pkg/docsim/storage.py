"""
Perzistence prostoru příznaků a báze případů:

  space.json  : hlavička (slovník, idf, výběr, normalizace, hash stop slov, preprocess)
  vectors.csv : řídké trojice doc_id,feature_index,weight (váhy na 17 platných číslic)
  labels.csv  : case_id,label (určuje i pořadí případů, včetně nulových vektorů)
"""
import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

from docsim.cbr import CaseBase
from docsim.errors import StorageError
from docsim.features import FeatureSpace, FeatureVector, Vocabulary
from docsim.preprocess import PreprocessConfig

log = logging.getLogger(__name__)

FORMAT_TAG = "docsim-space/1"
SPACE_FILE = "space.json"
VECTORS_FILE = "vectors.csv"
LABELS_FILE = "labels.csv"


def format_weight(w: float) -> str:
    return format(w, ".17g")


@dataclass(frozen=True)
class StoredSpace:
    space: FeatureSpace
    norm_mode: str
    preprocess: PreprocessConfig
    vectors: Tuple[Tuple[str, FeatureVector], ...]
    labels: Tuple[Tuple[str, str], ...]

    def case_base(self) -> CaseBase:
        by_id = dict(self.vectors)
        return CaseBase.from_cases(self.space.dim, ((cid, by_id[cid], lab) for cid, lab in self.labels))


def save_space(
    out_dir: Union[str, Path],
    space: FeatureSpace,
    norm_mode: str,
    preprocess: PreprocessConfig,
    vectors: Sequence[Tuple[str, FeatureVector]],
    labels: Sequence[Tuple[str, str]],
) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    header: Dict[str, Any] = {
        "format": FORMAT_TAG,
        **space.header(),
        "norm_mode": norm_mode,
        "stopword_hash": preprocess.stopword_hash,
        "preprocess": preprocess.to_dict(),
    }
    (out_dir / SPACE_FILE).write_text(
        json.dumps(header, ensure_ascii=False, indent=1, sort_keys=True) + "\n", encoding="utf-8"
    )

    with (out_dir / VECTORS_FILE).open("w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["doc_id", "feature_index", "weight"])
        for doc_id, v in vectors:
            for i, weight in v.entries.items():
                w.writerow([doc_id, i, format_weight(weight)])

    with (out_dir / LABELS_FILE).open("w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["case_id", "label"])
        w.writerows(labels)

    log.info("Uložen prostor (M=%d, %d případů) do %s", space.dim, len(labels), out_dir)
    return out_dir


def load_space(in_dir: Union[str, Path]) -> StoredSpace:
    in_dir = Path(in_dir)
    space_path = in_dir / SPACE_FILE
    if not space_path.exists():
        raise StorageError(f"Chybí {SPACE_FILE} v {in_dir}")

    try:
        header = json.loads(space_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise StorageError(f"{space_path}: poškozený JSON ({e.msg})") from e
    if header.get("format") != FORMAT_TAG:
        raise StorageError(f"{space_path}: neznámý formát {header.get('format')!r}")

    try:
        voc = header["vocabulary"]
        vocabulary = Vocabulary(
            tuple(voc["terms"]), tuple(int(d) for d in voc["df"]), int(voc["n_docs"]),
            float(voc.get("min_df_frac", 0.0)), float(voc.get("max_df_frac", 1.0)),
        )
        space = FeatureSpace(vocabulary, tuple(float(x) for x in header["idf"]), tuple(int(i) for i in header["selected"]))
        norm_mode = header["norm_mode"]
        preprocess = PreprocessConfig.from_dict(header["preprocess"])
    except (KeyError, TypeError, ValueError) as e:
        raise StorageError(f"{space_path}: neúplná hlavička ({e})") from e

    if preprocess.stopword_hash != header.get("stopword_hash"):
        raise StorageError(f"{space_path}: hash stop slov nesouhlasí s uloženým seznamem")

    labels = _read_labels(in_dir / LABELS_FILE)
    entries: Dict[str, List[Tuple[int, float]]] = {cid: [] for cid, _ in labels}
    for lineno, row in _read_csv(in_dir / VECTORS_FILE, ["doc_id", "feature_index", "weight"]):
        doc_id = row["doc_id"]
        if doc_id not in entries:
            raise StorageError(f"{VECTORS_FILE}:{lineno}: neznámé doc_id {doc_id!r}")
        try:
            entries[doc_id].append((int(row["feature_index"]), float(row["weight"])))
        except ValueError as e:
            raise StorageError(f"{VECTORS_FILE}:{lineno}: {e}") from e

    vectors = tuple(
        (cid, FeatureVector.from_pairs(space.dim, pairs, norm_mode)) for cid, pairs in entries.items()
    )
    return StoredSpace(space, norm_mode, preprocess, vectors, labels)


def _read_csv(path: Path, columns: List[str]):
    if not path.exists():
        raise StorageError(f"Chybí soubor {path}")
    with path.open("r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != columns:
            raise StorageError(f"{path}: očekávaná hlavička {','.join(columns)}, je {reader.fieldnames}")
        for lineno, row in enumerate(reader, start=2):
            yield lineno, row


def _read_labels(path: Path) -> Tuple[Tuple[str, str], ...]:
    out = []
    seen = set()
    for lineno, row in _read_csv(path, ["case_id", "label"]):
        if row["case_id"] in seen:
            raise StorageError(f"{path}:{lineno}: duplicitní case_id {row['case_id']!r}")
        seen.add(row["case_id"])
        out.append((row["case_id"], row["label"]))
    return tuple(out)
