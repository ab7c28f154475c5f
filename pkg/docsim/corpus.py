import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import FrozenSet, Iterable, List, Tuple, Union

import numpy as np

from docsim.errors import CorpusError

log = logging.getLogger(__name__)

REQUIRED_KEYS = ("id", "label", "text")
FORMATS = ("jsonl", "labeled-dirs")


@dataclass(frozen=True)
class RawDocument:
    id: str
    label: str
    text: str

    def __post_init__(self):
        if not self.id:
            raise CorpusError("Dokument má prázdné id.")
        if not self.label:
            raise CorpusError(f"Dokument {self.id!r} má prázdný label.")


@dataclass(frozen=True)
class Corpus:
    documents: Tuple[RawDocument, ...] = ()

    def __post_init__(self):
        seen = set()
        for d in self.documents:
            if d.id in seen:
                raise CorpusError(f"Duplicitní id dokumentu: {d.id!r}")
            seen.add(d.id)

    @classmethod
    def of(cls, documents: Iterable[RawDocument]) -> "Corpus":
        return cls(tuple(documents))

    @property
    def labels(self) -> FrozenSet[str]:
        return frozenset(d.label for d in self.documents)

    @property
    def ids(self) -> List[str]:
        return [d.id for d in self.documents]

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)


# ---------------------------
# Načítání
# ---------------------------

def detect_format(path: Path) -> str:
    return "labeled-dirs" if path.is_dir() else "jsonl"


def load_corpus(path: Union[str, Path], format: str = "auto") -> Corpus:
    """
    Načte korpus z disku.
      - jsonl: jeden JSON objekt na řádek s klíči id, label, text
      - labeled-dirs: podadresáře = labely, soubory = dokumenty (id = relativní cesta)
    """
    path = Path(path).expanduser()
    if not path.exists():
        raise CorpusError(f"Cesta neexistuje: {path}")

    fmt = detect_format(path) if format == "auto" else format
    if fmt == "jsonl":
        docs = _read_jsonl(path)
    elif fmt == "labeled-dirs":
        docs = _read_labeled_dirs(path)
    else:
        raise CorpusError(f"Neznámý formát korpusu: {fmt!r} (povoleno: {', '.join(FORMATS)})")

    corpus = Corpus.of(docs)
    log.info("Načten korpus %s: %d dokumentů, %d labelů", path, len(corpus), len(corpus.labels))
    return corpus


def _read_jsonl(path: Path) -> List[RawDocument]:
    if path.is_dir():
        raise CorpusError(f"Očekáván jsonl soubor, ne adresář: {path}")
    raw = path.read_bytes()
    if raw.startswith(b"\xef\xbb\xbf"):
        raise CorpusError(f"{path}: soubor začíná BOM, formát jsonl ho nepovoluje")
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise CorpusError(f"{path}: není platné UTF-8 ({e})") from e

    docs: List[RawDocument] = []
    seen = set()
    # jen "\n"; U+0085 a U+2028 smějí být uvnitř JSON řetězců nezakódované
    for lineno, line in enumerate(text.split("\n"), start=1):
        line = line.removesuffix("\r")
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorpusError(f"{path}:{lineno}: poškozený JSON řádek ({e.msg})") from e
        if not isinstance(obj, dict):
            raise CorpusError(f"{path}:{lineno}: řádek není JSON objekt")

        missing = [k for k in REQUIRED_KEYS if k not in obj]
        if missing:
            raise CorpusError(f"{path}:{lineno}: chybí klíč(e) {', '.join(missing)}")
        extra = sorted(set(obj) - set(REQUIRED_KEYS))
        if extra:
            log.warning("%s:%d: ignoruji neznámé klíče %s", path, lineno, extra)
        for k in REQUIRED_KEYS:
            if not isinstance(obj[k], str):
                raise CorpusError(f"{path}:{lineno}: klíč {k!r} musí být řetězec")

        if obj["id"] in seen:
            raise CorpusError(f"{path}:{lineno}: duplicitní id {obj['id']!r}")
        seen.add(obj["id"])
        try:
            docs.append(RawDocument(id=obj["id"], label=obj["label"], text=obj["text"]))
        except CorpusError as e:
            raise CorpusError(f"{path}:{lineno}: {e}") from e
    return docs


def _hidden(name: str) -> bool:
    return name.startswith(".")


def _read_labeled_dirs(root: Path) -> List[RawDocument]:
    if not root.is_dir():
        raise CorpusError(f"Očekáván adresář s podadresáři labelů: {root}")

    loose = sorted(p.name for p in root.iterdir() if p.is_file() and not _hidden(p.name))
    if loose:
        log.warning("%s: soubory mimo podadresáře labelů se ignorují: %s", root, loose)

    docs: List[RawDocument] = []
    label_dirs = (p for p in root.iterdir() if p.is_dir() and not _hidden(p.name))
    for label_dir in sorted(label_dirs, key=lambda p: p.name):
        files = sorted(
            (p for p in label_dir.rglob("*")
             if p.is_file() and not any(_hidden(part) for part in p.relative_to(label_dir).parts)),
            key=lambda p: p.relative_to(root).as_posix(),
        )
        for f in files:
            rel = f.relative_to(root).as_posix()
            try:
                text = f.read_text(encoding="utf-8")
            except UnicodeDecodeError as e:
                raise CorpusError(f"{f}: není platné UTF-8 ({e})") from e
            docs.append(RawDocument(id=rel, label=label_dir.name, text=text))
    return docs


def write_jsonl(corpus: Corpus, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        json.dumps({"id": d.id, "label": d.label, "text": d.text}, ensure_ascii=False)
        for d in corpus
    ]
    path.write_text("".join(ln + "\n" for ln in lines), encoding="utf-8")


# ---------------------------
# Dělení train/test
# ---------------------------

def n_test_documents(n_docs: int, test_fraction: float) -> int:
    # zaokrouhlení half-up, pak clamp na [1, n-1]
    n_test = int(math.floor(test_fraction * n_docs + 0.5))
    return max(1, min(n_docs - 1, n_test))


def split_corpus(corpus: Corpus, test_fraction: float = 0.2, seed: int = 7) -> Tuple[Corpus, Corpus]:
    """
    Deterministické rozdělení: permutace z numpy PCG64 (np.random.default_rng(seed)),
    prvních n_test indexů jde do testu. Obě části drží původní pořadí dokumentů.
    """
    if not 0.0 < test_fraction < 1.0:
        raise CorpusError(f"test_fraction musí být v (0, 1), je {test_fraction}")
    n = len(corpus)
    if n < 2:
        raise CorpusError(f"Korpus je příliš malý na rozdělení ({n} dokumentů, potřeba aspoň 2)")

    n_test = n_test_documents(n, test_fraction)
    perm = np.random.default_rng(seed).permutation(n)
    test_idx = set(int(i) for i in perm[:n_test])

    train = [d for i, d in enumerate(corpus.documents) if i not in test_idx]
    test = [d for i, d in enumerate(corpus.documents) if i in test_idx]
    return Corpus.of(train), Corpus.of(test)
