import hashlib
import re
from dataclasses import dataclass, field, fields
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

from docsim.errors import ConfigError
from docsim.porter import porter_stem

RESOURCES_DIR = Path(__file__).resolve().parent / "resources"
STOPWORDS_PATH = RESOURCES_DIR / "stopwords_en.txt"

TokenList = List[str]

# e-mail: nejdelší neprázdný běh bez mezer, který obsahuje "@" a za ním "."
EMAIL_RE = re.compile(r"\S*@\S*\.\S*")
URL_RE = re.compile(r"(?<!\S)(?:https?://|www\.)\S*", re.IGNORECASE)
NON_LETTER_RE = re.compile(r"[^a-z]+")
NON_LETTER_ANYCASE_RE = re.compile(r"[^A-Za-z]+")


# ---------------------------
# Stop slova
# ---------------------------

@lru_cache(maxsize=8)
def _read_stopword_file(path: str) -> Tuple[Tuple[str, ...], str]:
    raw = Path(path).read_bytes()
    words = tuple(w.strip() for w in raw.decode("utf-8").splitlines() if w.strip())
    return words, hashlib.sha256(raw).hexdigest()


def load_stopwords(path: Optional[Path] = None) -> Tuple[str, ...]:
    words, _ = _read_stopword_file(str(path or STOPWORDS_PATH))
    return words


def stopwords_hash(path: Optional[Path] = None) -> str:
    """SHA-256 obsahu souboru se stop slovy (zapisuje se do provenance)."""
    _, digest = _read_stopword_file(str(path or STOPWORDS_PATH))
    return digest


def hash_stopword_list(words: Tuple[str, ...]) -> str:
    # pro seznam předaný v kódu: stejný tvar jako soubor (slovo na řádek)
    return hashlib.sha256("".join(w + "\n" for w in words).encode("utf-8")).hexdigest()


# ---------------------------
# Konfigurace
# ---------------------------

@dataclass(frozen=True)
class PreprocessConfig:
    min_word_length: int = 3
    lowercase: bool = True
    stopwords: Tuple[str, ...] = field(default_factory=load_stopwords)
    strip_emails: bool = True
    strip_urls: bool = True
    letters_only: bool = True
    stem: bool = True

    def __post_init__(self):
        if isinstance(self.stopwords, list):
            object.__setattr__(self, "stopwords", tuple(self.stopwords))
        if self.min_word_length < 1:
            raise ConfigError(f"min_word_length musí být >= 1, je {self.min_word_length}")
        bad = [w for w in self.stopwords if w != w.lower()]
        if bad:
            raise ConfigError(f"Stop slova musí být malými písmeny: {bad[:5]}")

    @property
    def stopword_set(self) -> FrozenSet[str]:
        return _as_frozenset(self.stopwords)

    @property
    def stopword_hash(self) -> str:
        return hash_stopword_list(self.stopwords)

    def to_dict(self) -> Dict[str, Any]:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["stopwords"] = list(self.stopwords)
        return out

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "PreprocessConfig":
        known = {f.name for f in fields(cls)}
        kwargs = {k: v for k, v in d.items() if k in known}
        if "stopwords" in kwargs:
            kwargs["stopwords"] = tuple(kwargs["stopwords"])
        return cls(**kwargs)


@lru_cache(maxsize=16)
def _as_frozenset(words: Tuple[str, ...]) -> FrozenSet[str]:
    return frozenset(words)


# ---------------------------
# Pipeline
# ---------------------------

def reduce_tokens(text: str, config: PreprocessConfig) -> TokenList:
    """Kroky 1–7 (vše kromě stemmingu)."""
    if config.strip_emails:
        text = EMAIL_RE.sub(" ", text)
    if config.strip_urls:
        text = URL_RE.sub(" ", text)
    if config.lowercase:
        text = text.lower()
    if config.letters_only:
        text = (NON_LETTER_RE if config.lowercase else NON_LETTER_ANYCASE_RE).sub(" ", text)

    stop = config.stopword_set
    return [
        t for t in text.split()
        if len(t) >= config.min_word_length and t.lower() not in stop
    ]


def preprocess_document(text: str, config: Optional[PreprocessConfig] = None) -> TokenList:
    """
    Pevné pořadí: e-maily, URL, lowercase, ne-písmena -> mezera, split,
    délkový filtr, stop slova, Porter. Pořadí tokenů odpovídá vstupu.
    """
    config = config or PreprocessConfig()
    tokens = reduce_tokens(text, config)
    if config.stem:
        tokens = [porter_stem(t.lower()) for t in tokens]
    return tokens
