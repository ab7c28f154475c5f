import hashlib
import json
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from docsim.errors import ConfigError, DimensionMismatchError, EmptyVocabularyError
from docsim.preprocess import TokenList

log = logging.getLogger(__name__)

NORM_MODES = ("none", "l1", "l2")

# výchozí mřížka dimenzí pro sweep (ořezává se na velikost slovníku)
DEFAULT_DIMS = (10, 25, 50, 75, 100, 150, 200, 250, 300, 400, 500, 600, 700, 800)


# ---------------------------
# Typy
# ---------------------------

@dataclass(frozen=True)
class Vocabulary:
    terms: Tuple[str, ...]
    df: Tuple[int, ...]
    n_docs: int
    min_df_frac: float = 0.0
    max_df_frac: float = 1.0

    @cached_property
    def index(self) -> Dict[str, int]:
        return {t: i for i, t in enumerate(self.terms)}

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class FeatureVector:
    """
    Řídký nezáporný vektor. `entries` je index -> váha, jen kladné váhy,
    klíče vždy vzestupně (na tom stojí bitová symetrie metrik).
    """
    dim: int
    entries: Mapping[int, float] = field(default_factory=dict)
    norm_mode: str = "none"

    def __post_init__(self):
        if self.norm_mode not in NORM_MODES:
            raise ConfigError(f"Neznámá normalizace: {self.norm_mode!r}")
        keys = list(self.entries)
        if keys != sorted(keys):
            object.__setattr__(self, "entries", {i: self.entries[i] for i in sorted(keys)})
        for i, w in self.entries.items():
            if not 0 <= i < self.dim:
                raise ValueError(f"Index {i} mimo dimenzi {self.dim}")
            if not w > 0:
                raise ValueError(f"Uložené váhy musí být kladné (index {i}: {w})")

    @classmethod
    def from_pairs(cls, dim: int, pairs: Iterable[Tuple[int, float]], norm_mode: str = "none") -> "FeatureVector":
        return cls(dim, {i: w for i, w in sorted(pairs) if w > 0}, norm_mode)

    @classmethod
    def from_dense(cls, values: Sequence[float], norm_mode: str = "none") -> "FeatureVector":
        return cls.from_pairs(len(values), enumerate(float(v) for v in values), norm_mode)

    @cached_property
    def norm(self) -> float:
        return math.sqrt(sum(w * w for w in self.entries.values()))

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> List[float]:
        out = [0.0] * self.dim
        for i, w in self.entries.items():
            out[i] = w
        return out

    def scaled(self, a: float) -> "FeatureVector":
        return FeatureVector(self.dim, {i: w * a for i, w in self.entries.items()}, self.norm_mode)


@dataclass(frozen=True)
class FeatureSpace:
    vocabulary: Vocabulary
    idf: Tuple[float, ...]
    selected: Tuple[int, ...]

    def __post_init__(self):
        if len(set(self.selected)) != len(self.selected):
            raise ValueError("Vybrané indexy příznaků nejsou unikátní.")
        if len(self.idf) != len(self.vocabulary):
            raise ValueError("Délka idf neodpovídá slovníku.")

    @classmethod
    def full(cls, vocabulary: Vocabulary, idf: Optional[Sequence[float]] = None) -> "FeatureSpace":
        idf = tuple(idf) if idf is not None else compute_idf(vocabulary)
        return cls(vocabulary, idf, tuple(range(len(vocabulary))))

    @property
    def dim(self) -> int:
        return len(self.selected)

    @cached_property
    def projection(self) -> Dict[int, int]:
        # index ve slovníku -> nový index 0..M-1
        return {t: j for j, t in enumerate(self.selected)}

    @cached_property
    def selected_terms(self) -> Tuple[str, ...]:
        return tuple(self.vocabulary.terms[t] for t in self.selected)

    def header(self) -> Dict:
        return {
            "vocabulary": {
                "terms": list(self.vocabulary.terms),
                "df": list(self.vocabulary.df),
                "n_docs": self.vocabulary.n_docs,
                "min_df_frac": self.vocabulary.min_df_frac,
                "max_df_frac": self.vocabulary.max_df_frac,
            },
            "idf": list(self.idf),
            "selected": list(self.selected),
        }

    def fingerprint(self) -> str:
        """SHA-256 ze slovníku, idf a výběru (kontrola, že test neovlivnil prostor)."""
        payload = json.dumps(self.header(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


# ---------------------------
# Slovník + idf
# ---------------------------

def build_vocabulary(train: Sequence[TokenList], min_df_frac: float = 0.01, max_df_frac: float = 0.5) -> Vocabulary:
    """Ponechá termy s min_df_frac <= df/N <= max_df_frac, seřazené lexikograficky."""
    if not 0.0 <= min_df_frac < max_df_frac <= 1.0:
        raise ConfigError(f"Neplatné meze df: min={min_df_frac}, max={max_df_frac}")
    if not train:
        raise EmptyVocabularyError("Trénovací množina je prázdná, slovník nelze sestavit.")

    n_docs = len(train)
    df: Counter = Counter()
    for tokens in train:
        df.update(set(tokens))

    kept = sorted(t for t, c in df.items() if min_df_frac <= c / n_docs <= max_df_frac)
    if not kept:
        raise EmptyVocabularyError(
            f"Po filtru df (min={min_df_frac}, max={max_df_frac}) nezbyl žádný term "
            f"({len(df)} kandidátů, {n_docs} dokumentů)."
        )
    log.debug("Slovník: %d z %d termů", len(kept), len(df))
    return Vocabulary(tuple(kept), tuple(df[t] for t in kept), n_docs, min_df_frac, max_df_frac)


def compute_idf(vocab: Vocabulary) -> Tuple[float, ...]:
    # vyhlazené idf: ln((1+N)/(1+df)) + 1
    if not len(vocab):
        raise EmptyVocabularyError("Prázdný slovník.")
    n = vocab.n_docs
    return tuple(math.log((1 + n) / (1 + d)) + 1.0 for d in vocab.df)


# ---------------------------
# Vektorizace
# ---------------------------

def vectorize(doc: TokenList, space: FeatureSpace, norm_mode: str = "none") -> FeatureVector:
    """count(t) * idf(t) pro vybrané termy, přeindexováno 0..M-1, pak normalizace."""
    index = space.vocabulary.index
    projection = space.projection
    counts: Counter = Counter()
    for tok in doc:
        t = index.get(tok)
        if t is not None and t in projection:
            counts[t] += 1

    pairs = [(projection[t], c * space.idf[t]) for t, c in counts.items()]
    return normalize(FeatureVector.from_pairs(space.dim, pairs), norm_mode)


def normalize(v: FeatureVector, mode: str = "none") -> FeatureVector:
    if mode not in NORM_MODES:
        raise ConfigError(f"Neznámá normalizace: {mode!r} (povoleno: {', '.join(NORM_MODES)})")
    if mode == "none" or v.is_zero:
        return FeatureVector(v.dim, dict(v.entries), mode)
    if mode == "l1":
        total = math.fsum(v.entries.values())
    else:
        total = math.sqrt(math.fsum(w * w for w in v.entries.values()))
    return FeatureVector(v.dim, {i: w / total for i, w in v.entries.items()}, mode)


# ---------------------------
# Ořez na pevnou dimenzi
# ---------------------------

def rank_features(train_vectors: Sequence[FeatureVector], vocab: Vocabulary) -> List[int]:
    """
    Pořadí indexů slovníku podle součtu tf-idf vah přes trénovací vektory
    (sestupně), shody podle lexikografického pořadí termu.
    Vektory musí být v plném prostoru slovníku.
    """
    per_feature: Dict[int, List[float]] = {i: [] for i in range(len(vocab))}
    for v in train_vectors:
        if v.dim != len(vocab):
            raise DimensionMismatchError(v.dim, len(vocab))
        for i, w in v.entries.items():
            per_feature[i].append(w)
    totals = {i: math.fsum(ws) for i, ws in per_feature.items()}
    return sorted(totals, key=lambda i: (-totals[i], vocab.terms[i]))


def select_top_features(
    train_vectors: Sequence[FeatureVector],
    vocab: Vocabulary,
    M: int,
    idf: Optional[Sequence[float]] = None,
    ranking: Optional[Sequence[int]] = None,
) -> FeatureSpace:
    """Ponechá min(M, |slovník|) příznaků s největším součtem vah. Výběr je vnořený."""
    if M < 1:
        raise ConfigError(f"Dimenze M musí být >= 1, je {M}")
    if ranking is None:
        ranking = rank_features(train_vectors, vocab)
    idf = tuple(idf) if idf is not None else compute_idf(vocab)
    keep = sorted(ranking[: min(M, len(vocab))])
    return FeatureSpace(vocab, idf, tuple(keep))
