"""
Syntetické korpusy. Velké korpusy seeduje numpy Generator, mini korpus
vlastní MinStdRandom (z něj je přibalené data/mini).

  make_disjoint_corpus : každý label má vlastní slovní zásobu (žádný společný term)
  make_overlap_corpus  : třídní slova + sdílený šum, délky dokumentů silně kolísají
  make_mini_corpus     : malý 3-labelový korpus ze skutečných anglických slov
  split_mini_corpus    : pevné rozdělení mini korpusu 45 / 15

Pseudo-slova mají tvar "x" + značka + dvě písmena + "k"; Porter je nemění
a stop slova je nezachytí.
"""
import string
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from docsim.corpus import Corpus, RawDocument, write_jsonl

MINI_POOLS: Dict[str, List[str]] = {
    "finance": [
        "banking", "investor", "dividend", "mortgage", "inflation", "currency",
        "portfolio", "equity", "lender", "treasury", "bond", "auditor",
        "stock", "bankruptcy", "hedge", "broker", "pension", "credit",
        "loan", "ledger", "revenue", "liquidity", "asset", "budget",
        "invoice", "tariff", "shareholder", "fiscal", "deposit", "recession",
    ],
    "science": [
        "molecule", "telescope", "physicist", "laboratory", "genome", "quantum",
        "neutron", "enzyme", "galaxy", "chemist", "protein", "fossil",
        "electron", "microscope", "bacteria", "catalyst", "isotope", "nucleus",
        "photon", "spectrum", "asteroid", "hypothesis", "chromosome", "magnet",
        "plasma", "vaccine", "orbit", "mineral", "reactor", "particle",
    ],
    "sport": [
        "football", "goalkeeper", "stadium", "referee", "striker", "tournament",
        "league", "coach", "season", "trophy", "athlete", "marathon",
        "cricket", "tennis", "hockey", "rugby", "sprinter", "medal",
        "champion", "penalty", "umpire", "wicket", "racket", "dribble",
        "podium", "olympics", "cyclist", "boxer", "volleyball", "fixture",
    ],
}
MINI_NOISE = [
    "weather", "morning", "coffee", "garden", "river", "music",
    "travel", "window", "village", "evening", "friend", "kitchen",
    "bicycle", "holiday", "letter", "breakfast", "forest", "painting",
    "neighbour", "umbrella",
]


def pseudo_words(tag: str, n: int) -> List[str]:
    letters = string.ascii_lowercase
    if n > len(letters) ** 2:
        raise ValueError(f"Nejvýš {len(letters) ** 2} slov na značku, požadováno {n}")
    return [f"x{tag}{letters[i // 26]}{letters[i % 26]}k" for i in range(n)]


def label_tags(n_labels: int) -> List[str]:
    # značka "n" je vyhrazena pro šum
    tags = [c for c in string.ascii_lowercase if c != "n"]
    if not 1 <= n_labels <= len(tags):
        raise ValueError(f"n_labels musí být v 1..{len(tags)}, je {n_labels}")
    return tags[:n_labels]


def zipf_weights(n: int, exponent: float = 0.8) -> np.ndarray:
    w = 1.0 / np.arange(1, n + 1, dtype=float) ** exponent
    return w / w.sum()


def doc_lengths(rng: np.random.Generator, n: int, mean_log: float = 3.0, sigma: float = 1.0,
                low: int = 1, high: int = 300) -> np.ndarray:
    """Lognormální délky: hodně krátkých dokumentů i dlouhý chvost."""
    raw = np.rint(rng.lognormal(mean_log, sigma, size=n)).astype(int)
    return np.clip(raw, low, high)


def balanced_labels(rng: np.random.Generator, n_docs: int, labels: Sequence[str]) -> List[str]:
    seq = [labels[i % len(labels)] for i in range(n_docs)]
    return [seq[i] for i in rng.permutation(n_docs)]


def _sample(rng: np.random.Generator, pool: Sequence[str], k: int, p: Optional[np.ndarray] = None) -> List[str]:
    if k <= 0:
        return []
    return [pool[i] for i in rng.choice(len(pool), size=k, p=p)]


# ---------------------------
# Korpusy
# ---------------------------

def make_disjoint_corpus(n_docs: int = 500, n_labels: int = 2, pool_size: int = 40, seed: int = 7) -> Corpus:
    rng = np.random.default_rng(seed)
    tags = label_tags(n_labels)
    labels = [f"class_{t}" for t in tags]
    pools = {lab: pseudo_words(t, pool_size) for lab, t in zip(labels, tags)}
    weights = zipf_weights(pool_size)

    docs = []
    for i, (lab, length) in enumerate(zip(balanced_labels(rng, n_docs, labels), doc_lengths(rng, n_docs))):
        tokens = _sample(rng, pools[lab], int(length), weights)
        docs.append(RawDocument(f"disjoint-{i:04d}", lab, " ".join(tokens)))
    return Corpus.of(docs)


def make_overlap_corpus(
    n_docs: int = 500,
    n_labels: int = 3,
    pool_size: int = 30,
    noise_size: int = 80,
    noise_share: float = 0.5,
    seed: int = 7,
) -> Corpus:
    """Každý dokument má aspoň jedno třídní slovo, zbytek délky dělí třídní slova a šum."""
    if not 0.0 <= noise_share < 1.0:
        raise ValueError(f"noise_share musí být v [0, 1), je {noise_share}")
    rng = np.random.default_rng(seed)
    tags = label_tags(n_labels)
    labels = [f"class_{t}" for t in tags]
    pools = {lab: pseudo_words(t, pool_size) for lab, t in zip(labels, tags)}
    noise = pseudo_words("n", noise_size)
    class_w = zipf_weights(pool_size)
    noise_w = zipf_weights(noise_size)

    docs = []
    for i, (lab, length) in enumerate(zip(balanced_labels(rng, n_docs, labels), doc_lengths(rng, n_docs))):
        n_noise = int(rng.binomial(int(length) - 1, noise_share)) if length > 1 else 0
        tokens = _sample(rng, pools[lab], int(length) - n_noise, class_w) + _sample(rng, noise, n_noise, noise_w)
        order = rng.permutation(len(tokens))
        docs.append(RawDocument(f"overlap-{i:04d}", lab, " ".join(tokens[j] for j in order)))
    return Corpus.of(docs)


class MinStdRandom:
    """
    Park-Miller "minimal standard" generátor: x <- 16807 * x mod (2^31 - 1).
    Proud je pevný napříč verzemi numpy; z něj vzniká přibalený korpus data/mini.
    """

    MODULUS = 2 ** 31 - 1
    MULTIPLIER = 16807

    def __init__(self, seed: int):
        self.state = seed % self.MODULUS or 1

    def next(self) -> int:
        self.state = self.state * self.MULTIPLIER % self.MODULUS
        return self.state

    def below(self, n: int) -> int:
        return self.next() % n

    def shuffle(self, items: List[str]) -> None:
        # Fisher-Yates odzadu
        for j in range(len(items) - 1, 0, -1):
            k = self.below(j + 1)
            items[j], items[k] = items[k], items[j]


def make_mini_corpus(n_per_label: int = 20, seed: int = 7) -> Corpus:
    """
    Labely se střídají v abecedním pořadí; dokument má 10-24 slov,
    třetina (dolů) je šum, zbytek slova vlastní třídy, vše zamíchané.
    """
    rng = MinStdRandom(seed)
    labels = sorted(MINI_POOLS)
    docs = []
    for i in range(n_per_label * len(labels)):
        lab = labels[i % len(labels)]
        pool = MINI_POOLS[lab]
        length = 10 + rng.below(15)
        n_noise = length // 3
        tokens = [pool[rng.below(len(pool))] for _ in range(length - n_noise)]
        tokens += [MINI_NOISE[rng.below(len(MINI_NOISE))] for _ in range(n_noise)]
        rng.shuffle(tokens)
        docs.append(RawDocument(f"mini-{i:03d}", lab, " ".join(tokens)))
    return Corpus.of(docs)


def split_mini_corpus(corpus: Corpus, every: int = 4) -> Tuple[Corpus, Corpus]:
    """Každý `every`-tý dokument (pozice every-1, 2*every-1, ...) jde do testu."""
    train = [d for i, d in enumerate(corpus) if i % every != every - 1]
    test = [d for i, d in enumerate(corpus) if i % every == every - 1]
    return Corpus.of(train), Corpus.of(test)


def write_mini_corpus(out_dir: Union[str, Path], seed: int = 7) -> Tuple[Path, Path]:
    """Přegeneruje data/mini/{train,test}.jsonl."""
    out_dir = Path(out_dir)
    train, test = split_mini_corpus(make_mini_corpus(seed=seed))
    write_jsonl(train, out_dir / "train.jsonl")
    write_jsonl(test, out_dir / "test.jsonl")
    return out_dir / "train.jsonl", out_dir / "test.jsonl"
