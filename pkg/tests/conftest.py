from pathlib import Path

import numpy as np
import pytest

from docsim.corpus import Corpus, RawDocument
from docsim.features import FeatureVector

ROOT = Path(__file__).resolve().parent.parent
MINI_DIR = ROOT / "data" / "mini"


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def mini_train_path():
    return MINI_DIR / "train.jsonl"


@pytest.fixture
def mini_test_path():
    return MINI_DIR / "test.jsonl"


@pytest.fixture
def random_vector():
    """Náhodný řídký nezáporný vektor: random_vector(rng, dim, max_nnz=40)."""
    def make(rng, dim, max_nnz=40, low=0.1, high=5.0):
        nnz = int(rng.integers(1, min(dim, max_nnz) + 1))
        idx = rng.choice(dim, size=nnz, replace=False)
        weights = rng.uniform(low, high, size=nnz)
        return FeatureVector.from_pairs(dim, zip((int(i) for i in idx), (float(w) for w in weights)))
    return make


@pytest.fixture
def make_corpus():
    """make_corpus([(id, label, text), ...]) -> Corpus"""
    def make(rows):
        return Corpus.of(RawDocument(i, lab, text) for i, lab, text in rows)
    return make


@pytest.fixture
def disjoint_pair():
    """Dva labely bez společného slova; testovací dotazy opakují trénovací vzory."""
    rows = []
    for n in (1, 2, 3):
        rows.append((f"a{n}", "alpha", " ".join(["alpha"] * n)))
        rows.append((f"g{n}", "gamma", " ".join(["gamma"] * n)))
    train = Corpus.of(RawDocument(*r) for r in rows)
    test = Corpus.of(RawDocument(f"q-{i}", lab, text) for i, lab, text in rows)
    return train, test
