import hashlib
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from docsim.cbr import CaseBase, RetrievalResult, retrieve_nearest
from docsim.corpus import Corpus
from docsim.errors import EmptyVocabularyError
from docsim.evaluation import SweepReport, SweepRow, accuracy, confusion, precision_recall_fbeta
from docsim.features import (
    FeatureSpace,
    FeatureVector,
    Vocabulary,
    build_vocabulary,
    compute_idf,
    rank_features,
    select_top_features,
    vectorize,
)
from docsim.metrics import MetricKind
from docsim.preprocess import PreprocessConfig, TokenList, preprocess_document

log = logging.getLogger(__name__)

ProgressCB = Optional[Callable[[str, float], None]]  # (zpráva, progress 0..1)


def ids_digest(corpus: Corpus) -> str:
    return hashlib.sha256("\n".join(corpus.ids).encode("utf-8")).hexdigest()


def clip_dims(dims: Sequence[int], vocab_size: int) -> List[int]:
    """Ořízne mřížku na velikost slovníku a odstraní duplicity (pořadí zůstává)."""
    out: List[int] = []
    for m in dims:
        m = min(int(m), vocab_size)
        if m not in out:
            out.append(m)
    return out


# ---------------------------
# Příprava (jen z trénovacích dat)
# ---------------------------

@dataclass(frozen=True)
class TrainingFeatures:
    vocabulary: Vocabulary
    idf: Tuple[float, ...]
    full_vectors: Tuple[FeatureVector, ...]
    ranking: Tuple[int, ...]

    def space(self, M: int) -> FeatureSpace:
        return select_top_features(self.full_vectors, self.vocabulary, M, idf=self.idf, ranking=self.ranking)


def fit_training_features(train_tokens: Sequence[TokenList], min_df: float, max_df: float) -> TrainingFeatures:
    vocab = build_vocabulary(train_tokens, min_df, max_df)
    idf = compute_idf(vocab)
    full = FeatureSpace.full(vocab, idf)
    full_vectors = tuple(vectorize(t, full) for t in train_tokens)
    ranking = tuple(rank_features(full_vectors, vocab))
    return TrainingFeatures(vocab, idf, full_vectors, ranking)


def tokenize_corpus(corpus: Corpus, config: PreprocessConfig) -> List[TokenList]:
    return [preprocess_document(d.text, config) for d in corpus]


def classify_all(
    queries: Sequence[FeatureVector],
    base: CaseBase,
    metric: MetricKind,
    jobs: int = 1,
) -> List[RetrievalResult]:
    """Dotazy jsou nezávislé; výsledky ve stejném pořadí jako dotazy."""
    if jobs <= 1 or len(queries) < 2:
        return [retrieve_nearest(q, base, metric) for q in queries]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda q: retrieve_nearest(q, base, metric), queries))


# ---------------------------
# Sweep
# ---------------------------

def run_sweep(
    train: Corpus,
    test: Corpus,
    config: PreprocessConfig,
    dims: Sequence[int],
    norm_mode: str,
    metrics: Sequence[MetricKind],
    min_df: float = 0.01,
    max_df: float = 0.5,
    jobs: int = 1,
    beta: float = 1.0,
    progress: ProgressCB = None,
) -> SweepReport:
    return run_sweeps(
        train, test, config, dims, [norm_mode], metrics,
        min_df=min_df, max_df=max_df, jobs=jobs, beta=beta, progress=progress,
    )


def run_sweeps(
    train: Corpus,
    test: Corpus,
    config: PreprocessConfig,
    dims: Sequence[int],
    norm_modes: Sequence[str],
    metrics: Sequence[MetricKind],
    min_df: float = 0.01,
    max_df: float = 0.5,
    jobs: int = 1,
    beta: float = 1.0,
    progress: ProgressCB = None,
) -> SweepReport:
    """
    Pro každou normalizaci a M: prostor z train, vektorizace train+test,
    klasifikace každého testovacího dotazu každou metrikou.
    Slovník, idf i pořadí příznaků se počítají jen z trénovacích dat.
    """
    if not dims:
        raise ValueError("Mřížka dimenzí je prázdná.")
    overlap = set(train.ids) & set(test.ids)
    if overlap:
        raise ValueError(f"Train a test nejsou disjunktní (např. {sorted(overlap)[:3]})")

    report = SweepReport(provenance={
        "stopword_hash": config.stopword_hash,
        "preprocess": {k: v for k, v in config.to_dict().items() if k != "stopwords"},
        "n_stopwords": len(config.stopwords),
        "min_df": min_df,
        "max_df": max_df,
        "train": {"n_docs": len(train), "ids_sha256": ids_digest(train)},
        "test": {"n_docs": len(test), "ids_sha256": ids_digest(test)},
        "runs": [],
    })

    if progress:
        progress("Předzpracování dokumentů…", 0.02)
    train_tokens = tokenize_corpus(train, config)
    test_tokens = tokenize_corpus(test, config)
    truths = [d.label for d in test]
    labels = sorted(train.labels | test.labels)

    try:
        fitted: Optional[TrainingFeatures] = fit_training_features(train_tokens, min_df, max_df)
    except EmptyVocabularyError as e:
        log.warning("Sweep: %s", e)
        fitted = None

    n_cells = max(1, len(norm_modes) * len(dims) * len(metrics))
    done = 0

    for norm_mode in norm_modes:
        run: Dict = {"normalization": norm_mode, "space_fingerprints": {}, "flagged": []}
        report.provenance["runs"].append(run)

        if fitted is None:
            run["flagged"].append("empty_vocabulary")
            for M in dims:
                for metric in metrics:
                    report.rows.append(SweepRow(metric.short_name, int(M), norm_mode, None, len(test), len(test)))
            continue

        grid = clip_dims(dims, len(fitted.vocabulary))
        run["vocabulary_size"] = len(fitted.vocabulary)
        run["dimensions"] = grid

        for M in grid:
            space = fitted.space(M)
            run["space_fingerprints"][str(M)] = space.fingerprint()

            base = CaseBase.from_cases(
                space.dim,
                ((d.id, vectorize(tok, space, norm_mode), d.label) for d, tok in zip(train, train_tokens)),
            )
            queries = [vectorize(tok, space, norm_mode) for tok in test_tokens]
            n_zero = sum(1 for q in queries if q.is_zero)

            for metric in metrics:
                results = classify_all(queries, base, metric, jobs=jobs)
                preds = [r.label for r in results]
                cm = confusion(preds, truths, labels)
                acc = accuracy(preds, truths) if truths else None
                report.rows.append(SweepRow(metric.short_name, M, norm_mode, acc, len(truths), n_zero, cm.trace))
                report.retrievals[(metric.short_name, M, norm_mode)] = [r.case_id for r in results]

                for lab, s in precision_recall_fbeta(cm, beta).items():
                    report.details.append({
                        "metric": metric.short_name, "dimension": M, "normalization": norm_mode,
                        "label": lab, "precision": s.precision, "recall": s.recall,
                        "f_beta": s.f_beta, "support": s.support,
                    })

                done += 1
                if progress:
                    progress(f"{norm_mode} M={M} {metric.short_name}: accuracy={acc}", done / n_cells)

    if progress:
        progress("Sweep dokončen.", 1.0)
    return report
