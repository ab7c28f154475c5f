import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Tuple

from docsim import metrics
from docsim.errors import CaseBaseError, DimensionMismatchError
from docsim.features import FeatureVector
from docsim.metrics import MetricKind

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Case:
    id: str
    vector: FeatureVector
    label: str


@dataclass(frozen=True)
class CaseBase:
    """Hodnota: add_case vrací novou bázi, původní se nemění."""
    dim: int
    cases: Tuple[Case, ...] = ()

    def __post_init__(self):
        seen = set()
        for c in self.cases:
            if c.vector.dim != self.dim:
                raise DimensionMismatchError(self.dim, c.vector.dim)
            if c.id in seen:
                raise CaseBaseError(f"Duplicitní id případu: {c.id!r}")
            seen.add(c.id)

    @classmethod
    def from_cases(cls, dim: int, cases: Iterable[Tuple[str, FeatureVector, str]]) -> "CaseBase":
        return cls(dim, tuple(Case(i, v, lab) for i, v, lab in cases))

    def __len__(self) -> int:
        return len(self.cases)

    def __contains__(self, case_id: str) -> bool:
        return any(c.id == case_id for c in self.cases)


@dataclass(frozen=True)
class RetrievalResult:
    case_id: str
    label: str
    score: float
    metric: MetricKind
    position: int

    def to_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "label": self.label,
            "score": self.score,
            "metric": self.metric.value,
        }


def retrieve_nearest(query: FeatureVector, base: CaseBase, metric: MetricKind) -> RetrievalResult:
    """Úplný průchod bází (n vyhodnocení metriky); shody vyhrává dřívější případ."""
    if not base.cases:
        raise CaseBaseError("Báze případů je prázdná.")
    if query.dim != base.dim:
        raise DimensionMismatchError(query.dim, base.dim)

    best_pos = 0
    best_score = metrics.score(metric, query, base.cases[0].vector)
    for pos in range(1, len(base.cases)):
        s = metrics.score(metric, query, base.cases[pos].vector)
        if metric.is_better(s, best_score):
            best_pos, best_score = pos, s

    best = base.cases[best_pos]
    return RetrievalResult(best.id, best.label, best_score, metric, best_pos)


def classify(query: FeatureVector, base: CaseBase, metric: MetricKind) -> str:
    return retrieve_nearest(query, base, metric).label


def add_case(base: CaseBase, case_id: str, vector: FeatureVector, label: str) -> CaseBase:
    if case_id in base:
        raise CaseBaseError(f"Případ s id {case_id!r} už v bázi je.")
    if vector.dim != base.dim:
        raise DimensionMismatchError(vector.dim, base.dim)
    return CaseBase(base.dim, base.cases + (Case(case_id, vector, label),))


# (case_id, navržený label) -> potvrzený label, nebo None = zamítnuto
Reviewer = Callable[[str, str], Optional[str]]


def review_and_retain(
    base: CaseBase,
    case_id: str,
    vector: FeatureVector,
    proposed_label: str,
    reviewer: Reviewer,
) -> CaseBase:
    """
    Krok "retain": expert posoudí navržený label. Potvrzený (případně opravený)
    případ se přidá na konec báze, zamítnutý bázi nemění.
    """
    confirmed = reviewer(case_id, proposed_label)
    if not confirmed:
        log.info("Případ %s zamítnut expertem, báze beze změny", case_id)
        return base
    if confirmed != proposed_label:
        log.info("Případ %s: expert opravil label %s -> %s", case_id, proposed_label, confirmed)
    return add_case(base, case_id, vector, confirmed)
