"""
Míry podobnosti: Euclidean (ED), Cosine (CS), TS-SS a jejich složky.

θ' je ve stupních (arccos CS + 10); do sinu se převádí na radiány.
Všechny funkce jsou symetrické bit po bitu: skalární součin i rozdíly
se sčítají ve vzestupném pořadí indexů bez ohledu na pořadí argumentů.
"""
import math
from enum import Enum
from typing import Callable, Dict

from docsim.errors import ConfigError, DimensionMismatchError
from docsim.features import FeatureVector

LOWER_IS_CLOSER = "lower_is_closer"
HIGHER_IS_CLOSER = "higher_is_closer"


class MetricKind(str, Enum):
    EUCLIDEAN = "euclidean"
    COSINE = "cosine"
    TS_SS = "ts_ss"

    @property
    def direction(self) -> str:
        return HIGHER_IS_CLOSER if self is MetricKind.COSINE else LOWER_IS_CLOSER

    @property
    def short_name(self) -> str:
        return _SHORT[self]

    @property
    def self_score(self) -> float:
        return 1.0 if self is MetricKind.COSINE else 0.0

    def is_better(self, candidate: float, best: float) -> bool:
        # striktně: při shodě vyhrává dřívější případ
        if self.direction == LOWER_IS_CLOSER:
            return candidate < best
        return candidate > best

    @classmethod
    def parse(cls, name: str) -> "MetricKind":
        key = (name or "").strip().lower().replace("-", "_")
        if key in _ALIASES:
            return _ALIASES[key]
        raise ConfigError(f"Neznámá metrika: {name!r} (povoleno: ed, cs, tsss)")


_SHORT = {MetricKind.EUCLIDEAN: "ed", MetricKind.COSINE: "cs", MetricKind.TS_SS: "tsss"}
_ALIASES: Dict[str, MetricKind] = {
    "ed": MetricKind.EUCLIDEAN, "euclidean": MetricKind.EUCLIDEAN,
    "cs": MetricKind.COSINE, "cosine": MetricKind.COSINE,
    "tsss": MetricKind.TS_SS, "ts_ss": MetricKind.TS_SS,
}


def _check_dims(x: FeatureVector, y: FeatureVector) -> None:
    if x.dim != y.dim:
        raise DimensionMismatchError(x.dim, y.dim)


# ---------------------------
# Řídká jádra
# ---------------------------

def dot(x: FeatureVector, y: FeatureVector) -> float:
    _check_dims(x, y)
    # iteruje kratší mapu; klíče jsou vzestupně, takže pořadí sčítání nezávisí na pořadí argumentů
    short, other = (x.entries, y.entries) if len(x.entries) <= len(y.entries) else (y.entries, x.entries)
    total = 0.0
    for i, w in short.items():
        v = other.get(i)
        if v is not None:
            total += w * v
    return total


def euclidean(x: FeatureVector, y: FeatureVector) -> float:
    _check_dims(x, y)
    xe, ye = x.entries, y.entries
    total = 0.0
    # merge přes sjednocení indexů ve vzestupném pořadí
    for i in sorted(xe.keys() | ye.keys()):
        d = xe.get(i, 0.0) - ye.get(i, 0.0)
        total += d * d
    return math.sqrt(total)


def cosine(x: FeatureVector, y: FeatureVector) -> float:
    """dot / (|x||y|), oříznuto na [-1, 1]; s nulovým vektorem 0."""
    _check_dims(x, y)
    if x.is_zero or y.is_zero:
        return 0.0
    c = dot(x, y) / (x.norm * y.norm)
    return max(-1.0, min(1.0, c))


def theta_prime(x: FeatureVector, y: FeatureVector) -> float:
    return math.degrees(math.acos(cosine(x, y))) + 10.0


def triangle_area(x: FeatureVector, y: FeatureVector) -> float:
    theta = theta_prime(x, y)
    return x.norm * y.norm * math.sin(math.radians(theta)) / 2.0


def sector_area(x: FeatureVector, y: FeatureVector) -> float:
    theta = theta_prime(x, y)
    magnitude_gap = abs(x.norm - y.norm)
    return math.pi * (euclidean(x, y) + magnitude_gap) ** 2 * theta / 360.0


def ts_ss(x: FeatureVector, y: FeatureVector) -> float:
    return triangle_area(x, y) * sector_area(x, y)


_KERNELS: Dict[MetricKind, Callable[[FeatureVector, FeatureVector], float]] = {
    MetricKind.EUCLIDEAN: euclidean,
    MetricKind.COSINE: cosine,
    MetricKind.TS_SS: ts_ss,
}


def score(metric: MetricKind, x: FeatureVector, y: FeatureVector) -> float:
    return _KERNELS[metric](x, y)


def ts_ss_unit_closed_form(x: FeatureVector, y: FeatureVector) -> float:
    """TS-SS pro jednotkové vektory: (π/720)·θ'·sin θ'·ED²."""
    theta = theta_prime(x, y)
    return math.pi / 720.0 * theta * math.sin(math.radians(theta)) * euclidean(x, y) ** 2
