"""
Prokletí dimenzionality: N bodů rovnoměrně v M-rozměrné jednotkové kouli.

  median_nn_distance(M, N) = (1 - (1/2)^(1/N))^(1/M)
  required_points(d, M)    = ln(1/2) / ln(1 - d^M)
"""
import math

from docsim.errors import ConfigError

LN_HALF = math.log(0.5)


def _check_int(name: str, value: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(f"{name} musí být celé číslo >= 1, je {value!r}")


def median_nn_distance(M: int, N: int) -> float:
    """Medián vzdálenosti od středu k nejbližšímu z N bodů."""
    _check_int("M", M)
    _check_int("N", N)
    # 1 - 0.5^(1/N) přes expm1, ať se pro velká N neztrácí přesnost
    base = -math.expm1(LN_HALF / N)
    return base ** (1.0 / M)


def required_points(d: float, M: int) -> float:
    """Počet bodů, pro který je medián vzdálenosti roven d (nezaokrouhleno)."""
    _check_int("M", M)
    if not 0.0 < d < 1.0:
        raise ConfigError(f"d musí být v (0, 1), je {d!r}")
    d_m = d ** M
    n = LN_HALF / math.log1p(-d_m) if d_m > 0.0 else math.inf
    if not math.isfinite(n):
        # d^M podteče, N ~ ln 2 / d^M už není reprezentovatelné
        raise ConfigError(f"N pro d={d!r}, M={M} přesahuje rozsah float")
    return n
