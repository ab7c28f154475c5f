"""
Konfigurace běhu (parametry předzpracování a příznaků + řízení sweepu).

Soubor je plochý TOML "klíč = hodnota", např.:

    min_word_length = 3
    max_df = 0.5
    dims = [10, 50, 100]
    metrics = ["ed", "cs", "tsss"]
    norm = "l2"

Příznaky z příkazové řádky přepisují hodnoty ze souboru.
"""
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import toml

from docsim.errors import ConfigError
from docsim.features import DEFAULT_DIMS, NORM_MODES
from docsim.metrics import MetricKind
from docsim.preprocess import PreprocessConfig, load_stopwords, stopwords_hash


@dataclass(frozen=True)
class RunConfig:
    # předzpracování
    min_word_length: int = 3
    lowercase: bool = True
    stopwords_file: str = ""  # prázdné = přibalený anglický seznam
    strip_emails: bool = True
    strip_urls: bool = True
    letters_only: bool = True
    stem: bool = True
    # příznaky
    min_df: float = 0.01
    max_df: float = 0.5
    dims: Tuple[int, ...] = DEFAULT_DIMS
    norm: Tuple[str, ...] = ("none",)
    metrics: Tuple[str, ...] = ("ed", "cs", "tsss")
    # data + běh
    train: str = ""
    test: str = ""
    corpus_format: str = "auto"
    out: str = ""
    seed: int = 7
    test_fraction: float = 0.2
    jobs: int = 1
    beta: float = 1.0

    def __post_init__(self):
        for name in ("dims", "norm", "metrics"):
            value = getattr(self, name)
            if isinstance(value, list):
                object.__setattr__(self, name, tuple(value))

    # ---- validace ----

    def validate(self) -> "RunConfig":
        if self.min_word_length < 1:
            raise ConfigError(f"min_word_length musí být >= 1, je {self.min_word_length}")
        if not 0.0 <= self.min_df < self.max_df <= 1.0:
            raise ConfigError(f"Musí platit 0 <= min_df < max_df <= 1 (min_df={self.min_df}, max_df={self.max_df})")
        if not self.dims or any(m < 1 for m in self.dims):
            raise ConfigError(f"dims musí být neprázdný seznam kladných celých čísel, je {list(self.dims)}")
        if not self.norm:
            raise ConfigError("norm nesmí být prázdné")
        for n in self.norm:
            if n not in NORM_MODES:
                raise ConfigError(f"Neznámá normalizace {n!r} (povoleno: {', '.join(NORM_MODES)})")
        if not self.metrics:
            raise ConfigError("metrics nesmí být prázdné")
        for m in self.metrics:
            MetricKind.parse(m)
        if self.corpus_format not in ("auto", "jsonl", "labeled-dirs"):
            raise ConfigError(f"Neznámý formát korpusu {self.corpus_format!r}")
        if not 0.0 < self.test_fraction < 1.0:
            raise ConfigError(f"test_fraction musí být v (0, 1), je {self.test_fraction}")
        if self.jobs < 1:
            raise ConfigError(f"jobs musí být >= 1, je {self.jobs}")
        if self.beta <= 0:
            raise ConfigError(f"beta musí být > 0, je {self.beta}")
        if self.stopwords_file and not Path(self.stopwords_file).exists():
            raise ConfigError(f"Soubor se stop slovy neexistuje: {self.stopwords_file}")
        return self

    # ---- odvozené ----

    def preprocess_config(self) -> PreprocessConfig:
        stop = load_stopwords(Path(self.stopwords_file)) if self.stopwords_file else load_stopwords()
        return PreprocessConfig(
            min_word_length=self.min_word_length,
            lowercase=self.lowercase,
            stopwords=tuple(w.lower() for w in stop),
            strip_emails=self.strip_emails,
            strip_urls=self.strip_urls,
            letters_only=self.letters_only,
            stem=self.stem,
        )

    def stopword_source(self) -> Dict[str, str]:
        """Původ stop slov a SHA-256 obsahu souboru (bez úprav velikosti písmen)."""
        if not self.stopwords_file:
            return {"file": "bundled", "file_sha256": stopwords_hash()}
        return {"file": self.stopwords_file, "file_sha256": stopwords_hash(Path(self.stopwords_file))}

    def metric_kinds(self) -> List[MetricKind]:
        return [MetricKind.parse(m) for m in self.metrics]

    # ---- serializace ----

    def to_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        for name in ("dims", "norm", "metrics"):
            d[name] = list(d[name])
        return d

    def to_toml(self) -> str:
        return toml.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        types = {f.name: f for f in fields(cls)}
        unknown = sorted(set(data) - set(types))
        if unknown:
            raise ConfigError(f"Neznámé klíče v konfiguraci: {', '.join(unknown)}")
        kwargs = {}
        for key, value in data.items():
            kwargs[key] = _coerce(key, value, getattr(cls, key, None) if key not in ("dims", "norm", "metrics") else None)
        return cls(**kwargs)

    @classmethod
    def from_toml(cls, text: str) -> "RunConfig":
        try:
            data = toml.loads(text)
        except toml.TomlDecodeError as e:
            raise ConfigError(f"Chyba v konfiguraci: {e}") from e
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "RunConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"Konfigurační soubor neexistuje: {path}")
        return cls.from_toml(path.read_text(encoding="utf-8"))

    def merged(self, overrides: Dict[str, Any]) -> "RunConfig":
        """Přepíše hodnoty, které nejsou None (typicky příznaky CLI)."""
        clean = {k: v for k, v in overrides.items() if v is not None}
        checked = RunConfig.from_dict(clean)
        return replace(self, **{k: getattr(checked, k) for k in clean})


def _coerce(key: str, value: Any, default: Optional[Any]) -> Any:
    if key == "dims":
        items = _as_list(key, value)
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in items):
            raise ConfigError(f"{key}: očekávána celá čísla, je {value!r}")
        return tuple(items)
    if key in ("norm", "metrics"):
        items = _as_list(key, value)
        if not all(isinstance(x, str) for x in items):
            raise ConfigError(f"{key}: očekávány řetězce, je {value!r}")
        return tuple(items)

    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"{key}: očekáváno true/false, je {value!r}")
        return value
    if isinstance(default, int):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{key}: očekáváno celé číslo, je {value!r}")
        return value
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key}: očekáváno číslo, je {value!r}")
        return float(value)
    if not isinstance(value, str):
        raise ConfigError(f"{key}: očekáván řetězec, je {value!r}")
    return value


def _as_list(key: str, value: Any) -> List[Any]:
    if isinstance(value, (list, tuple)):
        return list(value)
    if isinstance(value, str):
        # "10,50,100" z příkazové řádky
        parts = [p.strip() for p in value.split(",") if p.strip()]
        if key == "dims":
            try:
                return [int(p) for p in parts]
            except ValueError as e:
                raise ConfigError(f"{key}: neplatný seznam {value!r}") from e
        return parts
    if isinstance(value, int) and key == "dims":
        return [value]
    raise ConfigError(f"{key}: očekáván seznam, je {value!r}")
