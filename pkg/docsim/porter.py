"""
Porterův stemmer v původní podobě (Porter, 1980) přes nltk.

Režim ORIGINAL_ALGORITHM vypíná rozšíření nltk i Martinovy úpravy
("bli"/"logi" pravidla, přeskakování krátkých slov, slovník výjimek).
"""
from functools import lru_cache

from nltk.stem import PorterStemmer

_stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


@lru_cache(maxsize=65536)
def porter_stem(token: str) -> str:
    """Vrátí kmen slova; vstup je malými písmeny (a-z)."""
    if not token:
        return token
    return _stemmer.stem(token, to_lowercase=False)
