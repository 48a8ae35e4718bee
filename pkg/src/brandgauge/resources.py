"""Access to the bundled data files (word lists, demo lexicons)."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

_PKG = "brandgauge.data"

# identifies the bundled stopword list inside feature schema hashes
STOPWORDS_ID = "en-core-v1"


def data_path(name: str):
    return resources.files(_PKG).joinpath(name)


def read_data_text(name: str) -> str:
    return data_path(name).read_text(encoding="utf-8")


def _word_lines(name: str) -> list[str]:
    out = []
    for line in read_data_text(name).splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


@lru_cache(maxsize=None)
def load_stopwords() -> frozenset[str]:
    return frozenset(w.lower() for w in _word_lines("stopwords.txt"))


@lru_cache(maxsize=None)
def load_abbreviations() -> frozenset[str]:
    return frozenset(w.lower().rstrip(".") for w in _word_lines("abbreviations.txt"))


@lru_cache(maxsize=None)
def load_syllable_exceptions() -> dict[str, int]:
    out: dict[str, int] = {}
    for line in _word_lines("syllable_exceptions.txt"):
        word, _, count = line.partition("\t")
        out[word.strip().lower()] = int(count)
    return out
