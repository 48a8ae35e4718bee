"""Runtime configuration: thresholds, rule constants and lexicon paths.

Loaded from a "key = value" text file named on the command line or via the
BRANDGAUGE_CONFIG environment variable; unset keys keep their defaults.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from datetime import date
from typing import Optional

from .errors import BrandGaugeError

ENV_VAR = "BRANDGAUGE_CONFIG"


@dataclass(frozen=True)
class Config:
    label_threshold: float = 0.5
    high_fidelity_tau: float = 0.95
    strong_bin_cutoff: float = 0.8
    strong_rank_cutoff: float = 0.6
    not_consistent_bin_cutoff: float = 0.5
    bin_weeks: int = 12
    negation_window: int = 3
    negation_flip: float = -0.74
    booster_window: int = 1
    booster_increment: float = 0.293
    sentence_sim: str = "full"  # "full" | "hamming_only"
    tfidf_min_df: int = 1
    tfidf_max_features: int = 5000
    date_range_start: date = date(2000, 1, 1)
    date_range_end: date = date(2017, 9, 30)
    category_lexicon_path: Optional[str] = None
    sentiment_lexicon_path: Optional[str] = None
    booster_path: Optional[str] = None
    negator_path: Optional[str] = None
    contractions_path: Optional[str] = None
    collocations_path: Optional[str] = None
    max_body_bytes: int = 1_000_000

    def __post_init__(self):
        if not 0.0 < self.high_fidelity_tau < 1.0:
            raise BrandGaugeError("high_fidelity_tau must be in (0, 1)")
        if self.sentence_sim not in ("full", "hamming_only"):
            raise BrandGaugeError("sentence_sim must be 'full' or 'hamming_only'")
        if self.bin_weeks < 1:
            raise BrandGaugeError("bin_weeks must be >= 1")


_FIELD_TYPES = {f.name: f.type for f in fields(Config)}


def _coerce(name: str, raw: str):
    raw = raw.strip()
    ftype = _FIELD_TYPES.get(name)
    if ftype is None:
        raise BrandGaugeError(f"unknown config key: {name}")
    if "int" in str(ftype):
        return int(raw)
    if "float" in str(ftype):
        return float(raw)
    if "date" in str(ftype):
        return date.fromisoformat(raw)
    if raw.lower() in ("none", ""):
        return None
    return raw


def load_config(path: Optional[str] = None) -> Config:
    """Config file from an explicit path, else $BRANDGAUGE_CONFIG, else
    all defaults."""
    if path is None:
        path = os.environ.get(ENV_VAR)
    cfg = Config()
    if not path:
        return cfg
    overrides = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise BrandGaugeError(f"{path}:{lineno}: expected 'key = value'")
            overrides[key.strip()] = _coerce(key.strip(), value)
    return replace(cfg, **overrides)
