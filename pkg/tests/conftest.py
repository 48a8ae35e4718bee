"""Shared fixtures: a deterministic synthetic training corpus, a trained
model bundle over the bundled demo lexicons, and ranking scaffolding."""
from __future__ import annotations

import json
from pathlib import Path

import pytest

from brandgauge import cli
from brandgauge.classify import TRAITS, load_bundle
from brandgauge.consistency import CompanyProfile
from brandgauge.ranker import CentralEntitySet

TRAIT_MARKERS = {
    "sincerity": ["honest", "friendly", "sincere", "genuine", "heartfelt"],
    "excitement": ["thrilling", "spirited", "trendy", "daring", "vibrant"],
    "competence": ["competitive", "ambitious", "capable", "skilled", "efficient"],
    "ruggedness": ["rugged", "outdoorsy", "sturdy", "rough", "untamed"],
    "sophistication": ["glamorous", "elegant", "refined", "luxurious", "polished"],
}

FILLERS = [
    "The company shared a short update about its plans.",
    "Readers follow the posts published on the website.",
    "Another season brought changes across several regions.",
    "Visitors keep returning for the regular articles.",
]


def training_records(n: int = 64) -> list[dict]:
    """Deterministic labeled corpus: trait presence follows the bit pattern
    of the record index (all 32 patterns twice at the default size, so the
    labels are mutually orthogonal), marker words realize each trait."""
    records = []
    for i in range(n):
        bits = [(i >> t) & 1 for t in range(len(TRAITS))]
        parts = [FILLERS[i % len(FILLERS)]]
        for t, trait in enumerate(TRAITS):
            if bits[t]:
                words = TRAIT_MARKERS[trait]
                a = words[i % len(words)]
                b = words[(i + 1) % len(words)]
                parts.append(f"The tone felt {a} and {b} throughout.")
        parts.append(FILLERS[(i + 1) % len(FILLERS)])
        records.append(
            {
                "id": f"doc{i:03d}",
                "text": " ".join(parts),
                "company": "Acme",
                "labels": {trait: bits[t] for t, trait in enumerate(TRAITS)},
            }
        )
    return records


@pytest.fixture(scope="session")
def examples_jsonl(tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("train") / "examples.jsonl"
    with open(path, "w", encoding="utf-8") as fh:
        for rec in training_records():
            fh.write(json.dumps(rec) + "\n")
    return path


@pytest.fixture(scope="session")
def bundle_dir(tmp_path_factory, examples_jsonl) -> Path:
    out = tmp_path_factory.mktemp("bundle")
    rc = cli.main(
        [
            "train",
            "--examples",
            str(examples_jsonl),
            "--out-dir",
            str(out),
            "--folds",
            "3",
            "--seed",
            "11",
            "--max-features",
            "400",
        ]
    )
    assert rc == 0
    return out


@pytest.fixture(scope="session")
def bundle(bundle_dir):
    return load_bundle(str(bundle_dir / "flcs.bundle"))


@pytest.fixture(scope="session")
def ranking_ctx(bundle):
    from brandgauge.cli import build_ranking_context
    from brandgauge.config import Config

    return build_ranking_context(bundle, Config())


@pytest.fixture(scope="session")
def acme_profile() -> CompanyProfile:
    return CompanyProfile(
        company="Acme",
        representative_label=(1, 0, 1, 0, 0),
        representative_rank=(1, 4, 2, 5, 3),
        representative_confidences=(0.9, 0.2, 0.8, 0.1, 0.3),
        static_post_count=4,
    )


@pytest.fixture(scope="session")
def acme_central() -> CentralEntitySet:
    return CentralEntitySet(
        entities=frozenset({"acme"}),
        company_aliases=("Acme",),
        resolve_pronouns=False,
    )


GOLD_NEGATIVES = [
    "Acme faced a terrible setback with the delayed launch.",
    "Critics called the Acme rollout a disappointing failure.",
    "The Acme warehouse suffered damage during the awful storm.",
    "Acme reported a painful loss after the worst quarter.",
    "An angry crowd blamed Acme for the broken promises.",
]

NEUTRAL_SENTENCES = [
    "The weather station recorded ordinary numbers this month.",
    "A local bakery introduced a seasonal bread recipe.",
    "Commuters noticed the new schedule on the morning line.",
    "The library extended reading hours for the holidays.",
    "Gardeners planted rows of tulips along the avenue.",
    "The museum rotated a collection of landscape paintings.",
    "Students rehearsed a play in the east auditorium.",
]


def synthetic_article(i: int) -> tuple[str, list[int]]:
    """Seven sentences; exactly three are negative-and-central (the GOLD
    set by construction), never all inside the first three positions."""
    gold_positions = [1 + i % 2, 3 + (i // 2) % 2, 5 + (i // 4) % 2]
    assert len(set(gold_positions)) == 3
    sentences = []
    g = 0
    for pos in range(7):
        if pos in gold_positions:
            sentences.append(GOLD_NEGATIVES[(i + g) % len(GOLD_NEGATIVES)])
            g += 1
        else:
            sentences.append(NEUTRAL_SENTENCES[(i + pos) % len(NEUTRAL_SENTENCES)])
    return " ".join(sentences), gold_positions
