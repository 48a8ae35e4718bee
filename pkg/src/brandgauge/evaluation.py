"""Ranker evaluation: ROUGE overlap, Precision@k against GOLD, paired t.

ROUGE runs on lowercased word tokens of the concatenated selected
sentences (document order) against the concatenated GOLD sentences; no
stemming, no stopword removal. The t-distribution CDF is computed with a
continued-fraction regularized incomplete beta so the package stays
dependency-free; tests check it against an independent oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .consistency import CompanyProfile
from .errors import BrandGaugeError
from .ranker import MASR3, CentralEntitySet, RankingContext, rank_with_method
from .textcore import Document, tokenize

__all__ = [
    "GoldAnnotation",
    "MetricRow",
    "RougeScore",
    "rouge_n",
    "rouge_lcs",
    "precision_at_k",
    "paired_t_test",
    "evaluate_rankers",
    "metric_rows_from_selections",
    "ArticleCase",
]

P_VALUE_FLOOR = 1e-12
_METRIC_KEYS = ("rouge1", "rouge2", "rougeL", "prec1", "prec2", "prec3")


@dataclass(frozen=True)
class GoldAnnotation:
    article_id: str
    gold_sentence_indices: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= len(self.gold_sentence_indices) <= 3:
            raise BrandGaugeError("GOLD must mark between 1 and 3 sentences")


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class MetricRow:
    method: str
    rouge1: float
    rouge2: float
    rougeL: float
    prec1: float
    prec2: float
    prec3: float
    p_values: dict[str, float]


def _ngram_counts(tokens: Sequence[str], n: int) -> dict[tuple[str, ...], int]:
    counts: dict[tuple[str, ...], int] = {}
    for i in range(len(tokens) - n + 1):
        g = tuple(tokens[i : i + n])
        counts[g] = counts.get(g, 0) + 1
    return counts


def _prf(overlap: float, cand_total: float, ref_total: float) -> RougeScore:
    if cand_total == 0 or ref_total == 0:
        return RougeScore(0.0, 0.0, 0.0)
    p = overlap / cand_total
    r = overlap / ref_total
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return RougeScore(p, r, f1)


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> RougeScore:
    """Clipped n-gram overlap; empty side scores zero."""
    if n not in (1, 2):
        raise BrandGaugeError("n must be 1 or 2")
    cand = _ngram_counts(candidate, n)
    ref = _ngram_counts(reference, n)
    overlap = sum(min(c, ref[g]) for g, c in cand.items() if g in ref)
    return _prf(overlap, sum(cand.values()), sum(ref.values()))


def rouge_lcs(candidate: Sequence[str], reference: Sequence[str]) -> RougeScore:
    """Longest-common-subsequence overlap over token sequences."""
    m, n = len(candidate), len(reference)
    if m == 0 or n == 0:
        return RougeScore(0.0, 0.0, 0.0)
    prev = [0] * (n + 1)
    for i in range(1, m + 1):
        row = [0] * (n + 1)
        for j in range(1, n + 1):
            if candidate[i - 1] == reference[j - 1]:
                row[j] = prev[j - 1] + 1
            else:
                row[j] = max(prev[j], row[j - 1])
        prev = row
    lcs = prev[n]
    return _prf(lcs, m, n)


def precision_at_k(selected: Sequence[int], gold: GoldAnnotation, k: int) -> float:
    """Fraction of the top-k selected indices present in GOLD; the
    denominator stays k even when fewer sentences exist."""
    if k < 1:
        raise BrandGaugeError("k must be >= 1")
    if not selected:
        raise BrandGaugeError("empty selection")
    gold_set = set(gold.gold_sentence_indices)
    hits = sum(1 for i in selected[:k] if i in gold_set)
    return hits / k


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the regularized incomplete beta (modified
    Lentz)."""
    max_iter = 300
    eps = 3e-16
    fpmin = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < fpmin:
        d = fpmin
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            break
    return h


def _betainc_reg(a: float, b: float, x: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log(1.0 - x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _student_t_two_sided_p(t: float, dof: int) -> float:
    x = dof / (dof + t * t)
    return _betainc_reg(dof / 2.0, 0.5, x)


def paired_t_test(scores_a: Sequence[float], scores_b: Sequence[float]) -> tuple[float, float]:
    """Two-sided paired t-test. Identical lists give (0, 1); zero-variance
    nonzero-mean differences report p at the 1e-12 floor."""
    if len(scores_a) != len(scores_b):
        raise BrandGaugeError("score lists must have equal length")
    n = len(scores_a)
    if n < 2:
        raise BrandGaugeError("need at least 2 paired scores")
    diffs = [a - b for a, b in zip(scores_a, scores_b)]
    mean = sum(diffs) / n
    var = sum((d - mean) ** 2 for d in diffs) / (n - 1)
    sd = math.sqrt(var)
    if sd == 0.0:
        if mean == 0.0:
            return 0.0, 1.0
        return math.copysign(math.inf, mean), P_VALUE_FLOOR
    t = mean / (sd / math.sqrt(n))
    p = _student_t_two_sided_p(t, n - 1)
    return t, p


@dataclass(frozen=True)
class ArticleCase:
    doc: Document
    profile: CompanyProfile
    central: CentralEntitySet


def _rouge_tokens(text: str) -> list[str]:
    return [t.lower for t in tokenize(text) if t.is_word]


def metric_rows_from_selections(
    selections: dict[str, dict[str, Sequence[int]]],
    docs: dict[str, Document],
    golds: dict[str, GoldAnnotation],
    reference: str = MASR3,
) -> list[MetricRow]:
    """Metric table from precomputed selections keyed method -> article id.
    p-values compare each method against the reference per metric; without
    the reference method the p-value columns stay empty."""
    article_ids = sorted({aid for per in selections.values() for aid in per})
    missing = [aid for aid in article_ids if aid not in golds]
    if missing:
        raise BrandGaugeError(f"articles without GOLD annotation: {missing}")

    per_method: dict[str, dict[str, list[float]]] = {
        m: {key: [] for key in _METRIC_KEYS} for m in selections
    }
    for aid in article_ids:
        doc = docs[aid]
        gold = golds[aid]
        sentences = doc.sentences
        gold_text = " ".join(
            doc.sentence_text(sentences[i]) for i in sorted(gold.gold_sentence_indices)
        )
        ref_tokens = _rouge_tokens(gold_text)
        for method, per_article in selections.items():
            if aid not in per_article:
                raise BrandGaugeError(f"method {method!r} has no ranking for {aid!r}")
            indices = list(per_article[aid])
            cand_text = " ".join(
                doc.sentence_text(sentences[i]) for i in sorted(indices)
            )
            cand_tokens = _rouge_tokens(cand_text)
            stats = per_method[method]
            stats["rouge1"].append(rouge_n(cand_tokens, ref_tokens, 1).f1)
            stats["rouge2"].append(rouge_n(cand_tokens, ref_tokens, 2).f1)
            stats["rougeL"].append(rouge_lcs(cand_tokens, ref_tokens).f1)
            for kk in (1, 2, 3):
                stats[f"prec{kk}"].append(precision_at_k(indices, gold, kk))

    rows = []
    for method, stats in per_method.items():
        p_values = {}
        if reference in per_method and len(article_ids) >= 2:
            for key in _METRIC_KEYS:
                _, p = paired_t_test(per_method[reference][key], stats[key])
                p_values[key] = p
        rows.append(
            MetricRow(
                method=method,
                rouge1=_mean(stats["rouge1"]),
                rouge2=_mean(stats["rouge2"]),
                rougeL=_mean(stats["rougeL"]),
                prec1=_mean(stats["prec1"]),
                prec2=_mean(stats["prec2"]),
                prec3=_mean(stats["prec3"]),
                p_values=p_values,
            )
        )
    order = {m: i for i, m in enumerate(selections)}
    rows.sort(key=lambda r: order[r.method])
    return rows


def evaluate_rankers(
    cases: Sequence[ArticleCase],
    golds: dict[str, GoldAnnotation],
    methods: Sequence[str],
    ctx: RankingContext,
    seed: int = 0,
    k: int = 3,
) -> list[MetricRow]:
    """Run every method over the articles, then build the metric table with
    two-sided paired-t p-values against the multi-aspect ranker."""
    missing = [c.doc.id for c in cases if c.doc.id not in golds]
    if missing:
        raise BrandGaugeError(f"articles without GOLD annotation: {missing}")
    if MASR3 not in methods:
        methods = [MASR3, *methods]
    selections: dict[str, dict[str, list[int]]] = {m: {} for m in methods}
    docs = {}
    for case in cases:
        docs[case.doc.id] = case.doc
        for method in methods:
            ranked = rank_with_method(
                method, case.doc, case.profile, case.central, ctx, seed=seed, k=k
            )
            selections[method][case.doc.id] = [r.index for r in ranked]
    return metric_rows_from_selections(selections, docs, golds)


def _mean(xs: Sequence[float]) -> float:
    return sum(xs) / len(xs) if xs else 0.0
