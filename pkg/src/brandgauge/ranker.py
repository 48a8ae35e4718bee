"""Sentence ranking: which sentences to rewrite first.

Each sentence gets three aspects — negative polarity, centrality to the
target organization, and label-vector similarity to the company profile —
combined into a 1..6 relevance score. The multi-aspect ranker sorts by
relevance, then negative score, then central-mention count, then document
order; six reference baselines share the same aspect computation.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .classify import ModelBundle, assess
from .consistency import CompanyProfile, bin_label_sim, hamming_label_sim
from .errors import BrandGaugeError
from .features import FeatureLexicons, TfidfModel, extract_features
from .lexicons import SentimentLexicon, SentimentRules, sentiment_scores
from .resources import load_stopwords
from .textcore import Document, SentenceSpan

__all__ = [
    "BASELINE_METHODS",
    "MASR3",
    "CentralEntitySet",
    "AspectScores",
    "RankedSentence",
    "RankingContext",
    "detect_entities",
    "sentence_aspects",
    "relevance_score",
    "order_masr3",
    "order_baseline",
    "masr3_rank",
    "baseline_rank",
    "rank_with_method",
]

MASR3 = "masr3"
BASELINE_METHODS = ("rand3", "lead3", "ctr3", "pol3", "cons3", "conspol3")

_PLURAL_PRONOUNS = frozenset({"we", "us", "our", "ours", "ourselves"})


@dataclass(frozen=True)
class CentralEntitySet:
    entities: frozenset[str]
    company_aliases: tuple[str, ...] = ()
    resolve_pronouns: bool = True

    @classmethod
    def for_company(
        cls,
        aliases: tuple[str, ...],
        curated: frozenset[str] = frozenset(),
        resolve_pronouns: bool = True,
    ) -> "CentralEntitySet":
        """Curated entities plus the company's own aliases; the
        organization's name is always a central entity."""
        entities = frozenset(e.lower() for e in curated) | frozenset(
            a.lower() for a in aliases if a.strip()
        )
        return cls(entities, aliases, resolve_pronouns)

    def phrases(self) -> list[tuple[str, ...]]:
        out = []
        for raw in sorted(self.entities):
            toks = tuple(raw.split())
            if toks:
                out.append(toks)
        return out


@dataclass(frozen=True)
class AspectScores:
    whether_neg: bool
    neg_scr: float
    pos_scr: float
    whether_central: bool
    central_mentions: int
    sentence_bin_sim: float


@dataclass(frozen=True)
class RankedSentence:
    index: int
    text: str
    relevance: int
    aspects: AspectScores


@dataclass(frozen=True)
class RankingContext:
    """Everything a ranker needs besides the article itself."""

    bundle: ModelBundle
    lexicons: FeatureLexicons
    tfidf: TfidfModel
    sentiment: SentimentLexicon
    sentence_sim: str = "full"  # or "hamming_only"
    sentiment_rules: SentimentRules = SentimentRules()


def detect_entities(doc: Document, min_freq: int = 3) -> list[tuple[str, int]]:
    """Candidate central entities: maximal runs of capitalized word tokens
    (a sentence-initial stopword cannot start a run), normalized lowercase,
    kept when they occur at least min_freq times. Sorted for curation."""
    stopwords = load_stopwords()
    sentence_first_word: set[int] = set()
    for s in doc.sentences:
        for ti in range(*s.token_range):
            if doc.tokens[ti].is_word:
                sentence_first_word.add(ti)
                break

    counts: dict[str, int] = {}
    run: list[str] = []

    def flush():
        if run:
            phrase = " ".join(run)
            counts[phrase] = counts.get(phrase, 0) + 1
            run.clear()

    for ti, tok in enumerate(doc.tokens):
        if tok.is_word and tok.surface[:1].isupper():
            if not run and ti in sentence_first_word and tok.lower in stopwords:
                continue
            run.append(tok.lower)
        else:
            flush()
    flush()
    ranked = [(e, c) for e, c in counts.items() if c >= min_freq]
    ranked.sort(key=lambda ec: (-ec[1], ec[0]))
    return ranked


def _count_mentions(words_lower: list[str], phrases: list[tuple[str, ...]]) -> int:
    if not phrases:
        return 0
    by_len = sorted(phrases, key=len, reverse=True)
    mentions = 0
    i = 0
    while i < len(words_lower):
        step = 1
        for phrase in by_len:
            n = len(phrase)
            if i + n <= len(words_lower) and tuple(words_lower[i : i + n]) == phrase:
                mentions += 1
                step = n
                break
        i += step
    return mentions


def sentence_aspects(
    doc: Document,
    sentence: SentenceSpan,
    central: CentralEntitySet,
    ctx: RankingContext,
    profile: CompanyProfile,
) -> AspectScores:
    """Aspect scores for one sentence of the article."""
    tokens = doc.sentence_tokens(sentence)
    if not tokens:
        raise BrandGaugeError("empty sentence")
    scores = sentiment_scores(tokens, ctx.sentiment, ctx.sentiment_rules)

    words_lower = [t.lower for t in tokens if t.is_word]
    mentions = _count_mentions(words_lower, central.phrases())
    if central.resolve_pronouns:
        mentions += sum(1 for w in words_lower if w in _PLURAL_PRONOUNS)

    sentence_doc = Document.from_text(doc.sentence_text(sentence))
    aliases = central.company_aliases or (profile.company or "unknown",)
    fv = extract_features(sentence_doc, ctx.lexicons, ctx.tfidf, aliases)
    label = assess(ctx.bundle.models, fv).label_vector
    if ctx.sentence_sim == "hamming_only":
        sim = hamming_label_sim(label, profile.representative_label)
    else:
        sim = bin_label_sim(label, profile.representative_label)

    return AspectScores(
        whether_neg=scores.neg > scores.pos,
        neg_scr=scores.neg,
        pos_scr=scores.pos,
        whether_central=mentions >= 1,
        central_mentions=mentions,
        sentence_bin_sim=sim,
    )


def relevance_score(aspects: AspectScores) -> int:
    """The six-row scoring table: negativity dominates, then centrality,
    then whether the sentence's label similarity clears 0.5."""
    if aspects.whether_neg:
        return 6 if aspects.whether_central else 5
    if aspects.whether_central:
        return 4 if aspects.sentence_bin_sim <= 0.5 else 3
    return 2 if aspects.sentence_bin_sim <= 0.5 else 1


def _scored_sentences(
    doc: Document,
    profile: CompanyProfile,
    central: CentralEntitySet,
    ctx: RankingContext,
) -> list[RankedSentence]:
    if not doc.sentences:
        raise BrandGaugeError("document has no sentences")
    out = []
    for s in doc.sentences:
        aspects = sentence_aspects(doc, s, central, ctx, profile)
        out.append(
            RankedSentence(
                index=s.index,
                text=doc.sentence_text(s),
                relevance=relevance_score(aspects),
                aspects=aspects,
            )
        )
    return out


def order_masr3(scored: list[RankedSentence], k: int = 3) -> list[RankedSentence]:
    """Top-k by (relevance desc, negScr desc, central mentions desc,
    document order)."""
    ordered = sorted(
        scored,
        key=lambda r: (-r.relevance, -r.aspects.neg_scr, -r.aspects.central_mentions, r.index),
    )
    return ordered[: min(k, len(ordered))]


def _pad(selected: list[RankedSentence], pool: list[RankedSentence], k: int) -> list[RankedSentence]:
    if len(selected) >= k:
        return selected[:k]
    chosen = {r.index for r in selected}
    rest = [r for r in sorted(pool, key=lambda r: r.index) if r.index not in chosen]
    return (selected + rest)[: min(k, len(pool))]


def order_baseline(
    method: str,
    scored: list[RankedSentence],
    k: int = 3,
    seed: Optional[int] = None,
) -> list[RankedSentence]:
    """Ordering rules of the six reference rankers; filter methods short of
    k sentences are padded in document order."""
    n = len(scored)
    if method == "rand3":
        if seed is None:
            raise BrandGaugeError("rand3 requires a seed")
        rng = random.Random(seed)
        by_index = {r.index: r for r in scored}
        picked = rng.sample(sorted(by_index), min(k, n))
        return [by_index[i] for i in picked]
    if method == "lead3":
        return sorted(scored, key=lambda r: r.index)[: min(k, n)]
    if method == "ctr3":
        hits = [r for r in scored if r.aspects.whether_central]
        hits.sort(key=lambda r: (-r.aspects.central_mentions, r.index))
        return _pad(hits, scored, k)
    if method == "pol3":
        hits = [r for r in scored if r.aspects.whether_neg]
        hits.sort(key=lambda r: (-r.aspects.neg_scr, r.index))
        return _pad(hits, scored, k)
    if method == "cons3":
        ordered = sorted(scored, key=lambda r: (r.aspects.sentence_bin_sim, r.index))
        return ordered[: min(k, n)]
    if method == "conspol3":
        ordered = sorted(scored, key=lambda r: (r.aspects.sentence_bin_sim, r.index))
        ordered.sort(key=lambda r: -r.aspects.neg_scr)  # stable on the cons3 order
        return ordered[: min(k, n)]
    raise BrandGaugeError(f"unknown ranking method: {method!r}")


def masr3_rank(
    doc: Document,
    profile: CompanyProfile,
    central: CentralEntitySet,
    ctx: RankingContext,
    k: int = 3,
) -> list[RankedSentence]:
    return order_masr3(_scored_sentences(doc, profile, central, ctx), k)


def baseline_rank(
    method: str,
    doc: Document,
    profile: CompanyProfile,
    central: CentralEntitySet,
    ctx: RankingContext,
    seed: Optional[int] = None,
    k: int = 3,
) -> list[RankedSentence]:
    return order_baseline(method, _scored_sentences(doc, profile, central, ctx), k, seed)


def rank_with_method(
    method: str,
    doc: Document,
    profile: CompanyProfile,
    central: CentralEntitySet,
    ctx: RankingContext,
    seed: Optional[int] = None,
    k: int = 3,
) -> list[RankedSentence]:
    if method == MASR3:
        return masr3_rank(doc, profile, central, ctx, k)
    return baseline_rank(method, doc, profile, central, ctx, seed=seed, k=k)
