"""Word-category dictionaries, sentiment lexicon with rules, phrase lists.

The category dictionary follows the classic two-'%' header format:

    %
    <id><TAB><name>
    ...
    %
    <pattern>(<TAB><id>)+

A trailing '*' on a pattern makes it a prefix match; everything matches
case-insensitively against whole tokens.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import IO, Iterable, Union

from .errors import BrandGaugeError, LexiconParseError
from .resources import read_data_text
from .textcore import Token

__all__ = [
    "CategoryLexicon",
    "SentimentLexicon",
    "SentimentRules",
    "SentimentScores",
    "PhraseSet",
    "parse_category_lexicon",
    "serialize_category_lexicon",
    "category_profile",
    "sentiment_scores",
    "load_phrase_list",
    "load_demo_category_lexicon",
    "load_demo_sentiment_lexicon",
    "load_bundled_contractions",
    "load_bundled_collocations",
]

BOOSTER_INCREMENT = 0.293


@dataclass(frozen=True)
class SentimentRules:
    """Rule constants for the augmented scoring; defaults mirror the cited
    analyzer's published heuristics."""

    negation_window: int = 3
    negation_flip: float = -0.74
    booster_window: int = 1


@dataclass(frozen=True)
class CategoryLexicon:
    categories: dict[int, str]
    exact: dict[str, tuple[int, ...]]
    prefix: dict[str, tuple[int, ...]]

    def category_ids(self) -> list[int]:
        return sorted(self.categories)

    def match(self, token_lower: str) -> set[int]:
        """Category ids whose patterns match the token (exact or prefix)."""
        hits: set[int] = set()
        ids = self.exact.get(token_lower)
        if ids:
            hits.update(ids)
        for i in range(1, len(token_lower) + 1):
            ids = self.prefix.get(token_lower[:i])
            if ids:
                hits.update(ids)
        return hits


@dataclass(frozen=True)
class SentimentLexicon:
    valence: dict[str, float]
    boosters: dict[str, float]
    negators: frozenset[str]

    def __post_init__(self):
        bad = [t for t, v in self.valence.items() if not -4.0 <= v <= 4.0]
        if bad:
            raise BrandGaugeError(f"valence out of [-4, 4] for: {bad[:5]}")


@dataclass(frozen=True)
class SentimentScores:
    pos: float
    neg: float
    neu: float


@dataclass(frozen=True)
class PhraseSet:
    phrases: frozenset[tuple[str, ...]]
    max_n: int = 3

    def __post_init__(self):
        if any(len(p) == 0 for p in self.phrases):
            raise BrandGaugeError("empty phrase in phrase set")

    def unigrams(self) -> frozenset[str]:
        return frozenset(p[0] for p in self.phrases if len(p) == 1)


def _as_lines(stream: Union[str, IO[str]]) -> list[str]:
    if isinstance(stream, str):
        return stream.splitlines()
    return stream.read().splitlines()


def parse_category_lexicon(stream: Union[str, IO[str]]) -> CategoryLexicon:
    """Parse a category dictionary. Raises LexiconParseError with the line
    number for malformed headers, duplicate patterns and unknown ids."""
    lines = _as_lines(stream)
    categories: dict[int, str] = {}
    exact: dict[str, tuple[int, ...]] = {}
    prefix: dict[str, tuple[int, ...]] = {}

    # locate the header block between the two '%' lines; a file without
    # any content parses to an empty lexicon
    marks = [i for i, ln in enumerate(lines) if ln.strip() == "%"]
    if not any(ln.strip() for ln in lines):
        return CategoryLexicon({}, {}, {})
    if len(marks) < 2:
        raise LexiconParseError("expected two '%' header delimiter lines", 1)

    for lineno in range(marks[0] + 1, marks[1]):
        ln = lines[lineno].strip()
        if not ln:
            continue
        parts = ln.split("\t")
        if len(parts) != 2:
            raise LexiconParseError(f"bad header entry: {ln!r}", lineno + 1)
        try:
            cat_id = int(parts[0])
        except ValueError:
            raise LexiconParseError(f"bad category id: {parts[0]!r}", lineno + 1)
        if cat_id in categories:
            raise LexiconParseError(f"duplicate category id {cat_id}", lineno + 1)
        categories[cat_id] = parts[1].strip()

    for lineno in range(marks[1] + 1, len(lines)):
        ln = lines[lineno].strip()
        if not ln or ln.startswith("//"):
            continue
        parts = ln.split()
        pattern = parts[0].lower()
        if len(parts) < 2:
            raise LexiconParseError(f"entry {pattern!r} lists no categories", lineno + 1)
        ids = []
        for p in parts[1:]:
            try:
                cid = int(p)
            except ValueError:
                raise LexiconParseError(f"bad category id: {p!r}", lineno + 1)
            if cid not in categories:
                raise LexiconParseError(f"unknown category id {cid}", lineno + 1)
            ids.append(cid)
        key = pattern.rstrip("*") if pattern.endswith("*") else pattern
        table = prefix if pattern.endswith("*") else exact
        if key in table:
            raise LexiconParseError(f"duplicate pattern {pattern!r}", lineno + 1)
        table[key] = tuple(ids)

    return CategoryLexicon(categories, exact, prefix)


def serialize_category_lexicon(lex: CategoryLexicon) -> str:
    """Normalized text form; parse(serialize(lex)) reproduces lex."""
    out = io.StringIO()
    out.write("%\n")
    for cid in sorted(lex.categories):
        out.write(f"{cid}\t{lex.categories[cid]}\n")
    out.write("%\n")
    entries = [(pat, ids) for pat, ids in lex.exact.items()]
    entries += [(pat + "*", ids) for pat, ids in lex.prefix.items()]
    for pat, ids in sorted(entries):
        out.write(pat + "".join(f"\t{i}" for i in ids) + "\n")
    return out.getvalue()


def category_profile(tokens: Iterable[Token], lex: CategoryLexicon) -> dict[int, float]:
    """Percent of word tokens matching each category; zero-match categories
    are present with 0.0."""
    words = [t for t in tokens if t.is_word]
    if not words:
        raise BrandGaugeError("no word tokens to profile")
    counts = {cid: 0 for cid in lex.categories}
    for tok in words:
        for cid in lex.match(tok.lower):
            counts[cid] += 1
    total = len(words)
    return {cid: 100.0 * c / total for cid, c in counts.items()}


def sentiment_scores(
    tokens: list[Token],
    lex: SentimentLexicon,
    rules: SentimentRules = SentimentRules(),
) -> SentimentScores:
    """Proportion scores from adjusted valences.

    A booster among the booster_window preceding word tokens pushes the
    valence away from zero; a negator within the negation_window preceding
    word tokens then flips it by negation_flip. Word tokens without a
    lexicon hit count as neutral mass.
    """
    if not tokens:
        raise BrandGaugeError("empty token list")
    words = [t for t in tokens if t.is_word]
    pos_sum = 0.0
    neg_sum = 0.0
    neutral = 0
    for i, tok in enumerate(words):
        v = lex.valence.get(tok.lower)
        if v is None or v == 0.0:
            neutral += 1
            continue
        for j in range(max(0, i - rules.booster_window), i):
            boost = lex.boosters.get(words[j].lower)
            if boost is not None:
                v += boost if v > 0 else -boost
                break
        lo = max(0, i - rules.negation_window)
        if any(words[j].lower in lex.negators for j in range(lo, i)):
            v *= rules.negation_flip
        if v > 0:
            pos_sum += v
        else:
            neg_sum += -v
    denom = pos_sum + neg_sum + neutral
    if denom == 0.0:
        return SentimentScores(0.0, 0.0, 1.0)
    pos = pos_sum / denom
    neg = neg_sum / denom
    return SentimentScores(pos, neg, 1.0 - pos - neg)


def load_phrase_list(stream: Union[str, IO[str]], max_n: int = 3) -> PhraseSet:
    """One phrase per line, whitespace-tokenized and lowercased; phrases
    longer than max_n tokens are rejected with their line number."""
    phrases: set[tuple[str, ...]] = set()
    for lineno, ln in enumerate(_as_lines(stream), start=1):
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        grams = tuple(w.lower() for w in ln.split())
        if len(grams) > max_n:
            raise LexiconParseError(
                f"phrase has {len(grams)} tokens, max_n={max_n}", lineno
            )
        phrases.add(grams)
    return PhraseSet(frozenset(phrases), max_n)


def load_demo_category_lexicon() -> CategoryLexicon:
    return parse_category_lexicon(read_data_text("demo_categories.dic"))


def load_sentiment_lexicon(
    valence_text: str,
    booster_text: str = "",
    negator_text: str = "",
    booster_increment: float = BOOSTER_INCREMENT,
) -> SentimentLexicon:
    """Build a SentimentLexicon from '<token>\\t<valence>' lines plus
    one-token-per-line booster and negator lists."""
    valence: dict[str, float] = {}
    for lineno, ln in enumerate(valence_text.splitlines(), start=1):
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        tok, _, val = ln.partition("\t")
        if not val:
            raise LexiconParseError(f"expected '<token>\\t<valence>': {ln!r}", lineno)
        valence[tok.strip().lower()] = float(val)
    boosters = {
        w.strip().lower(): booster_increment
        for w in booster_text.splitlines()
        if w.strip() and not w.strip().startswith("#")
    }
    negators = frozenset(
        w.strip().lower()
        for w in negator_text.splitlines()
        if w.strip() and not w.strip().startswith("#")
    )
    return SentimentLexicon(valence, boosters, negators)


def load_demo_sentiment_lexicon(
    booster_increment: float = BOOSTER_INCREMENT,
) -> SentimentLexicon:
    return load_sentiment_lexicon(
        read_data_text("demo_sentiment.txt"),
        read_data_text("boosters.txt"),
        read_data_text("negators.txt"),
        booster_increment,
    )


def load_bundled_contractions() -> PhraseSet:
    return load_phrase_list(read_data_text("contractions.txt"), max_n=1)


def load_bundled_collocations() -> PhraseSet:
    return load_phrase_list(read_data_text("demo_collocations.txt"), max_n=3)
