"""Deterministic tokenization, sentence segmentation, syllables and readability.

Everything here is rule-based on purpose: the downstream feature pipeline
needs byte-identical output for identical input, so no statistical models
and no external data beyond the small bundled word lists.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import date
from typing import Optional

from .errors import BrandGaugeError
from .resources import load_abbreviations, load_syllable_exceptions

__all__ = [
    "Token",
    "SentenceSpan",
    "Document",
    "tokenize",
    "split_sentences",
    "count_syllables",
    "flesch_reading_ease",
]

# A word token is a run of alphanumerics, optionally chained by inner
# hyphens/apostrophes ("state-of-the-art", "we're"). Anything else that is
# not whitespace becomes a punctuation token (one token per contiguous run).
_WORD_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*", re.UNICODE)
_LETTER_RE = re.compile(r"[^\W\d_]", re.UNICODE)
_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")

_ABBREVIATIONS = load_abbreviations()
_SYLLABLE_EXCEPTIONS = load_syllable_exceptions()


@dataclass(frozen=True)
class Token:
    surface: str
    lower: str
    char_span: tuple[int, int]
    is_word: bool


@dataclass(frozen=True)
class SentenceSpan:
    index: int
    char_span: tuple[int, int]
    token_range: tuple[int, int]


@dataclass(frozen=True)
class Document:
    """One web article, tokenized and segmented. page_type is (kind, label),
    e.g. ("static", "about"), ("dynamic", "blog") or ("unknown", None)."""

    id: str
    company: str
    text: str
    page_type: tuple[str, Optional[str]] = ("unknown", None)
    timestamp: Optional[date] = None
    tokens: list[Token] = field(default_factory=list)
    sentences: list[SentenceSpan] = field(default_factory=list)

    @classmethod
    def from_text(
        cls,
        text: str,
        id: str = "",
        company: str = "",
        page_type: tuple[str, Optional[str]] = ("unknown", None),
        timestamp: Optional[date] = None,
    ) -> "Document":
        return cls(
            id=id,
            company=company,
            text=text,
            page_type=page_type,
            timestamp=timestamp,
            tokens=tokenize(text),
            sentences=split_sentences(text),
        )

    def sentence_tokens(self, sentence: SentenceSpan) -> list[Token]:
        lo, hi = sentence.token_range
        return self.tokens[lo:hi]

    def sentence_text(self, sentence: SentenceSpan) -> str:
        lo, hi = sentence.char_span
        return self.text[lo:hi]


def tokenize(text: str) -> list[Token]:
    """Split text into word and punctuation tokens with character spans.

    Contractions and hyphenated words stay single tokens; punctuation runs
    are emitted as non-word tokens. Spans index into the original text.
    """
    tokens: list[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _WORD_RE.match(text, pos)
        if m:
            surface = m.group(0)
            end = m.end()
        else:
            # punctuation run: up to the next whitespace or word start
            end = pos + 1
            while end < n and not text[end].isspace() and not _WORD_RE.match(text, end):
                end += 1
            surface = text[pos:end]
        is_word = _LETTER_RE.search(surface) is not None
        tokens.append(Token(surface, surface.lower(), (pos, end), is_word))
        pos = end
    return tokens


def _is_abbreviation(word_lower: str) -> bool:
    if word_lower in _ABBREVIATIONS:
        return True
    # single-letter initials ("J. Smith") and dotted acronyms ("U.S")
    if len(word_lower) == 1:
        return True
    return False


def split_sentences(text: str) -> list[SentenceSpan]:
    """Rule-based sentence segmentation over the token stream.

    A sentence ends at a punctuation token containing . ! or ? when the
    following text has whitespace and then an uppercase letter or digit.
    The bundled abbreviation list (plus single-letter initials) suppresses
    splits after a period. Sentences with no word token are not emitted;
    trailing punctuation attaches to the preceding sentence.
    """
    tokens = tokenize(text)
    if not tokens:
        return []

    boundaries: list[int] = []  # index of last token of each sentence
    for i, tok in enumerate(tokens):
        if tok.is_word:
            continue
        if not any(c in ".!?" for c in tok.surface):
            continue
        if "!" not in tok.surface and "?" not in tok.surface:
            # plain period: check the preceding word for abbreviations,
            # but only when the period directly follows it
            if i > 0 and tokens[i - 1].is_word:
                prev = tokens[i - 1]
                adjacent = prev.char_span[1] == tok.char_span[0]
                if adjacent and _is_abbreviation(prev.lower):
                    continue
        if i + 1 >= len(tokens):
            boundaries.append(i)
            continue
        gap = text[tok.char_span[1] : tokens[i + 1].char_span[0]]
        nxt = tokens[i + 1].surface[0]
        if gap and gap.isspace() and (nxt.isupper() or nxt.isdigit()):
            boundaries.append(i)
    if not boundaries or boundaries[-1] != len(tokens) - 1:
        boundaries.append(len(tokens) - 1)

    sentences: list[SentenceSpan] = []
    start = 0
    for b in boundaries:
        lo, hi = start, b + 1
        if any(t.is_word for t in tokens[lo:hi]):
            sentences.append(
                SentenceSpan(
                    index=len(sentences),
                    char_span=(tokens[lo].char_span[0], tokens[hi - 1].char_span[1]),
                    token_range=(lo, hi),
                )
            )
        elif sentences:
            # punctuation-only tail: merge into the previous sentence
            prev = sentences[-1]
            sentences[-1] = SentenceSpan(
                index=prev.index,
                char_span=(prev.char_span[0], tokens[hi - 1].char_span[1]),
                token_range=(prev.token_range[0], hi),
            )
        start = hi
    return sentences


def count_syllables(word: str) -> int:
    """Heuristic syllable count: maximal vowel groups (aeiouy), minus a
    silent trailing 'e' (one that follows a consonant; consonant+'le'
    endings keep theirs), floored at 1. The bundled exceptions list
    overrides known misses."""
    letters = "".join(_LETTER_RE.findall(word)).lower()
    if not letters:
        raise BrandGaugeError(f"not a word: {word!r}")
    override = _SYLLABLE_EXCEPTIONS.get(letters)
    if override is not None:
        return override
    count = len(_VOWEL_GROUP_RE.findall(letters))
    if len(letters) >= 2 and letters.endswith("e") and letters[-2] not in "aeiouy":
        keep_le = (
            len(letters) >= 3
            and letters.endswith("le")
            and letters[-3] not in "aeiouy"
        )
        if not keep_le:
            count -= 1
    return max(count, 1)


def flesch_reading_ease(doc: Document) -> float:
    """Reading-ease score from word, sentence and syllable totals. Higher
    is easier; the value is unbounded on both sides."""
    words = [t for t in doc.tokens if t.is_word]
    if not words or not doc.sentences:
        raise BrandGaugeError("degenerate document: need >=1 word and >=1 sentence")
    total_words = len(words)
    total_sentences = len(doc.sentences)
    total_syllables = sum(count_syllables(t.surface) for t in words)
    return (
        206.835
        - 1.015 * (total_words / total_sentences)
        - 84.6 * (total_syllables / total_words)
    )
