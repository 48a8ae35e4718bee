"""Per-document feature vector assembly.

Block order is fixed: category percentages, tf-idf, contraction rate,
collocation rate, chains-of-reference counts, readability. A schema hash
covering the block layout, the producing configuration and the block mask
travels with every vector so train/serve mismatches fail loudly.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import BrandGaugeError, SchemaMismatchError
from .lexicons import CategoryLexicon, PhraseSet, category_profile
from .resources import STOPWORDS_ID, load_stopwords
from .textcore import Document, Token, flesch_reading_ease

__all__ = [
    "BLOCK_NAMES",
    "TfidfConfig",
    "TfidfModel",
    "FeatureLexicons",
    "FeatureVector",
    "tfidf_fit",
    "tfidf_transform",
    "contraction_rate",
    "collocation_rate",
    "chains_of_reference",
    "extract_features",
    "apply_mask",
    "raw_vector",
]

BLOCK_NAMES = ("category", "tfidf", "contraction", "collocation", "chains", "readability")
CHAIN_KEYS = ("repetition", "partial_repetition", "coreference", "possessive_inferrable")

_COREFERENCE_PRONOUNS = frozenset({"we", "us", "our", "ours", "ourselves"})
_POSSESSIVE_HEADS = frozenset({"our", "your"})


@dataclass(frozen=True)
class TfidfConfig:
    min_df: int = 1
    max_features: int = 5000
    ngram_max: int = 3
    stopwords_id: str = STOPWORDS_ID


@dataclass(frozen=True)
class TfidfModel:
    vocabulary: dict[str, int]
    idf: np.ndarray
    config: TfidfConfig

    def __post_init__(self):
        if len(self.idf) != len(self.vocabulary):
            raise BrandGaugeError("idf length must equal vocabulary size")
        if len(self.idf) and float(np.min(self.idf)) <= 0:
            raise BrandGaugeError("idf weights must be positive")

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(
            f"min_df={self.config.min_df};max_features={self.config.max_features};"
            f"ngram_max={self.config.ngram_max};stopwords={self.config.stopwords_id}".encode()
        )
        for term in sorted(self.vocabulary):
            idx = self.vocabulary[term]
            h.update(f"\n{term}\t{idx}\t{float(self.idf[idx]).hex()}".encode())
        return h.hexdigest()


@dataclass(frozen=True)
class FeatureLexicons:
    categories: CategoryLexicon
    contractions: PhraseSet
    collocations: PhraseSet


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    layout: tuple[tuple[str, int], ...]
    layout_digest: str
    mask: tuple[str, ...]
    schema_hash: str

    @property
    def width(self) -> int:
        return int(self.values.shape[0])

    def block_slice(self, name: str) -> slice:
        off = 0
        for block, width in self.layout:
            if block == name:
                return slice(off, off + width)
            off += width
        raise KeyError(name)


def schema_hash_for(layout_digest: str, mask: Sequence[str]) -> str:
    text = layout_digest + "|mask=" + ",".join(sorted(mask))
    return hashlib.sha256(text.encode()).hexdigest()


def layout_digest_for(
    layout: Sequence[tuple[str, int]], category_ids: Sequence[int], tfidf_digest: str, stopwords_id: str
) -> str:
    text = (
        ";".join(f"{n}:{w}" for n, w in layout)
        + "|cats="
        + ",".join(str(c) for c in category_ids)
        + "|tfidf="
        + tfidf_digest
        + "|stopwords="
        + stopwords_id
    )
    return hashlib.sha256(text.encode()).hexdigest()


def _filtered_word_terms(doc: Document, stopwords: frozenset[str]) -> list[str]:
    return [t.lower for t in doc.tokens if t.is_word and t.lower not in stopwords]


def _ngrams(terms: list[str], ngram_max: int) -> Iterable[str]:
    for n in range(1, ngram_max + 1):
        for i in range(len(terms) - n + 1):
            yield " ".join(terms[i : i + n])


def tfidf_fit(corpus: Sequence[Document], config: TfidfConfig = TfidfConfig()) -> TfidfModel:
    """Fit vocabulary and idf over stopword-filtered word-token n-grams.

    Selection: document frequency >= min_df, truncated to max_features by
    descending df with lexicographic tie-break; idf(t) = ln((1+N)/(1+df))+1.
    """
    if not corpus:
        raise BrandGaugeError("empty corpus")
    stopwords = load_stopwords() if config.stopwords_id == STOPWORDS_ID else frozenset()
    df: dict[str, int] = {}
    for doc in corpus:
        seen = set(_ngrams(_filtered_word_terms(doc, stopwords), config.ngram_max))
        for term in seen:
            df[term] = df.get(term, 0) + 1
    kept = [(term, count) for term, count in df.items() if count >= config.min_df]
    kept.sort(key=lambda tc: (-tc[1], tc[0]))
    kept = kept[: config.max_features]
    vocabulary = {term: i for i, term in enumerate(sorted(t for t, _ in kept))}
    n_docs = len(corpus)
    idf = np.zeros(len(vocabulary), dtype=np.float64)
    for term, count in kept:
        idf[vocabulary[term]] = math.log((1 + n_docs) / (1 + count)) + 1.0
    return TfidfModel(vocabulary, idf, config)


def tfidf_transform(model: TfidfModel, doc: Document) -> dict[int, float]:
    """Sparse column->weight map: raw count x idf, L2-normalized over the
    document's nonzero entries. Unseen n-grams are ignored."""
    stopwords = (
        load_stopwords() if model.config.stopwords_id == STOPWORDS_ID else frozenset()
    )
    counts: dict[int, int] = {}
    for term in _ngrams(_filtered_word_terms(doc, stopwords), model.config.ngram_max):
        col = model.vocabulary.get(term)
        if col is not None:
            counts[col] = counts.get(col, 0) + 1
    if not counts:
        return {}
    weights = {col: c * float(model.idf[col]) for col, c in counts.items()}
    norm = math.sqrt(sum(w * w for w in weights.values()))
    return {col: w / norm for col, w in weights.items()}


def _word_tokens(tokens: Iterable[Token]) -> list[Token]:
    return [t for t in tokens if t.is_word]


def contraction_rate(tokens: Iterable[Token], contractions: PhraseSet) -> float:
    """Contractions per 100 word tokens, case-insensitive whole tokens."""
    words = _word_tokens(tokens)
    if not words:
        raise BrandGaugeError("no word tokens")
    lookup = contractions.unigrams()
    hits = sum(1 for t in words if t.lower in lookup)
    return 100.0 * hits / len(words)


def collocation_rate(tokens: Iterable[Token], collocations: PhraseSet) -> float:
    """Greedy left-to-right non-overlapping phrase matches per 100 word
    tokens; at each position the longest matching phrase wins."""
    words = [t.lower for t in _word_tokens(tokens)]
    if not words:
        raise BrandGaugeError("no word tokens")
    if not collocations.phrases:
        return 0.0
    max_n = max(len(p) for p in collocations.phrases)
    matches = 0
    i = 0
    while i < len(words):
        matched = 0
        for n in range(min(max_n, len(words) - i), 0, -1):
            if tuple(words[i : i + n]) in collocations.phrases:
                matched = n
                break
        if matched:
            matches += 1
            i += matched
        else:
            i += 1
    return 100.0 * matches / len(words)


def _capitalized(tok: Token) -> bool:
    return tok.surface[:1].isupper()


def chains_of_reference(doc: Document, company_aliases: Sequence[str]) -> dict[str, int]:
    """Counts of self-reference devices: exact alias repetition, capitalized
    phrases extending an alias, first-person-plural pronouns, and
    our/your + non-capitalized noun."""
    if not company_aliases:
        raise BrandGaugeError("empty alias list")
    alias_seqs = []
    for alias in company_aliases:
        toks = tuple(w.lower() for w in alias.split())
        if toks:
            alias_seqs.append(toks)
    if not alias_seqs:
        raise BrandGaugeError("empty alias list")

    words = _word_tokens(doc.tokens)
    lowers = [t.lower for t in words]

    repetition = 0
    for seq in alias_seqs:
        i = 0
        while i + len(seq) <= len(lowers):
            if tuple(lowers[i : i + len(seq)]) == seq:
                repetition += 1
                i += len(seq)
            else:
                i += 1

    # capitalized runs over the full token stream: punctuation or a
    # non-capitalized word breaks the run
    partial = 0
    runs: list[list[int]] = []
    current: list[int] = []
    widx = -1
    for tok in doc.tokens:
        if tok.is_word:
            widx += 1
            if _capitalized(tok):
                current.append(widx)
                continue
        if current:
            runs.append(current)
        current = []
    if current:
        runs.append(current)
    for run in runs:
        run_lowers = [lowers[i] for i in run]
        for seq in alias_seqs:
            if len(run_lowers) <= len(seq):
                continue
            if any(
                tuple(run_lowers[i : i + len(seq)]) == seq
                for i in range(len(run_lowers) - len(seq) + 1)
            ):
                partial += 1
                break

    coreference = sum(1 for w in lowers if w in _COREFERENCE_PRONOUNS)

    possessive = 0
    for i, tok in enumerate(doc.tokens[:-1]):
        nxt = doc.tokens[i + 1]
        if tok.is_word and tok.lower in _POSSESSIVE_HEADS and nxt.is_word and not _capitalized(nxt):
            possessive += 1

    return {
        "repetition": repetition,
        "partial_repetition": partial,
        "coreference": coreference,
        "possessive_inferrable": possessive,
    }


def extract_features(
    doc: Document,
    lexicons: FeatureLexicons,
    tfidf_model: TfidfModel,
    aliases: Sequence[str],
    block_mask: Optional[Sequence[str]] = None,
) -> FeatureVector:
    """Concatenate the feature blocks in fixed order; blocks outside the
    mask are zeroed and the mask is folded into the schema hash."""
    mask = tuple(sorted(set(block_mask if block_mask is not None else BLOCK_NAMES)))
    if not mask:
        raise BrandGaugeError("no features selected")
    unknown = [b for b in mask if b not in BLOCK_NAMES]
    if unknown:
        raise SchemaMismatchError(f"unknown feature blocks: {unknown}")

    category_ids = lexicons.categories.category_ids()
    layout = (
        ("category", len(category_ids)),
        ("tfidf", len(tfidf_model.vocabulary)),
        ("contraction", 1),
        ("collocation", 1),
        ("chains", 4),
        ("readability", 1),
    )
    width = sum(w for _, w in layout)
    values = np.zeros(width, dtype=np.float64)

    off = 0
    for name, block_width in layout:
        if name in mask:
            if name == "category":
                profile = category_profile(doc.tokens, lexicons.categories)
                values[off : off + block_width] = [profile[c] for c in category_ids]
            elif name == "tfidf":
                for col, w in tfidf_transform(tfidf_model, doc).items():
                    values[off + col] = w
            elif name == "contraction":
                values[off] = contraction_rate(doc.tokens, lexicons.contractions)
            elif name == "collocation":
                values[off] = collocation_rate(doc.tokens, lexicons.collocations)
            elif name == "chains":
                chains = chains_of_reference(doc, aliases)
                values[off : off + 4] = [chains[k] for k in CHAIN_KEYS]
            elif name == "readability":
                values[off] = flesch_reading_ease(doc)
        off += block_width

    if not np.all(np.isfinite(values)):
        raise BrandGaugeError("non-finite feature values")
    digest = layout_digest_for(layout, category_ids, tfidf_model.digest(), tfidf_model.config.stopwords_id)
    return FeatureVector(
        values=values,
        layout=layout,
        layout_digest=digest,
        mask=mask,
        schema_hash=schema_hash_for(digest, mask),
    )


def raw_vector(values) -> FeatureVector:
    """Wrap a bare numeric array as a single-block vector; used for
    synthetic data where the full extraction pipeline is beside the point."""
    arr = np.asarray(values, dtype=np.float64)
    layout = (("raw", int(arr.shape[0])),)
    digest = layout_digest_for(layout, (), "raw", "none")
    mask = ("raw",)
    return FeatureVector(arr, layout, digest, mask, schema_hash_for(digest, mask))


def apply_mask(fv: FeatureVector, mask: Sequence[str]) -> FeatureVector:
    """Narrow a vector to a sub-mask by zeroing the excluded blocks. Only
    blocks already present in fv.mask may be kept."""
    new_mask = tuple(sorted(set(mask)))
    if not new_mask:
        raise BrandGaugeError("no features selected")
    missing = [b for b in new_mask if b not in fv.mask]
    if missing:
        raise SchemaMismatchError(f"vector was extracted without blocks: {missing}")
    values = fv.values.copy()
    for name, _ in fv.layout:
        if name not in new_mask:
            values[fv.block_slice(name)] = 0.0
    return FeatureVector(
        values=values,
        layout=fv.layout,
        layout_digest=fv.layout_digest,
        mask=new_mask,
        schema_hash=schema_hash_for(fv.layout_digest, new_mask),
    )
