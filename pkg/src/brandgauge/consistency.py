"""Brand-consistency measures between trait vectors.

binLabelSim blends Hamming and Levenshtein distance over the 5-bit label
strings; rankLabelSim averages Pearson (on confidences) with Spearman and
Kendall tau (on the rank permutations). Levels and the company-level score
follow fixed thresholds kept in one place here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date, timedelta
from typing import Iterable, Optional, Sequence

from .classify import TRAITS, TraitAssessment
from .errors import BrandGaugeError

__all__ = [
    "STRONGLY_CONSISTENT",
    "CONSISTENT",
    "NOT_CONSISTENT",
    "CompanyProfile",
    "ConsistencyReport",
    "TemporalBin",
    "bin_label_sim",
    "hamming_label_sim",
    "rank_label_sim",
    "representative_vectors",
    "consistency_level",
    "compare_to_profile",
    "brand_cons_score",
    "temporal_consistency",
    "save_profiles",
    "load_profiles",
]

STRONGLY_CONSISTENT = "strongly_consistent"
CONSISTENT = "consistent"
NOT_CONSISTENT = "not_consistent"

STRONG_BIN_CUTOFF = 0.8
STRONG_RANK_CUTOFF = 0.6
NOT_CONSISTENT_BIN_CUTOFF = 0.5

_N = len(TRAITS)


@dataclass(frozen=True)
class CompanyProfile:
    company: str
    representative_label: tuple[int, ...]
    representative_rank: tuple[int, ...]
    representative_confidences: Optional[tuple[float, ...]]
    static_post_count: int

    def __post_init__(self):
        _check_bits(self.representative_label)
        _check_permutation(self.representative_rank)
        if self.static_post_count < 1:
            raise BrandGaugeError("profile needs at least one static post")


@dataclass(frozen=True)
class ConsistencyReport:
    bin_label_sim: float
    rank_label_sim: float
    level: str


@dataclass(frozen=True)
class TemporalBin:
    start: date
    duration_weeks: int
    post_count: int
    brand_cons_scr: float
    is_consistent: bool


def _check_bits(bits: Sequence[int]) -> tuple[int, ...]:
    bits = tuple(int(b) for b in bits)
    if len(bits) != _N or any(b not in (0, 1) for b in bits):
        raise BrandGaugeError(f"not a 5-bit label vector: {bits}")
    return bits


def _check_permutation(rank: Sequence[int]) -> tuple[int, ...]:
    rank = tuple(int(r) for r in rank)
    if sorted(rank) != list(range(1, _N + 1)):
        raise BrandGaugeError(f"not a permutation of 1..{_N}: {rank}")
    return rank


def _levenshtein(a: str, b: str) -> int:
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        row = [i]
        for j, cb in enumerate(b, start=1):
            row.append(min(prev[j] + 1, row[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = row
    return prev[-1]


def _bits_str(bits: Sequence[int]) -> str:
    return "".join(str(b) for b in _check_bits(bits))


def bin_label_sim(a: Sequence[int], b: Sequence[int]) -> float:
    """1 minus the mean of normalized Hamming and Levenshtein distances
    between the two 5-bit label strings."""
    sa, sb = _bits_str(a), _bits_str(b)
    hamming = sum(x != y for x, y in zip(sa, sb))
    lev = _levenshtein(sa, sb)
    return 1.0 - (hamming / _N + lev / _N) / 2.0


def hamming_label_sim(a: Sequence[int], b: Sequence[int]) -> float:
    """Hamming-only variant (config switch for sentence-level similarity)."""
    sa, sb = _bits_str(a), _bits_str(b)
    return 1.0 - sum(x != y for x, y in zip(sa, sb)) / _N


def _pearson(x: Sequence[float], y: Sequence[float]) -> float:
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    dx = [v - mx for v in x]
    dy = [v - my for v in y]
    sx = math.sqrt(sum(d * d for d in dx))
    sy = math.sqrt(sum(d * d for d in dy))
    if sx == 0.0 or sy == 0.0:
        return 1.0 if all(a == b for a, b in zip(x, y)) else 0.0
    return sum(a * b for a, b in zip(dx, dy)) / (sx * sy)


def _spearman(ra: Sequence[int], rb: Sequence[int]) -> float:
    n = len(ra)
    d2 = sum((a - b) ** 2 for a, b in zip(ra, rb))
    return 1.0 - 6.0 * d2 / (n * (n * n - 1))


def _kendall_tau(ra: Sequence[int], rb: Sequence[int]) -> float:
    n = len(ra)
    concordant = discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            s = (ra[i] - ra[j]) * (rb[i] - rb[j])
            if s > 0:
                concordant += 1
            elif s < 0:
                discordant += 1
    return (concordant - discordant) / (n * (n - 1) / 2)


def rank_label_sim(
    rank_a: Sequence[int],
    rank_b: Sequence[int],
    conf_a: Sequence[float],
    conf_b: Sequence[float],
) -> float:
    """Mean of Pearson (confidence vectors), Spearman and Kendall tau (rank
    vectors). Pearson falls back to exact-equality on zero variance."""
    ra = _check_permutation(rank_a)
    rb = _check_permutation(rank_b)
    ca = [float(c) for c in conf_a]
    cb = [float(c) for c in conf_b]
    if len(ca) != _N or len(cb) != _N:
        raise BrandGaugeError("confidence vectors must have 5 entries")
    if any(not 0.0 <= c <= 1.0 for c in ca + cb):
        raise BrandGaugeError("confidences must lie in [0, 1]")
    return (_pearson(ca, cb) + _spearman(ra, rb) + _kendall_tau(ra, rb)) / 3.0


def representative_vectors(
    static_assessments: Sequence[TraitAssessment],
    company: str = "",
    dates: Optional[Sequence[Optional[date]]] = None,
) -> CompanyProfile:
    """Company profile from the static posts: the most frequent label and
    rank vector (independently). Ties go to the vector of the most recent
    post when dates are given, else to the lexicographically smallest.
    Representative confidences are the elementwise means."""
    if not static_assessments:
        raise BrandGaugeError("no static assessments")
    if dates is not None and len(dates) != len(static_assessments):
        raise BrandGaugeError("dates must parallel assessments")

    def mode(vectors: list[tuple[int, ...]]) -> tuple[int, ...]:
        counts: dict[tuple[int, ...], int] = {}
        for v in vectors:
            counts[v] = counts.get(v, 0) + 1
        best = max(counts.values())
        tied = [v for v, c in counts.items() if c == best]
        if len(tied) == 1:
            return tied[0]
        if dates is not None and any(d is not None for d in dates):
            latest: dict[tuple[int, ...], date] = {}
            for v, d in zip(vectors, dates):
                if v in tied and d is not None:
                    if v not in latest or d > latest[v]:
                        latest[v] = d
            if latest:
                newest = max(latest.values())
                tied_latest = sorted(v for v, d in latest.items() if d == newest)
                return tied_latest[0]
        return min(tied)

    labels = [a.label_vector for a in static_assessments]
    ranks = [a.rank_vector for a in static_assessments]
    confs = tuple(
        sum(a.confidences[i] for a in static_assessments) / len(static_assessments)
        for i in range(_N)
    )
    return CompanyProfile(
        company=company,
        representative_label=mode(labels),
        representative_rank=mode(ranks),
        representative_confidences=confs,
        static_post_count=len(static_assessments),
    )


def consistency_level(
    bin_sim: float,
    rank_sim: float,
    strong_bin: float = STRONG_BIN_CUTOFF,
    strong_rank: float = STRONG_RANK_CUTOFF,
    not_consistent_bin: float = NOT_CONSISTENT_BIN_CUTOFF,
) -> str:
    """Strongly consistent when both thresholds clear; otherwise the
    bin similarity alone decides not-consistent vs consistent."""
    if bin_sim >= strong_bin and rank_sim >= strong_rank:
        return STRONGLY_CONSISTENT
    if bin_sim <= not_consistent_bin:
        return NOT_CONSISTENT
    return CONSISTENT


def _derived_confidences(label: Sequence[int]) -> tuple[float, ...]:
    return tuple(1.0 if b else 0.0 for b in label)


def _derived_rank(label: Sequence[int]) -> tuple[int, ...]:
    conf = _derived_confidences(label)
    order = sorted(range(_N), key=lambda i: (-conf[i], i))
    rank = [0] * _N
    for position, i in enumerate(order, start=1):
        rank[i] = position
    return tuple(rank)


def compare_to_profile(
    assessment: TraitAssessment,
    profile: CompanyProfile,
    strong_bin: float = STRONG_BIN_CUTOFF,
    strong_rank: float = STRONG_RANK_CUTOFF,
    not_consistent_bin: float = NOT_CONSISTENT_BIN_CUTOFF,
) -> ConsistencyReport:
    """Similarities and level of one assessment against the target profile.
    A profile without stored confidences falls back to its label bits as a
    0/1 confidence vector (the Pearson zero-variance rule handles flats)."""
    bin_sim = bin_label_sim(assessment.label_vector, profile.representative_label)
    conf_b = (
        profile.representative_confidences
        if profile.representative_confidences is not None
        else _derived_confidences(profile.representative_label)
    )
    rank_sim = rank_label_sim(
        assessment.rank_vector,
        profile.representative_rank,
        assessment.confidences,
        conf_b,
    )
    level = consistency_level(bin_sim, rank_sim, strong_bin, strong_rank, not_consistent_bin)
    return ConsistencyReport(bin_sim, rank_sim, level)


def profile_from_label(
    company: str,
    label: Sequence[int],
    rank: Optional[Sequence[int]] = None,
    confidences: Optional[Sequence[float]] = None,
) -> CompanyProfile:
    """Profile from an explicit target label (manual targets); rank and
    confidences derive from the bits when not supplied."""
    bits = _check_bits(label)
    return CompanyProfile(
        company=company,
        representative_label=bits,
        representative_rank=_check_permutation(rank) if rank is not None else _derived_rank(bits),
        representative_confidences=(
            tuple(float(c) for c in confidences) if confidences is not None else _derived_confidences(bits)
        ),
        static_post_count=1,
    )


def brand_cons_score(reports: Sequence[ConsistencyReport]) -> float:
    """Fraction of reports that are consistent or strongly consistent."""
    if not reports:
        raise BrandGaugeError("no reports")
    good = sum(1 for r in reports if r.level != NOT_CONSISTENT)
    return good / len(reports)


def temporal_consistency(
    dated_reports: Iterable[tuple[date, ConsistencyReport]],
    bin_weeks: int = 12,
) -> list[TemporalBin]:
    """Group reports into fixed-width bins anchored at the earliest post;
    empty bins are omitted. A bin is consistent when its score is >= 0.5."""
    items = sorted(dated_reports, key=lambda dr: dr[0])
    if not items:
        raise BrandGaugeError("no dated reports")
    if bin_weeks < 1:
        raise BrandGaugeError("bin_weeks must be >= 1")
    anchor = items[0][0]
    width_days = bin_weeks * 7
    grouped: dict[int, list[ConsistencyReport]] = {}
    for d, report in items:
        grouped.setdefault((d - anchor).days // width_days, []).append(report)
    bins = []
    for idx in sorted(grouped):
        reports = grouped[idx]
        scr = brand_cons_score(reports)
        bins.append(
            TemporalBin(
                start=anchor + timedelta(days=idx * width_days),
                duration_weeks=bin_weeks,
                post_count=len(reports),
                brand_cons_scr=scr,
                is_consistent=scr >= 0.5,
            )
        )
    return bins


# ---------------------------------------------------------------------------
# profile files: one text record per line


def save_profiles(profiles: Sequence[CompanyProfile], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("company\tlabel\trank\tconfidences\tstatic_post_count\n")
        for p in profiles:
            conf = (
                ",".join(repr(c) for c in p.representative_confidences)
                if p.representative_confidences is not None
                else "-"
            )
            fh.write(
                f"{p.company}\t{''.join(str(b) for b in p.representative_label)}\t"
                f"{''.join(str(r) for r in p.representative_rank)}\t{conf}\t{p.static_post_count}\n"
            )


def load_profiles(path: str) -> dict[str, CompanyProfile]:
    out: dict[str, CompanyProfile] = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header.startswith("company\t"):
            raise BrandGaugeError(f"not a profile file: {path}")
        for lineno, raw in enumerate(fh, start=2):
            raw = raw.rstrip("\n")
            if not raw:
                continue
            parts = raw.split("\t")
            if len(parts) != 5:
                raise BrandGaugeError(f"{path}:{lineno}: malformed profile record")
            company, label_s, rank_s, conf_s, count_s = parts
            out[company] = CompanyProfile(
                company=company,
                representative_label=tuple(int(c) for c in label_s),
                representative_rank=tuple(int(c) for c in rank_s),
                representative_confidences=(
                    None if conf_s == "-" else tuple(float(c) for c in conf_s.split(","))
                ),
                static_post_count=int(count_s),
            )
    return out
